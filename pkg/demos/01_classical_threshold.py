"""
Classical entanglement percolation on a random graph
=====================================================

Each edge of an Erdos-Renyi graph carries two partially entangled copies.
Converting both copies into one singlet succeeds with probability phi2,
so the graph percolates like ordinary bond percolation with occupation phi2.
"""

import numpy as np

from entperc.analytic import er_S_lambertW, find_threshold, giant_S
from entperc.degree_models import DegreeModel
from entperc.quantum_links import phi2_of_phi1

z = 2.5
model = DegreeModel.poisson(z)

# the threshold of the two-copy conversion, expressed in single-copy SCP
th = find_threshold(model)
print(f"z = {z}: critical phi2 = 1/z = {1 / z}")
print(f"          critical phi1 = {th.phi_star:.6f} (2 - sqrt(3.2) = {2 - np.sqrt(3.2):.6f})")

# the giant component two ways: fixed point and Lambert W closed form
for phi1 in (0.2, 0.3, 0.5, 0.8):
    phi2 = phi2_of_phi1(phi1)
    print(f"phi1={phi1:.1f} phi2={phi2:.3f}  S={giant_S(phi2, model):.6f}"
          f"  S(lambertW)={er_S_lambertW(z, phi2):.6f}")
