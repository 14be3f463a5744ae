"""
Fidelity threshold on two topologies
====================================

Werner-state links lose fidelity with every swap, so the usable path length
depends on the link fidelity F. Shorter paths make the scale-free graph reach
a given reachable fraction at lower F than a planar lattice.
"""

import numpy as np

from entperc.degree_models import DegreeModel
from entperc.generators import gen_config_model, gen_honeycomb
from entperc.percolation_sim import fidelity_scan, first_crossing

F = np.round(np.linspace(0.6, 1.0, 21), 3)
hc = gen_honeycomb(40, 40)
sf = gen_config_model(DegreeModel.power_law_cutoff(1.0, 4.0), hc.N, np.random.default_rng(5))
for name, g in (("scale-free", sf), ("honeycomb", hc)):
    res = fidelity_scan(g, F, 2 / 3, 300, seed=5, bootstrap=50)
    print(f"{name:10s} N={g.N}: <s_l>/N hits 0.1 at F = {first_crossing(F, res.s_l, 0.1):.3f}")
