"""
Limited path percolation
========================

With noisy links only paths of at most l hops are useful. The mean ball size
grows like a tree, 2**(l+1) - 1 for z=2, until it saturates at the giant
component.
"""

import numpy as np

from entperc.analytic import er_S_lambertW, ws_limited_avg
from entperc.generators import gen_er, gen_ws
from entperc.percolation_sim import limited_component_scan

N = 20_000
g = gen_er(N, 2.0, np.random.default_rng(3))
res = limited_component_scan(g, None, 300, seed=3, bootstrap=100)
print(f"ER z=2, l_av = {res.l_av:.2f}, S1^2 = {er_S_lambertW(2, 1) ** 2:.4f}")
for l in range(0, res.s_l.size, 2):
    print(f"l={l:2d}  <s_l>={res.s_l[l] * N:10.1f}  tree={2.0 ** (l + 1) - 1:10.1f}")

# small world: the recurrence for a ring with shortcuts
g = gen_ws(N, 0.2, np.random.default_rng(4))
res = limited_component_scan(g, None, 300, seed=4, bootstrap=100)
for l in (1, 2, 4, 8):
    print(f"WS l={l}: simulated {res.s_l[l] * N:8.2f}  recurrence {ws_limited_avg(0.2, l):8.2f}")
