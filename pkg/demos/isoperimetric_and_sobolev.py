#!/usr/bin/env python3
"""The sharp bound Upsilon_p >= gamma(n, p) and the Sobolev inequality.

First a seed sweep: every mixture sits above gamma, with the profile itself
on the floor.  Then the functional-analysis form: for n = 3 the p = 2/3
column turns the bound into the sharp Sobolev inequality, with equality for
g = (C + |x|^2)^{-1/2}.
"""
import numpy as np

import renyiflow as rf

grid = rf.Grid.cartesian(1024, 12.0)
print("Upsilon margins over seeded mixtures (relative to gamma)")
print(f"{'p':>6} {'min margin':>12} {'median':>12} {'max':>12}")
for p in (0.8, 1.5, 2.0):
    gamma = rf.gamma_const(p, 1)
    margins = []
    for seed in range(40):
        f = rf.sample_mixture(grid, seed=seed)
        margins.append((rf.upsilon(f, p) - gamma) / gamma)
    margins = np.array(margins)
    print(f"{p:6.2f} {margins.min():12.4f} {np.median(margins):12.4f} {margins.max():12.4f}")

print()
print("equality case: the sampled profile lands on gamma")
for p in (0.8, 2.0):
    spec = rf.barenblatt_spec(p, 1)
    radius = rf.support_radius(spec) if p > 1 else rf.suggest_domain_radius(p, 1, 1e-10)
    f = rf.sample_barenblatt_from_spec(rf.Grid.radial(1, 4096, radius), spec)
    gamma = rf.gamma_const(p, 1)
    print(f"  p={p}: (Upsilon(B)-gamma)/gamma = {(rf.upsilon(f, p) - gamma) / gamma:+.2e}")

print()
print("Sobolev inequality in n = 3: integral |grad g|^2 >= S_3 (integral g^6)^{1/3}")
n = 3
print(f"  S_3 = {rf.sobolev_constant(n):.8f}")
spec = rf.barenblatt_spec((n - 1.0) / n, n)
big = rf.Grid.radial(n, 131072, 4000.0)
b = rf.sample_barenblatt_from_spec(big, spec)
extremal = rf.DensityField(big, b.values ** ((n - 2.0) / (2.0 * n)))
dirichlet, rhs = rf.sobolev_pair(extremal, n)
print(f"  extremal (C+r^2)^(-1/2): lhs={dirichlet:.6f} rhs={rhs:.6f} "
      f"deficit={(dirichlet - rhs):+.2e} (sharp)")
bump_grid = rf.Grid.radial(n, 2048, 15.0)
for seed in range(3):
    m = rf.sample_mixture(bump_grid, seed=seed, mean_range=(0.0, 2.0))
    g = rf.DensityField(bump_grid, m.values ** (1.0 / 6.0))
    dirichlet, rhs = rf.sobolev_pair(g, n)
    print(f"  random bump seed {seed}: lhs={dirichlet:10.4f} rhs={rhs:10.4f} "
          f"deficit={dirichlet - rhs:+10.4f}")
