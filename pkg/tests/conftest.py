import numpy as np
import pytest

import renyiflow as rf


@pytest.fixture(scope="session")
def barenblatt_run():
    """p=2 Barenblatt marched on [1, 1.5], 512 nodes; exact N_p is linear."""
    p = 2.0
    spec = rf.barenblatt_spec(p, 1, "pde")
    radius = rf.support_radius(spec) * 1.5 ** (1.0 / spec.coeffs.mu) * 1.3
    grid = rf.Grid.cartesian(512, radius)
    f0 = rf.sample_barenblatt(grid, p, 1.0, normalize=True)
    params = rf.DiffusionParams(p=p, dim=1, t_start=1.0, t_end=1.5, snapshot_count=9)
    return rf.evolve(f0, params)


@pytest.fixture(scope="session")
def mixture_run():
    """Generic two-bump run, p=1.5 on [1, 1.3]."""
    grid = rf.Grid.cartesian(512, 10.0)
    f0 = rf.sample_mixture(grid, seed=5, components=2)
    params = rf.DiffusionParams(p=1.5, dim=1, t_start=1.0, t_end=1.3, snapshot_count=13)
    return rf.evolve(f0, params, with_dissipation=True)


@pytest.fixture(scope="session")
def fast_diffusion_run():
    """Strictly positive fast-diffusion run, p=0.9 on [1, 1.1], with D_p."""
    grid = rf.Grid.cartesian(1024, 12.0)
    f0 = rf.sample_mixture(grid, seed=3, var_range=(1.5, 3.0))
    params = rf.DiffusionParams(p=0.9, dim=1, t_start=1.0, t_end=1.1, snapshot_count=11)
    return rf.evolve(f0, params, with_dissipation=True)


def linear_series(times, slope, offset=0.0):
    """Synthetic snapshot series with N_p = offset + slope * t."""
    out = []
    for t in times:
        n_p = offset + slope * t
        out.append(rf.FunctionalSnapshot(t=float(t), mass=1.0, e_p=1.0, h_p=np.log(n_p),
                                         n_p=n_p, f_p=1.0, i_p=1.0 / t, d_p=None,
                                         upsilon=n_p / t))
    return out


@pytest.fixture
def make_series():
    return linear_series
