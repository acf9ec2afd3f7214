"""Verdict operations: positive cases from the flow, negative controls, determinism."""
import dataclasses

import numpy as np
import pytest

import renyiflow as rf
from renyiflow.errors import DomainError, InsufficientData


def series_with_np(times, values):
    return [rf.FunctionalSnapshot(t=float(t), mass=1.0, e_p=1.0, h_p=0.0, n_p=float(v),
                                  f_p=1.0, i_p=1.0, d_p=None, upsilon=float(v))
            for t, v in zip(times, values)]


class TestConcavity:
    def test_linear_series_has_zero_curvature(self, make_series):
        series = make_series(np.linspace(1.0, 2.0, 9), slope=41.6)
        r = rf.concavity_report(series, 2.0, 1)
        assert r.passed and abs(r.margin - r.tolerance) < 1e-12

    def test_solver_mixture_passes(self, mixture_run):
        assert rf.concavity_report(mixture_run.snapshots, 1.5, 1).passed

    def test_convex_series_fails(self):
        t = np.linspace(1.0, 2.0, 9)
        r = rf.concavity_report(series_with_np(t, t * t), 2.0, 1)
        assert not r.passed

    def test_insufficient_data(self, make_series):
        with pytest.raises(InsufficientData):
            rf.concavity_report(make_series([1.0, 2.0], slope=1.0), 2.0, 1)

    def test_nonuniform_times_linear_still_flat(self, make_series):
        times = np.array([1.0, 1.1, 1.35, 1.5, 1.9, 2.0])
        r = rf.concavity_report(make_series(times, slope=3.0), 2.0, 1)
        assert r.passed

    def test_tolerance_monotonicity(self, mixture_run):
        tight = rf.concavity_report(mixture_run.snapshots, 1.5, 1, tol=1e-6)
        loose = rf.concavity_report(mixture_run.snapshots, 1.5, 1, tol=2e-6)
        assert loose.passed or not tight.passed


class TestUpsilonMonotone:
    def test_barenblatt_constant_at_gamma(self, barenblatt_run):
        # equality case: constant up to the 512-node quadrature wiggle
        r = rf.upsilon_monotone(barenblatt_run.snapshots, tol=1e-4)
        assert r.passed
        gamma = rf.gamma_const(2.0, 1)
        ups = np.array([s.upsilon for s in barenblatt_run.snapshots])
        assert np.max(np.abs(ups - gamma)) < 1e-3 * gamma

    def test_mixture_decreases_toward_gamma(self, mixture_run):
        assert rf.upsilon_monotone(mixture_run.snapshots).passed
        ups = np.array([s.upsilon for s in mixture_run.snapshots])
        assert ups[-1] < ups[0]
        assert ups[-1] > rf.gamma_const(1.5, 1) * (1.0 - 1e-3)

    def test_reversed_series_fails(self, mixture_run):
        assert not rf.upsilon_monotone(list(reversed(mixture_run.snapshots))).passed

    def test_insufficient(self, mixture_run):
        with pytest.raises(InsufficientData):
            rf.upsilon_monotone(mixture_run.snapshots[:1])


class TestDeBruijn:
    def test_heat_flow_gaussian(self):
        # dH/dt = n/(2t) = I exactly on the kernel; residual is the fd error
        grid = rf.Grid.cartesian(1024, 25.0)
        f0 = rf.sample_gaussian(grid, 1.0, normalize=True)
        params = rf.DiffusionParams(p=1.0, dim=1, t_start=1.0, t_end=2.0, snapshot_count=9)
        run = rf.evolve(f0, params)
        r = rf.debruijn_check(run.snapshots, 1.0)
        assert r.passed and "residual" in r.detail

    def test_pme_barenblatt(self, barenblatt_run):
        assert rf.debruijn_check(barenblatt_run.snapshots, 2.0).passed

    def test_second_order_in_snapshot_spacing(self, barenblatt_run):
        import re

        fine = rf.debruijn_check(barenblatt_run.snapshots, 2.0)
        coarse = rf.debruijn_check(barenblatt_run.snapshots[::2], 2.0)
        get = lambda c: float(re.search(r"residual ([\d.eE+-]+)", c.detail).group(1))
        assert get(coarse) / get(fine) > 3.0

    def test_needs_uniform_times(self, make_series):
        series = make_series([1.0, 1.1, 1.3, 1.7], slope=2.0)
        with pytest.raises(InsufficientData):
            rf.debruijn_check(series, 2.0)


class TestDissipation:
    def test_fast_diffusion_residual(self, fast_diffusion_run):
        r = rf.dissipation_check(fast_diffusion_run.snapshots, 0.9, 1)
        assert r.passed and r.margin > 0.0

    def test_trace_bound_every_snapshot(self, fast_diffusion_run):
        for fld in fast_diffusion_run.fields:
            rep = rf.concavity_condition_chain(fld, 0.9, 1)
            assert rep.trace_margin >= -1e-12

    def test_residual_decreases_under_refinement(self):
        residuals = []
        for nodes, snaps in ((512, 6), (1024, 11)):
            grid = rf.Grid.cartesian(nodes, 12.0)
            f0 = rf.sample_mixture(grid, seed=3, var_range=(1.5, 3.0))
            params = rf.DiffusionParams(p=0.9, dim=1, t_start=1.0, t_end=1.1,
                                        snapshot_count=snaps)
            run = rf.evolve(f0, params, with_dissipation=True)
            r = rf.dissipation_check(run.snapshots, 0.9, 1)
            residuals.append(r.tolerance - r.margin)
        assert residuals[1] < residuals[0]

    def test_requires_dissipation_column(self, mixture_run):
        series = [dataclasses.replace(s, d_p=None) for s in mixture_run.snapshots]
        with pytest.raises(InsufficientData):
            rf.dissipation_check(series, 1.5, 1)


class TestConditionChain:
    def test_barenblatt_is_extremal(self):
        spec = rf.barenblatt_spec(2.0, 1)
        grid = rf.Grid.radial(1, 4096, rf.support_radius(spec))
        f = rf.sample_barenblatt_from_spec(grid, spec)
        rep = rf.concavity_condition_chain(f, 2.0, 1)
        # every inequality in the chain is tight on the source solution
        for name, margin in rep.margins().items():
            assert abs(margin) < 1e-5, name

    @pytest.mark.parametrize("seed", range(6))
    def test_mixtures_satisfy_chain(self, seed):
        grid = rf.Grid.cartesian(1024, 12.0)
        f = rf.sample_mixture(grid, seed=seed)
        for p in (0.8, 1.5, 2.0):
            assert rf.concavity_condition_chain(f, p, 1).holds(slack=1e-8)

    def test_chain_agrees_with_concavity_verdict(self, fast_diffusion_run):
        # pointwise sigma-condition >= 0 along the run implies the
        # finite-difference curvature check reaches the same verdict
        margins = [rf.concavity_condition_chain(f, 0.9, 1).concavity_margin
                   for f in fast_diffusion_run.fields]
        assert all(m >= 0.0 for m in margins)
        assert rf.concavity_report(fast_diffusion_run.snapshots, 0.9, 1).passed

    def test_sigma_above_nu_breaks_chain(self):
        spec = rf.barenblatt_spec(2.0, 1)
        grid = rf.Grid.radial(1, 2048, rf.support_radius(spec))
        f = rf.sample_barenblatt_from_spec(grid, spec)
        nu = rf.coefficients(2.0, 1).nu
        rep = rf.concavity_condition_chain(f, 2.0, 1, sigma=nu + 0.1)
        assert not rep.holds()

    def test_rejects_p_one(self, mixture_run):
        with pytest.raises(DomainError):
            rf.concavity_condition_chain(mixture_run.fields[0], 1.0, 1)


class TestIsoperimetric:
    def test_barenblatt_margin_near_zero(self):
        spec = rf.barenblatt_spec(1.5, 1)
        grid = rf.Grid.radial(1, 4096, rf.support_radius(spec))
        f = rf.sample_barenblatt_from_spec(grid, spec)
        r = rf.isoperimetric_check(f, 1.5, 1)
        assert r.passed and abs(r.margin) < 1e-4 * rf.gamma_const(1.5, 1)

    @pytest.mark.parametrize("p", [0.8, 1.5, 2.0])
    def test_seeded_mixtures(self, p):
        grid = rf.Grid.cartesian(1024, 12.0)
        gamma = rf.gamma_const(p, 1)
        for seed in range(10):
            f = rf.sample_mixture(grid, seed=seed)
            r = rf.isoperimetric_check(f, p, 1)
            assert r.margin >= -1e-3 * gamma

    def test_margin_dilation_invariant(self):
        grid = rf.Grid.cartesian(1024, 10.0)
        f = rf.sample_mixture(grid, seed=4)
        base = rf.isoperimetric_check(f, 1.5, 1).margin
        for a in (0.5, 2.0):
            scaled = rf.isoperimetric_check(rf.rescale(f, a), 1.5, 1).margin
            assert scaled == pytest.approx(base, rel=1e-6)

    def test_wrong_gamma_fails(self):
        # inflating the tolerance reference: a mixture fails against gamma * 2
        grid = rf.Grid.cartesian(512, 10.0)
        f = rf.sample_mixture(grid, seed=4)
        margin = rf.upsilon(f, 1.5) - 2.0 * rf.gamma_const(1.5, 1)
        assert margin < 0.0  # the doctored bound is violated, check is falsifiable

    def test_out_of_range_rejected(self):
        grid = rf.Grid.radial(3, 256, 8.0)
        f = rf.sample_mixture(grid, seed=0, mean_range=(0.0, 2.0))
        with pytest.raises(DomainError):
            rf.isoperimetric_check(f, 0.58, 3)


class TestBarenblattConvergence:
    def test_barenblatt_data_is_fixed_point(self, barenblatt_run):
        d = rf.rescaled_l1_distances(barenblatt_run, 2.0, 1)
        assert np.all(d < 1e-3)  # stays at scheme-error level
        # the distance floor wiggles at quadrature level, hence the wider slack
        r = rf.barenblatt_convergence(barenblatt_run, 2.0, 1, target=1e-2, slack=1e-4)
        assert r.passed

    def test_insufficient_snapshots(self, barenblatt_run):
        import dataclasses as dc

        short = dc.replace(barenblatt_run, snapshots=barenblatt_run.snapshots[:2],
                           fields=barenblatt_run.fields[:2])
        with pytest.raises(InsufficientData):
            rf.barenblatt_convergence(short, 2.0, 1)


class TestSobolevCheck:
    def test_extremal_and_bumps(self):
        n = 3
        spec = rf.barenblatt_spec((n - 1.0) / n, n)
        grid = rf.Grid.radial(n, 131072, 4000.0)
        b = rf.sample_barenblatt_from_spec(grid, spec)
        extremal = rf.DensityField(grid, b.values ** ((n - 2.0) / (2.0 * n)))
        r = rf.sobolev_check([extremal], n)
        assert r.passed and abs(r.margin) < 1e-3
        bump_grid = rf.Grid.radial(n, 2048, 15.0)
        bumps = []
        for seed in range(3):
            m = rf.sample_mixture(bump_grid, seed=seed, mean_range=(0.0, 2.0))
            bumps.append(rf.DensityField(bump_grid, m.values ** (1.0 / 6.0)))
        r2 = rf.sobolev_check(bumps, n)
        assert r2.passed and r2.margin > 0.0

    def test_low_dimension_rejected(self):
        with pytest.raises(DomainError):
            rf.sobolev_check([], 2)


class TestAssembleReport:
    def test_bundles_series_and_verdicts(self, fast_diffusion_run):
        rep = rf.assemble_report(fast_diffusion_run.snapshots, 0.9, 1)
        assert rep.passed
        assert set(rep.checks) == {"concavity", "upsilon_monotone", "debruijn", "dissipation"}
        assert rep.n_p_second_differences.shape == (9,)
        assert rep.upsilon_rises.shape == (10,)
        assert np.all(rep.upsilon_rises <= 0.0)

    def test_skips_dissipation_without_dp(self, mixture_run):
        series = [dataclasses.replace(s, d_p=None) for s in mixture_run.snapshots]
        rep = rf.assemble_report(series, 1.5, 1)
        assert "dissipation" not in rep.checks
        assert rep.passed


class TestDeterminism:
    def test_same_series_same_verdicts(self, mixture_run):
        a = rf.concavity_report(mixture_run.snapshots, 1.5, 1)
        b = rf.concavity_report(mixture_run.snapshots, 1.5, 1)
        assert a == b

    def test_seeded_mixture_reproducible(self):
        grid = rf.Grid.cartesian(512, 10.0)
        f1 = rf.sample_mixture(grid, seed=33)
        f2 = rf.sample_mixture(grid, seed=33)
        np.testing.assert_array_equal(f1.values, f2.values)
