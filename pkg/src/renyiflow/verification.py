"""Pass/fail verdicts for the headline claims on solver time series.

Every check is a deterministic function of (series, tolerances) and each one
is falsifiable: the test suite feeds constructed counter-series (convex
entropy power, increasing Upsilon) to prove the verdicts are non-vacuous.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import barenblatt_spec, coefficients, gamma_const
from .errors import DegenerateError, DomainError, InsufficientData
from .functionals import (
    FunctionalSnapshot,
    d_p,
    fisher_p,
    p_norm_integral,
    pressure_laplacian_integral,
    self_similar_rescale,
    sobolev_pair,
    upsilon,
)
from .grids import DensityField
from .initial_data import sample_barenblatt_from_spec

# Default tolerances: first-order scheme error dominates the identities that
# involve discrete Hessians, hence the looser dissipation bound.
TOL_CONCAVITY = 1e-6
TOL_DEBRUIJN = 1e-2
TOL_DISSIPATION = 5e-2
TOL_ISOPERIMETRIC = 1e-3
TOL_UPSILON = 1e-8


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    margin: float       # signed; negative means violation for inequality checks
    tolerance: float
    detail: str = ""


@dataclass(frozen=True)
class ExperimentReport:
    """A functional time series with its derived arrays and verdicts."""

    snapshots: tuple[FunctionalSnapshot, ...]
    n_p_second_differences: np.ndarray
    upsilon_rises: np.ndarray
    checks: dict[str, CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())


def _times_values(series, attr: str) -> tuple[np.ndarray, np.ndarray]:
    t = np.array([s.t for s in series], dtype=float)
    y = np.array([getattr(s, attr) for s in series], dtype=float)
    return t, y


def second_differences(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Three-point second-derivative estimates, safe for non-uniform times."""
    dt_fwd = t[2:] - t[1:-1]
    dt_bwd = t[1:-1] - t[:-2]
    slope_fwd = (y[2:] - y[1:-1]) / dt_fwd
    slope_bwd = (y[1:-1] - y[:-2]) / dt_bwd
    return 2.0 * (slope_fwd - slope_bwd) / (t[2:] - t[:-2])


def concavity_report(series, p: float, n: int, tol: float = TOL_CONCAVITY) -> CheckResult:
    """All second differences of N_p must stay below tol in curvature units.

    The curvature scale is max|dN/dt| / mean(dt), so tol is dimensionless.
    """
    if len(series) < 3:
        raise InsufficientData("concavity needs at least 3 snapshots")
    t, y = _times_values(series, "n_p")
    d2 = second_differences(t, y)
    slopes = np.diff(y) / np.diff(t)
    scale = float(np.max(np.abs(slopes))) / float(np.mean(np.diff(t)))
    if not scale > 0.0:
        scale = 1.0
    worst = int(np.argmax(d2))
    violation = float(d2[worst]) / scale
    return CheckResult("concavity", violation <= tol, tol - violation, tol,
                       f"max normalized curvature {violation:.3e} at t={t[worst + 1]:.6g}")


def upsilon_monotone(series, tol: float = TOL_UPSILON) -> CheckResult:
    """Upsilon_p(t) must be nonincreasing up to tol (relative to its start)."""
    if len(series) < 2:
        raise InsufficientData("monotonicity needs at least 2 snapshots")
    t, y = _times_values(series, "upsilon")
    rises = np.diff(y)
    worst = int(np.argmax(rises))
    violation = float(rises[worst]) / abs(y[0])
    return CheckResult("upsilon_monotone", violation <= tol, tol - violation, tol,
                       f"max relative rise {violation:.3e} at t={t[worst + 1]:.6g}")


def _require_uniform(t: np.ndarray) -> float:
    dt = np.diff(t)
    if dt.size < 2 or np.max(np.abs(dt - dt[0])) > 1e-8 * dt[0]:
        raise InsufficientData("check needs uniformly spaced snapshots")
    return float(dt[0])


def debruijn_check(series, p: float, tol: float = TOL_DEBRUIJN) -> CheckResult:
    """Central-difference dH_p/dt against I_p; max relative residual.

    At p = 1 the snapshots already carry the Shannon quantities, so the same
    formula checks the classical identity.
    """
    if len(series) < 3:
        raise InsufficientData("needs at least 3 snapshots")
    t, h = _times_values(series, "h_p")
    _, i = _times_values(series, "i_p")
    dt = _require_uniform(t)
    dh = (h[2:] - h[:-2]) / (2.0 * dt)
    res = np.abs(dh - i[1:-1]) / np.abs(i[1:-1])
    worst = int(np.argmax(res))
    value = float(res[worst])
    return CheckResult("debruijn", value < tol, tol - value, tol,
                       f"max relative residual {value:.3e} at t={t[worst + 1]:.6g}")


def dissipation_check(series, p: float, n: int, tol: float = TOL_DISSIPATION) -> CheckResult:
    """-dF_p/dt against the closed-form dissipation integrand D_p."""
    if len(series) < 3:
        raise InsufficientData("needs at least 3 snapshots")
    if any(s.d_p is None for s in series):
        raise InsufficientData("series lacks D_p; evolve with dissipation enabled")
    t, f = _times_values(series, "f_p")
    d = np.array([s.d_p for s in series], dtype=float)
    if np.any(np.abs(d[1:-1]) < 1e-300):
        raise DegenerateError("D_p underflowed; residual is meaningless")
    dt = _require_uniform(t)
    df = -(f[2:] - f[:-2]) / (2.0 * dt)
    res = np.abs(df - d[1:-1]) / np.abs(d[1:-1])
    worst = int(np.argmax(res))
    value = float(res[worst])
    return CheckResult("dissipation", value < tol, tol - value, tol,
                       f"max relative residual {value:.3e} at t={t[worst + 1]:.6g}")


@dataclass(frozen=True)
class ChainReport:
    """Margins of the inequality chain that proves entropy-power concavity.

    All integrals are evaluated fresh from the field.  Margins are normalized
    by the magnitude of their own right-hand side; nonnegative means the
    inequality holds.
    """

    sigma: float
    concavity_margin: float       # sigma-condition: D E - F^2 >= (sigma/(p-1)) F^2 form
    cauchy_schwarz_margin: float  # F^2 <= (int u^p)(int u^p (Lap e_p')^2)
    trace_margin: float           # D_p >= 2(1/n + p - 1) int u^p (Lap e_p')^2
    sufficient_margin: float      # D_p >= (sigma + p - 1) int u^p (Lap e_p')^2

    def margins(self) -> dict[str, float]:
        return {
            "concavity_condition": self.concavity_margin,
            "cauchy_schwarz": self.cauchy_schwarz_margin,
            "trace_bound": self.trace_margin,
            "sufficient_condition": self.sufficient_margin,
        }

    def holds(self, slack: float = 1e-8) -> bool:
        return all(v >= -slack for v in self.margins().values())


def concavity_condition_chain(f: DensityField, p: float, n: int | None = None,
                              sigma: float | None = None) -> ChainReport:
    """Evaluate the proof's inequality chain on one density.

    sigma defaults to its optimal value nu = 2/n + (p - 1); any larger sigma
    breaks the chain already on the Barenblatt extremal.
    """
    if p == 1.0:
        raise DomainError("the chain is formulated for p != 1")
    n = f.grid.dim if n is None else n
    nu = coefficients(p, n).nu
    sigma = nu if sigma is None else sigma
    if not sigma > 0.0:
        raise DomainError("sigma must be positive")
    s_p = p_norm_integral(f, p)
    f_val = fisher_p(f, p)[0]
    d_val = d_p(f, p, n)
    lap_int = pressure_laplacian_integral(f, p)
    # eq-condition with (p-1) E_p = int u^p: D int u^p >= (sigma + p - 1) F^2
    lhs = d_val * s_p
    rhs = (sigma + p - 1.0) * f_val ** 2
    concavity_margin = (lhs - rhs) / abs(rhs)
    cs = (s_p * lap_int - f_val ** 2) / (s_p * lap_int)
    trace = (d_val - 2.0 * (1.0 / n + p - 1.0) * lap_int) / abs(d_val)
    suff_rhs = (sigma + p - 1.0) * lap_int
    sufficient = (d_val - suff_rhs) / abs(suff_rhs) if suff_rhs != 0.0 else d_val
    return ChainReport(sigma, concavity_margin, cs, trace, sufficient)


def isoperimetric_check(f: DensityField, p: float, n: int | None = None,
                        rel_tol: float = TOL_ISOPERIMETRIC) -> CheckResult:
    """Margin Upsilon_p(f) - gamma(n,p), required >= -rel_tol * gamma."""
    n = f.grid.dim if n is None else n
    if not p > n / (n + 2.0):
        raise DomainError(f"isoperimetric bound needs p > n/(n+2) = {n / (n + 2.0)}")
    gamma = gamma_const(p, n)
    margin = upsilon(f, p, n) - gamma
    return CheckResult("isoperimetric", margin >= -rel_tol * gamma, margin,
                       rel_tol * gamma, f"Upsilon - gamma = {margin:.6e} (gamma {gamma:.6e})")


def rescaled_l1_distances(run, p: float, n: int) -> np.ndarray:
    """L1 distance of each rescaled field to the unit-mass Barenblatt profile."""
    spec = barenblatt_spec(p, n, "pde")
    out = []
    for snap, fld in zip(run.snapshots, run.fields):
        u = self_similar_rescale(fld, snap.t, p, n)
        ref = sample_barenblatt_from_spec(u.grid, spec, 1.0)
        out.append(float(u.grid.weights() @ np.abs(u.values - ref.values)))
    return np.array(out)


def barenblatt_convergence(run, p: float, n: int, target: float = 1e-2,
                           slack: float = 1e-6, upsilon_tol: float = 1e-2) -> CheckResult:
    """Long-horizon convergence to the self-similar profile.

    The rescaled L1 distance must be nonincreasing (within slack), end below
    target, and Upsilon must end within upsilon_tol * gamma of gamma.
    """
    if len(run.snapshots) < 3:
        raise InsufficientData("needs at least 3 snapshots")
    if not run.fields:
        raise InsufficientData("run was evolved without keeping fields")
    d = rescaled_l1_distances(run, p, n)
    rises = np.diff(d)
    monotone = bool(np.all(rises <= slack))
    gamma = gamma_const(p, n)
    ups_gap = abs(run.snapshots[-1].upsilon - gamma) / gamma
    ok = monotone and d[-1] < target and ups_gap < upsilon_tol
    return CheckResult(
        "barenblatt_convergence", ok, target - float(d[-1]), target,
        f"final L1 {d[-1]:.3e}, max rise {float(np.max(rises)):.3e}, "
        f"relative Upsilon gap {ups_gap:.3e}")


def assemble_report(series, p: float, n: int,
                    tolerances: dict[str, float] | None = None) -> ExperimentReport:
    """Bundle a series with its derived arrays and the standard verdicts.

    Always runs concavity and Upsilon monotonicity; adds the DeBruijn check
    on uniformly spaced series and the dissipation check when D_p is present.
    """
    tols = tolerances or {}
    t, y = _times_values(series, "n_p")
    checks = {
        "concavity": concavity_report(series, p, n, tols.get("concavity", TOL_CONCAVITY)),
        "upsilon_monotone": upsilon_monotone(series, tols.get("upsilon", TOL_UPSILON)),
    }
    try:
        checks["debruijn"] = debruijn_check(series, p, tols.get("debruijn", TOL_DEBRUIJN))
    except InsufficientData:
        pass
    if all(s.d_p is not None for s in series):
        checks["dissipation"] = dissipation_check(series, p, n,
                                                  tols.get("dissipation", TOL_DISSIPATION))
    ups = np.array([s.upsilon for s in series])
    return ExperimentReport(tuple(series), second_differences(t, y), np.diff(ups), checks)


def sobolev_check(g_samples, n: int, rel_tol: float = 1e-3) -> CheckResult:
    """Sobolev deficits integral|grad g|^2 - S_n (integral g^{2*})^{2/2*} >= -tol."""
    if n <= 2:
        raise DomainError("Sobolev check requires n > 2")
    worst_margin = math.inf
    worst_detail = ""
    for k, g in enumerate(g_samples):
        dirichlet, rhs = sobolev_pair(g, n)
        scale = max(abs(dirichlet), abs(rhs))
        margin = (dirichlet - rhs) / scale
        if margin < worst_margin:
            worst_margin = margin
            worst_detail = f"sample {k}: deficit {dirichlet - rhs:.4e} of scale {scale:.4e}"
    if not math.isfinite(worst_margin):
        raise InsufficientData("no samples provided")
    return CheckResult("sobolev", worst_margin >= -rel_tol, worst_margin, rel_tol, worst_detail)
