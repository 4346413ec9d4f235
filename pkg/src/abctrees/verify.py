"""Numeric checks of the inequalities behind the extremal-tree argument.

Each check scans a finite integer grid in binary64, locates the point of
smallest slack and re-evaluates that point with mpmath.  Margins are
oriented so that a positive value means the claimed inequality holds there;
``direction`` spells out which side is meant to be larger.  Unbounded ranges
are covered by an exhaustive stretch plus geometric sampling, and ``range``
states exactly what was scanned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from mpmath import mp

from .contrib import delta0_array, leaf_contribution_array, leaf_contribution_mp
from .numeric import extended, mpf_f
from .search import (_fig1_mp, _fig2_mp, asymptotic_coefficients, extremal_case)
from .transforms import leaf_move_delta


@dataclass
class VerificationReport:
    name: str
    range: str
    checked: int
    worst_margin: float
    passed: bool
    worst_point: tuple
    direction: str
    recheck_margin: float = float("nan")
    notes: dict = field(default_factory=dict)


def _f(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.sqrt((a + b - 2) / (a * b))


def _f_step(a, d):
    """f(a, d + 1) - f(a, d) without cancellation."""
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    g0 = (a + d - 2) / (a * d)
    g1 = (a + d - 1) / (a * (d + 1))
    return -(a - 2) / (a * d * (d + 1)) / (np.sqrt(g0) + np.sqrt(g1))


def _geometric(lo: int, hi: int, count: int) -> np.ndarray:
    return np.unique(np.geomspace(lo, hi, count).round().astype(np.int64))


def _report(name: str, grid: str, margins: np.ndarray, points: np.ndarray,
            exact: Callable, direction: str, notes: dict | None = None,
            extra_ok: bool = True) -> VerificationReport:
    i = int(np.argmin(margins))
    point = tuple(int(x) for x in np.atleast_1d(points[i]))
    with extended():
        again = exact(*point)
        recheck = float(again)
    worst = float(margins[i])
    # The float scan and the extended re-evaluation must agree in sign.
    passed = bool(worst > 0 and again > 0 and extra_ok)
    return VerificationReport(name, grid, int(margins.size), worst, passed, point,
                              direction, recheck, notes or {})


# -- mixed-vertex leaf bound ------------------------------------------------

def _no_r_and_m(d, k):
    d = np.asarray(d, dtype=float)
    return _f(d, 1) + np.sqrt(1 / (d * (d - 2) ** 2)) + delta0_array(k, d)


def _no_r_and_m_mp(d, k):
    d = mp.mpf(d)
    return (mpf_f(d, 1) + mp.sqrt(1 / (d * (d - 2) ** 2))
            + k * leaf_contribution_mp(k, d) - (k + 1) * leaf_contribution_mp(k + 1, d))


def verify_noRandM(d_max: int = 10_000) -> VerificationReport:
    """f(d,1) + sqrt(1/(d(d-2)^2)) + Delta0(k,d) > 0 for 26 <= d <= 100, 5 <= k <= 11.

    Beyond d = 100 the value should increase with d; that is scanned up to
    ``d_max``.  For d <= 25 the inequality is expected to fail somewhere.
    """
    ks = np.arange(5, 12)
    d, k = np.meshgrid(np.arange(26, 101), ks, indexing="ij")
    margins = _no_r_and_m(d, k).ravel()
    points = np.stack([d.ravel(), k.ravel()], axis=1)

    tail_d, tail_k = np.meshgrid(np.arange(100, d_max + 1), ks, indexing="ij")
    tail = _no_r_and_m(tail_d, tail_k)
    rising = bool(np.all(np.diff(tail, axis=0) > 0))
    tail_positive = bool(np.all(tail > 0))

    low_d, low_k = np.meshgrid(np.arange(3, 26), ks, indexing="ij")
    low = _no_r_and_m(low_d, low_k)
    failing = [(int(a), int(b)) for a, b in zip(low_d[low <= 0], low_k[low <= 0])]
    notes = {
        "increasing_for_d_ge_100": rising,
        "positive_for_100_le_d_le_max": tail_positive,
        "tail_range": f"100 <= d <= {d_max}",
        "failing_points_d_le_25": failing,
        "largest_failing_d": max((a for a, _ in failing), default=None),
    }
    return _report("noRandM", "26 <= d <= 100, 5 <= k <= 11", margins, points,
                   _no_r_and_m_mp, "lhs > 0", notes,
                   extra_ok=rising and tail_positive and bool(failing))


def verify_noRandM2() -> VerificationReport:
    """f(d,1) + sqrt(1/(d(d-2)^2)) + Delta0(10,120) > 0 for 3 <= d <= 25."""
    d = np.arange(3, 26)
    shift = float(delta0_array(10, 120))
    margins = _f(d, 1) + np.sqrt(1 / (d * (d - 2.0) ** 2)) + shift

    def exact(d):
        d = mp.mpf(d)
        return (mpf_f(d, 1) + mp.sqrt(1 / (d * (d - 2) ** 2))
                + 10 * leaf_contribution_mp(10, 120) - 11 * leaf_contribution_mp(11, 120))

    notes = {"argmin_d": int(d[np.argmin(margins)]), "d_2_excluded": "d - 2 = 0"}
    return _report("noRandM2", "3 <= d <= 25", margins, d, exact, "lhs > 0", notes)


# -- rootless argument --------------------------------------------------------

def _lhs_10vs11(d):
    return _f_step(11, d) + _f_step(12, d)


def verify_10vs11(exhaustive_to: int = 100_000, sample_to: int = 1_000_000) -> VerificationReport:
    """f(11,d+1) - f(11,d) + f(12,d+1) - f(12,d) <= 6e-4 for d >= 120.

    The left side is negative, so the stated bound holds trivially; the
    notes record its sign and the largest absolute value.
    """
    d = np.concatenate([np.arange(120, exhaustive_to + 1),
                        _geometric(exhaustive_to + 1, sample_to, 2000)])
    lhs = _lhs_10vs11(d)
    margins = 6e-4 - lhs

    def exact(d):
        return mp.mpf("6e-4") - (mpf_f(11, d + 1) - mpf_f(11, d)
                                 + mpf_f(12, d + 1) - mpf_f(12, d))

    notes = {
        "lhs_all_negative": bool(np.all(lhs < 0)),
        "max_abs_lhs": float(np.max(np.abs(lhs))),
        "abs_lhs_at_120": float(abs(lhs[0])),
        "abs_lhs_at_max": float(abs(lhs[-1])),
        "abs_bound_holds": bool(np.all(np.abs(lhs) <= 6e-4)),
    }
    return _report("10vs11", f"120 <= d <= {exhaustive_to} exhaustive, "
                   f"geometric samples to {sample_to}", margins, d, exact,
                   "lhs <= 6e-4", notes)


def _rootless(d, shift=0.0054):
    d = np.asarray(d, dtype=float)
    return (10 * _f(1, 11) + _f(1, d + 1) - 11 * _f(1, 12) + _f(11, d + 1)
            + (d - 1) * _f_step(11, d) - _f(12, d) + shift)


def verify_lemma9_rootless_bound(d_max: int = 100_000) -> VerificationReport:
    """The displayed composite ending in ``+ 0.0054`` is positive and increasing for d >= 120.

    Notes also carry the composite with ``- 0.0054`` and with the exact
    worst-case term ``9 (f(12,d+1) - f(12,d))``, and where each turns positive.
    """
    d = np.arange(120, d_max + 1)
    margins = _rootless(d)
    sample = _geometric(120, d_max, 300)
    rising = bool(np.all(np.diff(_rootless(sample)) > 0))

    def exact(d):
        return (10 * mpf_f(1, 11) + mpf_f(1, d + 1) - 11 * mpf_f(1, 12) + mpf_f(11, d + 1)
                + (d - 1) * (mpf_f(11, d + 1) - mpf_f(11, d)) - mpf_f(12, d)
                + mp.mpf("0.0054"))

    minus = _rootless(d, -0.0054)
    worst_r = _rootless(d, 0.0) + 9 * _f_step(12, d)

    def first_positive(v):
        idx = np.flatnonzero(v > 0)
        return int(d[idx[0]]) if idx.size and np.all(v[idx[0]:] > 0) else None

    notes = {
        "increasing_sampled": rising,
        "value_at_120": float(margins[0]),
        "with_minus_0.0054_at_120": float(minus[0]),
        "with_minus_0.0054_positive_from": first_positive(minus),
        "with_exact_r9_term_at_120": float(worst_r[0]),
        "with_exact_r9_term_positive_from": first_positive(worst_r),
    }
    return _report("lemma9_rootless_bound", f"120 <= d <= {d_max}", margins, d, exact,
                   "lhs > 0", notes, extra_ok=rising)


def verify_leaf37_bound(l_max: int = 10_000) -> VerificationReport:
    """f(l+2, 1) - c(9, l+4) > 0 for 37 <= l <= l_max, and fails for some l < 37."""
    l = np.arange(37, l_max + 1)
    margins = _f(l + 2, 1) - leaf_contribution_array(9, l + 4)
    small = np.arange(1, 37)
    small_margin = _f(small + 2, 1) - leaf_contribution_array(9, small + 4)
    failing = small[small_margin <= 0]

    def exact(l):
        return mpf_f(l + 2, 1) - leaf_contribution_mp(9, l + 4)

    notes = {
        "largest_failing_l": int(failing.max()) if failing.size else None,
        "margin_at_36": float(small_margin[-1]),
        "margin_at_37": float(margins[0]),
    }
    return _report("leaf37_bound", f"37 <= l <= {l_max}", margins, l, exact, "lhs > 0",
                   notes, extra_ok=bool(failing.size))


# -- one-root crossover ---------------------------------------------------------

def _crossover_gap(p, r):
    """(Second one-root tree) - (first one-root tree), as a float array."""
    p = np.asarray(p, dtype=float)
    r = np.asarray(r, dtype=float)
    first = 10 * (p - r) * leaf_contribution_array(10, p) + 11 * r * leaf_contribution_array(11, p)
    second = (10 * (p + r - 9) * leaf_contribution_array(10, p + 1)
              + 9 * (10 - r) * leaf_contribution_array(9, p + 1))
    return second - first


def verify_crossover(exhaustive_to: int = 10_000, sample_to: int = 100_000) -> VerificationReport:
    """First one-root tree cheaper for r <= 7, dearer for r in {8, 9}, for p >= 1000."""
    p = np.concatenate([np.arange(1000, exhaustive_to + 1),
                        _geometric(exhaustive_to + 1, sample_to, 500)])
    pp, rr = np.meshgrid(p, np.arange(10), indexing="ij")
    sign = np.where(rr <= 7, 1.0, -1.0)
    margins = (sign * _crossover_gap(pp, rr)).ravel()
    points = np.stack([pp.ravel(), rr.ravel()], axis=1)

    def exact(p, r):
        gap = _fig2_mp(10 * p + r) - _fig1_mp(10 * p + r)
        return gap if r <= 7 else -gap

    at_1000 = {r: float(m) for r, m in enumerate(
        np.where(np.arange(10) <= 7, 1, -1) * _crossover_gap(1000, np.arange(10)))}
    forward = {r: at_1000[r] for r in range(8)}
    reverse = {r: at_1000[r] for r in (8, 9)}
    r0 = _crossover_gap(np.array([1000, exhaustive_to, sample_to]), 0)
    notes = {
        "margin_at_p1000": at_1000,
        "worst_forward_r": min(forward, key=forward.get),
        "worst_reverse_r": min(reverse, key=reverse.get),
        "r0_margin_p1000_p1e4_p1e5": [float(x) for x in r0],
    }
    return _report("crossover", f"1000 <= p <= {exhaustive_to} exhaustive, geometric "
                   f"samples to {sample_to}, 0 <= r <= 9", margins, points, exact,
                   "first < second for r <= 7; first > second for r in {8, 9}", notes)


# -- leaf move between sibling branches --------------------------------------------

def verify_lemma7_leaf_move(d_max: int = 10_000) -> VerificationReport:
    """The leaf-move delta is positive for 5 <= l + 2 <= k <= 16, k + 1 <= d <= d_max."""
    rows = []
    for k in range(5, 17):
        for l in range(3, k - 1):
            d = np.arange(k + 1, d_max + 1, dtype=float)
            vals = (_f(d, k + 1) + _f(d, l + 1) - _f(d, k) - _f(d, l + 2)
                    + k * _f(k + 1, 1) + l * _f(l + 1, 1)
                    - (k - 1) * _f(k, 1) - (l + 1) * _f(l + 2, 1))
            rows.append((vals, np.stack([d, np.full_like(d, k), np.full_like(d, l)], axis=1)))
    margins = np.concatenate([v for v, _ in rows])
    points = np.concatenate([p for _, p in rows])

    def exact(d, k, l):
        return (mpf_f(d, k + 1) + mpf_f(d, l + 1) - mpf_f(d, k) - mpf_f(d, l + 2)
                + k * mpf_f(k + 1, 1) + l * mpf_f(l + 1, 1)
                - (k - 1) * mpf_f(k, 1) - (l + 1) * mpf_f(l + 2, 1))

    report = _report("lemma7_leaf_move", f"5 <= l + 2 <= k <= 16, k + 1 <= d <= {d_max}",
                     margins, points, exact, "delta > 0")
    d, k, l = report.worst_point
    report.notes["float_formula_at_worst"] = leaf_move_delta(d, k, l)
    return report


# -- asymptotic remainder ---------------------------------------------------------

def _residual_mp(t: int):
    case, _ = extremal_case(t)
    r = t % 10
    slope, intercept, per_r, per_gap = asymptotic_coefficients()
    approx = slope * t + intercept + (per_r * r if case == "fig1" else per_gap * (10 - r))
    exact = _fig1_mp(t) if case == "fig1" else _fig2_mp(t)
    return abs(exact - approx)


def asymptotic_residuals(t_max: int = 1_000_000, exhaustive_to: int = 10_000) -> VerificationReport:
    """t * |closed form - expansion| stays bounded and settles per residue class.

    Every t up to ``exhaustive_to`` is evaluated, then 40 geometric samples
    per residue class up to ``t_max``.  Each class must settle: over its
    samples above t_max / 100 the spread of t R(t) is within 10% of its last
    value.  Residuals are formed in extended precision to avoid cancelling
    two numbers of size ~t.
    """
    ts = list(range(1195, min(exhaustive_to, t_max) + 1))
    for r in range(10):
        base = _geometric(max(exhaustive_to, 1195) // 10, t_max // 10, 40)
        ts.extend(int(10 * p + r) for p in base if exhaustive_to < 10 * p + r <= t_max)
    ts.extend(t for t in (10_000, 100_000, 1_000_000) if 1195 <= t <= t_max)
    ts = sorted(set(ts))
    with extended():
        scaled = {t: float(t * _residual_mp(t)) for t in ts}
    residual = np.array([scaled[t] / t for t in ts])
    tr = np.array([scaled[t] for t in ts])
    t_arr = np.array(ts)
    settled = {}
    limit = {}
    for r in range(10):
        mask = (t_arr % 10 == r) & (t_arr >= t_max // 100)
        tail = tr[mask]
        limit[r] = float(tail[-1])
        settled[r] = bool(tail.size and np.ptp(tail) <= 0.1 * abs(tail[-1]))
    r0 = [scaled[t] for t in (10_000, 100_000, 1_000_000) if t in scaled]
    r0_ok = bool(r0) and max(abs(x - r0[-1]) for x in r0) < 0.1 * abs(r0[-1])
    notes = {
        "sup_t_times_R": float(tr.max()),
        "t_times_R_last_per_r": limit,
        "settled_per_r": settled,
        "r0_t_times_R_at_1e4_1e5_1e6": r0,
        "r0_within_10pct": r0_ok,
    }
    return _report("asymptotic_residuals", f"1195 <= t <= {t_max}",
                   residual, t_arr, lambda t: _residual_mp(t), "R(t) > 0", notes,
                   extra_ok=bool(np.isfinite(tr).all()) and all(settled.values()) and r0_ok)


REPORTS: dict[str, Callable[[], VerificationReport]] = {
    "noRandM": verify_noRandM,
    "noRandM2": verify_noRandM2,
    "10vs11": verify_10vs11,
    "crossover": verify_crossover,
    "lemma9_rootless_bound": verify_lemma9_rootless_bound,
    "leaf37_bound": verify_leaf37_bound,
    "lemma7_leaf_move": verify_lemma7_leaf_move,
    "asymptotic_residuals": asymptotic_residuals,
}


def run_all() -> list[VerificationReport]:
    return [fn() for fn in REPORTS.values()]
