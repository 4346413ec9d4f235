"""Structure search for t-minimal trees.

Every shape in the five families is scored in closed form through leaf
contributions; :func:`enumerate_shapes` lists the whole space and
:func:`minimal_tree` finds its minimum.  The latter does not walk the space
one shape at a time (the root-plus-mixed family alone has ~1e7 members at
t = 2400).  Instead it evaluates the cheap families exactly, then discards
blocks of root-plus-mixed and mixed-only shapes whose lower bound already
exceeds the best value found.  Every bound used is valid for all completions
of the block, so the result is the exact minimum over the space.

Within one hub the branch orders are balanced: given the number ``n`` of
branches and the number ``L`` of leaves they carry, ``k = ceil(L / n)`` and
``s = n k - L``.  So a shape is fixed by hub degrees, ``l`` and the split of
leaves between the hubs.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np
from mpmath import mp

from .errors import DomainError, OutOfValidatedRange
from .numeric import FLOAT_MARGIN, extended, mpf_f, tie_tolerance
from .shapes import (MIN_BRANCH_ORDER, MIN_MIXED_ORDER, CandidateShape, Family,
                     shape_abc_mp)

# Pruning slack: generous against float error in the bounds themselves.
PRUNE_SLACK = 1e-7
# Cap on flat (d_M, l) pairs materialised at once.
_CHUNK = 1 << 21


@dataclass(frozen=True)
class SearchCaps:
    kcap: int = 40            # largest branch order considered
    dcap: int | None = None   # largest hub degree; None means t

    def __post_init__(self):
        if self.kcap < MIN_BRANCH_ORDER:
            raise DomainError(f"kcap must be >= {MIN_BRANCH_ORDER}")
        if self.dcap is not None and self.dcap < 1:
            raise DomainError("dcap must be >= 1")

    def degree_limit(self, t: int) -> int:
        return t if self.dcap is None else min(self.dcap, t)


@dataclass(frozen=True)
class ExtremalRecord:
    t: int
    abc: float
    shapes: tuple[CandidateShape, ...]
    order: int
    unique: bool
    cap_touched: bool = False

    @property
    def shape(self) -> CandidateShape:
        return self.shapes[0]


# -- brute-force enumeration -------------------------------------------------

def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def enumerate_shapes(t: int, caps: SearchCaps = SearchCaps()) -> Iterator[CandidateShape]:
    """Yield every shape with ``t`` leaves, family by family, without repeats.

    ``kcap`` bounds branch orders; ``dcap`` bounds the degrees of R, M and the
    star / double-star centres.
    """
    if t < 2:
        return
    D = caps.degree_limit(t)
    K = caps.kcap
    if (t if t >= 3 else 1) <= D:
        yield CandidateShape.star(t)
    for a in range(_ceil_div(t, 2), t - 1):
        if a + 1 <= D:
            yield CandidateShape.double_star(a, t - a)
    for d in range(3, D + 1):
        k = _ceil_div(t, d)
        s = d * k - t
        if MIN_BRANCH_ORDER <= k <= K and d >= k + 1 and (s == 0 or k - 1 >= MIN_BRANCH_ORDER):
            yield CandidateShape.root_only(d, k, s)
    for d in range(MIN_MIXED_ORDER + 1, D + 1):
        top = min(K, d - 1)
        for l in range(1, d - 1):
            n = d - l
            k = _ceil_div(t - l, n)
            if MIN_MIXED_ORDER <= k <= top and t - l > 0:
                yield CandidateShape.mixed_only(d, l, k, n * k - (t - l))
    for d_M in range(MIN_MIXED_ORDER + 1, D + 1):
        top = min(K, d_M - 1)
        for l in range(1, d_M - 1):
            n_M = d_M - l - 1
            for B in range(4 * n_M + 1, n_M * top + 1):
                L_R = t - l - B
                if L_R <= 0:
                    break
                k_M = _ceil_div(B, n_M)
                for d_R in range(d_M, D + 1):
                    n_R = d_R - 1
                    k_R = _ceil_div(L_R, n_R)
                    if k_R < k_M:
                        break
                    if k_R <= top:
                        yield CandidateShape.root_and_mixed(
                            d_R, d_M, l, k_R, n_R * k_R - L_R, k_M, n_M * k_M - B)


# -- vectorised closed forms -------------------------------------------------

def _edge(a, b):
    return np.sqrt((a + b - 2) / (a * b))


def _branch(k, d):
    """ABC weight of one S_k-branch (pendant edges plus hub edge) at hub degree d."""
    return k * np.sqrt(k / (k + 1)) + np.sqrt((k + d - 1) / ((k + 1) * d))


def _block(n, L, d):
    """n balanced branches holding L leaves at a hub of degree d."""
    k = -(-L // n)
    s = n * k - L
    return (n - s) * _branch(k, d) + s * _branch(k - 1, d), k, s


@lru_cache(maxsize=None)
def _min_leaf_cost(d: int, kmax: int) -> float:
    """min over 4 <= k <= kmax of c(k, d); a per-leaf floor for branches at d."""
    k = np.arange(MIN_MIXED_ORDER - 1, kmax + 1, dtype=float)
    return float(np.min(_branch(k, float(d)) / k))


def _leaf_floor_at_root(t: int, kcap: int) -> np.ndarray:
    """Entry K: floor on the per-leaf cost of root branches with orders in [4, K].

    A root holding L_R <= t leaves in branches of order >= k has at most
    (t - 1)/(k - 1) branches, so its degree is at most that plus one.
    """
    k = np.arange(MIN_MIXED_ORDER - 1, kcap + 1, dtype=float)
    d = np.floor((t - 1) / (k - 1)) + 1
    per_k = _branch(k, d) / k
    out = np.full(kcap + 1, np.inf)
    out[MIN_MIXED_ORDER - 1:] = np.minimum.accumulate(per_k)
    return out


@lru_cache(maxsize=None)
def _root_side_floor(L: int, kcap: int) -> float:
    """Cheapest root carrying L leaves in balanced branches of order 4..kcap."""
    n = np.arange(max(1, _ceil_div(L, kcap)), (L - 1) // 4 + 1)
    if n.size == 0:
        return math.inf
    cost, _, _ = _block(n, L, n + 1)
    return float(cost.min())


class _Pool:
    """Evaluated candidates: values plus (family, d_R, d_M, l, k_R, k_M, s_R, s_M)."""

    def __init__(self):
        self.values: list[np.ndarray] = []
        self.params: list[np.ndarray] = []
        self.best = math.inf

    def add(self, family: int, values: np.ndarray, cols: dict[str, np.ndarray]):
        if values.size == 0:
            return
        m = values.size
        block = np.zeros((m, 8), dtype=np.int64)
        block[:, 0] = family
        for j, name in enumerate(("d_R", "d_M", "l", "k_R", "k_M", "s_R", "s_M"), start=1):
            if name in cols:
                block[:, j] = cols[name]
        self.values.append(values)
        self.params.append(block)
        self.best = min(self.best, float(values.min()))

    def near_best(self, window: float) -> list[CandidateShape]:
        vals = np.concatenate(self.values)
        params = np.concatenate(self.params)
        keep = params[vals <= self.best + window]
        fams = list(Family)
        return [CandidateShape(fams[row[0]], *map(int, row[1:])) for row in keep]


_FAMILY_INDEX = {fam: i for i, fam in enumerate(Family)}


def _cheap_families(t: int, caps: SearchCaps, pool: _Pool) -> None:
    D = caps.degree_limit(t)
    if (t if t >= 3 else 1) <= D:
        pool.add(_FAMILY_INDEX[Family.STAR],
                 np.array([math.sqrt(t * (t - 1)) if t >= 3 else 0.0]),
                 {"d_R": np.array([t if t >= 3 else 1]), "k_R": np.array([t])})
    a = np.arange(_ceil_div(t, 2), min(t - 2, D - 1) + 1)
    b = t - a
    pool.add(_FAMILY_INDEX[Family.DOUBLE_STAR],
             a * _edge(a + 1.0, 1.0) + b * _edge(b + 1.0, 1.0) + _edge(a + 1.0, b + 1.0),
             {"d_R": a + 1, "d_M": b + 1, "k_R": a, "k_M": b})
    d = np.arange(3, D + 1)
    cost, k, s = _block(d, t, d)
    ok = (k >= MIN_BRANCH_ORDER) & (k <= caps.kcap) & (d >= k + 1) & (
        (s == 0) | (k - 1 >= MIN_BRANCH_ORDER))
    pool.add(_FAMILY_INDEX[Family.ROOT_ONLY], cost[ok],
             {"d_R": d[ok], "k_R": k[ok], "s_R": s[ok]})


def _expand(rows: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    """Flatten per-row integer ranges [lo, hi] into (row, value) pairs."""
    count = np.maximum(hi - lo + 1, 0)
    keep = count > 0
    rows, lo, count = rows[keep], lo[keep], count[keep]
    total = int(count.sum())
    row_of = np.repeat(rows, count)
    start = np.repeat(np.cumsum(count) - count, count)
    vals = np.repeat(lo, count) + (np.arange(total) - start)
    return row_of, vals


def _row_chunks(d: np.ndarray, width: np.ndarray) -> Iterator[np.ndarray]:
    start = 0
    acc = np.cumsum(np.maximum(width, 0))
    while start < d.size:
        base = acc[start - 1] if start else 0
        stop = int(np.searchsorted(acc, base + _CHUNK, side="right"))
        stop = max(stop, start + 1)
        yield d[start:stop]
        start = stop


def _mixed_only(t: int, caps: SearchCaps, pool: _Pool) -> None:
    D = caps.degree_limit(t)
    if caps.kcap < MIN_MIXED_ORDER:
        return
    d = np.arange(MIN_MIXED_ORDER + 1, D + 1)
    K = np.minimum(caps.kcap, d - 1)
    # k_M in [5, K]  <=>  4 n < t - l <= K n  with n = d - l.
    lo = np.maximum(1, -(-(4 * d - t + 1) // 3))
    hi = np.minimum(d - 2, (K * d - t) // (K - 1))
    f1 = _edge(d.astype(float), 1.0)
    floor = np.array([_min_leaf_cost(int(x), int(k)) for x, k in zip(d, K)])
    # Every M-leaf costs f(d, 1) and every branch leaf at least `floor`:
    # the bound l f1 + (t - l) floor is linear in l.
    slope = f1 - floor
    room = pool.best + PRUNE_SLACK - t * floor
    with np.errstate(divide="ignore", invalid="ignore"):
        cut = room / slope
    hi = np.where(slope > 0, np.minimum(hi, np.floor(cut)), hi).astype(np.int64)
    lo = np.where(slope < 0, np.maximum(lo, np.ceil(cut)), lo).astype(np.int64)
    hi = np.where((slope == 0) & (room < 0), lo - 1, hi)
    rows, l = _expand(np.arange(d.size), lo, hi)
    if l.size == 0:
        return
    dd = d[rows]
    n = dd - l
    cost, k, s = _block(n, t - l, dd.astype(float))
    cost = cost + l * f1[rows]
    pool.add(_FAMILY_INDEX[Family.MIXED_ONLY], cost,
             {"d_M": dd, "l": l, "k_M": k, "s_M": s})


def _root_and_mixed(t: int, caps: SearchCaps, pool: _Pool) -> None:
    D = caps.degree_limit(t)
    if caps.kcap < MIN_MIXED_ORDER:
        return
    d_all = np.arange(MIN_MIXED_ORDER + 1, D + 1)
    # Root needs >= 4(d_M - 1) + 1 leaves, M needs >= l + 5.
    d_all = d_all[4 * (d_all - 1) + 1 + 6 <= t]
    if d_all.size == 0:
        return
    root_floor = _leaf_floor_at_root(t, caps.kcap)
    for d in _row_chunks(d_all, d_all - 2):
        K = np.minimum(caps.kcap, d - 1)
        rows, l = _expand(np.arange(d.size), np.ones_like(d), d - 2)
        dd = d[rows]
        KK = K[rows]
        n_M = dd - l - 1
        S = t - l
        B_lo = 4 * n_M + 1
        B_hi = np.minimum(n_M * KK, S - (4 * (dd - 1) + 1))
        ok = B_lo <= B_hi
        if not ok.any():
            continue
        rows, l, dd, KK, n_M, S, B_lo, B_hi = (
            x[ok] for x in (rows, l, dd, KK, n_M, S, B_lo, B_hi))
        f1 = _edge(dd.astype(float), 1.0)
        m_floor = np.array([_min_leaf_cost(int(x), int(k)) for x, k in zip(d, K)])[rows]
        r_floor = root_floor[KK]
        # f(d_M, d_R) > sqrt(1/d_M); the leaf part is linear in the split.
        base = l * f1 + np.sqrt(1.0 / dd)
        lb = base + np.minimum(B_lo * m_floor + (S - B_lo) * r_floor,
                               B_hi * m_floor + (S - B_hi) * r_floor)
        keep = lb <= pool.best + PRUNE_SLACK
        if not keep.any():
            continue
        _root_and_mixed_blocks(t, caps, pool, dd[keep], l[keep], KK[keep],
                               B_lo[keep], B_hi[keep], base[keep], D)


def _root_and_mixed_blocks(t, caps, pool, d_M, l, K, B_lo, B_hi, base, D) -> None:
    # Second level: fix the M side exactly, bound the root side by its
    # cheapest arrangement for that many leaves.
    idx, B = _expand(np.arange(d_M.size), B_lo, B_hi)
    dM = d_M[idx]
    n_M = dM - l[idx] - 1
    m_cost, k_M, s_M = _block(n_M, B, dM.astype(float))
    L_R = t - l[idx] - B
    r_floor = np.array([_root_side_floor(int(x), caps.kcap) for x in L_R])
    lb = base[idx] + m_cost + r_floor
    keep = lb <= pool.best + PRUNE_SLACK
    if not keep.any():
        return
    idx, B, dM, m_cost, k_M, s_M, L_R = (
        x[keep] for x in (idx, B, dM, m_cost, k_M, s_M, L_R))
    KK = K[idx]
    # Third level: every admissible root degree, exactly.
    lo = np.maximum(dM, -(-L_R // KK) + 1)
    hi = np.minimum(D, (L_R - 1) // 4 + 1)
    j, d_R = _expand(np.arange(idx.size), lo, hi)
    if d_R.size == 0:
        return
    n_R = d_R - 1
    r_cost, k_R, s_R = _block(n_R, L_R[j], d_R.astype(float))
    ok = (k_R >= k_M[j]) & (k_R <= KK[j])
    j, d_R, r_cost, k_R, s_R = (x[ok] for x in (j, d_R, r_cost, k_R, s_R))
    ii = idx[j]
    cost = base[ii] - np.sqrt(1.0 / dM[j]) + _edge(dM[j].astype(float), d_R.astype(float)) \
        + m_cost[j] + r_cost
    pool.add(_FAMILY_INDEX[Family.ROOT_AND_MIXED], cost,
             {"d_R": d_R, "d_M": dM[j], "l": l[ii], "k_R": k_R, "k_M": k_M[j],
              "s_R": s_R, "s_M": s_M[j]})


def _resolve(t: int, shapes: list[CandidateShape], caps: SearchCaps) -> ExtremalRecord:
    """Pick the minimisers among near-best candidates in extended precision."""
    with extended():
        scored = sorted(((shape_abc_mp(s), s) for s in set(shapes)), key=lambda x: x[0])
        best = scored[0][0]
        tol = tie_tolerance(best)
        winners = tuple(sorted(s for v, s in scored if v - best <= tol))
        value = float(best)
    touched = any(
        caps.kcap in (w.k_R, w.k_M) and w.family in (
            Family.ROOT_ONLY, Family.MIXED_ONLY, Family.ROOT_AND_MIXED)
        or (caps.dcap is not None and caps.dcap in (w.d_R, w.d_M))
        for w in winners)
    return ExtremalRecord(t, value, winners, winners[0].order(), len(winners) == 1, touched)


def minimal_tree(t: int, caps: SearchCaps = SearchCaps()) -> ExtremalRecord:
    """Minimum-ABC shape with ``t`` leaves over all five families.

    Ties closer than the float margin are settled in extended precision;
    all exact minimisers are kept.
    """
    if t < 2:
        raise DomainError("a tree has at least 2 leaves")
    pool = _Pool()
    _cheap_families(t, caps, pool)
    _mixed_only(t, caps, pool)
    _root_and_mixed(t, caps, pool)
    return _resolve(t, pool.near_best(FLOAT_MARGIN), caps)


def brute_force_minimal(t: int, caps: SearchCaps = SearchCaps()) -> ExtremalRecord:
    """Same contract as :func:`minimal_tree`, by scoring every enumerated shape."""
    if t < 2:
        raise DomainError("a tree has at least 2 leaves")
    with extended():
        scored = [(shape_abc_mp(s), s) for s in enumerate_shapes(t, caps)]
    best = min(v for v, _ in scored)
    near = [s for v, s in scored if v - best <= FLOAT_MARGIN]
    return _resolve(t, near, caps)


# -- scans -------------------------------------------------------------------

def shape_pattern(shape: CandidateShape) -> tuple:
    """Family plus the set of branch orders present."""
    return (shape.family.value,
            tuple(sorted(set(shape.root_branches()) | set(shape.mixed_branches()))))


@dataclass
class ScanResult:
    records: list[ExtremalRecord]
    change_points: list[int] = field(default_factory=list)

    @property
    def cap_touched(self) -> bool:
        return any(r.cap_touched for r in self.records)


def _scan_chunk(args) -> list[ExtremalRecord]:
    ts, caps = args
    return [minimal_tree(t, caps) for t in ts]


def scan(t_from: int, t_to: int, caps: SearchCaps = SearchCaps(),
         workers: int = 1) -> ScanResult:
    """Minimal trees for every t in [t_from, t_to] and the structure changes."""
    if not 1 <= t_from <= t_to:
        raise DomainError("need 1 <= t_from <= t_to")
    ts = list(range(max(t_from, 2), t_to + 1))
    if workers > 1 and len(ts) > 1:
        chunks = [ts[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_scan_chunk, [(c, caps) for c in chunks]))
        by_t = {r.t: r for part in parts for r in part}
        records = [by_t[t] for t in ts]
    else:
        records = _scan_chunk((ts, caps))
    changes = [b.t for a, b in zip(records, records[1:])
               if shape_pattern(a.shape) != shape_pattern(b.shape)]
    return ScanResult(records, changes)


# -- the large-t extremal trees ---------------------------------------------

# First t (per residue r = t mod 10) from which the extremal tree is the
# one-root tree of the closed forms below.
CLOSED_FORM_FROM = {0: 1030, 1: 1201, 2: 1201, 3: 1201, 4: 1201,
                    5: 1155, 6: 1106, 7: 1077, 8: 1058, 9: 1039}
ASYMPTOTIC_FROM = 1195


def fig1_shape(t: int) -> CandidateShape:
    """One root, p - r S_10-branches and r S_11-branches (t = 10p + r)."""
    p, r = divmod(t, 10)
    if r == 0:
        return CandidateShape.root_only(p, 10, 0)
    return CandidateShape.root_only(p, 11, p - r)


def fig2_shape(t: int) -> CandidateShape:
    """One root, p + r - 9 S_10-branches and 10 - r S_9-branches (t = 10p + r)."""
    p, r = divmod(t, 10)
    return CandidateShape.root_only(p + 1, 10, 10 - r)


def _fig1_mp(t: int):
    p, r = divmod(t, 10)
    c10 = mpf_f(11, 1) + mpf_f(11, p) / 10
    c11 = mpf_f(12, 1) + mpf_f(12, p) / 11
    return 10 * (p - r) * c10 + 11 * r * c11


def _fig2_mp(t: int):
    p, r = divmod(t, 10)
    c10 = mpf_f(11, 1) + mpf_f(11, p + 1) / 10
    c9 = mpf_f(10, 1) + mpf_f(10, p + 1) / 9
    return 10 * (p + r - 9) * c10 + 9 * (10 - r) * c9


def extremal_case(t: int) -> tuple[str, CandidateShape]:
    """Which of the two one-root trees is extremal for ``t`` ("fig1" / "fig2").

    Residues 0-4 only admit the first tree and 8-9 only the second; for 5-7
    the two closed forms are compared directly.
    """
    if t < CLOSED_FORM_FROM[t % 10]:
        raise OutOfValidatedRange(
            f"t={t} is below {CLOSED_FORM_FROM[t % 10]}, where the one-root pattern starts")
    r = t % 10
    if r <= 4:
        return "fig1", fig1_shape(t)
    if r >= 8:
        return "fig2", fig2_shape(t)
    with extended():
        first_wins = _fig1_mp(t) < _fig2_mp(t)
    return ("fig1", fig1_shape(t)) if first_wins else ("fig2", fig2_shape(t))


def closed_form_abc(t: int) -> tuple[str, float]:
    """ABC index of the extremal one-root tree from its leaf-contribution formula."""
    case, _ = extremal_case(t)
    with extended():
        value = _fig1_mp(t) if case == "fig1" else _fig2_mp(t)
        return case, float(value)


def asymptotic_coefficients():
    """(slope, intercept, fig1 per-r term, fig2 per-(10 - r) term) as mpf."""
    with extended():
        slope = mp.sqrt(mp.mpf(10) / 11) + mp.sqrt(mp.mpf(1) / 11) / 10
        intercept = mp.mpf(9) / 2 * mp.sqrt(mp.mpf(1) / 11)
        per_r = (11 * mp.sqrt(mp.mpf(11) / 12) + mp.sqrt(mp.mpf(1) / 12)
                 - mp.sqrt(110) - mp.sqrt(11) / 10)
        per_gap = 9 * (mp.mpf(14) / 45 * mp.sqrt(10) - slope)
        return slope, intercept, per_r, per_gap


def asymptotic_abc(t: int) -> float:
    """Large-t expansion of the extremal ABC index, without its O(1/t) tail."""
    if t < ASYMPTOTIC_FROM:
        raise OutOfValidatedRange(f"the expansion is stated for t >= {ASYMPTOTIC_FROM}")
    case, _ = extremal_case(t)
    r = t % 10
    slope, intercept, per_r, per_gap = asymptotic_coefficients()
    with extended():
        value = slope * t + intercept
        value += per_r * r if case == "fig1" else per_gap * (10 - r)
        return float(value)
