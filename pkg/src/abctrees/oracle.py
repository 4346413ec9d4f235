"""Exhaustive ground truth for small leaf counts.

A tree with a degree-2 vertex is never t-minimal, so only trees whose
internal vertices all have degree >= 3 are generated.  Such a tree has at
most t - 2 internal vertices.  The internal vertices form a tree of their own
(the skeleton); every tree arises from a skeleton by adding leaves until each
skeleton vertex has degree >= 3.  Different skeleton labellings give
isomorphic trees, so results are deduplicated by canonical code.

The number of classes grows roughly exponentially in t (about 3x per extra
leaf), hence the default ceiling of 10 leaves.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterator

import networkx as nx

from .errors import DomainError, LimitExceeded
from .numeric import FLOAT_MARGIN, extended, tie_tolerance
from .tree_core import Tree, abc_index, abc_index_mp, canonical_code

DEFAULT_MAX_LEAVES = 10


def _skeletons(m: int) -> Iterator[tuple[tuple[int, int], ...]]:
    if m == 1:
        yield ()
    elif m == 2:
        yield ((0, 1),)
    else:
        for g in nx.nonisomorphic_trees(m):
            yield tuple(g.edges())


def _dress(skeleton: tuple[tuple[int, int], ...], m: int, t: int) -> list[tuple[bytes, Tree]]:
    """All leaf assignments of ``t`` leaves making every skeleton vertex degree >= 3."""
    deg = [0] * m
    for u, v in skeleton:
        deg[u] += 1
        deg[v] += 1
    need = [max(0, 3 - d) for d in deg]
    spare = t - sum(need)
    out: dict[bytes, Tree] = {}
    if spare < 0:
        return []
    for extra in combinations_with_replacement(range(m), spare):
        counts = list(need)
        for v in extra:
            counts[v] += 1
        edges = list(skeleton)
        n = m
        for v, c in enumerate(counts):
            edges.extend((v, n + i) for i in range(c))
            n += c
        tree = Tree(n, tuple(edges))
        out.setdefault(canonical_code(tree), tree)
    return list(out.items())


def _check_limits(t: int, max_leaves: int) -> None:
    if t < 2:
        raise DomainError("a tree has at least 2 leaves")
    if t > max_leaves:
        raise LimitExceeded(f"t={t} exceeds the oracle ceiling of {max_leaves} leaves")


def enumerate_leaf_trees(t: int, max_leaves: int = DEFAULT_MAX_LEAVES,
                         max_internal: int | None = None,
                         workers: int = 1) -> Iterator[Tree]:
    """One tree per isomorphism class with ``t`` leaves and no degree-2 vertex."""
    _check_limits(t, max_leaves)
    if t == 2:
        yield Tree(2, ((0, 1),))
        return
    top = t - 2 if max_internal is None else min(t - 2, max_internal)
    jobs = [(sk, m, t) for m in range(1, top + 1) for sk in _skeletons(m)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_dress, *zip(*jobs)))
    else:
        parts = (_dress(*job) for job in jobs)
    seen: set[bytes] = set()
    for part in parts:
        for code, tree in part:
            if code not in seen:
                seen.add(code)
                yield tree


@dataclass
class OracleResult:
    t: int
    trees_considered: int
    min_abc: float
    minimizers: list[bytes]
    trees: list[Tree] = field(default_factory=list, repr=False)


def oracle_minimal(t: int, max_leaves: int = DEFAULT_MAX_LEAVES,
                   max_internal: int | None = None, keep_trees: bool = False,
                   workers: int = 1) -> OracleResult:
    """Minimum ABC index over all degree-2-free trees with ``t`` leaves."""
    scored = [(abc_index(tr), tr) for tr in
              enumerate_leaf_trees(t, max_leaves, max_internal, workers)]
    best = min(v for v, _ in scored)
    near = [tr for v, tr in scored if v - best <= FLOAT_MARGIN]
    with extended():
        exact = [(abc_index_mp(tr), tr) for tr in near]
        low = min(v for v, _ in exact)
        tol = tie_tolerance(low)
        winners = [tr for v, tr in exact if v - low <= tol]
        value = float(low)
    winners.sort(key=canonical_code)
    return OracleResult(t, len(scored), value, [canonical_code(tr) for tr in winners],
                        winners if keep_trees else [])
