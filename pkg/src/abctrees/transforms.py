"""Local rewrites of a tree, each with a closed-form ABC delta.

Every function returns a fresh tree and ``delta = abc(before) - abc(after)``
computed from the few edges the rewrite touches, so it can be checked
against direct recomputation.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np

from .errors import (BranchesNotSiblings, NotBothRoots, OrderGapTooSmall,
                     OverlappingSubtrees, TreeError)
from .tree_core import Tree, VertexKind, classify_vertices, edge_contribution as f


@dataclass(frozen=True)
class ExchangeSpec:
    """Edges ``u v`` and ``u2 v2``; the subtrees hanging at ``v`` and ``v2`` swap hubs."""

    u: int
    v: int
    u2: int
    v2: int


def _side(tree: Tree, u: int, v: int) -> set[int]:
    """Vertices of the component of ``tree - uv`` that contains ``v``."""
    if u not in tree.adjacency[v]:
        raise TreeError(f"{u} {v} is not an edge")
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for w in tree.adjacency[x]:
            if w not in seen and not (x == v and w == u):
                seen.add(w)
                stack.append(w)
    return seen


def _replace_edges(tree: Tree, drop: set[frozenset], add: list[tuple[int, int]]) -> Tree:
    kept = [e for e in tree.edges if frozenset(e) not in drop]
    return Tree(tree.n, tuple(kept + add))


def exchange_delta(du: int, dv: int, du2: int, dv2: int) -> float:
    if du == du2 or dv == dv2:
        return 0.0  # the four terms cancel exactly
    return f(du, dv) + f(du2, dv2) - f(du, dv2) - f(du2, dv)


def exchange_subtrees(tree: Tree, spec: ExchangeSpec) -> tuple[Tree, float]:
    """Hang the subtree at ``v`` from ``u2`` and the one at ``v2`` from ``u``.

    Degrees do not change, so only the two re-wired edges move the index.
    """
    side = _side(tree, spec.u, spec.v)
    side2 = _side(tree, spec.u2, spec.v2)
    if side & side2:
        raise OverlappingSubtrees("the two subtrees share a vertex")
    deg = tree.degrees
    out = _replace_edges(
        tree,
        {frozenset((spec.u, spec.v)), frozenset((spec.u2, spec.v2))},
        [(spec.u, spec.v2), (spec.u2, spec.v)])
    return out, exchange_delta(deg[spec.u], deg[spec.v], deg[spec.u2], deg[spec.v2])


def contract_root_edge(tree: Tree, x: int, y: int) -> tuple[Tree, float]:
    """Merge adjacent roots ``x`` and ``y`` into one vertex (the smaller id).

    The delta is ``f(d_x, d_y)`` plus, for every other neighbour ``z`` of
    either endpoint, the drop from ``f(d_x or d_y, d_z)`` to ``f(d_w, d_z)``
    where ``d_w = d_x + d_y - 2``.
    """
    if y not in tree.adjacency[x]:
        raise NotBothRoots(f"{x} and {y} are not adjacent")
    kinds = classify_vertices(tree)
    if kinds[x].kind is not VertexKind.ROOT or kinds[y].kind is not VertexKind.ROOT:
        raise NotBothRoots(f"{x} and {y} are not both root vertices")
    deg = tree.degrees
    dx, dy = deg[x], deg[y]
    dw = dx + dy - 2
    delta = f(dx, dy)
    for a, b in ((x, y), (y, x)):
        delta += sum(f(deg[a], deg[z]) - f(dw, deg[z]) for z in tree.adjacency[a] if z != b)
    keep, gone = min(x, y), max(x, y)
    edges = []
    for a, b in tree.edges:
        if {a, b} == {x, y}:
            continue
        edges.append((keep if a == gone else a, keep if b == gone else b))
    # Close the gap left by ``gone`` so ids stay dense.
    edges = [(a - (a > gone), b - (b > gone)) for a, b in edges]
    return Tree(tree.n - 1, tuple(edges)), delta


def leaf_move_delta(d: int, k: int, l: int) -> float:
    """Index drop from moving one leaf out of an S_k- into an S_l-branch at a degree-d hub."""
    return (f(d, k + 1) + f(d, l + 1) - f(d, k) - f(d, l + 2)
            + k * f(k + 1, 1) + l * f(l + 1, 1) - (k - 1) * f(k, 1) - (l + 1) * f(l + 2, 1))


def _branch_hub(tree: Tree, centre: int) -> tuple[list[int], int | None]:
    """Leaves of a star vertex and its single non-leaf neighbour (if any)."""
    deg = tree.degrees
    leaves = [w for w in tree.adjacency[centre] if deg[w] == 1]
    others = [w for w in tree.adjacency[centre] if deg[w] != 1]
    return leaves, (others[0] if len(others) == 1 else None)


def move_leaf_between_branches(tree: Tree, from_branch: int, to_branch: int) -> tuple[Tree, float]:
    """Detach one leaf from the larger S-branch and attach it to the smaller sibling."""
    kinds = classify_vertices(tree)
    for c in (from_branch, to_branch):
        if kinds[c].kind is not VertexKind.STAR:
            raise BranchesNotSiblings(f"{c} is not a star vertex")
    leaves_a, hub_a = _branch_hub(tree, from_branch)
    leaves_b, hub_b = _branch_hub(tree, to_branch)
    if hub_a is None or hub_a != hub_b or from_branch == to_branch:
        raise BranchesNotSiblings("the branches do not hang from one common hub")
    k, l = len(leaves_a), len(leaves_b)
    if k < l + 2:
        raise OrderGapTooSmall(f"need k >= l + 2, got k={k}, l={l}")
    moved = max(leaves_a)
    out = _replace_edges(tree, {frozenset((from_branch, moved))}, [(to_branch, moved)])
    return out, leaf_move_delta(tree.degrees[hub_a], k, l)


# -- random instances --------------------------------------------------------

def random_tree(n: int, rng: np.random.Generator) -> Tree:
    """Uniform labelled tree on ``n`` vertices (via a random Prufer sequence)."""
    if n == 1:
        return Tree(1, ())
    if n == 2:
        return Tree(2, ((0, 1),))
    g = nx.from_prufer_sequence(rng.integers(0, n, size=n - 2).tolist())
    return Tree(n, tuple(g.edges()))


def _shuffled(edges: list[tuple[int, int]], n: int, rng: np.random.Generator) -> tuple[Tree, np.ndarray]:
    perm = rng.permutation(n)
    return Tree(n, tuple((int(perm[a]), int(perm[b])) for a, b in edges)), perm


def random_exchange_instance(rng: np.random.Generator, max_n: int = 200) -> tuple[Tree, ExchangeSpec]:
    """Random tree with two distinct, randomly oriented edges whose far sides are disjoint."""
    while True:
        tree = random_tree(int(rng.integers(4, max_n + 1)), rng)
        i, j = rng.choice(len(tree.edges), size=2, replace=False)
        (u, v), (u2, v2) = (e if rng.random() < 0.5 else e[::-1]
                            for e in (tree.edges[i], tree.edges[j]))
        if not _side(tree, u, v) & _side(tree, u2, v2):
            return tree, ExchangeSpec(u, v, u2, v2)


def random_root_pair_instance(rng: np.random.Generator) -> tuple[Tree, int, int]:
    """Random tree (n <= 200) with two adjacent root vertices, returned with their ids."""
    m = int(rng.integers(2, 26))
    skeleton = random_tree(m, rng)
    x, y = skeleton.edges[int(rng.integers(len(skeleton.edges)))]
    edges = list(skeleton.edges)
    n = m
    for v in range(m):
        if v in (x, y):
            # Roots carry only S-branches: a star vertex plus its leaves.
            for _ in range(int(rng.integers(1, 4))):
                k = int(rng.integers(1, 5))
                edges.append((v, n))
                edges.extend((n, n + 1 + i) for i in range(k))
                n += k + 1
        else:
            k = int(rng.integers(1, 5))
            edges.extend((v, n + i) for i in range(k))
            n += k
    tree, perm = _shuffled(edges, n, rng)
    return tree, int(perm[x]), int(perm[y])


def random_sibling_instance(rng: np.random.Generator, max_n: int = 200) -> tuple[Tree, int, int]:
    """Random tree with two S-branches on one hub whose orders differ by >= 2."""
    l = int(rng.integers(1, 10))
    k = l + int(rng.integers(2, 12))
    base = random_tree(int(rng.integers(1, max_n - k - l - 1)), rng)
    edges = list(base.edges)
    n = base.n
    hub = int(rng.integers(n))
    centres = []
    for order in (k, l):
        centre = n
        edges.append((hub, centre))
        edges.extend((centre, centre + 1 + i) for i in range(order))
        n += order + 1
        centres.append(centre)
    tree, perm = _shuffled(edges, n, rng)
    return tree, int(perm[centres[0]]), int(perm[centres[1]])
