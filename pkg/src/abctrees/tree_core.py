"""Trees, their ABC index, vertex classes and canonical codes."""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable

from mpmath import mp

from .errors import (BadToken, CycleDetected, Disconnected, DomainError,
                     DuplicateEdge, EmptyTree, TreeError)
from .numeric import extended, mpf_f
from .shapes import CandidateShape, Family, check_shape


@dataclass(frozen=True)
class Tree:
    """Unrooted simple tree on vertices ``0..n-1``; immutable once built.

    The edge list is the storage of record; adjacency and degrees are derived
    on first use.
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise EmptyTree("a tree needs at least one vertex")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) != n - 1:
            raise TreeError(f"{n} vertices need {n - 1} edges, got {len(edges)}")
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise TreeError(f"edge {u} {v} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise CycleDetected(f"self-loop at {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise DuplicateEdge(f"edge {u} {v} repeated")
            seen.add(key)
        # n - 1 distinct edges plus connectivity implies acyclic.
        if n > 1 and len(_component(self.adjacency, 0)) != n:
            raise Disconnected("edge list does not span a single component")

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]]) -> Tree:
        """Build a tree from edges over arbitrary integer ids, relabelled densely."""
        edges = [(int(u), int(v)) for u, v in edges]
        ids = sorted({x for e in edges for x in e})
        index = {x: i for i, x in enumerate(ids)}
        return cls(len(ids), tuple((index[u], index[v]) for u, v in edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def leaves(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees) if d == 1]

    def relabel(self, perm: list[int]) -> Tree:
        """Return the tree with vertex ``v`` renamed ``perm[v]``."""
        return Tree(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))


def _component(adj, start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


# -- edge-list I/O -----------------------------------------------------------

def parse_tree(text: str) -> Tree:
    """Parse the edge-list format: one ``u v`` pair per line, ``#`` comments.

    Vertex ids may be any non-negative integers; they are renumbered
    ``0..n-1`` in increasing order.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges: list[tuple[int, int]] = []
    lines: list[int] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise BadToken(f"expected two vertex ids, got {raw!r}", lineno)
        for tok in tokens:
            if not (tok.isascii() and tok.isdigit()):
                raise BadToken(f"{tok!r} is not a non-negative integer", lineno)
        u, v = int(tokens[0]), int(tokens[1])
        if u == v:
            raise CycleDetected(f"self-loop at {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge {u} {v} repeated", lineno)
        seen.add(key)
        for x in (u, v):
            parent.setdefault(x, x)
        ru, rv = find(u), find(v)
        if ru == rv:
            raise CycleDetected(f"edge {u} {v} closes a cycle", lineno)
        parent[ru] = rv
        edges.append((u, v))
        lines.append(lineno)
    if not edges:
        raise EmptyTree("no edges in input")
    root = find(edges[0][0])
    for (u, v), lineno in zip(edges, lines):
        if find(u) != root:
            raise Disconnected(f"edge {u} {v} is not connected to the first edge", lineno)
    return Tree.from_edges(edges)


def format_tree(tree: Tree, header: Iterable[str] = ()) -> str:
    """Serialise ``tree`` in the edge-list format, with ``#`` header lines."""
    out = [f"# {line}" for line in header]
    out.extend(f"{u} {v}" for u, v in tree.edges)
    return "\n".join(out) + "\n"


def shape_header(shape: CandidateShape) -> list[str]:
    params = " ".join(f"{k}={v}" for k, v in shape.parameters().items())
    return [f"family={shape.family.value} {params}"]


# -- ABC index ---------------------------------------------------------------

def edge_contribution(d_u: int, d_v: int) -> float:
    """ABC contribution sqrt((d_u + d_v - 2) / (d_u d_v)) of one edge."""
    if d_u < 1 or d_v < 1:
        raise DomainError(f"degrees must be >= 1, got ({d_u}, {d_v})")
    return math.sqrt((d_u + d_v - 2) / (d_u * d_v))


def abc_index(tree: Tree) -> float:
    """Sum of edge contributions over all edges.

    Edges are grouped by their (unordered) degree pair and the grouped sum is
    formed in extended precision, so the result is correctly rounded.
    """
    with extended():
        return float(abc_index_mp(tree))


def abc_index_mp(tree: Tree):
    """Extended-precision ABC index (call inside ``extended()``)."""
    if tree.n < 2:
        raise EmptyTree("the ABC index needs at least one edge")
    deg = tree.degrees
    groups = Counter((min(deg[u], deg[v]), max(deg[u], deg[v])) for u, v in tree.edges)
    return mp.fsum(count * mpf_f(a, b) for (a, b), count in groups.items())


# -- vertex classes ----------------------------------------------------------

class VertexKind(str, Enum):
    LEAF = "Leaf"
    ROOT = "Root"
    STAR = "Star"
    MIXED = "Mixed"


@dataclass(frozen=True)
class VertexClass:
    kind: VertexKind
    order: int | None = None  # number of adjacent leaves, for star vertices


def classify_vertices(tree: Tree) -> dict[int, VertexClass]:
    """Assign every vertex to Leaf, Root, Star (with its order) or Mixed."""
    if tree.n < 2:
        raise EmptyTree("classification needs at least one edge")
    deg = tree.degrees
    out: dict[int, VertexClass] = {}
    for v, nbrs in enumerate(tree.adjacency):
        d = deg[v]
        if d == 1:
            out[v] = VertexClass(VertexKind.LEAF)
            continue
        k = sum(1 for w in nbrs if deg[w] == 1)
        if k == 0:
            out[v] = VertexClass(VertexKind.ROOT)
        elif k >= d - 1:
            out[v] = VertexClass(VertexKind.STAR, k)
        else:
            out[v] = VertexClass(VertexKind.MIXED)
    return out


# -- canonical codes ---------------------------------------------------------

def centroids(tree: Tree) -> list[int]:
    """The one or two vertices minimising the largest remaining component."""
    n = tree.n
    adj = tree.adjacency
    parent = [-1] * n
    order = [0]
    seen = [False] * n
    seen[0] = True
    for u in order:
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    size = [1] * n
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    heaviest = [n - size[u] for u in range(n)]
    for u in order[1:]:
        p = parent[u]
        heaviest[p] = max(heaviest[p], size[u])
    best = min(heaviest)
    return [u for u in range(n) if heaviest[u] == best]


def _rooted_code(tree: Tree, root: int) -> bytes:
    adj = tree.adjacency
    parent = {root: -1}
    order = [root]
    for u in order:
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    children: dict[int, list[bytes]] = {v: [] for v in order}
    code = {}
    for u in reversed(order):
        code[u] = b"(" + b"".join(sorted(children[u])) + b")"
        if parent[u] != -1:
            children[parent[u]].append(code[u])
    return code[root]


def canonical_code(tree: Tree) -> bytes:
    """Label-invariant code: equal for two trees iff they are isomorphic.

    AHU encoding rooted at the centroid; with two centroids the smaller of
    the two codes is taken.
    """
    return min(_rooted_code(tree, c) for c in centroids(tree))


# -- construction ------------------------------------------------------------

class _Builder:
    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def leaves(self, hub: int, count: int) -> None:
        for _ in range(count):
            self.edges.append((hub, self.vertex()))

    def branches(self, hub: int, orders: list[int]) -> None:
        for k in orders:
            centre = self.vertex()
            self.edges.append((hub, centre))
            self.leaves(centre, k)

    def tree(self) -> Tree:
        return Tree(self.n, tuple(self.edges))


def build_extremal_tree(shape: CandidateShape) -> Tree:
    """Materialise ``shape`` as a concrete tree.

    Vertex 0 is R (or the star centre, or the larger double-star centre);
    M follows when present, then branch centres each followed by its leaves.
    """
    check_shape(shape)
    b = _Builder()
    fam = shape.family
    if fam is Family.STAR:
        if shape.k_R == 2:
            b.vertex()
            b.leaves(0, 1)
        else:
            b.leaves(b.vertex(), shape.k_R)
    elif fam is Family.DOUBLE_STAR:
        x, y = b.vertex(), b.vertex()
        b.edges.append((x, y))
        b.leaves(x, shape.k_R)
        b.leaves(y, shape.k_M)
    elif fam is Family.ROOT_ONLY:
        b.branches(b.vertex(), shape.root_branches())
    elif fam is Family.MIXED_ONLY:
        m = b.vertex()
        b.leaves(m, shape.l)
        b.branches(m, shape.mixed_branches())
    else:
        r, m = b.vertex(), b.vertex()
        b.edges.append((r, m))
        b.branches(r, shape.root_branches())
        b.leaves(m, shape.l)
        b.branches(m, shape.mixed_branches())
    return b.tree()
