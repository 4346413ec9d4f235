"""Candidate shapes: the parameter tuples the structure search ranges over.

A shape fixes a tree up to isomorphism.  Besides the leaves, a tree of each
family has at most two special vertices, a root ``R`` (adjacent to no leaf)
and a mixed vertex ``M`` (adjacent to leaves and to at least two
non-leaves).  Every other internal vertex is the centre of an S-branch.  At
each hub the branch orders take at most two consecutive values ``k`` and
``k - 1``, and ``s`` counts the branches of the smaller order.

Field use per family:

===============  ========================================================
Star             ``k_R = t`` leaves on one centre; ``d_R`` its degree
                 (``t = 2`` is the single edge, so ``d_R = 1``).
DoubleStar       centres of degree ``d_R >= d_M`` carrying ``k_R = d_R - 1``
                 and ``k_M = d_M - 1`` leaves.
RootOnly         ``R`` with ``d_R`` branches, orders ``k_R`` / ``k_R - 1``.
MixedOnly        ``M`` with ``l`` leaves and ``d_M - l`` branches.
RootAndMixed     ``R`` and ``M`` adjacent; ``R`` has ``d_R - 1`` branches,
                 ``M`` has ``l`` leaves and ``d_M - l - 1`` branches.
===============  ========================================================
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from mpmath import mp

from .errors import InfeasibleShape
from .numeric import extended, mpf_f

# Lower bound on the larger branch order at a mixed vertex (from prior work).
MIN_MIXED_ORDER = 5
# Smallest branch order ever allowed: an S_1 centre would have degree 2.
MIN_BRANCH_ORDER = 2


class Family(str, Enum):
    STAR = "Star"
    DOUBLE_STAR = "DoubleStar"
    ROOT_ONLY = "RootOnly"
    MIXED_ONLY = "MixedOnly"
    ROOT_AND_MIXED = "RootAndMixed"

    def __str__(self) -> str:
        return self.value


PARAMETER_NAMES = ("d_R", "d_M", "l", "k_R", "s_R", "k_M", "s_M")


@dataclass(frozen=True, order=True)
class CandidateShape:
    family: Family
    d_R: int = 0
    d_M: int = 0
    l: int = 0
    k_R: int = 0
    k_M: int = 0
    s_R: int = 0
    s_M: int = 0

    @classmethod
    def star(cls, t: int) -> CandidateShape:
        return cls(Family.STAR, d_R=t if t >= 3 else 1, k_R=t)

    @classmethod
    def double_star(cls, a: int, b: int) -> CandidateShape:
        a, b = max(a, b), min(a, b)
        return cls(Family.DOUBLE_STAR, d_R=a + 1, d_M=b + 1, k_R=a, k_M=b)

    @classmethod
    def root_only(cls, d_R: int, k_R: int, s_R: int = 0) -> CandidateShape:
        return cls(Family.ROOT_ONLY, d_R=d_R, k_R=k_R, s_R=s_R)

    @classmethod
    def mixed_only(cls, d_M: int, l: int, k_M: int, s_M: int = 0) -> CandidateShape:
        return cls(Family.MIXED_ONLY, d_M=d_M, l=l, k_M=k_M, s_M=s_M)

    @classmethod
    def root_and_mixed(cls, d_R: int, d_M: int, l: int, k_R: int, s_R: int,
                       k_M: int, s_M: int) -> CandidateShape:
        return cls(Family.ROOT_AND_MIXED, d_R=d_R, d_M=d_M, l=l,
                   k_R=k_R, k_M=k_M, s_R=s_R, s_M=s_M)

    def parameters(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in PARAMETER_NAMES}

    def root_branches(self) -> list[int]:
        """Orders of the S-branches hanging at R (largest first)."""
        if self.family is Family.ROOT_ONLY:
            n = self.d_R
        elif self.family is Family.ROOT_AND_MIXED:
            n = self.d_R - 1
        else:
            return []
        return [self.k_R] * (n - self.s_R) + [self.k_R - 1] * self.s_R

    def mixed_branches(self) -> list[int]:
        """Orders of the S-branches hanging at M (largest first)."""
        if self.family is Family.MIXED_ONLY:
            n = self.d_M - self.l
        elif self.family is Family.ROOT_AND_MIXED:
            n = self.d_M - self.l - 1
        else:
            return []
        return [self.k_M] * (n - self.s_M) + [self.k_M - 1] * self.s_M

    def order(self) -> int:
        """Vertex count of any tree realising the shape."""
        t = t_of_shape(self)
        fam = self.family
        if fam is Family.STAR:
            return t + (1 if t >= 3 else 0)
        if fam is Family.DOUBLE_STAR:
            return t + 2
        return t + len(self.root_branches()) + len(self.mixed_branches()) + (
            (fam is not Family.MIXED_ONLY) + (fam is not Family.ROOT_ONLY))


def _require(cond: bool, shape: CandidateShape, what: str) -> None:
    if not cond:
        raise InfeasibleShape(f"{shape}: {what}")


def check_shape(shape: CandidateShape) -> None:
    """Raise :class:`InfeasibleShape` unless ``shape`` meets its family's rules."""
    s = shape
    fam = s.family
    if fam is Family.STAR:
        _require(s.k_R >= 2, s, "a star needs at least 2 leaves")
        _require(s.d_R == (s.k_R if s.k_R >= 3 else 1), s, "star degree must equal t")
        _require(s.d_M == s.l == s.k_M == s.s_R == s.s_M == 0, s, "unused fields must be 0")
        return
    if fam is Family.DOUBLE_STAR:
        _require(s.k_R >= s.k_M >= 2, s, "centres need k_R >= k_M >= 2 leaves")
        _require(s.d_R == s.k_R + 1 and s.d_M == s.k_M + 1, s, "centre degrees are k + 1")
        _require(s.l == s.s_R == s.s_M == 0, s, "unused fields must be 0")
        return
    if fam is Family.ROOT_ONLY:
        _require(s.d_M == s.l == s.k_M == s.s_M == 0, s, "unused fields must be 0")
        _require(s.k_R >= MIN_BRANCH_ORDER, s, "k_R >= 2")
        _require(s.d_R >= s.k_R + 1, s, "d_R >= k_R + 1")
        _require(0 <= s.s_R <= s.d_R - 1, s, "0 <= s_R <= d_R - 1")
        _require(s.s_R == 0 or s.k_R - 1 >= MIN_BRANCH_ORDER, s, "branch orders >= 2")
        return
    if fam is Family.MIXED_ONLY:
        _require(s.d_R == s.k_R == s.s_R == 0, s, "unused fields must be 0")
        _require(s.l >= 1, s, "l >= 1")
        _require(s.d_M - s.l >= 2, s, "M needs at least two branches")
        _require(s.k_M >= MIN_MIXED_ORDER, s, "k_M >= 5")
        _require(s.d_M >= s.k_M + 1, s, "d_M >= k_M + 1")
        _require(0 <= s.s_M <= s.d_M - s.l - 1, s, "0 <= s_M <= d_M - l - 1")
        return
    if fam is Family.ROOT_AND_MIXED:
        _require(s.d_R >= s.d_M >= s.k_R + 1, s, "d_R >= d_M >= k_R + 1")
        _require(s.k_R >= s.k_M >= MIN_MIXED_ORDER, s, "k_R >= k_M >= 5")
        _require(1 <= s.l <= s.d_M - 2, s, "1 <= l <= d_M - 2")
        _require(0 <= s.s_R <= s.d_R - 2, s, "0 <= s_R <= d_R - 2")
        _require(0 <= s.s_M <= s.d_M - s.l - 2, s, "0 <= s_M <= d_M - l - 2")
        return
    raise InfeasibleShape(f"unknown family {fam!r}")


def t_of_shape(shape: CandidateShape) -> int:
    """Number of leaves of any tree realising ``shape``."""
    check_shape(shape)
    s = shape
    fam = s.family
    if fam is Family.STAR:
        return s.k_R
    if fam is Family.DOUBLE_STAR:
        return s.k_R + s.k_M
    if fam is Family.ROOT_ONLY:
        return s.d_R * s.k_R - s.s_R
    if fam is Family.MIXED_ONLY:
        return s.l + (s.d_M - s.l) * s.k_M - s.s_M
    return s.l + (s.d_R - 1) * s.k_R - s.s_R + (s.d_M - s.l - 1) * s.k_M - s.s_M


def _branch_block(orders: list[int], hub: int):
    # Leaf contributions of S-branches at a hub of the given degree, summed.
    total = mp.mpf(0)
    for k in set(orders):
        per_leaf = mpf_f(k + 1, 1) + mpf_f(k + 1, hub) / k
        total += orders.count(k) * k * per_leaf
    return total


def shape_abc_mp(shape: CandidateShape):
    """Extended-precision ABC index of ``shape`` (call inside ``extended()``)."""
    t = t_of_shape(shape)
    s = shape
    fam = s.family
    if fam is Family.STAR:
        return t * mpf_f(s.d_R, 1)
    if fam is Family.DOUBLE_STAR:
        return (s.k_R * mpf_f(s.d_R, 1) + s.k_M * mpf_f(s.d_M, 1)
                + mpf_f(s.d_R, s.d_M))
    value = mp.mpf(0)
    if fam is not Family.MIXED_ONLY:
        value += _branch_block(s.root_branches(), s.d_R)
    if fam is not Family.ROOT_ONLY:
        value += _branch_block(s.mixed_branches(), s.d_M)
        value += s.l * mpf_f(s.d_M, 1)
    if fam is Family.ROOT_AND_MIXED:
        value += mpf_f(s.d_M, s.d_R)
    return value


def shape_abc(shape: CandidateShape) -> float:
    """ABC index of the tree realising ``shape``, from leaf contributions.

    Evaluated in extended precision and rounded once, so the result is the
    correctly rounded value of the exact sum.
    """
    with extended():
        return float(shape_abc_mp(shape))
