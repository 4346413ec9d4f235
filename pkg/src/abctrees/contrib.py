"""Leaf contributions c(k, d) and the table of their values.

A leaf in an S_k-branch whose centre hangs at a hub of degree ``d`` carries
its own pendant edge plus a ``1/k`` share of the centre-to-hub edge::

    c(k, d) = f(k + 1, 1) + f(k + 1, d) / k

``d`` is an integer >= 2 or :data:`INFINITY`, the limit where
``f(k + 1, d) -> sqrt(1 / (k + 1))``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numeric import mpf_f, mpf_f_inf
from .tree_core import edge_contribution

INFINITY = math.inf
TABLE_ORDERS = range(5, 17)
TABLE_HUB = 120


def _check(k, d) -> None:
    if k < 1:
        raise DomainError(f"branch order must be >= 1, got {k}")
    if d != INFINITY and (d < 2 or int(d) != d):
        raise DomainError(f"hub degree must be an integer >= 2 or INFINITY, got {d}")


def leaf_contribution(k: int, d: int | float) -> float:
    _check(k, d)
    if d == INFINITY:
        return edge_contribution(k + 1, 1) + math.sqrt(1 / (k + 1)) / k
    return edge_contribution(k + 1, 1) + edge_contribution(k + 1, int(d)) / k


def leaf_contribution_array(k, d) -> np.ndarray:
    """Vectorised c(k, d) for integer arrays (``d`` may contain ``inf``)."""
    k = np.asarray(k, dtype=float)
    d = np.asarray(d, dtype=float)
    hub_edge = np.where(np.isinf(d), np.sqrt(1 / (k + 1)),
                        np.sqrt((k + d - 1) / ((k + 1) * np.where(np.isinf(d), 1, d))))
    return np.sqrt(k / (k + 1)) + hub_edge / k


def delta0(k: int, d: int | float) -> float:
    """Change k c(k, d) - (k + 1) c(k + 1, d) from growing one branch by a leaf."""
    return k * leaf_contribution(k, d) - (k + 1) * leaf_contribution(k + 1, d)


def delta0_array(k, d) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    return k * leaf_contribution_array(k, d) - (k + 1) * leaf_contribution_array(k + 1, d)


@dataclass(frozen=True)
class ContribRow:
    k: int
    d: int | float
    c: float
    diff: float  # c(k, d) - c(10, d)


@dataclass(frozen=True)
class Table1Row:
    k: int
    at_120: ContribRow
    at_inf: ContribRow


def table1() -> list[Table1Row]:
    """c(k, 120) and c(k, inf) with their offsets from k = 10, for k = 5..16."""
    ref = {d: leaf_contribution(10, d) for d in (TABLE_HUB, INFINITY)}
    rows = []
    for k in TABLE_ORDERS:
        cells = {}
        for d in (TABLE_HUB, INFINITY):
            c = leaf_contribution(k, d)
            cells[d] = ContribRow(k, d, c, 0.0 if k == 10 else c - ref[d])
        rows.append(Table1Row(k, cells[TABLE_HUB], cells[INFINITY]))
    return rows


def table1_csv(rows: list[Table1Row] | None = None) -> str:
    rows = table1() if rows is None else rows
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "c_120", "diff_120", "c_inf", "diff_inf"])
    for row in rows:
        writer.writerow([row.k] + [f"{x:.8f}" for x in (
            row.at_120.c, row.at_120.diff, row.at_inf.c, row.at_inf.diff)])
    return buf.getvalue()


def f_bounds_check(d: int, k: int) -> tuple[float, float, float]:
    """Bracket ``lower < f(d, k) < upper`` for k = 1 or k >= 3.

    For k = 1 the bracket is ``1 - 1/d < f(d, 1) < 1 - 1/(2d)`` (strict for
    d >= 2).  For k >= 3 write ``x = (k - 2)/d`` so that
    ``f(d, k) = sqrt(1/k) sqrt(1 + x)``; the bracket is
    ``sqrt(1/k) (1 + x/2 - x**2/8) < f(d, k) < sqrt(1/k) (1 + x)``.

    ``sqrt(1/k) (1 + x/2)`` is *not* a lower bound: ``sqrt(1 + x) < 1 + x/2``
    for every ``x > 0``, so it sits above ``f``.  See
    :func:`first_order_overshoot`.

    f(d, 2) is the constant sqrt(1/2) and has no bracket.
    """
    if d < 1 or k < 1:
        raise DomainError(f"degrees must be >= 1, got ({d}, {k})")
    value = edge_contribution(d, k)
    if k == 1:
        return 1 - 1 / d, 1 - 1 / (2 * d), value
    if k == 2:
        raise DomainError("f(d, 2) = sqrt(1/2) for every d; there is no bracket")
    scale = math.sqrt(1 / k)
    x = (k - 2) / d
    return scale * (1 + x / 2 - x * x / 8), scale * (1 + x), value


def first_order_overshoot(d: int, k: int) -> float:
    """``sqrt(1/k) (1 + (k-2)/(2d)) - f(d, k)``; positive for all d >= 1, k >= 3."""
    return math.sqrt(1 / k) * (1 + (k - 2) / (2 * d)) - edge_contribution(d, k)


def leaf_contribution_mp(k: int, d):
    """Extended-precision c(k, d); call inside ``extended()``."""
    _check(k, d)
    if d == INFINITY:
        return mpf_f(k + 1, 1) + mpf_f_inf(k + 1) / k
    return mpf_f(k + 1, 1) + mpf_f(k + 1, d) / k
