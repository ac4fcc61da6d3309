"""Adjunction coefficients of a contractible exceptional graph, and the
trichotomy of the marked curve against them.

For a negative-definite graph whose weights are all <= -2 there is a unique
coefficient vector alpha >= 0 with sum_j alpha_j I_ij = 2 + w_i at every
vertex.  Pairing those coefficients against the neighbors of a C-marked
(-1)-vertex classifies the instance: below 1, exactly 1, or above 1.

Forests are solved by leaf-first Schur elimination with (-2)-runs crossed in
closed form (see the graphs module); the coefficients along any run form an
arithmetic progression, so runs are also filled in without per-vertex solves.
Anything with a cycle falls back to fraction-free integer elimination on the
augmented system with exact divisions at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import (
    DomainError,
    InternalDefect,
    NotContractible,
    NotMinimalResolutionGraph,
    OutOfScopeBoundary,
)
from .graphs import (
    DualGraph,
    _compress_forest,
    _eliminate_component,
    intersection_matrix,
)


@dataclass(frozen=True, eq=True)
class DNatural:
    """Exact adjunction coefficients, keyed by vertex id."""

    coefficients: dict[int, Fraction]

    def __getitem__(self, v: int) -> Fraction:
        return self.coefficients[v]


class KType(Enum):
    ANTI_CANONICAL_AMPLE = "anti-ample"
    NUMERICALLY_TRIVIAL = "trivial"
    CANONICAL_AMPLE = "canonical-ample"


def compute_dnatural(gD: DualGraph) -> DNatural:
    """Solve sum_j alpha_j I_ij = 2 + w_i exactly over the whole graph.

    gD must be unmarked with every weight <= -2 (NotMinimalResolutionGraph
    otherwise) and negative definite (NotContractible otherwise).  The
    solution is guaranteed nonnegative for such graphs; a negative entry
    would mean the solver itself is broken and raises InternalDefect.
    """
    if gD.c is not None:
        raise NotMinimalResolutionGraph("graph carries a C mark")
    for v in gD.vertex_ids:
        if gD.weight(v) > -2:
            raise NotMinimalResolutionGraph(
                f"vertex {v} has weight {gD.weight(v)} > -2"
            )
    if len(gD) == 0:
        return DNatural({})
    packed = _compress_forest(gD)
    alpha = _solve_dense(gD) if packed is None else _solve_forest(gD, packed)
    negative = [v for v, a in alpha.items() if a < 0]
    if negative:
        raise InternalDefect(
            f"adjunction solve produced negative coefficient at {negative[0]}"
        )
    return DNatural(alpha)


def _solve_forest(g: DualGraph, packed) -> dict[int, Fraction]:
    compressed, pure = packed
    alpha: dict[int, Fraction] = {}
    for comp_ids in pure:
        for v in comp_ids:
            alpha[v] = Fraction(0)
    for comp in compressed:
        rhs = {v: -g.weight(v) - 2 for v in comp.core}
        res = _eliminate_component(g, comp, rhs)
        if res is None:
            raise NotContractible("intersection form is not negative definite")
        order, parent, pivots, loads, pend = res
        for v in order:  # parents precede children
            p, run = parent[v]
            if p is None:
                alpha[v] = loads[v] / pivots[v]
                continue
            x = pivots[v]
            u = loads[v]
            j = len(run)
            ap = alpha[p]
            if j == 0:
                alpha[v] = (u + ap) / x
            else:
                # run vertices and both core endpoints sit on one arithmetic
                # progression; one generic solve at the run entry fixes it
                first = (u + ap * (j * x - (j - 1))) / ((j + 1) * x - j)
                step = first - ap
                for k, rid in enumerate(run):
                    alpha[rid] = ap + (k + 1) * step
                alpha[v] = ap + (j + 1) * step
        for v in comp.core:
            for run in pend[v]:
                # pendant runs interpolate from alpha[v] down to a virtual 0
                width = len(run) + 1
                for k, rid in enumerate(run):
                    alpha[rid] = alpha[v] * (width - 1 - k) / width
    return alpha


def _solve_dense(g: DualGraph) -> dict[int, Fraction]:
    """Fraction-free elimination on the augmented system, divisions last."""
    order = g.vertex_ids
    n = len(order)
    m = intersection_matrix(g)
    a = [[-x for x in row] + [-g.weight(order[i]) - 2] for i, row in enumerate(m.rows)]
    prev = 1
    for k in range(n):
        if a[k][k] <= 0:
            raise NotContractible("intersection form is not negative definite")
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(a[i][n])
        for j in range(i + 1, n):
            s -= a[i][j] * x[j]
        x[i] = s / a[i][i]
    return dict(zip(order, x))


def c_pairing(g: DualGraph, dnat: DNatural) -> Fraction:
    """Sum of coefficients over the neighbors of the C-marked vertex."""
    if g.c is None:
        raise DomainError("graph has no C-marked vertex")
    total = Fraction(0)
    for v in g.neighbors(g.c):
        try:
            total += dnat.coefficients[v]
        except KeyError:
            raise DomainError(
                f"coefficient vector does not cover vertex {v}"
            ) from None
    return total


def k_type_report(g: DualGraph) -> tuple[KType, Fraction]:
    """Classify the marked instance and return the pairing that decided it.

    g must carry a C mark of weight -1 (OutOfScopeBoundary otherwise); the
    rest of the graph must satisfy compute_dnatural's preconditions.  At a
    pairing of exactly 1 every coefficient must be an integer; a fractional
    one is reported as a defect rather than tolerated.
    """
    if g.c is None:
        raise OutOfScopeBoundary("graph has no C-marked vertex")
    if g.weight(g.c) != -1:
        raise OutOfScopeBoundary(
            f"marked vertex weighs {g.weight(g.c)}, classification needs -1"
        )
    dnat = compute_dnatural(g.minus_c())
    pairing = c_pairing(g, dnat)
    if pairing < 1:
        return KType.ANTI_CANONICAL_AMPLE, pairing
    if pairing == 1:
        fractional = [
            v for v, a in dnat.coefficients.items() if a.denominator != 1
        ]
        if fractional:
            raise InternalDefect(
                "pairing is 1 but coefficient at "
                f"{fractional[0]} is not an integer"
            )
        return KType.NUMERICALLY_TRIVIAL, pairing
    return KType.CANONICAL_AMPLE, pairing


def classify_k_type(g: DualGraph) -> KType:
    return k_type_report(g)[0]
