"""Exact arithmetic on twigs (linear chains of rational curves).

A twig is recorded as a tuple of positive integers [a_1,...,a_r], where the
weight a means a curve of self-intersection -a.  The empty tuple is the empty
twig.  A twig is admissible when every weight is at least 2.

The determinant d(A) is the determinant of the r x r tridiagonal matrix with
diagonal (a_1,...,a_r) and off-diagonal entries -1; d of the empty twig is 1.
The inductance e(A) = d(A-bar)/d(A), where A-bar drops the first weight, is a
bijection between admissible twigs and rationals strictly between 0 and 1,
inverted by the ceiling (Hirzebruch-Jung) continued fraction expansion.  The
adjoint A* is the admissible twig with e(A*) = 1 - e(reverse(A)).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import DomainError, InternalDefect, ParseError

Twig = tuple[int, ...]

_EXPANSION_CAP = 10**6


class TwigParts(NamedTuple):
    overline: Twig
    underline: Twig
    transposal: Twig


def _as_twig(weights: Iterable[int]) -> Twig:
    return tuple(int(w) for w in weights)


def is_admissible(weights: Iterable[int]) -> bool:
    return all(w >= 2 for w in weights)


def twig_determinant(weights: Iterable[int]) -> int:
    """d(A) by the linear recurrence d_k = a_k d_{k-1} - d_{k-2}, d_0 = 1."""
    prev, cur = 0, 1
    for a in weights:
        prev, cur = cur, a * cur - prev
    return cur


def twig_parts(weights: Iterable[int]) -> TwigParts:
    """Drop-first, drop-last and reversed copies of a twig (empty if r <= 1)."""
    t = _as_twig(weights)
    return TwigParts(overline=t[1:], underline=t[:-1], transposal=t[::-1])


def inductance(weights: Iterable[int]) -> Fraction:
    """e(A) = d(A-bar)/d(A), strictly between 0 and 1 for admissible A."""
    t = _as_twig(weights)
    if not t:
        raise DomainError("inductance is undefined for the empty twig")
    if not is_admissible(t):
        raise DomainError(f"inductance requires an admissible twig, got {list(t)}")
    return Fraction(twig_determinant(t[1:]), twig_determinant(t))


def twig_from_inductance(q: Fraction | int) -> Twig:
    """The unique admissible twig with inductance q, for q strictly in (0,1).

    Weights come from the ceiling continued fraction of 1/q: with x = d/p,
    a_1 = ceil(x) and the expansion recurses on 1/(a_1 - x) until exact.
    """
    q = Fraction(q)
    if not 0 < q < 1:
        raise DomainError(f"inductance value must satisfy 0 < q < 1, got {q}")
    num, den = q.denominator, q.numerator  # x = num/den > 1
    weights = []
    for _ in range(_EXPANSION_CAP):
        a = -(-num // den)  # ceiling
        weights.append(a)
        num, den = den, a * den - num
        if den == 0:
            return tuple(weights)
    raise InternalDefect("continued fraction expansion did not terminate")


def adjoint(weights: Iterable[int]) -> Twig:
    """The adjoint twig A*, defined by e(A*) = 1 - e(reverse(A))."""
    t = _as_twig(weights)
    if not t:
        raise DomainError("adjoint is undefined for the empty twig")
    return twig_from_inductance(1 - inductance(t[::-1]))


_ITEM_RE = re.compile(r"^(?:(\d+)\*)?(\d+)$")


def parse_twig(text: str) -> Twig:
    """Parse `[a1,a2,...]` with optional `k*a` repetition, `[]` for empty."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ParseError(1, f"twig must be bracketed, got {text!r}")
    body = s[1:-1].strip()
    if not body:
        return ()
    weights: list[int] = []
    for item in body.split(","):
        m = _ITEM_RE.match(item.replace(" ", ""))
        if not m:
            raise ParseError(1, f"bad twig entry {item.strip()!r}")
        count = int(m.group(1)) if m.group(1) else 1
        value = int(m.group(2))
        if value < 1:
            raise ParseError(1, f"twig weights must be positive, got {value}")
        weights.extend([value] * count)
    return tuple(weights)


def format_twig(weights: Iterable[int]) -> str:
    return "[" + ",".join(str(w) for w in weights) + "]"
