"""The seven boundary families: constructors, recognizer, and closed-form
classification of each instance's canonical type.

Instances are parameterized by an admissible twig A, an integer n >= 2, and,
depending on the family, a run length l >= 0, a second twig b with b_1 >= 3,
and a tail length m >= 0.  The builders emit one pinned vertex layout per
family (ids assigned in construction order, center first for star shapes);
the recognizer works structurally and accepts any relabeling.

Family layouts (arms read outward from the center / along the chain):

  (1)  C(0) -- (-n)
  (2)  (-n) -- a_1 .. a_r -- C(-1) -- A*           (a_r and the head of A*
       touch C)
  (3)  center(-2): arms A* | l x (-2), C(-1) | a_r .. a_1, (-n)
  (4)  center(-2): arms A* | l x (-2), b_1 .. b_s, C(-1), uB* | a_r .. a_1, (-n)
  (5)  center(-2): arms A* | l x (-2), b_1 .. b_s, w | a_r .. a_1, (-n)
       where w = -(m+2) also carries uB* and C(-1), and C carries m x (-2)
  (6)  center(-b_1): arms A* | b_2 .. b_s, C(-1), uB* | a_r .. a_1, (-n)
  (7)  center(-b_1): arms A* | b_2 .. b_s, w | a_r .. a_1, (-n)
       with w, C, and the m-tail as in (5)

uB* denotes adjoint(b) with its last entry removed; its head is the vertex
nearest C (families (4), (6)) or nearest w ((5), (7)).  Twig arms are written
with negated weights; A* starts at the center with its first entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidFamilyParams
from .canonical import KType
from .graphs import DualGraph, is_tree
from .twigs import Twig, adjoint, is_admissible, twig_determinant, twig_parts

_FIELDS = ("family", "A", "n", "l", "b", "m")
_REQUIRED = {
    1: ("n",),
    2: ("A", "n"),
    3: ("A", "n", "l"),
    4: ("A", "n", "l", "b"),
    5: ("A", "n", "l", "b", "m"),
    6: ("A", "n", "b"),
    7: ("A", "n", "b", "m"),
}


@dataclass(frozen=True)
class FamilyInstance:
    family: int
    A: Twig | None = None
    n: int | None = None
    l: int | None = None
    b: Twig | None = None
    m: int | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"family": self.family}
        for key in ("A", "n", "l", "b", "m"):
            val = getattr(self, key)
            if val is not None:
                out[key] = list(val) if isinstance(val, tuple) else val
        return out

    @staticmethod
    def from_json_dict(data: dict) -> "FamilyInstance":
        if not isinstance(data, dict):
            raise InvalidFamilyParams("family spec must be a JSON object")
        unknown = set(data) - set(_FIELDS)
        if unknown:
            raise InvalidFamilyParams(
                f"unexpected field {sorted(unknown)[0]!r} in family spec"
            )
        if "family" not in data:
            raise InvalidFamilyParams("family spec needs a 'family' field")
        kwargs: dict = {"family": data["family"]}
        for key in ("n", "l", "m"):
            if key in data:
                val = data[key]
                if not isinstance(val, int) or isinstance(val, bool):
                    raise InvalidFamilyParams(f"field {key!r} must be an integer")
                kwargs[key] = val
        for key in ("A", "b"):
            if key in data:
                val = data[key]
                if not isinstance(val, list) or not all(
                    isinstance(x, int) and not isinstance(x, bool) for x in val
                ):
                    raise InvalidFamilyParams(
                        f"field {key!r} must be a list of integers"
                    )
                kwargs[key] = tuple(val)
        return FamilyInstance(**kwargs)


@dataclass(frozen=True)
class NotInList:
    """Negative classification result; reason names the failed predicate."""

    reason: str


def l_bound(A: Twig, n: int) -> int:
    """Largest l keeping the instance contractible: d(A)(n d(A)-d(ov A))-2."""
    d = twig_determinant(A)
    dbar = twig_determinant(twig_parts(A).overline)
    return d * (n * d - dbar) - 2


def trivial_threshold(A: Twig, n: int) -> int:
    """The run length at which family (3) becomes numerically trivial."""
    return (n + 1) * twig_determinant(A) - twig_determinant(
        twig_parts(A).overline
    )


def validate_family(spec: FamilyInstance, strict: bool = True) -> None:
    """Raise InvalidFamilyParams naming the violated constraint.

    strict=False skips only the upper bound on l, so over-bound instances can
    be built for definiteness experiments; everything else always holds.
    """
    if spec.family not in _REQUIRED:
        raise InvalidFamilyParams(f"family must be 1..7, got {spec.family!r}")
    required = _REQUIRED[spec.family]
    for key in ("A", "n", "l", "b", "m"):
        val = getattr(spec, key)
        if key in required and val is None:
            raise InvalidFamilyParams(
                f"family ({spec.family}) requires field {key!r}"
            )
        if key not in required and val is not None:
            raise InvalidFamilyParams(
                f"family ({spec.family}) does not take field {key!r}"
            )
    if not isinstance(spec.n, int) or spec.n < 2:
        raise InvalidFamilyParams("n >= 2 violated")
    if spec.A is not None:
        if len(spec.A) == 0 or not is_admissible(spec.A):
            raise InvalidFamilyParams("A must be a nonempty admissible twig")
    if spec.b is not None:
        if len(spec.b) == 0 or not is_admissible(spec.b):
            raise InvalidFamilyParams("b must be a nonempty admissible twig")
        if spec.b[0] < 3:
            raise InvalidFamilyParams("b_1 >= 3 violated")
    if spec.m is not None and spec.m < 0:
        raise InvalidFamilyParams("m >= 0 violated")
    if spec.l is not None:
        if spec.l < 0:
            raise InvalidFamilyParams("l >= 0 violated")
        if strict:
            bound = l_bound(spec.A, spec.n)
            if spec.l > bound:
                raise InvalidFamilyParams(
                    f"l out of range: 0 <= l <= {bound}, got {spec.l}"
                )


class _Assembler:
    def __init__(self):
        self.weights: dict[int, int] = {}
        self.edges: list[tuple[int, int]] = []
        self.c: int | None = None
        self._next = 1

    def vertex(self, weight: int, mark: bool = False) -> int:
        vid = self._next
        self._next += 1
        self.weights[vid] = weight
        if mark:
            self.c = vid
        return vid

    def arm(self, attach_to: int, weights: Iterable[int], mark_at: int = -1):
        """Chain the weights off attach_to; mark_at indexes into weights."""
        prev = attach_to
        last = attach_to
        for i, w in enumerate(weights):
            vid = self.vertex(w, mark=(i == mark_at))
            self.edges.append((prev, vid))
            prev = last = vid
        return last

    def graph(self) -> DualGraph:
        # ids are fresh and sequential, so the invariants hold by construction
        return DualGraph._trusted(
            self.weights, tuple(sorted(self.edges)), self.c
        )


def _neg(twig: Twig) -> list[int]:
    return [-a for a in twig]


def _u_bstar(b: Twig) -> Twig:
    return adjoint(b)[:-1]


def build_family(spec: FamilyInstance, strict: bool = True) -> DualGraph:
    """The pinned graph of a family instance, C marked.

    strict as in validate_family: pass False to build over-bound l values
    (still structurally well formed, just not contractible).
    """
    validate_family(spec, strict=strict)
    A, n, l, b, m = spec.A, spec.n, spec.l, spec.b, spec.m
    asm = _Assembler()
    if spec.family == 1:
        c = asm.vertex(0, mark=True)
        d = asm.vertex(-n)
        asm.edges.append((c, d))
        return asm.graph()
    if spec.family == 2:
        start = asm.vertex(-n)
        end_a = asm.arm(start, _neg(A))
        c = asm.vertex(-1, mark=True)
        asm.edges.append((end_a, c))
        asm.arm(c, _neg(adjoint(A)))
        return asm.graph()
    arm_a = _neg(tuple(reversed(A))) + [-n]
    if spec.family == 3:
        center = asm.vertex(-2)
        asm.arm(center, _neg(adjoint(A)))
        asm.arm(center, [-2] * l + [-1], mark_at=l)
        asm.arm(center, arm_a)
        return asm.graph()
    if spec.family == 4:
        center = asm.vertex(-2)
        asm.arm(center, _neg(adjoint(A)))
        mid = [-2] * l + _neg(b) + [-1] + _neg(_u_bstar(b))
        asm.arm(center, mid, mark_at=l + len(b))
        asm.arm(center, arm_a)
        return asm.graph()
    if spec.family == 5:
        center = asm.vertex(-2)
        asm.arm(center, _neg(adjoint(A)))
        w = asm.arm(center, [-2] * l + _neg(b) + [-(m + 2)])
        asm.arm(w, _neg(_u_bstar(b)))
        asm.arm(w, [-1] + [-2] * m, mark_at=0)
        asm.arm(center, arm_a)
        return asm.graph()
    if spec.family == 6:
        center = asm.vertex(-b[0])
        asm.arm(center, _neg(adjoint(A)))
        tail = _neg(b[1:]) + [-1] + _neg(_u_bstar(b))
        asm.arm(center, tail, mark_at=len(b) - 1)
        asm.arm(center, arm_a)
        return asm.graph()
    center = asm.vertex(-b[0])  # family (7)
    asm.arm(center, _neg(adjoint(A)))
    w = asm.arm(center, _neg(b[1:]) + [-(m + 2)])
    asm.arm(w, _neg(_u_bstar(b)))
    asm.arm(w, [-1] + [-2] * m, mark_at=0)
    asm.arm(center, arm_a)
    return asm.graph()


def figure1_graph(A: Twig, m: int, n: int) -> DualGraph:
    """The numerically trivial boundary shape, assembled directly.

    Center (-2); arms: adjoint(A); then (n+1)d(A)-d(ov A)-1 vertices of
    weight -2 followed by -(m+2), C(-1), and m further (-2)s; then A reversed
    capped by (-n).  A=[2] with (m,n)=(0,2) is the one excluded parameter
    choice (its run would overshoot the contractibility bound).
    """
    if len(A) == 0 or not is_admissible(A):
        raise InvalidFamilyParams("A must be a nonempty admissible twig")
    if n < 2:
        raise InvalidFamilyParams("n >= 2 violated")
    if m < 0:
        raise InvalidFamilyParams("m >= 0 violated")
    if A == (2,) and m == 0 and n == 2:
        raise InvalidFamilyParams(
            "A=[2] with (m,n)=(0,2) is excluded (run would exceed the bound)"
        )
    t = trivial_threshold(A, n)
    asm = _Assembler()
    center = asm.vertex(-2)
    asm.arm(center, _neg(adjoint(A)))
    asm.arm(center, [-2] * (t - 1) + [-(m + 2), -1] + [-2] * m, mark_at=t)
    asm.arm(center, _neg(tuple(reversed(A))) + [-n])
    return asm.graph()


def figure1_spec(A: Twig, m: int, n: int) -> FamilyInstance:
    """The family instance a figure1_graph classifies as."""
    t = trivial_threshold(A, n)
    if m == 0:
        return FamilyInstance(family=3, A=tuple(A), n=n, l=t)
    return FamilyInstance(family=4, A=tuple(A), n=n, l=t - 1, b=(m + 2,))


def predicted_k_type(spec: FamilyInstance) -> KType:
    """Closed-form canonical type of a valid instance, no linear solves."""
    validate_family(spec, strict=True)
    if spec.family in (1, 2, 6, 7):
        return KType.ANTI_CANONICAL_AMPLE
    t = trivial_threshold(spec.A, spec.n)
    if spec.family == 3:
        if spec.l < t:
            return KType.ANTI_CANONICAL_AMPLE
        if spec.l == t:
            return KType.NUMERICALLY_TRIVIAL
        return KType.CANONICAL_AMPLE
    if spec.family == 4:
        if spec.l < t - 1:
            return KType.ANTI_CANONICAL_AMPLE
        if spec.l == t - 1 and len(spec.b) == 1:
            return KType.NUMERICALLY_TRIVIAL
        return KType.CANONICAL_AMPLE
    # family (5): the trivial value is unreachable, the split is two-way
    if spec.l < t - 1:
        return KType.ANTI_CANONICAL_AMPLE
    return KType.CANONICAL_AMPLE


# -- recognizer ----------------------------------------------------------------


def _walk(g: DualGraph, frm: int, to: int):
    """Chain ids starting with to, stopping before any branch vertex.

    Returns (ids, branch) where branch is the degree->=3 vertex the walk hit,
    or None if the chain ended at a leaf (the leaf is included in ids).
    """
    ids = []
    prev, cur = frm, to
    while True:
        if g.degree(cur) >= 3:
            return ids, cur
        ids.append(cur)
        if g.degree(cur) == 1:
            return ids, None
        nxt = next(x for x in g.adjacency[cur] if x != prev)
        prev, cur = cur, nxt


def _twig_of(g: DualGraph, ids: list[int]) -> Twig | None:
    """ids as a positive twig, or None if any weight is above -2."""
    ws = tuple(-g.weight(v) for v in ids)
    return ws if all(a >= 2 for a in ws) else None


def _match_side_arms(g, arms):
    """Identify (A, n) from two outward arms, one being adjoint(A).

    Each candidate reading takes one arm as a_r..a_1,(-n) and the other as
    A*.  Returns (A, n) or a failure reason.
    """
    reasons = []
    matches = []
    for cap_arm, star_arm in (arms, tuple(reversed(arms))):
        if len(cap_arm) < 2:
            reasons.append("unrecognized shape")
            continue
        n = -g.weight(cap_arm[-1])
        if n < 2:
            reasons.append("n >= 2 violated")
            continue
        a = _twig_of(g, cap_arm[:-1])
        star = _twig_of(g, star_arm)
        if a is None or star is None:
            reasons.append("A must be a nonempty admissible twig")
            continue
        a = tuple(reversed(a))
        if adjoint(a) != star:
            reasons.append("adjoint mismatch")
            continue
        matches.append((a, n))
    if matches:
        return matches[0], None
    return None, reasons[0]


def _parse_family_1(g):
    if len(g) != 2 or g.weight(g.c) != 0 or g.degree(g.c) != 1:
        return None, "unrecognized shape"
    other = next(v for v in g.vertex_ids if v != g.c)
    n = -g.weight(other)
    if n < 2:
        return None, "n >= 2 violated"
    return FamilyInstance(family=1, n=n), None


def _parse_family_2(g):
    if g.weight(g.c) != -1 or g.degree(g.c) != 2:
        return None, "unrecognized shape"
    if any(g.degree(v) >= 3 for v in g.vertex_ids):
        return None, "unrecognized shape"
    nb = g.neighbors(g.c)
    sides = []
    for to in nb:
        ids, branch = _walk(g, g.c, to)
        if branch is not None:
            return None, "unrecognized shape"
        sides.append(ids)
    result, reason = _match_side_arms(g, tuple(sides))
    if result is None:
        return None, reason
    a, n = result
    return FamilyInstance(family=2, A=a, n=n), None


def _center_arms(g, center):
    """Outward arm walks from a star center; None if an arm hits a branch."""
    arms = []
    for to in g.neighbors(center):
        ids, branch = _walk(g, center, to)
        if branch is not None:
            return None
        arms.append(ids)
    return arms


def _parse_one_branch(g, center, family):
    """Families (3), (4) (center weight -2) and (6) (center -b_1 <= -3)."""
    if g.degree(center) != 3:
        return None, "unrecognized shape"
    arms = _center_arms(g, center)
    if arms is None:
        return None, "unrecognized shape"
    with_c = [a for a in arms if g.c in a]
    if len(with_c) != 1:
        return None, "unrecognized shape"
    c_arm = with_c[0]
    others = tuple(a for a in arms if a is not c_arm)
    pos = c_arm.index(g.c)
    before, after = c_arm[:pos], c_arm[pos + 1 :]
    result, reason = _match_side_arms(g, others)
    if result is None:
        return None, reason
    a, n = result
    if family == 3:
        if after:
            return None, "unrecognized shape"
        if any(g.weight(v) != -2 for v in before):
            return None, "unrecognized shape"
        l = len(before)
        bound = l_bound(a, n)
        if l > bound:
            return None, f"l out of range: 0 <= l <= {bound}, got {l}"
        return FamilyInstance(family=3, A=a, n=n, l=l), None
    if family == 4:
        run = 0
        while run < len(before) and g.weight(before[run]) == -2:
            run += 1
        b_ids = before[run:]
        if not b_ids:
            return None, "unrecognized shape"
        b = _twig_of(g, b_ids)
        if b is None or b[0] < 3:
            return None, "b_1 >= 3 violated"
        ustar = _twig_of(g, after)
        if ustar is None or ustar != _u_bstar(b):
            return None, "adjoint mismatch"
        bound = l_bound(a, n)
        if run > bound:
            return None, f"l out of range: 0 <= l <= {bound}, got {run}"
        return FamilyInstance(family=4, A=a, n=n, l=run, b=b), None
    # family (6): center carries b_1
    b1 = -g.weight(center)
    if b1 < 3:
        return None, "b_1 >= 3 violated"
    rest = _twig_of(g, before)
    if rest is None:
        return None, "b must be a nonempty admissible twig"
    b = (b1,) + rest
    ustar = _twig_of(g, after)
    if ustar is None or ustar != _u_bstar(b):
        return None, "adjoint mismatch"
    return FamilyInstance(family=6, A=a, n=n, b=b), None


def _parse_two_branch(g, branches, family):
    """Families (5) (center -2) and (7) (center -b_1): C hangs off w."""
    if any(g.degree(v) != 3 for v in branches):
        return None, "unrecognized shape"
    w = next((v for v in branches if g.has_edge(v, g.c)), None)
    if w is None:
        return None, "unrecognized shape"
    center = next(v for v in branches if v != w)
    m = -g.weight(w) - 2
    if m < 0:
        return None, "m >= 0 violated"
    # C: one side is w, the optional other side is the m-tail
    tail_sides = [v for v in g.neighbors(g.c) if v != w]
    if g.weight(g.c) != -1 or len(tail_sides) > 1:
        return None, "unrecognized shape"
    if tail_sides:
        tail, branch = _walk(g, g.c, tail_sides[0])
        if branch is not None or any(g.weight(v) != -2 for v in tail):
            return None, "unrecognized shape"
        tail_len = len(tail)
    else:
        tail_len = 0
    if tail_len != m:
        return None, "m tail mismatch"
    # w's arms: spine toward the center, uB*, and C
    spine = None
    ustar_ids = None
    for to in g.neighbors(w):
        if to == g.c:
            continue
        ids, branch = _walk(g, w, to)
        if branch is center:
            spine = ids
        elif branch is None and ustar_ids is None:
            ustar_ids = ids
        else:
            return None, "unrecognized shape"
    if spine is None or ustar_ids is None:
        return None, "unrecognized shape"
    spine = list(reversed(spine))  # walked from w; flip to read center-outward
    side_arms = []
    for to in g.neighbors(center):
        ids, branch = _walk(g, center, to)
        if branch is w:
            continue
        if branch is not None:
            return None, "unrecognized shape"
        side_arms.append(ids)
    if len(side_arms) != 2:
        return None, "unrecognized shape"
    result, reason = _match_side_arms(g, tuple(side_arms))
    if result is None:
        return None, reason
    a, n = result
    if family == 5:
        if g.weight(center) != -2:
            return None, "unrecognized shape"
        run = 0
        while run < len(spine) and g.weight(spine[run]) == -2:
            run += 1
        b_ids = spine[run:]
        if not b_ids:
            return None, "unrecognized shape"
        b = _twig_of(g, b_ids)
        if b is None or b[0] < 3:
            return None, "b_1 >= 3 violated"
        l = run
    else:
        b1 = -g.weight(center)
        if b1 < 3:
            return None, "b_1 >= 3 violated"
        rest = _twig_of(g, spine)
        if rest is None:
            return None, "b must be a nonempty admissible twig"
        b = (b1,) + rest
        l = None
    ustar = _twig_of(g, ustar_ids)
    if ustar is None or ustar != _u_bstar(b):
        return None, "adjoint mismatch"
    if family == 5:
        bound = l_bound(a, n)
        if l > bound:
            return None, f"l out of range: 0 <= l <= {bound}, got {l}"
        return FamilyInstance(family=5, A=a, n=n, l=l, b=b, m=m), None
    return FamilyInstance(family=7, A=a, n=n, b=b, m=m), None


def classify_family_all(g: DualGraph) -> tuple[list[FamilyInstance], str]:
    """All family readings of g, plus the recognizer's best failure reason."""
    if g.c is None:
        return [], "no C-marked vertex"
    if not is_tree(g):
        return [], "not a tree"
    branches = [v for v in g.vertex_ids if g.degree(v) >= 3]
    matches: list[FamilyInstance] = []
    reasons: list[str] = []

    def attempt(parser, *args):
        spec, reason = parser(g, *args)
        if spec is not None:
            matches.append(spec)
        else:
            reasons.append(reason)

    if len(branches) == 0:
        attempt(_parse_family_1)
        attempt(_parse_family_2)
    elif len(branches) == 1:
        if g.weight(g.c) != -1:
            reasons.append("C weight not -1")
        elif g.weight(branches[0]) == -2:
            attempt(_parse_one_branch, branches[0], 3)
            attempt(_parse_one_branch, branches[0], 4)
        else:
            attempt(_parse_one_branch, branches[0], 6)
    elif len(branches) == 2:
        if g.weight(g.c) != -1:
            reasons.append("C weight not -1")
        else:
            non_w = [v for v in branches if not g.has_edge(v, g.c)]
            if len(non_w) == 1:
                which = 5 if g.weight(non_w[0]) == -2 else 7
                attempt(_parse_two_branch, branches, which)
            else:
                reasons.append("unrecognized shape")
    else:
        reasons.append("unrecognized shape")
    specific = [r for r in reasons if r != "unrecognized shape"]
    reason = (
        "" if matches else (specific[0] if specific else
                            (reasons[0] if reasons else "unrecognized shape"))
    )
    matches.sort(key=lambda s: s.family)
    return matches, reason


def classify_family(g: DualGraph) -> FamilyInstance | NotInList:
    """The family reading of g (smallest family id), or NotInList."""
    matches, reason = classify_family_all(g)
    if matches:
        return matches[0]
    return NotInList(reason)
