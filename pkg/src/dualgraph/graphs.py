"""Weighted dual graphs: determinants, definiteness, blow-downs, shapes.

A DualGraph is a simple undirected graph whose vertices carry integer
self-intersection weights; at most one vertex carries the C mark.  The
intersection matrix I has the weights on the diagonal and 1 for each edge.
All arithmetic is exact (integers and Fractions); there is no floating point
anywhere in the package.

Large boundary graphs are dominated by long chains of (-2)-curves, so the
definiteness test and the adjunction solver (in the canonical module) never
walk those chains vertex by vertex: maximal runs of degree-<=2 weight-(-2)
vertices are crossed in closed form.  Eliminating a child subtree with pivot
x through a run of j such vertices contributes (j*x-(j-1))/((j+1)*x-j) to the
parent's pivot, every intermediate pivot along the run stays positive iff
x >= 1 or j*(1-x) < x, and a pendant run contributes j/(j+1).  These are the
ordinary Schur-complement recurrences compressed through a telescoping
product, so the outcome is identical to vertex-by-vertex elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import (
    DomainError,
    NotContractibleCurve,
    WouldBreakChain,
    WouldCreateCycle,
)


class DualGraph:
    """Immutable weighted graph with an optional C-marked vertex."""

    __slots__ = ("_weights", "_edges", "_c", "_adj", "_hash")

    def __init__(
        self,
        weights: Mapping[int, int] | Iterable[tuple[int, int]],
        edges: Iterable[tuple[int, int]] = (),
        c: int | None = None,
    ):
        w = dict(weights)
        for v, wt in w.items():
            if not isinstance(v, int) or not isinstance(wt, int):
                raise ValueError("vertex ids and weights must be integers")
        seen: set[tuple[int, int]] = set()
        norm: list[tuple[int, int]] = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u} is not allowed")
            if u not in w or v not in w:
                raise ValueError(f"edge ({u},{v}) references a missing vertex")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            norm.append(key)
        if c is not None and c not in w:
            raise ValueError(f"marked vertex {c} does not exist")
        self._weights = w
        self._edges = tuple(sorted(norm))
        self._c = c
        self._adj: dict[int, list[int]] | None = None
        self._hash: int | None = None

    # -- basic accessors -------------------------------------------------

    @property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._weights))

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def c(self) -> int | None:
        return self._c

    def weight(self, v: int) -> int:
        return self._weights[v]

    @property
    def weights(self) -> dict[int, int]:
        return dict(self._weights)

    @property
    def adjacency(self) -> dict[int, list[int]]:
        if self._adj is None:
            adj: dict[int, list[int]] = {v: [] for v in self._weights}
            for u, v in self._edges:
                adj[u].append(v)
                adj[v].append(u)
            self._adj = adj
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(self.adjacency[v]))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency.get(u, ())

    def __len__(self) -> int:
        return len(self._weights)

    def __contains__(self, v: int) -> bool:
        return v in self._weights

    def __eq__(self, other) -> bool:
        if not isinstance(other, DualGraph):
            return NotImplemented
        return (
            self._weights == other._weights
            and self._edges == other._edges
            and self._c == other._c
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (tuple(sorted(self._weights.items())), self._edges, self._c)
            )
        return self._hash

    def __repr__(self) -> str:
        mark = f", c={self._c}" if self._c is not None else ""
        return f"DualGraph({dict(sorted(self._weights.items()))}, {list(self._edges)}{mark})"

    # -- derived copies ---------------------------------------------------

    @classmethod
    def _trusted(cls, weights, edges, c):
        """Skip validation; callers guarantee normalized, consistent data."""
        g = cls.__new__(cls)
        g._weights = weights
        g._edges = edges
        g._c = c
        g._adj = None
        g._hash = None
        return g

    def delete(self, v: int) -> "DualGraph":
        """The graph with vertex v (and its edges) removed."""
        if v not in self._weights:
            raise ValueError(f"no vertex {v}")
        w = {u: wt for u, wt in self._weights.items() if u != v}
        e = tuple((a, b) for a, b in self._edges if v not in (a, b))
        return DualGraph._trusted(w, e, None if self._c == v else self._c)

    def minus_c(self) -> "DualGraph":
        if self._c is None:
            raise DomainError("graph has no C-marked vertex")
        return self.delete(self._c)

    def with_mark(self, v: int | None) -> "DualGraph":
        return DualGraph(self._weights, self._edges, v)


def chain_graph(
    signed_weights: Iterable[int], first_id: int = 1, c_index: int | None = None
) -> DualGraph:
    """A path with consecutive ids and the given signed weights.

    c_index, when given, marks the vertex at that position (0-based).
    """
    ws = list(signed_weights)
    weights = {first_id + i: w for i, w in enumerate(ws)}
    edges = [(first_id + i, first_id + i + 1) for i in range(len(ws) - 1)]
    c = None if c_index is None else first_id + c_index
    return DualGraph(weights, edges, c)


# -- intersection matrices and determinants -------------------------------


@dataclass(frozen=True)
class IntersectionMatrix:
    order: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]


def intersection_matrix(g: DualGraph) -> IntersectionMatrix:
    """I(g) under the canonical sorted vertex ordering."""
    order = g.vertex_ids
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    rows = [[0] * n for _ in range(n)]
    for i, v in enumerate(order):
        rows[i][i] = g.weight(v)
    for u, v in g.edges:
        rows[index[u]][index[v]] = 1
        rows[index[v]][index[u]] = 1
    return IntersectionMatrix(order, tuple(tuple(r) for r in rows))


def _bareiss_det(rows: list[list[int]]) -> int:
    """Exact determinant by fraction-free elimination with row pivoting."""
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _components(g: DualGraph) -> list[list[int]]:
    adj = g.adjacency
    seen: set[int] = set()
    comps: list[list[int]] = []
    for start in g.vertex_ids:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for nb in adj[u]:
                if nb not in seen:
                    seen.add(nb)
                    comp.append(nb)
                    stack.append(nb)
        comps.append(sorted(comp))
    return comps


def _forest_components(g: DualGraph) -> list[list[int]] | None:
    """Components in one traversal, or None as soon as a cycle is found."""
    adj = g.adjacency
    seen: set[int] = set()
    comps: list[list[int]] = []
    for start in g.vertex_ids:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [(start, -1)]
        while stack:
            u, par = stack.pop()
            for nb in adj[u]:
                if nb == par:
                    continue
                if nb in seen:
                    return None
                seen.add(nb)
                comp.append(nb)
                stack.append((nb, u))
        comps.append(comp)
    return comps


def is_forest(g: DualGraph) -> bool:
    return _forest_components(g) is not None


def is_tree(g: DualGraph) -> bool:
    comps = _forest_components(g)
    return comps is not None and len(comps) == 1 and len(g) > 0


def _forest_det_neg(g: DualGraph) -> int:
    """det(-I) of a forest, linear time.

    Per rooted subtree, full = det(-I of the subtree) and hole = det with the
    subtree's root struck out; a vertex combines its children by
    full(v) = a_v * prod(full(c)) - sum_i hole(c_i) * prod_{j != i} full(c_j),
    the tree generalization of the chain recurrence.
    """
    adj = g.adjacency
    total = 1
    seen: set[int] = set()
    for root in g.vertex_ids:
        if root in seen:
            continue
        order: list[int] = []
        parent: dict[int, int | None] = {root: None}
        stack = [root]
        seen.add(root)
        while stack:
            u = stack.pop()
            order.append(u)
            for nb in adj[u]:
                if nb != parent[u]:
                    parent[nb] = u
                    seen.add(nb)
                    stack.append(nb)
        full: dict[int, int] = {}
        hole: dict[int, int] = {}
        for v in reversed(order):
            kids = [nb for nb in adj[v] if nb != parent[v]]
            prod = 1
            for c in kids:
                prod *= full[c]
            acc = -g.weight(v) * prod
            for i, c in enumerate(kids):
                rest = 1
                for j, other in enumerate(kids):
                    if j != i:
                        rest *= full[other]
                acc -= hole[c] * rest
            full[v] = acc
            hole[v] = prod
        total *= full[root]
    return total


def graph_d(g: DualGraph) -> int:
    """det(-I(g)); 1 for the empty graph."""
    if len(g) == 0:
        return 1
    if is_forest(g):
        return _forest_det_neg(g)
    rows = [[-x for x in row] for row in intersection_matrix(g).rows]
    return _bareiss_det(rows)


def signed_determinant(g: DualGraph) -> int:
    """det(I(g)); 1 for the empty graph."""
    return graph_d(g) if len(g) % 2 == 0 else -graph_d(g)


# -- negative definiteness -------------------------------------------------


def _run_contribution(x: Fraction, j: int) -> tuple[bool, Fraction]:
    """Pivot load on the parent after eliminating a child (pivot x > 0)
    through a run of j weight-(-2) vertices; False when a run pivot dies."""
    if x < 1 and j * (1 - x) >= x:
        return False, Fraction(0)
    return True, (j * x - (j - 1)) / ((j + 1) * x - j)


@dataclass
class _Compressed:
    """One connected component of a forest, with (-2)-runs compressed.

    core lists the retained vertices; attach maps each core vertex to its
    incidences: (other_core_vertex or None for a pendant run, run vertex ids
    ordered away from this vertex).  Components made purely of (-2)-chains
    have no core and appear in the pure list instead.
    """

    core: list[int]
    attach: dict[int, list[tuple[int | None, tuple[int, ...]]]]


def _compress_forest(
    g: DualGraph,
) -> tuple[list[_Compressed], list[list[int]]] | None:
    """Compressed components of a forest; None if the graph has a cycle.

    One traversal: components are discovered from core seeds, runs are walked
    once each (the far end skips an already-consumed run), and leftovers are
    the core-free pure components.  Forests are exactly the graphs where the
    edge count equals vertices minus components, so one final count rejects
    any cycle (whose compressed record would otherwise be malformed).
    """
    adj = g.adjacency
    weights = g._weights
    is_core = {}
    for v, w in weights.items():
        d = len(adj[v])
        is_core[v] = w != -2 or d > 2 or d == 0
    visited: set[int] = set()
    compressed: list[_Compressed] = []
    pure: list[list[int]] = []
    for s in g.vertex_ids:
        if s in visited or not is_core[s]:
            continue
        visited.add(s)
        cores = [s]
        attach: dict[int, list[tuple[int | None, tuple[int, ...]]]] = {s: []}
        stack = [s]
        while stack:
            v = stack.pop()
            for nb in adj[v]:
                if is_core[nb]:
                    if v < nb:  # record each direct core pair exactly once
                        attach[v].append((nb, ()))
                        attach.setdefault(nb, []).append((v, ()))
                    if nb not in visited:
                        visited.add(nb)
                        attach.setdefault(nb, [])
                        cores.append(nb)
                        stack.append(nb)
                    continue
                if nb in visited:
                    continue  # run already consumed from its other end
                run: list[int] = []
                prev, cur = v, nb
                while not is_core[cur]:
                    visited.add(cur)
                    run.append(cur)
                    a = adj[cur]
                    if len(a) == 1:
                        cur = None  # pendant run
                        break
                    prev, cur = cur, (a[0] if a[1] == prev else a[1])
                if cur is None:
                    attach[v].append((None, tuple(run)))
                elif cur != v:  # cur == v is a cycle; the count test rejects
                    attach[v].append((cur, tuple(run)))
                    attach.setdefault(cur, []).append((v, tuple(reversed(run))))
                    if cur not in visited:
                        visited.add(cur)
                        cores.append(cur)
                        stack.append(cur)
        cores.sort()
        for v in cores:
            attach[v].sort(key=lambda item: (item[0] is None, item[0] or 0, item[1]))
        compressed.append(_Compressed(core=cores, attach=attach))
    for s in g.vertex_ids:
        if s in visited:
            continue
        comp = [s]
        visited.add(s)
        stack = [s]
        while stack:
            u = stack.pop()
            for nb in adj[u]:
                if nb not in visited:
                    visited.add(nb)
                    comp.append(nb)
                    stack.append(nb)
        pure.append(comp)
    if len(g._edges) != len(weights) - len(compressed) - len(pure):
        return None
    return compressed, pure


def is_negative_definite(g: DualGraph) -> bool:
    """True iff I(g) is negative definite (exact Sylvester test).

    Forests use leaf-first Schur elimination with runs of (-2)-vertices
    crossed in closed form; anything else falls back to fraction-free
    elimination on -I under the canonical vertex ordering.  Positive
    definiteness does not depend on the elimination order, so the two routes
    decide the same predicate.
    """
    if len(g) == 0:
        return True
    if any(w >= 0 for w in g._weights.values()):
        # a nonnegative diagonal entry is a nonpositive principal minor of -I
        return False
    packed = _compress_forest(g)
    if packed is None:  # not a forest
        rows = [[-x for x in row] for row in intersection_matrix(g).rows]
        n = len(rows)
        a = [list(r) for r in rows]
        prev = 1
        for k in range(n):
            if a[k][k] <= 0:
                return False
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return True
    compressed, _pure = packed
    for comp in compressed:
        pivot = _eliminate_component(g, comp, rhs=None)
        if pivot is None:
            return False
    return True


def _eliminate_component(
    g: DualGraph,
    comp: _Compressed,
    rhs: dict[int, Fraction] | None,
):
    """Leaf-first elimination over a compressed component.

    Without rhs: returns a truthy object when all pivots are positive, None
    otherwise (pure definiteness test).  With rhs: returns
    (order, parent_info, pivots, loads) for the solver's back-substitution,
    or None if a pivot dies.
    """
    attach = comp.attach
    root = comp.core[0]
    order: list[int] = []
    parent: dict[int, tuple[int | None, tuple[int, ...]]] = {root: (None, ())}
    stack = [root]
    while stack:
        u = stack.pop()
        order.append(u)
        for other, run in attach[u]:
            if other is not None and other not in parent:
                # remember the run as seen from the parent u toward child other
                parent[other] = (u, run)
                stack.append(other)
    pivots: dict[int, Fraction] = {}
    loads: dict[int, Fraction] = {}
    pend: dict[int, list[tuple[int, ...]]] = {v: [] for v in comp.core}
    for v in reversed(order):
        acc = Fraction(-g.weight(v))
        load = Fraction(0) if rhs is None else rhs[v]
        for other, run in attach[v]:
            if other is None:
                j = len(run)
                acc -= Fraction(j, j + 1)
                pend[v].append(run)
            elif parent[other][0] == v:
                x = pivots[other]
                j = len(run)
                ok, sub = _run_contribution(x, j)
                if not ok:
                    return None
                acc -= sub
                if rhs is not None:
                    load += loads[other] / ((j + 1) * x - j)
        if acc <= 0:
            return None
        pivots[v] = acc
        loads[v] = load
    return order, parent, pivots, loads, pend


# -- blow-downs and contraction --------------------------------------------


def blow_down(g: DualGraph, v: int) -> DualGraph:
    """Contract the (-1)-vertex v, adjusting its neighbors.

    v must weigh -1 (NotContractibleCurve), have degree <= 2
    (WouldBreakChain), and its two neighbors, when present, must not already
    be adjacent (WouldCreateCycle).  Each neighbor's weight increases by 1;
    with two neighbors the traversing edge is fused.  Remaining ids are kept;
    a mark on v disappears with it.
    """
    if v not in g:
        raise ValueError(f"no vertex {v}")
    if g.weight(v) != -1:
        raise NotContractibleCurve(f"vertex {v} has weight {g.weight(v)}, not -1")
    nbrs = g.neighbors(v)
    if len(nbrs) > 2:
        raise WouldBreakChain(f"vertex {v} has degree {len(nbrs)} > 2")
    if len(nbrs) == 2 and g.has_edge(nbrs[0], nbrs[1]):
        raise WouldCreateCycle(
            f"neighbors {nbrs[0]} and {nbrs[1]} of {v} are already adjacent"
        )
    weights = {u: w + 1 if u in nbrs else w for u, w in g.weights.items() if u != v}
    edges = [(a, b) for a, b in g.edges if v not in (a, b)]
    if len(nbrs) == 2:
        edges.append(nbrs)
    return DualGraph(weights, edges, None if g.c == v else g.c)


def blow_up_edge(g: DualGraph, u: int, v: int, new_id: int | None = None) -> DualGraph:
    """Insert a fresh (-1)-vertex on the edge (u, v), decrementing u and v."""
    if not g.has_edge(u, v):
        raise ValueError(f"no edge ({u},{v})")
    w = new_id if new_id is not None else max(g.vertex_ids) + 1
    if w in g:
        raise ValueError(f"vertex id {w} already in use")
    key = (min(u, v), max(u, v))
    weights = {x: wt - 1 if x in (u, v) else wt for x, wt in g.weights.items()}
    weights[w] = -1
    edges = [e for e in g.edges if e != key] + [(u, w), (v, w)]
    return DualGraph(weights, edges, g.c)


def blow_up_at(g: DualGraph, u: int, new_id: int | None = None) -> DualGraph:
    """Attach a fresh (-1)-leaf at u, decrementing u's weight."""
    if u not in g:
        raise ValueError(f"no vertex {u}")
    w = new_id if new_id is not None else max(g.vertex_ids) + 1
    if w in g:
        raise ValueError(f"vertex id {w} already in use")
    weights = {x: wt - 1 if x == u else wt for x, wt in g.weights.items()}
    weights[w] = -1
    edges = list(g.edges) + [(u, w)]
    return DualGraph(weights, edges, g.c)


def blow_up_free(g: DualGraph, new_id: int | None = None) -> DualGraph:
    """Add an isolated (-1)-vertex (inverse of blowing down an isolated one)."""
    w = new_id if new_id is not None else (max(g.vertex_ids) + 1 if len(g) else 1)
    if w in g:
        raise ValueError(f"vertex id {w} already in use")
    weights = g.weights
    weights[w] = -1
    return DualGraph(weights, g.edges, g.c)


def _is_path(g: DualGraph) -> list[int] | None:
    """Vertex ids in path order if g is a nonempty simple path, else None."""
    n = len(g)
    if n == 0 or len(g.edges) != n - 1:
        return None
    adj = g.adjacency
    degs = [len(adj[v]) for v in g.vertex_ids]
    if n == 1:
        return [g.vertex_ids[0]]
    if max(degs) > 2 or degs.count(1) != 2:
        return None
    start = min(v for v in g.vertex_ids if len(adj[v]) == 1)
    order = [start]
    prev = None
    cur = start
    while len(order) < n:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            return None  # disconnected: a path piece plus something else
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def _contract_all_path(ids: list[int], ws: list[int]) -> tuple[list[int], list[int]]:
    """contract_all specialised to a path kept as parallel id/weight lists."""
    while len(ids) > 2:
        best = None
        for i, w in enumerate(ws):
            if w == -1 and (best is None or ids[i] < ids[best]):
                best = i
        if best is None:
            break
        # interior neighbors on a path of >= 3 vertices are never adjacent
        if best > 0:
            ws[best - 1] += 1
        if best < len(ids) - 1:
            ws[best + 1] += 1
        del ids[best]
        del ws[best]
    return ids, ws


def contract_all(g: DualGraph, _pick=min) -> DualGraph:
    """Blow down (-1)-vertices repeatedly until none is eligible.

    A vertex is eligible when it weighs -1, has degree <= 2, its neighbors
    are not already adjacent, and the graph still has at least 3 vertices;
    graphs with 2 or fewer vertices are terminal as they stand.  The
    smallest-id eligible vertex is contracted first.  If some vertex weighs
    -1 with degree <= 2 but every such vertex has adjacent neighbors, the
    contraction is stuck on a cycle and WouldCreateCycle is raised.

    _pick chooses among eligible ids (default min); it exists so tests can
    probe order (in)dependence and is not part of the public surface.
    """
    if _pick is min and len(g) > 2:
        path = _is_path(g)
        if path is not None:
            ws = [g.weight(v) for v in path]
            ids, ws = _contract_all_path(list(path), ws)
            weights = dict(zip(ids, ws))
            edges = [
                (a, b) if a < b else (b, a) for a, b in zip(ids, ids[1:])
            ]
            c = g.c if g.c in weights else None
            return DualGraph(weights, edges, c)
    weights = g.weights
    adj: dict[int, set[int]] = {v: set() for v in weights}
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    c = g.c
    while len(weights) > 2:
        candidates = [
            v for v, w in sorted(weights.items()) if w == -1 and len(adj[v]) <= 2
        ]
        eligible = [
            v
            for v in candidates
            if len(adj[v]) < 2 or not _neighbors_adjacent(adj, v)
        ]
        if not eligible:
            if candidates:
                raise WouldCreateCycle(
                    f"every contractible (-1)-vertex (e.g. {candidates[0]}) "
                    "has adjacent neighbors"
                )
            break
        v = _pick(eligible)
        nbrs = sorted(adj[v])
        for u in nbrs:
            weights[u] += 1
            adj[u].discard(v)
        if len(nbrs) == 2:
            adj[nbrs[0]].add(nbrs[1])
            adj[nbrs[1]].add(nbrs[0])
        del weights[v]
        del adj[v]
        if c == v:
            c = None
    edges = sorted(
        (u, v) for u, nbs in adj.items() for v in nbs if u < v
    )
    return DualGraph(weights, edges, c)


def _neighbors_adjacent(adj: dict[int, set[int]], v: int) -> bool:
    a, b = adj[v]
    return b in adj[a]


# -- shape reports -----------------------------------------------------------


@dataclass(frozen=True)
class ComponentShape:
    """One connected component of the graph with the C-vertex removed."""

    vertices: tuple[int, ...]
    kind: str  # "chain" | "star" | "general"
    branch_vertices: tuple[int, ...]
    touches_c: bool
    c_contacts: tuple[int, ...]

    @property
    def branch_count(self) -> int:
        return len(self.branch_vertices)


@dataclass(frozen=True)
class ShapeReport:
    is_tree: bool
    c_id: int | None
    c_degree: int | None
    components: tuple[ComponentShape, ...]


def shape_report(g: DualGraph) -> ShapeReport:
    """Describe g minus its C-vertex: components, chain/star kinds, contacts."""
    tree = is_tree(g)
    if g.c is None:
        rest = g
        c_nbrs: tuple[int, ...] = ()
        c_deg = None
    else:
        rest = g.delete(g.c)
        c_nbrs = g.neighbors(g.c)
        c_deg = g.degree(g.c)
    adj = rest.adjacency
    comps = []
    for comp in _components(rest):
        cset = set(comp)
        branch = tuple(v for v in comp if len(adj[v]) >= 3)
        edges_inside = sum(len(adj[v]) for v in comp) // 2
        acyclic = edges_inside == len(comp) - 1
        if not acyclic or len(branch) >= 2:
            kind = "general"
        elif len(branch) == 1:
            kind = "star"
        else:
            kind = "chain"
        contacts = tuple(v for v in c_nbrs if v in cset)
        comps.append(
            ComponentShape(
                vertices=tuple(comp),
                kind=kind,
                branch_vertices=branch,
                touches_c=bool(contacts),
                c_contacts=contacts,
            )
        )
    return ShapeReport(
        is_tree=tree,
        c_id=g.c,
        c_degree=c_deg,
        components=tuple(comps),
    )


# -- isomorphism of weighted marked forests ----------------------------------


def _component_centers(adj: dict[int, list[int]], comp: list[int]) -> list[int]:
    """The 1 or 2 tree centers, by iterative leaf peeling."""
    if len(comp) == 1:
        return [comp[0]]
    deg = {v: len(adj[v]) for v in comp}
    layer = [v for v in comp if deg[v] <= 1]
    remaining = len(comp)
    inner = dict(deg)
    current = layer
    while remaining > 2:
        remaining -= len(current)
        nxt = []
        for v in current:
            for u in adj[v]:
                inner[u] -= 1
                if inner[u] == 1:
                    nxt.append(u)
        current = nxt
    return sorted(current)


def _rooted_code(g: DualGraph, root: int) -> tuple:
    adj = g.adjacency
    order = [root]
    parent: dict[int, int | None] = {root: None}
    stack = [root]
    while stack:
        u = stack.pop()
        for nb in adj[u]:
            if nb != parent[u]:
                parent[nb] = u
                order.append(nb)
                stack.append(nb)
    code: dict[int, tuple] = {}
    for v in reversed(order):
        kids = sorted(
            code[nb] for nb in adj[v] if nb != parent[v]
        )
        code[v] = (g.weight(v), g.c == v, tuple(kids))
    return code[root]


def canonical_form(g: DualGraph) -> tuple:
    """Order-independent encoding of a weighted marked forest.

    Two forests are isomorphic (respecting weights and the C mark) iff their
    canonical forms are equal.  Raises DomainError on graphs with cycles.
    """
    if not is_forest(g):
        raise DomainError("canonical form is only defined for forests")
    codes = []
    for comp in _components(g):
        centers = _component_centers(g.adjacency, comp)
        codes.append(min(_rooted_code(g, c) for c in centers))
    return tuple(sorted(codes))


def isomorphic(g1: DualGraph, g2: DualGraph) -> bool:
    return canonical_form(g1) == canonical_form(g2)
