"""Z_p valued arc maps: flows, tensions, parity, conformal counting.

A p-flow conserves (in minus out) at every vertex; a dual p-flow (tension)
sums to zero around every circuit, equivalently comes from vertex
potentials on each component. Parity of a map counts the arcs carrying the
maximal label p-1. All enumerations are deterministic: free slots are
ordered by ascending id and assignments run lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import (
    BoundExceeded,
    DEFAULT_STATE_BOUND,
    DEFAULT_TERM_BOUND,
    PreconditionError,
)
from .graphs import (
    Circuit,
    Digraph,
    UndirectedGraph,
    circuits,
    connected_components,
    cyclomatic_number,
    kappa,
)


@dataclass(frozen=True)
class ZpMap:
    """A total assignment of Z_p values to the arcs of some digraph."""

    p: int
    values: dict[str, int]

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be >= 2")
        for k, v in self.values.items():
            if not 0 <= v < self.p:
                raise ValueError(f"value {v} for {k!r} not in 0..{self.p - 1}")
        object.__setattr__(self, "values", dict(self.values))

    def __getitem__(self, arc_id: str) -> int:
        return self.values[arc_id]

    @property
    def is_nowhere_zero(self) -> bool:
        return all(v != 0 for v in self.values.values())

    @property
    def avoids_max(self) -> bool:
        """True when no arc carries the maximal label p-1."""
        return all(v != self.p - 1 for v in self.values.values())

    def as_tuple(self, arc_order) -> tuple[int, ...]:
        return tuple(self.values[a] for a in arc_order)

    @classmethod
    def from_tuple(cls, p: int, arc_order, values) -> "ZpMap":
        return cls(p, dict(zip(arc_order, values)))

    def check_domain(self, g: Digraph):
        if set(self.values) != set(g.arc_by_id):
            raise ValueError("map domain does not match the graph's arc set")


@dataclass(frozen=True)
class ConformalCount:
    even: int
    odd: int

    @property
    def coefficient(self) -> int:
        return self.even - self.odd


def surplus(g: Digraph, phi: ZpMap) -> dict[str, int]:
    """Flow surplus per vertex: sum over in-arcs minus sum over out-arcs,
    mod p. Loops cancel themselves."""
    phi.check_domain(g)
    s = {}
    for v in g.vertices:
        total = 0
        for a in g.in_arcs(v):
            total += phi[a.id]
        for a in g.out_arcs(v):
            total -= phi[a.id]
        s[v] = total % phi.p
    return s


def is_flow(g: Digraph, phi: ZpMap) -> bool:
    return all(v == 0 for v in surplus(g, phi).values())


def _potentials_from(g: Digraph, phi: ZpMap) -> dict[str, int]:
    """Propagate vertex potentials along a spanning forest, roots at 0."""
    p = phi.p
    omega: dict[str, int] = {}
    neighbours: dict[str, list[tuple[str, str, int]]] = {v: [] for v in g.vertices}
    for a in sorted(g.arcs, key=lambda a: a.id):
        if not a.is_loop:
            neighbours[a.tail].append((a.head, a.id, +1))
            neighbours[a.head].append((a.tail, a.id, -1))
    for comp in connected_components(g):
        root = comp[0]
        omega[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w, aid, sign in neighbours[v]:
                if w not in omega:
                    omega[w] = (omega[v] + sign * phi[aid]) % p
                    stack.append(w)
    return omega


def is_dual_flow(g: Digraph, phi: ZpMap, debug: bool = False) -> bool:
    """Tension test via potential propagation.

    With debug=True and at most 12 arcs, the circuit-sum definition is also
    evaluated and must agree.
    """
    phi.check_domain(g)
    p = phi.p
    omega = _potentials_from(g, phi)
    ok = all((omega[a.head] - omega[a.tail]) % p == phi[a.id] for a in g.arcs)
    if debug and len(g.arcs) <= 12:
        by_circuits = all(
            _circuit_sum(phi, c) % p == 0 for c in circuits(g)
        )
        if by_circuits != ok:
            raise AssertionError(
                "potential and circuit tension tests disagree; this is a bug"
            )
    return ok


def _circuit_sum(phi: ZpMap, circ: Circuit) -> int:
    return sum(phi[eid] if fwd else -phi[eid] for eid, fwd in circ.steps)


def _check_states(count: int, max_states: int | None) -> None:
    bound = DEFAULT_STATE_BOUND if max_states is None else max_states
    if count > bound:
        raise BoundExceeded(f"{count} states exceed the bound {bound}")


def enumerate_flows(g: Digraph, p: int, max_states: int | None = None) -> list[ZpMap]:
    """All p^(|E|-|V|+kappa) flows: free values on non-forest arcs, forest
    arcs solved bottom-up. Deterministic lexicographic order."""
    if p < 2:
        raise ValueError("p must be >= 2")
    _check_states(p ** cyclomatic_number(g), max_states)

    # BFS spanning forest; record parent arcs and a leaves-up vertex order
    parent_arc: dict[str, str] = {}
    order: list[str] = []
    visited: set[str] = set()
    neighbours: dict[str, list[tuple[str, str]]] = {v: [] for v in g.vertices}
    for a in sorted(g.arcs, key=lambda a: a.id):
        if not a.is_loop:
            neighbours[a.tail].append((a.head, a.id))
            neighbours[a.head].append((a.tail, a.id))
    for comp in connected_components(g):
        root = comp[0]
        visited.add(root)
        queue = [root]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w, aid in neighbours[v]:
                if w not in visited:
                    visited.add(w)
                    parent_arc[w] = aid
                    queue.append(w)

    forest_ids = set(parent_arc.values())
    free_ids = [a for a in g.sorted_arc_ids if a not in forest_ids]
    solve_order = [v for v in reversed(order) if v in parent_arc]

    out = []
    for assignment in product(range(p), repeat=len(free_ids)):
        values = dict(zip(free_ids, assignment))
        for v in solve_order:
            aid = parent_arc[v]
            arc = g.arc_by_id[aid]
            total = 0
            for b in g.in_arcs(v):
                if b.id != aid and not b.is_loop:
                    total += values[b.id]
            for b in g.out_arcs(v):
                if b.id != aid and not b.is_loop:
                    total -= values[b.id]
            # conservation at v: phi(parent) enters with sign +1 when v is
            # its head, -1 when v is its tail
            values[aid] = (-total) % p if arc.head == v else total % p
        out.append(ZpMap(p, values))
    return out


def enumerate_dual_flows(g: Digraph, p: int, max_states: int | None = None) -> list[ZpMap]:
    """All p^(|V|-kappa) tensions, via potentials with component roots
    pinned to zero. Deterministic lexicographic order over free vertices."""
    if p < 2:
        raise ValueError("p must be >= 2")
    comps = connected_components(g)
    free_vertices = sorted(v for comp in comps for v in comp[1:])
    _check_states(p ** len(free_vertices), max_states)
    roots = {comp[0] for comp in comps}
    out = []
    for assignment in product(range(p), repeat=len(free_vertices)):
        omega = dict(zip(free_vertices, assignment))
        for r in roots:
            omega[r] = 0
        values = {
            a.id: (omega[a.head] - omega[a.tail]) % p for a in g.arcs
        }
        out.append(ZpMap(p, values))
    return out


def parity(phi: ZpMap) -> str:
    """"even" or "odd" according to the count of arcs at the label p-1."""
    n = sum(1 for v in phi.values.values() if v == phi.p - 1)
    return "even" if n % 2 == 0 else "odd"


def is_conformal(phi: ZpMap, psi: ZpMap) -> bool:
    """phi(e) in {psi(e), p-1} everywhere; psi must avoid p-1."""
    if phi.p != psi.p:
        raise ValueError("mixed moduli")
    if not psi.avoids_max:
        raise ValueError("psi must avoid the maximal label p-1")
    if set(phi.values) != set(psi.values):
        raise ValueError("phi and psi live on different arc sets")
    top = phi.p - 1
    return all(
        phi.values[a] in (psi.values[a], top) for a in phi.values
    )


def _count_by_subsets(g: Digraph, psi: ZpMap, predicate, max_states) -> ConformalCount:
    ids = g.sorted_arc_ids
    _check_states(2 ** len(ids), max_states)
    top = psi.p - 1
    even = odd = 0
    for mask in product((False, True), repeat=len(ids)):
        values = {
            a: (top if hot else psi.values[a]) for a, hot in zip(ids, mask)
        }
        phi = ZpMap(psi.p, values)
        if predicate(g, phi):
            if sum(mask) % 2 == 0:
                even += 1
            else:
                odd += 1
    return ConformalCount(even, odd)


def _count_by_enumeration(g: Digraph, psi: ZpMap, enumerate_maps, max_states) -> ConformalCount:
    even = odd = 0
    for phi in enumerate_maps(g, psi.p, max_states):
        if is_conformal(phi, psi):
            if parity(phi) == "even":
                even += 1
            else:
                odd += 1
    return ConformalCount(even, odd)


def count_conformal_dual_flows(
    g: Digraph, psi: ZpMap, p: int, method: str = "auto", max_states: int | None = None
) -> ConformalCount:
    """Counts of even and odd psi-conformal dual p-flows.

    method: "subset" tries all 2^|E| ways of raising arcs to p-1,
    "tension" filters the full tension enumeration, "auto" picks the
    cheaper. The two must agree; tests quantify over both.
    """
    _check_psi(g, psi, p)
    if method == "auto":
        method = (
            "subset"
            if 2 ** len(g.arcs) < p ** (len(g.vertices) - kappa(g))
            else "tension"
        )
    if method == "subset":
        return _count_by_subsets(g, psi, is_dual_flow, max_states)
    if method == "tension":
        return _count_by_enumeration(g, psi, enumerate_dual_flows, max_states)
    raise ValueError(f"unknown method {method!r}")


def count_conformal_flows(
    g: Digraph, psi: ZpMap, p: int, method: str = "auto", max_states: int | None = None
) -> ConformalCount:
    """Counts of even and odd psi-conformal p-flows (not dual)."""
    _check_psi(g, psi, p)
    if method == "auto":
        method = (
            "subset" if 2 ** len(g.arcs) < p ** cyclomatic_number(g) else "flow"
        )
    if method == "subset":
        return _count_by_subsets(g, psi, is_flow, max_states)
    if method == "flow":
        return _count_by_enumeration(g, psi, enumerate_flows, max_states)
    raise ValueError(f"unknown method {method!r}")


def _check_psi(g: Digraph, psi: ZpMap, p: int):
    if psi.p != p:
        raise ValueError("psi modulus does not match p")
    psi.check_domain(g)
    if not psi.avoids_max:
        raise ValueError("psi must avoid the maximal label p-1")


def _tension_tuples(g: Digraph, p: int, ids: tuple[str, ...], max_states):
    """Yield tension value tuples aligned with `ids`, without building
    ZpMap objects; same order as enumerate_dual_flows."""
    comps = connected_components(g)
    free_vertices = sorted(v for comp in comps for v in comp[1:])
    _check_states(p ** len(free_vertices), max_states)
    vindex = {v: i for i, v in enumerate(free_vertices)}
    roots = {comp[0] for comp in comps}
    arc_slots = []
    for a in ids:
        arc = g.arc_by_id[a]
        arc_slots.append(
            (
                vindex.get(arc.head, -1),
                vindex.get(arc.tail, -1),
            )
        )
    for assignment in product(range(p), repeat=len(free_vertices)):
        yield tuple(
            ((assignment[h] if h >= 0 else 0) - (assignment[t] if t >= 0 else 0))
            % p
            for h, t in arc_slots
        )


def _flow_tuples(g: Digraph, p: int, ids: tuple[str, ...], max_states):
    for phi in enumerate_flows(g, p, max_states):
        yield tuple(phi.values[a] for a in ids)


def _aggregate_conformal(tuples, p: int, n_arcs: int, max_work: int | None):
    """Signed distribution of maps over their conformal psi keys.

    Each map adds (-1)^|hot| to every psi agreeing with it off its p-1
    arcs; keys are integers in base p-1 and decoded at the end.
    """
    bound = DEFAULT_TERM_BOUND if max_work is None else max_work
    base = p - 1
    weights = [base**i for i in range(n_arcs)]
    acc: dict[int, int] = {}
    work = 0
    for values in tuples:
        key0 = 0
        hot_weights = []
        for v, w in zip(values, weights):
            if v == base:
                hot_weights.append(w)
            else:
                key0 += v * w
        work += base ** len(hot_weights)
        if work > bound:
            raise BoundExceeded(f"conformal aggregation exceeds {bound} steps")
        offsets = [key0]
        for w in hot_weights:
            offsets = [o + d * w for o in offsets for d in range(base)]
        sign = -1 if len(hot_weights) % 2 else 1
        for key in offsets:
            s = acc.get(key, 0) + sign
            if s:
                acc[key] = s
            else:
                del acc[key]
    table: dict[tuple[int, ...], int] = {}
    for key, c in acc.items():
        digits = []
        for _ in range(n_arcs):
            key, d = divmod(key, base)
            digits.append(d)
        table[tuple(digits)] = c
    return table


def coefficient_table(
    g: Digraph, p: int, max_states: int | None = None
) -> dict[tuple[int, ...], int]:
    """c(psi) for every psi with a nonzero value, keyed by the psi value
    tuple over g.sorted_arc_ids.

    Every tension contributes its sign to each psi that agrees with it off
    the arcs carrying p-1 (those arcs range freely over 0..p-2).
    """
    if p == 2:
        # base p-1 = 1: every psi key is the zero tuple
        even = odd = 0
        for values in _tension_tuples(g, 2, g.sorted_arc_ids, max_states):
            if sum(1 for v in values if v == 1) % 2 == 0:
                even += 1
            else:
                odd += 1
        c = even - odd
        return {(0,) * len(g.arcs): c} if c else {}
    ids = g.sorted_arc_ids
    return _aggregate_conformal(
        _tension_tuples(g, p, ids, max_states), p, len(ids), max_states
    )


def flow_conformal_table(
    g: Digraph, p: int, max_states: int | None = None
) -> dict[tuple[int, ...], int]:
    """Like coefficient_table but aggregated over flows instead of
    tensions; used by the plane-duality report."""
    ids = g.sorted_arc_ids
    if p == 2:
        even = odd = 0
        for values in _flow_tuples(g, 2, ids, max_states):
            if sum(1 for v in values if v == 1) % 2 == 0:
                even += 1
            else:
                odd += 1
        c = even - odd
        return {(0,) * len(ids): c} if c else {}
    return _aggregate_conformal(
        _flow_tuples(g, p, ids, max_states), p, len(ids), max_states
    )


def find_nz_flow(g: Digraph, p: int, max_states: int | None = None) -> ZpMap | None:
    """Brute-force witness search over the whole flow space."""
    for phi in enumerate_flows(g, p, max_states):
        if phi.is_nowhere_zero:
            return phi
    return None


def has_nz_flow_brute(g: Digraph, p: int, max_states: int | None = None) -> bool:
    return find_nz_flow(g, p, max_states) is not None


def has_nz_flow_conformal(g: Digraph, p: int, max_states: int | None = None) -> bool:
    """Existence via conformal parity: some psi must have an even/odd
    imbalance among its conformal tensions."""
    return any(c != 0 for c in coefficient_table(g, p, max_states).values())


def coloring_from_dual_flow(g: Digraph, phi: ZpMap) -> dict[str, int]:
    """Vertex potentials of a nowhere-zero tension form a proper coloring.

    Roots get 0 and omega(head) - omega(tail) = phi(e) holds on every arc.
    """
    phi.check_domain(g)
    if not phi.is_nowhere_zero:
        raise PreconditionError("the map has a zero arc")
    if not is_dual_flow(g, phi):
        raise PreconditionError("the map is not a dual flow")
    return _potentials_from(g, phi)


def is_p_colorable(g: UndirectedGraph, p: int, max_states: int | None = None) -> bool:
    """Exhaustive proper-coloring search (backtracking over sorted
    vertices). Loops make a graph uncolorable."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if any(e.is_loop for e in g.edges):
        return False
    _check_states(p ** len(g.vertices), max_states)
    verts = g.sorted_vertices
    adj = g.simple_adjacency()
    color: dict[str, int] = {}

    def extend(i: int) -> bool:
        if i == len(verts):
            return True
        v = verts[i]
        for c in range(p):
            if all(color.get(w) != c for w in adj[v]):
                color[v] = c
                if extend(i + 1):
                    return True
                del color[v]
        return False

    return extend(0)
