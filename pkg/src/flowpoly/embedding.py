"""Plane embeddings via rotation systems and the plane dual.

An arc has two ends: its tail end (written "e+") and its head end ("e-").
A rotation system lists, for every vertex, the cyclic counterclockwise
order of the ends meeting it; a loop contributes both of its ends. Faces
are the orbits of the tracing rule

    next(end) = rotation successor of the twin end at its vertex,

under which the orbit of an end is the face on the *right* of the walk
along that end's direction. The dual arc of e runs from the face on e's
left to the face on its right; primal arc ids are reused for their duals,
so the arc bijection is the identity on ids.

Face tracing works for any rotation system; planarity is enforced by the
Euler count |F| = |E| - |V| + 2 on connected input, and anything else is
rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import EmbeddingError
from .graphs import Arc, Digraph, kappa


class End(NamedTuple):
    arc: str
    at_tail: bool

    def __str__(self) -> str:
        return f"{self.arc}{'+' if self.at_tail else '-'}"


@dataclass(frozen=True)
class RotationSystem:
    """Counterclockwise cyclic order of arc ends at each vertex."""

    orders: dict[str, tuple[End, ...]]

    def validate(self, g: Digraph) -> None:
        expected: dict[End, str] = {}
        for a in g.arcs:
            expected[End(a.id, True)] = a.tail
            expected[End(a.id, False)] = a.head
        seen: set[End] = set()
        for v, order in self.orders.items():
            if v not in g.vertices:
                raise EmbeddingError(f"rotation lists unknown vertex {v!r}")
            for end in order:
                if end not in expected:
                    raise EmbeddingError(f"unknown arc end {end}")
                if expected[end] != v:
                    raise EmbeddingError(
                        f"arc end {end} listed at {v!r} but belongs to "
                        f"{expected[end]!r}"
                    )
                if end in seen:
                    raise EmbeddingError(f"arc end {end} listed twice")
                seen.add(end)
        missing = set(expected) - seen
        if missing:
            names = ", ".join(str(e) for e in sorted(missing))
            raise EmbeddingError(f"arc ends not covered by the rotation: {names}")

    def successor(self, vertex: str, end: End) -> End:
        order = self.orders[vertex]
        i = order.index(end)
        return order[(i + 1) % len(order)]


@dataclass(frozen=True)
class PlaneDual:
    dual: Digraph
    rotation: RotationSystem  # induced rotation of the dual
    arc_map: dict[str, str]  # primal arc id -> dual arc id (identity)
    faces: dict[str, tuple[End, ...]]  # face vertex id -> traversal orbit


def _twin(end: End) -> End:
    return End(end.arc, not end.at_tail)


def trace_faces(g: Digraph, rot: RotationSystem) -> dict[str, tuple[End, ...]]:
    """Orbits of the face-tracing rule, discovered in canonical end order
    and named f0, f1, ... in discovery order."""
    rot.validate(g)
    vertex_of: dict[End, str] = {}
    for a in g.arcs:
        vertex_of[End(a.id, True)] = a.tail
        vertex_of[End(a.id, False)] = a.head
    all_ends = sorted(vertex_of, key=lambda e: (e.arc, not e.at_tail))
    assigned: set[End] = set()
    faces: dict[str, tuple[End, ...]] = {}
    for start in all_ends:
        if start in assigned:
            continue
        orbit = []
        end = start
        while True:
            orbit.append(end)
            assigned.add(end)
            twin = _twin(end)
            end = rot.successor(vertex_of[twin], twin)
            if end == start:
                break
            if end in assigned:
                raise EmbeddingError("face tracing revisited an end; bad rotation")
        faces[f"f{len(faces)}"] = tuple(orbit)
    return faces


def plane_dual(g: Digraph, rot: RotationSystem) -> PlaneDual:
    """The plane dual digraph under the left-to-right convention.

    Requires a connected primal; the Euler count is asserted so a rotation
    of positive genus is rejected rather than silently mis-dualized.
    """
    if kappa(g) != 1:
        raise EmbeddingError("plane duality requires a connected graph")
    faces = trace_faces(g, rot)
    expected = len(g.arcs) - len(g.vertices) + 2
    if len(faces) != expected:
        raise EmbeddingError(
            f"face count {len(faces)} differs from Euler count {expected}; "
            "the rotation system is not a plane embedding"
        )
    face_of: dict[End, str] = {}
    for fid, orbit in faces.items():
        for end in orbit:
            face_of[end] = fid
    # the orbit of e's head end is the face left of e, of its tail end the
    # face on the right; the dual arc runs left to right
    dual_arcs = tuple(
        Arc(a.id, face_of[End(a.id, False)], face_of[End(a.id, True)])
        for a in g.arcs
    )
    dual = Digraph(frozenset(faces), dual_arcs)

    orders: dict[str, tuple[End, ...]] = {}
    for fid, orbit in faces.items():
        dual_ends = []
        for end in orbit:
            # crossing the primal arc: this face is the dual tail exactly
            # when it sits left of the arc, i.e. when the orbit end is the
            # head end
            dual_ends.append(End(end.arc, at_tail=not end.at_tail))
        orders[fid] = tuple(dual_ends)
    rotation = RotationSystem(orders)
    return PlaneDual(
        dual=dual,
        rotation=rotation,
        arc_map={a.id: a.id for a in g.arcs},
        faces=faces,
    )
