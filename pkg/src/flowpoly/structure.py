"""Constructive structural checks built on the flow machinery.

chordal_orientation realizes the inductive orientation of a bridgeless
chordal graph: repeatedly pick a circuit of size at most three, orient it
as a directed cycle, contract it, and recurse; the certificate records
every step and is replayed before it is returned. Its defining property,
that the zero map is the only 0-conformal dual four-flow, is checked by
exhaustive enumeration rather than trusted.

check_planar_duality ties nowhere-zero flow existence of an embedded
digraph to conformal flow counts on its plane dual and also verifies the
underlying value bijection between tensions of the primal and flows of
the dual, which is what validates the left-to-right dual convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import PlaneDual, RotationSystem, plane_dual
from .errors import PreconditionError, VerificationError
from .flows import (
    ZpMap,
    coloring_from_dual_flow,
    count_conformal_flows,
    enumerate_dual_flows,
    enumerate_flows,
    flow_conformal_table,
    is_p_colorable,
)
from .graphs import (
    Circuit,
    Digraph,
    UndirectedGraph,
    contract,
    find_small_circuit,
    is_bridgeless,
    is_chordal,
    orient,
)
from .quotient import has_nz_flow_membership


@dataclass(frozen=True)
class OrientationStep:
    """One induction step: the chosen circuit and its directed cycle,
    as (edge id, keep stored endpoint order) flags."""

    circuit: tuple[str, ...]
    directions: tuple[tuple[str, bool], ...]


@dataclass(frozen=True)
class OrientationCertificate:
    digraph: Digraph
    steps: tuple[OrientationStep, ...]
    verified: bool

    def as_dict(self) -> dict:
        return {
            "steps": [
                {
                    "circuit": list(s.circuit),
                    "orientation": [
                        (eid if keep else f"-{eid}")
                        for eid, keep in s.directions
                    ],
                }
                for s in self.steps
            ],
            "orientation": {
                a.id: [a.tail, a.head] for a in self.digraph.arcs
            },
            "verified": self.verified,
        }


def _directed_cycle_flags(g: UndirectedGraph, circ: Circuit) -> tuple[tuple[str, bool], ...]:
    """Deterministic directed-cycle orientation of a circuit of size <= 3.

    Loops stay as stored; in a parallel pair the smaller edge id keeps its
    stored order and the other opposes it; triangles are traversed by
    ascending vertex id.
    """
    ids = sorted(circ.edge_ids)
    if len(ids) == 1:
        return ((ids[0], True),)
    if len(ids) == 2:
        e1 = g.edge_by_id[ids[0]]
        e2 = g.edge_by_id[ids[1]]
        # oppose e2 to e1: e1 runs u -> v, so e2 must run v -> u
        keep2 = (e2.u, e2.v) == (e1.v, e1.u)
        return ((e1.id, True), (e2.id, keep2))
    verts = sorted({w for eid in ids for w in g.edge_by_id[eid].ends()})
    u, v, w = verts
    flags = []
    for a, b in ((u, v), (v, w), (w, u)):
        eid = next(
            e
            for e in ids
            if set(g.edge_by_id[e].ends()) == {a, b}
        )
        e = g.edge_by_id[eid]
        flags.append((eid, (e.u, e.v) == (a, b)))
    return tuple(flags)


def chordal_orientation(g: UndirectedGraph) -> OrientationCertificate:
    """Orient a bridgeless chordal graph so that the zero map is its only
    0-conformal dual four-flow; certificate carries the contraction trace.
    """
    if not is_bridgeless(g):
        raise PreconditionError("graph has a bridge")
    if not is_chordal(g):
        raise PreconditionError("graph is not chordal")

    steps: list[OrientationStep] = []
    flags: dict[str, bool] = {}
    current = g
    while current.edges:
        circ = find_small_circuit(current)
        if circ is None:
            raise PreconditionError(
                "no circuit of size <= 3 in a nonempty contraction; "
                "the inductive assumption failed for the graph with edges "
                f"{current.sorted_edge_ids}"
            )
        directions = _directed_cycle_flags(current, circ)
        steps.append(OrientationStep(tuple(sorted(circ.edge_ids)), directions))
        for eid, keep in directions:
            flags[eid] = keep
        current = contract(current, circ.edge_ids)

    choice = {}
    for e in g.edges:
        if flags[e.id]:
            choice[e.id] = (e.u, e.v)
        else:
            choice[e.id] = (e.v, e.u)
    oriented = orient(g, choice)
    verified = _replay_trace(g, steps, oriented)
    return OrientationCertificate(oriented, tuple(steps), verified)


def _replay_trace(
    g: UndirectedGraph, steps: list[OrientationStep], oriented: Digraph
) -> bool:
    current = g
    seen: set[str] = set()
    for step in steps:
        ids = set(step.circuit)
        if ids & seen or not ids <= set(current.edge_by_id):
            return False
        circ = find_small_circuit(current)
        if circ is None or set(circ.edge_ids) != ids:
            return False
        seen |= ids
        current = contract(current, ids)
        for eid, keep in step.directions:
            e = g.edge_by_id[eid]
            arc = oriented.arc_by_id[eid]
            expected = (e.u, e.v) if keep else (e.v, e.u)
            if (arc.tail, arc.head) != expected:
                return False
    return not current.edges and seen == set(g.edge_by_id)


def verify_unique_zero_conformal(d: Digraph, max_states: int | None = None) -> bool:
    """True when the zero map is the only dual 4-flow valued in {0, 3}."""
    for phi in enumerate_dual_flows(d, 4, max_states):
        values = set(phi.values.values())
        if values <= {0, 3} and 3 in values:
            return False
    return True


@dataclass(frozen=True)
class PlanarReport:
    p: int
    nz_flow: bool
    dual_witness_psi: dict[str, int] | None
    counts: dict[str, int] | None
    agrees: bool
    bijection_ok: bool
    dual: PlaneDual

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "nz_flow": self.nz_flow,
            "dual_witness_psi": self.dual_witness_psi,
            "counts": self.counts,
            "agrees": self.agrees,
            "bijection_ok": self.bijection_ok,
        }


def check_planar_duality(
    g: Digraph,
    rot: RotationSystem,
    p: int,
    max_states: int | None = None,
    max_terms: int | None = None,
) -> PlanarReport:
    """Cross-check flow existence against conformal counts on the dual.

    Computes (a) nowhere-zero p-flow existence of g by the membership
    route and (b) existence of a nowhere-(p-1) map psi on the dual whose
    even and odd conformal flow counts differ; reports whether they agree.
    Also checks that tensions of g and flows of the dual coincide as value
    tuples under the identity arc bijection.
    """
    result = plane_dual(g, rot)
    dual = result.dual

    nz = has_nz_flow_membership(g, p, max_terms)

    ids = dual.sorted_arc_ids
    table = flow_conformal_table(dual, p, max_states)
    witness_key = None
    for key in sorted(table):
        if table[key] != 0:
            witness_key = key
            break
    if witness_key is not None:
        psi = ZpMap.from_tuple(p, ids, witness_key)
        counts = count_conformal_flows(dual, psi, p, max_states=max_states)
        witness = dict(psi.values)
        counts_dict = {"even": counts.even, "odd": counts.odd}
        dual_route = counts.even != counts.odd
        if not dual_route:
            raise VerificationError(
                "table reported an imbalance the direct count does not see"
            )
    else:
        witness = None
        counts_dict = None
        dual_route = False

    tensions = {
        tuple(m.values[a] for a in ids)
        for m in enumerate_dual_flows(g, p, max_states)
    }
    dual_flows = {
        tuple(m.values[a] for a in ids)
        for m in enumerate_flows(dual, p, max_states)
    }
    bijection_ok = tensions == dual_flows

    return PlanarReport(
        p=p,
        nz_flow=nz,
        dual_witness_psi=witness,
        counts=counts_dict,
        agrees=(nz == dual_route),
        bijection_ok=bijection_ok,
        dual=result,
    )


@dataclass(frozen=True)
class ColoringReport:
    p: int
    colorable: bool
    dually_flowing: bool
    agrees: bool
    coloring: dict[str, int] | None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "colorable": self.colorable,
            "dually_flowing": self.dually_flowing,
            "agrees": self.agrees,
            "coloring": self.coloring,
        }


def check_coloring_correspondence(
    g: UndirectedGraph, p: int, max_states: int | None = None
) -> ColoringReport:
    """Colorability against nowhere-zero tension existence on one fixed
    orientation (reorienting only negates arc values, so existence does
    not depend on the choice). On success the tension is turned into a
    coloring, which is checked to be proper."""
    from .flows import _tension_tuples

    colorable = is_p_colorable(g, p, max_states)
    d = orient(g)
    ids = d.sorted_arc_ids
    witness = None
    for values in _tension_tuples(d, p, ids, max_states):
        if all(values):
            witness = ZpMap.from_tuple(p, ids, values)
            break
    flowing = witness is not None
    coloring = None
    if witness is not None:
        coloring = coloring_from_dual_flow(d, witness)
        for e in g.edges:
            if not e.is_loop and coloring[e.u] == coloring[e.v]:
                raise VerificationError(
                    "constructed coloring is not proper; this is a bug"
                )
    return ColoringReport(
        p=p,
        colorable=colorable,
        dually_flowing=flowing,
        agrees=(colorable == flowing),
        coloring=coloring,
    )
