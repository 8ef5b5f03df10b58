"""The per-arc ideal, its normal form, and the flow polynomial.

The ideal is generated by 1 + x_e + ... + x_e^(p-1), one generator per
arc. Modulo it, every polynomial has a unique representative supported on
monomials with all exponents at most p-2 (the basic monomials); a power
x^r with r = exponent mod p reduces to x^r when r <= p-2 and to
-(1 + x + ... + x^(p-2)) when r = p-1. Everything is exact over the
integers; the quotient's complex structure is never needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .cyclotomic import CyclotomicInt, cyclotomic_eval
from .errors import BoundExceeded, DEFAULT_TERM_BOUND, PreconditionError
from .flows import ZpMap, coefficient_table, is_flow
from .graphs import Digraph, kappa
from .polynomials import Mono, Poly, mono_mul


@dataclass(frozen=True)
class QuotientPoly:
    """A normal-form representative: exponents per arc lie in 0..p-2."""

    p: int
    arcs: tuple[str, ...]
    poly: Poly

    def __post_init__(self):
        universe = set(self.arcs)
        for mono, _ in self.poly.items():
            for var, exp in mono:
                if var not in universe:
                    raise ValueError(f"variable {var!r} outside the arc universe")
                if not 0 < exp <= self.p - 2:
                    raise ValueError(
                        f"exponent {exp} of {var!r} not in 1..{self.p - 2}"
                    )

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def coefficient(self, psi: dict[str, int]) -> int:
        return self.poly.coefficient(psi)

    def scaled(self, c: int) -> "QuotientPoly":
        return QuotientPoly(self.p, self.arcs, self.poly * c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuotientPoly):
            return NotImplemented
        return self.p == other.p and self.poly == other.poly

    def __hash__(self):
        return hash((self.p, self.poly))


def reduce_power(p: int, exponent: int, var: str = "x") -> QuotientPoly:
    """Normal form of a single variable power."""
    if p < 2:
        raise ValueError("p must be >= 2")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    r = exponent % p
    if r <= p - 2:
        poly = Poly.variable(var, r) if r else Poly.one()
    else:
        poly = Poly({((var, i),) if i else (): -1 for i in range(p - 1)})
    return QuotientPoly(p, (var,), poly)


def _reduce_terms(terms, p: int, max_terms: int) -> dict[Mono, int]:
    """Reduce arbitrary (mono, coeff) pairs to the basic-monomial basis."""
    out: dict[Mono, int] = {}
    for mono, coeff in terms:
        base = []
        hot = []
        for var, exp in mono:
            r = exp % p
            if r == 0:
                continue
            if r <= p - 2:
                base.append((var, r))
            else:
                hot.append(var)
        base_mono = tuple(base)
        sign = -1 if len(hot) % 2 else 1
        contribution = sign * coeff
        # each maxed-out variable expands to the sum over exponents 0..p-2
        for combo in product(range(p - 1), repeat=len(hot)):
            extra = tuple(
                (v, k) for v, k in sorted(zip(hot, combo)) if k
            )
            m = mono_mul(base_mono, extra)
            s = out.get(m, 0) + contribution
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        if len(out) > max_terms:
            raise BoundExceeded(f"normal form exceeds {max_terms} terms")
    return out


def normalize(
    f: Poly,
    p: int,
    arcs: tuple[str, ...] | None = None,
    max_terms: int | None = None,
) -> QuotientPoly:
    """The unique basic-monomial representative of f modulo the ideal."""
    if p < 2:
        raise ValueError("p must be >= 2")
    bound = DEFAULT_TERM_BOUND if max_terms is None else max_terms
    reduced = _reduce_terms(f.items(), p, bound)
    if arcs is None:
        arcs = tuple(sorted(f.variables()))
    return QuotientPoly(p, tuple(arcs), Poly(reduced))


def is_in_ideal(f: Poly, p: int, max_terms: int | None = None) -> bool:
    return normalize(f, p, max_terms=max_terms).is_zero


def _vertex_factor_base(g: Digraph, v: str, p: int) -> Poly:
    """The monomial whose geometric sum is the vertex's factor: x_e for
    each arc entering v times x_e^(p-1) for each arc leaving it, so a loop
    contributes x_e^p."""
    exps: dict[str, int] = {}
    for a in g.in_arcs(v):
        exps[a.id] = exps.get(a.id, 0) + 1
    for a in g.out_arcs(v):
        exps[a.id] = exps.get(a.id, 0) + (p - 1)
    return Poly.monomial(exps)


def flow_polynomial_raw(g: Digraph, p: int, max_terms: int | None = None) -> Poly:
    """The fully expanded flow polynomial. Desk scale only; the normal
    form below never materializes this."""
    if p < 2:
        raise ValueError("p must be >= 2")
    bound = DEFAULT_TERM_BOUND if max_terms is None else max_terms
    acc = Poly.one()
    for v in g.sorted_vertices:
        base = _vertex_factor_base(g, v, p)
        factor = Poly.zero()
        power = Poly.one()
        for _ in range(p):
            factor = factor + power
            power = power * base
        acc = acc.mul(factor, max_terms=bound)
    return acc


def _fused_multiply_reduce(
    acc: dict[Mono, int], factor_monos: list[Mono], p: int, max_terms: int
) -> dict[Mono, int]:
    """acc times a sum of unit-coefficient monomials, reduced on the fly.

    The unreduced product is never materialized: every term pair is
    reduced into the output as it is formed.
    """
    out: dict[Mono, int] = {}
    expansions = range(p - 1)
    for mono_a, coeff in acc.items():
        for mono_f in factor_monos:
            mono = mono_mul(mono_a, mono_f)
            base = []
            hot = []
            for var, exp in mono:
                r = exp % p
                if r == 0:
                    continue
                if r <= p - 2:
                    base.append((var, r))
                else:
                    hot.append(var)
            base_mono = tuple(base)
            contribution = -coeff if len(hot) % 2 else coeff
            for combo in product(expansions, repeat=len(hot)):
                extra = tuple((v, k) for v, k in zip(hot, combo) if k)
                m = mono_mul(base_mono, extra)
                s = out.get(m, 0) + contribution
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        if len(out) > max_terms:
            raise BoundExceeded(f"normal form exceeds {max_terms} terms")
    return out


def _accumulation_order(g: Digraph) -> list[str]:
    """High-degree vertices first (ties by id) so the big factors fold in
    while the accumulator is still small."""
    degree = {v: 0 for v in g.vertices}
    for a in g.arcs:
        degree[a.tail] += 1
        degree[a.head] += 1
    return sorted(g.vertices, key=lambda v: (-degree[v], v))


def flow_polynomial_normal_form(
    g: Digraph, p: int, max_terms: int | None = None
) -> QuotientPoly:
    """Normal form of the flow polynomial, one vertex factor at a time.

    Every vertex factor is a geometric sum of powers of one monomial, so
    the accumulator is multiplied by p monomials and re-reduced after each
    vertex; the unreduced expansion is never materialized.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    bound = DEFAULT_TERM_BOUND if max_terms is None else max_terms
    arc_ids = g.sorted_arc_ids
    acc: dict[Mono, int] = {(): 1}
    for v in _accumulation_order(g):
        base = _vertex_factor_base(g, v, p)
        (base_mono,) = base.terms
        factor_monos = []
        power: Mono = ()
        for _ in range(p):
            factor_monos.append(power)
            power = mono_mul(power, base_mono)
        acc = _fused_multiply_reduce(acc, factor_monos, p, bound)
    return QuotientPoly(p, arc_ids, Poly(acc))


def has_nz_flow_membership(g: Digraph, p: int, max_terms: int | None = None) -> bool:
    """Nowhere-zero p-flow existence by non-membership of the flow
    polynomial in the ideal."""
    return not flow_polynomial_normal_form(g, p, max_terms).is_zero


def conformal_normal_form(
    g: Digraph, p: int, max_states: int | None = None
) -> QuotientPoly:
    """The normal form rebuilt from conformal dual-flow counts: p^kappa
    times the sum of c(psi) over the basic monomials. Independent of the
    polynomial reduction route; the two must agree term by term."""
    ids = g.sorted_arc_ids
    scale = p ** kappa(g)
    table = coefficient_table(g, p, max_states)
    poly = Poly.from_terms(
        (
            ({a: e for a, e in zip(ids, key) if e}, scale * c)
            for key, c in table.items()
        )
    )
    return QuotientPoly(p, ids, poly)


def surplus_eval(g: Digraph, phi: ZpMap) -> int:
    """Value of the flow polynomial at the vanishing-set point of a
    nowhere-zero map, computed without polynomials: p^|V| for flows,
    0 otherwise."""
    phi.check_domain(g)
    if not phi.is_nowhere_zero:
        raise PreconditionError("the map has a zero arc")
    return phi.p ** len(g.vertices) if is_flow(g, phi) else 0


def flow_poly_eval(g: Digraph, assignment: dict[str, int], p: int) -> CyclotomicInt:
    """Exact evaluation of the flow polynomial at x_e = rho^k_e, factor by
    factor (no expansion). Same ring element as evaluating the raw
    polynomial; the tests check that."""
    if set(assignment) != set(g.arc_by_id):
        raise ValueError("assignment domain does not match the arc set")
    for a, k in assignment.items():
        if not 1 <= k <= p - 1:
            raise ValueError(f"power for {a!r} must be in 1..{p - 1}")
    result = CyclotomicInt.one(p)
    for v in g.sorted_vertices:
        exp = 0
        for a in g.in_arcs(v):
            exp += assignment[a.id]
        for a in g.out_arcs(v):
            exp += (p - 1) * assignment[a.id]
        factor = CyclotomicInt.zero(p)
        for i in range(p):
            factor = factor + CyclotomicInt.root_power(p, exp * i)
        result = result * factor
    return result


def eval_at_map(g: Digraph, f: Poly, phi: ZpMap) -> CyclotomicInt:
    """Evaluate f at the vanishing-set point rho^phi for a nowhere-zero
    map phi."""
    if not phi.is_nowhere_zero:
        raise PreconditionError("the map has a zero arc")
    return cyclotomic_eval(f, dict(phi.values), phi.p)
