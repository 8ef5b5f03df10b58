from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from families import (
    all_connected_multigraphs,
    default_orientation,
    directed_cycle,
    disjoint_union,
    example_graph,
    path,
    triangle,
)
from flowpoly.cyclotomic import CyclotomicInt, cyclotomic_eval, cyclotomic_polynomial
from flowpoly.flows import ZpMap
from flowpoly.graphs import Digraph, orient
from flowpoly.polynomials import Poly
from flowpoly.quotient import (
    conformal_normal_form,
    eval_at_map,
    flow_poly_eval,
    flow_polynomial_normal_form,
    flow_polynomial_raw,
    has_nz_flow_membership,
    is_in_ideal,
    normalize,
    reduce_power,
    surplus_eval,
)

X = Poly.variable


class TestPolyCore:
    def test_ring_smoke(self):
        x, y = X("x"), X("y")
        assert (x + y) * (x - y) == x * x - y * y
        assert (x + 1) ** 3 == x**3 + 3 * x**2 + 3 * x + 1
        assert x - x == Poly.zero()
        assert Poly.constant(0).is_zero

    def test_eval_int(self):
        f = 2 * X("x") * X("y") + 3
        assert f.eval_int({"x": 2, "y": 5}) == 23


class TestCyclotomic:
    def test_polynomials(self):
        assert cyclotomic_polynomial(2) == (1, 1)
        assert cyclotomic_polynomial(3) == (1, 1, 1)
        assert cyclotomic_polynomial(4) == (1, 0, 1)
        assert cyclotomic_polynomial(6) == (1, -1, 1)
        assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)

    def test_product_over_divisors(self):
        # z^n - 1 factors into the cyclotomics of the divisors of n
        from flowpoly.cyclotomic import _poly_mul

        for n in range(2, 13):
            prod_poly = (1,)
            for d in range(1, n + 1):
                if n % d == 0:
                    prod_poly = _poly_mul(prod_poly, cyclotomic_polynomial(d))
            expect = tuple([-1] + [0] * (n - 1) + [1])
            assert prod_poly == expect

    def test_root_of_unity(self):
        for p in range(2, 11):
            rho = CyclotomicInt.root_power(p, 1)
            power = CyclotomicInt.one(p)
            for _ in range(p):
                power = power * rho
            assert power == CyclotomicInt.one(p)

    def test_geometric_sums_vanish(self):
        # 1 + rho^k + rho^2k + ... + rho^(p-1)k = 0 for every k in 1..p-1,
        # including non-primitive powers for composite p
        for p in range(2, 11):
            for k in range(1, p):
                total = CyclotomicInt.zero(p)
                for i in range(p):
                    total = total + CyclotomicInt.root_power(p, k * i)
                assert total.is_zero, (p, k)

    def test_as_int(self):
        assert CyclotomicInt.from_int(5, 9).as_int() == 9
        assert CyclotomicInt.root_power(5, 1).as_int() is None
        assert CyclotomicInt.root_power(2, 1).as_int() == -1


class TestReducePower:
    def test_p3(self):
        assert reduce_power(3, 3).poly == Poly.one()
        assert reduce_power(3, 5).poly == -1 - X("x")
        assert reduce_power(3, 1).poly == X("x")

    def test_p2(self):
        assert reduce_power(2, 1).poly == Poly.constant(-1)
        assert reduce_power(2, 6).poly == Poly.one()

    def test_p5(self):
        assert reduce_power(5, 9, var="a").poly == -(
            1 + X("a") + X("a") ** 2 + X("a") ** 3
        )


class TestNormalize:
    def test_xp_minus_one(self):
        for p in (2, 3, 4, 5):
            f = X("x") ** p - 1
            assert normalize(f, p).is_zero

    def test_generator_reduces_to_zero(self):
        f = 1 + X("x") + X("x") ** 2
        assert normalize(f, 3).is_zero
        assert is_in_ideal(f, 3)

    def test_worked_example_expansion(self):
        raw = flow_polynomial_raw(example_graph(), 3)
        nf = normalize(raw, 3)
        x1, x2, x3 = X("e1"), X("e2"), X("e3")
        assert nf.poly == 3 * (x1 * x2 - x1 * x3 + x2 * x3 + x2 + 1)

    def test_not_in_ideal(self):
        assert not is_in_ideal(Poly.one(), 3)
        assert not is_in_ideal(flow_polynomial_raw(example_graph(), 3), 3)


small_polys = st.builds(
    lambda terms: Poly.from_terms(
        ({"x": ex, "y": ey, "z": ez}, c) for (ex, ey, ez, c) in terms
    ),
    st.lists(
        st.tuples(
            st.integers(0, 6),
            st.integers(0, 6),
            st.integers(0, 6),
            st.integers(-4, 4),
        ),
        max_size=5,
    ),
)


class TestNormalFormIdentities:
    @given(f=small_polys, g=small_polys, p=st.sampled_from((2, 3, 4, 5)))
    @settings(max_examples=60, deadline=None)
    def test_linear(self, f, g, p):
        left = normalize(f + g, p).poly
        right = normalize(f, p).poly + normalize(g, p).poly
        assert left == right

    @given(f=small_polys, g=small_polys, p=st.sampled_from((2, 3, 4, 5)))
    @settings(max_examples=60, deadline=None)
    def test_multiplicative(self, f, g, p):
        left = normalize(f * g, p).poly
        right = normalize(normalize(f, p).poly * normalize(g, p).poly, p).poly
        assert left == right

    @given(f=small_polys, p=st.sampled_from((2, 3, 4, 5)))
    @settings(max_examples=60, deadline=None)
    def test_idempotent(self, f, p):
        once = normalize(f, p).poly
        assert normalize(once, p).poly == once

    @given(f=small_polys, p=st.sampled_from((2, 3, 4)))
    @settings(max_examples=40, deadline=None)
    def test_zero_set_soundness(self, f, p):
        # membership in the ideal is exactly vanishing on the whole zero
        # set, every variable at every nontrivial p-th root of unity
        vanishes = all(
            cyclotomic_eval(
                f, {"x": kx, "y": ky, "z": kz}, p
            ).is_zero
            for kx in range(1, p)
            for ky in range(1, p)
            for kz in range(1, p)
        )
        assert vanishes == normalize(f, p).is_zero


class TestFlowPolynomial:
    def test_worked_example_raw_monomials(self):
        raw = flow_polynomial_raw(example_graph(), 3)
        expect = {
            (6, 6, 6), (5, 4, 5), (4, 5, 4), (4, 2, 4), (3, 3, 3),
            (2, 4, 2), (2, 1, 2), (1, 2, 1), (0, 0, 0),
        }
        got = set()
        for mono, coeff in raw.items():
            assert coeff == 1
            exps = dict(mono)
            got.add((exps.get("e1", 0), exps.get("e2", 0), exps.get("e3", 0)))
        assert got == expect

    def test_worked_example_normal_form(self):
        nf = flow_polynomial_normal_form(example_graph(), 3)
        x1, x2, x3 = X("e1"), X("e2"), X("e3")
        assert nf.poly == 3 * (x1 * x2 - x1 * x3 + x2 * x3 + x2 + 1)

    def test_edgeless_vertex(self):
        g = Digraph(frozenset({"v"}), ())
        for p in (2, 3, 7):
            assert flow_polynomial_normal_form(g, p).poly == Poly.constant(p)

    def test_single_arc_p2_routes_agree(self):
        # a bridge admits no nowhere-zero flow, so whatever the literal
        # value is, both routes must produce it and it must be zero here
        g = Digraph.build([("e1", "u", "v")])
        nf = flow_polynomial_normal_form(g, 2)
        assert nf == conformal_normal_form(g, 2)
        assert nf.is_zero

    def test_membership_examples(self):
        assert has_nz_flow_membership(example_graph(), 3)
        g = Digraph.build([("e1", "u", "v")])
        for p in (2, 3, 4, 5):
            assert not has_nz_flow_membership(g, p)
        assert has_nz_flow_membership(directed_cycle(3), 2)


class TestEvaluation:
    def test_worked_example_values(self):
        g = example_graph()
        raw = flow_polynomial_raw(g, 3)
        good = cyclotomic_eval(raw, {"e1": 1, "e2": 2, "e3": 1}, 3)
        assert good.as_int() == 9
        bad = cyclotomic_eval(raw, {"e1": 1, "e2": 1, "e3": 1}, 3)
        assert bad.as_int() == 0

    def test_constant(self):
        f = Poly.constant(42)
        assert cyclotomic_eval(f, {}, 5).as_int() == 42

    def test_surplus_eval(self):
        g = example_graph()
        assert surplus_eval(g, ZpMap(3, {"e1": 1, "e2": 2, "e3": 1})) == 9
        assert surplus_eval(g, ZpMap(3, {"e1": 1, "e2": 1, "e3": 1})) == 0
        lone = Digraph(frozenset({"v"}), ())
        assert surplus_eval(lone, ZpMap(3, {})) == 3

    def test_surplus_eval_rejects_zero(self):
        from flowpoly.errors import PreconditionError

        with pytest.raises(PreconditionError):
            surplus_eval(example_graph(), ZpMap(3, {"e1": 0, "e2": 1, "e3": 1}))

    def test_factored_eval_matches_raw(self):
        for g in all_connected_multigraphs(4):
            d = default_orientation(g)
            for p in (2, 3):
                raw = flow_polynomial_raw(d, p)
                ids = d.sorted_arc_ids
                for combo in product(range(1, p), repeat=len(ids)):
                    assignment = dict(zip(ids, combo))
                    assert flow_poly_eval(d, assignment, p) == cyclotomic_eval(
                        raw, assignment, p
                    )

    def test_dichotomy_small(self):
        # only two values ever appear on the zero set: 0 and p^|V|
        for g in all_connected_multigraphs(4):
            d = default_orientation(g)
            pv3 = 3 ** len(d.vertices)
            ids = d.sorted_arc_ids
            for combo in product(range(1, 3), repeat=len(ids)):
                phi = ZpMap.from_tuple(3, ids, combo)
                value = flow_poly_eval(d, dict(phi.values), 3).as_int()
                assert value in (0, pv3)
                assert value == surplus_eval(d, phi)

    def test_eval_at_map(self):
        g = example_graph()
        raw = flow_polynomial_raw(g, 3)
        phi = ZpMap(3, {"e1": 2, "e2": 1, "e3": 2})
        assert eval_at_map(g, raw, phi).as_int() == 9


class TestMainIdentity:
    def test_on_small_family(self):
        for g in all_connected_multigraphs(4):
            d = default_orientation(g)
            for p in (2, 3, 4):
                assert flow_polynomial_normal_form(d, p) == conformal_normal_form(d, p)

    def test_disconnected_components(self):
        # kappa = 2 and 3: the scale factor is p^kappa
        two = disjoint_union(triangle(), path(2))
        three = disjoint_union(triangle(), triangle(), path(1))
        for g, k in ((two, 2), (three, 3)):
            d = orient(g)
            for p in (2, 3):
                nf = flow_polynomial_normal_form(d, p)
                cn = conformal_normal_form(d, p)
                assert nf == cn
                from flowpoly.graphs import kappa as components

                assert components(d) == k

    def test_basis_dimension_matches_zero_count(self):
        # the basic monomials and the zero set have the same cardinality
        for p in (2, 3, 4, 5):
            for m in range(0, 6):
                assert (p - 1) ** m == len(list(product(range(1, p), repeat=m)))
