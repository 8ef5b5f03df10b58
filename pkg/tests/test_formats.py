import json

import pytest

from flowpoly.errors import GraphFormatError
from flowpoly.flows import ZpMap
from flowpoly.formats import (
    dump_json,
    graph_to_text,
    klein_map_to_json,
    pair_poly_to_json,
    pair_poly_to_text,
    parse_graph_text,
    parse_klein_map,
    parse_zp_map,
    poly_to_text,
    quotient_poly_to_json,
    quotient_poly_to_text,
    zp_map_to_json,
    zp_map_to_text,
)
from flowpoly.fourflow import four_flow_polynomial_normal_form
from flowpoly.polynomials import Poly
from flowpoly.quotient import flow_polynomial_normal_form


class TestGraphText:
    def test_digraph_round_trip(self):
        text = "a e1 v1 v2\na e2 v2 v1\na e3 v1 v2\n"
        parsed = parse_graph_text(text)
        assert parsed.kind == "digraph"
        assert graph_to_text(parsed.digraph) == text

    def test_undirected_round_trip(self):
        text = "e e1 a b\ne e2 b c\n"
        parsed = parse_graph_text(text)
        assert parsed.kind == "undirected"
        assert graph_to_text(parsed.undirected) == text

    def test_rotation_round_trip(self, corpus_dir):
        text = (corpus_dir / "example.g").read_text()
        parsed = parse_graph_text(text)
        out = graph_to_text(parsed.digraph, parsed.rotation)
        again = parse_graph_text(out)
        assert again.digraph == parsed.digraph
        assert again.rotation == parsed.rotation

    def test_comments_and_blanks(self):
        parsed = parse_graph_text("# hello\n\nv lonely\n a x1 u v # trailing\n")
        assert parsed.digraph.vertices == {"lonely", "u", "v"}

    def test_isolated_vertex_round_trip(self):
        parsed = parse_graph_text("v z\ne e1 a b\n")
        assert graph_to_text(parsed.undirected) == "v z\ne e1 a b\n"

    def test_mixed_records_rejected(self):
        with pytest.raises(GraphFormatError):
            parse_graph_text("a e1 u v\ne e2 u v\n")

    def test_error_names_line(self):
        with pytest.raises(GraphFormatError) as err:
            parse_graph_text("a e1 u v\nbogus\n")
        assert "line 2" in str(err.value)

    def test_bad_id(self):
        with pytest.raises(GraphFormatError):
            parse_graph_text("a e+1 u v\n")

    def test_duplicate_arc_id(self):
        with pytest.raises(GraphFormatError):
            parse_graph_text("a e1 u v\na e1 v w\n")

    def test_bad_rot_end(self):
        with pytest.raises(GraphFormatError) as err:
            parse_graph_text("a e1 u v\nrot u e1*\n")
        assert "line 2" in str(err.value)


class TestZpMapText:
    def test_text_round_trip(self):
        m = parse_zp_map("p=3; e1=1; e2=2; e3=1")
        assert m == ZpMap(3, {"e1": 1, "e2": 2, "e3": 1})
        assert parse_zp_map(zp_map_to_text(m)) == m

    def test_json_round_trip(self):
        m = ZpMap(5, {"a": 4, "b": 0})
        assert parse_zp_map(json.dumps(zp_map_to_json(m))) == m

    def test_requires_p(self):
        with pytest.raises(GraphFormatError):
            parse_zp_map("e1=1")


class TestKleinJson:
    def test_round_trip(self):
        from flowpoly.fourflow import KleinMap

        m = KleinMap({"e1": (0, 1), "e2": (1, 1)})
        assert parse_klein_map(json.dumps(klein_map_to_json(m))) == m


class TestPolyForms:
    def test_worked_example_text(self, embedded_example):
        g, _ = embedded_example
        nf = flow_polynomial_normal_form(g, 3)
        assert (
            quotient_poly_to_text(nf)
            == "3*e1*e2 - 3*e1*e3 + 3*e2*e3 + 3*e2 + 3"
        )

    def test_json_sorted_and_stringly(self, embedded_example):
        g, _ = embedded_example
        nf = flow_polynomial_normal_form(g, 3)
        data = quotient_poly_to_json(nf)
        assert data["p"] == 3
        coeffs = [t["coeff"] for t in data["terms"]]
        assert all(isinstance(c, str) for c in coeffs)
        vectors = [
            tuple(t["exps"].get(a, 0) for a in ("e1", "e2", "e3"))
            for t in data["terms"]
        ]
        assert vectors == sorted(vectors)

    def test_zero_poly(self):
        assert poly_to_text(Poly.zero(), ()) == "0"

    def test_exponents_rendered(self):
        p = Poly.monomial({"a": 2, "b": 1}, -7)
        assert poly_to_text(p, ("a", "b")) == "-7*a^2*b"

    def test_pair_poly_forms(self):
        from families import triangle

        nf = four_flow_polynomial_normal_form(triangle())
        data = pair_poly_to_json(nf)
        assert all(
            isinstance(t["coeff"], str) and t["exps"] for t in data["terms"]
        ) or data["terms"]
        text = pair_poly_to_text(nf)
        assert "x_e1" in text or "y_e1" in text or text == "0"

    def test_dump_json_stable(self):
        payload = {"b": 1, "a": [3, 2]}
        assert dump_json(payload) == dump_json(payload)
        assert dump_json(payload).startswith('{\n  "a"')
