from fractions import Fraction

import pytest

from kscheck import cabello18_text
from kscheck.dsl import (
    ParseError,
    parse_rational,
    parse_scenario,
    parse_state,
    serialize_scenario,
)

GOOD = """\
# a single complete context in dimension 2
dim 2
ray up 0 1
ray down 1 0
context up down
"""


def err(text, **kwargs):
    with pytest.raises(ParseError) as excinfo:
        parse_scenario(text, **kwargs)
    return excinfo.value


class TestParseRational:
    def test_integers_and_fractions(self):
        assert parse_rational("3") == 3
        assert parse_rational("-3") == -3
        assert parse_rational("1/2") == Fraction(1, 2)
        assert parse_rational("-7/21") == Fraction(-1, 3)

    def test_rejects_decimals_and_junk(self):
        for bad in ("1.5", "1e3", "a", "1/", "/2", "--1", "1/-2"):
            with pytest.raises(ValueError):
                parse_rational(bad)

    def test_zero_denominator(self):
        with pytest.raises(ValueError, match="zero denominator"):
            parse_rational("1/0")


class TestParseScenario:
    def test_minimal_document(self):
        s = parse_scenario(GOOD)
        assert s.dim == 2
        assert [r.id for r in s.rays] == ["up", "down"]
        assert len(s.contexts) == 1

    def test_bundled_fixture(self):
        s = parse_scenario(cabello18_text())
        assert len(s.rays) == 18 and len(s.contexts) == 9

    def test_comments_and_blank_lines_ignored(self):
        s = parse_scenario("\n# hi\n\n" + GOOD + "\n# bye\n")
        assert len(s.rays) == 2

    def test_rational_coordinates(self):
        s = parse_scenario("dim 2\nray a 1/2 1/2\nray b 1 -1\ncontext a b\n")
        assert s.rays[0].coords.entries == (1, 1)

    def test_missing_dim(self):
        e = err("ray a 1 0\n")
        assert e.line == 1 and "dim" in e.message

    def test_duplicate_dim(self):
        e = err("dim 2\ndim 3\n" + "ray a 0 1\nray b 1 0\ncontext a b\n")
        assert e.line == 2 and "duplicate dim" in e.message

    def test_dim_after_declarations(self):
        e = err("dim 2\nray a 0 1\ndim 2\nray b 1 0\ncontext a b\n")
        assert e.line == 3

    def test_unknown_keyword(self):
        e = err("dim 2\nrays a 0 1\n")
        assert (e.line, e.column) == (2, 1) and "unknown keyword" in e.message

    def test_context_arity(self):
        e = err("dim 4\nray a 1 0 0 0\ncontext a\n")
        assert e.line == 3 and "has 1 rays, needs 4" in e.message

    def test_zero_ray(self):
        e = err("dim 4\nray a 0 0 0 0\n")
        assert e.line == 2 and "zero vector" in e.message

    def test_invalid_rational_with_column(self):
        e = err("dim 2\nray a 1 x\n")
        assert (e.line, e.column) == (2, 9)
        assert "invalid rational" in e.message

    def test_undeclared_ray_id(self):
        e = err("dim 2\nray a 0 1\ncontext a b\n")
        assert e.line == 3 and "undeclared" in e.message

    def test_duplicate_ray_id(self):
        e = err("dim 2\nray a 0 1\nray a 1 0\ncontext a a\n")
        assert e.line == 3 and "duplicate" in e.message

    def test_repeated_ray_in_context(self):
        e = err("dim 2\nray a 0 1\nray b 1 0\ncontext a a\n")
        assert e.line == 4 and "repeated" in e.message

    def test_non_orthogonal_context_positions_the_line(self):
        e = err("dim 2\nray a 1 0\nray b 1 1\ncontext a b\n")
        assert e.line == 4 and "not orthogonal" in e.message

    def test_unused_ray_points_at_declaration(self):
        e = err("dim 2\nray a 0 1\nray b 1 0\nray c 1 1\ncontext a b\n")
        assert e.line == 4 and "not used" in e.message

    def test_reserved_word_as_id(self):
        e = err("dim 2\nray context 0 1\n")
        assert e.line == 2 and "reserved" in e.message

    def test_bad_dimension_value(self):
        e = err("dim zero\n")
        assert e.line == 1 and "invalid dimension" in e.message

    def test_no_merge_mints_per_occurrence_ids(self):
        s = parse_scenario(cabello18_text(), merge=False)
        assert len(s.rays) == 36
        assert all("@c" in r.id for r in s.rays)


class TestRoundTrip:
    def test_fixture_round_trips(self):
        s1 = parse_scenario(cabello18_text())
        s2 = parse_scenario(serialize_scenario(s1))
        assert s1 == s2

    def test_small_document_round_trips(self):
        s1 = parse_scenario(GOOD)
        assert parse_scenario(serialize_scenario(s1)) == s1

    def test_serialization_is_canonical(self):
        noisy = "dim 2\nray a 0 -2\nray b 7 0\ncontext a b\n"
        s = parse_scenario(noisy)
        assert "ray a 0 1" in serialize_scenario(s)
        assert "ray b 1 0" in serialize_scenario(s)


class TestParseState:
    def test_pure(self):
        rho = parse_state("pure 1 1 0 0\n", 4)
        assert rho.matrix.trace() == 1
        assert rho.matrix.rows[0][1] == Fraction(1, 2)

    def test_mixed(self):
        rho = parse_state(
            "mixed\nw 1/2 pure 1 0 0 0\nw 1/2 pure 0 1 0 0\n", 4
        )
        assert rho.matrix.rows[0][0] == Fraction(1, 2)
        assert rho.matrix.rows[2][2] == 0

    def test_matrix(self):
        rho = parse_state(
            "matrix\n1/4 0 0 0\n0 1/4 0 0\n0 0 1/4 0\n0 0 0 1/4\n", 4
        )
        assert rho.matrix.trace() == 1

    def test_empty(self):
        with pytest.raises(ParseError, match="empty"):
            parse_state("# nothing here\n", 4)

    def test_pure_arity(self):
        with pytest.raises(ParseError, match="4 coordinates"):
            parse_state("pure 1 0\n", 4)

    def test_mixed_weights_must_sum_to_one(self):
        with pytest.raises(ParseError, match="sum to 3/4"):
            parse_state("mixed\nw 3/4 pure 1 0 0 0\n", 4)

    def test_matrix_must_be_a_state(self):
        bad = "matrix\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"
        with pytest.raises(ParseError, match="trace"):
            parse_state(bad, 4)

    def test_matrix_row_count(self):
        with pytest.raises(ParseError, match="4 rows"):
            parse_state("matrix\n1 0 0 0\n", 4)

    def test_unknown_header(self):
        with pytest.raises(ParseError, match="pure"):
            parse_state("density 1 0 0 0\n", 4)

    def test_component_line_shape(self):
        with pytest.raises(ParseError, match="expected 'w"):
            parse_state("mixed\npure 1 0 0 0\n", 4)
