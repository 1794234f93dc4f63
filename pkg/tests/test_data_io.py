import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ess import DomainError, Grid, NormalizationError, ParseError, make_pmf
from ess.data_io import (
    InputKind,
    format_pmf,
    load_record,
    parse_alpha_list,
    parse_counts_text,
    parse_grid_csv,
    parse_joint_csv,
    parse_pmf_text,
    parse_table1,
    profile_to_json,
    render_table1,
    table1_values,
)
from ess import INF, ONE, TABLE1_ALPHAS, ess_profile
from reference import TABLE1_EXPECTED, pmfs


class TestParsePmf:
    def test_comma(self):
        assert parse_pmf_text("0.5,0.5").tolist() == [0.5, 0.5]

    def test_whitespace_normalize(self):
        assert parse_pmf_text("3 1", normalize=True).tolist() == [0.75, 0.25]

    def test_bad_token(self):
        with pytest.raises(ParseError):
            parse_pmf_text("0.5,abc")

    def test_one_per_line_with_comments(self):
        text = "# probabilities\n0.2\n0.3\n\n0.5\n"
        assert parse_pmf_text(text).tolist() == [0.2, 0.3, 0.5]

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_pmf_text("# nothing\n")

    def test_validation_propagates(self):
        with pytest.raises(NormalizationError):
            parse_pmf_text("0.5 0.6")
        with pytest.raises(DomainError):
            parse_pmf_text("-0.5 1.5")

    def test_nan_rejected(self):
        with pytest.raises(ParseError):
            parse_pmf_text("nan,1")


class TestCounts:
    def test_plug_in(self):
        assert parse_counts_text("30 10").tolist() == [0.75, 0.25]

    def test_non_integer(self):
        with pytest.raises(ParseError):
            parse_counts_text("1.5 2")


class TestJointCsv:
    def test_two_by_two(self):
        j = parse_joint_csv("0.5,0\n0.25,0.25")
        assert j.shape == (2, 2)
        np.testing.assert_array_equal(j.table, [[0.5, 0.0], [0.25, 0.25]])

    def test_unnormalized(self):
        with pytest.raises(NormalizationError):
            parse_joint_csv("0.5,0.5\n0.5,0.5")

    def test_normalize_flag(self):
        j = parse_joint_csv("1,1\n1,1", normalize=True)
        np.testing.assert_array_equal(j.table, np.full((2, 2), 0.25))

    @pytest.mark.parametrize("text", ["", "# only a comment", "0.5,0.5\n0.5", "0.5,,0.5"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            parse_joint_csv(text)


class TestGridCsv:
    def test_uniform(self):
        grid = parse_grid_csv("# x, f\n0,0.5\n1,0.5\n2,0.5\n")
        assert isinstance(grid, Grid)
        np.testing.assert_array_equal(grid.points, [0, 1, 2])

    def test_wrong_width(self):
        with pytest.raises(ParseError):
            parse_grid_csv("0,0.5,1\n1,0.5,1")


class TestLoadRecord:
    def test_inline(self):
        rec = load_record("0.25,0.75", InputKind.PMF)
        assert rec.source == "<inline>"
        assert rec.parse().tolist() == [0.25, 0.75]

    def test_file(self, tmp_path):
        path = tmp_path / "joint.csv"
        path.write_text("0.5,0\n0.25,0.25\n", encoding="utf-8")
        rec = load_record(f"@{path}", InputKind.JOINT)
        assert rec.source == str(path)
        assert rec.parse().shape == (2, 2)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_record(f"@{tmp_path / 'nope.csv'}", InputKind.PMF)


class TestAlphaList:
    def test_values(self):
        assert parse_alpha_list("0.5, 1,inf") == (parse_alpha_list("0.5")[0], ONE, INF)

    def test_table1(self):
        assert parse_alpha_list("table1") == TABLE1_ALPHAS

    def test_bad(self):
        with pytest.raises(ParseError):
            parse_alpha_list("0.5,x")
        with pytest.raises(DomainError):
            parse_alpha_list("-1")


class TestRoundTrip:
    @given(pmfs)
    def test_six_decimals_survive(self, p):
        back = parse_pmf_text(format_pmf(p), normalize=True)
        # each entry is off by at most half a unit in the sixth decimal before
        # renormalization, which rescales by at most m * 5e-7
        np.testing.assert_allclose(back.probs, p.probs, rtol=0, atol=5e-7 * (p.m + 1))

    @given(st.lists(st.integers(0, 1000), min_size=1, max_size=10).filter(lambda c: sum(c) > 0))
    def test_exact_for_representable(self, counts):
        # probabilities with at most six decimals: scale counts to sum to 10**6
        total = sum(counts)
        ticks = [c * (10**6 // total) for c in counts]
        ticks[0] += 10**6 - sum(ticks)
        p = make_pmf([t / 10**6 for t in ticks])
        back = parse_pmf_text(format_pmf(p))
        np.testing.assert_allclose(back.probs, p.probs, rtol=0, atol=1e-12)


class TestTable1:
    def test_values_shape(self):
        assert table1_values().shape == (9, 6)

    def test_render_parse_back(self):
        alphas, heads, values = parse_table1(render_table1())
        assert alphas == list(TABLE1_ALPHAS)
        assert heads[1] == (0.6, 0.4)
        np.testing.assert_allclose(values, np.round(table1_values(), 6), atol=1e-12)

    @pytest.mark.parametrize("row, col, printed", [
        (5, 2, 1.777878),
        (1, 4, 1.902332),
        (8, 3, 1.250000),
    ])
    def test_cells(self, row, col, printed):
        assert TABLE1_EXPECTED[row, col] == printed
        assert abs(table1_values()[row, col] - printed) < 5e-7

    def test_no_scientific_notation(self):
        assert "e" not in render_table1().replace("alpha", "")


def test_profile_json_shape():
    p = make_pmf([0.9, 0.1])
    d = profile_to_json(p, ess_profile(p, [0.5, 1, "inf"]))
    assert d["pmf"] == [0.9, 0.1]
    assert d["alphas"] == [0.5, 1.0, "inf"]
    assert d["ess"][2] == pytest.approx(1 / 0.9)
