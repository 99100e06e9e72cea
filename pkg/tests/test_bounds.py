from fractions import Fraction as F

import pytest
from mpmath import mp

from helpers import mpf_to_fraction

from dispkit import (
    SearchConfig,
    aistleitner_inverse_lower,
    aistleitner_lower,
    aistleitner_quarter_lower,
    bounds_table,
    grid_log_coefficient,
    larcher_upper,
    minimal_dispersion_search,
    pigeonhole_lower,
    rudolf_inverse_upper,
    rudolf_upper,
)


class TestFormulas:
    def test_pigeonhole(self):
        assert pigeonhole_lower(0) == 1
        assert pigeonhole_lower(1) == F(1, 2)
        assert pigeonhole_lower(3) == F(1, 4)

    def test_aistleitner_lower(self):
        assert aistleitner_lower(1, 2) == 0.125
        assert aistleitner_lower(2, 4) == 0.125
        vals = [aistleitner_lower(n, 2) for n in (1, 10, 100, 1000)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_aistleitner_inverse_lower(self):
        assert aistleitner_inverse_lower(F(1, 8), 2) == 1
        assert aistleitner_inverse_lower(F(1, 8), 4) == 2
        # coefficient vanishes as r -> 1/4
        small = aistleitner_inverse_lower(F(2499, 10000), 2)
        assert 0 < small < 0.001
        with pytest.raises(ValueError):
            aistleitner_inverse_lower(F(1, 4), 2)

    def test_quarter_lower(self):
        assert aistleitner_quarter_lower(1) == 1
        assert aistleitner_quarter_lower(3) == 2
        assert aistleitner_quarter_lower(7) == 3

    def test_larcher(self):
        assert larcher_upper(2**15, 2) == 1
        assert larcher_upper(2**16, 2) == F(1, 2)
        # doubling n exactly halves the bound (both sides are dyadic)
        assert mpf_to_fraction(larcher_upper(2 * 10, 2)) * 2 == mpf_to_fraction(
            larcher_upper(10, 2)
        )

    def test_rudolf(self):
        with mp.workprec(200):
            expect_2 = 4 * mp.ln(9)
            expect_1000 = F(1, 125) * mp.ln(4500)
        assert abs(rudolf_upper(2, 2) - expect_2) < 1e-30
        assert abs(rudolf_upper(1000, 2) - expect_1000) < 1e-30
        with pytest.raises(ValueError):
            rudolf_upper(1, 10)  # 9n <= d
        vals = [rudolf_upper(n, 2) for n in (2, 10, 100, 10**4, 10**6)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_rudolf_inverse(self):
        with mp.workprec(200):
            expect_quarter = 64 * mp.ln(132)
            expect_eighth = 128 * mp.ln(264)
            expect_quarter_d10 = 320 * mp.ln(132)
            expect_two_ninths = 8 * 2 * F(9, 2) * mp.ln(F(297, 2))
        assert abs(rudolf_inverse_upper(F(1, 4), 2) - expect_quarter) < 1e-28
        assert abs(rudolf_inverse_upper(F(1, 8), 2) - expect_eighth) < 1e-28
        # linear in d
        assert abs(rudolf_inverse_upper(F(1, 4), 10) - expect_quarter_d10) < 1e-28
        # 1/r is used exactly even when not an integer
        assert abs(rudolf_inverse_upper(F(2, 9), 2) - expect_two_ninths) < 1e-28

    def test_grid_log_coefficient(self):
        with mp.workprec(200):
            expect = 4**18 * (4 * mp.ln(4) + 1)
        assert abs(grid_log_coefficient(F(1, 4)) - expect) < 1
        # ceiling picks q = 5 for r = 2/9
        with mp.workprec(200):
            expect5 = 5**27 * (4 * mp.ln(5) + 1)
        assert abs(grid_log_coefficient(F(2, 9)) - expect5) / expect5 < 1e-30
        with pytest.raises(ValueError):
            grid_log_coefficient(F(1, 2))


N_GRID = [1, 10, 100, 10**3, 10**4, 10**5, 10**6]
D_GRID = [2, 3, 5, 10, 50, 100, 500, 10**3]
R_GRID = [F(1, 100), F(1, 16), F(1, 8), F(1, 5), F(2, 9), F(24, 97), F(1, 4)]


class TestNonCrossing:
    def test_dispersion_bounds_do_not_cross(self):
        for n in N_GRID:
            for d in D_GRID:
                lower = aistleitner_lower(n, d)
                pig = pigeonhole_lower(n)
                larcher = mpf_to_fraction(larcher_upper(n, d))
                if larcher <= 1:
                    assert pig <= larcher
                    assert mpf_to_fraction(lower) <= larcher
                if 9 * n > d:
                    rudolf = mpf_to_fraction(rudolf_upper(n, d))
                    if rudolf <= 1:
                        assert mpf_to_fraction(lower) <= rudolf
                        assert pig <= rudolf

    def test_inverse_bounds_do_not_cross(self):
        for r in R_GRID:
            coeff = grid_log_coefficient(r)
            for d in D_GRID:
                upper = rudolf_inverse_upper(r, d)
                log_d_upper = coeff * mp.ln(d)
                if r < F(1, 4):
                    lower = aistleitner_inverse_lower(r, d)
                else:
                    lower = aistleitner_quarter_lower(d)
                assert lower <= upper
                assert lower <= log_d_upper

    def test_empirical_sandwich_small_instances(self):
        cfg = SearchConfig(iterations=6, restarts=2, seed=17)
        for n, d in [(1, 2), (2, 2), (3, 2), (2, 3)]:
            _, heuristic_value = minimal_dispersion_search(n, d, cfg)
            assert mpf_to_fraction(aistleitner_lower(n, d)) <= heuristic_value
            assert pigeonhole_lower(n) <= heuristic_value


class TestTable:
    def test_r_mode_small(self):
        reports = bounds_table([2, 4, 8], r=F(1, 8))
        assert [float(rep.aistleitner_inverse_lower) for rep in reports] == [1, 2, 3]
        assert all(rep.pigeonhole_lower is None for rep in reports)

    def test_r_half_constant_column(self):
        reports = bounds_table(range(2, 30), r=F(1, 2))
        assert all(rep.diagonal_constant == 5 for rep in reports)
        assert all(rep.diagonal_one_point for rep in reports)

    def test_n_mode_pigeonhole_constant(self):
        reports = bounds_table([2, 3, 4], n=3)
        assert all(rep.pigeonhole_lower == F(1, 4) for rep in reports)

    def test_quarter_populates_quarter_column(self):
        (rep,) = bounds_table([3], r=F(1, 4))
        assert rep.aistleitner_quarter_lower == 2
        assert rep.aistleitner_inverse_lower is None

    def test_requires_exactly_one_input(self):
        with pytest.raises(ValueError):
            bounds_table([2], n=3, r=F(1, 8))
        with pytest.raises(ValueError):
            bounds_table([2])

    def test_csv_row_has_na_cells(self):
        (rep,) = bounds_table([2], n=3)
        row = rep.to_csv_row()
        assert row.startswith("3,NA,2,1/4,")
        assert ",NA" in row
