from fractions import Fraction as F

import pytest

import oracles
from conftest import random_specs
from lagrange_puiseux import identity
from lagrange_puiseux.branches import RSpec
from lagrange_puiseux.identity import (
    ConsistencyError,
    VerificationReport,
    corollary_rhs,
    lhs_G,
    rhs_factors,
    rhs_product,
    verify,
)
from lagrange_puiseux.series import LaurentSeries, PrecisionError, invert, monomial, polynomial

q = monomial(1)
ONE = LaurentSeries.one()


def ones(N):
    return [1] + [0] * N


class TestLhs:
    def test_linear_R(self):
        assert lhs_G(RSpec((1, 1)), 1, 10).coefficients(0, 11) == ones(10)

    @pytest.mark.parametrize("e", [1, 2, 3, 4])
    def test_degree_at_most_e(self, e):
        for R in random_specs(30 + e, 3, 1, e):
            assert lhs_G(R, e, 8).coefficients(0, 9) == ones(8)

    def test_hand_brute_force(self):
        # n = m = j = 1 is the only term at q^2: [z^2]{R} [z^0]{R} = 1
        G = lhs_G(RSpec((1, 1, 1)), 1, 2)
        assert G.coefficients(0, 3) == [1, 0, -1]

    @pytest.mark.parametrize("e", [1, 2, 3])
    @pytest.mark.parametrize("R", random_specs(31, 3, 2, 6) + [RSpec((F(1, 2), 3, 0, -1, F(2, 3)))])
    def test_matches_literal_triple_sum(self, R, e):
        N = 6
        want = oracles.exp_list(oracles.lhs_exponent(R.coeffs, e, N), N + 1)
        assert lhs_G(R, e, N).coefficients(0, N + 1) == want


class TestRhsFactors:
    def test_single_branch_linear(self):
        assert rhs_product(RSpec((1, 1)), 1, 8) == ONE.truncate(9)

    def test_pure_root(self):
        f = rhs_factors(RSpec((1,)), 2, 6)
        assert f.r_ratio.agrees_with(ONE, 6)
        assert f.h_power.agrees_with(q * q, 6)
        assert f.inverse_vandermonde.agrees_with(monomial(-1, F(-1, 4)), 5)
        assert f.log_derivative.agrees_with(monomial(-1, -4), 5)
        assert rhs_product(RSpec((1,)), 2, 6) == ONE.truncate(7)

    def test_two_branches_linear(self):
        f = rhs_factors(RSpec((1, 1)), 2, 6)
        assert f.r_ratio.agrees_with(ONE, 3)
        assert f.h_power.agrees_with(q * q, 4)
        want3 = invert((q * (1 + q * F(1, 4))).scale(-4), precision=2)
        assert f.inverse_vandermonde.agrees_with(want3, 2)
        assert f.log_derivative.agrees_with(-(4 + q) * monomial(-1), 2)
        assert rhs_product(RSpec((1, 1)), 2, 6).coefficients(0, 3) == [1, 0, 0]

    def test_margin_is_enforced(self, monkeypatch):
        monkeypatch.setattr(identity, "working_order", lambda e, N: e * (N - 2))
        with pytest.raises(PrecisionError):
            rhs_product(RSpec((1, 2, 3)), 2, 8)

    def test_negative_powers_are_flagged(self, monkeypatch):
        class Broken:
            def product(self):
                return monomial(-1) + polynomial([1], precision=12)

        monkeypatch.setattr(identity, "rhs_factors", lambda R, e, N: Broken())
        with pytest.raises(ConsistencyError):
            rhs_product(RSpec((1, 1)), 1, 5)


class TestCorollary:
    def test_constant(self):
        assert corollary_rhs(RSpec((1,)), 6) == ONE.truncate(7)

    def test_linear(self):
        assert corollary_rhs(RSpec((1, 1)), 6) == ONE.truncate(7)

    def test_quadratic(self):
        assert corollary_rhs(RSpec((1, 1, 1)), 6).coefficients(0, 3) == [1, 0, -1]

    @pytest.mark.parametrize("R", random_specs(32, 6, 1, 6) + [RSpec((3, -1, 2))])
    def test_matches_general_product(self, R):
        assert corollary_rhs(R, 10) == rhs_product(R, 1, 10)


class TestVerify:
    def test_linear(self):
        rep = verify(RSpec((1, 1)), 1, 10)
        assert rep.equal and rep.first_mismatch is None
        assert list(rep.lhs) == list(rep.rhs) == ones(10)

    def test_quadratic(self):
        rep = verify(RSpec((1, 1, 1)), 1, 6)
        assert rep.equal
        assert list(rep.lhs[:3]) == [1, 0, -1]

    def test_zero_constant_rejected_before_report(self):
        with pytest.raises(ValueError):
            verify(RSpec((0, 1)), 1, 4)

    @pytest.mark.parametrize("e", [1, 2, 3])
    @pytest.mark.parametrize("R", random_specs(33, 3, 2, 6))
    def test_leading_terms(self, R, e):
        rep = verify(R, e, 6)
        assert rep.equal
        assert rep.lhs[0] == rep.rhs[0] == 1
        assert rep.lhs[1] == rep.rhs[1] == 0

    @pytest.mark.parametrize("R,e,root", [(RSpec((4, 1, -2, 3)), 2, -2), (RSpec((-1, 2, 1, 1, 1)), 3, -1), (RSpec((F(1, 16), 2, 1, 1, -1, 1)), 4, F(-1, 2))])
    def test_nonunit_constant_term(self, R, e, root):
        assert verify(R.with_root(root), e, 6).equal

    @pytest.mark.parametrize("e", [2, 4])
    def test_root_choice_irrelevant(self, e):
        R = RSpec((1, -2, 1, 3, 1, 2))
        assert rhs_product(R, e, 6) == rhs_product(R.with_root(-1), e, 6)

    @pytest.mark.parametrize("e", [1, 2])
    def test_high_order_padding_ignored(self, e):
        N = 5
        R = RSpec((1, 2, -1, 3))
        padded = RSpec(R.coeffs + (0,) * (N * e + 1 - 4) + (7, -5, 11))
        assert lhs_G(padded, e, N) == lhs_G(R, e, N)
        assert rhs_product(padded, e, N) == rhs_product(R, e, N)

    def test_mismatch_is_reported(self, monkeypatch):
        monkeypatch.setattr(identity, "rhs_product", lambda R, e, N: polynomial([1, 0, 5], precision=N + 1))
        rep = identity.verify(RSpec((1, 1)), 1, 4)
        assert not rep.equal and rep.first_mismatch == 2


class TestReport:
    def test_schema(self):
        rep = verify(RSpec((1, 0, F(1, 2))), 2, 3)
        assert list(rep.to_dict()) == ["r", "e", "order", "lhs", "rhs", "equal", "first_mismatch"]
        assert rep.to_dict()["r"] == ["1", "0", "1/2"]

    def test_roundtrip(self):
        rep = verify(RSpec((1, -1, 2, 1)), 2, 5)
        text = rep.to_json()
        again = VerificationReport.from_json(text)
        assert again == rep
        assert again.to_json() == text
