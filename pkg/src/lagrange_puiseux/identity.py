"""Both sides of the branch-product identity for ``G_e(R)``, and their comparison.

Left side::

    G_e(R) = exp( - sum_{n,m >= 1, j >= 1} j (1/m)[z^(me+j)]{R^m} (1/n)[z^(ne-j)]{R^n} q^(n+m) )

Right side, over the branches ``H_1 .. H_e`` of ``H**e = q R(H)``::

    prod (R(H_i)/R(0)) * prod H_i**e * prod_{i1 != i2} 1/(H_i2 - H_i1)
        * prod (e/H_i - R'(H_i)/R(H_i))
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .branches import (
    RSpec,
    elementary_symmetric,
    solve_ramified_branch,
    solve_unramified,
    symmetric_product,
    vandermonde_product,
)
from .series import (
    LaurentSeries,
    PowerSeries,
    PrecisionError,
    SeriesError,
    compose,
    derivative,
    format_field,
    invert,
    monomial,
    series_exp,
    to_field,
)

__all__ = [
    "ConsistencyError",
    "VerificationReport",
    "working_order",
    "lhs_G",
    "rhs_factors",
    "rhs_product",
    "corollary_rhs",
    "verify",
]


class ConsistencyError(SeriesError):
    """The branch product came out with negative powers of ``q``; this is a bug, not a finding."""


def working_order(e: int, N: int) -> int:
    """``t``-order to which the branch series is solved to deliver ``q``-order ``N``."""
    return e * (N + e + 2)


def lhs_G(R: RSpec, e: int, N: int) -> PowerSeries:
    """``G_e(R)`` through ``q**N`` by direct triple summation.

    ``j`` stops at ``n e`` (beyond it ``[z^(ne-j)]`` reads a negative exponent
    of a power series) and ``n + m`` at ``N``.
    """
    if N < 1 or e < 1:
        raise ValueError("need e >= 1 and N >= 1")
    Rs = R.series
    zprec = N * e + 1
    powers = [LaurentSeries.one()]
    for _ in range(1, N):
        powers.append((powers[-1] * Rs).truncate(zprec))
    expo = [Fraction(0)] * (N + 1)
    for n in range(1, N):
        Rn = powers[n]
        for m in range(1, N - n + 1):
            Rm = powers[m]
            s = 0
            for j in range(1, n * e + 1):
                hi = Rm[m * e + j]
                if hi:
                    s += j * hi * Rn[n * e - j]
            if s:
                expo[n + m] -= Fraction(s) / (m * n)
    return series_exp(LaurentSeries._build(expo, 0, N + 1))


@dataclass(frozen=True)
class RhsFactors:
    """The four factors of the branch product, each a Laurent series in ``q``."""

    r_ratio: LaurentSeries
    h_power: LaurentSeries
    inverse_vandermonde: LaurentSeries
    log_derivative: LaurentSeries

    def product(self) -> LaurentSeries:
        return self.r_ratio * self.h_power * self.inverse_vandermonde * self.log_derivative


def rhs_factors(R: RSpec, e: int, N: int) -> RhsFactors:
    """Evaluate the four factors symmetrically in the branches.

    ``e/H - R'(H)/R(H) = A(H) / (H R(H))`` with ``A(y) = e R(y) - y R'(y)``,
    so the last factor is ``prod A(H_i) / (prod H_i * prod R(H_i))`` and every
    symmetric product has a nonzero constant term.
    """
    B = solve_ramified_branch(R, e, working_order(e, N))
    Rs = R.series
    prod_R = symmetric_product(Rs, B)
    prod_H = elementary_symmetric(B)[-1]
    A = Rs.scale(e) - monomial(1) * derivative(Rs)
    prod_A = symmetric_product(A, B)
    return RhsFactors(
        r_ratio=prod_R / R.r0 ** e,
        h_power=prod_H ** e,
        inverse_vandermonde=invert(vandermonde_product(B)),
        log_derivative=prod_A / (prod_H * prod_R),
    )


def rhs_product(R: RSpec, e: int, N: int) -> LaurentSeries:
    """The branch product through ``q**N``."""
    if N < 1 or e < 1:
        raise ValueError("need e >= 1 and N >= 1")
    total = rhs_factors(R, e, N).product()
    if not total.is_zero and total.valuation < 0:
        raise ConsistencyError(
            f"branch product has a q^{total.valuation} term; the product must be a power series"
        )
    if total.precision < N + 1:
        raise PrecisionError(
            f"branch product only known to O(q^{total.precision}), needed O(q^{N + 1}); "
            f"working t-order was {working_order(e, N)}"
        )
    return total.truncate(N + 1)


def corollary_rhs(R: RSpec, N: int) -> PowerSeries:
    """``(R(H)/R(0)) (1 - H R'(H)/R(H))`` for the single branch ``H = q R(H)``."""
    if N < 1:
        raise ValueError("order must be at least 1")
    H = solve_unramified(R, N + 1)
    Rs = R.series
    RH = compose(Rs, H)
    dRH = compose(derivative(Rs), H)
    out = (RH / R.r0) * (1 - H * dRH / RH)
    return out.truncate(N + 1)


@dataclass(frozen=True)
class VerificationReport:
    r: tuple
    e: int
    order: int
    lhs: tuple
    rhs: tuple
    equal: bool
    first_mismatch: int | None

    def to_dict(self) -> dict:
        return {
            "r": [format_field(c) for c in self.r],
            "e": self.e,
            "order": self.order,
            "lhs": [format_field(c) for c in self.lhs],
            "rhs": [format_field(c) for c in self.rhs],
            "equal": self.equal,
            "first_mismatch": self.first_mismatch,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            r=tuple(to_field(c) for c in data["r"]),
            e=int(data["e"]),
            order=int(data["order"]),
            lhs=tuple(to_field(c) for c in data["lhs"]),
            rhs=tuple(to_field(c) for c in data["rhs"]),
            equal=bool(data["equal"]),
            first_mismatch=data["first_mismatch"],
        )

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))


def verify(R: RSpec, e: int, N: int) -> VerificationReport:
    """Compare both sides coefficientwise for ``q**0 .. q**N``, exactly."""
    lhs = lhs_G(R, e, N).coefficients(0, N + 1)
    rhs = rhs_product(R, e, N).coefficients(0, N + 1)
    mismatch = next((k for k, (a, b) in enumerate(zip(lhs, rhs)) if a != b), None)
    return VerificationReport(
        r=R.coeffs,
        e=e,
        order=N,
        lhs=tuple(lhs),
        rhs=tuple(rhs),
        equal=mismatch is None,
        first_mismatch=mismatch,
    )
