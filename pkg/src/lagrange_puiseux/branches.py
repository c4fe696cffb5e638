"""Branches of ``H**e = q R(H)`` and Lagrange inversion over them.

The ``e`` Newton-Puiseux branches are ``H_k(q) = g(zeta**k t)`` with
``t = q**(1/e)``, where ``g`` is the single series in ``t`` solving
``g = t * rho * (R/r_0)**(1/e)(g)``.  Roots of unity are never formed:
every quantity consumed downstream is symmetric in the branches and is read
off ``g`` through the filter ``sum_k zeta**(k s) = e [e | s]``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .series import (
    INF,
    DomainError,
    LaurentSeries,
    PowerSeries,
    PrecisionError,
    compose,
    derivative,
    invert,
    monomial,
    polynomial,
    pow_rational,
    series_exp,
    series_log,
    to_field,
)

__all__ = [
    "RSpec",
    "PuiseuxBranchSet",
    "rational_root",
    "solve_unramified",
    "solve_ramified_branch",
    "power_sum",
    "power_sums",
    "elementary_symmetric",
    "newton_power_sums",
    "vandermonde_product",
    "hankel_determinant",
    "symmetric_product",
    "gessel_phi_expansion",
    "log_H_over_q",
]


def _iroot(n: int, e: int) -> int | None:
    """Exact integer ``e``-th root of ``n >= 0``, or None."""
    lo, hi = 0, 1
    while hi ** e <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** e <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo if lo ** e == n else None


def rational_root(x: Fraction, e: int) -> Fraction | None:
    """A rational ``y`` with ``y**e == x`` (the positive one when there are two)."""
    x = Fraction(x)
    if x < 0 and e % 2 == 0:
        return None
    num = _iroot(abs(x.numerator), e)
    den = _iroot(x.denominator, e)
    if num is None or den is None:
        return None
    y = Fraction(num, den)
    return -y if x < 0 else y


@dataclass(frozen=True)
class RSpec:
    """The polynomial ``R(z) = r_0 + r_1 z + ... + r_d z^d`` with ``r_0 != 0``.

    ``root`` is the designated ``e``-th root of ``r_0`` used by the ramified
    solver.  Left as None, it resolves to ``r_0`` for ``e == 1`` and to the
    rational ``e``-th root of ``r_0`` otherwise (``1`` when ``r_0 == 1``).
    """

    coeffs: tuple
    root: Fraction | None = None

    def __post_init__(self):
        cs = [to_field(c) for c in self.coeffs]
        while len(cs) > 1 and not cs[-1]:
            cs.pop()
        if not cs or not cs[0]:
            raise ValueError("r_0 must be nonzero")
        object.__setattr__(self, "coeffs", tuple(cs))
        if self.root is not None:
            object.__setattr__(self, "root", to_field(self.root))

    @classmethod
    def parse(cls, text: str, root=None) -> "RSpec":
        """From a comma-separated list such as ``"1,0,1/2"`` (ascending exponents)."""
        return cls(tuple(part for part in text.split(",")), root)

    @property
    def r0(self) -> Fraction:
        return self.coeffs[0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def series(self) -> LaurentSeries:
        return polynomial(self.coeffs)

    def designated_root(self, e: int) -> Fraction:
        if self.root is not None:
            if self.root ** e != self.r0:
                raise ValueError(f"root {self.root} is not an {e}-th root of r_0 = {self.r0}")
            return self.root
        rho = rational_root(self.r0, e)
        if rho is None:
            raise ValueError(f"r_0 = {self.r0} has no rational {e}-th root; pass one explicitly")
        return rho

    def with_root(self, root) -> "RSpec":
        return RSpec(self.coeffs, root)


@dataclass(frozen=True, eq=False)
class PuiseuxBranchSet:
    """The ``e`` branches of ``H**e = q R(H)``, held as one series ``g`` in ``t = q**(1/e)``."""

    e: int
    g: PowerSeries
    working_order: int
    root: Fraction = Fraction(1)
    _powers: list = field(default_factory=list, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    @property
    def q_precision(self) -> int:
        """Power sums are known for ``q**k`` with ``k e < working_order``."""
        return -(-self.working_order // self.e)

    def g_power(self, m: int) -> LaurentSeries:
        """``g**m`` truncated to the working order (cached)."""
        with self._lock:
            pw = self._powers
            if not pw:
                pw.append(LaurentSeries.one())
            while len(pw) <= m:
                pw.append((pw[-1] * self.g).truncate(self.working_order))
            return pw[m]

    def residual(self, R: RSpec) -> LaurentSeries:
        """``g**e - t**e R(g)``; vanishes to the working order for a correct solve."""
        return self.g ** self.e - compose(R.series, self.g).shift(self.e)


def solve_unramified(R: RSpec, N: int) -> PowerSeries:
    """The unique ``H = q R(H)`` with ``H(0) = 0``, through ``q**N``.

    Plain fixed-point iteration ``H <- q R(H)``; each pass fixes at least one
    more coefficient, which the precision tracking records.
    """
    if N < 1:
        raise ValueError("order must be at least 1")
    Rs = R.series
    H = LaurentSeries.zero(1)
    while H.precision < N + 1:
        H = compose(Rs, H).shift(1)
    return H.truncate(N + 1)


def solve_ramified_branch(R: RSpec, e: int, N_t: int) -> PuiseuxBranchSet:
    """Solve ``g = t * rho * (R/r_0)**(1/e)(g)`` to ``O(t**N_t)``.

    Fixed-point iteration; each pass fixes at least one more coefficient.
    """
    if e < 1:
        raise ValueError("ramification index must be positive")
    if N_t < 2:
        raise ValueError("working order must be at least 2")
    rho = R.designated_root(e)
    Rn = R.series / R.r0
    root = Fraction(1, e)
    g = LaurentSeries.zero(1)
    while g.precision < N_t:
        # R(g) is a cheap polynomial evaluation; the e-th root is taken after substitution
        g = pow_rational(compose(Rn, g), root).scale(rho).shift(1)
    return PuiseuxBranchSet(e, g.truncate(N_t), N_t, rho)


def _filter(B: PuiseuxBranchSet, s: LaurentSeries, lo: int, prec: int) -> LaurentSeries:
    """``e * sum_{e | n} [t^n] s * q**(n/e)`` for ``q``-exponents ``lo .. prec-1``."""
    e = B.e
    cs = [e * s[k * e] for k in range(lo, prec)]
    return LaurentSeries._build(cs, lo, prec)


def power_sum(B: PuiseuxBranchSet, m: int, order: int | None = None) -> LaurentSeries:
    """``p_m(q) = sum_k H_k(q)**m`` through the root-of-unity filter."""
    if m < 1:
        raise ValueError("power sums are defined here for m >= 1")
    prec = B.q_precision
    if order is not None:
        if order > prec:
            raise PrecisionError(
                f"power sum requested to O(q^{order}) but working order {B.working_order} "
                f"only supports O(q^{prec})"
            )
        prec = order
    lo = -(-m // B.e)
    if lo >= prec:
        return LaurentSeries.zero(prec)
    return _filter(B, B.g_power(m), lo, prec)


def power_sums(B: PuiseuxBranchSet, M: int, order: int | None = None) -> list:
    """``[p_0, p_1, ..., p_M]`` with ``p_0 = e`` exact."""
    return [LaurentSeries._build([Fraction(B.e)], 0, INF)] + [
        power_sum(B, m, order) for m in range(1, M + 1)
    ]


def _newton_elementary(p: Sequence[LaurentSeries], e: int) -> list:
    # k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} p_i
    el = [LaurentSeries.one()]
    for k in range(1, e + 1):
        acc = LaurentSeries.zero()
        for i in range(1, k + 1):
            term = el[k - i] * p[i]
            acc = acc + term if i % 2 else acc - term
        el.append(acc / k)
    return el[1:]


def elementary_symmetric(B: PuiseuxBranchSet, order: int | None = None) -> list:
    """``[e_1, ..., e_e]`` with ``prod_k (y - H_k) = y**e - e_1 y**(e-1) + ...``."""
    p = power_sums(B, B.e, order)
    return _newton_elementary(p, B.e)


def newton_power_sums(el: Sequence[LaurentSeries], M: int) -> list:
    """Power sums ``p_1 .. p_M`` regenerated from elementary symmetric functions.

    ``p_m = sum_{i=1}^{min(m,e)} (-1)^(i-1) e_i p_{m-i}`` with ``p_0 = e``
    absorbed as ``m e_m`` when ``i = m``.
    """
    e = len(el)
    E = [None] + list(el)
    p = [LaurentSeries._build([Fraction(e)], 0, INF)]
    for m in range(1, M + 1):
        acc = LaurentSeries.zero()
        for i in range(1, min(m, e) + 1):
            term = E[i] * m if i == m else E[i] * p[m - i]
            acc = acc + term if i % 2 else acc - term
        p.append(acc)
    return p[1:]


def hankel_determinant(M: list) -> LaurentSeries:
    """Determinant of a square matrix of series by fraction-free elimination.

    Bareiss's update ``(a_kk a_ij - a_ik a_kj) / pivot_prev`` keeps every
    entry a minor of the input; the pivot in each column is the entry of
    lowest valuation.
    """
    n = len(M)
    A = [list(row) for row in M]
    sign = 1
    prev = LaurentSeries.one()
    for k in range(n - 1):
        piv = min(range(k, n), key=lambda i: A[i][k].valuation)
        if A[piv][k].is_zero:
            raise PrecisionError("matrix is singular to the working precision")
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (akk * A[i][j] - A[i][k] * A[k][j]) / prev
        prev = akk
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def vandermonde_product(B: PuiseuxBranchSet, order: int | None = None) -> LaurentSeries:
    """``prod_{i != j} (H_j - H_i)`` over ordered pairs.

    Computed as ``(-1)**(e(e-1)/2)`` times the Hankel determinant of power
    sums ``det[p_{i+j}]``, ``0 <= i, j < e``.
    """
    e = B.e
    if e == 1:
        return LaurentSeries.one()
    p = power_sums(B, 2 * e - 2, order)
    det = hankel_determinant([[p[i + j] for j in range(e)] for i in range(e)])
    return -det if (e * (e - 1) // 2) % 2 else det


def symmetric_product(A: LaurentSeries, B: PuiseuxBranchSet, order: int | None = None) -> LaurentSeries:
    """``prod_k A(H_k)`` for a series ``A`` with nonzero constant term.

    Uses ``a_0**e * exp(sum_m c_m p_m)`` where ``log(A/a_0) = sum_m c_m y**m``;
    ``p_m`` has ``q``-valuation at least ``ceil(m/e)`` so the sum is finite to
    any fixed order.
    """
    if A.is_zero or A.valuation != 0:
        raise DomainError("symmetric_product needs A(0) != 0; factor out powers of y first")
    e = B.e
    a0 = A[0]
    P = B.q_precision
    if A.precision != INF:
        P = min(P, -(-A.precision // e))
    if order is not None:
        if order > P:
            raise PrecisionError(f"symmetric product requested to O(q^{order}) but only O(q^{P}) is available")
        P = order
    if P <= 0:
        return LaurentSeries.zero(P)
    M = e * (P - 1)
    logA = series_log(A / a0, precision=M + 1)
    S = LaurentSeries.zero(P)
    for m in range(1, M + 1):
        c = logA[m]
        if c:
            S = S + power_sum(B, m, P).scale(c)
    return series_exp(S).scale(a0 ** e)


def gessel_phi_expansion(phi: LaurentSeries, R: RSpec, e: int, N: int) -> LaurentSeries:
    """``sum_k phi(H_k(x))`` by coefficient extraction alone, through ``x**N``.

    Evaluates ``e phi_0 + [t^-1]{phi'(t) log R(t)}
    + sum_{n != 0} (1/n) [t^(ne-1)]{phi'(t) R(t)**n} x**n``.  The constant
    ``log r_0`` never contributes because ``phi'`` has no ``t**-1`` term, so
    ``log(R/r_0)`` is used.  No branch is solved.
    """
    if not phi.is_exact:
        raise ValueError("phi must be a finite Laurent polynomial")
    if e < 1 or N < 1:
        raise ValueError("need e >= 1 and N >= 1")
    Rs = R.series
    dphi = derivative(phi)
    v = phi.valuation if not phi.is_zero else 0
    lo = min(0, -(-v // e))  # most negative n with a possibly nonzero term
    coeffs = {}
    coeffs[0] = e * phi[0]
    if not dphi.is_zero and dphi.valuation < 0:
        logR = series_log(Rs / R.r0, precision=-dphi.valuation)
        coeffs[0] += (dphi * logR)[-1]
    if not dphi.is_zero:
        Rn = LaurentSeries.one()
        for n in range(1, N + 1):
            Rn = Rn * Rs
            coeffs[n] = (dphi * Rn)[n * e - 1] / n
        if lo < 0:
            # [t^(ne-1)] needs R**n through t**(ne-1 - val(phi'))
            Rinv = invert(Rs, precision=-lo * e)
            Rn = LaurentSeries.one()
            for n in range(-1, lo - 1, -1):
                Rn = (Rn * Rinv).truncate(-lo * e)
                coeffs[n] = (dphi * Rn)[n * e - 1] / n
    cs = [coeffs.get(n, Fraction(0)) for n in range(lo, N + 1)]
    return LaurentSeries._build(cs, lo, N + 1)


def log_H_over_q(R: RSpec, e: int, N: int) -> PowerSeries:
    """``sum_{m=1}^N (1/m) [t^(me)]{R**m} q**m``."""
    if N < 1:
        raise ValueError("order must be at least 1")
    Rs = R.series
    cs = [Fraction(0)]
    Rm = LaurentSeries.one()
    for m in range(1, N + 1):
        Rm = (Rm * Rs).truncate(N * e + 1)
        cs.append(Rm[m * e] / m)
    return LaurentSeries._build(cs, 0, N + 1)
