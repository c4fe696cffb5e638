"""Truncated formal Laurent and power series with exact rational coefficients.

Truncation is *absolute*: a series carries a precision ``p`` and every
coefficient of ``z**n`` with ``n >= p`` is unknown (not zero).  Reading such a
coefficient raises :class:`PrecisionError`.  Exact (polynomial) series use
``precision = math.inf``.

Every operation propagates precision conservatively, so a result never claims
to know more than its inputs determine.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "INF",
    "FieldElement",
    "SeriesError",
    "PrecisionError",
    "SeriesZeroDivisionError",
    "DomainError",
    "CompositionError",
    "NormalizationError",
    "LaurentSeries",
    "PowerSeries",
    "to_field",
    "format_field",
    "polynomial",
    "laurent_polynomial",
    "monomial",
    "coeff_extract",
    "invert",
    "compose",
    "derivative",
    "series_log",
    "series_exp",
    "pow_rational",
]

INF = math.inf

FieldElement = Fraction
Scalar = Union[int, Fraction]


class SeriesError(ArithmeticError):
    """Base class for series arithmetic failures."""


class PrecisionError(SeriesError):
    """A coefficient beyond the tracked truncation bound was requested."""


class SeriesZeroDivisionError(SeriesError, ZeroDivisionError):
    pass


class DomainError(SeriesError, ValueError):
    pass


class CompositionError(DomainError):
    pass


class NormalizationError(DomainError):
    pass


def to_field(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"3"``, ``"-1/2"`` (a
    typographic minus sign is tolerated).  Floats are rejected: they would
    smuggle rounding into an exact computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not field elements")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in rational literal {value!r}") from None
        except ValueError:
            raise ValueError(f"malformed rational literal {value!r}") from None
    raise TypeError(f"cannot use {type(value).__name__} as an exact field element")


def format_field(value: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` for integers)."""
    return str(Fraction(value))


def _integral(cs):
    """``(numerators, d)`` with ``cs[i] == numerators[i] / d``."""
    d = 1
    for c in cs:
        if c.denominator != 1:
            d = math.lcm(d, c.denominator)
    if d == 1:
        return [c.numerator for c in cs], 1
    return [c.numerator * (d // c.denominator) for c in cs], d


class LaurentSeries:
    """A truncated Laurent series ``sum_{n >= valuation} c_n z**n + O(z**precision)``.

    Stored terms start at the valuation (the first nonzero coefficient) and
    trailing zeros are dropped; coefficients between the last stored term and
    the precision are zero.  The zero series has ``valuation == precision``.
    """

    __slots__ = ("_val", "_coeffs", "_prec")

    def __init__(self, coeffs: Iterable = (), valuation: int = 0, precision=INF):
        if precision != INF and not isinstance(precision, int):
            raise TypeError("precision must be an int or math.inf")
        self._set([to_field(c) for c in coeffs], valuation, precision)

    def _set(self, cs: list, valuation, precision) -> None:
        if precision != INF:
            del cs[max(0, precision - valuation):]
        lead = 0
        while lead < len(cs) and not cs[lead]:
            lead += 1
        end = len(cs)
        while end > lead and not cs[end - 1]:
            end -= 1
        if lead == end:
            self._val = precision
            self._coeffs = ()
        else:
            self._val = valuation + lead
            self._coeffs = tuple(cs[lead:end])
        self._prec = precision

    @classmethod
    def _build(cls, cs: list, valuation, precision) -> "LaurentSeries":
        # cs must already hold Fractions
        obj = object.__new__(PowerSeries)
        obj._set(cs, valuation, precision)
        if obj._val < 0:
            obj.__class__ = LaurentSeries
        return obj

    @classmethod
    def zero(cls, precision=INF) -> "LaurentSeries":
        return cls._build([], 0 if precision == INF else precision, precision)

    @classmethod
    def one(cls) -> "LaurentSeries":
        return cls._build([Fraction(1)], 0, INF)

    # -- inspection ------------------------------------------------------

    @property
    def valuation(self):
        return self._val

    @property
    def precision(self):
        return self._prec

    @property
    def terms(self) -> tuple:
        """Stored coefficients, starting at the valuation."""
        return self._coeffs

    @property
    def is_exact(self) -> bool:
        return self._prec == INF

    @property
    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self._coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self._coeffs:
            raise SeriesZeroDivisionError("zero series has no leading coefficient")
        return self._coeffs[0]

    @property
    def degree(self):
        """Exponent of the last stored nonzero term."""
        if not self._coeffs:
            return -INF
        return self._val + len(self._coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n >= self._prec:
            raise PrecisionError(
                f"coefficient of z^{n} requested but series is only known to O(z^{self._prec})"
            )
        i = n - self._val
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return Fraction(0)

    def coefficients(self, start=None, stop=None) -> list:
        """Dense coefficient list for exponents ``start .. stop-1``.

        Defaults run from ``min(0, valuation)`` to the precision; exact series
        default to their last stored term.
        """
        if start is None:
            if self._coeffs:
                start = min(0, self._val)
            else:
                start = min(0, self._prec) if self._prec != INF else 0
        if stop is None:
            stop = self._prec if self._prec != INF else max(start, self.degree + 1)
        if stop > self._prec:
            raise PrecisionError(
                f"coefficients up to z^{stop - 1} requested but series is only known to O(z^{self._prec})"
            )
        return self._dense(start, stop)

    def _dense(self, start: int, stop: int) -> list:
        zero = Fraction(0)
        out = [zero] * max(0, stop - start)
        cs = self._coeffs
        if not cs:
            return out
        lo = max(start, self._val)
        hi = min(stop, self._val + len(cs))
        for n in range(lo, hi):
            out[n - start] = cs[n - self._val]
        return out

    def truncate(self, precision) -> "LaurentSeries":
        """Forget everything from ``z**precision`` on."""
        if precision >= self._prec:
            return self
        return self._build(list(self._coeffs), self._val if self._coeffs else precision, precision)

    def agrees_with(self, other: "LaurentSeries", order: int) -> bool:
        """Equality to order ``order``: both known below it and coefficients equal."""
        if self._prec < order or other._prec < order:
            return False
        lo = min(self._val, other._val, 0)
        return self._dense(lo, order) == other._dense(lo, order)

    # -- ring structure --------------------------------------------------

    @staticmethod
    def _coerce(other) -> "LaurentSeries | None":
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentSeries._build([Fraction(other)], 0, INF)
        return None

    def __add__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        a = self
        prec = min(a._prec, b._prec)
        if a.is_zero and b.is_zero:
            return self._build([], prec, prec)
        starts = [v for v in (a._val, b._val) if v < prec]
        if not starts:
            return self._build([], prec, prec)
        lo = min(starts)
        hi = max(a.degree, b.degree) + 1
        if prec != INF:
            hi = min(hi, prec)
        cs = a._dense(lo, hi)
        bv = b._val
        for i, c in enumerate(b._coeffs):
            n = bv + i - lo
            if n >= len(cs):
                break
            if n >= 0:
                cs[n] += c
        return self._build(cs, lo, prec)

    __radd__ = __add__

    def __neg__(self):
        return self._build([-c for c in self._coeffs], self._val, self._prec)

    def __pos__(self):
        return self

    def __sub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b + (-self)

    def scale(self, c) -> "LaurentSeries":
        c = to_field(c)
        if not c:
            return self._build([], self._prec, self._prec)
        return self._build([c * x for x in self._coeffs], self._val, self._prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by ``z**k``."""
        if not self._coeffs:
            return self._build([], self._prec + k, self._prec + k)
        return self._build(list(self._coeffs), self._val + k, self._prec + k)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        a, b = self, other
        # known-to precision of a product: each factor's error times the other's lowest term
        prec = min(a._prec + b._val, b._prec + a._val)
        if a.is_zero or b.is_zero:
            return self._build([], prec, prec)
        val = a._val + b._val
        n = len(a._coeffs) + len(b._coeffs) - 1
        if prec != INF:
            n = min(n, prec - val)
        if n <= 0:
            return self._build([], prec, prec)
        # convolve integer numerators over a common denominator; Fraction arithmetic is ~20x slower
        ac, da = _integral(a._coeffs)
        bc, db = _integral(b._coeffs)
        la, lb = len(ac), len(bc)
        den = da * db
        out = []
        for k in range(n):
            lo = max(0, k - lb + 1)
            hi = min(k, la - 1)
            s = 0
            for i in range(lo, hi + 1):
                s += ac[i] * bc[k - i]
            out.append(Fraction(s, den))
        return self._build(out, val, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise SeriesZeroDivisionError("division of a series by zero")
            return self.scale(Fraction(1) / other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self * invert(other)

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return b * invert(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else invert(self)
        n = abs(n)
        result = LaurentSeries.one()
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison & display -------------------------------------------

    def __eq__(self, other):
        b = self._coerce(other)
        if b is None:
            return NotImplemented
        return (self._val, self._coeffs, self._prec) == (b._val, b._coeffs, b._prec)

    def __hash__(self):
        return hash((self._val, self._coeffs, self._prec))

    def __repr__(self):
        return (
            f"{type(self).__name__}({[format_field(c) for c in self._coeffs]!r}, "
            f"valuation={self._val!r}, precision={self._prec!r})"
        )

    def format(self, var: str = "z") -> str:
        parts = []
        for i, c in enumerate(self._coeffs):
            if not c:
                continue
            n = self._val + i
            mag = abs(c)
            if n == 0:
                body = format_field(mag)
            else:
                power = var if n == 1 else f"{var}^{n}"
                body = power if mag == 1 else f"{format_field(mag)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if parts:
            text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
            text += "".join(f" {s} {b}" for s, b in parts[1:])
        else:
            text = "0"
        if self._prec != INF:
            text += f" + O({var}^{self._prec})"
        return text

    __str__ = format

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        """``{"valuation", "precision", "coeffs"}``; exact series use ``null`` precision.

        ``coeffs`` is dense from the valuation upward, as ``"p/q"`` strings.
        """
        val = self._val
        if val == INF:
            val = None
        return {
            "valuation": val,
            "precision": None if self._prec == INF else self._prec,
            "coeffs": [format_field(c) for c in self._coeffs]
            if self._prec == INF
            else [format_field(c) for c in self._dense(self._val, self._prec)] if self._coeffs else [],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentSeries":
        prec = INF if data.get("precision") is None else int(data["precision"])
        val = data.get("valuation")
        val = 0 if val is None else int(val)
        return cls._build([to_field(c) for c in data.get("coeffs", [])], val, prec)


class PowerSeries(LaurentSeries):
    """A :class:`LaurentSeries` with no negative exponents.

    Results of arithmetic come back as ``PowerSeries`` whenever their
    valuation is nonnegative.
    """

    __slots__ = ()

    def __init__(self, coeffs: Iterable = (), precision=INF, valuation: int = 0):
        super().__init__(coeffs, valuation, precision)
        if self._val < 0:
            raise ValueError("a power series cannot have negative exponents")

    @property
    def order(self):
        return self._prec


# -- constructors -------------------------------------------------------


def polynomial(coeffs: Sequence, precision=INF) -> LaurentSeries:
    """Series ``sum coeffs[n] z**n`` (exact unless ``precision`` is given)."""
    return LaurentSeries._build([to_field(c) for c in coeffs], 0, precision)


def laurent_polynomial(coeffs: Sequence, valuation: int) -> LaurentSeries:
    """Exact finite Laurent series starting at ``z**valuation``."""
    return LaurentSeries._build([to_field(c) for c in coeffs], valuation, INF)


def monomial(n: int, c=1) -> LaurentSeries:
    return LaurentSeries._build([to_field(c)], n, INF)


# -- operations ---------------------------------------------------------


def coeff_extract(a: LaurentSeries, n: int) -> Fraction:
    """The coefficient ``[z^n] a``; zero below the valuation."""
    return a[n]


def _cap(prec, precision):
    if precision is not None:
        prec = min(prec, precision)
    return prec


def invert(a: LaurentSeries, precision=None) -> LaurentSeries:
    """Multiplicative inverse.

    The relative precision (``precision - valuation``) of ``a`` is preserved.
    Inverting an exact series with more than one term needs an explicit
    ``precision`` because the result is an infinite series.
    """
    if a.is_zero:
        raise SeriesZeroDivisionError("cannot invert a series that is zero to its precision")
    v = a.valuation
    cs = a.terms
    c0 = cs[0]
    if len(cs) == 1 and a.is_exact:
        return LaurentSeries._build([1 / c0], -v, INF)
    prec = _cap(-v + (a.precision - v), precision)
    if prec == INF:
        raise PrecisionError("inverse of a non-monomial exact series needs an explicit precision")
    n = prec + v
    if n <= 0:
        return LaurentSeries._build([], prec, prec)
    inv0 = 1 / c0
    out = [inv0]
    lc = len(cs)
    for k in range(1, n):
        s = 0
        for i in range(1, min(k, lc - 1) + 1):
            s += cs[i] * out[k - i]
        out.append(-s * inv0)
    return LaurentSeries._build(out, -v, prec)


def compose(a: LaurentSeries, b: LaurentSeries, precision=None) -> LaurentSeries:
    """Substitute ``b`` for the variable of ``a``: ``a(b(z))``.

    ``b`` must have zero constant term.  Negative powers of ``a`` need ``b``
    to be nonzero to its precision.
    """
    if not b.is_zero and b.valuation < 1:
        raise CompositionError("inner series must have zero constant term")
    if b.is_zero and b.precision < 1:
        raise CompositionError("inner series is not known to have zero constant term")
    if a.is_zero:
        if a.precision == INF:
            return LaurentSeries.zero()
        if a.precision <= 0 and b.is_zero:
            raise CompositionError("cannot bound a negative-order remainder at a zero inner series")
        w = b.valuation
        return LaurentSeries.zero(_cap(a.precision * w, precision))
    v = a.valuation
    if v < 0 and b.is_zero:
        raise CompositionError("negative powers of an inner series that is zero to its precision")
    w = b.valuation
    rb = b.precision - w if not b.is_zero else 0
    kmin = next((v + i for i, c in enumerate(a.terms) if c and v + i != 0), None)
    bounds = []
    if a.precision != INF:
        bounds.append(a.precision * w)
    if kmin is not None and rb != INF:
        bounds.append(kmin * w + rb)
    prec = _cap(min(bounds, default=INF), precision)

    if b.is_zero:
        return LaurentSeries._build([a[0]], 0, prec)

    inner_prec = prec - v * w if prec != INF else INF
    cs = a.terms
    if inner_prec != INF:
        # c_k b^k with k w >= prec cannot reach the result
        cs = cs[: max(1, -(-inner_prec // w))]
    acc = LaurentSeries._build([cs[-1]], 0, INF)
    for c in reversed(cs[:-1]):
        acc = (acc * b).truncate(inner_prec) + c
    if a.precision != INF:
        acc = acc.truncate((a.precision - v) * w)
    if v == 0:
        return acc.truncate(prec)
    if v > 0:
        bv = b ** v
    else:
        rel = prec - v * w if prec != INF else None
        binv = invert(b, None if rel is None else -w + rel)
        bv = binv ** (-v)
    return (bv * acc).truncate(prec)


def derivative(a: LaurentSeries) -> LaurentSeries:
    """Termwise derivative; precision drops by one."""
    prec = a.precision - 1
    if a.is_zero:
        return LaurentSeries._build([], prec, prec)
    v = a.valuation
    out = [c * (v + i) for i, c in enumerate(a.terms)]
    return LaurentSeries._build(out, v - 1, prec)


def _require_unit_one(a: LaurentSeries, what: str) -> None:
    if a.is_zero or a.valuation != 0 or a.terms[0] != 1:
        raise NormalizationError(f"{what} requires valuation 0 and constant term 1")


def series_log(a: LaurentSeries, precision=None) -> PowerSeries:
    """``log(a)`` for ``a = 1 + O(z)``, via ``n b_n = n a_n - sum k b_k a_{n-k}``."""
    _require_unit_one(a, "series_log")
    prec = _cap(a.precision, precision)
    if prec == INF:
        if len(a.terms) == 1:
            return LaurentSeries.zero()
        raise PrecisionError("log of a non-constant exact series needs an explicit precision")
    ac = a._dense(0, prec)
    b = [Fraction(0)] * max(prec, 1)
    for n in range(1, prec):
        s = n * ac[n]
        for k in range(1, n):
            s -= k * b[k] * ac[n - k]
        b[n] = s / n
    return LaurentSeries._build(b[:prec], 0, prec)


def series_exp(a: LaurentSeries, precision=None) -> PowerSeries:
    """``exp(a)`` for ``a`` with zero constant term, via ``n b_n = sum k a_k b_{n-k}``."""
    if not a.is_zero and a.valuation < 1:
        raise DomainError("series_exp requires zero constant term")
    if a.is_zero and a.precision < 1:
        raise DomainError("series_exp requires a known zero constant term")
    prec = _cap(a.precision, precision)
    if prec == INF:
        if a.is_zero:
            return LaurentSeries.one()
        raise PrecisionError("exp of a nonzero exact series needs an explicit precision")
    ac = a._dense(0, prec)
    b = [Fraction(1)] + [Fraction(0)] * (prec - 1)
    for n in range(1, prec):
        s = 0
        for k in range(1, n + 1):
            if ac[k]:
                s += k * ac[k] * b[n - k]
        b[n] = Fraction(s) / n
    return LaurentSeries._build(b, 0, prec)


def pow_rational(a: LaurentSeries, r, precision=None) -> PowerSeries:
    """``a**r`` for rational ``r``.

    Non-integer exponents need ``a = 1 + O(z)`` and use the recurrence
    ``n b_n = sum ((r+1)k - n) a_k b_{n-k}``.  Integer exponents fall back
    to repeated multiplication (and :func:`invert` when negative).
    """
    r = to_field(r)
    if r.denominator == 1:
        k = int(r)
        if k >= 0:
            res = a ** k
        else:
            res = invert(a ** (-k), precision)
        return res.truncate(precision) if precision is not None else res
    _require_unit_one(a, "pow_rational")
    prec = _cap(a.precision, precision)
    if prec == INF:
        if len(a.terms) == 1:
            return LaurentSeries.one()
        raise PrecisionError("fractional power of a non-constant exact series needs an explicit precision")
    ac = a._dense(0, prec)
    b = [Fraction(1)] + [Fraction(0)] * (prec - 1)
    rp1 = r + 1
    for n in range(1, prec):
        s = Fraction(0)
        for k in range(1, n + 1):
            if ac[k]:
                s += (rp1 * k - n) * ac[k] * b[n - k]
        b[n] = s / n
    return LaurentSeries._build(b, 0, prec)
