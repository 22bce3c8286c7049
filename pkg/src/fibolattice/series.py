"""
Exact truncated power series in x with polynomial-in-y coefficients.

A TruncatedSeries of order N knows the coefficients of x^0 .. x^(N-1)
exactly; everything from x^N on is unknown. Binary operations therefore
return the smaller of the two operand orders. Coefficients are YPolynomial
values over Fraction, so divisions and square roots stay exact; counting
series are read back with ``to_counts``, which refuses non-integral values.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from math import comb

from fibolattice.errors import BadConstantTermError, NonUnitDenominatorError

Scalar = int | Fraction


class YPolynomial:
    """Sparse polynomial in y with Fraction coefficients and no stored zeros."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Scalar] | Scalar | None = None) -> None:
        if terms is None:
            terms = {}
        elif not isinstance(terms, Mapping):
            terms = {0: terms}
        cleaned: dict[int, Fraction] = {}
        for exponent, value in terms.items():
            if exponent < 0:
                raise ValueError(f"Negative y exponent {exponent}")
            if value:
                cleaned[exponent] = Fraction(value)
        self._terms = cleaned

    @classmethod
    def monomial(cls, exponent: int, value: Scalar = 1) -> YPolynomial:
        return cls({exponent: value})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(sorted(self._terms.items()))

    @property
    def degree(self) -> int:
        return max(self._terms, default=-1)

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def is_constant(self) -> bool:
        return all(exponent == 0 for exponent in self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = YPolynomial(other)
        if not isinstance(other, YPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> YPolynomial:
        return YPolynomial({k: -v for k, v in self._terms.items()})

    def __add__(self, other: YPolynomial | Scalar) -> YPolynomial:
        other = _as_poly(other)
        result = dict(self._terms)
        for exponent, value in other._terms.items():
            result[exponent] = result.get(exponent, 0) + value
        return YPolynomial(result)

    __radd__ = __add__

    def __sub__(self, other: YPolynomial | Scalar) -> YPolynomial:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> YPolynomial:
        return _as_poly(other) - self

    def __mul__(self, other: YPolynomial | Scalar) -> YPolynomial:
        if isinstance(other, int | Fraction):
            return YPolynomial({k: v * other for k, v in self._terms.items()})
        result: dict[int, Fraction] = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                result[i + j] = result.get(i + j, 0) + a * b
        return YPolynomial(result)

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> YPolynomial:
        return self * Fraction(factor)

    def deriv(self) -> YPolynomial:
        return YPolynomial({k - 1: k * v for k, v in self._terms.items() if k})

    def evaluate(self, value: Scalar) -> Fraction:
        value = Fraction(value)
        return sum((v * value**k for k, v in self._terms.items()), Fraction(0))

    def shift(self) -> YPolynomial:
        """Substitute y -> 1 + y."""
        result: dict[int, Fraction] = {}
        for k, v in self._terms.items():
            for j in range(k + 1):
                result[j] = result.get(j, 0) + v * comb(k, j)
        return YPolynomial(result)

    def to_counts(self) -> dict[int, int]:
        """Integer coefficients keyed by y exponent; raises on fractions."""
        counts = {}
        for exponent, value in sorted(self._terms.items()):
            if value.denominator != 1:
                raise ArithmeticError(f"Coefficient {value} of y^{exponent} is not an integer")
            counts[exponent] = int(value)
        return counts

    def format_sparse(self) -> str:
        """Space separated ``k:c`` pairs; the zero polynomial prints as ``0:0``."""
        if not self._terms:
            return "0:0"
        return " ".join(f"{k}:{v}" for k, v in sorted(self._terms.items()))

    def __repr__(self) -> str:
        return f"YPolynomial({self.format_sparse()})"


ZERO = YPolynomial()
ONE = YPolynomial(1)


def _as_poly(value: YPolynomial | Scalar) -> YPolynomial:
    return value if isinstance(value, YPolynomial) else YPolynomial(value)


class TruncatedSeries:
    """Power series in x known exactly below ``order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[YPolynomial | Scalar], order: int) -> None:
        if order < 0:
            raise ValueError(f"Series order must be non-negative, got {order}")
        padded = [_as_poly(c) for c in coeffs][:order]
        padded.extend(ZERO for _ in range(order - len(padded)))
        self.order = order
        self.coeffs: tuple[YPolynomial, ...] = tuple(padded)

    # --- construction ---
    @classmethod
    def constant(cls, value: YPolynomial | Scalar, order: int) -> TruncatedSeries:
        return cls([value], order)

    @classmethod
    def x_power(cls, exponent: int, order: int, value: YPolynomial | Scalar = 1) -> TruncatedSeries:
        coeffs = [ZERO] * exponent + [_as_poly(value)]
        return cls(coeffs, order)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], Scalar], order: int) -> TruncatedSeries:
        """Polynomial in x and y given as {(x exponent, y exponent): coefficient}."""
        grouped: dict[int, dict[int, Scalar]] = {}
        for (x_exp, y_exp), value in terms.items():
            row = grouped.setdefault(x_exp, {})
            row[y_exp] = row.get(y_exp, 0) + value
        coeffs = [YPolynomial(grouped.get(k, {})) for k in range(order)]
        return cls(coeffs, order)

    # --- inspection ---
    def coefficient(self, n: int) -> YPolynomial:
        if not 0 <= n < self.order:
            raise IndexError(f"Coefficient x^{n} is unknown at order {self.order}")
        return self.coeffs[n]

    def __getitem__(self, n: int) -> YPolynomial:
        return self.coefficient(n)

    def __iter__(self) -> Iterator[YPolynomial]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return self.order

    def valuation(self) -> int:
        """Index of the first nonzero coefficient (``order`` if none is known)."""
        return next((k for k, c in enumerate(self.coeffs) if c), self.order)

    def truncate(self, order: int) -> TruncatedSeries:
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def counts(self, n: int) -> dict[int, int]:
        return self.coefficient(n).to_counts()

    def integer_coefficients(self) -> list[int]:
        """Coefficients of a y-free counting series as plain integers."""
        values = []
        for n, coefficient in enumerate(self.coeffs):
            if not coefficient.is_constant():
                raise ArithmeticError(f"Coefficient of x^{n} depends on y")
            values.append(coefficient.to_counts().get(0, 0))
        return values

    # --- arithmetic ---
    def _coerce(self, other: TruncatedSeries | YPolynomial | Scalar) -> TruncatedSeries:
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __add__(self, other: TruncatedSeries | YPolynomial | Scalar) -> TruncatedSeries:
        other = self._coerce(other)
        order = min(self.order, other.order)
        return TruncatedSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(order)], order
        )

    __radd__ = __add__

    def __sub__(self, other: TruncatedSeries | YPolynomial | Scalar) -> TruncatedSeries:
        return self + (-self._coerce(other))

    def __rsub__(self, other: YPolynomial | Scalar) -> TruncatedSeries:
        return self._coerce(other) - self

    def __mul__(self, other: TruncatedSeries | YPolynomial | Scalar) -> TruncatedSeries:
        if isinstance(other, int | Fraction | YPolynomial):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        order = min(self.order, other.order)
        result = [ZERO] * order
        right = [(j, c) for j, c in enumerate(other.coeffs[:order]) if c]
        for i, a in enumerate(self.coeffs[:order]):
            if not a:
                continue
            for j, b in right:
                if i + j >= order:
                    break
                result[i + j] = result[i + j] + a * b
        return TruncatedSeries(result, order)

    __rmul__ = __mul__

    def __truediv__(self, other: TruncatedSeries | YPolynomial | Scalar) -> TruncatedSeries:
        return div(self, self._coerce(other))

    def __rtruediv__(self, other: YPolynomial | Scalar) -> TruncatedSeries:
        return div(self._coerce(other), self)

    def __pow__(self, exponent: int) -> TruncatedSeries:
        if exponent < 0:
            return div(TruncatedSeries.constant(1, self.order), self**-exponent)
        result = TruncatedSeries.constant(1, self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # --- coefficient-wise operations in y ---
    def map_coefficients(self, func) -> TruncatedSeries:
        return TruncatedSeries([func(c) for c in self.coeffs], self.order)

    def __repr__(self) -> str:
        shown = ", ".join(c.format_sparse() for c in self.coeffs[:6])
        more = ", ..." if self.order > 6 else ""
        return f"TruncatedSeries(order={self.order}: [{shown}{more}])"


def x_series(order: int) -> TruncatedSeries:
    """The series x itself."""
    return TruncatedSeries.x_power(1, order)


def y_series(order: int) -> TruncatedSeries:
    """The constant series y."""
    return TruncatedSeries.constant(YPolynomial.monomial(1), order)


def add(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s + t


def sub(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s - t


def mul(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    return s * t


def div(s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """
    Quotient s / t.

    Leading zeros of t are cancelled against leading zeros of s (each one
    costs a unit of order); the remaining constant term of t must be a
    nonzero y-free number.
    """
    shift = t.valuation()
    if shift >= t.order:
        raise NonUnitDenominatorError("Division by a series with no known nonzero term")
    if any(s.coeffs[k] for k in range(min(shift, s.order))):
        raise NonUnitDenominatorError(
            f"Numerator has valuation {s.valuation()} below the denominator's {shift}"
        )
    order = min(s.order, t.order) - shift
    numerator = s.coeffs[shift : shift + order]
    denominator = t.coeffs[shift : shift + order]
    lead = denominator[0]
    if not lead.is_constant():
        raise NonUnitDenominatorError(
            f"Denominator constant term {lead.format_sparse()} depends on y"
        )
    inverse = 1 / lead.coefficient(0)
    nonzero = [(j, c) for j, c in enumerate(denominator) if c and j]
    quotient: list[YPolynomial] = []
    for k in range(order):
        acc = numerator[k]
        for j, c in nonzero:
            if j > k:
                break
            acc = acc - c * quotient[k - j]
        quotient.append(acc * inverse)
    return TruncatedSeries(quotient, order)


def sqrt(s: TruncatedSeries) -> TruncatedSeries:
    """Square root with constant term +1, by Newton iteration r <- (r + s/r) / 2."""
    if s.order == 0:
        return s
    if s.coeffs[0] != ONE:
        raise BadConstantTermError(
            f"Square root needs constant term 1, got {s.coeffs[0].format_sparse()}"
        )
    root = TruncatedSeries.constant(1, 1)
    precision = 1
    half = Fraction(1, 2)
    while precision < s.order:
        precision = min(2 * precision, s.order)
        # zero padding; Newton doubles the number of correct terms
        root = TruncatedSeries(root.coeffs, precision)
        root = (root + div(s.truncate(precision), root)) * half
    return root


def deriv_y(s: TruncatedSeries) -> TruncatedSeries:
    return s.map_coefficients(YPolynomial.deriv)


def eval_y(s: TruncatedSeries, value: Scalar) -> TruncatedSeries:
    return s.map_coefficients(lambda c: YPolynomial(c.evaluate(value)))


def subst_y_shift(s: TruncatedSeries) -> TruncatedSeries:
    """Substitute y -> 1 + y in every coefficient."""
    return s.map_coefficients(YPolynomial.shift)
