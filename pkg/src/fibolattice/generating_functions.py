"""
Closed-form generating functions of the F_n^p lattices.

Every function returns a TruncatedSeries of the requested order whose
coefficient of x^n y^k counts the objects of semilength n with statistic k:

- gf_F: elements by number of upper covers
- gf_B: boolean intervals by height
- gf_L: linear intervals by height
- gf_I, gf_J: all intervals of F^inf and F^2 by first ascent gap
- gf_coverings, gf_meet_irreducible, gf_family: univariate totals
"""

from collections.abc import Callable
from fractions import Fraction
from math import comb

from fibolattice.dyckpath import family_size
from fibolattice.errors import InvalidInputError
from fibolattice.family import FamilyParam, PLike
from fibolattice.series import (
    TruncatedSeries,
    deriv_y,
    eval_y,
    sqrt,
    x_series,
    y_series,
)


def _check_order(order: int) -> None:
    if order < 1:
        raise InvalidInputError(f"Series order must be positive, got {order}")


def _geometric_block(start: int, stop: int, order: int) -> TruncatedSeries:
    """x^start + ... + x^stop (empty sum when stop < start)."""
    return TruncatedSeries.from_terms({(k, 0): 1 for k in range(start, stop + 1)}, order)


def g_polynomial(p: int, order: int) -> TruncatedSeries:
    """G_p(x) = 1 - x - x^2 - ... - x^p."""
    return 1 - _geometric_block(1, p, order)


def gf_family(p: PLike, order: int) -> TruncatedSeries:
    """|F_n^p| by semilength."""
    _check_order(order)
    family = FamilyParam.of(p)
    x = x_series(order)
    if family.bound is None:
        return (1 - x) / (1 - 2 * x)
    return 1 / g_polynomial(family.bound, order)


def gf_F(p: PLike, order: int) -> TruncatedSeries:
    """Elements of F_n^p with y marking the number of upper covers."""
    _check_order(order)
    family = FamilyParam.of(p)
    x, y = x_series(order), y_series(order)
    if family.bound is None:
        return (1 - x) / (1 - 2 * x + (1 - y) * x**2)
    q = family.bound
    numerator = (1 - x) * (1 + (y - 1) * x**q)
    denominator = (
        1 - 2 * x + x ** (q + 1) - (y - 1) * (x**2 - x**q + x ** (q + 1) - x ** (q + 2))
    )
    return numerator / denominator


def gf_B(p: PLike, order: int) -> TruncatedSeries:
    """Boolean intervals of F_n^p with y marking the height."""
    _check_order(order)
    family = FamilyParam.of(p)
    x, y = x_series(order), y_series(order)
    if family.bound is None:
        return (1 - x) / (1 - 2 * x - x**2 * y)
    q = family.bound
    numerator = (1 - x) * (1 + y * x**q)
    denominator = 1 - 2 * x + x ** (q + 1) - y * (x**2 - x**q + x ** (q + 1) - x ** (q + 2))
    return numerator / denominator


def gf_coverings(p: PLike, order: int) -> TruncatedSeries:
    """Number of cover pairs (Hasse edges) of F_n^p."""
    _check_order(order)
    family = FamilyParam.of(p)
    x = x_series(order)
    if family.bound is None:
        return x**2 * (1 - x) / (1 - 2 * x) ** 2
    q = family.bound
    return (1 - x) * (x**2 - x ** (q + 1)) * (1 - x**q) / (1 - 2 * x + x ** (q + 1)) ** 2


def gf_meet_irreducible(p: PLike, order: int) -> TruncatedSeries:
    """Meet-irreducible elements of F_n^p."""
    _check_order(order)
    family = FamilyParam.of(p)
    x = x_series(order)
    if family.bound is None:
        return x**2 / (1 - x) ** 3
    q = family.bound
    return (x**2 - x ** (q + 1)) / ((1 - x) ** 3 * (1 - x**q))


def gf_join_irreducible(p: PLike, order: int) -> TruncatedSeries:
    """Join-irreducible elements; same count as meet-irreducible ones."""
    return gf_meet_irreducible(p, order)


def closed_b(n: int, p: PLike) -> int:
    """Meet-irreducible count of F_n^p in closed form."""
    family = FamilyParam.of(p)
    if family.bound is None:
        return n * (n - 1) // 2
    return n * n * (family.bound - 1) // (2 * family.bound)


def gf_cover_class(p: PLike, k: int, order: int) -> TruncatedSeries:
    """Elements of F_n^p having exactly k upper covers."""
    _check_order(order)
    if k < 0:
        raise InvalidInputError(f"Cover count must be non-negative, got {k}")
    family = FamilyParam.of(p)
    x = x_series(order)
    if k == 0:
        return 1 / (1 - x)
    if family.bound is None:
        first = x**2 / (1 - x) ** 3
        ratio = x**2 / (1 - x) ** 2
    else:
        q = family.bound
        first = (x**2 - x ** (q + 1)) / ((1 - x) ** 3 * (1 - x**q))
        ratio = (x**2 - x**q + x ** (q + 1) - x ** (q + 2)) / ((1 - x) ** 2 * (1 - x**q))
    return ratio ** (k - 1) * first


def _gf_L_two(order: int) -> TruncatedSeries:
    x, y = x_series(order), y_series(order)
    head = (x**4 * y**4 + y**3 * x**4 + 1) / (1 - x - x**2)
    tail = (x**2 * y * (x**2 - 1) * (x**3 * y**2 - 1)) / (
        (x * y - 1) * (x**2 + x - 1) ** 2 * (x**2 * y - 1)
    )
    return head + tail


def gf_V(p: int, order: int) -> TruncatedSeries:
    """Linear intervals whose types differ by two or more, general form."""
    x, y = x_series(order), y_series(order)
    inverse_g = 1 / g_polynomial(p, order)
    total = TruncatedSeries.constant(0, order)
    for i in range(1, p + 1):
        for j in range(i + 2, p + 1):
            gap = j - i
            remainder = 1 + _geometric_block(1, p - gap, order) * inverse_g
            total = total + x**j * y**gap * remainder
    return total


def gf_W(p: int, order: int) -> TruncatedSeries:
    """Linear intervals whose types differ by one (simplified closed form)."""
    x, y = x_series(order), y_series(order)
    return (y * (1 - x**p) * (x**2 - x ** (p + 1)) * (1 - x ** (p + 1) * y**2)) / (
        (1 - x) * (1 - x * y) * (1 - x**p * y) * g_polynomial(p, order)
    )


def gf_W_sum(p: int, order: int) -> TruncatedSeries:
    """The same series as ``gf_W``, summed over the last descent length."""
    x, y = x_series(order), y_series(order)
    remainder = 1 + _geometric_block(1, p - 1, order) / g_polynomial(p, order)
    total = TruncatedSeries.constant(0, order)
    for i in range(1, p):
        total = total + (
            x ** (i + 1) * y / (1 - x * y) + x ** (p + i + 1) * y**2 / (1 - x**p * y)
        )
    return total * remainder


def gf_L(p: PLike, order: int) -> TruncatedSeries:
    """Linear intervals of F_n^p with y marking the height."""
    _check_order(order)
    family = FamilyParam.of(p)
    x, y = x_series(order), y_series(order)
    if family.bound is None:
        numerator = (
            1
            - y**2 * (1 + y) ** 2 * x**4
            + 2 * x**5 * y**4
            - (3 - y - y**2) * x**3 * y
            + 2 * (2 * y + 1) * x**2
            - (3 + y) * x
        )
        return numerator / ((1 - x * y) * (1 - 2 * x) ** 2)
    q = family.bound
    if q == 2:
        return _gf_L_two(order)
    chains = x**3 * y**3 * (1 - x ** (q - 2)) / (1 - x)
    return (1 + chains + gf_V(q, order) + gf_W(q, order)) / g_polynomial(q, order)


def gf_I(order: int) -> TruncatedSeries:
    """Intervals of F_n^inf with y marking the first ascent gap."""
    _check_order(order)
    x, y = x_series(order), y_series(order)
    return 1 + 2 * x / (1 - 2 * x - 2 * x * y + sqrt(1 - 4 * x))


def gf_J(order: int) -> TruncatedSeries:
    """Intervals of F_n^2 with y marking the first ascent gap."""
    _check_order(order)
    x, y = x_series(order), y_series(order)
    root = sqrt(x**4 - 2 * x**3 - x**2 - 2 * x + 1)
    numerator = 1 + x - x**2 + root
    denominator = (1 - x**2) * root + 1 + x**4 - x**3 - 2 * (y + 1) * x**2 - x
    return numerator / denominator


def gf_J_total(order: int) -> TruncatedSeries:
    """Total interval count of F_n^2, from its own closed form."""
    _check_order(order)
    # the denominator has a factor x, which costs one term of precision
    work = order + 1
    x = x_series(work)
    root = sqrt(x**4 - 2 * x**3 - x**2 - 2 * x + 1)
    numerator = -(x**2) + 3 * x - 1 + root
    denominator = 2 * x * (x**2 - 3 * x + 1) * (x + 1)
    return (numerator / denominator).truncate(order)


def linear_closed_total(n: int, p: PLike) -> int:
    """Number of linear intervals of F_n^p for p in {2, inf}."""
    family = FamilyParam.of(p)
    if family.bound not in (2, None):
        raise InvalidInputError(f"No closed total for linear intervals with p={family}")
    if n < 0:
        raise InvalidInputError(f"Semilength must be non-negative, got {n}")
    if n < 3:
        return (1, 1, 3)[n]
    if family.bound is None:
        return (3 * n + 1) * 2 ** (n - 3)
    fib_n, fib_prev = family_size(n, 2), family_size(n - 1, 2)
    value = Fraction(4 * (n + 5) * fib_n - (2 * n + 27) * fib_prev, 5)
    assert value.denominator == 1, (n, value)
    return int(value)


def boolean_closed_total(n: int) -> int:
    """Number of boolean intervals of F_n^inf."""
    return sum(comb(n, n - 2 * k) * 2**k for k in range(n // 2 + 1))


def mean_statistic(s: TruncatedSeries, n: int) -> Fraction:
    """Mean of the y statistic among objects of size n."""
    coefficient = s.coefficient(n)
    total = coefficient.evaluate(1)
    if not total:
        raise ZeroDivisionError(f"No objects of size {n}")
    return coefficient.deriv().evaluate(1) / total


def _needs_finite(func: Callable[[int, int], TruncatedSeries]):
    def wrapped(p: PLike, order: int) -> TruncatedSeries:
        family = FamilyParam.of(p)
        if family.bound is None:
            raise InvalidInputError("This series needs a finite p")
        return func(family.bound, order)

    return wrapped


GF_CATALOG: dict[str, Callable[[PLike, int], TruncatedSeries]] = {
    "F": gf_F,
    "B": gf_B,
    "L": gf_L,
    "coverings": gf_coverings,
    "meet-irr": gf_meet_irreducible,
    "join-irr": gf_join_irreducible,
    "family": gf_family,
    "I": lambda p, order: gf_I(order),
    "J": lambda p, order: gf_J(order),
    "J-total": lambda p, order: gf_J_total(order),
    "W": _needs_finite(gf_W),
    "W-sum": _needs_finite(gf_W_sum),
}


def series_by_name(name: str, p: PLike, order: int, at_y1: bool = False) -> TruncatedSeries:
    """Look up a closed form by its catalog name."""
    try:
        builder = GF_CATALOG[name]
    except KeyError:
        raise InvalidInputError(
            f"Unknown series {name!r}; choose from {', '.join(GF_CATALOG)}"
        ) from None
    series = builder(p, order)
    return eval_y(series, 1) if at_y1 else series


def counts_at(series: TruncatedSeries, n: int) -> dict[int, int]:
    """Integer y-histogram of the x^n coefficient."""
    return series.coefficient(n).to_counts()


def derivative_at_one(series: TruncatedSeries) -> TruncatedSeries:
    """d/dy at y = 1, e.g. total cover count from gf_F."""
    return eval_y(deriv_y(series), 1)

