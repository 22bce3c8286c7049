"""
Check cells: brute force counts against closed forms, one (check, n, p) at a time.

Each cell is a pure function registered under a check name together with the
library operations it exercises. A cell raises CheckFailure on the first
disagreement; ``run_cell`` turns that into a CheckResult carrying the
counterexample.
"""

from __future__ import annotations

import time
from collections.abc import Callable
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import networkx as nx

from fibolattice.bijections import (
    catalan_covers,
    catalan_interval_check,
    complement_involution,
    composition_covers,
    dominance_leq,
    from_catalan_word,
    from_composition,
    from_subset,
    subset_covers,
    subset_interval_check,
    subset_rank,
    to_catalan_word,
    to_composition,
    to_subset,
)
from fibolattice.config import CheckConfig, SizeGuardConfig
from fibolattice.dyckpath import (
    DyckPath,
    area,
    compose,
    decompose,
    enumerate_family,
    family_size,
    height_profile,
    in_family,
    parse_path,
    path_type,
)
from fibolattice.errors import SizeGuardError
from fibolattice.family import INFINITY, FamilyParam
from fibolattice.generating_functions import (
    GF_CATALOG,
    boolean_closed_total,
    closed_b,
    counts_at,
    derivative_at_one,
    g_polynomial,
    gf_B,
    gf_cover_class,
    gf_coverings,
    gf_F,
    gf_family,
    gf_I,
    gf_J,
    gf_J_total,
    gf_join_irreducible,
    gf_L,
    gf_meet_irreducible,
    gf_W,
    gf_W_sum,
    linear_closed_total,
    mean_statistic,
    series_by_name,
)
from fibolattice.intervals import (
    Interval,
    IntervalKind,
    LinearForm,
    all_intervals,
    classify_linear,
    count_by_height,
    count_intervals,
    interval_elements,
    interval_hasse_digraph,
    interval_height,
    is_boolean,
    is_boolean_bruteforce,
    is_linear,
    mobius,
    mobius_bruteforce,
    order_matrix,
)
from fibolattice.lattice import (
    cover_histogram,
    hasse_edges,
    join,
    join_irreducibles,
    lattice_rank,
    leq,
    longest_chain_length,
    lower_covers,
    maximum_element,
    meet,
    meet_irreducibles,
    minimum_element,
    transitive_reduction_edges,
    turan_edges,
    upper_covers,
)
from fibolattice.logging_config import get_logger
from fibolattice.motzkin import (
    BicoloredMotzkinPath,
    avoiding_words,
    count_avoiding,
    forbidden_patterns,
    interval_to_motzkin,
    motzkin_to_interval,
)
from fibolattice.report import CheckResult
from fibolattice.series import (
    TruncatedSeries,
    add,
    deriv_y,
    div,
    eval_y,
    mul,
    sqrt,
    sub,
    subst_y_shift,
    x_series,
    y_series,
)

logger = get_logger(__name__)

# Structural per-interval checks stop once |F_n^p|^2 exceeds this
PAIR_LIMIT = 70_000
# Lower ends sampled for the pairwise lattice and bijection checks
PAIR_SAMPLE = 64
# networkx isomorphism and longest-chain oracles
GRAPH_ORACLE_N_MAX = 5


class CheckFailure(Exception):
    """A brute force value disagrees with its closed form."""

    def __init__(self, detail: str, counterexample: str | None = None) -> None:
        super().__init__(detail)
        self.detail = detail
        self.counterexample = counterexample


@dataclass(frozen=True)
class CellContext:
    """Everything a cell needs; picklable so cells can run in worker processes."""

    n: int
    p: FamilyParam
    guard: SizeGuardConfig = field(default_factory=SizeGuardConfig)
    settings: CheckConfig = field(default_factory=CheckConfig)

    @property
    def small(self) -> bool:
        return family_size(self.n, self.p) ** 2 <= PAIR_LIMIT


@dataclass(frozen=True)
class CheckCell:
    name: str
    operations: tuple[str, ...]
    run: Callable[[CellContext], str]


CHECKS: dict[str, CheckCell] = {}


def check_cell(name: str, operations: list[str]) -> Callable:
    """Register a cell under ``name``; the function returns a short detail string."""

    def register(func: Callable[[CellContext], str]) -> Callable[[CellContext], str]:
        CHECKS[name] = CheckCell(name, tuple(operations), func)
        return func

    return register


def _expect(actual: object, expected: object, what: str, where: str) -> None:
    if actual != expected:
        raise CheckFailure(f"{what}: expected {expected}, got {actual}", where)


def _label(ctx: CellContext) -> str:
    return f"F_{ctx.n}^{ctx.p}"


def _series_total(series: TruncatedSeries, n: int) -> int:
    return series.integer_coefficients()[n]


def _pairs(paths: list[DyckPath]) -> list[tuple[DyckPath, DyckPath]]:
    return [(a, b) for a in paths[:PAIR_SAMPLE] for b in paths]


# ============================================================================
# Elements and covers
# ============================================================================


@check_cell(
    "elements",
    [
        "enumerate_family",
        "family_size",
        "in_family",
        "parse_path",
        "height_profile",
        "area",
        "path_type",
        "minimum_element",
        "maximum_element",
        "lattice_rank",
        "longest_chain_length",
        "gf_family",
    ],
)
def _check_elements(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    paths = enumerate_family(n, p, ctx.guard)
    where = _label(ctx)
    _expect(len(paths), family_size(n, p), "element count vs recurrence", where)
    _expect(len(paths), _series_total(gf_family(p, n + 1), n), "element count vs series", where)
    for path in paths:
        if not in_family(path, p) or parse_path(str(path)) != path:
            raise CheckFailure("enumerated path fails membership or parsing", repr(path))
        if DyckPath.from_heights(height_profile(path)) != path:
            raise CheckFailure("height profile does not rebuild the path", repr(path))
        if n and path_type(path) != to_composition(path, p).parts[0]:
            raise CheckFailure("type differs from the last descent run", repr(path))
    bottom, top = minimum_element(n), maximum_element(n, p)
    _expect(min(paths, key=area), bottom, "minimum element", where)
    _expect(max(paths, key=area), top, "maximum element", where)
    _expect(area(top), lattice_rank(n, p), "rank of the top element", where)
    if ctx.small:
        _expect(longest_chain_length(n, p, ctx.guard), lattice_rank(n, p), "longest chain", where)
    return f"{len(paths)} elements"


@check_cell("upper_covers", ["upper_covers", "cover_histogram", "gf_F", "gf_cover_class"])
def _check_upper_covers(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    histogram = cover_histogram(n, p, guard=ctx.guard)
    expected = counts_at(gf_F(p, n + 1), n)
    _expect(histogram, expected, "upper cover histogram", _label(ctx))
    for k, count in histogram.items():
        by_class = counts_at(gf_cover_class(p, k, n + 1), n).get(0, 0)
        _expect(by_class, count, f"elements with {k} upper covers", _label(ctx))
    return f"histogram {histogram}"


@check_cell("lower_covers", ["lower_covers", "cover_histogram", "gf_F"])
def _check_lower_covers(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    histogram = cover_histogram(n, p, lower=True, guard=ctx.guard)
    _expect(histogram, counts_at(gf_F(p, n + 1), n), "lower cover histogram", _label(ctx))
    return f"histogram {histogram}"


@check_cell(
    "coverings",
    ["hasse_edges", "transitive_reduction_edges", "gf_coverings", "derivative_at_one"],
)
def _check_coverings(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    edges = hasse_edges(n, p, ctx.guard)
    where = _label(ctx)
    _expect(len(edges), _series_total(gf_coverings(p, n + 1), n), "cover pairs vs series", where)
    _expect(
        len(edges),
        _series_total(derivative_at_one(gf_F(p, n + 1)), n),
        "cover pairs vs d/dy F",
        where,
    )
    for low, high in edges:
        if not leq(low, high) or area(high) != area(low) + 1:
            raise CheckFailure("cover pair is not a rank one step", f"{low} -> {high}")
    if ctx.small:
        _expect(
            set(transitive_reduction_edges(n, p, ctx.guard)),
            set(edges),
            "covers vs transitive reduction",
            where,
        )
    return f"{len(edges)} cover pairs"


@check_cell(
    "meet_irreducibles",
    [
        "meet_irreducibles",
        "join_irreducibles",
        "turan_edges",
        "closed_b",
        "gf_meet_irreducible",
        "gf_join_irreducible",
    ],
)
def _check_irreducibles(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    where = _label(ctx)
    count = len(meet_irreducibles(n, p, ctx.guard))
    _expect(count, closed_b(n, p), "meet-irreducibles vs closed form", where)
    _expect(count, _series_total(gf_meet_irreducible(p, n + 1), n), "meet-irreducibles vs series", where)
    if p.bound is not None:
        _expect(count, turan_edges(n, p), "meet-irreducibles vs Turan graph", where)
    joins = len(join_irreducibles(n, p, ctx.guard))
    _expect(joins, _series_total(gf_join_irreducible(p, n + 1), n), "join-irreducibles vs series", where)
    return f"{count} meet-irreducibles"


@check_cell(
    "lattice_ops",
    ["leq", "meet", "join", "decompose", "compose", "order_matrix"],
)
def _check_lattice_ops(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    paths = enumerate_family(n, p, ctx.guard)
    for path in paths:
        if n and compose(*decompose(path, p)) != path:
            raise CheckFailure("decompose then compose changed the path", repr(path))
        for cover in upper_covers(path, p):
            if path not in lower_covers(cover, p):
                raise CheckFailure("upper and lower covers disagree", f"{path} -> {cover}")
    if not ctx.small:
        return "pairwise checks skipped"
    order = order_matrix(paths, ctx.guard)
    index = {path: position for position, path in enumerate(paths)}
    for a, b in _pairs(paths):
        if bool(order[index[a], index[b]]) != leq(a, b):
            raise CheckFailure("order matrix disagrees with leq", f"{a}, {b}")
        low, high = meet(a, b), join(a, b)
        if not (in_family(low, p) and in_family(high, p)):
            raise CheckFailure("meet or join leaves the family", f"{a}, {b}")
        if not (leq(low, a) and leq(low, b) and leq(a, high) and leq(b, high)):
            raise CheckFailure("meet or join is not a bound", f"{a}, {b}")
    return f"{min(len(paths), PAIR_SAMPLE) * len(paths)} pairs"


# ============================================================================
# Intervals
# ============================================================================


@check_cell(
    "boolean",
    ["count_intervals", "all_intervals", "is_boolean", "is_boolean_bruteforce", "count_by_height", "gf_B", "boolean_closed_total"],
)
def _check_boolean(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    where = _label(ctx)
    counts = count_intervals(n, p, IntervalKind.BOOLEAN, ctx.guard).histogram
    _expect(counts, counts_at(gf_B(p, n + 1), n), "boolean intervals by height", where)
    if p == INFINITY:
        _expect(sum(counts.values()), boolean_closed_total(n), "boolean total vs closed form", where)
    if ctx.small:
        intervals = all_intervals(n, p, ctx.guard)
        structural = count_by_height([i for i in intervals if is_boolean(i)])
        _expect(structural, counts, "disjoint swap recognition", where)
        if n <= GRAPH_ORACLE_N_MAX:
            for interval in intervals:
                if is_boolean(interval) != is_boolean_bruteforce(interval, ctx.guard):
                    raise CheckFailure("boolean recognition vs isomorphism", str(interval))
    return f"histogram {counts}"


@check_cell(
    "linear",
    ["count_intervals", "classify_linear", "is_linear", "gf_L", "linear_closed_total", "mean_statistic"],
)
def _check_linear(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    where = _label(ctx)
    counts = count_intervals(n, p, IntervalKind.LINEAR, ctx.guard).histogram
    series = gf_L(p, n + 1)
    _expect(counts, counts_at(series, n), "linear intervals by height", where)
    if p.bound in (2, None):
        _expect(sum(counts.values()), linear_closed_total(n, p), "linear total vs closed form", where)
    total = sum(counts.values())
    mean = Fraction(sum(k * c for k, c in counts.items()), total)
    _expect(mean_statistic(series, n), mean, "mean linear height", where)
    if ctx.small:
        intervals = all_intervals(n, p, ctx.guard)
        for interval in intervals:
            linear = classify_linear(interval) is not LinearForm.NOT_LINEAR
            if n <= GRAPH_ORACLE_N_MAX + 1 and linear != is_linear(interval, ctx.guard):
                raise CheckFailure("structural form vs chain test", str(interval))
        classified = count_by_height(
            [i for i in intervals if classify_linear(i) is not LinearForm.NOT_LINEAR]
        )
        _expect(classified, counts, "classified linear intervals", where)
    return f"histogram {counts}"


@check_cell("intervals", ["count_intervals", "gf_I", "gf_J", "gf_J_total"])
def _check_intervals(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    where = _label(ctx)
    result = count_intervals(n, p, IntervalKind.ALL, ctx.guard)
    counts = result.histogram
    if p == INFINITY:
        _expect(counts, counts_at(gf_I(n + 1), n), "intervals by ascent gap", where)
        if n:
            _expect(result.total, comb(2 * n - 1, n), "interval total", where)
    elif p.bound == 2:
        _expect(counts, counts_at(gf_J(n + 1), n), "intervals by ascent gap", where)
        _expect(result.total, _series_total(gf_J_total(n + 1), n), "interval total", where)
    if ctx.small:
        _expect(result.total, len(all_intervals(n, p, ctx.guard)), "comparable pairs", where)
    return f"{result.total} intervals"


@check_cell(
    "mobius",
    ["mobius", "mobius_bruteforce", "interval_elements", "interval_height"],
)
def _check_mobius(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    if n > ctx.settings.mobius_n_max or not ctx.small:
        return "skipped above the Mobius limit"
    intervals = all_intervals(n, p, ctx.guard)
    for interval in intervals:
        if mobius(interval) != mobius_bruteforce(interval, ctx.guard):
            raise CheckFailure("closed Mobius value vs recursion", str(interval))
        if interval.lower == interval.upper:
            continue
        total = sum(
            mobius(Interval(interval.lower, middle, p))
            for middle in interval_elements(interval, ctx.guard)
        )
        if total:
            raise CheckFailure("Mobius values do not sum to zero", str(interval))
        if n <= GRAPH_ORACLE_N_MAX:
            chain = nx.dag_longest_path_length(interval_hasse_digraph(interval, ctx.guard))
            if chain != interval_height(interval):
                raise CheckFailure("height vs longest chain", str(interval))
    return f"{len(intervals)} intervals"


# ============================================================================
# Bijections
# ============================================================================


@check_cell(
    "motzkin",
    [
        "forbidden_patterns",
        "count_avoiding",
        "avoiding_words",
        "interval_to_motzkin",
        "motzkin_to_interval",
        "swap_flat_colors",
    ],
)
def _check_motzkin(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    where = _label(ctx)
    if n == 0:
        return "no words for the empty path"
    words = count_avoiding(n - 1, p)
    by_height = count_avoiding(n - 1, p, by_final_height=True)
    _expect(sum(by_height.values()), words, "words by final height", where)
    _expect(words, count_intervals(n, p, IntervalKind.ALL, ctx.guard).total, "words vs intervals", where)
    if n > ctx.settings.motzkin_n_max or not ctx.small:
        return f"{words} words"
    _expect(sum(1 for _ in avoiding_words(n - 1, p)), words, "generated words", where)
    patterns = forbidden_patterns(p)
    seen = set()
    for interval in all_intervals(n, p, ctx.guard):
        word = interval_to_motzkin(interval)
        if not word.is_quarter_plane() or patterns.occurs_in(word):
            raise CheckFailure("word leaves the quarter plane or has a pattern", str(interval))
        if motzkin_to_interval(word, p) != interval:
            raise CheckFailure("Motzkin round trip", f"{interval} -> {word}")
        if BicoloredMotzkinPath.parse(str(word.swap_flat_colors())).swap_flat_colors() != word:
            raise CheckFailure("flat color swap is not an involution", str(word))
        seen.add(str(word))
    _expect(len(seen), words, "distinct words", where)
    return f"{words} words"


@check_cell(
    "bijections",
    [
        "to_catalan_word",
        "from_catalan_word",
        "to_composition",
        "from_composition",
        "to_subset",
        "from_subset",
        "dominance_leq",
        "subset_rank",
        "complement_involution",
        "subset_interval_check",
        "catalan_interval_check",
        "catalan_covers",
        "composition_covers",
        "subset_covers",
    ],
)
def _check_bijections(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    paths = enumerate_family(n, p, ctx.guard)
    words = {path: to_catalan_word(path, p) for path in paths}
    compositions = {path: to_composition(path, p) for path in paths}
    subsets = {path: to_subset(path, p) for path in paths}
    for path in paths:
        if from_catalan_word(words[path], p) != path:
            raise CheckFailure("Catalan word round trip", repr(path))
        if from_composition(compositions[path], p) != path:
            raise CheckFailure("composition round trip", repr(path))
        if from_subset(subsets[path], p) != path:
            raise CheckFailure("subset round trip", repr(path))
        if subset_rank(subsets[path]) != area(path):
            raise CheckFailure("subset rank vs area", repr(path))
    if not ctx.small:
        return f"{len(paths)} round trips"

    complements = {}
    if p == INFINITY:
        complements = {
            path: from_subset(complement_involution(subsets[path]), INFINITY) for path in paths
        }
    for a, b in _pairs(paths):
        below = leq(a, b)
        transported = (
            dominance_leq(compositions[a], compositions[b]),
            catalan_interval_check(words[a], words[b]),
            subset_interval_check(subsets[a], subsets[b], p),
        )
        if transported != (below, below, below):
            raise CheckFailure(f"order transport {transported} vs {below}", f"{a}, {b}")
        covered = b in upper_covers(a, p)
        transported = (
            catalan_covers(words[a], words[b]),
            composition_covers(compositions[a], compositions[b], p),
            subset_covers(subsets[a], subsets[b], p),
        )
        if transported != (covered, covered, covered):
            raise CheckFailure(f"cover transport {transported} vs {covered}", f"{a}, {b}")
        if complements and leq(complements[b], complements[a]) != below:
            raise CheckFailure("complement does not reverse the order", f"{a}, {b}")
    return f"{len(paths)} round trips"


# ============================================================================
# Series engine
# ============================================================================


@check_cell(
    "series",
    [
        "add",
        "sub",
        "mul",
        "div",
        "sqrt",
        "deriv_y",
        "eval_y",
        "subst_y_shift",
        "g_polynomial",
        "gf_W",
        "gf_W_sum",
        "series_by_name",
    ],
)
def _check_series(ctx: CellContext) -> str:
    n, p = ctx.n, ctx.p
    order = n + 2
    where = f"order {order}, p={p}"
    x, y = x_series(order), y_series(order)
    radicand = 1 - 4 * x
    root = sqrt(radicand)
    _expect(mul(root, root), radicand, "sqrt squared", where)
    elements = gf_F(p, order)
    weight = 1 - x * y
    _expect(div(mul(elements, weight), weight), elements, "div after mul", where)
    _expect(add(elements, sub(weight, elements)), weight, "add after sub", where)
    _expect(subst_y_shift(elements), gf_B(p, order), "boolean series as shifted F", where)
    _expect(eval_y(deriv_y(elements), 1), gf_coverings(p, order), "coverings as d/dy F", where)
    _expect(eval_y(elements, 1), gf_family(p, order), "F at y = 1", where)
    if p.bound is not None:
        _expect(div(TruncatedSeries.constant(1, order), g_polynomial(p.bound, order)), gf_family(p, order), "1/G_p", where)
        _expect(gf_W(p.bound, order), gf_W_sum(p.bound, order), "W closed vs summed", where)
        unbounded = gf_F(INFINITY, order)
        for k in range(min(p.bound, order)):
            _expect(elements[k], unbounded[k], f"F_p vs F_inf at x^{k}", where)
    for name in GF_CATALOG:
        if name in ("W", "W-sum") and p.bound is None:
            continue
        series = series_by_name(name, p, order)
        for k in range(order):
            counts_at(series, k)
    return f"identities to order {order}"


def run_cell(check: str, ctx: CellContext) -> CheckResult:
    """Run one registered cell; failures and unexpected errors become failed results."""
    cell = CHECKS[check]
    start = time.perf_counter()
    try:
        detail = cell.run(ctx)
        passed, counterexample = True, None
    except CheckFailure as failure:
        passed, detail, counterexample = False, failure.detail, failure.counterexample
    except SizeGuardError:
        raise
    except Exception as e:
        passed, detail, counterexample = False, f"{type(e).__name__}: {e}", None
    elapsed = time.perf_counter() - start
    logger.debug("Check %s n=%d p=%s: %s in %.3fs", check, ctx.n, ctx.p, detail, elapsed)
    return CheckResult(
        check=check,
        n=ctx.n,
        p=ctx.p,
        passed=passed,
        detail=detail,
        counterexample=counterexample,
        operations=cell.operations,
        elapsed=elapsed,
    )


# Library operations a full run must exercise
REQUIRED_OPERATIONS: frozenset[str] = frozenset(
    {
        "enumerate_family", "family_size", "in_family", "parse_path", "height_profile",
        "area", "path_type", "decompose", "compose", "leq", "meet", "join",
        "upper_covers", "lower_covers", "minimum_element", "maximum_element",
        "lattice_rank", "turan_edges", "meet_irreducibles", "join_irreducibles",
        "cover_histogram", "hasse_edges", "longest_chain_length",
        "transitive_reduction_edges", "interval_height", "interval_elements",
        "is_boolean", "is_boolean_bruteforce", "mobius", "mobius_bruteforce",
        "is_linear", "classify_linear", "all_intervals", "order_matrix",
        "count_intervals", "count_by_height", "forbidden_patterns", "count_avoiding",
        "avoiding_words", "interval_to_motzkin", "motzkin_to_interval",
        "swap_flat_colors", "to_catalan_word", "from_catalan_word", "to_composition",
        "from_composition", "to_subset", "from_subset", "dominance_leq", "subset_rank",
        "complement_involution", "subset_interval_check", "catalan_interval_check",
        "catalan_covers", "composition_covers", "subset_covers", "add", "sub", "mul",
        "div", "sqrt", "deriv_y", "eval_y", "subst_y_shift", "gf_F", "gf_B", "gf_L",
        "gf_I", "gf_J", "gf_J_total", "gf_coverings", "gf_meet_irreducible",
        "gf_join_irreducible", "gf_cover_class", "gf_family", "gf_W", "gf_W_sum",
        "linear_closed_total", "boolean_closed_total", "closed_b", "mean_statistic",
        "series_by_name",
    }
)
