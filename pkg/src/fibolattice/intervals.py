"""
Intervals [P, Q] of F_n^p.

Boolean intervals are recognised from the step strings (disjoint valley to
peak swaps, each one a cover of the lower end), linear intervals from their
structural forms, and both are cross-checked against exhaustive counts built
on a numpy order matrix.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum

import networkx as nx
import numpy as np
from tqdm import tqdm

from fibolattice.config import DEFAULT_GUARD, SizeGuardConfig
from fibolattice.dyckpath import (
    DyckPath,
    decompose,
    enumerate_family,
    family_size,
    in_family,
    require_member,
)
from fibolattice.errors import InvalidInputError, SizeGuardError
from fibolattice.family import FamilyParam, PLike
from fibolattice.lattice import leq, upper_covers
from fibolattice.logging_config import get_logger

logger = get_logger(__name__)

ROW_BLOCK = 512


@dataclass(frozen=True)
class Interval:
    """[lower, upper] in F_n^p; validated on construction."""

    lower: DyckPath
    upper: DyckPath
    p: FamilyParam = field(default=FamilyParam.INFINITY)

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", FamilyParam.of(self.p))
        require_member(self.lower, self.p)
        require_member(self.upper, self.p)
        if not leq(self.lower, self.upper):
            raise InvalidInputError(f"{self.lower} is not below {self.upper}")

    @classmethod
    def parse(cls, lower: str, upper: str, p: PLike = None) -> Interval:
        return cls(DyckPath.parse(lower), DyckPath.parse(upper), FamilyParam.of(p))

    @property
    def semilength(self) -> int:
        return self.lower.semilength

    @property
    def height(self) -> int:
        return self.upper.area - self.lower.area

    @property
    def ascent_gap(self) -> int:
        """Difference between the first ascent lengths of upper and lower."""
        return self.upper.first_ascent - self.lower.first_ascent

    def __str__(self) -> str:
        return f"[{self.lower.steps or 'ε'}, {self.upper.steps or 'ε'}]"


class IntervalKind(Enum):
    ALL = "all"
    BOOLEAN = "boolean"
    LINEAR = "linear"


class LinearForm(Enum):
    """Structural form that makes an interval linear."""

    SAME_TYPE = "SAME_TYPE"
    A2 = "A2"
    B2 = "B2"
    A3 = "A3"
    B3 = "B3"
    C3 = "C3"
    NOT_LINEAR = "NOT_LINEAR"


@dataclass
class IntervalCounts:
    """Histogram of intervals of one kind, keyed by ``statistic``."""

    n: int
    p: FamilyParam
    kind: IntervalKind
    statistic: str
    histogram: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    def to_rows(self) -> list[tuple[int, str, str, int, int]]:
        return [
            (self.n, str(self.p), self.kind.value, key, count)
            for key, count in sorted(self.histogram.items())
        ]


def interval_height(interval: Interval) -> int:
    return interval.height


def interval_elements(
    interval: Interval, guard: SizeGuardConfig = DEFAULT_GUARD
) -> list[DyckPath]:
    """Every R with lower <= R <= upper, found by walking upper covers."""
    seen = {interval.lower}
    queue = deque([interval.lower])
    while queue:
        current = queue.popleft()
        for cover in upper_covers(current, interval.p):
            if cover not in seen and leq(cover, interval.upper):
                seen.add(cover)
                if len(seen) > guard.max_elements:
                    raise SizeGuardError(
                        f"Interval {interval} has more than {guard.max_elements} elements"
                    )
                queue.append(cover)
    return sorted(seen, key=lambda path: (path.area, path.sort_key()))


def is_boolean(interval: Interval) -> bool:
    """Upper is lower with disjoint DU -> UD swaps, each a cover of lower."""
    lower = interval.lower
    diff = lower.bits ^ interval.upper.bits
    while diff:
        position = (diff & -diff).bit_length() - 1
        window = 0b11 << position
        # lower must read DU here: bit position+1 is D, bit position is U
        if diff & window != window or lower.bits & window != 1 << position:
            return False
        swapped = DyckPath(lower.bits ^ window, lower.semilength)
        if not in_family(swapped, interval.p):
            return False
        diff ^= window
    return True


def _boolean_lattice(rank: int) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1 << rank))
    graph.add_edges_from(
        (subset, subset | (1 << bit))
        for subset in range(1 << rank)
        for bit in range(rank)
        if not subset & (1 << bit)
    )
    return graph


def interval_hasse_digraph(
    interval: Interval, guard: SizeGuardConfig = DEFAULT_GUARD
) -> nx.DiGraph:
    elements = interval_elements(interval, guard)
    members = set(elements)
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    graph.add_edges_from(
        (path, cover)
        for path in elements
        for cover in upper_covers(path, interval.p)
        if cover in members
    )
    return graph


def is_boolean_bruteforce(
    interval: Interval, guard: SizeGuardConfig = DEFAULT_GUARD
) -> bool:
    """Isomorphism test of the interval's Hasse diagram against 2^h."""
    height = interval.height
    graph = interval_hasse_digraph(interval, guard)
    if graph.number_of_nodes() != 1 << height:
        return False
    return nx.is_isomorphic(graph, _boolean_lattice(height))


def mobius(interval: Interval) -> int:
    """0 unless boolean, then (-1)^height."""
    if not is_boolean(interval):
        return 0
    return -1 if interval.height % 2 else 1


def mobius_bruteforce(
    interval: Interval, guard: SizeGuardConfig = DEFAULT_GUARD
) -> int:
    """Evaluate mu(P, Q) = -sum mu(P, R) over P <= R < Q directly."""
    elements = interval_elements(interval, guard)
    if len(elements) > guard.max_mobius_elements:
        raise SizeGuardError(
            f"Interval {interval} has {len(elements)} elements, "
            f"above the Mobius limit {guard.max_mobius_elements}"
        )
    values: dict[DyckPath, int] = {}
    # elements are sorted by area, so every R < S is handled before S
    for current in elements:
        if current == interval.lower:
            values[current] = 1
            continue
        values[current] = -sum(
            value
            for other, value in values.items()
            if other != current and leq(other, current)
        )
    return values[interval.upper]


def is_linear(interval: Interval, guard: SizeGuardConfig = DEFAULT_GUARD) -> bool:
    """Total order check; in a graded lattice this is |elements| = h + 1."""
    return len(interval_elements(interval, guard)) == interval.height + 1


def _inner_path(text: str) -> DyckPath | None:
    try:
        return DyckPath.parse(text)
    except InvalidInputError:
        return None


def _remainder_fits(text: str, family: FamilyParam, max_type: int | None) -> bool:
    """R is empty, or a family member whose type is at most ``max_type``."""
    if not text:
        return True
    inner = _inner_path(text)
    if inner is None or not in_family(inner, family):
        return False
    return max_type is None or 1 <= inner.path_type <= max_type


def _bound_minus(family: FamilyParam, amount: int) -> int | None:
    return None if family.bound is None else family.bound - amount


def _match_type_gap_two(
    lower: str, upper: str, i: int, j: int, family: FamilyParam
) -> LinearForm:
    n = len(lower) // 2
    within = family.bound is None or n <= family.bound
    if (
        n >= 3
        and within
        and lower == "U" * (n - 3) + "UD" * 3 + "D" * (n - 3)
        and upper == "U" * n + "D" * n
    ):
        return LinearForm.A2
    gap = j - i
    prefix = "U" * (j - 1)
    lower_tail = "D" * gap + "U" + "D" * i
    upper_tail = "U" + "D" * j
    if (
        lower.startswith(prefix)
        and upper.startswith(prefix)
        and lower.endswith(lower_tail)
        and upper.endswith(upper_tail)
    ):
        middle = lower[len(prefix) : len(lower) - len(lower_tail)]
        if middle == upper[len(prefix) : len(upper) - len(upper_tail)]:
            if _remainder_fits(middle, family, _bound_minus(family, gap)):
                return LinearForm.B2
    return LinearForm.NOT_LINEAR


def _match_type_gap_one(
    lower: str, upper: str, i: int, family: FamilyParam
) -> LinearForm:
    size = len(lower)
    max_remainder_type = _bound_minus(family, 1)
    head = "U" * i
    if lower.startswith(head) and upper.startswith(head):
        lower_mid = lower[i : size - i]
        upper_mid = upper[i : size - i]
        for k in range(1, len(lower_mid) // 2 + 1):
            if not (
                lower_mid.endswith("DU" * k) and upper_mid.endswith("UD" * k)
            ):
                continue
            rest = lower_mid[: len(lower_mid) - 2 * k]
            if rest == upper_mid[: len(upper_mid) - 2 * k] and _remainder_fits(
                rest, family, max_remainder_type
            ):
                return LinearForm.A3

    if family.bound is not None:
        p = family.bound
        block = "U" + "D" * p
        k = 1
        while k * (p - 1) + i + k + 1 <= size // 2:
            prefix = "U" * (k * (p - 1) + i)
            lower_tail = "D" + block * k + "U" + "D" * i
            upper_tail = block * k + "U" + "D" * (i + 1)
            if (
                lower.startswith(prefix)
                and upper.startswith(prefix)
                and lower.endswith(lower_tail)
                and upper.endswith(upper_tail)
            ):
                rest = lower[len(prefix) : size - len(lower_tail)]
                if rest == upper[len(prefix) : size - len(upper_tail)] and (
                    _remainder_fits(rest, family, max_remainder_type)
                ):
                    return LinearForm.B3
            k += 1

        if p == 2 and upper == "UUUDDUDD" and lower in ("UUDDUDUD", "UDUDUDUD"):
            return LinearForm.C3
    return LinearForm.NOT_LINEAR


def classify_linear(interval: Interval, p: PLike = None) -> LinearForm:
    """Structural form making the interval linear, or NOT_LINEAR."""
    family = interval.p if p is None else FamilyParam.of(p)
    lower, upper = interval.lower, interval.upper
    if lower == upper:
        return LinearForm.SAME_TYPE
    i, j = lower.path_type, upper.path_type
    if i == j:
        _, inner_lower = decompose(lower, family)
        _, inner_upper = decompose(upper, family)
        inner = classify_linear(Interval(inner_lower, inner_upper, family))
        return LinearForm.NOT_LINEAR if inner is LinearForm.NOT_LINEAR else LinearForm.SAME_TYPE
    if j - i >= 2:
        return _match_type_gap_two(lower.steps, upper.steps, i, j, family)
    return _match_type_gap_one(lower.steps, upper.steps, i, family)


def all_intervals(
    n: int, p: PLike, guard: SizeGuardConfig = DEFAULT_GUARD
) -> list[Interval]:
    """Every interval of F_n^p, ordered by lower then upper."""
    family = FamilyParam.of(p)
    elements = enumerate_family(n, family, guard)
    order = order_matrix(elements, guard)
    lows, highs = np.nonzero(order)
    return [
        Interval(elements[a], elements[b], family)
        for a, b in zip(lows.tolist(), highs.tolist(), strict=True)
    ]


def heights_matrix(paths: list[DyckPath]) -> np.ndarray:
    width = 2 * paths[0].semilength + 1 if paths else 1
    matrix = np.zeros((len(paths), width), dtype=np.int16)
    for row, path in enumerate(paths):
        matrix[row] = path.heights
    return matrix


def order_matrix(
    paths: list[DyckPath], guard: SizeGuardConfig = DEFAULT_GUARD
) -> np.ndarray:
    """Boolean matrix M with M[a, b] true iff paths[a] <= paths[b]."""
    size = len(paths)
    if size * size > guard.max_comparisons:
        raise SizeGuardError(
            f"{size} elements need {size * size} comparisons, "
            f"above the limit {guard.max_comparisons}"
        )
    heights = heights_matrix(paths)
    order = np.empty((size, size), dtype=bool)
    for row in range(size):
        order[row] = (heights >= heights[row]).all(axis=1)
    return order


def _interval_sizes(order: np.ndarray, start: int, stop: int) -> np.ndarray:
    """Element counts of [i, j] for rows start:stop, one column block at a time."""
    size = order.shape[1]
    rows = order[start:stop].astype(np.float32)
    sizes = np.empty((stop - start, size), dtype=np.int64)
    for column in range(0, size, ROW_BLOCK):
        end = min(column + ROW_BLOCK, size)
        block = rows @ order[:, column:end].astype(np.float32)
        sizes[:, column:end] = np.rint(block).astype(np.int64)
    return sizes


def count_intervals(
    n: int,
    p: PLike,
    kind: IntervalKind | str = IntervalKind.ALL,
    guard: SizeGuardConfig = DEFAULT_GUARD,
    progress: bool = False,
) -> IntervalCounts:
    """
    Exhaustive interval histogram over ordered pairs of F_n^p.

    ALL is keyed by the first ascent gap, BOOLEAN and LINEAR by height.
    BOOLEAN and LINEAR use interval sizes from the squared order matrix:
    a distributive interval of height h is a chain iff it has h + 1
    elements and boolean iff it has 2^h elements.
    """
    family = FamilyParam.of(p)
    kind = IntervalKind(kind)
    size = family_size(n, family)
    if size * size > guard.max_comparisons:
        raise SizeGuardError(
            f"F_{n}^{family} needs {size * size} comparisons, "
            f"above the limit {guard.max_comparisons}"
        )
    elements = enumerate_family(n, family, guard)
    order = order_matrix(elements, guard)
    histogram: Counter[int] = Counter()

    if kind is IntervalKind.ALL:
        ascents = np.array([path.first_ascent for path in elements], dtype=np.int64)
        for row in range(size):
            gaps = ascents[order[row]] - ascents[row]
            for gap, count in enumerate(np.bincount(gaps).tolist()):
                if count:
                    histogram[gap] += count
        logger.debug("Counted %d intervals of F_%d^%s", sum(histogram.values()), n, family)
        return IntervalCounts(n, family, kind, "ascent_gap", dict(sorted(histogram.items())))

    areas = np.array([path.area for path in elements], dtype=np.int64)
    blocks = range(0, size, ROW_BLOCK)
    progress_bar = tqdm(
        blocks,
        desc=f"{kind.value} intervals F_{n}^{family}",
        unit="block",
        leave=False,
        disable=not progress,
    )
    try:
        for start in progress_bar:
            stop = min(start + ROW_BLOCK, size)
            sizes = _interval_sizes(order, start, stop)
            heights = areas[None, :] - areas[start:stop, None]
            comparable = order[start:stop]
            if kind is IntervalKind.LINEAR:
                selected = comparable & (sizes == heights + 1)
            else:
                expected = np.left_shift(1, np.clip(heights, 0, 62))
                selected = comparable & (sizes == expected)
            histogram.update(heights[selected].tolist())
    finally:
        progress_bar.close()

    return IntervalCounts(n, family, kind, "height", dict(sorted(histogram.items())))


def count_by_height(intervals: list[Interval]) -> dict[int, int]:
    return dict(sorted(Counter(interval.height for interval in intervals).items()))
