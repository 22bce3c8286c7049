"""
The Stanley order restricted to F_n^p.

- Comparison, meet and join through height profiles
- Upper and lower covers by local DU <-> UD rewriting plus a membership filter
- Meet- and join-irreducible elements, Turán edge counts, the rank
- Hasse diagrams as sorted edge lists or networkx digraphs
"""

from collections import Counter

import networkx as nx

from fibolattice.config import DEFAULT_GUARD, SizeGuardConfig
from fibolattice.dyckpath import (
    DyckPath,
    enumerate_family,
    family_size,
    in_family,
    low_mask,
    require_member,
)
from fibolattice.errors import InvalidInputError, LengthMismatchError, SizeGuardError
from fibolattice.family import FamilyParam, PLike
from fibolattice.logging_config import get_logger

logger = get_logger(__name__)

Edge = tuple[DyckPath, DyckPath]


def _check_same_length(first: DyckPath, second: DyckPath) -> None:
    if first.semilength != second.semilength:
        raise LengthMismatchError(
            f"Paths have semilengths {first.semilength} and {second.semilength}"
        )


def leq(first: DyckPath, second: DyckPath) -> bool:
    """True iff ``first`` lies weakly below ``second`` everywhere."""
    _check_same_length(first, second)
    if first.bits == second.bits:
        return True
    return all(a <= b for a, b in zip(first.heights, second.heights, strict=True))


def meet(first: DyckPath, second: DyckPath) -> DyckPath:
    """Lower envelope of the two paths."""
    _check_same_length(first, second)
    return DyckPath.from_heights(
        [min(a, b) for a, b in zip(first.heights, second.heights, strict=True)]
    )


def join(first: DyckPath, second: DyckPath) -> DyckPath:
    """Upper envelope of the two paths."""
    _check_same_length(first, second)
    return DyckPath.from_heights(
        [max(a, b) for a, b in zip(first.heights, second.heights, strict=True)]
    )


def _flip(path: DyckPath, position: int) -> DyckPath:
    return DyckPath(path.bits ^ (0b11 << position), path.semilength)


def upper_covers(path: DyckPath, p: PLike) -> list[DyckPath]:
    """Family members obtained by turning one valley DU into a peak UD."""
    family = require_member(path, p)
    # bit q set: step at q+1 is D and step at q is U
    valleys = (~path.bits >> 1) & path.bits & low_mask(path.length - 1)
    covers = []
    while valleys:
        low = valleys & -valleys
        candidate = _flip(path, low.bit_length() - 1)
        if in_family(candidate, family):
            covers.append(candidate)
        valleys ^= low
    covers.sort(key=DyckPath.sort_key)
    return covers


def lower_covers(path: DyckPath, p: PLike) -> list[DyckPath]:
    """Family members obtained by turning one peak UD into a valley DU."""
    family = require_member(path, p)
    peaks = (path.bits >> 1) & ~path.bits & low_mask(path.length - 1)
    heights = path.heights
    covers = []
    while peaks:
        low = peaks & -peaks
        position = low.bit_length() - 1
        # the peak's U is step 2n-2-q; it must start at height >= 1
        if heights[path.length - 2 - position] >= 1:
            candidate = _flip(path, position)
            if in_family(candidate, family):
                covers.append(candidate)
        peaks ^= low
    covers.sort(key=DyckPath.sort_key)
    return covers


def minimum_element(n: int) -> DyckPath:
    """(UD)^n, the bottom of every F_n^p."""
    if n < 0:
        raise InvalidInputError(f"Semilength must be non-negative, got {n}")
    return DyckPath(int("10" * n, 2) if n else 0, n)


def maximum_element(n: int, p: PLike) -> DyckPath:
    """Top of F_n^p: the path of the composition (p, ..., p, n mod p)."""
    family = FamilyParam.of(p)
    if n < 0:
        raise InvalidInputError(f"Semilength must be non-negative, got {n}")
    if n == 0:
        return DyckPath.empty()
    width = family.max_descent(n)
    parts = [width] * (n // width)
    if n % width:
        parts.append(n % width)
    k = len(parts)
    # U^(n-k+1) D^(last part) U D^(part k-1) ... U D^(part 1)
    steps = "U" * (n - k + 1) + "D" * parts[-1]
    steps += "".join("U" + "D" * part for part in reversed(parts[:-1]))
    return DyckPath.parse(steps)


def lattice_rank(n: int, p: PLike) -> int:
    """Height of F_n^p, i.e. the area of its top element."""
    family = FamilyParam.of(p)
    if n < 0:
        raise InvalidInputError(f"Semilength must be non-negative, got {n}")
    full = n * (n - 1) // 2
    if family.bound is None or n == 0:
        return full
    p_value = family.bound
    q = (n - 1) // p_value
    return full - (q * n - p_value * q * (q + 1) // 2)


def turan_edges(n: int, p: int | FamilyParam) -> int:
    """Edges of the balanced complete p-partite graph on n vertices."""
    if isinstance(p, FamilyParam):
        if p.bound is None:
            raise InvalidInputError("Turán edge counts need a finite p")
        p = p.bound
    if n < 0 or p < 2:
        raise InvalidInputError(f"Need n >= 0 and p >= 2, got n={n}, p={p}")
    by_formula = n * n * (p - 1) // (2 * p)
    base, extra = divmod(n, p)
    sizes = [base + 1] * extra + [base] * (p - extra)
    by_partition = (n * n - sum(size * size for size in sizes)) // 2
    assert by_formula == by_partition, (n, p, by_formula, by_partition)
    return by_formula


def meet_irreducibles(
    n: int, p: PLike, guard: SizeGuardConfig = DEFAULT_GUARD
) -> list[DyckPath]:
    """Elements with exactly one upper cover."""
    family = FamilyParam.of(p)
    return [
        path
        for path in enumerate_family(n, family, guard)
        if len(upper_covers(path, family)) == 1
    ]


def join_irreducibles(
    n: int, p: PLike, guard: SizeGuardConfig = DEFAULT_GUARD
) -> list[DyckPath]:
    """Elements with exactly one lower cover."""
    family = FamilyParam.of(p)
    return [
        path
        for path in enumerate_family(n, family, guard)
        if len(lower_covers(path, family)) == 1
    ]


def cover_histogram(
    n: int, p: PLike, lower: bool = False, guard: SizeGuardConfig = DEFAULT_GUARD
) -> dict[int, int]:
    """Number of elements having k upper (or lower) covers, keyed by k."""
    family = FamilyParam.of(p)
    covers = lower_covers if lower else upper_covers
    counts = Counter(
        len(covers(path, family)) for path in enumerate_family(n, family, guard)
    )
    return dict(sorted(counts.items()))


def hasse_edges(n: int, p: PLike, guard: SizeGuardConfig = DEFAULT_GUARD) -> list[Edge]:
    """All cover pairs (P, Q) with P covered by Q, in canonical order."""
    family = FamilyParam.of(p)
    edges = [
        (path, cover)
        for path in enumerate_family(n, family, guard)
        for cover in upper_covers(path, family)
    ]
    edges.sort(key=lambda edge: (edge[0].sort_key(), edge[1].sort_key()))
    logger.debug("F_%d^%s has %d cover pairs", n, family, len(edges))
    return edges


def hasse_digraph(
    n: int, p: PLike, guard: SizeGuardConfig = DEFAULT_GUARD
) -> nx.DiGraph:
    """Hasse diagram with edges directed upwards; nodes carry their area."""
    family = FamilyParam.of(p)
    graph = nx.DiGraph()
    for path in enumerate_family(n, family, guard):
        graph.add_node(path, area=path.area)
    graph.add_edges_from(hasse_edges(n, family, guard))
    return graph


def longest_chain_length(
    n: int, p: PLike, guard: SizeGuardConfig = DEFAULT_GUARD
) -> int:
    return nx.dag_longest_path_length(hasse_digraph(n, p, guard))


def transitive_reduction_edges(
    n: int, p: PLike, guard: SizeGuardConfig = DEFAULT_GUARD
) -> list[Edge]:
    """Cover pairs recovered from the full order relation, without local rewriting."""
    family = FamilyParam.of(p)
    size = family_size(n, family)
    if size * size > guard.max_comparisons:
        raise SizeGuardError(
            f"Order relation of F_{n}^{family} needs {size * size} comparisons"
        )
    elements = enumerate_family(n, family, guard)
    order = nx.DiGraph()
    order.add_nodes_from(elements)
    order.add_edges_from(
        (low, high)
        for low in elements
        for high in elements
        if low != high and leq(low, high)
    )
    reduced = nx.transitive_reduction(order)
    return sorted(
        reduced.edges(), key=lambda edge: (edge[0].sort_key(), edge[1].sort_key())
    )
