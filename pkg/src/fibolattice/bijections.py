"""
Bijections between F_n^p and three other Fibonacci families.

- Non-decreasing Catalan words with no p+1 equal consecutive letters
- Compositions of n with parts in [1, p], ordered by dominance
- Subsets of [1, n-1] with no p consecutive elements, ranked by their sum

Lower lattice elements have pointwise larger Catalan letters: (UD)^n maps
to 0 1 2 ... n-1 and U^n D^n to 0 0 ... 0.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import accumulate, groupby, zip_longest

from fibolattice.dyckpath import DyckPath, require_member
from fibolattice.errors import (
    AmbientMismatchError,
    InvalidCompositionError,
    InvalidSubsetError,
    InvalidWordError,
    LengthMismatchError,
    TotalMismatchError,
)
from fibolattice.family import FamilyParam, PLike


@dataclass(frozen=True)
class CatalanWord:
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        letters = self.letters
        if letters and letters[0] != 0:
            raise InvalidWordError(f"Catalan word must start with 0, got {letters!r}")
        for previous, current in zip(letters, letters[1:], strict=False):
            if not previous <= current <= previous + 1:
                raise InvalidWordError(
                    f"Letters must be non-decreasing with steps of at most 1, got {letters!r}"
                )

    def longest_repeat(self) -> int:
        return max((len(list(run)) for _, run in groupby(self.letters)), default=0)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(str(letter) for letter in self.letters)


@dataclass(frozen=True)
class Composition:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if any(part < 1 for part in self.parts):
            raise InvalidCompositionError(f"Parts must be positive, got {self.parts!r}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def partial_sums(self) -> list[int]:
        return list(accumulate(self.parts))

    def __len__(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class SubsetRepr:
    members: frozenset[int]
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        if self.n < 0:
            raise InvalidSubsetError(f"Ambient semilength must be non-negative, got {self.n}")
        outside = sorted(m for m in self.members if not 1 <= m <= self.n - 1)
        if outside:
            raise InvalidSubsetError(f"Elements {outside} lie outside [1, {self.n - 1}]")

    @property
    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def longest_run(self) -> int:
        """Length of the longest block of consecutive integers."""
        best = run = 0
        previous = None
        for member in self.sorted_members:
            run = run + 1 if previous is not None and member == previous + 1 else 1
            best = max(best, run)
            previous = member
        return best

    def __len__(self) -> int:
        return len(self.members)


# --- Catalan words ---


def to_catalan_word(path: DyckPath, p: PLike = None) -> CatalanWord:
    """Letter i counts the U steps right of the i-th D, Ds labelled from the right."""
    require_member(path, p)
    letters = []
    ups_to_the_right = 0
    for step in reversed(path.steps):
        if step == "U":
            ups_to_the_right += 1
        else:
            letters.append(ups_to_the_right)
    return CatalanWord(tuple(letters))


def from_catalan_word(word: CatalanWord | list[int] | tuple[int, ...], p: PLike) -> DyckPath:
    family = FamilyParam.of(p)
    if not isinstance(word, CatalanWord):
        word = CatalanWord(tuple(word))
    if not family.allows_descent(word.longest_repeat()):
        raise InvalidWordError(
            f"Word {word} repeats a letter more than {family} times in a row"
        )
    if not word.letters:
        return DyckPath.empty()
    multiplicity = Counter(word.letters)
    top = max(word.letters)
    n = len(word)
    steps = "U" * (n - top) + "D" * multiplicity[top]
    steps += "".join("U" + "D" * multiplicity[k] for k in range(top - 1, -1, -1))
    path = DyckPath.parse(steps)
    require_member(path, family)
    return path


def catalan_interval_check(lower: CatalanWord, upper: CatalanWord) -> bool:
    """True iff the word ``lower`` maps below ``upper``: letters of upper are smaller."""
    if len(lower) != len(upper):
        raise LengthMismatchError(f"Words have lengths {len(lower)} and {len(upper)}")
    return all(w <= v for v, w in zip(lower.letters, upper.letters, strict=True))


def catalan_covers(lower: CatalanWord, upper: CatalanWord) -> bool:
    """``upper`` is ``lower`` with exactly one letter decreased by one."""
    if len(lower) != len(upper):
        raise LengthMismatchError(f"Words have lengths {len(lower)} and {len(upper)}")
    differences = [v - w for v, w in zip(lower.letters, upper.letters, strict=True) if v != w]
    return differences == [1]


# --- compositions ---


def to_composition(path: DyckPath, p: PLike = None) -> Composition:
    """Descent run lengths read from right to left."""
    require_member(path, p)
    runs = [len(list(run)) for step, run in groupby(path.steps) if step == "D"]
    return Composition(tuple(reversed(runs)))


def from_composition(composition: Composition | list[int] | tuple[int, ...], p: PLike) -> DyckPath:
    """U^(n-k+1) D^(part k) U D^(part k-1) ... U D^(part 1)."""
    family = FamilyParam.of(p)
    if not isinstance(composition, Composition):
        composition = Composition(tuple(composition))
    parts = composition.parts
    if any(not family.allows_descent(part) for part in parts):
        raise InvalidCompositionError(f"Parts of {parts!r} must not exceed {family}")
    if not parts:
        return DyckPath.empty()
    n, k = composition.total, len(parts)
    steps = "U" * (n - k + 1) + "D" * parts[-1]
    steps += "".join("U" + "D" * part for part in reversed(parts[:-1]))
    return DyckPath.parse(steps)


def dominance_leq(first: Composition, second: Composition) -> bool:
    """Prefix sums of ``first`` never exceed those of ``second``."""
    if first.total != second.total:
        raise TotalMismatchError(f"Compositions of {first.total} and {second.total}")
    total = first.total
    return all(
        a <= b
        for a, b in zip_longest(
            first.partial_sums(), second.partial_sums(), fillvalue=total
        )
    )


def composition_covers(lower: Composition, upper: Composition, p: PLike = None) -> bool:
    """One unit moves from part i to part i-1, or a final part 1 merges into its neighbour."""
    family = FamilyParam.of(p)
    if lower.total != upper.total:
        raise TotalMismatchError(f"Compositions of {lower.total} and {upper.total}")
    if any(not family.allows_descent(part) for part in upper.parts):
        return False
    a, b = list(lower.parts), list(upper.parts)
    k = len(a)
    if len(b) == k:
        for i in range(1, k):
            if a[i] > 1:
                moved = a[:]
                moved[i - 1] += 1
                moved[i] -= 1
                if moved == b:
                    return True
        return False
    if len(b) == k - 1 and k >= 2 and a[-1] == 1:
        return b == a[:-2] + [a[-2] + 1]
    return False


# --- subsets ---


def to_subset(path: DyckPath, p: PLike = None) -> SubsetRepr:
    """Labels of the Ds after the first peak that are not preceded by U."""
    require_member(path, p)
    n = path.semilength
    if n == 0:
        return SubsetRepr(frozenset(), 0)
    steps = path.steps
    rest = steps[path.first_ascent + 1 :]
    members = set()
    label = 0
    previous = "D"
    for step in rest:
        if step == "D":
            label += 1
            if previous == "D":
                members.add(label)
        previous = step
    return SubsetRepr(frozenset(members), n)


def _check_subset_family(subset: SubsetRepr, family: FamilyParam) -> None:
    if family.bound is not None and subset.longest_run() >= family.bound:
        raise InvalidSubsetError(
            f"{subset.sorted_members} contains {family.bound} consecutive integers"
        )


def from_subset(subset: SubsetRepr, p: PLike) -> DyckPath:
    """U^(|A|+1) D followed, for i = 1 .. n-1, by D if i in A else UD."""
    family = FamilyParam.of(p)
    _check_subset_family(subset, family)
    if subset.n == 0:
        return DyckPath.empty()
    steps = "U" * (len(subset) + 1) + "D"
    steps += "".join("D" if i in subset.members else "UD" for i in range(1, subset.n))
    return DyckPath.parse(steps)


def subset_rank(subset: SubsetRepr) -> int:
    return sum(subset.members)


def complement_involution(subset: SubsetRepr) -> SubsetRepr:
    """[1, n-1] minus the subset; reverses the order of F_n^inf."""
    return SubsetRepr(frozenset(range(1, subset.n)) - subset.members, subset.n)


def _check_ambient(first: SubsetRepr, second: SubsetRepr) -> None:
    if first.n != second.n:
        raise AmbientMismatchError(f"Subsets of [1, {first.n - 1}] and [1, {second.n - 1}]")


def subset_interval_check(first: SubsetRepr, second: SubsetRepr, p: PLike = None) -> bool:
    """
    True iff the path of ``first`` lies below the path of ``second``.

    Either the sets are equal, or: the rank of first is smaller, first is no
    larger (with and without the element 1), and its elements sorted in
    decreasing order are termwise at most those of second.
    """
    family = FamilyParam.of(p)
    _check_ambient(first, second)
    _check_subset_family(first, family)
    _check_subset_family(second, family)
    if first.members == second.members:
        return True
    xs = sorted(first.members, reverse=True)
    ys = sorted(second.members, reverse=True)
    return (
        subset_rank(first) < subset_rank(second)
        and len(xs) <= len(ys)
        and len(first.members - {1}) <= len(second.members - {1})
        and all(x <= y for x, y in zip(xs, ys, strict=False))
    )


def subset_covers(lower: SubsetRepr, upper: SubsetRepr, p: PLike = None) -> bool:
    """Add the element 1, or shift one element x to a free x+1."""
    family = FamilyParam.of(p)
    _check_ambient(lower, upper)
    if family.bound is not None and upper.longest_run() >= family.bound:
        return False
    a, b = lower.members, upper.members
    if 1 not in a and b == a | {1}:
        return True
    return any(
        x + 1 not in a and x + 1 <= lower.n - 1 and b == (a - {x}) | {x + 1}
        for x in a
    )
