"""
Bicolored Motzkin paths and the interval <-> word bijection.

Intervals of F_n^p are grown from [UD, UD] by inserting a peak UD into the
first ascent of both endpoints. At each step an endpoint either keeps the
length of its first ascent or grows it by one; the four combinations are
the four letters:

    UP     lower keeps, upper grows
    DOWN   lower grows, upper keeps
    FLAT1  both keep
    FLAT2  both grow

so the height of the word is the first ascent gap of the interval. For a
finite p the first descent of an endpoint grows with each consecutive
"grow" and must stay <= p, which is exactly what the forbidden factors
{FLAT2, UP}^p and {FLAT2, DOWN}^p exclude.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum

from fibolattice.dyckpath import DyckPath, in_family
from fibolattice.errors import (
    BadCharacterError,
    EmptyIntervalError,
    IllegalInsertionError,
    InvalidInputError,
    PatternViolationError,
    QuarterPlaneViolationError,
)
from fibolattice.family import FamilyParam, PLike
from fibolattice.intervals import Interval
from fibolattice.lattice import leq
from fibolattice.logging_config import get_logger

logger = get_logger(__name__)


class MotzkinStep(Enum):
    UP = "U"
    DOWN = "D"
    FLAT1 = "F"
    FLAT2 = "G"

    @property
    def delta(self) -> int:
        return {"U": 1, "D": -1}.get(self.value, 0)

    @property
    def lower_grows(self) -> bool:
        return self in (MotzkinStep.DOWN, MotzkinStep.FLAT2)

    @property
    def upper_grows(self) -> bool:
        return self in (MotzkinStep.UP, MotzkinStep.FLAT2)

    @classmethod
    def from_growth(cls, lower_grows: bool, upper_grows: bool) -> MotzkinStep:
        return _BY_GROWTH[(lower_grows, upper_grows)]


_BY_GROWTH = {
    (False, True): MotzkinStep.UP,
    (True, False): MotzkinStep.DOWN,
    (False, False): MotzkinStep.FLAT1,
    (True, True): MotzkinStep.FLAT2,
}
_FLAT_SWAP = str.maketrans("FG", "GF")


@dataclass(frozen=True)
class BicoloredMotzkinPath:
    steps: tuple[MotzkinStep, ...]

    @classmethod
    def parse(cls, text: str) -> BicoloredMotzkinPath:
        """Read a word over the letters U, D, F (first flat color), G (second)."""
        try:
            return cls(tuple(MotzkinStep(letter) for letter in text))
        except ValueError:
            bad = sorted(set(text) - {"U", "D", "F", "G"})
            raise BadCharacterError(
                f"Motzkin word may only contain U, D, F, G, found {bad!r}"
            ) from None

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((step.delta for step in self.steps), initial=0))

    @property
    def final_height(self) -> int:
        return self.heights[-1]

    def is_quarter_plane(self) -> bool:
        return min(self.heights) >= 0

    def swap_flat_colors(self) -> BicoloredMotzkinPath:
        """Exchange the two flat colors (figure drawings use the other coloring)."""
        return BicoloredMotzkinPath.parse(str(self).translate(_FLAT_SWAP))

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return "".join(step.value for step in self.steps)


@dataclass(frozen=True)
class PatternSet:
    """Forbidden factors, as words over U, D, F, G."""

    patterns: frozenset[str]

    def __post_init__(self) -> None:
        if any(not pattern for pattern in self.patterns):
            raise InvalidInputError("Patterns must be nonempty words")

    @property
    def max_length(self) -> int:
        return max((len(pattern) for pattern in self.patterns), default=0)

    def occurs_in(self, word: BicoloredMotzkinPath | str) -> bool:
        text = str(word)
        return any(pattern in text for pattern in self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self.patterns))


def forbidden_patterns(p: PLike) -> PatternSet:
    """Words that would push a first descent past p; none for p = inf."""
    family = FamilyParam.of(p)
    if family.bound is None:
        return PatternSet(frozenset())
    words = {
        "".join(letters)
        for alphabet in ("GU", "GD")
        for letters in itertools.product(alphabet, repeat=family.bound)
    }
    return PatternSet(frozenset(words))


def count_avoiding(
    length: int, p: PLike, by_final_height: bool = False
) -> int | dict[int, int]:
    """
    Quarter-plane words of the given length avoiding ``forbidden_patterns(p)``.

    Dynamic programming over (height, last L-1 letters), L being the length
    of the forbidden words.
    """
    if length < 0:
        raise InvalidInputError(f"Word length must be non-negative, got {length}")
    patterns = forbidden_patterns(p)
    window = patterns.max_length
    keep = max(window - 1, 0)
    states: Counter[tuple[int, str]] = Counter({(0, ""): 1})
    for _ in range(length):
        following: Counter[tuple[int, str]] = Counter()
        for (height, suffix), count in states.items():
            for step in MotzkinStep:
                new_height = height + step.delta
                if new_height < 0:
                    continue
                recent = suffix + step.value
                if window and len(recent) >= window and recent[-window:] in patterns.patterns:
                    continue
                following[(new_height, recent[-keep:] if keep else "")] += count
        states = following
    if not by_final_height:
        return sum(states.values())
    by_height: Counter[int] = Counter()
    for (height, _), count in states.items():
        by_height[height] += count
    return dict(sorted(by_height.items()))


def avoiding_words(length: int, p: PLike) -> Iterator[BicoloredMotzkinPath]:
    """Every quarter-plane word of the given length avoiding the patterns, in DFS order."""
    patterns = forbidden_patterns(p)
    window = patterns.max_length

    def extend(prefix: str, height: int) -> Iterator[str]:
        if len(prefix) == length:
            yield prefix
            return
        for step in MotzkinStep:
            new_height = height + step.delta
            word = prefix + step.value
            if new_height < 0:
                continue
            if window and len(word) >= window and word[-window:] in patterns.patterns:
                continue
            yield from extend(word, new_height)

    for word in extend("", 0):
        yield BicoloredMotzkinPath.parse(word)


def _delete_first_peak(steps: str) -> tuple[str, bool]:
    """Remove the leftmost UD; report whether the first ascent had grown."""
    position = steps.index("UD")
    grew = steps[position + 2 : position + 3] == "D"
    return steps[:position] + steps[position + 2 :], grew


def _insert_peak(steps: str, grow: bool) -> str:
    ascent = len(steps) - len(steps.lstrip("U"))
    position = ascent if grow else ascent - 1
    return steps[:position] + "UD" + steps[position:]


def interval_to_motzkin(interval: Interval) -> BicoloredMotzkinPath:
    """Word of length n-1 recording how the interval grows from [UD, UD]."""
    if interval.semilength == 0:
        raise EmptyIntervalError("Intervals of semilength 0 have no Motzkin word")
    lower, upper = interval.lower.steps, interval.upper.steps
    letters = []
    while len(lower) > 2:
        lower, lower_grew = _delete_first_peak(lower)
        upper, upper_grew = _delete_first_peak(upper)
        letters.append(MotzkinStep.from_growth(lower_grew, upper_grew))
    letters.reverse()
    return BicoloredMotzkinPath(tuple(letters))


def motzkin_to_interval(word: BicoloredMotzkinPath | str, p: PLike) -> Interval:
    """Replay the word from [UD, UD], inserting one peak per letter."""
    family = FamilyParam.of(p)
    if isinstance(word, str):
        word = BicoloredMotzkinPath.parse(word)
    if not word.is_quarter_plane():
        raise QuarterPlaneViolationError(f"Motzkin word {word} goes below the axis")
    if forbidden_patterns(family).occurs_in(word):
        raise PatternViolationError(
            f"Motzkin word {word} contains a pattern forbidden for p={family}"
        )
    lower, upper = "UD", "UD"
    for index, step in enumerate(word.steps):
        lower = _insert_peak(lower, step.lower_grows)
        upper = _insert_peak(upper, step.upper_grows)
        lower_path, upper_path = DyckPath.parse(lower), DyckPath.parse(upper)
        if not (
            in_family(lower_path, family)
            and in_family(upper_path, family)
            and leq(lower_path, upper_path)
        ):
            raise IllegalInsertionError(
                f"Letter {index + 1} of {word} leaves F^{family}: [{lower}, {upper}]"
            )
    return Interval(DyckPath.parse(lower), DyckPath.parse(upper), family)
