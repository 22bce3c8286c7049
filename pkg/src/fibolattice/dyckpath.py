"""
Dyck paths packed into integers, family membership and enumeration.

A path of semilength n is stored as a 2n-bit integer read from the most
significant bit: U is 1 and D is 0. Factor searches (DUU, D^(p+1), valleys,
peaks) are single shift-and-mask expressions. The step string over 'U'/'D'
is the interchange format.

Family F_n^p: Dyck paths avoiding DUU and, for finite p, D^(p+1).
Every nonempty member decomposes uniquely as U^(i-1) Q U D^i with
Q in F_(n-i)^p and i = type(P) <= p.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property, lru_cache

from fibolattice.config import DEFAULT_GUARD, SizeGuardConfig
from fibolattice.errors import (
    BadCharacterError,
    EmptyPathError,
    InvalidInputError,
    MalformedPathError,
    NotInFamilyError,
    SizeGuardError,
)
from fibolattice.family import FamilyParam, PLike
from fibolattice.logging_config import get_logger

logger = get_logger(__name__)

HeightProfile = tuple[int, ...]

_STEP_TO_BIT = str.maketrans("UD", "10")
_BIT_TO_STEP = str.maketrans("10", "UD")


def low_mask(width: int) -> int:
    """Integer with the ``width`` lowest bits set."""
    return (1 << width) - 1 if width > 0 else 0


@dataclass(frozen=True)
class DyckPath:
    """Immutable Dyck path; equality and hashing use the packed bits only."""

    bits: int
    semilength: int

    @classmethod
    def parse(cls, text: str) -> DyckPath:
        """Build a path from its step string, validating the Dyck conditions."""
        bad = set(text) - {"U", "D"}
        if bad:
            raise BadCharacterError(
                f"Step string may only contain 'U' and 'D', found {sorted(bad)!r}"
            )
        level = 0
        for position, step in enumerate(text):
            level += 1 if step == "U" else -1
            if level < 0:
                raise MalformedPathError(
                    f"Path {text!r} goes below the axis at step {position + 1}"
                )
        if level != 0:
            raise MalformedPathError(f"Path {text!r} does not end on the axis")
        n = len(text) // 2
        _check_semilength(n)
        bits = int(text.translate(_STEP_TO_BIT), 2) if text else 0
        return cls(bits, n)

    @classmethod
    def empty(cls) -> DyckPath:
        return cls(0, 0)

    @classmethod
    def from_heights(cls, heights: Sequence[int]) -> DyckPath:
        """Inverse of ``heights``: rebuild the path from its ordinates."""
        if len(heights) % 2 != 1 or heights[0] != 0 or heights[-1] != 0:
            raise MalformedPathError(
                "Height profile must have odd length and start and end at 0"
            )
        bits = 0
        for before, after in zip(heights, heights[1:], strict=False):
            if after < 0 or abs(after - before) != 1:
                raise MalformedPathError(f"Invalid height profile {tuple(heights)!r}")
            bits = (bits << 1) | (after > before)
        n = (len(heights) - 1) // 2
        _check_semilength(n)
        return cls(bits, n)

    @property
    def length(self) -> int:
        return 2 * self.semilength

    @cached_property
    def steps(self) -> str:
        if self.semilength == 0:
            return ""
        return format(self.bits, f"0{self.length}b").translate(_BIT_TO_STEP)

    @cached_property
    def heights(self) -> HeightProfile:
        level = 0
        profile = [0]
        for step in self.steps:
            level += 1 if step == "U" else -1
            profile.append(level)
        return tuple(profile)

    @property
    def area(self) -> int:
        """Number of DU -> UD swaps separating the path from (UD)^n."""
        return (sum(self.heights) - self.semilength) // 2

    @property
    def first_ascent(self) -> int:
        """Length of the leading run of U steps."""
        if self.semilength == 0:
            return 0
        return self.length - (self.bits ^ low_mask(self.length)).bit_length()

    @property
    def first_descent(self) -> int:
        """Length of the first run of D steps."""
        if self.semilength == 0:
            return 0
        rest_width = self.length - self.first_ascent
        rest = self.bits & low_mask(rest_width)
        return rest_width - rest.bit_length()

    @property
    def path_type(self) -> int:
        """Length of the final descent run."""
        if self.semilength == 0:
            raise EmptyPathError("type() is undefined on the empty path")
        return (self.bits & -self.bits).bit_length() - 1

    def sort_key(self) -> tuple[int, int]:
        """Lexicographic order on step strings with U < D."""
        return (self.semilength, -self.bits)

    def contains_duu(self) -> bool:
        w = self.bits
        return bool(w & (w >> 1) & (~w >> 2) & low_mask(self.length - 2))

    def longest_descent(self) -> int:
        """Length of the longest run of consecutive D steps."""
        z = ~self.bits & low_mask(self.length)
        run = 0
        while z:
            z &= z >> 1
            run += 1
        return run

    def __add__(self, other: DyckPath) -> DyckPath:
        if not isinstance(other, DyckPath):
            return NotImplemented
        n = self.semilength + other.semilength
        _check_semilength(n)
        return DyckPath((self.bits << other.length) | other.bits, n)

    def __str__(self) -> str:
        return self.steps

    def __repr__(self) -> str:
        return f"DyckPath({self.steps!r})"


def _check_semilength(n: int, guard: SizeGuardConfig = DEFAULT_GUARD) -> None:
    if n > guard.max_semilength:
        raise SizeGuardError(
            f"Semilength {n} exceeds the supported maximum {guard.max_semilength}"
        )


def parse_path(text: str) -> DyckPath:
    return DyckPath.parse(text)


def height_profile(path: DyckPath) -> HeightProfile:
    return path.heights


def area(path: DyckPath) -> int:
    return path.area


def path_type(path: DyckPath) -> int:
    return path.path_type


def in_family(path: DyckPath, p: PLike) -> bool:
    """True iff the path avoids DUU and, for finite p, D^(p+1)."""
    family = FamilyParam.of(p)
    if path.contains_duu():
        return False
    if family.bound is None:
        return True
    z = ~path.bits & low_mask(path.length)
    run = z
    for shift in range(1, family.bound + 1):
        run &= z >> shift
        if not run:
            return True
    return not run


def require_member(path: DyckPath, p: PLike) -> FamilyParam:
    """Return the coerced family parameter, raising if ``path`` is not a member."""
    family = FamilyParam.of(p)
    if not in_family(path, family):
        raise NotInFamilyError(f"{path.steps or 'ε'} is not in F_{path.semilength}^{family}")
    return family


def decompose(path: DyckPath, p: PLike) -> tuple[int, DyckPath]:
    """Split P = U^(i-1) Q U D^i with i = type(P)."""
    if path.semilength == 0:
        raise EmptyPathError("The empty path has no decomposition")
    require_member(path, p)
    i = path.path_type
    m = path.semilength - i
    q_bits = (path.bits >> (i + 1)) & low_mask(2 * m)
    return i, DyckPath(q_bits, m)


def compose(i: int, inner: DyckPath) -> DyckPath:
    """Inverse of ``decompose``: U^(i-1) Q U D^i."""
    if i < 1:
        raise InvalidInputError(f"Decomposition index must be positive, got {i}")
    n = inner.semilength + i
    _check_semilength(n)
    return DyckPath(_compose_bits(i, inner.bits, inner.semilength), n)


def _compose_bits(i: int, q: int, m: int) -> int:
    return ((low_mask(i - 1) << (2 * m) | q) << (i + 1)) | (1 << i)


@lru_cache(maxsize=None)
def family_size(n: int, p: PLike) -> int:
    """|F_n^p|: generalized Fibonacci numbers, or 2^(n-1) for p = infinity."""
    family = FamilyParam.of(p)
    if n < 0:
        return 0
    if n == 0:
        return 1
    if family.bound is None:
        return 2 ** (n - 1)
    return sum(family_size(n - i, family) for i in range(1, min(family.bound, n) + 1))


@lru_cache(maxsize=64)
def _family_bits(n: int, family: FamilyParam) -> tuple[int, ...]:
    if n == 0:
        return (0,)
    if family.bound is None:
        if n == 1:
            return (0b10,)
        previous = _family_bits(n - 1, family)
        top = 1 << (2 * n - 1)
        members = [(q << 2) | 0b10 for q in previous]
        members.extend(top | (q << 1) for q in previous)
    else:
        members = [
            _compose_bits(i, q, n - i)
            for i in range(1, min(family.bound, n) + 1)
            for q in _family_bits(n - i, family)
        ]
    members.sort(reverse=True)
    return tuple(members)


def enumerate_family(
    n: int, p: PLike, guard: SizeGuardConfig = DEFAULT_GUARD
) -> list[DyckPath]:
    """All of F_n^p in canonical order, built from the unique decomposition."""
    family = FamilyParam.of(p)
    if n < 0:
        raise InvalidInputError(f"Semilength must be non-negative, got {n}")
    _check_semilength(n, guard)
    size = family_size(n, family)
    if size > guard.max_elements:
        raise SizeGuardError(
            f"F_{n}^{family} has {size} elements, above the limit {guard.max_elements}"
        )
    logger.debug("Enumerating F_%d^%s (%d elements)", n, family, size)
    return [DyckPath(bits, n) for bits in _family_bits(n, family)]


def sort_paths(paths: Iterable[DyckPath]) -> list[DyckPath]:
    return sorted(paths, key=DyckPath.sort_key)
