"""Family parameter p selecting the lattice F_n^p (finite p >= 2, or infinity)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

INFINITY_TOKENS = frozenset({"inf", "infinity", "∞", "oo"})


@dataclass(frozen=True, order=False)
class FamilyParam:
    """
    Bound on descent runs: paths avoid D^(p+1) when ``bound`` is set.

    ``bound is None`` stands for p = infinity, where only DUU is forbidden.
    """

    bound: int | None

    INFINITY: ClassVar[FamilyParam]

    def __post_init__(self) -> None:
        if self.bound is not None:
            if isinstance(self.bound, bool) or not isinstance(self.bound, int):
                raise ValueError(f"p must be an integer or inf, got {self.bound!r}")
            if self.bound < 2:
                raise ValueError(f"p must be at least 2, got {self.bound}")

    @property
    def is_infinite(self) -> bool:
        return self.bound is None

    @classmethod
    def of(cls, value: int | str | float | FamilyParam | None) -> FamilyParam:
        """Coerce an int, ``"inf"``, ``math.inf`` or None into a FamilyParam."""
        if isinstance(value, FamilyParam):
            return value
        if value is None:
            return cls.INFINITY
        if isinstance(value, str):
            token = value.strip().lower()
            if token in INFINITY_TOKENS:
                return cls.INFINITY
            try:
                bound = int(token)
            except ValueError as exc:
                raise ValueError(f"Unknown family parameter {value!r}") from exc
            return cls(bound)
        if isinstance(value, float):
            if math.isinf(value) and value > 0:
                return cls.INFINITY
            if value.is_integer():
                return cls(int(value))
            raise ValueError(f"p must be an integer or inf, got {value!r}")
        return cls(value)

    @classmethod
    def parse_list(cls, text: str) -> tuple[FamilyParam, ...]:
        """Parse a comma separated list such as ``"2,3,inf"``."""
        items = [item for item in (part.strip() for part in text.split(",")) if item]
        if not items:
            raise ValueError("Empty list of family parameters")
        return tuple(cls.of(item) for item in items)

    def max_descent(self, n: int) -> int:
        """Longest descent run allowed in F_n^p."""
        return n if self.bound is None else self.bound

    def allows_descent(self, run: int) -> bool:
        return self.bound is None or run <= self.bound

    def to_json(self) -> int | str:
        return "inf" if self.bound is None else self.bound

    def sort_key(self) -> float:
        return math.inf if self.bound is None else float(self.bound)

    def __str__(self) -> str:
        return "inf" if self.bound is None else str(self.bound)

    def __repr__(self) -> str:
        return f"FamilyParam({self})"


FamilyParam.INFINITY = FamilyParam(None)
INFINITY = FamilyParam.INFINITY

PLike = int | str | float | FamilyParam | None
