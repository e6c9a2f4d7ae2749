"""Graded Artin-Tate shapes.

A shape is a finite multiset of shifted rank-one classes, where each class is
either the Tate class ``F`` or the quadratic twist ``A``. Shapes form a
commutative semiring under direct sum and tensor product; ``A * A == F``.

Shapes are immutable. Internally a shape is stored as a sorted tuple of
``(shift, multF, multA)`` triples with no all-zero rows, so structural
equality is semantic equality.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Union

__all__ = [
    "ArtinClass",
    "F",
    "A",
    "GradedShape",
    "ShapeStats",
    "Params",
    "make_shape",
    "direct_sum",
    "shift",
    "tensor",
    "restrict_to_L",
    "stats",
    "EMPTY",
    "UNIT",
    "TWIST",
]

Ratio = Union[Fraction, float]


class ArtinClass(enum.Enum):
    F = "F"
    A = "A"

    def __mul__(self, other: "ArtinClass") -> "ArtinClass":
        if not isinstance(other, ArtinClass):
            return NotImplemented
        return ArtinClass.F if self is other else ArtinClass.A

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, token: str) -> "ArtinClass":
        try:
            return cls(token)
        except ValueError:
            raise ValueError(f"unknown Artin class {token!r}; expected 'F' or 'A'") from None


F = ArtinClass.F
A = ArtinClass.A


class ShapeStats(NamedTuple):
    rank: int
    count_f: int
    count_a: int
    # Fraction, or math.inf when count_a == 0 (including the empty shape).
    ratio: Ratio


def _check_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{what} must be an integer, got {value!r}")
    if value < 0:
        raise ValueError(f"{what} must be nonnegative, got {value}")
    return value


class GradedShape:
    """Immutable graded multiset of Artin classes.

    Build one with :func:`make_shape` or :meth:`from_mapping`; the constructor
    expects already-aggregated data and canonicalizes it.
    """

    __slots__ = ("_rows", "_hash")

    def __init__(self, entries: Mapping[int, tuple[int, int]] | None = None):
        rows = []
        for s, (mf, ma) in sorted((entries or {}).items()):
            _check_int(s, "shift")
            _check_int(mf, "multiplicity")
            _check_int(ma, "multiplicity")
            if mf or ma:
                rows.append((s, mf, ma))
        self._rows: tuple[tuple[int, int, int], ...] = tuple(rows)
        self._hash = hash(self._rows)

    @classmethod
    def from_mapping(cls, entries: Mapping[int, tuple[int, int]]) -> "GradedShape":
        return cls(entries)

    @classmethod
    def _trusted(cls, acc: Mapping[int, list[int]]) -> "GradedShape":
        # Skips validation; callers guarantee nonnegative ints.
        obj = cls.__new__(cls)
        obj._rows = tuple((s, mf, ma) for s, (mf, ma) in sorted(acc.items()) if mf or ma)
        obj._hash = hash(obj._rows)
        return obj

    # -- access ---------------------------------------------------------

    @property
    def entries(self) -> dict[int, tuple[int, int]]:
        """Mapping ``shift -> (multF, multA)`` of the occupied shifts."""
        return {s: (mf, ma) for s, mf, ma in self._rows}

    def rows(self) -> tuple[tuple[int, int, int], ...]:
        return self._rows

    def multiplicity(self, s: int, cls: ArtinClass) -> int:
        for t, mf, ma in self._rows:
            if t == s:
                return mf if cls is F else ma
        return 0

    def items(self) -> Iterable[tuple[int, ArtinClass, int]]:
        """Yield ``(shift, class, mult)`` records in canonical order."""
        for s, mf, ma in self._rows:
            if mf:
                yield s, F, mf
            if ma:
                yield s, A, ma

    def is_empty(self) -> bool:
        return not self._rows

    def __bool__(self) -> bool:
        return bool(self._rows)

    @property
    def min_shift(self) -> int | None:
        return self._rows[0][0] if self._rows else None

    @property
    def max_shift(self) -> int | None:
        return self._rows[-1][0] if self._rows else None

    @property
    def rank(self) -> int:
        return sum(mf + ma for _, mf, ma in self._rows)

    @property
    def count_f(self) -> int:
        return sum(mf for _, mf, _ in self._rows)

    @property
    def count_a(self) -> int:
        return sum(ma for _, _, ma in self._rows)

    # -- semiring ---------------------------------------------------------

    def __add__(self, other: "GradedShape") -> "GradedShape":
        if not isinstance(other, GradedShape):
            return NotImplemented
        acc: dict[int, list[int]] = {s: [mf, ma] for s, mf, ma in self._rows}
        for s, mf, ma in other._rows:
            row = acc.setdefault(s, [0, 0])
            row[0] += mf
            row[1] += ma
        return GradedShape._trusted(acc)

    def __mul__(self, other: "GradedShape") -> "GradedShape":
        if not isinstance(other, GradedShape):
            return NotImplemented
        acc: dict[int, list[int]] = {}
        for s, f1, a1 in self._rows:
            for t, f2, a2 in other._rows:
                row = acc.setdefault(s + t, [0, 0])
                # F*F = A*A = F, F*A = A*F = A
                row[0] += f1 * f2 + a1 * a2
                row[1] += f1 * a2 + a1 * f2
        return GradedShape._trusted(acc)

    def shifted(self, k: int) -> "GradedShape":
        _check_int(k, "shift amount")
        if k == 0:
            return self
        obj = GradedShape.__new__(GradedShape)
        obj._rows = tuple((s + k, mf, ma) for s, mf, ma in self._rows)
        obj._hash = hash(obj._rows)
        return obj

    def twisted(self) -> "GradedShape":
        """Tensor with ``A{0}``: swap the F and A multiplicities."""
        obj = GradedShape.__new__(GradedShape)
        obj._rows = tuple((s, ma, mf) for s, mf, ma in self._rows)
        obj._hash = hash(obj._rows)
        return obj

    def restricted(self) -> "GradedShape":
        return GradedShape._trusted({s: [mf + ma, 0] for s, mf, ma in self._rows})

    def contains(self, other: "GradedShape") -> bool:
        """True if ``other`` fits inside ``self`` as a sub-multiset."""
        mine = self.entries
        for s, mf, ma in other._rows:
            have = mine.get(s)
            if have is None or have[0] < mf or have[1] < ma:
                return False
        return True

    def __sub__(self, other: "GradedShape") -> "GradedShape":
        if not isinstance(other, GradedShape):
            return NotImplemented
        acc: dict[int, list[int]] = {s: [mf, ma] for s, mf, ma in self._rows}
        for s, mf, ma in other._rows:
            row = acc.get(s)
            if row is None or row[0] < mf or row[1] < ma:
                raise ValueError("subtraction would produce a negative multiplicity")
            row[0] -= mf
            row[1] -= ma
        return GradedShape._trusted(acc)

    def stats(self) -> ShapeStats:
        cf, ca = self.count_f, self.count_a
        ratio: Ratio = Fraction(cf, ca) if ca else math.inf
        return ShapeStats(cf + ca, cf, ca, ratio)

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedShape):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GradedShape({self.entries!r})"

    def __str__(self) -> str:
        return format_compact(self)


def format_compact(shape: GradedShape) -> str:
    """One token per shift from 0 to the top shift.

    A lone class of multiplicity one prints as ``F`` or ``A``; mixed or
    repeated classes print as e.g. ``2F+A``; an unoccupied shift prints as
    ``.``. The empty shape prints as ``0``.
    """
    if not shape:
        return "0"
    entries = shape.entries
    tokens = []
    for s in range(shape.max_shift + 1):
        mf, ma = entries.get(s, (0, 0))
        parts = []
        if mf:
            parts.append("F" if mf == 1 else f"{mf}F")
        if ma:
            parts.append("A" if ma == 1 else f"{ma}A")
        tokens.append("+".join(parts) or ".")
    return " ".join(tokens)


EMPTY = GradedShape()
UNIT = GradedShape({0: (1, 0)})
TWIST = GradedShape({0: (0, 1)})


def make_shape(items: Iterable[tuple[int, ArtinClass | str, int]]) -> GradedShape:
    """Aggregate ``(shift, class, multiplicity)`` items into a shape.

    >>> str(make_shape([(0, F, 1), (1, A, 1), (2, F, 1)]))
    'F A F'
    """
    acc: dict[int, list[int]] = {}
    for s, cls, m in items:
        _check_int(s, "shift")
        _check_int(m, "multiplicity")
        if not isinstance(cls, ArtinClass):
            cls = ArtinClass.parse(cls)
        row = acc.setdefault(s, [0, 0])
        row[0 if cls is F else 1] += m
    return GradedShape._trusted(acc)


def direct_sum(*shapes: GradedShape) -> GradedShape:
    out = EMPTY
    for s in shapes:
        out = out + s
    return out


def shift(shape: GradedShape, k: int) -> GradedShape:
    return shape.shifted(k)


def tensor(left: GradedShape, right: GradedShape) -> GradedShape:
    return left * right


def restrict_to_L(shape: GradedShape) -> GradedShape:
    """Base change to the quadratic extension: every ``A`` becomes ``F``."""
    return shape.restricted()


def stats(shape: GradedShape) -> ShapeStats:
    return shape.stats()


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    return all(m % d for d in range(3, math.isqrt(m) + 1, 2))


class Params(NamedTuple):
    """An odd prime ``p`` and exponent ``n``; ``N = p**n`` is the algebra degree."""

    p: int
    n: int

    @classmethod
    def validated(cls, p: int, n: int) -> "Params":
        if isinstance(p, bool) or not isinstance(p, int) or not _is_prime(p) or p == 2:
            raise ValueError(f"p must be an odd prime, got {p!r}")
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValueError(f"n must be a positive integer, got {n!r}")
        return cls(p, n)

    @property
    def N(self) -> int:
        return self.p**self.n
