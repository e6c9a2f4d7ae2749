"""Exact tiling of graded shapes by shifted tiles.

Two search modes:

* :func:`greedy_peel` always covers the lowest uncovered class with the one
  tile that starts with that class. It requires a deterministic tile set and
  runs in time linear in the number of placements.
* :func:`exhaustive_tilings` backtracks over every multiset of placements and
  serves as the uniqueness oracle.

Both re-sum their output against the target before returning.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

from .generators import upper_case1, upper_case2, weil_closed
from .shapes import A, F, ArtinClass, GradedShape, direct_sum

__all__ = [
    "Tile",
    "Tiling",
    "TilingError",
    "StuckError",
    "NondeterministicError",
    "BoundExceeded",
    "Verdict",
    "greedy_peel",
    "exhaustive_tilings",
    "obstruction_ratio",
    "obstruction_divisibility",
    "UpperShapeReport",
    "infer_upper_shape",
    "case1_tiles",
    "case2_tiles",
    "DEFAULT_CAP",
    "DEFAULT_RANK_BOUND",
]

DEFAULT_CAP = 10_000
DEFAULT_RANK_BOUND = 200


class TilingError(Exception):
    """Base class for tiling failures."""


class StuckError(TilingError):
    """The target cannot be tiled by the given tiles."""


class NondeterministicError(TilingError):
    """Greedy peeling was asked to run on a tile set without unique leaders."""


class BoundExceeded(TilingError):
    """The instance is larger than the configured search bound."""


@dataclass(frozen=True)
class Tile:
    name: str
    shape: GradedShape

    def __post_init__(self):
        if self.shape.min_shift != 0:
            raise ValueError(f"tile {self.name!r} must be grounded (occupied at shift 0)")

    @property
    def leader(self) -> tuple[int, int]:
        """``(multF, multA)`` at shift 0."""
        return self.shape.entries[0]

    def twisted(self, name: str | None = None) -> "Tile":
        return Tile(name or f"{self.name}*A", self.shape.twisted())


class Tiling:
    """A multiset of ``(tile name, shift)`` placements."""

    __slots__ = ("placements",)

    def __init__(self, placements: Iterable[tuple[str, int]]):
        self.placements: tuple[tuple[str, int], ...] = tuple(
            sorted(placements, key=lambda p: (p[1], p[0]))
        )

    def total(self, tiles: Sequence[Tile] | dict[str, Tile]) -> GradedShape:
        lookup = tiles if isinstance(tiles, dict) else {t.name: t for t in tiles}
        return direct_sum(*(lookup[name].shape.shifted(s) for name, s in self.placements))

    def counts(self) -> Counter:
        return Counter(name for name, _ in self.placements)

    def shifted(self, k: int) -> "Tiling":
        return Tiling((name, s + k) for name, s in self.placements)

    def to_records(self) -> list[dict]:
        return [{"tile": name, "shift": s} for name, s in self.placements]

    def __len__(self) -> int:
        return len(self.placements)

    def __iter__(self):
        return iter(self.placements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tiling):
            return NotImplemented
        return self.placements == other.placements

    def __hash__(self) -> int:
        return hash(self.placements)

    def __repr__(self) -> str:
        return f"Tiling({list(self.placements)!r})"


def _checked(tiling: Tiling, target: GradedShape, tiles: Sequence[Tile]) -> Tiling:
    if tiling.total(tiles) != target:
        raise AssertionError("tiling does not re-sum to its target")
    return tiling


def _check_names(tiles: Sequence[Tile]) -> None:
    names = [t.name for t in tiles]
    if len(set(names)) != len(names):
        raise ValueError(f"tile names must be distinct: {names}")


# -- greedy ----------------------------------------------------------------


def greedy_peel(target: GradedShape, tiles: Sequence[Tile]) -> Tiling:
    """Peel tiles off the lowest uncovered shift until nothing is left.

    Every tile must start with a single class of multiplicity one, and no
    two tiles may start with the same class, so the lowest uncovered class
    names the next summand. When both classes are uncovered at the lowest
    shift, the one with more copies goes first (``F`` on ties); the order
    only affects the sequence of steps, never the result.
    """
    _check_names(tiles)
    by_leader: dict[ArtinClass, Tile] = {}
    for t in tiles:
        mf, ma = t.leader
        if mf + ma != 1:
            raise NondeterministicError(
                f"tile {t.name!r} must start with exactly one class of multiplicity 1"
            )
        cls = F if mf else A
        if cls in by_leader:
            raise NondeterministicError(
                f"tiles {by_leader[cls].name!r} and {t.name!r} both start with {cls}"
            )
        by_leader[cls] = t

    remaining = target
    placements = []
    while remaining:
        s = remaining.min_shift
        mf, ma = remaining.entries[s]
        cls = F if mf >= ma else A
        tile = by_leader.get(cls)
        if tile is None:
            raise StuckError(f"no tile starts with {cls} (needed at shift {s})")
        piece = tile.shape.shifted(s)
        if not remaining.contains(piece):
            raise StuckError(f"tile {tile.name!r} at shift {s} overshoots the target")
        remaining = remaining - piece
        placements.append((tile.name, s))
    return _checked(Tiling(placements), target, tiles)


# -- exhaustive ------------------------------------------------------------


def exhaustive_tilings(
    target: GradedShape,
    tiles: Sequence[Tile],
    cap: int = DEFAULT_CAP,
    rank_bound: int = DEFAULT_RANK_BOUND,
) -> list[Tiling]:
    """Enumerate every tiling of ``target``, each multiset once, up to ``cap``.

    The search always branches at the lowest uncovered shift. Placements at
    one shift are generated in nondecreasing tile index, which makes each
    multiset reachable by exactly one path.
    """
    _check_names(tiles)
    if target.rank > rank_bound:
        raise BoundExceeded(
            f"target rank {target.rank} exceeds the exhaustive search bound {rank_bound}"
        )
    if cap < 1:
        return []

    tile_rows = [t.shape.rows() for t in tiles]
    found: list[Tiling] = []

    # Remaining target kept as a mutable dict: shift -> [multF, multA].
    rem: dict[int, list[int]] = {s: [mf, ma] for s, mf, ma in target.rows()}
    live = sum(1 for v in rem.values() if v[0] or v[1])
    stack: list[tuple[str, int]] = []

    def fits(k: int, s: int) -> bool:
        for t, mf, ma in tile_rows[k]:
            row = rem.get(s + t)
            if row is None or row[0] < mf or row[1] < ma:
                return False
        return True

    def apply(k: int, s: int, sign: int) -> None:
        nonlocal live
        for t, mf, ma in tile_rows[k]:
            row = rem[s + t]
            was = row[0] or row[1]
            row[0] -= sign * mf
            row[1] -= sign * ma
            now = row[0] or row[1]
            if was and not now:
                live -= 1
            elif now and not was:
                live += 1

    def lowest() -> int:
        return min(s for s, v in rem.items() if v[0] or v[1])

    def search(start: int) -> bool:
        if live == 0:
            found.append(Tiling(stack))
            return len(found) >= cap
        s = lowest()
        for k in range(start, len(tiles)):
            if not fits(k, s):
                continue
            apply(k, s, +1)
            stack.append((tiles[k].name, s))
            same_shift = live > 0 and lowest() == s
            done = search(k if same_shift else 0)
            stack.pop()
            apply(k, s, -1)
            if done:
                return True
        return False

    search(0)
    return [_checked(t, target, tiles) for t in found]


# -- obstructions ----------------------------------------------------------


class Verdict(str, enum.Enum):
    EXCLUDED = "excluded"
    NOT_EXCLUDED = "not-excluded"
    IMPOSSIBLE = "impossible"
    POSSIBLE = "possible"

    def __str__(self) -> str:
        return self.value


def obstruction_ratio(target: GradedShape, tile: Tile) -> Verdict:
    """Decide whether ``tile`` can be ruled out by counting ``F`` against ``A``.

    The tile is paired with its twist ``tile * A``. If the twist has exactly
    the target's F:A ratio and ``tile`` does not, any tiling by the pair that
    uses ``tile`` at least once lands on the wrong ratio, so ``tile`` is
    excluded. A tile carrying ``A`` is also excluded from a target with none.
    """
    t = tile.shape
    if target.count_a == 0 and t.count_a > 0:
        return Verdict.EXCLUDED
    r_target = target.stats().ratio
    r_tile = t.stats().ratio
    r_partner = t.twisted().stats().ratio
    if r_partner == r_target and r_tile != r_target:
        return Verdict.EXCLUDED
    return Verdict.NOT_EXCLUDED


def obstruction_divisibility(target: GradedShape, tiles: Sequence[Tile]) -> Verdict:
    """Rule out a tile set when no combination can hit the target's F count.

    Every tiling contributes a nonnegative integer combination of the tiles'
    F counts, so the target's F count must be a multiple of their gcd.
    """
    g = reduce(math.gcd, (t.shape.count_f for t in tiles), 0)
    cf = target.count_f
    if g == 0:
        return Verdict.POSSIBLE if cf == 0 else Verdict.IMPOSSIBLE
    return Verdict.POSSIBLE if cf % g == 0 else Verdict.IMPOSSIBLE


# -- upper motive inference ------------------------------------------------


def case1_tiles(N: int) -> list[Tile]:
    u = Tile("U1", upper_case1(N))
    return [u, u.twisted("U1*A")]


def case2_tiles(N: int) -> list[Tile]:
    return [Tile("U2", upper_case2(N))]


@dataclass
class UpperShapeReport:
    N: int
    case1_feasible: bool
    case2_feasible: bool
    case1_tiling: Tiling | None
    case2_tiling: Tiling | None
    # None when the uniqueness check was skipped for size
    case1_unique: bool | None = None
    case2_unique: bool | None = None

    @property
    def dichotomy_holds(self) -> bool:
        return self.case1_feasible and self.case2_feasible


def _try_greedy(target, tiles):
    try:
        return greedy_peel(target, tiles)
    except StuckError:
        return None


def infer_upper_shape(
    N: int,
    exhaustive_up_to: int = 9,
    cap: int = DEFAULT_CAP,
    rank_bound: int = DEFAULT_RANK_BOUND,
) -> UpperShapeReport:
    """Tile the Weil shape with each candidate upper shape.

    For ``N <= exhaustive_up_to`` the exhaustive search also checks that
    each successful tiling is the only one.
    """
    target = weil_closed(N)
    t1, t2 = case1_tiles(N), case2_tiles(N)
    g1, g2 = _try_greedy(target, t1), _try_greedy(target, t2)
    report = UpperShapeReport(N, g1 is not None, g2 is not None, g1, g2)
    if N <= exhaustive_up_to:
        all1 = exhaustive_tilings(target, t1, cap=cap, rank_bound=rank_bound)
        all2 = exhaustive_tilings(target, t2, cap=cap, rank_bound=rank_bound)
        report.case1_unique = len(all1) == 1 and (g1 is None or all1[0] == g1)
        report.case2_unique = len(all2) == 1 and (g2 is None or all2[0] == g2)
    return report
