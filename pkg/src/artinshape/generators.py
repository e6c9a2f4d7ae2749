"""Concrete shapes and decompositions for the Weil transfer and involution variety.

``N`` is always the degree of the division algebra, an odd prime power.
Functions accept any odd ``N >= 1``; primality of the base is checked only at
the CLI boundary where ``(p, n)`` is given.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .shapes import A, F, GradedShape, direct_sum, make_shape

__all__ = [
    "Summand",
    "NamedDecomposition",
    "InvolutionCounts",
    "binomial",
    "projective_space_shape",
    "weil_closed",
    "weil_oracle",
    "weil_orbit_census",
    "upper_case1",
    "upper_case2",
    "decomposition_M",
    "decomposition_second",
    "decomposition_third",
    "involution_counts",
    "corollary_literal_counts",
    "flag_rank_oracle",
    "verify_final_identity",
]


def _require_odd(N: int) -> int:
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    if N % 2 == 0:
        raise ValueError(f"N must be odd (a power of an odd prime), got {N}")
    return N


_pascal_rows: list[list[int]] = [[1]]


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient from a cached Pascal triangle."""
    if n < 0 or k < 0 or k > n:
        return 0
    while len(_pascal_rows) <= n:
        prev = _pascal_rows[-1]
        _pascal_rows.append([1] + [a + b for a, b in zip(prev, prev[1:])] + [1])
    return _pascal_rows[n][k]


# -- shapes -------------------------------------------------------------


def projective_space_shape(N: int) -> GradedShape:
    """``F F ... F``: one Tate class at each shift ``0..N-1``."""
    if isinstance(N, bool) or not isinstance(N, int) or N < 1:
        raise ValueError(f"N must be a positive integer, got {N!r}")
    return GradedShape({i: (1, 0) for i in range(N)})


def weil_closed(N: int) -> GradedShape:
    """Shape of the Weil transfer of ``P^{N-1}`` from the pair/diagonal formula.

    Shift ``m`` carries one ``F`` if ``m`` is even and ``m <= 2N-2``, plus one
    ``F`` and one ``A`` for every pair ``i < j`` with ``i + j == m``.
    """
    _require_odd(N)
    entries = {}
    for m in range(2 * N - 1):
        lo = max(0, m - (N - 1))
        # number of i with lo <= i < m - i, i.e. i < m/2
        pairs = max(0, (m - 1) // 2 - lo + 1)
        diag = 1 if m % 2 == 0 else 0
        entries[m] = (pairs + diag, pairs)
    return GradedShape(entries)


def weil_oracle(N: int) -> GradedShape:
    """Brute-force the swap action on the cells ``(i, j)`` of ``P x P``.

    Fixed cells give ``F{2i}``; each two-element orbit is a rank-2
    permutation module and splits as ``F + A`` at its degree.
    """
    _require_odd(N)
    items = []
    seen = set()
    for i, j in itertools.product(range(N), repeat=2):
        if (i, j) in seen:
            continue
        orbit = {(i, j), (j, i)}
        seen |= orbit
        if len(orbit) == 1:
            items.append((i + j, F, 1))
        else:
            items.append((i + j, F, 1))
            items.append((i + j, A, 1))
    return make_shape(items)


def weil_orbit_census(N: int) -> tuple[int, int]:
    """Return ``(fixed cells, two-element orbits)`` of the factor swap."""
    _require_odd(N)
    fixed = sum(1 for i in range(N) for j in range(N) if i == j)
    moved = sum(1 for i in range(N) for j in range(N) if i != j)
    return fixed, moved // 2


def upper_case1(N: int) -> GradedShape:
    _require_odd(N)
    return projective_space_shape(N)


def upper_case2(N: int) -> GradedShape:
    """Alternating ``F A F A ... F`` of length ``N``."""
    _require_odd(N)
    return GradedShape({i: (1, 0) if i % 2 == 0 else (0, 1) for i in range(N)})


# -- decompositions -----------------------------------------------------


class Summand(NamedTuple):
    label: str
    tile: GradedShape
    shift: int


@dataclass(frozen=True)
class NamedDecomposition:
    """A list of shifted summands; ``total`` is always recomputed from them."""

    name: str
    summands: tuple[Summand, ...]
    total: GradedShape = field(init=False)

    def __post_init__(self):
        total = direct_sum(*(s.tile.shifted(s.shift) for s in self.summands))
        object.__setattr__(self, "total", total)

    def placements(self) -> list[tuple[str, int]]:
        """``(label, shift)`` pairs sorted by shift, then label."""
        return sorted(((s.label, s.shift) for s in self.summands), key=lambda p: (p[1], p[0]))

    def __len__(self) -> int:
        return len(self.summands)


def decomposition_M(N: int) -> NamedDecomposition:
    u = upper_case1(N)
    ua = u.twisted()
    half = (N - 1) // 2
    summands = [Summand("U1", u, 2 * i) for i in range(half + 1)]
    summands += [Summand("U1*A", ua, 2 * i - 1) for i in range(1, half + 1)]
    summands.sort(key=lambda s: (s.shift, s.label))
    return NamedDecomposition("M", tuple(summands))


def decomposition_second(N: int) -> NamedDecomposition:
    u = upper_case2(N)
    return NamedDecomposition("second", tuple(Summand("U2", u, i) for i in range(N)))


def decomposition_third(N: int) -> NamedDecomposition:
    """Decomposition of the involution variety; shifts stop at ``N - 2``."""
    u = upper_case2(N)
    return NamedDecomposition("third", tuple(Summand("U2", u, i) for i in range(N - 1)))


# -- counts -------------------------------------------------------------


class InvolutionCounts(NamedTuple):
    a: int
    b: int
    count_f: int
    count_a: int


def _check_level(N: int, i: int) -> None:
    _require_odd(N)
    if N < 3:
        raise ValueError("N must be at least 3 for isotropic ideals to exist")
    if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= (N - 1) // 2:
        raise ValueError(f"i must lie in 1..{(N - 1) // 2}, got {i!r}")


def involution_counts(N: int, i: int) -> InvolutionCounts:
    """F and A counts in the shape of the variety of rank-``i`` isotropic ideals.

    ``b`` is the total rank, ``a`` the number of Tate classes over the
    function field of the Borel variety; the shape has ``(b+a)/2`` copies of
    ``F`` and ``(b-a)/2`` copies of ``A``.
    """
    _check_level(N, i)
    a = 2**i * binomial((N - 1) // 2, i)
    b = binomial(N, i) * binomial(N - i, i)
    if (b + a) % 2:
        raise ArithmeticError(f"non-integral count for N={N}, i={i}: a={a}, b={b}")
    return InvolutionCounts(a, b, (b + a) // 2, (b - a) // 2)


def corollary_literal_counts(N: int) -> tuple[int, int]:
    """The counts ``((N+1)(N-1), (N-1)^2)`` as literally printed for ``Y_1``.

    These are twice :func:`involution_counts` at ``i = 1``; callers report the
    mismatch rather than pick a side.
    """
    _require_odd(N)
    return (N + 1) * (N - 1), (N - 1) ** 2


# exhaustive subset enumeration is cheap below this size
_ENUMERATION_LIMIT = 12


def flag_rank_oracle(N: int, i: int) -> int:
    """Count partial flags (i-plane inside an (N-i)-plane) by cell types.

    A Schubert cell of the flag variety corresponds to an ordered pair of
    disjoint ``i``-subsets of ``{0..N-1}`` (the jumps of the two flags).
    Small ``N`` enumerates them; large ``N`` uses the multinomial
    ``N! / (i! * i! * (N-2i)!)``.
    """
    _check_level(N, i)
    if N <= _ENUMERATION_LIMIT:
        ground = range(N)
        count = 0
        for first in itertools.combinations(ground, i):
            used = set(first)
            rest = [x for x in ground if x not in used]
            count += sum(1 for _ in itertools.combinations(rest, i))
        return count
    f = math.factorial
    return f(N) // (f(i) * f(i) * f(N - 2 * i))


def verify_final_identity(N: int) -> bool:
    """Check that M(Y) plus one more upper summand at ``N - 1`` gives the Weil shape."""
    lhs = decomposition_third(N).total + upper_case2(N).shifted(N - 1)
    return lhs == weil_closed(N)

