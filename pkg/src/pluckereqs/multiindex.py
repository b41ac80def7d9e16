"""Ordered multi-index combinatorics.

A multi-index is a strictly increasing tuple of positive integers such as
``(1, 3, 4)``, used throughout as the subscript of a basis blade or of a
coefficient.  The empty tuple is a valid multi-index.  All operations here
are pure and return plain tuples, so values are hashable and freely
shareable.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MultiIndex = tuple[int, ...]

__all__ = [
    "MultiIndex",
    "GrassmannParams",
    "as_multiindex",
    "inversion_pairs",
    "ordered_union",
    "difference",
    "symmetric_difference",
    "intersection",
    "subsets_of_size",
    "multinomial",
    "grassmann_codimension",
]


def as_multiindex(values: Iterable[int]) -> MultiIndex:
    """Validate ``values`` as a multi-index and return it as a tuple.

    >>> as_multiindex([1, 3, 4])
    (1, 3, 4)
    >>> as_multiindex(())
    ()
    """
    idx = tuple(int(v) for v in values)
    for pos, value in enumerate(idx):
        if value < 1:
            raise ValueError(f"multi-index entries must be >= 1, got {value}")
        if pos and idx[pos - 1] >= value:
            raise ValueError(f"multi-index must be strictly increasing, got {idx}")
    return idx


@dataclass(frozen=True)
class GrassmannParams:
    """Ambient dimension ``n`` and subspace dimension ``p``, with 1 <= p <= n."""

    n: int
    p: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if not 1 <= self.p <= self.n:
            raise ValueError(f"p must satisfy 1 <= p <= n, got p={self.p}, n={self.n}")

    @property
    def indices(self) -> range:
        """The index universe 1..n."""
        return range(1, self.n + 1)


def inversion_pairs(a: Sequence[int], b: Sequence[int]) -> int:
    """Count pairs ``(x, y)`` with ``x`` in ``a``, ``y`` in ``b`` and ``x > y``.

    Both arguments must be sorted ascending (multi-indices are).  Runs a
    binary-search scan instead of the quadratic double loop.

    >>> inversion_pairs((2, 3, 4, 5), (3,))
    2
    >>> inversion_pairs((1, 2, 3, 4, 5, 6), (2, 3))
    7
    """
    count = 0
    for y in b:
        count += len(a) - bisect_right(a, y)
    return count


def ordered_union(a: Iterable[int], b: Iterable[int]) -> MultiIndex:
    """Sorted duplicate-free union of two index sets."""
    return tuple(sorted(set(a) | set(b)))


def difference(a: Iterable[int], b: Iterable[int]) -> MultiIndex:
    """Sorted set difference ``a \\ b``."""
    return tuple(sorted(set(a) - set(b)))


def symmetric_difference(a: Iterable[int], b: Iterable[int]) -> MultiIndex:
    """Sorted symmetric difference of two index sets."""
    return tuple(sorted(set(a) ^ set(b)))


def intersection(a: Iterable[int], b: Iterable[int]) -> MultiIndex:
    """Sorted intersection of two index sets."""
    return tuple(sorted(set(a) & set(b)))


def subsets_of_size(source: Sequence[int], m: int) -> Iterator[MultiIndex]:
    """Yield the size-``m`` subsets of ``source`` in lexicographic order.

    >>> list(subsets_of_size((3, 4, 5), 1))
    [(3,), (4,), (5,)]
    >>> list(subsets_of_size((1, 2), 0))
    [()]
    """
    if not 0 <= m <= len(source):
        raise ValueError(f"subset size must satisfy 0 <= m <= {len(source)}, got {m}")
    return iter(combinations(tuple(source), m))


def multinomial(n: int, parts: Sequence[int]) -> int:
    """Exact multinomial coefficient ``n! / (parts[0]! * parts[1]! * ...)``.

    The parts must be non-negative and sum to ``n``.

    >>> multinomial(6, [4, 1, 1])
    30
    """
    if any(part < 0 for part in parts):
        raise ValueError(f"multinomial parts must be non-negative, got {list(parts)}")
    if sum(parts) != n:
        raise ValueError(f"multinomial parts must sum to {n}, got {list(parts)}")
    result = 1
    remaining = n
    for part in parts:
        result *= math.comb(remaining, part)
        remaining -= part
    return result


def grassmann_codimension(params: GrassmannParams) -> int:
    """Codimension of the embedded Gr(p, n): C(n, p) - 1 - p*(n - p).

    >>> grassmann_codimension(GrassmannParams(6, 3))
    10
    """
    n, p = params.n, params.p
    return math.comb(n, p) - 1 - p * (n - p)
