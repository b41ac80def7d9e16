"""Quadratic coefficient identities on Grassmann coordinates.

Each equation is a signed sum of products of two coefficients, labeled by a
pair ``(j, k)`` of multi-indices.  The classical system moves one index from
``k`` to ``j`` per term; the two-index variant moves two.  Both are produced
in *raw* form (generation order, coefficients exactly +-1, duplicate
monomials possible) and can be normalized to a *canonical* form suitable for
comparison and deduplication.

Canonical form: like monomials collected, zero coefficients dropped, the
coefficient gcd divided out, terms sorted lexicographically by
``(left, right)``, and the overall sign chosen so the first term is
positive.  An empty term list is the trivial equation ``0 = 0``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, NamedTuple

from .multiindex import (
    GrassmannParams,
    MultiIndex,
    as_multiindex,
    difference,
    inversion_pairs,
    ordered_union,
    symmetric_difference,
)

RAW = "raw"
CANONICAL = "canonical"

Label = tuple[MultiIndex, MultiIndex]

__all__ = [
    "RAW",
    "CANONICAL",
    "Label",
    "QuadTerm",
    "QuadraticEquation",
    "EquationSystem",
    "make_term",
    "raw_equation",
    "gen_plucker",
    "gen_plucker_like",
    "gen_generalized",
    "canonicalize",
    "collect_terms",
    "linear_combination",
    "dedupe",
    "size_ratio",
]


class QuadTerm(NamedTuple):
    """One signed monomial ``coefficient * lam_left * lam_right``.

    Storage is normalized so ``left <= right`` lexicographically; the
    monomial itself is an unordered pair.
    """

    coefficient: int
    left: MultiIndex
    right: MultiIndex


def make_term(coefficient: int, a: MultiIndex, b: MultiIndex) -> QuadTerm:
    """Build a term with the unordered monomial stored in sorted order."""
    if coefficient == 0:
        raise ValueError("term coefficient must be non-zero")
    if b < a:
        a, b = b, a
    return QuadTerm(coefficient, a, b)


@dataclass(frozen=True)
class QuadraticEquation:
    """A signed list of quadratic terms with its generating label ``(j, k)``.

    ``form`` records whether the terms are as generated ("raw") or
    normalized ("canonical"); it is bookkeeping and excluded from equality.
    """

    params: GrassmannParams
    label: Label
    terms: tuple[QuadTerm, ...]
    form: str = field(default=RAW, compare=False)

    @property
    def is_trivial(self) -> bool:
        return not canonicalize(self).terms


@dataclass(frozen=True)
class EquationSystem:
    """An ordered collection of equations for fixed (n, p) and half-width m.

    Generated systems are ordered row-major lexicographically over (j, k):
    j ranges over size p-m multi-indices (outer), k over size p+m (inner).
    """

    params: GrassmannParams
    m: int
    equations: tuple[QuadraticEquation, ...]

    def __len__(self) -> int:
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)


def raw_equation(params: GrassmannParams, j: Iterable[int], k: Iterable[int], m: int) -> QuadraticEquation:
    """Generate the raw equation for one label ``(j, k)`` moving ``m`` indices.

    One term per size-``m`` subset ``ii`` of ``k \\ j``, in lexicographic
    order over ``ii``, with coefficient ``(-1) ** <j^k | ii>`` where ``^`` is
    the symmetric difference and ``< | >`` the inversion-pair count.
    """
    j = as_multiindex(j)
    k = as_multiindex(k)
    if len(j) != params.p - m or len(k) != params.p + m:
        raise ValueError(
            f"label sizes must be (p-m, p+m) = ({params.p - m}, {params.p + m}), "
            f"got ({len(j)}, {len(k)})"
        )
    if (j and j[-1] > params.n) or (k and k[-1] > params.n):
        raise ValueError(f"label indices must lie in 1..{params.n}")
    moved = difference(k, j)
    sym = symmetric_difference(j, k)
    terms = []
    for ii in combinations(moved, m):
        sign = -1 if inversion_pairs(sym, ii) & 1 else 1
        terms.append(make_term(sign, ordered_union(j, ii), difference(k, ii)))
    return QuadraticEquation(params, (j, k), tuple(terms), RAW)


def _equations_for_j(task: tuple[GrassmannParams, int, MultiIndex]) -> list[QuadraticEquation]:
    params, m, j = task
    return [
        raw_equation(params, j, k, m)
        for k in combinations(params.indices, params.p + m)
    ]


def gen_generalized(params: GrassmannParams, m: int, jobs: int = 1) -> EquationSystem:
    """Generate the full system moving ``m`` indices per term.

    ``m = 1`` is the classical system, ``m = 2`` the two-index variant; the
    construction is parametric but only those two carry structural
    guarantees.  Requires ``1 <= m <= min(p, n - p)``.

    With ``jobs > 1`` the labels are generated in a process pool; results
    are assembled in the deterministic row-major order either way.
    """
    n, p = params.n, params.p
    if not 1 <= m <= min(p, n - p):
        raise ValueError(
            f"m must satisfy 1 <= m <= min(p, n-p) = {min(p, n - p)}, got {m}"
        )
    j_list = list(combinations(params.indices, p - m))
    if jobs > 1 and len(j_list) > 1:
        tasks = [(params, m, j) for j in j_list]
        chunksize = max(1, len(tasks) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            blocks = list(pool.map(_equations_for_j, tasks, chunksize=chunksize))
        equations = tuple(eq for block in blocks for eq in block)
    else:
        equations = tuple(
            eq for j in j_list for eq in _equations_for_j((params, m, j))
        )
    return EquationSystem(params, m, equations)


def gen_plucker(params: GrassmannParams, jobs: int = 1) -> EquationSystem:
    """The classical system: C(n, p-1) * C(n, p+1) raw equations."""
    return gen_generalized(params, 1, jobs=jobs)


def gen_plucker_like(params: GrassmannParams, jobs: int = 1) -> EquationSystem:
    """The two-index system: C(n, p-2) * C(n, p+2) raw equations."""
    return gen_generalized(params, 2, jobs=jobs)


def collect_terms(terms: Iterable[QuadTerm]) -> dict[tuple[MultiIndex, MultiIndex], int]:
    """Collect like monomials into a map ``(left, right) -> coefficient``.

    Zero totals are dropped, so two term lists are equal as polynomials
    exactly when their collected maps are equal.
    """
    acc: dict[tuple[MultiIndex, MultiIndex], int] = {}
    for term in terms:
        key = (term.left, term.right)
        total = acc.get(key, 0) + term.coefficient
        if total:
            acc[key] = total
        elif key in acc:
            del acc[key]
    return acc


def canonicalize(eq: QuadraticEquation) -> QuadraticEquation:
    """Return the canonical form of ``eq``; idempotent."""
    collected = sorted(collect_terms(eq.terms).items())
    if not collected:
        return QuadraticEquation(eq.params, eq.label, (), CANONICAL)
    divisor = 0
    for _, coeff in collected:
        divisor = gcd(divisor, abs(coeff))
    if collected[0][1] < 0:
        divisor = -divisor
    terms = tuple(
        QuadTerm(coeff // divisor, left, right) for (left, right), coeff in collected
    )
    return QuadraticEquation(eq.params, eq.label, terms, CANONICAL)


def linear_combination(
    weighted: Iterable[tuple[int, QuadraticEquation]],
    params: GrassmannParams,
    label: Label = ((), ()),
) -> QuadraticEquation:
    """Raw equation formed by an integer linear combination of equations."""
    terms: list[QuadTerm] = []
    for weight, eq in weighted:
        if weight == 0:
            continue
        for term in eq.terms:
            terms.append(QuadTerm(weight * term.coefficient, term.left, term.right))
    return QuadraticEquation(params, label, tuple(terms), RAW)


def dedupe(
    system: EquationSystem,
) -> tuple[list[QuadraticEquation], dict[tuple[QuadTerm, ...], list[Label]]]:
    """Drop trivial and repeated equations.

    Returns the distinct non-trivial canonical equations in first-occurrence
    order, plus a multiplicity map from canonical term tuple to every source
    label producing it (the empty tuple collects the trivial labels).
    """
    reduced: list[QuadraticEquation] = []
    multiplicity: dict[tuple[QuadTerm, ...], list[Label]] = {}
    for eq in system.equations:
        canonical = canonicalize(eq)
        seen = canonical.terms in multiplicity
        multiplicity.setdefault(canonical.terms, []).append(eq.label)
        if canonical.terms and not seen:
            reduced.append(canonical)
    return reduced, multiplicity


def size_ratio(params: GrassmannParams) -> Fraction:
    """Exact ratio |one-index system| / |two-index system|.

    Equals ``(p+2)(n-p+2) / ((p-1)(n-p-1))`` for ``2 <= p <= n-2``.
    """
    n, p = params.n, params.p
    if not 2 <= p <= n - 2:
        raise ValueError(f"ratio defined for 2 <= p <= n-2, got p={p}, n={n}")
    return Fraction((p + 2) * (n - p + 2), (p - 1) * (n - p - 1))
