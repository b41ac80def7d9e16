"""Structural relations between the one-index and two-index systems.

Covers four mechanically checkable facts about the two-index system:

* every two-index equation decomposes as a signed sum of one-index raw
  equations (with an overall factor of 2 after collecting like terms);
* stratifying labels by ``q = |j intersect k|`` splits the system into a
  3-term class (q = p-2), a 10-term class (q = p-3) grouped into families
  of six equations sharing one monomial set, and larger classes whose
  sizes follow multinomial counts;
* within a family, the signed sum of any two members collapses to a
  4-term one-index equation with an exact factor ``2 * (-1)**i2``;
* whether anything similar happens in the larger classes is unknown; an
  exploratory probe searches small integer combinations and reports its
  findings as data, asserting nothing.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable

from .equations import (
    Label,
    QuadraticEquation,
    QuadTerm,
    canonicalize,
    collect_terms,
    dedupe,
    gen_plucker,
    gen_plucker_like,
    linear_combination,
    raw_equation,
)
from .multiindex import (
    GrassmannParams,
    MultiIndex,
    as_multiindex,
    difference,
    intersection,
    inversion_pairs,
    multinomial,
    ordered_union,
    symmetric_difference,
)

PROBE_NOTE = "exploratory - no claim"

__all__ = [
    "QClass",
    "PairFamily",
    "QClassCensus",
    "CensusReport",
    "ProbeReport",
    "VerifyReport",
    "classify",
    "census",
    "one_index_decomposition",
    "check_decomposition",
    "pair_families",
    "pair_combine",
    "check_pair_combine",
    "stratum_probe",
    "verify_structure",
]


@dataclass(frozen=True)
class QClass:
    """Stratum data of a two-index label: shared indices and the remainders.

    ``predicted_terms`` is the raw unordered-pair term count C(p+2-q, 2);
    the canonical count is smaller only in the top stratum q = p-2, where
    the six raw terms collapse to three.
    """

    q: MultiIndex
    j_prime: MultiIndex
    k_prime: MultiIndex
    q_size: int
    predicted_terms: int

    @property
    def kind(self) -> str:
        """"3-term" (q = p-2, raw pairs collapse), "10-term" (q = p-3,
        family stratum) or "large" (q <= p-4)."""
        p = len(self.j_prime) + 2 + self.q_size
        if self.q_size == p - 2:
            return "3-term"
        if self.q_size == p - 3:
            return "10-term"
        return "large"


def classify(params: GrassmannParams, j: Iterable[int], k: Iterable[int]) -> QClass:
    """Split a two-index label into shared part ``q`` and remainders."""
    j = as_multiindex(j)
    k = as_multiindex(k)
    p = params.p
    if len(j) != p - 2 or len(k) != p + 2:
        raise ValueError(
            f"label sizes must be (p-2, p+2) = ({p - 2}, {p + 2}), got ({len(j)}, {len(k)})"
        )
    shared = intersection(j, k)
    q_size = len(shared)
    return QClass(
        q=shared,
        j_prime=difference(j, k),
        k_prime=difference(k, j),
        q_size=q_size,
        predicted_terms=comb(p + 2 - q_size, 2),
    )


@dataclass(frozen=True)
class QClassCensus:
    """Observed vs predicted equation count for one q stratum."""

    q_size: int
    kind: str
    observed: int
    predicted: int
    expected_terms: int
    observed_terms: tuple[int, ...]

    @property
    def ok(self) -> bool:
        terms_ok = self.observed_terms in ((), (self.expected_terms,))
        return self.observed == self.predicted and terms_ok


@dataclass
class CensusReport:
    """Per-stratum counts of the two-index system against predictions."""

    params: GrassmannParams
    total_observed: int
    total_predicted: int
    classes: list[QClassCensus]
    families_observed: int
    families_predicted: int
    all_distinct: bool
    all_nontrivial: bool

    @property
    def three_term(self) -> QClassCensus | None:
        return self._by_kind("3-term")

    @property
    def ten_term(self) -> QClassCensus | None:
        return self._by_kind("10-term")

    @property
    def larger_strata(self) -> dict[int, QClassCensus]:
        return {c.q_size: c for c in self.classes if c.kind == "large"}

    def _by_kind(self, kind: str) -> QClassCensus | None:
        for entry in self.classes:
            if entry.kind == kind:
                return entry
        return None

    @property
    def ok(self) -> bool:
        return (
            self.total_observed == self.total_predicted
            and all(entry.ok for entry in self.classes)
            and self.families_observed == self.families_predicted
            and self.all_distinct
            and self.all_nontrivial
        )

    def to_dict(self) -> dict:
        return {
            "n": self.params.n,
            "p": self.params.p,
            "total": {"observed": self.total_observed, "predicted": self.total_predicted},
            "classes": [
                {
                    "q_size": entry.q_size,
                    "kind": entry.kind,
                    "observed": entry.observed,
                    "predicted": entry.predicted,
                    "expected_terms": entry.expected_terms,
                    "observed_terms": list(entry.observed_terms),
                }
                for entry in self.classes
            ],
            "families": {
                "observed": self.families_observed,
                "predicted": self.families_predicted,
            },
            "all_distinct": self.all_distinct,
            "all_nontrivial": self.all_nontrivial,
            "ok": self.ok,
        }


def _predicted_class_count(params: GrassmannParams, q_size: int) -> int:
    n, p = params.n, params.p
    if q_size == p - 2:
        return multinomial(n, [4, p - 2, n - p - 2])
    if q_size == p - 3:
        return multinomial(n, [1, 5, p - 3, n - p - 3])
    return multinomial(n, [q_size, p - 2 - q_size, p + 2 - q_size, n + q_size - 2 * p])


def _predicted_family_count(params: GrassmannParams) -> int:
    n, p = params.n, params.p
    if not 3 <= p <= n - 3:
        return 0
    return multinomial(n, [6, p - 3, n - p - 3])


def census(params: GrassmannParams) -> CensusReport:
    """Count the two-index system per q stratum and compare to predictions."""
    n, p = params.n, params.p
    if not 2 <= p <= n - 2:
        raise ValueError(f"census needs 2 <= p <= n-2, got p={p}, n={n}")
    system = gen_plucker_like(params)
    canonical_terms: list[tuple[QuadTerm, ...]] = []
    term_counts: dict[int, set[int]] = {}
    observed: Counter[int] = Counter()
    family_groups: set[tuple[MultiIndex, MultiIndex]] = set()
    for eq in system.equations:
        j, k = eq.label
        stratum = classify(params, j, k)
        canon = canonicalize(eq)
        canonical_terms.append(canon.terms)
        observed[stratum.q_size] += 1
        term_counts.setdefault(stratum.q_size, set()).add(len(canon.terms))
        if stratum.q_size == p - 3:
            family_groups.add((stratum.q, symmetric_difference(j, k)))
    q_min = max(0, 2 * p - n)
    classes = []
    for q_size in range(p - 2, q_min - 1, -1):
        expected_terms = 3 if q_size == p - 2 else comb(p + 2 - q_size, 2)
        classes.append(
            QClassCensus(
                q_size=q_size,
                kind={p - 2: "3-term", p - 3: "10-term"}.get(q_size, "large"),
                observed=observed.get(q_size, 0),
                predicted=_predicted_class_count(params, q_size),
                expected_terms=expected_terms,
                observed_terms=tuple(sorted(term_counts.get(q_size, ()))),
            )
        )
    return CensusReport(
        params=params,
        total_observed=len(system.equations),
        total_predicted=comb(n, p - 2) * comb(n, p + 2),
        classes=classes,
        families_observed=len(family_groups),
        families_predicted=_predicted_family_count(params),
        all_distinct=len(set(canonical_terms)) == len(canonical_terms),
        all_nontrivial=all(canonical_terms),
    )


def one_index_decomposition(
    params: GrassmannParams, j: Iterable[int], k: Iterable[int]
) -> list[tuple[int, Label]]:
    """Signed one-index labels whose raw sum doubles the two-index equation.

    Returns ``[(sign_i, (j+i, k-i)) for i in k\\j]`` with
    ``sign_i = (-1) ** <j^k | i>``; the exact identity is
    ``sum_i sign_i * raw_1(j+i, k-i) == 2 * raw_2(j, k)`` after collecting
    like terms.
    """
    j = as_multiindex(j)
    k = as_multiindex(k)
    if len(j) != params.p - 2 or len(k) != params.p + 2:
        raise ValueError(
            f"label sizes must be (p-2, p+2), got ({len(j)}, {len(k)})"
        )
    sym = symmetric_difference(j, k)
    expansion = []
    for i in difference(k, j):
        sign = -1 if inversion_pairs(sym, (i,)) & 1 else 1
        expansion.append((sign, (ordered_union(j, (i,)), difference(k, (i,)))))
    return expansion


def check_decomposition(params: GrassmannParams, j: Iterable[int], k: Iterable[int]) -> bool:
    """Verify the raw decomposition identity exactly for one label."""
    parts = [
        (sign, raw_equation(params, pj, pk, 1))
        for sign, (pj, pk) in one_index_decomposition(params, j, k)
    ]
    lhs = collect_terms(linear_combination(parts, params).terms)
    doubled = linear_combination([(2, raw_equation(params, j, k, 2))], params)
    return lhs == collect_terms(doubled.terms)


@dataclass(frozen=True)
class PairFamily:
    """Six two-index labels sharing one 10-monomial set.

    Member ``i`` (1-based, ascending over ``l``) has ``j = q + l[i]`` and
    ``k = q + (l - l[i])``.
    """

    q: MultiIndex
    l: MultiIndex
    members: tuple[Label, ...]


def pair_families(params: GrassmannParams) -> list[PairFamily]:
    """All families of six same-monomial 10-term equations; [] if p is out of range."""
    n, p = params.n, params.p
    if not 3 <= p <= n - 3:
        return []
    families = []
    for q in combinations(params.indices, p - 3):
        rest = [i for i in params.indices if i not in q]
        for l in combinations(rest, 6):
            members = tuple(
                (ordered_union(q, (li,)), ordered_union(q, difference(l, (li,))))
                for li in l
            )
            families.append(PairFamily(q=q, l=l, members=members))
    return families


def _combined_label(family: PairFamily, i: int, i2: int) -> Label:
    picked = (family.l[i - 1], family.l[i2 - 1])
    return (
        ordered_union(family.q, picked),
        ordered_union(family.q, difference(family.l, picked)),
    )


def pair_combine(
    params: GrassmannParams, family: PairFamily, i: int, i2: int
) -> QuadraticEquation:
    """Canonical form of ``E_i + (-1)**(i+i2) * E_i2`` on raw members.

    The result is the canonical one-index equation for the label built from
    ``q`` plus the two picked ``l`` entries.
    """
    if i == i2:
        raise ValueError("pair combination needs two distinct member indices")
    if not (1 <= i <= 6 and 1 <= i2 <= 6):
        raise ValueError(f"member indices must lie in 1..6, got ({i}, {i2})")
    first = raw_equation(params, *family.members[i - 1], 2)
    second = raw_equation(params, *family.members[i2 - 1], 2)
    combo = linear_combination(
        [(1, first), ((-1) ** (i + i2), second)],
        params,
        label=_combined_label(family, i, i2),
    )
    return canonicalize(combo)


def check_pair_combine(params: GrassmannParams, family: PairFamily, i: int, i2: int) -> bool:
    """Exact raw identity ``E_i + (-1)**(i+i2) E_i2 = 2*(-1)**i2 * raw_1(target)``
    plus equality of canonical forms."""
    first = raw_equation(params, *family.members[i - 1], 2)
    second = raw_equation(params, *family.members[i2 - 1], 2)
    combo = linear_combination([(1, first), ((-1) ** (i + i2), second)], params)
    target = raw_equation(params, *_combined_label(family, i, i2), 1)
    scaled_target = linear_combination([(2 * (-1) ** i2, target)], params)
    if collect_terms(combo.terms) != collect_terms(scaled_target.terms):
        return False
    return canonicalize(combo).terms == canonicalize(target).terms


@dataclass(frozen=True)
class ProbeReport:
    """Findings of the exploratory combination search in one large stratum.

    Purely observational: records what was searched and anything that
    collapsed to a one-index equation.  No structural claim is attached.
    """

    n: int
    p: int
    q_size: int
    admissible: bool
    equation_count: int
    support_group_sizes: tuple[tuple[int, int], ...]
    max_support_overlap: int
    coefficient_bound: int
    combination_sizes: tuple[int, ...]
    combinations_tried: int
    collapses: tuple[tuple, ...]
    note: str = PROBE_NOTE

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "q_size": self.q_size,
            "admissible": self.admissible,
            "equation_count": self.equation_count,
            "support_group_sizes": [list(pair) for pair in self.support_group_sizes],
            "max_support_overlap": self.max_support_overlap,
            "coefficient_bound": self.coefficient_bound,
            "combination_sizes": list(self.combination_sizes),
            "combinations_tried": self.combinations_tried,
            "collapses": [
                {
                    "labels": [[list(j), list(k)] for j, k in labels],
                    "coefficients": list(coeffs),
                    "result_label": [list(result[0]), list(result[1])],
                }
                for labels, coeffs, result in self.collapses
            ],
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @staticmethod
    def from_json(text: str) -> "ProbeReport":
        data = json.loads(text)
        collapses = tuple(
            (
                tuple((as_multiindex(j), as_multiindex(k)) for j, k in entry["labels"]),
                tuple(int(c) for c in entry["coefficients"]),
                (
                    as_multiindex(entry["result_label"][0]),
                    as_multiindex(entry["result_label"][1]),
                ),
            )
            for entry in data["collapses"]
        )
        return ProbeReport(
            n=int(data["n"]),
            p=int(data["p"]),
            q_size=int(data["q_size"]),
            admissible=bool(data["admissible"]),
            equation_count=int(data["equation_count"]),
            support_group_sizes=tuple(
                (int(a), int(b)) for a, b in data["support_group_sizes"]
            ),
            max_support_overlap=int(data["max_support_overlap"]),
            coefficient_bound=int(data["coefficient_bound"]),
            combination_sizes=tuple(int(s) for s in data["combination_sizes"]),
            combinations_tried=int(data["combinations_tried"]),
            collapses=collapses,
            note=data["note"],
        )


def _primitive_coefficient_vectors(size: int, bound: int) -> list[tuple[int, ...]]:
    from math import gcd

    vectors = []
    ranges = [range(1, bound + 1)] + [
        range(-bound, bound + 1) for _ in range(size - 1)
    ]

    def build(prefix: tuple[int, ...]) -> None:
        depth = len(prefix)
        if depth == size:
            g = 0
            for c in prefix:
                g = gcd(g, abs(c))
            if g == 1:
                vectors.append(prefix)
            return
        for c in ranges[depth]:
            if depth > 0 and c == 0:
                continue
            build(prefix + (c,))

    build(())
    return vectors


def stratum_probe(params: GrassmannParams, q_size: int) -> ProbeReport:
    """Search same-support large-stratum equations for collapses.

    Groups the stratum's canonical equations by monomial support, then tries
    pair and triple integer combinations (coefficients bounded by 2, up to
    scaling) inside each group, checking results against the deduplicated
    one-index system.  Strata are expected to have all-distinct supports, in
    which case the search space is empty; the report still records the
    support statistics and the largest pairwise overlap seen.
    """
    n, p = params.n, params.p
    q_min = max(0, 2 * p - n)
    admissible = 2 <= p <= n - 2 and q_min <= q_size <= p - 4
    bound = 2
    sizes = (2, 3)
    if not admissible:
        return ProbeReport(
            n=n, p=p, q_size=q_size, admissible=False, equation_count=0,
            support_group_sizes=(), max_support_overlap=0, coefficient_bound=bound,
            combination_sizes=sizes, combinations_tried=0, collapses=(),
        )
    system = gen_plucker_like(params)
    stratum: list[QuadraticEquation] = []
    for eq in system.equations:
        if len(intersection(*eq.label)) == q_size:
            stratum.append(canonicalize(eq))
    groups: dict[frozenset, list[QuadraticEquation]] = {}
    for eq in stratum:
        support = frozenset((t.left, t.right) for t in eq.terms)
        groups.setdefault(support, []).append(eq)
    supports = list(groups)
    max_overlap = 0
    for a in range(len(supports)):
        for b in range(a + 1, len(supports)):
            overlap = len(supports[a] & supports[b])
            if overlap > max_overlap:
                max_overlap = overlap
    size_histogram = Counter(len(members) for members in groups.values())
    plucker_reduced, _ = dedupe(gen_plucker(params))
    plucker_by_terms = {eq.terms: eq.label for eq in plucker_reduced}
    tried = 0
    collapses = []
    for members in groups.values():
        for count in sizes:
            if len(members) < count:
                continue
            for chosen in combinations(members, count):
                for coeffs in _primitive_coefficient_vectors(count, bound):
                    tried += 1
                    combo = linear_combination(list(zip(coeffs, chosen)), params)
                    canon = canonicalize(combo)
                    target = plucker_by_terms.get(canon.terms)
                    if target is not None:
                        collapses.append(
                            (
                                tuple(eq.label for eq in chosen),
                                coeffs,
                                target,
                            )
                        )
    return ProbeReport(
        n=n, p=p, q_size=q_size, admissible=True, equation_count=len(stratum),
        support_group_sizes=tuple(sorted(size_histogram.items())),
        max_support_overlap=max_overlap, coefficient_bound=bound,
        combination_sizes=sizes, combinations_tried=tried,
        collapses=tuple(collapses),
    )


@dataclass
class VerifyReport:
    """Aggregate pass/fail data for the structural checks at one (n, p)."""

    params: GrassmannParams
    census: CensusReport
    decompositions_checked: int = 0
    decomposition_failures: list[Label] = field(default_factory=list)
    families_checked: int = 0
    family_failures: list[tuple] = field(default_factory=list)
    combinations_checked: int = 0
    combination_failures: list[tuple] = field(default_factory=list)
    multiplicity_ok: bool = True
    multiplicity_failures: list[Label] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.census.ok
            and not self.decomposition_failures
            and not self.family_failures
            and not self.combination_failures
            and self.multiplicity_ok
        )

    @property
    def first_failure(self) -> str | None:
        if not self.census.ok:
            return "census counts or distinctness"
        if self.decomposition_failures:
            return f"decomposition identity at label {self.decomposition_failures[0]}"
        if self.family_failures:
            return f"family structure at {self.family_failures[0]}"
        if self.combination_failures:
            return f"pair combination at {self.combination_failures[0]}"
        if self.multiplicity_failures:
            return f"multiplicity at label {self.multiplicity_failures[0]}"
        return None


def _check_family_structure(
    params: GrassmannParams, family: PairFamily, canonical_by_label: dict[Label, QuadraticEquation]
) -> bool:
    canons = []
    for label in family.members:
        eq = canonical_by_label.get(label)
        if eq is None:
            return False
        canons.append(eq)
    if any(len(eq.terms) != 10 for eq in canons):
        return False
    supports = {frozenset((t.left, t.right) for t in eq.terms) for eq in canons}
    if len(supports) != 1:
        return False
    return len({eq.terms for eq in canons}) == 6


def verify_structure(params: GrassmannParams) -> VerifyReport:
    """Run every structural check at one (n, p) and collect failures."""
    n, p = params.n, params.p
    if not 2 <= p <= n - 2:
        raise ValueError(f"verification needs 2 <= p <= n-2, got p={p}, n={n}")
    report = VerifyReport(params=params, census=census(params))
    two_index = gen_plucker_like(params)
    canonical_by_label = {eq.label: canonicalize(eq) for eq in two_index.equations}

    for eq in two_index.equations:
        report.decompositions_checked += 1
        if not check_decomposition(params, *eq.label):
            report.decomposition_failures.append(eq.label)

    families = pair_families(params)
    family_stratum_labels = {
        eq.label
        for eq in two_index.equations
        if len(intersection(*eq.label)) == p - 3
    }
    member_labels = {label for family in families for label in family.members}
    for family in families:
        report.families_checked += 1
        if not _check_family_structure(params, family, canonical_by_label):
            report.family_failures.append((family.q, family.l))
        for i, i2 in combinations(range(1, 7), 2):
            report.combinations_checked += 1
            if not check_pair_combine(params, family, i, i2):
                report.combination_failures.append((family.q, family.l, i, i2))
    if member_labels != family_stratum_labels:
        report.family_failures.append(("partition", "mismatch"))

    one_index = gen_plucker(params)
    one_counts = Counter(canonicalize(eq).terms for eq in one_index.equations)
    two_counts = Counter(eq.terms for eq in canonical_by_label.values())
    for eq in two_index.equations:
        if len(intersection(*eq.label)) != p - 2:
            continue
        canon = canonical_by_label[eq.label]
        if one_counts.get(canon.terms, 0) != 4 or two_counts.get(canon.terms, 0) != 1:
            report.multiplicity_ok = False
            report.multiplicity_failures.append(eq.label)
    return report
