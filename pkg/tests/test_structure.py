from itertools import combinations
from math import comb

import pytest

from pluckereqs import (
    GrassmannParams,
    ProbeReport,
    canonicalize,
    stratum_probe,
    census,
    check_pair_combine,
    check_decomposition,
    classify,
    collect_terms,
    gen_plucker_like,
    linear_combination,
    multinomial,
    pair_combine,
    pair_families,
    one_index_decomposition,
    raw_equation,
    verify_structure,
)


def test_classify_cases(params63):
    top = classify(params63, (1,), (1, 2, 3, 4, 5))
    assert top.q == (1,)
    assert top.q_size == 1
    assert top.kind == "3-term"
    assert top.j_prime == ()
    assert top.k_prime == (2, 3, 4, 5)
    assert top.predicted_terms == 6

    ten = classify(params63, (1,), (2, 3, 4, 5, 6))
    assert ten.q == ()
    assert ten.kind == "10-term"
    assert ten.predicted_terms == 10

    big = classify(GrassmannParams(8, 4), (1, 2), (3, 4, 5, 6, 7, 8))
    assert big.kind == "large"
    assert big.q_size == 0
    assert big.predicted_terms == 15


def test_classify_validates_sizes(params63):
    with pytest.raises(ValueError):
        classify(params63, (1, 2), (1, 2, 3, 4, 5))


def test_census_6_3(params63):
    report = census(params63)
    assert report.ok
    assert report.three_term.observed == 30
    assert report.ten_term.observed == 6
    assert report.larger_strata == {}
    assert report.families_observed == 1
    assert report.total_observed == 36


def test_census_top_stratum_equals_three_term_reduced_subset(
    params63, pluckerlike63, plucker63
):
    from pluckereqs import dedupe

    reduced, _ = dedupe(plucker63)
    three_term = {eq.terms for eq in reduced if len(eq.terms) == 3}
    top_stratum_terms = set()
    for eq in pluckerlike63:
        j, k = eq.label
        if classify(params63, j, k).kind == "3-term":
            top_stratum_terms.add(canonicalize(eq).terms)
    assert top_stratum_terms == three_term
    assert len(top_stratum_terms) == 30


def test_census_8_4_large_stratum():
    report = census(GrassmannParams(8, 4))
    assert report.ok
    entry = report.larger_strata[0]
    assert entry.observed == 28 == multinomial(8, [0, 2, 6, 0])
    assert entry.expected_terms == comb(6, 2) == 15
    assert entry.observed_terms == (15,)


def test_census_range_error():
    with pytest.raises(ValueError):
        census(GrassmannParams(6, 5))


def test_one_index_decomposition_labels_and_signs(params63):
    expansion = one_index_decomposition(params63, (1,), (2, 3, 4, 5, 6))
    assert expansion == [
        (1, ((1, 2), (3, 4, 5, 6))),
        (-1, ((1, 3), (2, 4, 5, 6))),
        (1, ((1, 4), (2, 3, 5, 6))),
        (-1, ((1, 5), (2, 3, 4, 6))),
        (1, ((1, 6), (2, 3, 4, 5))),
    ]


def test_decomposition_identity_all_labels_6_3(params63, pluckerlike63):
    for eq in pluckerlike63:
        assert check_decomposition(params63, *eq.label)


def test_decomposition_identity_with_j_inside_k():
    # j subset of k: four signed labels, right side a doubled 3-term class.
    params = GrassmannParams(6, 4)
    label = ((1, 2), (1, 2, 3, 4, 5, 6))
    expansion = one_index_decomposition(params, *label)
    assert len(expansion) == 4
    assert [j for _, (j, _) in expansion] == [
        (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6),
    ]
    assert check_decomposition(params, *label)
    assert len(canonicalize(raw_equation(params, *label, 2)).terms) == 3


def test_decomposition_identity_raw_doubling(params63):
    # The signed one-index sum equals exactly twice the raw two-index form.
    label = ((1,), (2, 3, 4, 5, 6))
    parts = [
        (sign, raw_equation(params63, j, k, 1))
        for sign, (j, k) in one_index_decomposition(params63, *label)
    ]
    lhs = collect_terms(linear_combination(parts, params63).terms)
    rhs = collect_terms(raw_equation(params63, *label, 2).terms)
    assert lhs == {key: 2 * value for key, value in rhs.items()}


def test_decomposition_identity_every_label_up_to_n8():
    for n in range(4, 9):
        for p in range(2, n - 1):
            params = GrassmannParams(n, p)
            for eq in gen_plucker_like(params):
                assert check_decomposition(params, *eq.label)


def test_pair_families_6_3(params63):
    families = pair_families(params63)
    assert len(families) == 1
    family = families[0]
    assert family.q == ()
    assert family.l == (1, 2, 3, 4, 5, 6)
    assert family.members == tuple(
        ((i,), tuple(x for x in range(1, 7) if x != i)) for i in range(1, 7)
    )


def test_pair_families_counts():
    assert len(pair_families(GrassmannParams(7, 4))) == 7
    assert len(pair_families(GrassmannParams(7, 3))) == 7
    assert pair_families(GrassmannParams(6, 2)) == []
    assert pair_families(GrassmannParams(6, 4)) == []


def test_family_members_share_monomials(params63, pluckerlike63):
    family = pair_families(params63)[0]
    canons = [
        canonicalize(raw_equation(params63, j, k, 2)) for j, k in family.members
    ]
    supports = {frozenset((t.left, t.right) for t in eq.terms) for eq in canons}
    assert len(supports) == 1
    assert all(len(eq.terms) == 10 for eq in canons)
    assert len({eq.terms for eq in canons}) == 6
    assert ((1, 2, 3), (4, 5, 6)) in next(iter(supports))


def test_pair_combine_6_3_all_pairs(params63):
    family = pair_families(params63)[0]
    results = set()
    for i, i2 in combinations(range(1, 7), 2):
        assert check_pair_combine(params63, family, i, i2)
        combined = pair_combine(params63, family, i, i2)
        assert len(combined.terms) == 4
        target = canonicalize(
            raw_equation(
                params63,
                tuple(sorted((family.l[i - 1], family.l[i2 - 1]))),
                tuple(x for x in range(1, 7) if x not in (family.l[i - 1], family.l[i2 - 1])),
                1,
            )
        )
        assert combined.terms == target.terms
        results.add(combined.terms)
    assert len(results) == 15


def test_pair_combine_identifies_moved_indices(params63):
    # The two chosen entries are the ones appearing together in exactly one
    # factor of every monomial of the result.
    family = pair_families(params63)[0]
    for i, i2 in combinations(range(1, 7), 2):
        chosen = {family.l[i - 1], family.l[i2 - 1]}
        combined = pair_combine(params63, family, i, i2)
        for term in combined.terms:
            left, right = set(term.left), set(term.right)
            assert chosen <= left or chosen <= right
            assert not (chosen <= left and chosen <= right)


def test_pair_combine_rejects_bad_indices(params63):
    family = pair_families(params63)[0]
    with pytest.raises(ValueError):
        pair_combine(params63, family, 2, 2)
    with pytest.raises(ValueError):
        pair_combine(params63, family, 0, 3)


def test_pair_combine_identity_7_3_and_7_4():
    for n, p in ((7, 3), (7, 4)):
        params = GrassmannParams(n, p)
        for family in pair_families(params):
            for i, i2 in combinations(range(1, 7), 2):
                assert check_pair_combine(params, family, i, i2)


def test_stratum_probe_8_4():
    report = stratum_probe(GrassmannParams(8, 4), 0)
    assert report.admissible
    assert report.equation_count == 28
    # Supports are pairwise distinct, so no same-support combination exists.
    assert report.support_group_sizes == ((1, 28),)
    assert report.combinations_tried == 0
    assert report.collapses == ()
    assert 0 < report.max_support_overlap < 15
    assert report.note == "exploratory - no claim"


def test_stratum_probe_empty(params63):
    report = stratum_probe(params63, 0)
    assert not report.admissible
    assert report.equation_count == 0
    assert report.collapses == ()


def test_stratum_probe_json_round_trip(params63):
    for report in (stratum_probe(GrassmannParams(8, 4), 0), stratum_probe(params63, 1)):
        assert ProbeReport.from_json(report.to_json()) == report


def test_verify_structure_6_3(params63):
    report = verify_structure(params63)
    assert report.ok
    assert report.decompositions_checked == 36
    assert report.families_checked == 1
    assert report.combinations_checked == 15
    assert report.multiplicity_ok
    assert report.first_failure is None


def test_verify_structure_range_error():
    with pytest.raises(ValueError):
        verify_structure(GrassmannParams(6, 5))


def test_verify_structure_7_4():
    report = verify_structure(GrassmannParams(7, 4))
    assert report.ok
    assert report.families_checked == 7
    assert report.combinations_checked == 7 * 15
