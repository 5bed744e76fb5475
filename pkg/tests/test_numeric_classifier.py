from itertools import product

import pytest

from app.models.schemas import ExponentVector, FourCycleWitness, Method
from app.services.alexander import dual_generators_direct
from app.services.graphs import acm_via_chordality, complement, graph_from_ideal, is_induced_cycle
from app.services.ideal_core import Monomial, VarId, tetrahedral_ideal
from app.services.numeric_classifier import (
    BalancedCaseOnlyError,
    NormalizationRequiredError,
    UncertifiedVerdictError,
    apply_permutation,
    classify_closed_form,
    classify_schwartau,
    classify_witness,
    find_witness,
    normalize,
    sufficient_condition_flags,
    unique_balanced_solution,
    witness_cycle,
    witness_holds,
)

SWAPPED_BASES = {"b<->c": {0: 0, 1: 2, 2: 1, 3: 3}, "b<->d": {0: 0, 1: 3, 2: 2, 3: 1}}


def _vec(*p):
    return ExponentVector.of(*p)


def _vectors(bound):
    return (_vec(*p) for p in product(range(bound + 1), repeat=6))


def _renamed(ideal, bases):
    return {
        Monomial.of({VarId(bases[v.base], v.copy): e for v, e in gen.exps})
        for gen in ideal.generators
    }


# ── normalization ─────────────────────────────────────────────────────────────

def test_normalize_keeps_maximal_vector():
    assert normalize(_vec(1, 1, 1, 3, 2, 5)) == (_vec(1, 1, 1, 3, 2, 5), "identity")


def test_normalize_swaps_b_and_c():
    assert normalize(_vec(0, 3, 1, 2, 4, 0)) == (_vec(3, 0, 1, 2, 0, 4), "b<->c")


def test_normalize_swaps_b_and_d():
    assert normalize(_vec(0, 1, 3, 4, 1, 0)) == (_vec(3, 1, 0, 0, 1, 4), "b<->d")


def test_normalize_tie_prefers_identity_then_b_c():
    assert normalize(_vec(1, 1, 1, 1, 1, 1))[1] == "identity"
    assert normalize(_vec(0, 5, 5, 5, 5, 0))[1] == "b<->c"


@pytest.mark.parametrize("p", [(0, 3, 1, 2, 4, 0), (0, 1, 3, 4, 1, 0), (1, 2, 0, 3, 2, 1)])
def test_normalization_is_a_variable_renaming(p):
    vector = _vec(*p)
    for tag, bases in SWAPPED_BASES.items():
        swapped = tetrahedral_ideal(apply_permutation(vector, tag))
        assert set(swapped.generators) == _renamed(tetrahedral_ideal(vector), bases)


def test_swaps_are_involutions():
    vector = _vec(1, 2, 3, 4, 5, 6)
    for tag in SWAPPED_BASES:
        assert apply_permutation(apply_permutation(vector, tag), tag) == vector


def test_verdict_is_invariant_under_swaps_up_to_four():
    for vector in _vectors(4):
        acm = classify_witness(vector).acm
        for tag in SWAPPED_BASES:
            assert classify_witness(apply_permutation(vector, tag)).acm == acm, vector


# ── witness search ────────────────────────────────────────────────────────────

def test_find_witness_is_lexicographically_first():
    assert find_witness(_vec(3, 0, 0, 0, 0, 3)) == FourCycleWitness(i=1, j=3, l=1, m=3)
    assert witness_holds(_vec(3, 0, 0, 0, 0, 3), FourCycleWitness(i=2, j=2, l=2, m=2))


def test_find_witness_examples():
    assert find_witness(_vec(2, 1, 1, 1, 1, 2)) is None
    assert find_witness(_vec(2, 1, 2, 0, 1, 2)) == FourCycleWitness(i=2, j=1, l=1, m=2)


def test_find_witness_requires_normalized_input():
    with pytest.raises(NormalizationRequiredError):
        find_witness(_vec(0, 3, 1, 2, 4, 0))


def test_classify_witness_examples():
    assert classify_witness(_vec(0, 0, 0, 0, 0, 0)).acm
    verdict = classify_witness(_vec(1, 0, 0, 0, 0, 1))
    assert not verdict.acm
    assert verdict.method is Method.WITNESS
    assert verdict.witness.as_tuple() == (1, 1, 1, 1)
    assert classify_witness(_vec(1, 1, 1, 1, 1, 1)).acm


def test_classify_witness_records_normalization():
    verdict = classify_witness(_vec(0, 3, 1, 2, 4, 0))
    assert verdict.normalization == "b<->c"


@pytest.mark.parametrize("p", [(1, 0, 0, 0, 0, 1), (3, 0, 0, 0, 0, 3), (2, 1, 2, 0, 1, 2), (4, 1, 2, 2, 1, 4)])
def test_witness_is_induced_four_cycle_of_complement(p):
    vector = _vec(*p)
    witness = find_witness(vector)
    assert witness is not None
    co_graph = complement(graph_from_ideal(dual_generators_direct(vector)))
    assert is_induced_cycle(co_graph, list(witness_cycle(witness)))


# ── balanced stratum ──────────────────────────────────────────────────────────

def test_unique_balanced_solution_examples():
    assert unique_balanced_solution(_vec(2, 1, 2, 0, 1, 2)) == FourCycleWitness(i=2, j=1, l=1, m=2)
    assert unique_balanced_solution(_vec(2, 1, 1, 1, 1, 2)) is None
    assert unique_balanced_solution(_vec(1, 0, 0, 0, 0, 1)) == FourCycleWitness(i=1, j=1, l=1, m=1)


def test_unique_balanced_solution_rejects_unbalanced():
    with pytest.raises(BalancedCaseOnlyError):
        unique_balanced_solution(_vec(3, 0, 0, 0, 0, 3))


def _balanced_with_letters(q):
    flags = sufficient_condition_flags(q)
    s16, s25, s34 = q.pair_sums()
    return s16 == s25 + 2 == s34 + 2 and not flags["each_letter"]


def test_parity_law_on_balanced_stratum_up_to_five():
    seen = 0
    for q in _vectors(5):
        if not _balanced_with_letters(q):
            continue
        seen += 1
        p1, _, p3, _, p5, _ = q.p
        assert classify_witness(q).acm == ((p1 + p3 + p5) % 2 == 0), q
        assert unique_balanced_solution(q) == find_witness(q), q
    assert seen > 0


# ── closed form ───────────────────────────────────────────────────────────────

def test_closed_form_letter_condition():
    verdict = classify_closed_form(_vec(1, 1, 1, 3, 2, 5))
    assert verdict.acm
    assert verdict.condition.condition == "iii"
    assert verdict.condition.inequality == "2q1 < q4+q5+3-q6"


def test_closed_form_balanced_even():
    verdict = classify_closed_form(_vec(2, 1, 1, 1, 1, 2))
    assert verdict.acm
    assert verdict.condition.condition == "iv"


def test_closed_form_negative_carries_witness():
    verdict = classify_closed_form(_vec(3, 0, 0, 0, 0, 3))
    assert not verdict.acm
    assert verdict.method is Method.CLOSED_FORM
    assert verdict.witness.as_tuple() == (1, 3, 1, 3)


def test_closed_form_zero_after_normalization_is_small_gap():
    verdict = classify_closed_form(_vec(0, 5, 5, 5, 5, 0))
    assert verdict.acm
    assert verdict.condition.condition == "ii"
    assert verdict.condition.epsilon == 0
    assert verdict.normalization == "b<->c"


def test_closed_form_zero_exponent():
    verdict = classify_closed_form(_vec(3, 1, 1, 1, 1, 0))
    assert verdict.condition.condition == "i"


class _NeverMatches:
    def evaluate(self, q):
        return None


def test_closed_form_refuses_uncertified_negative():
    with pytest.raises(UncertifiedVerdictError) as exc:
        classify_closed_form(_vec(2, 1, 1, 1, 1, 2), engine=_NeverMatches())
    assert exc.value.vector == _vec(2, 1, 1, 1, 1, 2)


def _deciders_agree(vector):
    closed = classify_closed_form(vector).acm
    return closed == classify_witness(vector).acm == acm_via_chordality(vector).acm


def test_deciders_agree_up_to_three():
    for vector in _vectors(3):
        assert _deciders_agree(vector), vector


@pytest.mark.slow
def test_deciders_agree_up_to_five():
    for vector in _vectors(5):
        assert _deciders_agree(vector), vector


def test_closed_form_matches_witness_up_to_five():
    for vector in _vectors(5):
        assert classify_closed_form(vector).acm == classify_witness(vector).acm, vector


# ── sufficient criteria ───────────────────────────────────────────────────────

def test_sufficient_flags_imply_verdicts_up_to_four():
    for vector in _vectors(4):
        q, _ = normalize(vector)
        flags = sufficient_condition_flags(q)
        acm = classify_witness(q).acm
        if flags["zero_exponent"] or flags["small_gap"] or flags["each_letter"]:
            assert acm, q
        if flags["three_or_more"]:
            assert not acm, q
        if flags["balanced_even"]:
            assert acm, q


def test_sufficient_flags_of_worked_example(worked_vector):
    flags = sufficient_condition_flags(worked_vector)
    assert flags == {
        "zero_exponent": False,
        "small_gap": False,
        "each_letter": False,
        "balanced_even": True,
        "three_or_more": False,
    }


# ── Schwartau curves ──────────────────────────────────────────────────────────

def test_schwartau_examples():
    assert classify_schwartau(1, 1, 1, 1)
    assert not classify_schwartau(2, 1, 1, 2)
    # p1 = 0 is ACM only while the (p1, p6) pair stays the longest.
    assert all(classify_schwartau(0, a, b, a + b + c) for a, b, c in product(range(4), repeat=3))
    assert not classify_schwartau(0, 1, 1, 0)


def test_schwartau_rejects_negative():
    with pytest.raises(ValueError):
        classify_schwartau(1, -1, 0, 0)


def test_schwartau_matches_witness_up_to_eight():
    for p1, p3, p4, p6 in product(range(9), repeat=4):
        expected = classify_witness(_vec(p1, 0, p3, p4, 0, p6)).acm
        assert classify_schwartau(p1, p3, p4, p6) == expected, (p1, p3, p4, p6)
