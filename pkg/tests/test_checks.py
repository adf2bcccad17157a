import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hintikka import kernel as k
from hintikka import logic as L
from hintikka.brown import PROPERTIES as BROWN_PROPERTIES
from hintikka.brown import check_brown
from hintikka.closure import ClosureConfig, close
from hintikka.errors import UniverseMissingType
from hintikka.kernel import I, O
from hintikka.lemmas import ITEMS, verify_derived_lemmas
from hintikka.reduction import sharp_closure
from hintikka.sets import PropSet, SentenceSet, Status
from hintikka.steen import (PROPERTIES as STEEN_PROPERTIES, check_leibniz_free, check_saturated,
                            check_steen)
from hintikka.syntax import parse_prop_file, parse_sentence, parse_sentence_file, parse_signature
from hintikka.universe import TermUniverse, generate_universe

AB = "param a : i\nparam b : i\n"
FIRST_EXAMPLE = AB + "a =[i] b\na =[i] a\nb =[i] b\nb =[i] a\n"
PASSING = {Status.PASS, Status.BOUNDED, Status.VACUOUS}


def blue(text, depth=1):
    sig, sents = parse_sentence_file(text)
    return SentenceSet(sents, sig, depth=depth)


def red(text, depth=1):
    sig, props = parse_prop_file(text)
    return PropSet(props, sig, TermUniverse(sig, depth))


def by_name(reports):
    return {r.property: r for r in reports}


def failing(reports):
    return [r.property for r in reports if r.status is Status.FAIL]


# -- universe --------------------------------------------------------------------

def test_depth_zero_individuals():
    U = generate_universe(parse_signature(AB), 0)
    assert [t.name for t in U.terms(I)] == ["a", "b"]


def test_depth_one_booleans_contain_all_equations():
    sig = parse_signature(AB)
    U = generate_universe(sig, 1)
    for x, y in itertools.product("ab", repeat=2):
        assert parse_sentence(f"{x} =[i] {y}", sig) in U


def test_depth_two_boolean_count_is_stable():
    # exhaustive generation is its own oracle; this pins the count
    U = generate_universe(parse_signature(AB), 2)
    assert len(U.terms(O)) == 490


def test_universe_terms_are_closed_normal_and_typed():
    U = generate_universe(parse_signature(AB + "param p : (i > o)"), 1)
    for ty in (O, I, k.Fun(O, I)):
        ts = U.terms(ty)
        assert len(set(ts)) == len(ts)
        for t in ts:
            assert k.is_closed(t) and k.is_normal(t) and t.ty is ty


def test_universe_generation_is_deterministic():
    sig = parse_signature(AB)
    assert generate_universe(sig, 2).terms(O) == TermUniverse(sig, 2).terms(O)


def test_missing_type_in_fixed_universe():
    sig, sents = parse_sentence_file(AB + "![i] (\\X:i. X =[i] a)\n")
    H = SentenceSet(sents, sig, TermUniverse(sig, 0, per_type={O: ()}))
    with pytest.raises(UniverseMissingType):
        check_steen(H)


# -- equality-only suite ---------------------------------------------------------

def test_direct_contradiction_fails_consistency():
    H = blue(AB + "a =[i] a\n~(a =[i] a)\n")
    r = by_name(check_steen(H))["nabla_c"]
    assert r.status is Status.FAIL
    a = H.signature.param("a")
    assert r.witnesses == [(L.mk_eq(a, a), L.neq(a, a))]


def test_reflexive_disequation_fails():
    H = blue(AB + "~(a =[i] a)\n")
    assert by_name(check_steen(H))["nabla_eq_r"].status is Status.FAIL


@pytest.mark.parametrize("depth", [0, 1])
def test_first_example_is_acceptable(depth):
    reports = check_steen(blue(FIRST_EXAMPLE, depth))
    assert [r.property for r in reports] == list(STEEN_PROPERTIES)
    assert all(r.status in PASSING for r in reports)


def test_betaeta_passes_by_construction():
    r = by_name(check_steen(blue(AB + "(\\X:i. X) a =[i] b\n")))["nabla_betaeta"]
    assert r.status is Status.PASS and r.note


def test_equality_failure_has_witness():
    H = blue(AB + "a =[i] b\n")  # symmetry and reflexivity are missing
    reports = check_steen(H)
    assert "nabla_eq_s" in failing(reports)
    for r in reports:
        if r.status is Status.FAIL:
            assert r.witnesses


def test_equality_check_is_deterministic():
    text = AB + "a =[i] b\n~(a =[i] a)\na =[i] a | b =[i] b\n"
    one = [r.to_json() for r in check_steen(blue(text))]
    two = [r.to_json() for r in check_steen(blue(text))]
    assert one == two


def test_report_json_shape():
    r = check_steen(blue(AB + "~(a =[i] a)\n"))[2]
    assert set(r.to_json()) == {"property", "suite", "status", "witnesses"}
    assert r.to_json()["suite"] == "steen"


# -- extensional suite -----------------------------------------------------------

def test_first_example_translation_passes_extensional():
    reports = check_brown(sharp_closure(blue(FIRST_EXAMPLE)))
    assert [r.property for r in reports] == list(BROWN_PROPERTIES)
    assert all(r.status in PASSING for r in reports)


def test_meta_negated_top_fails_bot():
    reports = check_brown(red(AB + "!~ !T\n"))
    assert failing(reports) == ["nabla_bot"]


def _eq_u_oracle(P):
    """Both disjunctions of the ι-equation rule, evaluated by brute force."""
    def mneq(x, y):
        return L.MetaNeg(L.MetaEq(x, y, I))
    eqs = [p for p in P.members if isinstance(p, L.MetaEq) and p.ty is I]
    negs = [p.body for p in P.members
            if isinstance(p, L.MetaNeg) and isinstance(p.body, L.MetaEq) and p.body.ty is I]
    for e, n in itertools.product(eqs, negs):
        s, t, u, v = e.lhs, e.rhs, n.lhs, n.rhs
        if not (mneq(s, u) in P or mneq(t, v) in P):
            return False
        if not (mneq(s, v) in P or mneq(t, u) in P):
            return False
    return True


@pytest.mark.parametrize("text,holds", [
    (AB + "a !=[i] b\n!~ [a !=[i] a]\n", True),   # ¬(a ≐ a) itself discharges both
    (AB + "param c : i\na !=[i] b\n!~ [b !=[i] c]\n", False),
    (AB + "param c : i\na !=[i] b\n!~ [b !=[i] c]\n!~ [a !=[i] c]\n", True),
])
def test_unique_equation_rule_matches_oracle(text, holds):
    P = red(text)
    assert _eq_u_oracle(P) is holds
    status = by_name(check_brown(P))["nabla_eq_u"].status
    assert (status is not Status.FAIL) is holds


def test_extensional_check_is_deterministic():
    text = AB + "a !=[i] b\n!~ [b !=[i] a]\n[a =[i] b] !| !~ !T\n"
    assert [r.to_json() for r in check_brown(red(text))] == \
        [r.to_json() for r in check_brown(red(text))]


# -- failure monotonicity --------------------------------------------------------

_SIG = parse_signature(AB + "param q : o")
_POOL = [parse_sentence(s, _SIG) for s in (
    "a =[i] b", "b =[i] a", "a =[i] a", "~(a =[i] b)", "~(a =[i] a)", "~(b =[i] b)", "q", "~q",
    "q | a =[i] b", "q & ~q", "~T", "F", "T", "![i] (\\X:i. X =[i] a)",
)]
_UNIVERSE = TermUniverse(_SIG, 0)


@settings(max_examples=150, deadline=None)
@given(st.sets(st.integers(0, len(_POOL) - 1)), st.sets(st.integers(0, len(_POOL) - 1)))
def test_equality_failures_are_monotone(base, extra):
    H = SentenceSet([_POOL[i] for i in base], _SIG, _UNIVERSE)
    G = SentenceSet([_POOL[i] for i in base | extra], _SIG, _UNIVERSE)
    small, big = by_name(check_steen(H)), by_name(check_steen(G))
    for name in ("nabla_c", "nabla_eq_r"):
        if small[name].status is Status.FAIL:
            assert big[name].status is Status.FAIL


@settings(max_examples=100, deadline=None)
@given(st.sets(st.integers(0, len(_POOL) - 1)), st.sets(st.integers(0, len(_POOL) - 1)))
def test_extensional_failures_are_monotone(base, extra):
    H = sharp_closure(SentenceSet([_POOL[i] for i in base], _SIG, _UNIVERSE))
    G = sharp_closure(SentenceSet([_POOL[i] for i in base | extra], _SIG, _UNIVERSE))
    small, big = by_name(check_brown(H)), by_name(check_brown(G))
    for name in ("nabla_c", "nabla_eq_r", "nabla_bot"):
        if small[name].status is Status.FAIL:
            assert big[name].status is Status.FAIL


# -- saturation and Leibniz-freeness ---------------------------------------------

def test_first_example_is_not_saturated():
    r = check_saturated(blue(FIRST_EXAMPLE))
    assert r.status is Status.FAIL and r.witnesses


def test_saturated_closure_passes():
    sig = parse_signature(AB)
    H = close([parse_sentence("a =[i] b", sig)], sig,
              ClosureConfig(universe_depth=0, saturate=True))
    assert check_saturated(H).status is Status.BOUNDED
    for s in H.universe.terms(O):  # independent totality check
        assert (s in H) != (L.neg(s) in H)


def test_empty_set_with_empty_boolean_universe():
    sig = parse_signature(AB)
    H = SentenceSet([], sig, TermUniverse(sig, 0, per_type={O: ()}))
    assert check_saturated(H).status is Status.VACUOUS


def test_first_example_is_leibniz_free():
    assert check_leibniz_free(blue(FIRST_EXAMPLE)).status is Status.PASS


def test_leibniz_equation_detected():
    sig = parse_signature(AB)
    a, b = sig.param("a"), sig.param("b")
    H = SentenceSet([L.mk_eq(a, b), L.leq(a, b)], sig, depth=0)
    r = check_leibniz_free(H)
    assert r.status is Status.FAIL and r.witnesses[0][0] is L.leq(a, b)


def test_empty_set_is_leibniz_free():
    assert check_leibniz_free(blue(AB)).status is Status.PASS


# -- derived lemmas --------------------------------------------------------------

def test_lemma_reports_cover_every_item():
    assert [r.property for r in verify_derived_lemmas(blue(FIRST_EXAMPLE))] == list(ITEMS)


@pytest.mark.parametrize("seeds", [["a =[i] b"], ["~(a =[i] b)"], ["a =[i] b | ~(b =[i] a)"]])
def test_acceptable_sets_exclude_falsum_and_negated_verum(seeds):
    sig = parse_signature(AB)
    H = close([parse_sentence(s, sig) for s in seeds], sig, ClosureConfig(universe_depth=0))
    assert not failing(check_steen(H))
    assert L.BOT_NF not in H.members and L.NEG_TOP_NF not in H.members
    lem = by_name(verify_derived_lemmas(H))
    assert lem["lemma1a_no_falsum"].status is Status.PASS
    assert lem["lemma1b_no_negated_verum"].status is Status.PASS


def test_gap_holds_through_leibniz_freeness():
    r = by_name(verify_derived_lemmas(blue(FIRST_EXAMPLE)))["impredicativity_gap"]
    assert r.status is Status.PASS and r.note == "Leibniz-free"


def test_gap_fails_for_unsaturated_leibniz_set():
    sig = parse_signature(AB)
    a, b = sig.param("a"), sig.param("b")
    H = SentenceSet([L.leq(a, b)], sig, depth=0)
    r = by_name(verify_derived_lemmas(H))["impredicativity_gap"]
    assert r.status is Status.FAIL


def test_lemmas_on_unacceptable_set_are_marked_unreliable():
    for r in verify_derived_lemmas(blue(AB + "~(a =[i] a)\n")):
        assert r.note.startswith("unreliable")


def test_falsum_member_fails_lemma():
    r = by_name(verify_derived_lemmas(blue(AB + "F\n")))["lemma1a_no_falsum"]
    assert r.status is Status.FAIL


def test_random_pool_sets_keep_lemmas_when_acceptable():
    rng = random.Random(7)
    checked = 0
    for _ in range(60):
        H = SentenceSet(rng.sample(_POOL, rng.randint(0, 5)), _SIG, _UNIVERSE)
        if failing(check_steen(H)):
            continue
        checked += 1
        lem = by_name(verify_derived_lemmas(H))
        for name in ("lemma1a_no_falsum", "lemma1b_no_negated_verum", "lemma1h_transitivity",
                     "lemma7a_diseq_symmetry", "lemma7c_diseq_to_negated_leibniz"):
            assert lem[name].status is not Status.FAIL, name
    assert checked
