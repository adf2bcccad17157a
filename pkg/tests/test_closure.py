import itertools
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hintikka import kernel as k
from hintikka import logic as L
from hintikka.closure import BranchPolicy, ClosureConfig, Inconsistent, close, provenance_lines
from hintikka.errors import IterationLimit, NotBoolean, UniverseExplosion
from hintikka.kernel import I, O
from hintikka.sets import SentenceSet, Status
from hintikka.steen import check_steen
from hintikka.syntax import parse_sentence, parse_signature, print_term
from hintikka.universe import TermUniverse

AB = parse_signature("param a : i\nparam b : i")
ABCQ = parse_signature("param a : i\nparam b : i\nparam c : i\nparam q : o\nparam r : o")


def seeds(sig, *texts):
    return [parse_sentence(s, sig) for s in texts]


def no_fail(H):
    return all(r.status is not Status.FAIL for r in check_steen(H))


def equation_closed(members):
    """Symmetry and reflexivity for every ι-equation (the saturation consequences)."""
    for t in members:
        m = L.match_eq(t)
        if m is not None and m[0] is I:
            _, s, u = m
            if {L.mk_eq(u, s), L.mk_eq(s, s), L.mk_eq(u, u)} - members:
                return False
    return True


def minimal_supersets(seed, sig, depth, extra_ok=lambda m: True, max_extra=4):
    """Brute force: smallest supersets of ``seed`` among in-scope Boolean terms."""
    U = TermUniverse(sig, depth)
    pool = [t for t in TermUniverse(sig, depth + 1).terms(O) if t not in seed]
    for n in range(max_extra + 1):
        found = []
        for extra in itertools.combinations(pool, n):
            H = SentenceSet(list(seed) + list(extra), sig, U)
            if no_fail(H) and extra_ok(H.members):
                found.append(H.members)
        if found:
            return found
    return []


# -- worked examples -----------------------------------------------------------

def test_single_equation_closes_to_first_example():
    H = close(seeds(AB, "a =[i] b"), AB, ClosureConfig(universe_depth=0))
    a, b = AB.param("a"), AB.param("b")
    expected = {L.mk_eq(x, y) for x in (a, b) for y in (a, b)}
    assert H.members == expected
    assert minimal_supersets(seeds(AB, "a =[i] b"), AB, 0, equation_closed) == [expected]


def test_acceptability_alone_needs_fewer_members():
    # ∇_=^s never produces b = a or a = a from a = b on its own
    found = minimal_supersets(seeds(AB, "a =[i] b"), AB, 0)
    assert [sorted(map(print_term, m)) for m in found] == [["a =[i] b", "b =[i] b"]]


def test_reflexive_disequation_is_inconsistent():
    r = close(seeds(AB, "~(a =[i] a)"), AB, ClosureConfig(universe_depth=0))
    assert isinstance(r, Inconsistent) and not r
    assert r.reason == "nabla_eq_r"


def test_no_seeds_give_empty_set():
    H = close([], AB, ClosureConfig(universe_depth=0))
    assert len(H) == 0 and no_fail(H)


# -- errors ----------------------------------------------------------------------

def test_iteration_limit():
    with pytest.raises(IterationLimit):
        close(seeds(AB, "a =[i] b | ~(a =[i] b)"), AB,
              ClosureConfig(universe_depth=1, max_iterations=1))


def test_universe_explosion():
    with pytest.raises(UniverseExplosion):
        close(seeds(AB, "a =[i] b"), AB, ClosureConfig(universe_depth=2, cap=50, saturate=True))


def test_seed_must_be_boolean():
    with pytest.raises(NotBoolean):
        close([AB.param("a")], AB)


def test_config_validation():
    with pytest.raises(ValueError):
        ClosureConfig(max_iterations=0)
    with pytest.raises(ValueError):
        ClosureConfig(universe_depth=-1)


# -- behaviour -------------------------------------------------------------------

def test_branching_picks_a_consistent_disjunct():
    # depth 1 puts the disjuncts inside the universe's scope
    H = close(seeds(ABCQ, "~q | a =[i] b", "q"), ABCQ, ClosureConfig(universe_depth=1))
    assert parse_sentence("a =[i] b", ABCQ) in H
    assert no_fail(H)


def test_inconsistent_disjunction():
    r = close(seeds(ABCQ, "q | r", "~q", "~r"), ABCQ, ClosureConfig(universe_depth=1))
    assert isinstance(r, Inconsistent)


def test_fresh_witness_extends_signature():
    sig = parse_signature("param a : i")
    H = close(seeds(sig, "~F"), sig, ClosureConfig(universe_depth=1))
    assert ("w_o_0", O) in H.signature.params
    w = H.signature.param("w_o_0")
    assert any(w in k.constants(t) for t in H.members)
    assert no_fail(H)


def test_members_use_only_signature_symbols():
    H = close(seeds(ABCQ, "q -> a =[i] b", "~(b =[i] c)"), ABCQ, ClosureConfig(universe_depth=0))
    names = {n for n, _ in H.signature.params} | {"="}
    for t in H.members:
        assert {c.name for c in k.constants(t)} <= names


def test_saturate_decides_every_boolean_term():
    H = close(seeds(ABCQ, "q | r"), ABCQ, ClosureConfig(universe_depth=0, saturate=True))
    for s in H.universe.terms(O):
        assert (s in H.members) != (L.neg(s) in H.members)


def test_provenance_log():
    steps = []
    H = close(seeds(AB, "a =[i] b"), AB, ClosureConfig(universe_depth=0), steps)
    lines = [json.loads(x) for x in provenance_lines(steps).splitlines()]
    assert lines[0] == {"rule": "seed", "premises": [], "conclusion": "a =[i] b"}
    assert {x["conclusion"] for x in lines} == {print_term(t) for t in H.members}
    assert all(set(x) == {"rule", "premises", "conclusion"} for x in lines)


def test_seed_driven_policy_is_reproducible():
    cfg = ClosureConfig(universe_depth=0, valuation_seed=5, branch_policy=BranchPolicy.SEED_DRIVEN)
    s = seeds(ABCQ, "q | r", "a =[i] b | ~(a =[i] c)")
    one, two = close(s, ABCQ, cfg), close(s, ABCQ, cfg)
    assert one.members == two.members and no_fail(one)


def test_literal_seeds_are_monotone():
    cfg = ClosureConfig(universe_depth=0)
    small = close(seeds(ABCQ, "a =[i] b"), ABCQ, cfg)
    big = close(seeds(ABCQ, "a =[i] b", "~(b =[i] c)", "q"), ABCQ, cfg)
    assert small.members <= big.members


_POOL = ["a =[i] b", "~(a =[i] b)", "b =[i] c", "~(a =[i] c)", "q", "~q", "r | q",
         "q -> a =[i] c", "~(q & r)", "q =[o] r", "~(c =[i] b) | r"]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(_POOL), max_size=3, unique=True))
def test_closed_sets_are_acceptable_and_deterministic(texts):
    cfg = ClosureConfig(universe_depth=0)
    H = close(seeds(ABCQ, *texts), ABCQ, cfg)
    G = close(seeds(ABCQ, *texts), ABCQ, cfg)
    if isinstance(H, Inconsistent):
        assert isinstance(G, Inconsistent) and G.reason == H.reason
        return
    assert H.members == G.members
    assert no_fail(H)
    for s in seeds(ABCQ, *texts):
        assert s in H


# -- propositional seeds against truth tables --------------------------------------

QR = parse_signature("param q : o\nparam r : o")


def _formula(draw_op, depth):
    """A random formula as (concrete text, evaluator)."""
    op = draw_op(depth)
    if op in ("q", "r"):
        return op, lambda v, op=op: v[op]
    if op == "~":
        text, f = _formula(draw_op, depth - 1)
        return f"~({text})", lambda v: not f(v)
    (lt, lf), (rt, rf) = _formula(draw_op, depth - 1), _formula(draw_op, depth - 1)
    table = {"&": lambda x, y: x and y, "|": lambda x, y: x or y, "->": lambda x, y: not x or y}
    return f"({lt} {op} {rt})", lambda v: table[op](lf(v), rf(v))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_consistency_matches_truth_tables(data):
    def draw_op(depth):
        if depth == 0:
            return data.draw(st.sampled_from(("q", "r")))
        return data.draw(st.sampled_from(("q", "r", "~", "&", "|", "->")))

    formulas = [_formula(draw_op, 2) for _ in range(data.draw(st.integers(1, 3)))]
    satisfiable = any(all(f({"q": x, "r": y}) for _, f in formulas)
                      for x, y in itertools.product((False, True), repeat=2))
    H = close(seeds(QR, *(t for t, _ in formulas)), QR, ClosureConfig(universe_depth=0))
    assert bool(H) is satisfiable
    if H:
        assert no_fail(H)
