"""Bounded construction of acceptable Hintikka sets.

The acceptability properties are run forward as rules over a depth-bounded
universe.  Single-conclusion rules fire eagerly; disjunctive ones are
explored depth-first with backtracking; a branch dies when it violates
consistency or reflexivity.  Besides the acceptability rules the engine also
applies consequences that every acceptable set satisfies anyway: symmetry of
(dis)equations, two disjunctive rules mirroring the extensional properties,
and the elimination rules of the defined connectives.  Bounded sets then do
not miss conclusions that are only derivable through terms deeper than the
bound.

When a set contains one of the saturation triggers (a negation, ⊤, a
conjunction or a universal) it must be saturated; the engine then also
decides every Boolean universe term.
"""

from __future__ import annotations

import enum
import json
import random
import sys
from dataclasses import dataclass, field

from . import kernel as k
from . import logic as L
from .errors import IterationLimit, NotBoolean, NotClosed, OutOfUniverse
from .kernel import I, O
from .model import evaluate, extract_model
from .sets import SentenceSet
from .steen import (MISSING, BlueState, Obligation, info, neg, neq,
                    obligations, violations)
from .universe import DEFAULT_CAP, TermUniverse


class BranchPolicy(str, enum.Enum):
    LEFT_FIRST = "LeftFirst"
    SEED_DRIVEN = "SeedDriven"


@dataclass
class ClosureConfig:
    universe_depth: int = 1
    max_iterations: int = 1000
    valuation_seed: int = 0
    branch_policy: BranchPolicy = BranchPolicy.LEFT_FIRST
    saturate: bool = False
    max_witnesses: int = 4
    cap: int = DEFAULT_CAP
    # switches for building deliberately broken fixtures
    check_consistency: bool = True
    check_reflexivity: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.universe_depth < 0:
            raise ValueError("universe_depth must be non-negative")
        self.branch_policy = BranchPolicy(self.branch_policy)


@dataclass
class Inconsistent:
    reason: str
    witnesses: list = field(default_factory=list)
    signature: object = None

    def __bool__(self):
        return False


@dataclass
class Step:
    rule: str
    premises: tuple
    conclusion: object

    def to_json(self, show):
        return {"rule": self.rule, "premises": [show(p) for p in self.premises],
                "conclusion": show(self.conclusion)}


class _NeedWitness(Exception):
    def __init__(self, ty):
        self.ty = ty


def type_tag(ty):
    """Church-style name fragment: ``o(oi)`` becomes ``oLoiR``."""
    if ty.kind != k.FUN:
        return str(ty)
    a = type_tag(ty.arg)
    if ty.arg.kind == k.FUN:
        a = "L" + a + "R"
    return type_tag(ty.res) + a


def fresh_witness(sig, ty):
    tag = type_tag(ty)
    used = set(sig.parameters)
    i = 0
    while f"w_{tag}_{i}" in used:
        i += 1
    return f"w_{tag}_{i}"


def saturation_trigger(t):
    """Whether membership of ``t`` forces an acceptable set to be saturated."""
    if t is L.TOP_NF:
        return True
    if L.match_neg(t) is not None:
        return True
    return L.match_and(t) is not None or L.match_pi(t) is not None


class _Search:
    def __init__(self, universe, cfg, rng, witness_budget=0):
        self.cfg = cfg
        self.witness_budget = witness_budget
        self.U = universe
        self.state = BlueState(universe)
        self.steps = []
        self.rng = rng
        self.iterations = 0
        self.saturating = cfg.saturate
        self.conflict = None
        # witness obligations are decided before ordinary disjunctions, so a
        # witness is picked before other choices constrain it
        self.pending = ([], [])
        # pending obligations before these indices are settled on the current branch
        self.settled = [0, 0]

    # -- bookkeeping -------------------------------------------------------------

    def add(self, t, rule, premises, queue):
        if self.state.add(t):
            self.steps.append(Step(rule, premises, t))
            queue.append(t)

    def save(self):
        return (self.state.mark(), len(self.steps), len(self.pending[0]),
                len(self.pending[1]), tuple(self.settled), self.saturating)

    def undo(self, saved):
        mark, nsteps, n0, n1, settled, sat = saved
        self.state.undo(mark)
        del self.steps[nsteps:]
        del self.pending[0][n0:]
        del self.pending[1][n1:]
        self.settled = list(settled)
        self.saturating = sat

    def tick(self):
        self.iterations += 1
        if self.iterations > self.cfg.max_iterations:
            raise IterationLimit(f"no closure within {self.cfg.max_iterations} iterations")

    # -- rules --------------------------------------------------------------------

    def derived(self, t):
        """Consequences every acceptable set has; see the module docstring."""
        st = self.state
        out = []
        inf = info(t)
        if inf.eq is not None:
            ty, l, r = inf.eq
            if l is not r:
                out.append(Obligation("symmetry", (t,), ((L.mk_eq(r, l),),)))
        if inf.neq is not None:
            ty, l, r = inf.neq
            if l is not r:
                out.append(Obligation("symmetry", (t,), ((neq(r, l),),)))
            if ty is I:
                for e in st.iota_eqs:
                    out.extend(_eq_u(e, t))
        x = L.match_neg(t)
        o = L.match_or(t)
        if o is not None:
            out.append(Obligation("disjunction", (t,), ((o[0],), (o[1],))))
        elif x is not None:
            y = L.match_neg(x)
            if y is not None:
                out.append(Obligation("double_negation", (t,), ((y,),)))
            a = L.match_and(x)
            if a is not None:
                out.append(Obligation("negated_conjunction", (t,), ((neg(a[0]),), (neg(a[1]),))))
            o = L.match_or(x)
            if o is not None:
                out.append(Obligation("negated_disjunction", (t,), ((neg(o[0]), neg(o[1])),)))
        a = L.match_and(t)
        if a is not None:
            out.append(Obligation("conjunction", (t,), ((a[0], a[1]),)))
        p = L.match_pi(t)
        if p is not None:
            ty, F = p
            for s in self.U.terms(ty):
                out.append(Obligation("universal", (t,), ((k.normalize(k.mk_app(F, s)),),)))
        if inf.eq is not None and inf.eq[0] is I:
            for n in st.iota_neqs:
                out.extend(_eq_u(t, n))
        # the extensional mating rule, on parameter heads
        if inf.atomic and inf.args:
            for y in st.neg_atoms.get(inf.head, ()):
                out.append(_mating(y, t))
        if inf.neg_atom is not None:
            h, sargs = k.head_args(inf.neg_atom)
            if sargs:
                for s in st.pos_atoms.get(h, ()):
                    out.append(_mating(inf.neg_atom, s))
        return [o for o in out if o is not None]

    def process(self, t, queue):
        """Fire the rules triggered by a new member; False on a clash."""
        for prop, wit in violations(self.state, t):
            if prop == "nabla_c" and not self.cfg.check_consistency:
                continue
            if prop == "nabla_eq_r" and not self.cfg.check_reflexivity:
                continue
            self.conflict = (prop, wit)
            return False
        if self.cfg.check_consistency and t in _ABSURD:
            # members no acceptable set has; failing here saves deriving the clash
            self.conflict = ("nabla_c", (t,))
            return False
        if not self.saturating and saturation_trigger(t):
            self.saturating = True
        for ob in obligations(self.state, t) + self.derived(t):
            if ob.rule == "nabla_f_minus":
                # existing parameters first, then a fresh one
                if self.state.ob_status(ob) == MISSING:
                    self.pending[0].append(ob)
            elif len(ob.alts) == 1:
                if self.state.ob_status(ob) == MISSING:
                    for c in ob.alts[0]:
                        self.add(c, ob.rule, ob.premises, queue)
            else:
                self.pending[1].append(ob)
        return True

    def propagate(self, queue):
        i = 0
        while i < len(queue):
            if not self.process(queue[i], queue):
                return False
            i += 1
        return True

    def clashes(self, c):
        """Whether adding ``c`` fails at once."""
        st = self.state
        if neg(c) in st or c in _ABSURD:
            return True
        x = info(c)
        if x.neq is not None and x.neq[1] is x.neq[2]:
            return True
        x = L.match_neg(c)
        return x is not None and x in st

    def viable(self, alts):
        return tuple(a for a in alts if not any(self.clashes(c) for c in a))

    def choose(self):
        """Next open disjunction as (rule, premises, alternatives), or None.

        Disjunctions with at most one alternative that does not clash right
        away are taken first; otherwise witness obligations come before
        ordinary ones, in the order they arose.
        """
        # members only grow along a branch, so a settled obligation stays settled
        first = None
        for j, pending in enumerate(self.pending):
            while self.settled[j] < len(pending) and \
                    self.state.ob_status(pending[self.settled[j]]) != MISSING:
                self.settled[j] += 1
            for i in range(self.settled[j], len(pending)):
                ob = pending[i]
                if self.state.ob_status(ob) != MISSING:
                    continue
                alts = self.viable(ob.alts)
                if ob.rule == "nabla_f_minus":
                    alts += (_FRESH,)
                elif len(alts) <= 1:
                    return ob.rule, ob.premises, alts
                if first is None:
                    first = ob.rule, ob.premises, alts
        if first is not None:
            return first
        if self.saturating:
            for c in self.U.terms(O):
                if c not in self.state and neg(c) not in self.state:
                    return "saturation", (), self.viable([(c,), (neg(c),)])
        return None

    def models_hold(self):
        """Leaf check for saturated branches: every member must be true in the
        set's bounded model.  The bounded rules leave conclusions beyond the
        scope undemanded, so a branch can be closed under them and still
        assign its Boolean atoms inconsistently with a deep member."""
        # a deliberately broken fixture has no model to check against
        if not (self.saturating and self.cfg.check_consistency and self.cfg.check_reflexivity):
            return True
        H = SentenceSet(self.state.members, self.U.signature, self.U)
        M = extract_model(H)
        for t in H.sorted():
            try:
                v = evaluate(M, t)
            except OutOfUniverse:
                continue
            if not v:
                self.conflict = ("model", (t,))
                return False
        return True

    def order(self, alts):
        alts = list(alts)
        if self.cfg.branch_policy is BranchPolicy.SEED_DRIVEN:
            self.rng.shuffle(alts)
        return alts

    def solve(self, queue):
        self.tick()
        if not self.propagate(queue):
            return False
        pick = self.choose()
        if pick is None:
            return self.models_hold()
        rule, premises, alts = pick
        if not alts:
            # every alternative clashes with the branch at once
            self.conflict = ("nabla_c", premises)
            return False
        saved = self.save()
        fresh = alts and alts[-1] is _FRESH
        if fresh:
            alts = alts[:-1]
        for alt in self.order(alts):
            q = []
            for c in alt:
                self.add(c, rule, premises, q)
            if self.solve(q):
                return True
            self.undo(saved)
        if fresh and self.witness_budget > 0:
            raise _NeedWitness(_witness_type(premises[0]))
        return False


_FRESH = ("fresh witness",)
_ABSURD = frozenset({L.BOT_NF, L.NEG_TOP_NF, L.mk_eq(L.TOP_NF, L.BOT_NF),
                     L.mk_eq(L.BOT_NF, L.TOP_NF)})


def _witness_type(premise):
    ty, l, r = L.match_neq(premise)
    return ty.arg


def _eq_u(e, n):
    _, s, t = L.match_eq(e)
    _, u, v = L.match_neq(n)
    return [
        Obligation("derived_eq_u", (e, n), ((neq(s, u),), (neq(t, v),))),
        Obligation("derived_eq_u", (e, n), ((neq(s, v),), (neq(t, u),))),
    ]


def _mating(negated, positive):
    _, sargs = k.head_args(negated)
    _, targs = k.head_args(positive)
    if len(sargs) != len(targs):
        return None
    return Obligation("derived_m", (neg(negated), positive),
                      tuple((neq(a, b),) for a, b in zip(sargs, targs)))


def _check_seeds(seeds):
    out = []
    for s in seeds:
        k.typecheck(s)
        if s.ty is not O:
            raise NotBoolean(f"seed has type {s.ty}")
        if not k.is_closed(s):
            raise NotClosed("seeds must be closed")
        out.append(k.normalize(s))
    return out


def close(seeds, sig, cfg=None, provenance=None):
    """Extend ``seeds`` to a bounded acceptable Hintikka set.

    Returns a :class:`SentenceSet` over a universe of depth
    ``cfg.universe_depth`` (the signature may have grown by fresh witnesses),
    or :class:`Inconsistent` when every branch clashes.  When ``provenance``
    is a list, the derivation steps of the returned set are appended to it.
    """
    cfg = cfg or ClosureConfig()
    seeds = _check_seeds(seeds)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        for used in range(cfg.max_witnesses + 1):
            U = TermUniverse(sig, cfg.universe_depth, cfg.cap)
            search = _Search(U, cfg, random.Random(cfg.valuation_seed),
                             cfg.max_witnesses - used)
            q = []
            for s in seeds:
                search.add(s, "seed", (), q)
            try:
                ok = search.solve(q)
            except _NeedWitness as e:
                name = fresh_witness(sig, e.ty)
                sig = sig.extended([(name, e.ty)])
                continue
            if not ok:
                why = search.conflict or ("nabla_c", ())
                return Inconsistent(why[0], list(why[1]), sig)
            if provenance is not None:
                provenance.extend(search.steps)
            return SentenceSet(search.state.members, sig, U)
        return Inconsistent("witness pool exhausted", [], sig)
    finally:
        sys.setrecursionlimit(old)


def provenance_lines(steps, show=None):
    """JSON lines, one per derivation step."""
    if show is None:
        from .syntax import print_term
        show = print_term
    return "\n".join(json.dumps(s.to_json(show), ensure_ascii=False) for s in steps)


__all__ = ["ClosureConfig", "BranchPolicy", "Inconsistent", "Step", "close",
           "provenance_lines", "fresh_witness", "type_tag", "saturation_trigger"]
