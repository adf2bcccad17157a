"""Acceptable-Hintikka properties over the equality-only signature.

Each property is phrased as *obligations*: premises found in the set and a
disjunction of alternatives, each alternative a tuple of sentences that must
all be members.  The checker evaluates obligations; the closure engine
discharges them.  An alternative containing a sentence beyond the universe's
scope depth is not demanded, and an obligation satisfied only that way counts
as a gap (reported as BoundedPass).
"""

from __future__ import annotations

from collections import defaultdict

from . import kernel as k
from . import logic as L
from .kernel import I, O
from .sets import PropertyReport, Status, Tally

PROPERTIES = (
    "nabla_c", "nabla_betaeta", "nabla_eq_r", "nabla_eq_s", "nabla_b_plus",
    "nabla_b_minus", "nabla_f_plus", "nabla_f_minus", "nabla_m", "nabla_d",
)

OK, GAP, MISSING = 0, 1, 2
PROBE_NAME = "?witness"


class Obligation:
    """``probe`` stands in for a witness when no parameter of the needed type
    exists yet; it only decides whether the conclusion would be in scope."""

    __slots__ = ("rule", "premises", "alts", "probe")

    def __init__(self, rule, premises, alts, probe=None):
        self.rule = rule
        self.premises = premises
        self.alts = alts
        self.probe = probe

    def __repr__(self):
        return f"Obligation({self.rule}, {len(self.alts)} alternative(s))"


def neg(x):
    return L.mk_eq(x, L.BOT_NF)


def eq(a, b):
    return L.mk_eq(a, b)


def neq(a, b):
    return neg(L.mk_eq(a, b))


def apply_nf(f, a):
    return k.normalize(k.mk_app(f, a))


class Info:
    __slots__ = ("eq", "neq", "atomic", "neg_atom", "head", "args")

    def __init__(self, t):
        self.eq = L.match_eq(t)
        self.neq = L.match_neq(t)
        h, args = k.head_args(t)
        self.head, self.args = h, args
        self.atomic = t.ty is O and L.is_parameter(h)
        x = L.match_neg(t)
        self.neg_atom = x if x is not None and L.is_parameter(k.head_args(x)[0]) else None


_INFO = {}


def info(t):
    r = _INFO.get(t)
    if r is None:
        r = _INFO[t] = Info(t)
    return r


class BlueState:
    """Indexed member set with an undo trail (used for backtracking)."""

    def __init__(self, universe, members=()):
        self.universe = universe
        self.members = set()
        self.index = defaultdict(list)      # closed subterm -> [(member, path)]
        self.eqs = defaultdict(list)        # lhs -> [rhs]
        self.pos_atoms = defaultdict(list)  # head -> [atomic member]
        self.neg_atoms = defaultdict(list)  # head -> [x] with ¬x a member
        self.iota_eqs = []
        self.iota_neqs = []
        self.trail = []
        for t in members:
            self.add(t)

    def __contains__(self, t):
        return t in self.members

    def add(self, t):
        if t in self.members:
            return False
        self.members.add(t)
        subs = k.closed_subterms(t)
        for path, sub in subs:
            self.index[sub].append((t, path))
        inf = info(t)
        if inf.eq is not None:
            self.eqs[inf.eq[1]].append(inf.eq[2])
        if inf.atomic:
            self.pos_atoms[inf.head].append(t)
        if inf.neg_atom is not None:
            self.neg_atoms[k.head_args(inf.neg_atom)[0]].append(inf.neg_atom)
        if inf.eq is not None and inf.eq[0] is I:
            self.iota_eqs.append(t)
        if inf.neq is not None and inf.neq[0] is I:
            self.iota_neqs.append(t)
        self.trail.append((t, subs))
        return True

    def mark(self):
        return len(self.trail)

    def undo(self, mark):
        while len(self.trail) > mark:
            t, subs = self.trail.pop()
            self.members.discard(t)
            for path, sub in reversed(subs):
                lst = self.index[sub]
                lst.pop()
                if not lst:
                    del self.index[sub]
            inf = info(t)
            if inf.eq is not None:
                self.eqs[inf.eq[1]].pop()
            if inf.atomic:
                self.pos_atoms[inf.head].pop()
            if inf.neg_atom is not None:
                self.neg_atoms[k.head_args(inf.neg_atom)[0]].pop()
            if inf.eq is not None and inf.eq[0] is I:
                self.iota_eqs.pop()
            if inf.neq is not None and inf.neq[0] is I:
                self.iota_neqs.pop()

    # -- evaluation -------------------------------------------------------------

    def status(self, t):
        if t in self.members:
            return OK
        return MISSING if self.universe.in_scope(t) else GAP

    def alt_status(self, alt):
        worst = OK
        for t in alt:
            s = self.status(t)
            if s == MISSING:
                return MISSING
            worst = max(worst, s)
        return worst

    def ob_status(self, ob):
        if not ob.alts and ob.probe is not None:
            return MISSING if self.universe.in_scope(ob.probe) else GAP
        best = MISSING
        for alt in ob.alts:
            s = self.alt_status(alt)
            if s == OK:
                return OK
            best = min(best, s)
        return best


# -- constraints ----------------------------------------------------------------

def violations(state, t, full=False):
    """(property, witness) pairs for ∇c and ∇=r involving ``t``."""
    out = []
    n = neg(t)
    if n in state.members:
        out.append(("nabla_c", (t, n)))
    if not full:
        x = L.match_neg(t)
        if x is not None and x in state.members:
            out.append(("nabla_c", (x, t)))
    m = info(t).neq
    if m is not None and m[1] is m[2]:
        out.append(("nabla_eq_r", (t,)))
    return out


# -- obligations ----------------------------------------------------------------

def obligations(state, t, full=False, fun_universe=True):
    """Obligations with ``t`` among the premises.

    With ``full`` the state is assumed complete and every instance is
    produced exactly once (checker mode); otherwise instances pairing ``t``
    with older members are produced from both sides (engine mode).
    """
    inf = info(t)
    U = state.universe
    out = []

    # =s with t as the context u[s]
    for path, sub in k.closed_subterms(t):
        for rhs in state.eqs.get(sub, ()):
            if rhs is sub:
                continue
            v = k.normalize(k.replace_at(t, path, rhs))
            out.append(Obligation("nabla_eq_s", (t, eq(sub, rhs)), ((v,),)))
    e = inf.eq
    if e is not None:
        ty, l, r = e
        if not full and l is not r:
            for u, path in list(state.index.get(l, ())):
                if u is t:
                    continue
                v = k.normalize(k.replace_at(u, path, r))
                out.append(Obligation("nabla_eq_s", (u, t), ((v,),)))
        if ty is O:
            out.append(Obligation("nabla_b_plus", (t,), ((l, r), (neg(l), neg(r)))))
        elif ty.kind == k.FUN and fun_universe:
            for s in U.terms(ty.arg):
                out.append(Obligation("nabla_f_plus", (t,),
                                      ((eq(apply_nf(l, s), apply_nf(r, s)),),)))
    m = inf.neq
    if m is not None:
        ty, l, r = m
        if ty is O:
            out.append(Obligation("nabla_b_minus", (t,), ((l, neg(r)), (neg(l), r))))
        elif ty.kind == k.FUN:
            alts = tuple((neq(apply_nf(l, w), apply_nf(r, w)),) for w in U.parameters(ty.arg))
            probe = None
            if not alts:
                w = k.mk_const(PROBE_NAME, ty.arg)
                probe = neq(apply_nf(l, w), apply_nf(r, w))
            out.append(Obligation("nabla_f_minus", (t,), alts, probe))
        hl, al = k.head_args(l)
        hr, ar = k.head_args(r)
        if hl is hr and L.is_parameter(hl) and len(al) == len(ar) and al:
            alts = tuple((neq(a, b),) for a, b in zip(al, ar))
            out.append(Obligation("nabla_d", (t,), alts))
    if inf.atomic:
        for xs in state.neg_atoms.values():
            for x in xs:
                out.append(Obligation("nabla_m", (t, neg(x)), ((neq(t, x),),)))
    if not full and inf.neg_atom is not None:
        x = inf.neg_atom
        for ss in state.pos_atoms.values():
            for s in ss:
                out.append(Obligation("nabla_m", (s, t), ((neq(s, x),),)))
    return out


def _ordered(H):
    return sorted(H.members, key=k.term_key)


def check_steen(H):
    """One report per property, in a fixed order."""
    state = BlueState(H.universe, H.members)
    tallies = {p: Tally(p, "steen") for p in PROPERTIES}
    for p in ("nabla_f_plus",):
        tallies[p].bounded = True
    members = _ordered(H)
    for t in members:
        tallies["nabla_c"].hit()
        tallies["nabla_eq_r"].hit()
        for prop, wit in violations(state, t, full=True):
            tallies[prop].fail(*wit)
        tallies["nabla_betaeta"].hit()
        if not k.is_normal(t):
            tallies["nabla_betaeta"].fail(t, "not in βη-normal form")
        for ob in obligations(state, t, full=True):
            st = state.ob_status(ob)
            tl = tallies[ob.rule]
            if st == OK:
                tl.hit()
            elif st == GAP:
                tl.gap()
            else:
                tl.fail(*ob.premises, _missing(state, ob))
    tallies["nabla_betaeta"].note = "members are stored in normal form"
    return [tallies[p].report() for p in PROPERTIES]


def _missing(state, ob):
    """A human-readable rendering of what the obligation lacks."""
    if len(ob.alts) == 0:
        return "no witness available"
    alt = ob.alts[0]
    lacking = tuple(t for t in alt if state.status(t) == MISSING)
    if len(ob.alts) == 1:
        return ("missing",) + lacking
    return ("missing one of",) + tuple(a[0] if len(a) == 1 else a for a in ob.alts)


def check_saturated(H):
    """Bounded saturation: every Boolean universe term or its negation is in H."""
    tl = Tally("saturated", "steen")
    tl.bounded = True
    for s in H.universe.terms(O):
        if s in H.members or neg(s) in H.members:
            tl.hit()
        else:
            tl.fail(s, "neither it nor its negation is a member")
    return tl.report()


def is_saturated(H):
    return check_saturated(H).status is not Status.FAIL


def check_leibniz_free(H):
    tl = Tally("leibniz_free", "steen")
    for t in _ordered(H):
        tl.hit()
        if L.match_leibniz(t) is not None:
            tl.fail(t, "is a Leibniz equation")
    r = tl.report()
    if r.status is Status.VACUOUS:
        r.status = Status.PASS
    return r


def leibniz_members(members):
    return [t for t in members if L.match_leibniz(t) is not None]


__all__ = [
    "check_steen", "check_saturated", "check_leibniz_free", "BlueState",
    "Obligation", "obligations", "violations", "PROPERTIES", "PropertyReport",
]
