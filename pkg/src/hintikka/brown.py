"""Extensional Hintikka properties over external propositions.

Membership conclusions are evaluated the same way as for blue sets: a
conclusion whose blue reading lies beyond the universe's scope depth is not
demanded and only counts as a gap.
"""

from __future__ import annotations

from collections import defaultdict

from . import kernel as k
from . import logic as L
from .kernel import I, O
from .reduction import blue_of, canonical_red, meta_eq, red_apply, sharp, term_to_red
from .sets import Tally
from .steen import PROBE_NAME

PROPERTIES = (
    "nabla_c", "nabla_betaeta", "nabla_bot", "nabla_neg", "nabla_or", "nabla_and",
    "nabla_forall", "nabla_exists", "nabla_sharp", "nabla_m", "nabla_dec",
    "nabla_b", "nabla_f", "nabla_eq_o", "nabla_eq_fun", "nabla_eq_r", "nabla_eq_u",
)

OK, GAP, MISSING = 0, 1, 2

MNeg = L.MetaNeg
Embed = L.Embed


def mneq(a, b):
    return MNeg(meta_eq(a, b))


class _Eval:
    def __init__(self, P):
        self.P = P
        self.members = P.members
        self.universe = P.universe
        self._scope = {}
        self._red = {}

    def in_scope(self, p):
        r = self._scope.get(p)
        if r is None:
            r = self._scope[p] = self.universe.in_scope(blue_of(p))
        return r

    def status(self, p):
        if p in self.members:
            return OK
        return MISSING if self.in_scope(p) else GAP

    def alt(self, alt):
        worst = OK
        for p in alt:
            s = self.status(p)
            if s == MISSING:
                return MISSING
            worst = max(worst, s)
        return worst

    def disj(self, alts):
        best = MISSING
        for a in alts:
            s = self.alt(a)
            if s == OK:
                return OK
            best = min(best, s)
        return best

    def red_terms(self, ty):
        r = self._red.get(ty)
        if r is None:
            r = self._red[ty] = [term_to_red(u) for u in self.universe.terms(ty)]
        return r

    def params(self, ty):
        return self.universe.parameters(ty)


def _probe(ty):
    return k.mk_const(PROBE_NAME, ty)


def _param_app(t):
    h, args = k.head_args(t)
    if L.is_parameter(h) and args:
        return h, args
    return None


def _meta_parts(p):
    """(kind, data) view of a member."""
    if isinstance(p, L.MetaEq):
        return "eq", p
    if isinstance(p, MNeg):
        b = p.body
        if isinstance(b, L.MetaEq):
            return "neq", b
        if isinstance(b, Embed):
            return "negatom", b.term
    if isinstance(p, Embed):
        return "atom", p.term
    return None, None


def _canonical_embedded(p):
    bad = []

    def visit(t, depth):
        if canonical_red(t) is not t:
            bad.append(t)
        return t
    if L.prop_is_closed(p):
        L.map_terms(p, visit)
    return bad


def check_brown(P):
    """One report per property, in a fixed order."""
    ev = _Eval(P)
    T = {p: Tally(p, "brown") for p in PROPERTIES}
    T["nabla_forall"].bounded = True
    T["nabla_eq_fun"].bounded = True
    members = P.sorted()

    def judge(name, premises, alts, probe=None):
        if not alts and probe is not None:
            st = MISSING if ev.in_scope(probe) else GAP
        else:
            st = ev.disj(alts)
        if st == OK:
            T[name].hit()
        elif st == GAP:
            T[name].gap()
        else:
            if len(alts) == 1:
                miss = ("missing",) + tuple(q for q in alts[0] if ev.status(q) == MISSING)
            elif not alts:
                miss = "no witness available"
            else:
                miss = ("missing one of",) + tuple(a[0] if len(a) == 1 else a for a in alts)
            T[name].fail(*premises, miss)

    negatoms = defaultdict(list)
    atoms = defaultdict(list)
    iota_eqs, iota_neqs = [], []
    for p in members:
        kind, d = _meta_parts(p)
        if kind in ("atom", "negatom"):
            pa = _param_app(d)
            if pa is not None:
                (atoms if kind == "atom" else negatoms)[pa[0]].append((p, pa[1]))
        elif kind == "eq" and d.ty is I:
            iota_eqs.append(p)
        elif kind == "neq" and d.ty is I:
            iota_neqs.append(p)

    T["nabla_bot"].hit()
    if MNeg(L.MetaTop) in P.members:
        T["nabla_bot"].fail(MNeg(L.MetaTop))

    for p in members:
        T["nabla_c"].hit()
        if MNeg(p) in P.members:
            T["nabla_c"].fail(p, MNeg(p))
        T["nabla_betaeta"].hit()
        bad = _canonical_embedded(p)
        if bad:
            T["nabla_betaeta"].fail(p, "embedded term not in normal form")

        if isinstance(p, Embed):
            judge("nabla_sharp", (p,), ((sharp(p.term),),))
        elif isinstance(p, L.MetaOr):
            judge("nabla_or", (p,), ((p.left,), (p.right,)))
        elif isinstance(p, L.MetaForall):
            for u in ev.red_terms(p.ty):
                judge("nabla_forall", (p,), ((L.instantiate_prop(p.body, u),),))
        elif isinstance(p, L.MetaEq):
            if p.ty is O:
                s, t = Embed(p.lhs), Embed(p.rhs)
                judge("nabla_eq_o", (p,), ((s, t), (MNeg(s), MNeg(t))))
            elif p.ty.kind == k.FUN:
                for u in ev.red_terms(p.ty.arg):
                    c = meta_eq(red_apply(p.lhs, u), red_apply(p.rhs, u))
                    judge("nabla_eq_fun", (p,), ((c,),))
        elif isinstance(p, MNeg):
            b = p.body
            if isinstance(b, Embed):
                judge("nabla_sharp", (p,), ((MNeg(sharp(b.term)),),))
            elif isinstance(b, MNeg):
                judge("nabla_neg", (p,), ((b.body,),))
            elif isinstance(b, L.MetaOr):
                judge("nabla_and", (p,), ((MNeg(b.left), MNeg(b.right)),))
            elif isinstance(b, L.MetaForall):
                alts = tuple((MNeg(L.instantiate_prop(b.body, w)),) for w in ev.params(b.ty))
                judge("nabla_exists", (p,), alts,
                      MNeg(L.instantiate_prop(b.body, _probe(b.ty))))
            elif isinstance(b, L.MetaEq):
                s, t = b.lhs, b.rhs
                if b.ty is O:
                    judge("nabla_b", (p,), ((Embed(s), MNeg(Embed(t))), (MNeg(Embed(s)), Embed(t))))
                elif b.ty.kind == k.FUN:
                    alts = tuple((mneq(red_apply(s, w), red_apply(t, w)),) for w in ev.params(b.ty.arg))
                    w = _probe(b.ty.arg)
                    judge("nabla_f", (p,), alts, mneq(red_apply(s, w), red_apply(t, w)))
                if b.ty is I:
                    T["nabla_eq_r"].hit()
                    if s is t:
                        T["nabla_eq_r"].fail(p)
                    ls, rs = _param_app(s), _param_app(t)
                    if ls and rs and ls[0] is rs[0] and len(ls[1]) == len(rs[1]):
                        alts = tuple((mneq(x, y),) for x, y in zip(ls[1], rs[1]))
                        judge("nabla_dec", (p,), alts)

    for h, negs in negatoms.items():
        for q, sargs in negs:
            for r, targs in atoms.get(h, ()):
                if len(sargs) != len(targs):
                    continue
                alts = tuple((mneq(x, y),) for x, y in zip(sargs, targs))
                judge("nabla_m", (q, r), alts)

    for e in iota_eqs:
        for n in iota_neqs:
            s, t = e.lhs, e.rhs
            u, v = n.body.lhs, n.body.rhs
            judge("nabla_eq_u", (e, n), ((mneq(s, u),), (mneq(t, v),)))
            judge("nabla_eq_u", (e, n), ((mneq(s, v),), (mneq(t, u),)))

    return [T[p].report() for p in PROPERTIES]


__all__ = ["check_brown", "PROPERTIES"]
