"""Derived properties every acceptable Hintikka set has, checked on a set.

Each item is a closure condition evaluated like the acceptability properties
themselves: a conclusion beyond the universe's scope depth is not demanded.
The items that presuppose saturation can only be checked for formulas the
bounded saturation actually decides, i.e. Boolean universe terms.
"""

from __future__ import annotations

from . import kernel as k
from . import logic as L
from .kernel import O
from .sets import Status, Tally
from .steen import (GAP, MISSING, OK, PROBE_NAME, BlueState, check_leibniz_free,
                    check_saturated, check_steen, neg, neq)
from .closure import saturation_trigger
from .universe import term_depth

TOP, BOT = L.TOP_NF, L.BOT_NF
NEG_BOT = L.NEG_BOT_NF
# depth of a Leibniz equation over its arguments; derivations from one pass
# through instances of its body
LEIBNIZ_SLACK = 6

ITEMS = (
    "lemma1a_no_falsum", "lemma1b_no_negated_verum", "lemma1c_no_verum_eq_falsum",
    "lemma1d_eq_verum", "lemma1e_eq_falsum", "lemma1f_negated_falsum",
    "lemma1g_verum", "lemma1h_transitivity",
    "lemma2a_double_negation", "lemma2b_disjunction", "lemma2c_conjunction",
    "lemma2d_universal", "lemma2e_negated_universal",
    "lemma3a_leibniz_to_eq", "lemma3b_negated_leibniz", "lemma3c_leibniz_reflexive",
    "lemma3d_leibniz_substitution", "lemma3e_leibniz_symmetry", "lemma3f_leibniz_transitivity",
    "lemma4a_verum_saturates", "lemma4b_negation_saturates", "lemma4c_disjunction_saturates",
    "lemma4d_conjunction_saturates", "lemma4e_universal_saturates", "lemma4f_leibniz_saturates",
    "corollary_disequation_saturates",
    "lemma6a_eq_to_leibniz", "lemma6b_eq_symmetry", "lemma6c_eq_reflexive",
    "lemma6d_leibniz_reflexive",
    "lemma7a_diseq_symmetry", "lemma7b_negated_leibniz_symmetry", "lemma7c_diseq_to_negated_leibniz",
    "impredicativity_gap",
)

_TRIGGERS = {
    "lemma4a_verum_saturates": lambda t: t is TOP,
    "lemma4b_negation_saturates": lambda t: L.match_neg(t) is not None,
    "lemma4c_disjunction_saturates": lambda t: L.match_or(t) is not None,
    "lemma4d_conjunction_saturates": lambda t: L.match_and(t) is not None,
    "lemma4e_universal_saturates": lambda t: L.match_pi(t) is not None,
    "lemma4f_leibniz_saturates": lambda t: L.match_leibniz(t) is not None,
}


class _Checker:
    def __init__(self, H):
        self.H = H
        self.state = BlueState(H.universe, H.members)
        self.T = {name: Tally(name, "lemmas") for name in ITEMS}
        self.scope = H.universe.scope_depth

    def status(self, t):
        return self.state.status(t)

    def elem(self, t, slack):
        if t in self.state:
            return OK
        return MISSING if term_depth(t) + slack <= self.scope else GAP

    def need(self, name, premises, alts, probe=None, slack=0):
        """``slack`` is how much deeper than the conclusion the intermediate
        formulas of the item's derivation are; deeper ones are not demanded."""
        tl = self.T[name]
        if not alts:
            st = MISSING if probe is not None and self.elem(probe, slack) == MISSING else GAP
        else:
            st = MISSING
            for a in alts:
                s = max((self.elem(t, slack) for t in a), default=OK)
                if s == OK:
                    st = OK
                    break
                st = min(st, s)
        if st == OK:
            tl.hit()
        elif st == GAP:
            tl.gap()
        else:
            missing = alts[0] if len(alts) == 1 else alts
            tl.fail(*premises, ("missing",) + tuple(missing))

    def absent(self, name, t):
        tl = self.T[name]
        tl.hit()
        if t in self.state:
            tl.fail(t, "must not be a member")


def verify_derived_lemmas(H):
    """One report per derived item, in a fixed order.

    When ``H`` itself fails an acceptability property the reports carry an
    ``unreliable`` note: the items are only guaranteed for acceptable sets.
    """
    c = _Checker(H)
    st = c.state
    members = H.sorted()
    U = H.universe

    c.absent("lemma1a_no_falsum", BOT)
    c.absent("lemma1b_no_negated_verum", L.NEG_TOP_NF)
    c.absent("lemma1c_no_verum_eq_falsum", L.mk_eq(TOP, BOT))
    if NEG_BOT in st:
        c.need("lemma1f_negated_falsum", (NEG_BOT,), ((TOP,),))
    if TOP in st:
        c.need("lemma1g_verum", (TOP,), ((NEG_BOT,),))

    for t in members:
        e = L.match_eq(t)
        if e is not None:
            ty, l, r = e
            if ty is O:
                for s, other in ((l, r), (r, l)):
                    if other is TOP:
                        c.need("lemma1d_eq_verum", (t,), ((s, TOP),))
                    if other is BOT:
                        c.need("lemma1e_eq_falsum", (t,), ((neg(s), NEG_BOT),))
            for u in st.eqs.get(r, ()):
                c.need("lemma1h_transitivity", (t, L.mk_eq(r, u)), ((L.mk_eq(l, u),),))
        m = L.match_neq(t)
        if m is not None:
            ty, l, r = m
            if ty is O:
                for s, other in ((l, r), (r, l)):
                    if other is BOT:
                        c.need("lemma1d_eq_verum", (t,), ((s, NEG_BOT),))
                    if other is TOP:
                        c.need("lemma1e_eq_falsum", (t,), ((neg(s), TOP),))
            c.need("lemma7a_diseq_symmetry", (t,), ((neq(r, l),),))
            c.need("lemma7c_diseq_to_negated_leibniz", (t,), ((neg(L.leq(l, r)),),))

        x = L.match_neg(t)
        y = L.match_neg(x) if x is not None else None
        if y is not None:
            c.need("lemma2a_double_negation", (t,), ((y,),))
        o = L.match_or(t)
        if o is not None:
            c.need("lemma2b_disjunction", (t,), ((o[0],), (o[1],)), slack=4)
        a = L.match_and(t)
        if a is not None:
            c.need("lemma2c_conjunction", (t,), ((a[0], a[1]),), slack=1)
        p = L.match_pi(t)
        if p is not None:
            ty, F = p
            for s in U.terms(ty):
                c.need("lemma2d_universal", (t,), ((k.normalize(k.mk_app(F, s)),),), slack=1)
        if x is not None:
            p = L.match_pi(x)
            if p is not None:
                ty, F = p
                alts = tuple((neg(k.normalize(k.mk_app(F, w))),) for w in U.parameters(ty))
                probe = neg(k.normalize(k.mk_app(F, k.mk_const(PROBE_NAME, ty))))
                c.need("lemma2e_negated_universal", (t,), alts, probe, slack=2)

        lz = L.match_leibniz(t)
        if lz is not None:
            ty, s, u = lz
            c.need("lemma3a_leibniz_to_eq", (t,), ((L.mk_eq(s, u),),), slack=LEIBNIZ_SLACK)
            c.need("lemma3e_leibniz_symmetry", (t,), ((L.leq(u, s),),))
            for v in members:
                lz2 = L.match_leibniz(v)
                if lz2 is not None and lz2[1] is u:
                    c.need("lemma3f_leibniz_transitivity", (t, v), ((L.leq(s, lz2[2]),),))
            if s is not u:
                for w, path in list(st.index.get(s, ())):
                    if w is t:
                        continue
                    res = k.normalize(k.replace_at(w, path, u))
                    c.need("lemma3d_leibniz_substitution", (w, t), ((res,),), slack=LEIBNIZ_SLACK)
        if x is not None:
            lz = L.match_leibniz(x)
            if lz is not None:
                ty, s, u = lz
                c.need("lemma3b_negated_leibniz", (t,), ((neq(s, u),),), slack=LEIBNIZ_SLACK)
                c.need("lemma7b_negated_leibniz_symmetry", (t,), ((neg(L.leq(u, s)),),))
                tl = c.T["lemma3c_leibniz_reflexive"]
                tl.hit()
                if s is u:
                    tl.fail(t, "negated reflexive Leibniz equation")

    sat = check_saturated(H)
    saturated = sat.status is not Status.FAIL
    for name, trig in _TRIGGERS.items():
        for t in members:
            if trig(t):
                tl = c.T[name]
                tl.bounded = True
                tl.hit()
                if not saturated:
                    tl.fail(t, ("set is not saturated",) + tuple(sat.witnesses[:1]))
    for t in members:
        x = L.match_neg(t)
        if x is not None and (L.match_eq(x) is not None or L.match_leibniz(x) is not None):
            tl = c.T["corollary_disequation_saturates"]
            tl.bounded = True
            tl.hit()
            if not saturated:
                tl.fail(t, ("set is not saturated",) + tuple(sat.witnesses[:1]))

    boolean = set(U.terms(O))
    if saturated:
        for name in ("lemma6a_eq_to_leibniz", "lemma6b_eq_symmetry",
                     "lemma6c_eq_reflexive", "lemma6d_leibniz_reflexive"):
            c.T[name].bounded = True
        for t in members:
            e = L.match_eq(t)
            if e is None:
                continue
            ty, l, r = e
            lz = L.leq(l, r)
            if lz in boolean:
                c.need("lemma6a_eq_to_leibniz", (t,), ((lz,),))
            sym = L.mk_eq(r, l)
            if sym in boolean:
                c.need("lemma6b_eq_symmetry", (t,), ((sym,),))
        for s in sorted(boolean, key=k.term_key):
            e = L.match_eq(s)
            if e is not None and e[1] is e[2]:
                c.need("lemma6c_eq_reflexive", (), ((s,),))
            lz = L.match_leibniz(s)
            if lz is not None and lz[1] is lz[2]:
                c.need("lemma6d_leibniz_reflexive", (), ((s,),))
    else:
        for name in ("lemma6a_eq_to_leibniz", "lemma6b_eq_symmetry",
                     "lemma6c_eq_reflexive", "lemma6d_leibniz_reflexive"):
            c.T[name].note = "set is not saturated; premise absent"

    gap = c.T["impredicativity_gap"]
    gap.hit()
    lf = check_leibniz_free(H)
    if saturated:
        gap.bounded = True
        gap.note = "saturated (bounded)"
    elif lf.status is Status.FAIL:
        gap.fail(*lf.witnesses[:1], "neither saturated nor Leibniz-free")
    else:
        gap.note = "Leibniz-free"

    unreliable = any(r.status is Status.FAIL for r in check_steen(H))
    out = []
    for name in ITEMS:
        r = c.T[name].report()
        if unreliable:
            r.note = ("unreliable: set is not acceptable; " + r.note).rstrip("; ")
        out.append(r)
    return out


def lemma_report(H, names):
    """Reports restricted to the named items (prefix match)."""
    return [r for r in verify_derived_lemmas(H) if r.property.startswith(tuple(names))]


__all__ = ["verify_derived_lemmas", "ITEMS", "lemma_report", "saturation_trigger"]
