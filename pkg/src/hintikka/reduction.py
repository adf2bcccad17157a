"""Blue-to-red translation, the sharp lift and the reduction verifier.

Red terms share the equality constants with blue ones; the only new symbol
is the primitive negation ``~``.  A red term is kept in *canonical* form:
the translation of the βη-normal form of its blue reading.  Plain red
normalization is not enough, because substituting ⊥ into ``q =^o X``
creates a negation that the red signature wants written as ``~ q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import kernel as k
from . import logic as L
from .errors import NotBoolean, NotClosed, NotNormal
from .kernel import O
from .sets import PropSet, Status

_B2R = {}
_R2B = {}


def _b2r(u):
    r = _B2R.get(u)
    if r is not None:
        return r
    if u is L.NEG_NF:
        r = L.RED_NEG
    else:
        x = L.match_neg(u)
        if x is not None:
            r = k.mk_app(L.RED_NEG, _b2r(x))
        elif u.kind == k.LAM:
            r = k.mk_lam(u.bty, _b2r(u.body))
        elif u.kind == k.APP:
            r = k.mk_app(_b2r(u.fn), _b2r(u.arg))
        else:
            r = u
    _B2R[u] = r
    return r


def blue_to_red(s, check=True):
    """Replace every blue negation shape by the primitive ``~``.

    ``s`` is normalized first; with ``check`` it must be a closed sentence.
    """
    if check:
        k.typecheck(s)
        if s.ty is not O:
            raise NotBoolean(f"expected a sentence, found type {s.ty}")
        if not k.is_closed(s):
            raise NotClosed("blue_to_red needs a closed sentence")
    return _b2r(k.normalize(s))


def term_to_red(t):
    """Translate a closed term of any type (used for universe terms)."""
    return _b2r(k.normalize(t))


def _r2b(u):
    r = _R2B.get(u)
    if r is not None:
        return r
    if u is L.RED_NEG:
        r = L.NEG
    elif u.kind == k.LAM:
        r = k.mk_lam(u.bty, _r2b(u.body))
    elif u.kind == k.APP:
        r = k.mk_app(_r2b(u.fn), _r2b(u.arg))
    else:
        r = u
    _R2B[u] = r
    return r


def red_to_blue(r):
    """Expand ``~`` to its defining λ-term and normalize."""
    return k.normalize(_r2b(r))


def canonical_red(r):
    """Canonical red normal form of any red term."""
    return _b2r(red_to_blue(r))


def red_apply(f, *args):
    return canonical_red(k.app(f, *args))


# -- sharp --------------------------------------------------------------------

def meta_eq(lhs, rhs):
    """Meta-equation, with ``s =̇ ⊥`` read as the meta-negation of ``s``."""
    if lhs.ty is O and rhs is L.BOT_NF:
        return L.MetaNeg(L.Embed(lhs))
    return L.MetaEq(lhs, rhs, lhs.ty)


def sharp(r):
    """Lift the head connective of a canonical red sentence to the meta level."""
    if r.ty is not O:
        raise NotBoolean(f"sharp needs a Boolean term, found {r.ty}")
    if canonical_red(r) is not r:
        raise NotNormal("sharp needs a canonical normal red term")
    if r.kind == k.APP and r.fn is L.RED_NEG:
        return L.MetaNeg(L.Embed(r.arg))
    m = L.match_eq(r)
    if m is not None:
        return meta_eq(m[1], m[2])
    return L.Embed(r)


def sharp_prop(p):
    if isinstance(p, L.Embed):
        return sharp(p.term)
    return p


def erase(p):
    """Read a proposition back as a red term (inverse of the lift)."""
    if isinstance(p, L.Embed):
        return p.term
    if isinstance(p, L.MetaNeg):
        return k.mk_app(L.RED_NEG, erase(p.body))
    if isinstance(p, L.MetaEq):
        return k.app(L.eq(p.ty), p.lhs, p.rhs)
    if isinstance(p, L.MetaTopProp):
        return _b2r(L.TOP_NF)
    raise ValueError(f"no object-level reading for {p!r}")


def blue_of(p):
    """Blue sentence corresponding to a closed proposition (for scope tests)."""
    if isinstance(p, L.Embed):
        return red_to_blue(p.term)
    if isinstance(p, L.MetaNeg):
        return L.neg(blue_of(p.body))
    if isinstance(p, L.MetaEq):
        return k.normalize(L.mk_eq(red_to_blue(p.lhs), red_to_blue(p.rhs)))
    if isinstance(p, L.MetaTopProp):
        return L.TOP_NF
    if isinstance(p, L.MetaOr):
        return L.disj(blue_of(p.left), blue_of(p.right))
    if isinstance(p, L.MetaForall):
        return L.forall(p.ty, k.mk_lam(p.ty, blue_of(p.body)))
    raise TypeError(p)


def red_signature(sig):
    return sig.as_flavor(L.Flavor.RED_NEG_AND_EQUALITY)


def translate(H):
    """The translated object-level set: one red sentence per member."""
    return frozenset(blue_to_red(s, check=False) for s in H.members)


def sharp_closure(H):
    """Least set containing every translated member, its lift, and the lift
    of every term directly under a meta-negation."""
    out = set()
    for s in H.members:
        r = blue_to_red(s, check=False)
        out.add(L.Embed(r))
        out.add(sharp(r))
    todo = list(out)
    while todo:
        p = todo.pop()
        if isinstance(p, L.MetaNeg) and isinstance(p.body, L.Embed):
            q = L.MetaNeg(sharp(p.body.term))
            if q not in out:
                out.add(q)
                todo.append(q)
    return PropSet(out, red_signature(H.signature), H.universe)


# -- end-to-end ---------------------------------------------------------------

REDUCTION_CONFIRMED = "reduction-confirmed"
STEEN_FAILED = "steen-failed"
COUNTEREXAMPLE = "counterexample"


@dataclass
class ReductionReport:
    steen: list
    brown: list = field(default_factory=list)
    verdict: str = STEEN_FAILED
    translated: list = field(default_factory=list)
    bounded_dependent: bool = False

    def to_json(self):
        from .syntax import print_prop, print_term
        return {
            "steen": [r.to_json(lambda t: print_term(t, pretty=True)) for r in self.steen],
            "brown": [r.to_json(_show_any) for r in self.brown],
            "verdict": self.verdict,
            "translated": [print_prop(p) for p in self.translated],
        }


def _show_any(x):
    from .syntax import print_prop, print_term
    if isinstance(x, L.ExternalProp):
        return print_prop(x, pretty=True)
    return print_term(x, pretty=True)


def verify_reduction(H):
    from .brown import check_brown
    from .sets import prop_key
    from .steen import check_steen
    steen = check_steen(H)
    if any(r.status is Status.FAIL for r in steen):
        return ReductionReport(steen)
    P = sharp_closure(H)
    brown = check_brown(P)
    failed = [r for r in brown if r.status is Status.FAIL]
    verdict = COUNTEREXAMPLE if failed else REDUCTION_CONFIRMED
    bounded = any(r.status is Status.BOUNDED for r in steen) and bool(failed)
    return ReductionReport(steen, brown, verdict, sorted(P.members, key=prop_key), bounded)
