"""Signatures, the defined-connective table, Leibniz equality and
external propositions.

In the equality-only signature every connective is a closed λ-term over the
primitive equalities ``=^τ``; parsing expands them, so stored sentences only
contain ``=``, parameters, bound variables, λ and application.  The
recognizers (``match_*``) find the connectives again in βη-normal forms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import kernel as k
from .errors import TypeMismatch, UnknownConnective
from .kernel import I, O, Fun, app, eq_type

EQ_NAME = "="
NEG_NAME = "~"
LOGICAL_NAMES = frozenset({EQ_NAME, NEG_NAME})


class Flavor(enum.Enum):
    BLUE_EQUALITY_ONLY = "blue"
    RED_NEG_AND_EQUALITY = "red"
    RED_EQUALITY_ONLY = "red-eq"


@dataclass(frozen=True)
class Signature:
    flavor: Flavor = Flavor.BLUE_EQUALITY_ONLY
    params: tuple = ()  # ((name, Type), ...) in declaration order

    def __post_init__(self):
        names = [n for n, _ in self.params]
        if len(set(names)) != len(names):
            raise ValueError("duplicate parameter name")
        bad = LOGICAL_NAMES.intersection(names)
        if bad:
            raise ValueError(f"parameter names clash with logical constants: {sorted(bad)}")

    @classmethod
    def blue(cls, **params):
        return cls(Flavor.BLUE_EQUALITY_ONLY, tuple(params.items()))

    @property
    def parameters(self):
        return dict(self.params)

    def param(self, name):
        return k.mk_const(name, self.parameters[name])

    def param_terms(self):
        return [k.mk_const(n, t) for n, t in self.params]

    def extended(self, extra):
        have = self.parameters
        new = tuple((n, t) for n, t in extra if n not in have)
        return Signature(self.flavor, self.params + new)

    def as_flavor(self, flavor):
        return Signature(flavor, self.params)

    @property
    def has_negation(self):
        return self.flavor is Flavor.RED_NEG_AND_EQUALITY

    def logical_constant(self, name, ty=None):
        if name == EQ_NAME:
            return eq(ty)
        if name == NEG_NAME and self.has_negation:
            return RED_NEG
        raise UnknownConnective(name)


_EQ_CONSTS = {}


def eq(ty):
    c = _EQ_CONSTS.get(ty)
    if c is None:
        c = _EQ_CONSTS[ty] = k.mk_const(EQ_NAME, eq_type(ty))
    return c


def mk_eq(lhs, rhs):
    return app(eq(lhs.ty), lhs, rhs)


def is_parameter(t):
    return t.kind == k.CONST and t.name not in LOGICAL_NAMES


RED_NEG = k.mk_const(NEG_NAME, Fun(O, O))

_P = k.mk_free("P", O)
_Q = k.mk_free("Q", O)
_OOO = k.arrows(O, O, O)

TOP = app(eq(_OOO), eq(O), eq(O))
BOT = mk_eq(k.abstract(_P, "P", O), k.lam(O, TOP))
NEG = k.abstract(mk_eq(_P, BOT), "P", O)


def _binary(body):
    return k.abstract(k.abstract(body, "Q", O), "P", O)


def _and_body(p, q):
    F = k.mk_free("F", _OOO)
    return mk_eq(k.abstract(app(F, TOP, TOP), "F", _OOO),
                 k.abstract(app(F, p, q), "F", _OOO))


AND = _binary(_and_body(_P, _Q))
OR = _binary(app(NEG, app(AND, app(NEG, _P), app(NEG, _Q))))
IMPLIES = _binary(app(OR, app(NEG, _P), _Q))
IFF = _binary(mk_eq(_P, _Q))


def pi(ty):
    """Π^τ := λP. P =^{oτ} λX. ⊤"""
    P = k.mk_free("P", Fun(O, ty))
    return k.abstract(mk_eq(P, k.lam(ty, TOP)), "P", Fun(O, ty))


def leibniz(ty):
    """λX.λY. Π^{oτ}(λP. P X ⇒ P Y), connectives expanded."""
    X, Y = k.mk_free("X", ty), k.mk_free("Y", ty)
    P = k.mk_free("P", Fun(O, ty))
    body = app(pi(Fun(O, ty)), k.abstract(app(IMPLIES, app(P, X), app(P, Y)), "P", Fun(O, ty)))
    return k.abstract(k.abstract(body, "Y", ty), "X", ty)


CONNECTIVES = {
    "T": TOP, "F": BOT, "~": NEG, "&": AND, "|": OR, "->": IMPLIES, "<->": IFF,
}
_ALIASES = {
    "⊤": "T", "top": "T", "⊥": "F", "bot": "F", "¬": "~", "not": "~",
    "∧": "&", "and": "&", "∨": "|", "or": "|", "⇒": "->", "implies": "->",
    "⇔": "<->", "iff": "<->",
}


def expand_connective(name, ty=None):
    """The defining closed term of a connective (Π needs its type ``ty``)."""
    if name in ("Π", "Pi", "!"):
        if ty is None:
            raise UnknownConnective("Π needs a type")
        return pi(ty)
    key = _ALIASES.get(name, name)
    try:
        return CONNECTIVES[key]
    except KeyError:
        raise UnknownConnective(name) from None


# convenience builders producing βη-normal sentences

def neg(s):
    return k.normalize(app(NEG, s))


def conj(s, t):
    return k.normalize(app(AND, s, t))


def disj(s, t):
    return k.normalize(app(OR, s, t))


def implies(s, t):
    return k.normalize(app(IMPLIES, s, t))


def iff(s, t):
    return k.normalize(app(IFF, s, t))


def forall(ty, pred):
    return k.normalize(app(pi(ty), pred))


def leq(s, t):
    """Normal form of the Leibniz equation ``s ≐ t``."""
    return k.normalize(app(leibniz(s.ty), s, t))


def neq(s, t):
    return neg(mk_eq(s, t))


TOP_NF = k.normalize(TOP)
BOT_NF = k.normalize(BOT)
NEG_NF = k.normalize(NEG)
AND_LHS = k.normalize(k.lam(_OOO, app(k.mk_bvar(0, _OOO), TOP, TOP)))
NEG_TOP_NF = neg(TOP_NF)
NEG_BOT_NF = neg(BOT_NF)


# -- recognizers on βη-normal forms -------------------------------------------

def match_eq(t):
    """``l =^τ r`` → ``(τ, l, r)``."""
    if t.kind != k.APP:
        return None
    f = t.fn
    if f.kind != k.APP:
        return None
    c = f.fn
    if c.kind == k.CONST and c.name == EQ_NAME:
        return (f.arg.ty, f.arg, t.arg)
    return None


def match_neg(t):
    """Blue negation ``s =^o ⊥`` → ``s``."""
    m = match_eq(t)
    if m is not None and m[0] is O and m[2] is BOT_NF:
        return m[1]
    return None


def match_red_neg(t):
    if t.kind == k.APP and t.fn is RED_NEG:
        return t.arg
    return None


def match_neq(t):
    s = match_neg(t)
    return None if s is None else match_eq(s)


def _unlift(t):
    return None if t.mask & 1 else k.shift(t, -1, 0)


def match_and(t):
    m = match_eq(t)
    if m is None or m[0] is not _OOO_TO_O or m[1] is not AND_LHS:
        return None
    r = m[2]
    if r.kind != k.LAM:
        return None
    h, args = k.head_args(r.body)
    if h.kind != k.BVAR or h.idx != 0 or len(args) != 2:
        return None
    s, u = _unlift(args[0]), _unlift(args[1])
    if s is None or u is None:
        return None
    return s, u


_OOO_TO_O = Fun(O, _OOO)


def match_or(t):
    inner = match_neg(t)
    if inner is None:
        return None
    m = match_and(inner)
    if m is None:
        return None
    s, u = match_neg(m[0]), match_neg(m[1])
    if s is None or u is None:
        return None
    return s, u


def match_implies(t):
    m = match_or(t)
    if m is None:
        return None
    p = match_neg(m[0])
    if p is None:
        return None
    return p, m[1]


def match_pi(t):
    """``Π^τ F`` → ``(τ, F)``."""
    m = match_eq(t)
    if m is None or m[0].kind != k.FUN or m[0].res is not O:
        return None
    ty = m[0].arg
    if m[2] is not k.mk_lam(ty, TOP_NF):
        return None
    return ty, m[1]


def match_leibniz(t):
    """``s ≐^τ t`` → ``(τ, s, t)``; verified by rebuilding the normal form."""
    m = match_pi(t)
    if m is None:
        return None
    pty, pred = m
    if pty.kind != k.FUN or pty.res is not O or pred.kind != k.LAM:
        return None
    imp = match_implies(pred.body)
    if imp is None:
        return None
    sides = []
    for side in imp:
        h, args = k.head_args(side)
        if h.kind != k.BVAR or h.idx != 0 or len(args) != 1:
            return None
        x = _unlift(args[0])
        if x is None:
            return None
        sides.append(x)
    s, u = sides
    if leq(s, u) is not t:
        return None
    return pty.arg, s, u


def is_atomic(t):
    """Closed normal Boolean term whose head is a parameter."""
    if t.ty is not O or not k.is_closed(t):
        return False
    h, _ = k.head_args(t)
    return is_parameter(h)


# -- external propositions ----------------------------------------------------

class ExternalProp:
    __slots__ = ()


@dataclass(frozen=True)
class Embed(ExternalProp):
    term: object


@dataclass(frozen=True)
class MetaNeg(ExternalProp):
    body: ExternalProp


@dataclass(frozen=True)
class MetaEq(ExternalProp):
    lhs: object
    rhs: object
    ty: object = field(default=None)

    def __post_init__(self):
        if self.ty is None:
            object.__setattr__(self, "ty", self.lhs.ty)
        if self.lhs.ty is not self.ty or self.rhs.ty is not self.ty:
            raise TypeMismatch(f"meta-equation sides must have type {self.ty}")


@dataclass(frozen=True)
class MetaTopProp(ExternalProp):
    pass


MetaTop = MetaTopProp()


@dataclass(frozen=True)
class MetaOr(ExternalProp):
    left: ExternalProp
    right: ExternalProp


@dataclass(frozen=True)
class MetaForall(ExternalProp):
    """Meta-level ∀; inside ``body`` the bound variable is loose index 0."""
    ty: object
    body: ExternalProp


def map_terms(p, fn, depth=0):
    """Apply ``fn(term, depth)`` to every embedded term of ``p``."""
    if isinstance(p, Embed):
        return Embed(fn(p.term, depth))
    if isinstance(p, MetaNeg):
        return MetaNeg(map_terms(p.body, fn, depth))
    if isinstance(p, MetaEq):
        return MetaEq(fn(p.lhs, depth), fn(p.rhs, depth), p.ty)
    if isinstance(p, MetaOr):
        return MetaOr(map_terms(p.left, fn, depth), map_terms(p.right, fn, depth))
    if isinstance(p, MetaForall):
        return MetaForall(p.ty, map_terms(p.body, fn, depth + 1))
    return p


def instantiate_prop(p, value):
    """``[value/X] body`` for the body of a :class:`MetaForall`."""
    return map_terms(p, lambda t, depth: _inst_index(t, depth, value))


def _inst_index(t, j, v):
    if (t.mask >> j) == 0:
        return t
    if t.kind == k.BVAR:
        if t.idx == j:
            return k.shift(v, j, 0)
        return k.mk_bvar(t.idx - 1, t.ty) if t.idx > j else t
    if t.kind == k.LAM:
        return k.mk_lam(t.bty, _inst_index(t.body, j + 1, v))
    return k.mk_app(_inst_index(t.fn, j, v), _inst_index(t.arg, j, v))


def prop_is_closed(p):
    if isinstance(p, Embed):
        return k.is_closed(p.term)
    if isinstance(p, MetaNeg):
        return prop_is_closed(p.body)
    if isinstance(p, MetaEq):
        return k.is_closed(p.lhs) and k.is_closed(p.rhs)
    if isinstance(p, MetaOr):
        return prop_is_closed(p.left) and prop_is_closed(p.right)
    if isinstance(p, MetaForall):
        return _closed_under(p.body, 1)
    return True


def _closed_under(p, depth):
    if isinstance(p, Embed):
        return (p.term.mask >> depth) == 0 and not p.term.hasfree
    if isinstance(p, MetaNeg):
        return _closed_under(p.body, depth)
    if isinstance(p, MetaEq):
        return all((t.mask >> depth) == 0 and not t.hasfree for t in (p.lhs, p.rhs))
    if isinstance(p, MetaOr):
        return _closed_under(p.left, depth) and _closed_under(p.right, depth)
    if isinstance(p, MetaForall):
        return _closed_under(p.body, depth + 1)
    return True
