"""Bounded closed-term universes.

A term's *depth* counts nested applications along argument positions: atoms
have depth 0, ``h a1 .. an`` has depth ``1 + max depth(ai)`` and a λ adds
nothing.  The four logical ground sentences ⊤, ⊥, ¬⊤ and ¬⊥ count as atoms
because the derived-property arguments instantiate with them.

``U_d[τ]`` is every closed βη-normal term of type τ with depth ≤ d whose
heads are parameters, bound variables or ``=^σ`` for σ in the equality types
(o, ι and the parameter types).  Rule conclusions are demanded of a Hintikka
set only up to one level deeper, ``scope_depth = d + 1``.
"""

from __future__ import annotations

import itertools

from . import kernel as k
from . import logic as L
from .errors import UniverseExplosion, UniverseMissingType
from .kernel import I, O

DEFAULT_CAP = 10_000

LOGICAL_ATOMS = (L.TOP_NF, L.BOT_NF, L.NEG_TOP_NF, L.NEG_BOT_NF)
_ATOM_SET = frozenset(LOGICAL_ATOMS)

_DEPTH = {}


def term_depth(t):
    r = _DEPTH.get(t)
    if r is not None:
        return r
    if t in _ATOM_SET or t.kind in (k.CONST, k.FREE, k.BVAR):
        r = 0
    elif t.kind == k.LAM:
        r = term_depth(t.body)
    else:
        h, args = k.head_args(t)
        r = 1 + max(term_depth(a) for a in args)
        if h.kind == k.LAM:  # not normal; count the head too
            r = max(r, term_depth(h))
    _DEPTH[t] = r
    return r


def _eq_types(sig):
    tys = {O, I}
    tys.update(ty for _, ty in sig.params)
    return tys


class TermUniverse:
    """Closed normal terms per type, generated lazily and memoized.

    Pass ``per_type`` to fix the universe explicitly; types outside it then
    raise :class:`UniverseMissingType`.
    """

    def __init__(self, sig, depth, cap=DEFAULT_CAP, per_type=None):
        if depth < 0:
            raise ValueError("universe depth must be non-negative")
        self.signature = sig
        self.depth = depth
        self.cap = cap
        self.eq_types = frozenset(_eq_types(sig))
        self._fixed = per_type is not None
        self._cache = {}
        self._per_type = {}
        if per_type:
            for ty, terms in per_type.items():
                self._per_type[ty] = tuple(sorted(set(map(k.normalize, terms)), key=k.term_key))
        pool = {}
        for name, ty in sig.params:
            pool.setdefault(ty, []).append(name)
        self.parameter_pool = {ty: tuple(ns) for ty, ns in pool.items()}

    @property
    def generation_depth(self):
        return self.depth

    @property
    def scope_depth(self):
        return self.depth + 1

    def in_scope(self, t):
        """Whether a sentence is shallow enough for rule conclusions to be demanded."""
        return term_depth(t) <= self.depth + 1

    def parameters(self, ty):
        return [k.mk_const(n, ty) for n in self.parameter_pool.get(ty, ())]

    def has(self, ty):
        return ty in self._per_type or not self._fixed

    def terms(self, ty):
        r = self._per_type.get(ty)
        if r is None:
            if self._fixed:
                raise UniverseMissingType(ty)
            r = tuple(sorted(self._gen(ty, self.depth, ()), key=k.term_key))
            self._per_type[ty] = r
        return r

    __getitem__ = terms

    def __contains__(self, t):
        return t in set(self.terms(t.ty))

    @property
    def per_type(self):
        return dict(self._per_type)

    def generated_types(self):
        return sorted(self._per_type, key=str)

    # -- enumeration ----------------------------------------------------------

    def _heads(self, ctx):
        out = [k.mk_const(n, ty) for n, ty in self.signature.params]
        out.extend(L.eq(ty) for ty in sorted(self.eq_types, key=str))
        out.extend(k.mk_bvar(i, ty) for i, ty in enumerate(ctx))
        return out

    def _gen(self, ty, d, ctx):
        key = (ty, d, ctx)
        r = self._cache.get(key)
        if r is not None:
            return r
        out = set()
        if ty is O:
            out.update(LOGICAL_ATOMS)
        for h in self._heads(ctx):
            if h.ty is ty:
                out.add(h)
        if d > 0:
            for h in self._heads(ctx):
                hty = h.ty
                argtys = []
                while hty.kind == k.FUN:
                    argtys.append(hty.arg)
                    hty = hty.res
                    if hty is ty:
                        pools = [self._gen(a, d - 1, ctx) for a in argtys]
                        if any(not p for p in pools):
                            continue
                        n = 1
                        for p in pools:
                            n *= len(p)
                        if n + len(out) > self.cap:
                            raise UniverseExplosion(f"more than {self.cap} terms of type {ty}")
                        for args in itertools.product(*pools):
                            out.add(k.normalize(k.app(h, *args)))
        if ty.kind == k.FUN:
            inner = (ty.arg,) + ctx
            for body in self._gen(ty.res, d, inner):
                out.add(k.normalize(k.mk_lam(ty.arg, body)))
        if len(out) > self.cap:
            raise UniverseExplosion(f"more than {self.cap} terms of type {ty}")
        r = frozenset(out)
        self._cache[key] = r
        return r


def generate_universe(sig, depth, cap=DEFAULT_CAP):
    return TermUniverse(sig, depth, cap)
