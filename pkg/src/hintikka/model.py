"""Bounded term models of saturated Hintikka sets.

The Booleans are {T, F}.  Individuals are classes of universe ι-terms under
the set's positive ι-equations.  A function type ranges over the
denotations of its universe terms, so function equality is decided
pointwise over the universe.  A Boolean part of a sentence that mentions a
parameter is computed first.  Parameter atoms and the apartness of
individuals are only known from the set, so when the computation leaves the
universe the part is looked up instead: T when it is a member, F when its
negation is, otherwise its value in the Boolean universe.
"""

from __future__ import annotations

import enum
import json

from . import kernel as k
from . import logic as L
from .errors import Contradictory, NotSaturated, OutOfUniverse
from .kernel import I, O
from .sets import Status, Tally
from .steen import check_saturated, neg


class Truth(str, enum.Enum):
    T = "T"
    F = "F"

    def __bool__(self):
        return self is Truth.T

    @classmethod
    def of(cls, b):
        return cls.T if b else cls.F


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        root = x
        while p[root] is not root:
            root = p[root]
        while p[x] is not root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra is rb:
            return
        # keep the smaller term as representative, for stable output
        if k.term_key(rb) < k.term_key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted((sorted(c, key=k.term_key) for c in out.values()),
                      key=lambda c: k.term_key(c[0]))


class _Fn:
    """A function value; ``reify`` rebuilds a closed term denoting it."""

    __slots__ = ("call", "reify")

    def __init__(self, call, reify):
        self.call = call
        self.reify = reify


class BoundedModel:
    def __init__(self, H, valuation, classes):
        self.H = H
        self.universe = H.universe
        self.valuation = valuation
        self._uf = classes
        self._members = H.members
        self._den = {}
        self._domain = {}
        self._apart = set()
        for t in H.members:
            m = L.match_neq(t)
            if m is not None and m[0] is I and m[1] in classes.parent and m[2] in classes.parent:
                self._apart.add(frozenset((classes.find(m[1]), classes.find(m[2]))))

    @property
    def domain_iota(self):
        return sorted({self._uf.find(t) for t in self._uf.parent}, key=k.term_key)

    def iota_classes(self):
        return self._uf.classes()

    # -- semantics -------------------------------------------------------------------

    def decided(self, t):
        """What the set or the valuation says about ``t``, else None."""
        if t in self._members:
            return True
        if neg(t) in self._members:
            return False
        v = self.valuation.get(t)
        return None if v is None else bool(v)

    def atom(self, t):
        v = self.decided(t)
        if v is None:
            raise OutOfUniverse(t)
        return v

    def individual(self, t):
        if t not in self._uf.parent:
            raise OutOfUniverse(t)
        return self._uf.find(t)

    def domain(self, ty):
        r = self._domain.get(ty)
        if r is None:
            if ty is O:
                r = (True, False)
            elif ty is I:
                r = tuple(self.domain_iota)
            else:
                r = tuple(self.den(u, ()) for u in self.universe.terms(ty))
            self._domain[ty] = r
        return r

    def equal(self, x, y, ty):
        if ty is O:
            return x == y
        if ty is I:
            if x is y:
                return True
            # classes only merge on equations; apartness needs a disequation
            if frozenset((x, y)) in self._apart:
                return False
            raise OutOfUniverse(L.mk_eq(x, y))
        return all(self.equal(x.call(v), y.call(v), ty.res) for v in self.domain(ty.arg))

    def reify(self, v):
        """A closed term denoting the value ``v``."""
        if isinstance(v, bool):
            return L.TOP_NF if v else L.BOT_NF
        if isinstance(v, _Fn):
            return v.reify()
        return v

    def den(self, t, env):
        closed = t.mask == 0
        if closed:
            r = self._den.get(t)
            if r is not None:
                return r
        r = self._den_raw(t, env)
        if closed:
            self._den[t] = r
        return r

    def _den_raw(self, t, env, root=False):
        if t.ty is O and not root:
            c = t if t.mask == 0 or not env else k.normalize(_close_over(t, env, self))
            if _mentions_parameter(c):
                try:
                    return self._den_raw(c, (), root=True)
                except OutOfUniverse:
                    v = self.decided(c)
                    if v is None:
                        raise
                    return v
        kind = t.kind
        if kind == k.BVAR:
            return env[t.idx]
        if kind == k.LAM:
            body = t.body

            def call(v, body=body, env=env):
                return self.den(body, (v,) + env)

            def reify(t=t, env=env):
                return k.normalize(_close_over(t, env, self))
            return _Fn(call, reify)
        h, args = k.head_args(t)
        if h.kind == k.CONST and h.name == L.EQ_NAME:
            ety = h.ty.arg
            if len(args) == 2:
                if args[0] is args[1]:
                    return True
                return self.equal(self.den(args[0], env), self.den(args[1], env), ety)
            return self._curry(h, args, env)
        if h.kind == k.BVAR:
            f = env[h.idx]
            for a in args:
                f = f.call(self.den(a, env))
            return f
        if h.kind == k.CONST and L.is_parameter(h):
            if t.ty is O or t.ty is I:
                if t.mask:
                    t = k.normalize(_close_over(t, env, self))
                return self.atom(t) if t.ty is O else self.individual(t)
            return self._curry(h, args, env)
        raise OutOfUniverse(t)

    def _curry(self, h, args, env):
        """Partial application of a constant, as a function value."""
        vals = tuple(self.den(a, env) for a in args)
        tys = []
        ty = h.ty
        while ty.kind == k.FUN:
            tys.append(ty.arg)
            ty = ty.res
        return self._partial(h, vals, tys)

    def _partial(self, h, vals, tys):
        def term(nv=vals):
            return k.normalize(k.app(h, *(self.reify(x) for x in nv)))

        def call(v):
            nv = vals + (v,)
            if len(nv) < len(tys):
                return self._partial(h, nv, tys)
            if h.name == L.EQ_NAME:
                return self.equal(nv[0], nv[1], tys[0])
            t = term(nv)
            return self.atom(t) if t.ty is O else self.individual(t)
        return _Fn(call, term)


_MENTIONS = {}


def _mentions_parameter(t):
    r = _MENTIONS.get(t)
    if r is None:
        r = _MENTIONS[t] = any(L.is_parameter(c) for c in k.constants(t))
    return r


def _close_over(t, env, M):
    """Substitute reified environment values for the loose variables of ``t``."""
    if not env:
        return t
    return _inst_all(t, [M.reify(v) for v in env], 0)


def _inst_all(t, vals, depth):
    """Replace loose index ``depth + i`` by ``vals[i]`` (closed terms)."""
    if not t.mask >> depth:
        return t
    kind = t.kind
    if kind == k.BVAR:
        i = t.idx - depth
        return vals[i] if 0 <= i < len(vals) else t
    if kind == k.LAM:
        return k.mk_lam(t.bty, _inst_all(t.body, vals, depth + 1))
    if kind == k.APP:
        return k.mk_app(_inst_all(t.fn, vals, depth), _inst_all(t.arg, vals, depth))
    return t


def extract_model(H):
    """Term model of a saturated, consistent ``H`` over its universe."""
    sat = check_saturated(H)
    if sat.status is Status.FAIL:
        raise NotSaturated(f"{len(sat.witnesses)} Boolean universe term(s) undecided")
    for t in H.sorted():
        if neg(t) in H.members:
            raise Contradictory(t)
    valuation = {}
    for s in H.universe.terms(O):
        valuation[s] = Truth.T if s in H.members else Truth.F
    uf = _UnionFind()
    for t in H.universe.terms(I):
        uf.add(t)
    for t in H.sorted():
        m = L.match_eq(t)
        if m is not None and m[0] is I:
            uf.add(m[1])
            uf.add(m[2])
            uf.union(m[1], m[2])
    return BoundedModel(H, valuation, uf)


def evaluate(M, s):
    """Truth value of a closed sentence in ``M``."""
    t = k.normalize(s)
    if t.ty is not O:
        raise TypeError(f"evaluate needs a sentence, found type {t.ty}")
    if t in M._den:
        return Truth.of(M._den[t])
    return Truth.of(M._den_raw(t, (), root=True))


def check_models(M, H):
    tl = Tally("models", "model")
    for s in H.sorted():
        try:
            v = evaluate(M, s)
        except OutOfUniverse:
            tl.gap()
            continue
        if v is Truth.T:
            tl.hit()
        else:
            tl.fail(s, "evaluates to F")
    r = tl.report()
    return r


def model_json(M, show=None):
    if show is None:
        from .syntax import print_term
        show = print_term
    return {
        "iotaClasses": [[show(t) for t in c] for c in M.iota_classes()],
        "valuation": {show(s): M.valuation[s].value
                      for s in sorted(M.valuation, key=k.term_key)},
    }


def dump_model(M, show=None):
    return json.dumps(model_json(M, show), ensure_ascii=False, indent=2)


__all__ = ["BoundedModel", "Truth", "extract_model", "evaluate", "check_models",
           "model_json", "dump_model"]
