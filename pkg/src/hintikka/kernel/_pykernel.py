"""Pure-Python term core.

Terms are hash-consed: every constructor goes through an intern table, so
structurally equal terms (with nameless bound variables) are the same object
and equality is identity.  ``_ckernel.pyx`` implements the same interface with
typed Cython; ``hintikka.kernel`` picks one at import time.
"""

from .types import FUN, Fun

CONST = 0
FREE = 1
BVAR = 2
LAM = 3
APP = 4

FUN_SIDE = 0
ARG_SIDE = 1
UNDER_BINDER = 2

IMPLEMENTATION = "python"


class Term:
    __slots__ = (
        "kind", "name", "idx", "ty", "bty", "fn", "arg", "body",
        "size", "mask", "hasfree", "__weakref__",
    )

    def __repr__(self):
        from .terms import debug_str
        return f"<Term {debug_str(self)}>"

    def __reduce__(self):
        if self.kind == CONST:
            return (mk_const, (self.name, self.ty))
        if self.kind == FREE:
            return (mk_free, (self.name, self.ty))
        if self.kind == BVAR:
            return (mk_bvar, (self.idx, self.ty))
        if self.kind == LAM:
            return (mk_lam, (self.bty, self.body))
        return (mk_app, (self.fn, self.arg))


_TABLE = {}
_NF = {}


def _new(kind, ty, size, mask, hasfree):
    t = Term()
    t.kind = kind
    t.name = None
    t.idx = -1
    t.ty = ty
    t.bty = None
    t.fn = None
    t.arg = None
    t.body = None
    t.size = size
    t.mask = mask
    t.hasfree = hasfree
    return t


def mk_const(name, ty):
    key = (CONST, name, ty)
    t = _TABLE.get(key)
    if t is None:
        t = _new(CONST, ty, 1, 0, False)
        t.name = name
        _TABLE[key] = t
    return t


def mk_free(name, ty):
    key = (FREE, name, ty)
    t = _TABLE.get(key)
    if t is None:
        t = _new(FREE, ty, 1, 0, True)
        t.name = name
        _TABLE[key] = t
    return t


def mk_bvar(idx, ty):
    if idx >= 64:
        raise OverflowError("binder nesting deeper than 64")
    key = (BVAR, idx, ty)
    t = _TABLE.get(key)
    if t is None:
        t = _new(BVAR, ty, 1, 1 << idx, False)
        t.idx = idx
        _TABLE[key] = t
    return t


def mk_lam(bty, body):
    key = (LAM, bty, body)
    t = _TABLE.get(key)
    if t is None:
        ty = None if body.ty is None else Fun(body.ty, bty)
        t = _new(LAM, ty, body.size + 1, body.mask >> 1, body.hasfree)
        t.bty = bty
        t.body = body
        _TABLE[key] = t
    return t


def mk_app(fn, arg):
    key = (APP, fn, arg)
    t = _TABLE.get(key)
    if t is None:
        fty = fn.ty
        ty = None
        if fty is not None and fty.kind == FUN and fty.arg is arg.ty:
            ty = fty.res
        t = _new(APP, ty, fn.size + arg.size + 1, fn.mask | arg.mask,
                 fn.hasfree or arg.hasfree)
        t.fn = fn
        t.arg = arg
        _TABLE[key] = t
    return t


def shift(t, d, cutoff=0):
    """Add ``d`` to every loose bound index ``>= cutoff``."""
    if d == 0 or (t.mask >> cutoff) == 0:
        return t
    k = t.kind
    if k == BVAR:
        return mk_bvar(t.idx + d, t.ty)
    if k == LAM:
        return mk_lam(t.bty, shift(t.body, d, cutoff + 1))
    return mk_app(shift(t.fn, d, cutoff), shift(t.arg, d, cutoff))


def _inst(t, v, depth):
    if (t.mask >> depth) == 0:
        return t
    k = t.kind
    if k == BVAR:
        i = t.idx
        if i == depth:
            return shift(v, depth, 0)
        return mk_bvar(i - 1, t.ty)
    if k == LAM:
        return mk_lam(t.bty, _inst(t.body, v, depth + 1))
    return mk_app(_inst(t.fn, v, depth), _inst(t.arg, v, depth))


def instantiate(body, v):
    """Substitute ``v`` for loose index 0 of ``body`` (the β step)."""
    return _inst(body, v, 0)


def normalize(t):
    r = _NF.get(t)
    if r is not None:
        return r
    k = t.kind
    if k == LAM:
        body = normalize(t.body)
        if body.kind == APP and body.arg.kind == BVAR and body.arg.idx == 0 \
                and not (body.fn.mask & 1):
            r = shift(body.fn, -1, 0)
        else:
            r = mk_lam(t.bty, body)
    elif k == APP:
        f = normalize(t.fn)
        if f.kind == LAM:
            r = normalize(_inst(f.body, t.arg, 0))
        else:
            r = mk_app(f, normalize(t.arg))
    else:
        r = t
    _NF[t] = r
    _NF[r] = r
    return r


def is_normal(t):
    return normalize(t) is t


def subterm_at(u, path):
    for step in path:
        k = u.kind
        if step == FUN_SIDE and k == APP:
            u = u.fn
        elif step == ARG_SIDE and k == APP:
            u = u.arg
        elif step == UNDER_BINDER and k == LAM:
            u = u.body
        else:
            return None
    return u


def replace_at(u, path, t, i=0):
    if i == len(path):
        return t
    step = path[i]
    if step == FUN_SIDE:
        return mk_app(replace_at(u.fn, path, t, i + 1), u.arg)
    if step == ARG_SIDE:
        return mk_app(u.fn, replace_at(u.arg, path, t, i + 1))
    return mk_lam(u.bty, replace_at(u.body, path, t, i + 1))


def closed_subterms(u):
    """All (path, subterm) pairs with no loose bound index, leftmost-outermost."""
    out = []
    stack = [((), u)]
    while stack:
        path, t = stack.pop()
        if t.mask == 0 and not t.hasfree:
            out.append((path, t))
        k = t.kind
        if k == APP:
            stack.append((path + (ARG_SIDE,), t.arg))
            stack.append((path + (FUN_SIDE,), t.fn))
        elif k == LAM:
            stack.append((path + (UNDER_BINDER,), t.body))
    return out


def occurrences(u, s):
    """Paths of ``u`` at which the (closed) term ``s`` occurs."""
    out = []
    stack = [((), u)]
    size = s.size
    while stack:
        path, t = stack.pop()
        if t is s:
            out.append(path)
            continue
        if t.size <= size:
            continue
        k = t.kind
        if k == APP:
            stack.append((path + (ARG_SIDE,), t.arg))
            stack.append((path + (FUN_SIDE,), t.fn))
        elif k == LAM:
            stack.append((path + (UNDER_BINDER,), t.body))
    return out


def cache_info():
    return {"interned": len(_TABLE), "normal_forms": len(_NF)}
