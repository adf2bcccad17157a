# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term core; same interface and semantics as ``_pykernel``."""

from .types import Fun

cdef enum:
    K_CONST = 0
    K_FREE = 1
    K_BVAR = 2
    K_LAM = 3
    K_APP = 4

CONST = K_CONST
FREE = K_FREE
BVAR = K_BVAR
LAM = K_LAM
APP = K_APP

FUN_SIDE = 0
ARG_SIDE = 1
UNDER_BINDER = 2

IMPLEMENTATION = "cython"

cdef int TYPE_FUN = 2


cdef class Term:
    cdef readonly int kind
    cdef readonly object name
    cdef readonly long idx
    cdef readonly object ty
    cdef readonly object bty
    cdef readonly Term fn
    cdef readonly Term arg
    cdef readonly Term body
    cdef readonly long size
    cdef readonly object mask
    cdef unsigned long long cmask
    cdef readonly bint hasfree
    cdef object __weakref__

    def __repr__(self):
        from .terms import debug_str
        return f"<Term {debug_str(self)}>"

    def __reduce__(self):
        if self.kind == K_CONST:
            return (mk_const, (self.name, self.ty))
        if self.kind == K_FREE:
            return (mk_free, (self.name, self.ty))
        if self.kind == K_BVAR:
            return (mk_bvar, (self.idx, self.ty))
        if self.kind == K_LAM:
            return (mk_lam, (self.bty, self.body))
        return (mk_app, (self.fn, self.arg))


cdef dict _TABLE = {}
cdef dict _NF = {}


cdef inline Term _new(int kind, object ty, long size, unsigned long long m, bint hasfree):
    cdef Term t = Term.__new__(Term)
    t.kind = kind
    t.name = None
    t.idx = -1
    t.ty = ty
    t.bty = None
    t.fn = None
    t.arg = None
    t.body = None
    t.size = size
    t.cmask = m
    t.mask = m
    t.hasfree = hasfree
    return t


cpdef Term mk_const(object name, object ty):
    key = (K_CONST, name, ty)
    cdef Term t = _TABLE.get(key)
    if t is None:
        t = _new(K_CONST, ty, 1, 0, False)
        t.name = name
        _TABLE[key] = t
    return t


cpdef Term mk_free(object name, object ty):
    key = (K_FREE, name, ty)
    cdef Term t = _TABLE.get(key)
    if t is None:
        t = _new(K_FREE, ty, 1, 0, True)
        t.name = name
        _TABLE[key] = t
    return t


cpdef Term mk_bvar(long idx, object ty):
    if idx >= 64:
        raise OverflowError("binder nesting deeper than 64")
    key = (K_BVAR, idx, ty)
    cdef Term t = _TABLE.get(key)
    if t is None:
        t = _new(K_BVAR, ty, 1, (<unsigned long long>1) << idx, False)
        t.idx = idx
        _TABLE[key] = t
    return t


cpdef Term mk_lam(object bty, Term body):
    key = (K_LAM, bty, body)
    cdef Term t = _TABLE.get(key)
    if t is None:
        ty = None if body.ty is None else Fun(body.ty, bty)
        t = _new(K_LAM, ty, body.size + 1, body.cmask >> 1, body.hasfree)
        t.bty = bty
        t.body = body
        _TABLE[key] = t
    return t


cpdef Term mk_app(Term fn, Term arg):
    key = (K_APP, fn, arg)
    cdef Term t = _TABLE.get(key)
    if t is None:
        fty = fn.ty
        ty = None
        if fty is not None and fty.kind == TYPE_FUN and fty.arg is arg.ty:
            ty = fty.res
        t = _new(K_APP, ty, fn.size + arg.size + 1, fn.cmask | arg.cmask,
                 fn.hasfree or arg.hasfree)
        t.fn = fn
        t.arg = arg
        _TABLE[key] = t
    return t


cdef Term _shift(Term t, long d, long cutoff):
    if d == 0 or cutoff >= 64 or (t.cmask >> cutoff) == 0:
        return t
    if t.kind == K_BVAR:
        return mk_bvar(t.idx + d, t.ty)
    if t.kind == K_LAM:
        return mk_lam(t.bty, _shift(t.body, d, cutoff + 1))
    return mk_app(_shift(t.fn, d, cutoff), _shift(t.arg, d, cutoff))


def shift(Term t, long d, long cutoff=0):
    """Add ``d`` to every loose bound index ``>= cutoff``."""
    return _shift(t, d, cutoff)


cdef Term _inst(Term t, Term v, long depth):
    if depth >= 64 or (t.cmask >> depth) == 0:
        return t
    cdef long i
    if t.kind == K_BVAR:
        i = t.idx
        if i == depth:
            return _shift(v, depth, 0)
        return mk_bvar(i - 1, t.ty)
    if t.kind == K_LAM:
        return mk_lam(t.bty, _inst(t.body, v, depth + 1))
    return mk_app(_inst(t.fn, v, depth), _inst(t.arg, v, depth))


cpdef Term instantiate(Term body, Term v):
    """Substitute ``v`` for loose index 0 of ``body`` (the β step)."""
    return _inst(body, v, 0)


cpdef Term normalize(Term t):
    cdef Term r = _NF.get(t)
    cdef Term body, f
    if r is not None:
        return r
    if t.kind == K_LAM:
        body = normalize(t.body)
        if body.kind == K_APP and body.arg.kind == K_BVAR and body.arg.idx == 0 \
                and not (body.fn.cmask & 1):
            r = _shift(body.fn, -1, 0)
        else:
            r = mk_lam(t.bty, body)
    elif t.kind == K_APP:
        f = normalize(t.fn)
        if f.kind == K_LAM:
            r = normalize(_inst(f.body, t.arg, 0))
        else:
            r = mk_app(f, normalize(t.arg))
    else:
        r = t
    _NF[t] = r
    _NF[r] = r
    return r


def is_normal(Term t):
    return normalize(t) is t


def subterm_at(Term u, path):
    for step in path:
        if step == FUN_SIDE and u.kind == K_APP:
            u = u.fn
        elif step == ARG_SIDE and u.kind == K_APP:
            u = u.arg
        elif step == UNDER_BINDER and u.kind == K_LAM:
            u = u.body
        else:
            return None
    return u


cdef Term _replace(Term u, tuple path, Term t, Py_ssize_t i):
    if i == len(path):
        return t
    step = path[i]
    if step == FUN_SIDE:
        return mk_app(_replace(u.fn, path, t, i + 1), u.arg)
    if step == ARG_SIDE:
        return mk_app(u.fn, _replace(u.arg, path, t, i + 1))
    return mk_lam(u.bty, _replace(u.body, path, t, i + 1))


def replace_at(Term u, path, Term t):
    return _replace(u, tuple(path), t, 0)


def closed_subterms(Term u):
    """All (path, subterm) pairs with no loose bound index, leftmost-outermost."""
    cdef list out = []
    cdef list stack = [((), u)]
    cdef Term t
    cdef tuple path
    while stack:
        path, t = stack.pop()
        if t.cmask == 0 and not t.hasfree:
            out.append((path, t))
        if t.kind == K_APP:
            stack.append((path + (ARG_SIDE,), t.arg))
            stack.append((path + (FUN_SIDE,), t.fn))
        elif t.kind == K_LAM:
            stack.append((path + (UNDER_BINDER,), t.body))
    return out


def occurrences(Term u, Term s):
    """Paths of ``u`` at which the (closed) term ``s`` occurs."""
    cdef list out = []
    cdef list stack = [((), u)]
    cdef long size = s.size
    cdef Term t
    cdef tuple path
    while stack:
        path, t = stack.pop()
        if t is s:
            out.append(path)
            continue
        if t.size <= size:
            continue
        if t.kind == K_APP:
            stack.append((path + (ARG_SIDE,), t.arg))
            stack.append((path + (FUN_SIDE,), t.fn))
        elif t.kind == K_LAM:
            stack.append((path + (UNDER_BINDER,), t.body))
    return out


def cache_info():
    return {"interned": len(_TABLE), "normal_forms": len(_NF)}
