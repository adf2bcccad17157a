"""Term-level operations built on the interned core.

Bound variables are de Bruijn indices (``mk_bvar``); free variables carry a
name and a type (``mk_free``).  A position is a tuple of steps drawn from
``FUN_SIDE``, ``ARG_SIDE`` and ``UNDER_BINDER``.
"""

from __future__ import annotations

from ..errors import BadPosition, IllTyped, OpenReplacement, TypeMismatch
from . import _core
from .types import FUN

__all__ = [
    "app", "lam", "head_args", "typecheck", "is_closed", "substitute",
    "abstract", "subterm_at", "replace_at", "positions", "debug_str",
    "loose_bvar_free", "term_key", "free_vars", "constants",
]


def app(f, *args):
    for a in args:
        f = _core.mk_app(f, a)
    return f


def lam(ty, body):
    return _core.mk_lam(ty, body)


def head_args(t):
    """Split an application spine ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while t.kind == _core.APP:
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def typecheck(t, _path=()):
    """Return the type of ``t`` or raise :class:`IllTyped` at the first bad node."""
    if t.ty is not None:
        return t.ty
    if t.kind == _core.LAM:
        typecheck(t.body, _path + (_core.UNDER_BINDER,))
    elif t.kind == _core.APP:
        fty = typecheck(t.fn, _path + (_core.FUN_SIDE,))
        aty = typecheck(t.arg, _path + (_core.ARG_SIDE,))
        if fty.kind != FUN:
            raise IllTyped(_path + (_core.FUN_SIDE,), "function type", fty)
        raise IllTyped(_path + (_core.ARG_SIDE,), fty.arg, aty)
    raise IllTyped(_path, "typed atom", None)


def is_closed(t):
    return t.mask == 0 and not t.hasfree


def loose_bvar_free(t, idx=0):
    return not (t.mask >> idx) & 1


def substitute(t, name, ty, s):
    """Replace free variable ``name:ty`` in ``t`` by ``s`` without capture."""
    if s.ty is not ty:
        raise TypeMismatch(f"variable {name}:{ty} cannot take a term of type {s.ty}")
    var = _core.mk_free(name, ty)

    def go(u, depth):
        if not u.hasfree:
            return u
        k = u.kind
        if u is var:
            return _core.shift(s, depth, 0)
        if k == _core.LAM:
            return _core.mk_lam(u.bty, go(u.body, depth + 1))
        if k == _core.APP:
            return _core.mk_app(go(u.fn, depth), go(u.arg, depth))
        return u

    return go(t, 0)


def abstract(t, name, ty):
    """Turn free ``name:ty`` into the loose index bound by a new outer binder."""
    var = _core.mk_free(name, ty)

    def go(u, depth):
        if not u.hasfree and (u.mask >> depth) == 0:
            return u
        k = u.kind
        if u is var:
            return _core.mk_bvar(depth, ty)
        if k == _core.BVAR:
            return _core.mk_bvar(u.idx + 1, u.ty) if u.idx >= depth else u
        if k == _core.LAM:
            return _core.mk_lam(u.bty, go(u.body, depth + 1))
        if k == _core.APP:
            return _core.mk_app(go(u.fn, depth), go(u.arg, depth))
        return u

    return _core.mk_lam(ty, go(t, 0))


def subterm_at(u, path):
    r = _core.subterm_at(u, tuple(path))
    if r is None:
        raise BadPosition(f"no subterm at {list(path)}")
    return r


def replace_at(u, path, t):
    path = tuple(path)
    old = subterm_at(u, path)
    if not is_closed(t):
        raise OpenReplacement("replacement term must be closed")
    if old.ty is not t.ty:
        raise TypeMismatch(f"cannot put {t.ty} where {old.ty} is expected")
    return _core.replace_at(u, path, t)


def positions(u):
    """Every position of ``u`` in leftmost-outermost order."""
    out = []
    stack = [()]
    while stack:
        p = stack.pop()
        out.append(p)
        t = _core.subterm_at(u, p)
        if t.kind == _core.APP:
            stack.append(p + (_core.ARG_SIDE,))
            stack.append(p + (_core.FUN_SIDE,))
        elif t.kind == _core.LAM:
            stack.append(p + (_core.UNDER_BINDER,))
    return out


def free_vars(t):
    out = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if not u.hasfree:
            continue
        if u.kind == _core.FREE:
            out.add((u.name, u.ty))
        elif u.kind == _core.LAM:
            stack.append(u.body)
        elif u.kind == _core.APP:
            stack.extend((u.fn, u.arg))
    return out


def constants(t):
    out = set()
    stack = [t]
    seen = set()
    while stack:
        u = stack.pop()
        if u in seen:
            continue
        seen.add(u)
        if u.kind == _core.CONST:
            out.add(u)
        elif u.kind == _core.LAM:
            stack.append(u.body)
        elif u.kind == _core.APP:
            stack.extend((u.fn, u.arg))
    return out


_KEYS = {}


def term_key(t):
    """A structural sort key; deterministic across runs (unlike ``id``)."""
    r = _KEYS.get(t)
    if r is not None:
        return r
    k = t.kind
    if k in (_core.CONST, _core.FREE):
        r = (t.size, k, t.name, str(t.ty))
    elif k == _core.BVAR:
        r = (t.size, k, t.idx, str(t.ty))
    elif k == _core.LAM:
        r = (t.size, k, str(t.bty), term_key(t.body))
    else:
        r = (t.size, k, term_key(t.fn), term_key(t.arg))
    _KEYS[t] = r
    return r


def debug_str(t):
    k = t.kind
    if k in (_core.CONST, _core.FREE):
        return t.name
    if k == _core.BVAR:
        return f"#{t.idx}"
    if k == _core.LAM:
        return f"(\\{t.bty}. {debug_str(t.body)})"
    return f"({debug_str(t.fn)} {debug_str(t.arg)})"
