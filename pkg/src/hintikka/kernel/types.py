"""Simple types over the base types ``o`` (Booleans) and ``i`` (individuals).

Types are interned, so identity is equality and they can be compared with
``is`` or ``==`` interchangeably.  ``Fun(result, argument)`` follows the
juxtaposition convention: the type written ``ντ`` maps ``τ`` to ``ν``.
"""

from __future__ import annotations

BASE_O = 0
BASE_I = 1
FUN = 2


class Type:
    __slots__ = ("kind", "res", "arg", "_str", "__weakref__")

    def __init__(self, kind, res=None, arg=None):
        self.kind = kind
        self.res = res
        self.arg = arg
        self._str = None

    def __repr__(self):
        return f"Type({self})"

    def __str__(self):
        if self._str is None:
            if self.kind == BASE_O:
                self._str = "o"
            elif self.kind == BASE_I:
                self._str = "i"
            else:
                self._str = f"({self.arg} > {self.res})"
        return self._str

    def __lt__(self, other):
        return type_key(self) < type_key(other)

    @property
    def is_fun(self):
        return self.kind == FUN

    def arity(self):
        n, t = 0, self
        while t.kind == FUN:
            n += 1
            t = t.res
        return n

    def args(self):
        """Argument types in application order, e.g. ``oιι`` gives ``[ι, ι]``."""
        out, t = [], self
        while t.kind == FUN:
            out.append(t.arg)
            t = t.res
        return out

    def target(self):
        t = self
        while t.kind == FUN:
            t = t.res
        return t

    def __reduce__(self):
        if self.kind == FUN:
            return (Fun, (self.res, self.arg))
        return (_base, (self.kind,))


O = Type(BASE_O)
I = Type(BASE_I)
_FUN_TABLE: dict[tuple[Type, Type], Type] = {}


def _base(kind):
    return O if kind == BASE_O else I


def Fun(res: Type, arg: Type) -> Type:
    key = (res, arg)
    t = _FUN_TABLE.get(key)
    if t is None:
        t = _FUN_TABLE[key] = Type(FUN, res, arg)
    return t


def arrows(*types: Type) -> Type:
    """``arrows(τ1, ..., τn, ν)`` is the curried type taking τ1..τn to ν."""
    *args, res = types
    for a in reversed(args):
        res = Fun(res, a)
    return res


def eq_type(t: Type) -> Type:
    """Type ``oττ`` of primitive equality at ``τ``."""
    return Fun(Fun(O, t), t)


def type_key(t: Type):
    if t.kind == FUN:
        return (2, type_key(t.arg), type_key(t.res))
    return (t.kind,)


def subtypes(t: Type) -> set[Type]:
    out = {t}
    if t.kind == FUN:
        out |= subtypes(t.res)
        out |= subtypes(t.arg)
    return out
