"""Concrete syntax for types, sentences, signatures and external propositions.

Types::

    type := "o" | "i" | "(" type ">" type ")"      # (τ > ν) is τ → ν

Terms, loosest first (``->`` is right-associative, the rest associate left)::

    t -> t   t | t   t & t   t =[τ] t   ~ t  ![τ] t   application   atom

Atoms are names, ``T``, ``F``, ``(\\X:τ. t)``, ``(t)``, the bare equality
``(=[τ])`` and bare connectives such as ``(~)``.  Signature lines read
``param <name> : <type>``.  Proposition files add ``!~ p``, ``l !=[τ] r``,
``!T``, ``p !| q``, ``!A X:τ. p`` and grouping brackets ``[p]``.
"""

from __future__ import annotations

import itertools
import re

from . import kernel as k
from . import logic as L
from .errors import (IllTyped, NotBoolean, NotClosed, SentenceSyntaxError,
                     UnknownSymbol)
from .kernel import I, O, Fun

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<meq>!=\[)
  | (?P<eq>=\[)
  | (?P<pi>!\[)
  | (?P<mneg>!~)
  | (?P<mor>!\|)
  | (?P<mtop>!T\b)
  | (?P<mall>!A\b)
  | (?P<arrow>->)
  | (?P<punct>[()\[\]:.>~&|\\λ])
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

RESERVED = {"T", "F"}


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"{self.kind}:{self.text!r}@{self.line}:{self.col}"


def _tokenize(text, line=1):
    toks = []
    pos = 0
    col0 = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SentenceSyntaxError(f"unexpected character {text[pos]!r}", line, pos - col0 + 1)
        kind = m.lastgroup
        if kind != "ws":
            tk = m.group()
            if kind == "punct":
                kind = tk
                if tk == "λ":
                    kind = "\\"
            toks.append(_Tok(kind, m.group(), line, pos - col0 + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, len(text) - col0 + 1))
    return toks


class _Parser:
    def __init__(self, text, sig, line=1, bound=()):
        self.toks = _tokenize(text, line)
        self.i = 0
        self.sig = sig
        self.params = sig.parameters
        self.scope = list(bound)  # (name, placeholder) innermost last
        self.fresh = itertools.count()

    # -- token helpers --------------------------------------------------------

    @property
    def cur(self):
        return self.toks[self.i]

    def peek(self, n=1):
        return self.toks[min(self.i + n, len(self.toks) - 1)]

    def error(self, msg, tok=None):
        tok = tok or self.cur
        return SentenceSyntaxError(msg, tok.line, tok.col)

    def take(self, kind):
        tok = self.cur
        if tok.kind != kind:
            want = "name" if kind == "name" else repr(kind)
            got = tok.text or "end of input"
            raise self.error(f"expected {want}, found {got!r}")
        self.i += 1
        return tok

    def accept(self, kind):
        if self.cur.kind == kind:
            self.i += 1
            return True
        return False

    def expect_end(self):
        if self.cur.kind != "eof":
            raise self.error(f"unexpected {self.cur.text!r}")

    # -- types ----------------------------------------------------------------

    def type_(self):
        tok = self.cur
        if tok.kind == "name" and tok.text in ("o", "i"):
            self.i += 1
            return O if tok.text == "o" else I
        if self.accept("("):
            parts = [self.type_()]
            while self.accept(">"):
                parts.append(self.type_())
            self.take(")")
            if len(parts) == 1:
                return parts[0]
            ty = parts[-1]
            for a in reversed(parts[:-1]):
                ty = Fun(ty, a)
            return ty
        raise self.error("expected a type")

    # -- terms ----------------------------------------------------------------

    def term(self):
        return self.imp()

    def imp(self):
        left = self.or_()
        if self.accept("arrow"):
            right = self.imp()
            return self._binop("->", left, right)
        return left

    def or_(self):
        left = self.and_()
        while self.accept("|"):
            left = self._binop("|", left, self.and_())
        return left

    def and_(self):
        left = self.eq()
        while self.accept("&"):
            left = self._binop("&", left, self.eq())
        return left

    def eq(self):
        left = self.prefix()
        while self.cur.kind == "eq":
            self.i += 1
            ty = self.type_()
            self.take("]")
            right = self.prefix()
            left = k.app(L.eq(ty), left, right)
        return left

    def prefix(self):
        if self.accept("~"):
            return k.mk_app(self._neg(), self.prefix())
        if self.cur.kind == "pi":
            self.i += 1
            ty = self.type_()
            self.take("]")
            return k.mk_app(L.pi(ty), self.prefix())
        if self.cur.kind == "\\":
            return self.lam_rest()
        return self.app()

    def app(self):
        t = self.atom()
        while self._starts_atom():
            t = k.mk_app(t, self.atom())
        return t

    def _starts_atom(self):
        tok = self.cur
        return tok.kind in ("name", "(")

    def atom(self):
        tok = self.cur
        if tok.kind == "name":
            self.i += 1
            return self._resolve(tok)
        if tok.kind == "(":
            nxt = self.peek()
            if nxt.kind == "\\":
                self.i += 1
                t = self.lam_rest()
                self.take(")")
                return t
            if nxt.kind == "eq":
                self.i += 2
                ty = self.type_()
                self.take("]")
                self.take(")")
                return L.eq(ty)
            if nxt.kind in ("~", "&", "|", "arrow") and self.peek(2).kind == ")":
                self.i += 3
                return self._neg() if nxt.kind == "~" else L.expand_connective(nxt.text)
            self.i += 1
            t = self.term()
            self.take(")")
            return t
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    def lam_rest(self):
        self.take("\\")
        name = self.take("name").text
        self.take(":")
        ty = self.type_()
        self.take(".")
        var = k.mk_free(f"{name}\x00{next(self.fresh)}", ty)
        self.scope.append((name, var))
        try:
            body = self.term()
        finally:
            self.scope.pop()
        return k.abstract(body, var.name, ty)

    def _resolve(self, tok):
        name = tok.text
        if name == "T":
            return L.TOP
        if name == "F":
            return L.BOT
        for n, var in reversed(self.scope):
            if n == name:
                return var
        if name in self.params:
            return k.mk_const(name, self.params[name])
        raise UnknownSymbol(f"{tok.line}:{tok.col}: unknown symbol {name!r}")

    def _neg(self):
        return L.RED_NEG if self.sig.has_negation else L.NEG

    def _binop(self, op, left, right):
        return k.app(L.expand_connective(op), left, right)

    # -- propositions ---------------------------------------------------------

    def prop(self):
        left = self.prop_unary()
        while self.cur.kind == "mor":
            self.i += 1
            left = L.MetaOr(left, self.prop_unary())
        return left

    def prop_unary(self):
        kind = self.cur.kind
        if kind == "mneg":
            self.i += 1
            return L.MetaNeg(self.prop_unary())
        if kind == "mtop":
            self.i += 1
            return L.MetaTop
        if kind == "[":
            self.i += 1
            p = self.prop()
            self.take("]")
            return p
        if kind == "mall":
            self.i += 1
            name = self.take("name").text
            self.take(":")
            ty = self.type_()
            self.take(".")
            var = k.mk_free(f"{name}\x00{next(self.fresh)}", ty)
            self.scope.append((name, var))
            try:
                body = self.prop()
            finally:
                self.scope.pop()
            return L.MetaForall(ty, L.map_terms(body, lambda t, d: _bind(t, var, d)))
        lhs = self.term()
        if self.cur.kind == "meq":
            self.i += 1
            ty = self.type_()
            self.take("]")
            rhs = self.term()
            _typed(lhs)
            _typed(rhs)
            return L.MetaEq(lhs, rhs, ty)
        return L.Embed(lhs)


def _bind(t, var, depth):
    """Turn ``var`` into the loose index ``depth`` (no new λ)."""
    def go(u, d):
        if not u.hasfree and (u.mask >> d) == 0:
            return u
        if u is var:
            return k.mk_bvar(d, var.ty)
        if u.kind == k.BVAR:
            return k.mk_bvar(u.idx + 1, u.ty) if u.idx >= d else u
        if u.kind == k.LAM:
            return k.mk_lam(u.bty, go(u.body, d + 1))
        if u.kind == k.APP:
            return k.mk_app(go(u.fn, d), go(u.arg, d))
        return u
    return go(t, depth)


def _typed(t):
    return k.typecheck(t)


def parse_type(text):
    p = _Parser(text, L.Signature())
    ty = p.type_()
    p.expect_end()
    return ty


def parse_term(text, sig, line=1):
    """Parse any well-typed closed term (not necessarily Boolean)."""
    p = _Parser(text, sig, line)
    t = p.term()
    p.expect_end()
    k.typecheck(t)
    if not k.is_closed(t):
        raise NotClosed("term has free variables")
    return t


def parse_sentence(text, sig, line=1):
    t = parse_term(text, sig, line)
    if t.ty is not O:
        raise NotBoolean(f"sentence has type {t.ty}, expected o")
    return t


def parse_prop(text, sig, line=1):
    p = _Parser(text, sig, line)
    prop = p.prop()
    p.expect_end()
    _check_prop(prop)
    return prop


def _check_prop(p, depth=0):
    if isinstance(p, L.Embed):
        k.typecheck(p.term)
        if p.term.ty is not O:
            raise NotBoolean(f"embedded term has type {p.term.ty}")
    elif isinstance(p, L.MetaNeg):
        _check_prop(p.body, depth)
    elif isinstance(p, L.MetaOr):
        _check_prop(p.left, depth)
        _check_prop(p.right, depth)
    elif isinstance(p, L.MetaForall):
        _check_prop(p.body, depth + 1)
    if depth == 0 and not L.prop_is_closed(p):
        raise NotClosed("proposition has free variables")


# -- files ----------------------------------------------------------------------

_PARAM = re.compile(r"^\s*param\s+([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(.+?)\s*$")


def _lines(text):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield n, line


def parse_signature(text, flavor=L.Flavor.BLUE_EQUALITY_ONLY):
    return _signature_from_lines(_lines(text), flavor)


def _signature_from_lines(lines, flavor):
    params = []
    for n, line in lines:
        m = _PARAM.match(line)
        if not m:
            raise SentenceSyntaxError("expected 'param <name> : <type>'", n, 1)
        name = m.group(1)
        if name in RESERVED or name in ("o", "i", "param"):
            raise SentenceSyntaxError(f"reserved name {name!r}", n, line.index(name) + 1)
        try:
            ty = parse_type(m.group(2))
        except SentenceSyntaxError as e:
            raise SentenceSyntaxError(str(e).split(": ", 1)[-1], n, m.start(2) + e.col) from None
        params.append((name, ty))
    return L.Signature(flavor, tuple(params))


def split_file(text):
    """Separate ``param`` lines from content lines, keeping line numbers."""
    sig_lines, body = [], []
    for n, line in _lines(text):
        if _PARAM.match(line):
            sig_lines.append((n, line))
        else:
            body.append((n, line))
    return sig_lines, body


def parse_sentence_file(text, sig=None, flavor=L.Flavor.BLUE_EQUALITY_ONLY):
    """Parse a sentence file; inline ``param`` lines extend ``sig``."""
    sig_lines, body = split_file(text)
    inline = _signature_from_lines(sig_lines, flavor)
    sig = inline if sig is None else sig.as_flavor(flavor).extended(inline.params)
    return sig, [parse_sentence(line, sig, n) for n, line in body]


def parse_prop_file(text, sig=None, flavor=L.Flavor.RED_NEG_AND_EQUALITY):
    sig_lines, body = split_file(text)
    inline = _signature_from_lines(sig_lines, flavor)
    sig = inline if sig is None else sig.as_flavor(flavor).extended(inline.params)
    return sig, [parse_prop(line, sig, n) for n, line in body]


def print_signature(sig):
    return "".join(f"param {n} : {type_str(t)}\n" for n, t in sig.params)


# -- printing -------------------------------------------------------------------

def type_str(ty):
    if ty is O:
        return "o"
    if ty is I:
        return "i"
    return f"({type_str(ty.arg)} > {type_str(ty.res)})"


ATOM, APP, PREFIX, EQ, AND, OR, IMP = range(7)
_NAMES = ("X", "Y", "Z", "U", "V", "W")


class _Printer:
    def __init__(self, pretty, taken):
        self.pretty = pretty
        self.taken = set(taken) | RESERVED | {"o", "i"}

    def fresh(self, env):
        used = set(env)
        for n in itertools.count():
            for base in _NAMES:
                name = base if n == 0 else f"{base}{n}"
                if name not in used and name not in self.taken:
                    return name

    def wrap(self, pair, limit):
        s, lvl = pair
        return f"({s})" if lvl > limit else s

    def show(self, t, env):
        if t is L.TOP:
            return "T", ATOM
        if t is L.BOT:
            return "F", ATOM
        kind = t.kind
        if kind == k.CONST:
            if t.name == L.EQ_NAME:
                return f"(=[{type_str(t.ty.arg)}])", ATOM
            if t.name == L.NEG_NAME:
                return "(~)", ATOM
            return t.name, ATOM
        if kind == k.FREE:
            return t.name.split("\x00", 1)[0], ATOM
        if kind == k.BVAR:
            if t.idx < len(env):
                return env[-1 - t.idx], ATOM
            return f"#{t.idx}", ATOM
        if kind == k.LAM:
            name = self.fresh(env)
            body, _ = self.show(t.body, env + [name])
            return f"(\\{name}:{type_str(t.bty)}. {body})", ATOM
        if self.pretty:
            r = self.show_connective(t, env)
            if r is not None:
                return r
        h, args = k.head_args(t)
        if t.fn is L.RED_NEG:
            return "~ " + self.wrap(self.show(t.arg, env), PREFIX), PREFIX
        if h.kind == k.CONST and h.name == L.EQ_NAME and len(args) == 2:
            ty = h.ty.arg
            left = self.wrap(self.show(args[0], env), EQ)
            right = self.wrap(self.show(args[1], env), PREFIX)
            return f"{left} =[{type_str(ty)}] {right}", EQ
        parts = [self.wrap(self.show(h, env), APP)]
        parts += [self.wrap(self.show(a, env), ATOM) for a in args]
        return " ".join(parts), APP

    def show_connective(self, t, env):
        if t is L.TOP_NF:
            return "T", ATOM
        if t is L.BOT_NF:
            return "F", ATOM
        m = L.match_implies(t)
        if m is not None:
            return (f"{self.wrap(self.show(m[0], env), OR)} -> "
                    f"{self.wrap(self.show(m[1], env), IMP)}"), IMP
        m = L.match_or(t)
        if m is not None:
            return (f"{self.wrap(self.show(m[0], env), OR)} | "
                    f"{self.wrap(self.show(m[1], env), AND)}"), OR
        s = L.match_neg(t)
        if s is not None:
            return "~ " + self.wrap(self.show(s, env), PREFIX), PREFIX
        m = L.match_and(t)
        if m is not None:
            return (f"{self.wrap(self.show(m[0], env), AND)} & "
                    f"{self.wrap(self.show(m[1], env), EQ)}"), AND
        m = L.match_pi(t)
        if m is not None:
            return f"![{type_str(m[0])}] " + self.wrap(self.show(m[1], env), PREFIX), PREFIX
        return None


def _taken_names(t):
    return {c.name for c in k.constants(t)}


def print_term(t, pretty=False, env=None):
    """Render a term in concrete syntax.

    The default output re-parses to an α-identical term.  With ``pretty`` the
    defined connectives are folded back, so re-parsing yields an equal term
    only up to βη.
    """
    p = _Printer(pretty, _taken_names(t) | set(env or ()))
    return p.show(t, list(env or []))[0]


def print_prop(p, pretty=False):
    return _show_prop(p, pretty, [], False)


def _show_prop(p, pretty, env, nested):
    if isinstance(p, L.Embed):
        s = print_term(p.term, pretty, env)
        return f"[{s}]" if nested else s
    if isinstance(p, L.MetaTopProp):
        return "!T"
    if isinstance(p, L.MetaNeg):
        return "!~ " + _show_prop(p.body, pretty, env, True)
    if isinstance(p, L.MetaEq):
        s = (f"{print_term(p.lhs, pretty, env)} !=[{type_str(p.ty)}] "
             f"{print_term(p.rhs, pretty, env)}")
        return f"[{s}]" if nested else s
    if isinstance(p, L.MetaOr):
        s = f"{_show_prop(p.left, pretty, env, True)} !| {_show_prop(p.right, pretty, env, True)}"
        return f"[{s}]" if nested else s
    if isinstance(p, L.MetaForall):
        taken = set(env)
        for n in itertools.count():
            name = "X" if n == 0 else f"X{n}"
            if name not in taken:
                break
        s = f"!A {name}:{type_str(p.ty)}. {_show_prop(p.body, pretty, env + [name], False)}"
        return f"[{s}]" if nested else s
    raise TypeError(f"not a proposition: {p!r}")


__all__ = [
    "parse_type", "parse_term", "parse_sentence", "parse_prop", "parse_signature",
    "parse_sentence_file", "parse_prop_file", "print_term", "print_prop",
    "print_signature", "type_str", "IllTyped",
]
