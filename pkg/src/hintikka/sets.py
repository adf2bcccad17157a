"""Sentence sets, proposition sets and property reports."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import kernel as k
from . import logic as L
from .errors import NotBoolean, NotClosed
from .universe import TermUniverse


class Status(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    VACUOUS = "VacuousPass"
    BOUNDED = "BoundedPass"

    def __str__(self):
        return self.value


@dataclass
class PropertyReport:
    property: str
    status: Status
    witnesses: list = field(default_factory=list)
    suite: str = "steen"
    note: str = ""

    def __post_init__(self):
        if self.status is Status.FAIL and not self.witnesses:
            raise ValueError(f"{self.property}: a failing report needs a witness")

    @property
    def ok(self):
        return self.status is not Status.FAIL

    def to_json(self, show=None):
        show = show or str
        return {
            "property": self.property,
            "suite": self.suite,
            "status": self.status.value,
            "witnesses": [_render_witness(w, show) for w in self.witnesses],
        }


def _render_witness(w, show):
    if isinstance(w, str):
        return w
    if isinstance(w, tuple):
        if w and isinstance(w[0], str) and w[0].startswith("missing"):
            return w[0] + ": " + ", ".join(_render_alt(x, show) for x in w[1:])
        return " ; ".join(_render_witness(x, show) for x in w)
    return show(w)


def render_witness(w, show):
    return _render_witness(w, show)


def _render_alt(x, show):
    if isinstance(x, tuple):
        return "{" + ", ".join(_render_alt(y, show) for y in x) + "}"
    return show(x)


class Tally:
    """Accumulates the outcome of one property over its instances."""

    def __init__(self, name, suite):
        self.name = name
        self.suite = suite
        self.instances = 0
        self.gaps = 0
        self.bounded = False
        self.witnesses = []
        self.note = ""

    def hit(self):
        self.instances += 1

    def gap(self):
        self.instances += 1
        self.gaps += 1

    def fail(self, *witness):
        self.instances += 1
        self.witnesses.append(witness[0] if len(witness) == 1 else witness)

    def report(self):
        if self.witnesses:
            st = Status.FAIL
        elif self.instances == 0:
            st = Status.VACUOUS
        elif self.bounded or self.gaps:
            st = Status.BOUNDED
        else:
            st = Status.PASS
        note = self.note
        if self.gaps:
            note = (note + "; " if note else "") + f"{self.gaps} instance(s) beyond the bound"
        return PropertyReport(self.name, st, self.witnesses, self.suite, note)


def _check_sentence(t):
    if t.ty is not k.O:
        raise NotBoolean(f"sentence has type {t.ty}")
    if not k.is_closed(t):
        raise NotClosed("sentence has free variables")


class SentenceSet:
    """A finite set of closed Boolean sentences stored in βη-normal form."""

    def __init__(self, members, signature, universe=None, depth=1):
        norm = []
        for t in members:
            k.typecheck(t)
            _check_sentence(t)
            norm.append(k.normalize(t))
        self.members = frozenset(norm)
        self.signature = signature
        self.universe = universe if universe is not None else TermUniverse(signature, depth)

    def __contains__(self, t):
        return k.normalize(t) in self.members

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.members)

    def sorted(self):
        return sorted(self.members, key=k.term_key)

    def with_members(self, members):
        return SentenceSet(members, self.signature, self.universe)

    def __eq__(self, other):
        return isinstance(other, SentenceSet) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        from .syntax import print_term
        return "SentenceSet{" + ", ".join(print_term(t) for t in self.sorted()) + "}"


def prop_key(p):
    """Deterministic sort key for external propositions."""
    if isinstance(p, L.Embed):
        return (0, k.term_key(p.term))
    if isinstance(p, L.MetaEq):
        return (1, k.term_key(p.lhs), k.term_key(p.rhs))
    if isinstance(p, L.MetaNeg):
        return (2, prop_key(p.body))
    if isinstance(p, L.MetaOr):
        return (3, prop_key(p.left), prop_key(p.right))
    if isinstance(p, L.MetaForall):
        return (4, str(p.ty), prop_key(p.body))
    return (5,)


class PropSet:
    """A finite set of closed external propositions over a red signature.

    ``universe`` is the blue universe; red instances are obtained through the
    translation.  Scope tests are made on blue preimages.
    """

    def __init__(self, members, signature, universe):
        self.members = frozenset(members)
        self.signature = signature
        self.universe = universe

    def __contains__(self, p):
        return p in self.members

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.members)

    def sorted(self):
        return sorted(self.members, key=prop_key)

    def __eq__(self, other):
        return isinstance(other, PropSet) and self.members == other.members

    def __hash__(self):
        return hash(self.members)
