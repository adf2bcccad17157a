"""A small fixed corpus of seed sets for the closure engine.

Every entry is small enough to close in well under a second or two.  The
universe depth of each entry is chosen so that the seeds' Boolean parts lie
within the Boolean universe; a seed whose parts lie beyond it can only be
decided up to the bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .closure import ClosureConfig, close
from .syntax import parse_sentence, parse_signature

_SIGS = {
    "ab": "param a : i\nparam b : i",
    "abc": "param a : i\nparam b : i\nparam c : i",
    "qr": "param q : o\nparam r : o",
    "qrs": "param q : o\nparam r : o\nparam s : o",
    "abq": "param a : i\nparam b : i\nparam q : o",
    "abqr": "param a : i\nparam b : i\nparam q : o\nparam r : o",
    "abcq": "param a : i\nparam b : i\nparam c : i\nparam q : o",
}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    signature: str
    seeds: tuple
    depth: int

    def parse(self):
        sig = parse_signature(self.signature)
        return sig, [parse_sentence(s, sig) for s in self.seeds]

    def close(self, **kw):
        sig, seeds = self.parse()
        return close(seeds, sig, ClosureConfig(universe_depth=self.depth, **kw))


def _e(name, sig, seeds, depth):
    return CorpusEntry(name, _SIGS[sig], tuple(seeds), depth)


CORPUS = (
    _e("eq-d0", "ab", ["a =[i] b"], 0),
    _e("eq-d1", "ab", ["a =[i] b"], 1),
    _e("diseq-d0", "ab", ["~(a =[i] b)"], 0),
    _e("diseq-d1", "ab", ["~(a =[i] b)"], 1),
    _e("eq-or-diseq-d0", "ab", ["a =[i] b | ~(a =[i] b)"], 0),
    _e("eq-or-diseq-d1", "ab", ["a =[i] b | ~(a =[i] b)"], 1),
    _e("all-equal-a-d1", "ab", ["![i] (\\X:i. X =[i] a)"], 1),
    _e("atom-d0", "qr", ["q"], 0),
    _e("neg-atom-d0", "qr", ["~q"], 0),
    _e("neg-atom-d1", "qr", ["~q"], 1),
    _e("and-d0", "qr", ["q & r"], 0),
    _e("or-d0", "qr", ["q | r"], 0),
    _e("nand-d0", "qr", ["~(q & r)"], 0),
    _e("nand-d1", "qr", ["~(q & r)"], 1),
    _e("implies-d0", "qr", ["q -> r"], 0),
    _e("bool-eq-d0", "qr", ["q =[o] r"], 0),
    _e("bool-diseq-d0", "qr", ["~(q =[o] r)"], 0),
    _e("lit-pair-d0", "qr", ["q", "~r"], 0),
    _e("eq-and-atom-d1", "abq", ["a =[i] b & q"], 1),
    _e("diseq-or-atom-d0", "abq", ["~(a =[i] b) | q"], 0),
    _e("diseq-or-atom-d1", "abq", ["~(a =[i] b) | q"], 1),
    _e("atom-implies-eq-d0", "abq", ["q -> a =[i] b"], 0),
    _e("and3-d0", "qrs", ["q & r & s"], 0),
    _e("or3-d0", "qrs", ["q | r | s"], 0),
    _e("neg-and-or-d0", "qrs", ["~q", "r | s"], 0),
    _e("eq-and-or-d0", "abqr", ["a =[i] b", "q | r"], 0),
    _e("diseq-and-lits-d0", "abqr", ["~(a =[i] b)", "q & ~r"], 0),
    _e("eq-chain-break-d0", "abc", ["a =[i] b", "~(b =[i] c)"], 0),
    _e("diseq-pair-d0", "abc", ["~(a =[i] b)", "~(b =[i] c)"], 0),
    _e("eq-atom-four-d0", "abcq", ["a =[i] b", "~(b =[i] c)", "q"], 0),
)


def entry(name):
    for e in CORPUS:
        if e.name == name:
            return e
    raise KeyError(name)


__all__ = ["CORPUS", "CorpusEntry", "entry"]
