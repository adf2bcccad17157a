"""Command-line front end.

Exit codes: 0 success, 1 semantic failure (a property fails, the seeds are
inconsistent, the set is not saturated), 2 input error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import errors as E
from .closure import BranchPolicy, ClosureConfig, close, provenance_lines
from .model import check_models, extract_model, model_json
from .reduction import REDUCTION_CONFIRMED, sharp_closure, verify_reduction
from .sets import PropSet, SentenceSet, Status, prop_key, render_witness
from .syntax import (parse_prop_file, parse_sentence_file, print_prop,
                     print_signature, print_term)
from .universe import TermUniverse

OK, FAILED, BAD_INPUT, LIMIT = 0, 1, 2, 3

_INPUT_ERRORS = (E.SentenceSyntaxError, E.UnknownSymbol, E.IllTyped, E.TypeMismatch,
                 E.NotBoolean, E.NotClosed, E.UnknownConnective, E.UniverseMissingType)
_LIMITS = (E.IterationLimit, E.UniverseExplosion)


def _read(paths):
    chunks = []
    for p in paths:
        if p == "-":
            chunks.append(sys.stdin.read())
        else:
            with open(p, encoding="utf-8") as fh:
                chunks.append(fh.read())
    return "\n".join(chunks)


def _sentences(args):
    sig, seeds = parse_sentence_file(_read(args.files))
    return sig, seeds


def _show(x):
    if isinstance(x, str):
        return x
    if hasattr(x, "kind"):
        return print_term(x)
    return print_prop(x)


def _emit(out, args, payload, text):
    if args.format == "json":
        out.write(json.dumps(payload, ensure_ascii=False, indent=2) + "\n")
    else:
        out.write(text)


def _report_text(reports):
    lines = []
    for r in reports:
        lines.append(f"{r.suite:6s} {r.property:16s} {r.status.value}")
        for w in r.witnesses:
            lines.append("    " + _witness_text(w))
        if r.note:
            lines.append(f"    note: {r.note}")
    return "\n".join(lines) + "\n"


def _witness_text(w):
    return render_witness(w, _show)


def _failed(reports):
    return any(r.status is Status.FAIL for r in reports)


# -- commands -------------------------------------------------------------------

def cmd_check(args, out):
    text = _read(args.files)
    if args.suite == "brown":
        from .brown import check_brown
        sig, props = parse_prop_file(text)
        P = PropSet(props, sig, TermUniverse(sig, args.universe_depth))
        reports = check_brown(P)
    else:
        from .steen import check_steen
        sig, sents = parse_sentence_file(text)
        reports = check_steen(SentenceSet(sents, sig, depth=args.universe_depth))
    _emit(out, args, {"reports": [r.to_json(_show) for r in reports]}, _report_text(reports))
    return FAILED if _failed(reports) else OK


def cmd_translate(args, out):
    sig, sents = _sentences(args)
    P = sharp_closure(SentenceSet(sents, sig, depth=args.universe_depth))
    members = sorted(P.members, key=prop_key)
    if args.format == "json":
        _emit(out, args, {"propositions": [print_prop(p) for p in members]}, "")
    else:
        out.write(print_signature(P.signature) if members else "")
        out.write("".join(print_prop(p) + "\n" for p in members))
    return OK


def _config(args):
    policy = BranchPolicy.SEED_DRIVEN if args.seed else BranchPolicy.LEFT_FIRST
    return ClosureConfig(universe_depth=args.universe_depth, max_iterations=args.max_iterations,
                         valuation_seed=args.seed, branch_policy=policy,
                         saturate=getattr(args, "saturate", False))


def _close(args, provenance=None):
    sig, seeds = _sentences(args)
    return close(seeds, sig, _config(args), provenance)


def _inconsistent(out, args, res):
    wit = [_show(w) for w in res.witnesses]
    _emit(out, args, {"result": "inconsistent", "reason": res.reason, "witnesses": wit},
          f"inconsistent: {res.reason}\n" + "".join(f"    {w}\n" for w in wit))
    return FAILED


def cmd_close(args, out):
    steps = [] if args.provenance else None
    H = _close(args, steps)
    if not H:
        return _inconsistent(out, args, H)
    if args.provenance:
        with open(args.provenance, "w", encoding="utf-8") as fh:
            text = provenance_lines(steps)
            fh.write(text + "\n" if text else "")
    members = [print_term(t) for t in H.sorted()]
    _emit(out, args,
          {"result": "closed", "signature": [[n, str(t)] for n, t in H.signature.params],
           "members": members},
          print_signature(H.signature) + "".join(m + "\n" for m in members))
    return OK


def cmd_model(args, out):
    sig, sents = _sentences(args)
    H = SentenceSet(sents, sig, depth=args.universe_depth)
    M = extract_model(H)
    r = check_models(M, H)
    payload = dict(model_json(M), report=r.to_json(_show))
    classes = "".join("class " + " ".join(c) + "\n" for c in payload["iotaClasses"])
    vals = "".join(f"{s} := {v}\n" for s, v in payload["valuation"].items())
    _emit(out, args, payload, classes + vals + _report_text([r]))
    return FAILED if r.status is Status.FAIL else OK


def cmd_reduce(args, out):
    H = _close(args)
    if not H:
        return _inconsistent(out, args, H)
    R = verify_reduction(H)
    text = _report_text(R.steen + R.brown) + f"verdict: {R.verdict}\n"
    _emit(out, args, R.to_json(), text)
    return OK if R.verdict == REDUCTION_CONFIRMED else FAILED


COMMANDS = {"check": cmd_check, "translate": cmd_translate, "close": cmd_close,
            "model": cmd_model, "reduce": cmd_reduce}


def build_parser():
    ap = argparse.ArgumentParser(prog="hintikka", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("files", nargs="+", help="input files ('-' for stdin)")
        p.add_argument("--universe-depth", type=int, default=1)
        p.add_argument("--max-iterations", type=int, default=1000)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0,
                       help="valuation seed; nonzero shuffles branch order")
        if name == "check":
            p.add_argument("--suite", choices=("steen", "brown"), default="steen")
        if name == "close":
            p.add_argument("--provenance", metavar="PATH",
                           help="write derivation steps as JSON lines")
            p.add_argument("--saturate", action="store_true",
                           help="decide every Boolean universe term, as model needs")
    return ap


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    if args.universe_depth < 0 or args.max_iterations < 1:
        err.write("error: --universe-depth must be >= 0 and --max-iterations >= 1\n")
        return BAD_INPUT
    try:
        return COMMANDS[args.command](args, out)
    except OSError as e:
        err.write(f"error: {e}\n")
        return BAD_INPUT
    except _INPUT_ERRORS as e:
        err.write(f"input error: {e}\n")
        return BAD_INPUT
    except _LIMITS as e:
        err.write(f"resource limit: {e}\n")
        return LIMIT
    except (E.NotSaturated, E.Contradictory) as e:
        err.write(f"{type(e).__name__}: {e}\n")
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
