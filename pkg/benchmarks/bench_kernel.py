"""Compare the compiled and pure-Python kernel cores.

Two measurements:
  terms   build and normalize random well-typed terms in each core, in-process;
          every round draws fresh terms so memoized normal forms do not carry over
  corpus  close and check the whole seed corpus in a subprocess per backend,
          selected through HINTIKKA_PURE

    python benchmarks/bench_kernel.py --terms 20000 --rounds 5
"""

import argparse
import os
import random
import statistics
import subprocess
import sys
import time

HERE = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(HERE, "..", "tests"))

import termgen  # noqa: E402
from hintikka.kernel import I, O, Fun, _pykernel  # noqa: E402

try:
    from hintikka.kernel import _ckernel
except ImportError:
    _ckernel = None

_CORPUS_RUN = """
import time
from hintikka import kernel as k
from hintikka.corpus import CORPUS
from hintikka.steen import check_steen
from hintikka.brown import check_brown
from hintikka.reduction import sharp_closure
t = time.perf_counter()
for e in CORPUS:
    H = e.close()
    check_steen(H)
    check_brown(sharp_closure(H))
print(k.IMPLEMENTATION, time.perf_counter() - t)
"""


def time_terms(core, trees):
    t0 = time.perf_counter()
    terms = [termgen.build(tr, core) for tr in trees]
    t1 = time.perf_counter()
    for t in terms:
        core.normalize(t)
    t2 = time.perf_counter()
    return t1 - t0, t2 - t1


def bench_terms(args):
    cores = [("python", _pykernel)]
    if _ckernel is not None:
        cores.insert(0, ("cython", _ckernel))
    types = (O, I, Fun(O, I), Fun(I, I))
    results = {name: ([], []) for name, _ in cores}
    for r in range(args.rounds):
        rng = random.Random(args.seed + r)
        gen = termgen.TreeGen(rng)
        trees = [gen.tree(rng.choice(types), args.fuel) for _ in range(args.terms)]
        for name, core in cores:
            b, n = time_terms(core, trees)
            results[name][0].append(b)
            results[name][1].append(n)
    print(f"terms: {args.terms} per round, fuel {args.fuel}, {args.rounds} rounds (median s)")
    print(f"  {'core':8s} {'build':>9s} {'normalize':>10s}")
    med = {}
    for name, (b, n) in results.items():
        med[name] = (statistics.median(b), statistics.median(n))
        print(f"  {name:8s} {med[name][0]:9.4f} {med[name][1]:10.4f}")
    if "cython" in med:
        py, cy = med["python"], med["cython"]
        print(f"  speedup  {py[0] / cy[0]:8.2f}x {py[1] / cy[1]:9.2f}x")
    else:
        print("  compiled core not built; nothing to compare")


def bench_corpus(args):
    print(f"corpus: close and check both suites over every entry ({args.rounds} runs, median s)")
    for flag in ("0", "1"):
        env = dict(os.environ, HINTIKKA_PURE=flag)
        times, impl = [], None
        for _ in range(args.rounds):
            out = subprocess.run([sys.executable, "-c", _CORPUS_RUN], env=env, check=True,
                                 capture_output=True, text=True).stdout.split()
            impl = out[0]
            times.append(float(out[1]))
        print(f"  HINTIKKA_PURE={flag} ({impl:6s}) {statistics.median(times):8.3f}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--terms", type=int, default=20000, help="random terms per round")
    ap.add_argument("--fuel", type=int, default=6, help="generator size bound")
    ap.add_argument("--rounds", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--skip-corpus", action="store_true", help="only time the term kernel")
    args = ap.parse_args(argv)
    bench_terms(args)
    if not args.skip_corpus:
        bench_corpus(args)


if __name__ == "__main__":
    main()
