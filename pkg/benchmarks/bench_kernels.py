"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N] [--json]

Kernel timings call each backend directly.  The enumeration timing runs a
fresh interpreter per backend, since the backend is fixed at import.
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from pgroup import corpus, kernels

ENUM_SCRIPT = """
import time
from pgroup import corpus, enumerate_automorphisms
G = corpus.get({name!r}).group()
t0 = time.perf_counter()
n = len(enumerate_automorphisms(G))
print(time.perf_counter() - t0, n)
"""


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_extend_map(mod, G, repeat):
    kt = mod.prepare(G.mul)
    rng = np.random.default_rng(0)
    pairs = [sorted(rng.choice(G.order, 2, replace=False).tolist()) for _ in range(200)]
    return best_of(lambda: [mod.extend_map(kt, p, p) for p in pairs], repeat)


def bench_associativity(mod, G, repeat):
    return best_of(lambda: mod.first_nonassociative(G.mul), repeat)


def bench_collection(mod, P, repeat):
    m = P.rank
    comm = np.zeros((m, m, m), dtype=np.int64)
    for j, i, w in P.commutator_relations:
        comm[j, i] = w
    pw = np.array(P.power_relations, dtype=np.int64).reshape(m, m)
    col = mod.Collector(P.relative_orders, pw, comm, P.central)
    rng = np.random.default_rng(1)
    orders = np.array(P.relative_orders)
    pairs = [(tuple(rng.integers(0, orders).tolist()), tuple(rng.integers(0, orders).tolist()))
             for _ in range(5000)]
    return best_of(lambda: [col.product(u, v) for u, v in pairs], repeat)


def bench_enumeration(backend, name):
    env = dict(os.environ)
    env.pop("PGROUP_PURE_PYTHON", None)
    if backend == "python":
        env["PGROUP_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", ENUM_SCRIPT.format(name=name)], env=env,
                         capture_output=True, text=True, check=True).stdout.split()
    return float(out[0])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    big = corpus.get("heis_z4_circ_z8")
    cases = [
        ("extend_map x200", "es125", lambda m: bench_extend_map(m, corpus.get("es125").group(), args.repeat)),
        ("first_nonassociative", "heis_z4_circ_z8",
         lambda m: bench_associativity(m, big.group(), args.repeat)),
        ("collect x5000", "heis_z4_circ_z8",
         lambda m: bench_collection(m, big.presentation(), args.repeat)),
    ]
    rows = []
    for label, group, fn in cases:
        rows.append({"kernel": label, "group": group,
                     **{name: fn(mod) for name, mod in sorted(backends.items())}})
    for name in ("es32_minus", "w_c"):
        rows.append({"kernel": "enumerate_automorphisms", "group": name,
                     **{b: bench_enumeration(b, name) for b in sorted(backends)}})

    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    names = sorted(backends)
    print(f"{'kernel':<24} {'group':<16} " + " ".join(f"{n:>10}" for n in names) + "   speedup")
    for r in rows:
        speed = f"{r['python'] / r['cython']:8.1f}x" if "cython" in r else "       -"
        print(f"{r['kernel']:<24} {r['group']:<16} "
              + " ".join(f"{r[n] * 1e3:8.1f}ms" for n in names) + f"  {speed}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
