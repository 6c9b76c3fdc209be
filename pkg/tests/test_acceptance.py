"""Acceptance gate.

Each test checks one criterion and records a PASS/FAIL line that the
terminal summary prints under "acceptance criteria".
"""
import itertools
import subprocess
import sys
import time
import traceback

import numpy as np
import pytest

from conftest import record_criterion
from pgroup import corpus
from pgroup.construction import (CASE_A_EVEN_I, CASE_B_POWER, CASE_C_GENERIC, CASE_TAGS, REMARK4,
                                 SEARCH_FALLBACK, construct_noninner)
from pgroup.oracle import enumerate_automorphisms, frattini_by_nongenerators, theorem_witnesses
from pgroup.pc import collect_product, format_presentation, parse_presentation, to_cayley
from pgroup.structure import (center, decompose_hk, derived_subgroup, frattini, is_cyclic, profile,
                              subgroup_product)
from pgroup.table import commutator, commutator_table, power, subgroup_as_group

TRIALS = 1000
TWO_STEP_CASES = (CASE_A_EVEN_I, CASE_B_POWER, CASE_C_GENERIC)


def gate(number, title, check):
    """Run ``check() -> (ok, detail)``, record the outcome and assert it."""
    try:
        ok, detail = check()
    except Exception as exc:  # recorded as a failure, then re-raised for pytest
        record_criterion(number, title, False, f"{type(exc).__name__}: {exc}")
        traceback.print_exc()
        raise
    record_criterion(number, title, ok, detail)
    assert ok, detail


@pytest.fixture(scope="module")
def groups():
    out = {}
    for e in corpus.entries():
        G = e.group()
        out[e.name] = (G, profile(G))
    return out


@pytest.fixture(scope="module")
def nonabelian(groups):
    return {k: v for k, v in groups.items() if v[1].nilpotency_class == 2}


@pytest.fixture(scope="module")
def pipeline(nonabelian):
    t0 = time.perf_counter()
    certs = {name: construct_noninner(G, prof.prime) for name, (G, prof) in nonabelian.items()}
    return certs, time.perf_counter() - t0


def test_01_theorem_reproduction(nonabelian, pipeline):
    certs, elapsed = pipeline

    def check():
        orders = sorted({G.order for G, _ in nonabelian.values()})
        primes = sorted({prof.prime for _, prof in nonabelian.values()})
        bad = [n for n, c in certs.items() if not c.accepted]
        ok = (len(certs) >= 12 and not bad and orders[0] >= 8 and orders[-1] <= 128
              and set(primes) == {2, 3, 5} and elapsed < 60)
        return ok, (f"{len(certs)} groups, orders {orders[0]}..{orders[-1]}, primes {primes}, "
                    f"{elapsed:.1f}s, unverified={bad}")
    gate(1, "every non-abelian corpus group gets a fully verified certificate", check)


def test_02_oracle_agreement(nonabelian, pipeline):
    certs, _ = pipeline

    def check():
        problems, checked = [], 0
        for name, (G, prof) in nonabelian.items():
            if G.order > 64:
                continue
            checked += 1
            enum = enumerate_automorphisms(G, p=prof.prime)
            if not enum.complete:
                problems.append(f"{name}: incomplete")
                continue
            if not theorem_witnesses(G, prof.prime, enum):
                problems.append(f"{name}: no witnesses")
            if certs[name].automorphism not in enum:
                problems.append(f"{name}: pipeline map not enumerated")
        return not problems, f"{checked} groups of order <= 64, problems={problems}"
    gate(2, "oracle enumeration agrees with the pipeline (order <= 64)", check)


def test_03_case_coverage():
    def check():
        rows = corpus.run_corpus(oracle_max_order=0)
        seen = {r["case_tag"] for r in rows if r["pass"]}
        missing = [t for t in CASE_TAGS if t not in seen]
        return not missing, f"exercised {sorted(seen & set(CASE_TAGS))}, missing {missing}"
    gate(3, "corpus run exercises every case tag", check)


def test_04_class2_power_law(nonabelian):
    def check():
        rng = np.random.default_rng(20240)
        failures, total = 0, 0
        for name, (G, _) in nonabelian.items():
            us = rng.integers(0, G.order, TRIALS)
            vs = rng.integers(0, G.order, TRIALS)
            ks = rng.integers(0, 1000, TRIALS)
            mul = G.mul
            for u, v, k in zip(us.tolist(), vs.tolist(), ks.tolist()):
                lhs = power(G, int(mul[u, v]), k)
                c = commutator(G, v, u)
                rhs = mul[mul[power(G, u, k), power(G, v, k)], power(G, c, k * (k - 1) // 2)]
                failures += lhs != rhs
                total += 1
        return failures == 0, f"{total} trials over {len(nonabelian)} groups, {failures} failures"
    gate(4, "(uv)^k = u^k v^k [v,u]^(k(k-1)/2) on random triples", check)


def test_05_order_law(nonabelian):
    def check():
        failures, triples, groups = 0, 0, 0
        for name, (G, prof) in nonabelian.items():
            if prof.prime != 2 or G.order > 64 or not prof.derived_cyclic:
                continue
            groups += 1
            N = 2 ** prof.n
            orders = G.orders
            xs, ys = np.nonzero(orders[commutator_table(G)] == N)
            for x, y in zip(xs.tolist(), ys.tolist()):
                target = power(G, y, -N)
                for m in range(int(orders[x])):
                    if power(G, x, m * N) != target:
                        continue
                    triples += 1
                    big = orders[G.mul[power(G, x, m), y]] == 2 * N
                    failures += big != (m % 2 == 1)
        ok = failures == 0 and triples > 0
        return ok, f"{triples} triples in {groups} 2-groups, {failures} failures"
    gate(5, "|x^m y| = 2^(n+1) iff m odd, exhaustive at order <= 64", check)


def test_06_frattini_cross_check(groups):
    def check():
        bad, checked = [], 0
        for name, (G, prof) in groups.items():
            if G.order > 32:
                continue
            checked += 1
            if frattini(G, prof.prime).members != frattini_by_nongenerators(G):
                bad.append(name)
        return not bad, f"{checked} groups of order <= 32, mismatches={bad}"
    gate(6, "G'G^p equals the non-generator Frattini subgroup", check)


def test_07_hk_product_set(nonabelian, pipeline):
    certs, _ = pipeline

    def check():
        bad, checked = [], []
        for name, cert in certs.items():
            if cert.case_tag not in TWO_STEP_CASES:
                continue
            G, _ = nonabelian[name]
            H, K = decompose_hk(G, cert.witnesses["a"], cert.witnesses["b"])
            checked.append(name)
            if subgroup_product(G, H, K) != frozenset(range(G.order)):
                bad.append(name)
        return bool(checked) and not bad, f"checked {checked}, failures={bad}"
    gate(7, "<a,b> * C_G(<a,b>) = G element for element", check)


def test_08_pc_cayley_agreement():
    def check():
        bad, pairs = [], 0
        for e in corpus.entries():
            P = e.presentation()
            if parse_presentation(format_presentation(P)) != P:
                bad.append(f"{e.name}: round trip")
            if P.order > 256:
                continue
            G, vecs = to_cayley(P)
            for x, y in itertools.product(range(G.order), repeat=2):
                if P.index(collect_product(P, vecs[x], vecs[y])) != G.mul[x, y]:
                    bad.append(f"{e.name}: ({x},{y})")
                    break
            pairs += G.order ** 2
        return not bad, f"{len(corpus.entries())} presentations, {pairs} pairs, problems={bad}"
    gate(8, "Cayley tables match collection; parse/emit/parse is the identity", check)


def test_09_intermediate_claims(nonabelian, pipeline):
    certs, _ = pipeline

    def check():
        violations, runs = [], 0
        for name, cert in certs.items():
            if cert.case_tag not in (CASE_B_POWER, CASE_C_GENERIC):
                continue
            runs += 1
            G, _ = nonabelian[name]
            w = cert.witnesses
            H, _ = decompose_hk(G, w["a"], w["b"])
            Hg, emb = subgroup_as_group(H)
            pre = emb.preimage()
            ZH = center(Hg)
            n = w["n"]
            if cert.case_tag == CASE_B_POWER:
                d = pre[w["d"]]
                if w["j"] % 2 or Hg.orders[d] != 2 ** n or power(Hg, d, 2 ** (n - 1)) in ZH:
                    violations.append(name)
            else:
                e = pre[w["e"]]
                if Hg.orders[e] != 2 or e in ZH:
                    violations.append(name)
        return runs > 0 and not violations, f"{runs} runs, violations={violations}"
    gate(9, "intermediate claims hold in the power and generic cases", check)


def test_10_determinism():
    def check():
        cmd = [sys.executable, "-m", "pgroup.cli", "corpus", "--run-all", "--json"]
        first = subprocess.run(cmd, capture_output=True, check=False)
        second = subprocess.run(cmd, capture_output=True, check=False)
        same = first.stdout == second.stdout
        ok = same and first.returncode == 0 and second.returncode == 0 and first.stdout
        return bool(ok), (f"{len(first.stdout)} bytes, identical={same}, "
                          f"exit codes {first.returncode}/{second.returncode}")
    gate(10, "two corpus --run-all --json runs are byte-identical", check)


def test_fallback_and_twist_in_corpus(pipeline):
    # sanity: the cheap branches are not the only ones taken
    certs, _ = pipeline
    tags = {c.case_tag for c in certs.values()}
    assert REMARK4 in tags and SEARCH_FALLBACK in tags
