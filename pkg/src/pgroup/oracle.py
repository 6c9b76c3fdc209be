"""Brute-force oracles: Aut(G) enumeration and independent cross-checks."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

import numpy as np

from . import kernels
from .automorphism import (Automorphism, automorphism_order, fixes_pointwise,
                           inner_automorphisms)
from .errors import BudgetExhausted, IncompleteEnumeration, TheoremViolation
from .structure import frattini, omega1_center
from .table import GroupTable, generated_subgroup

DEFAULT_BUDGET = 10_000_000


def default_budget() -> int:
    return int(os.environ.get("PGROUP_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class AutEnumeration:
    group: GroupTable
    generating_set: tuple[int, ...]
    automorphisms: tuple[Automorphism, ...]
    complete: bool
    nodes: int

    def __len__(self):
        return len(self.automorphisms)

    def __contains__(self, f):
        perm = f.perm if isinstance(f, Automorphism) else tuple(f)
        return perm in self._perms

    @property
    def _perms(self):
        return {f.perm for f in self.automorphisms}


def burnside_generators(G: GroupTable, p: int) -> tuple[int, ...]:
    """Lexicographically least generating tuple of minimal size.

    Greedily takes the smallest element outside the span of the previous
    picks and Phi(G); by the Burnside basis theorem the result is minimal.
    """
    F = frattini(G, p)
    picked: list[int] = []
    span = F
    while len(span) < G.order:
        x = next(x for x in range(G.order) if x not in span)
        picked.append(x)
        span = generated_subgroup(G, span.members | {x})
    return tuple(picked)


def _frattini_labels(G, F):
    label = np.full(G.order, -1, dtype=np.int64)
    members = F.sorted()
    for x in range(G.order):
        if label[x] < 0:
            label[G.mul[x, members]] = x
    return label


def enumerate_automorphisms(G: GroupTable, budget: int | None = None, p: int | None = None) -> AutEnumeration:
    """All automorphisms by backtracking over images of a Burnside basis.

    Images must match element orders, stay independent modulo Phi(G), and
    extend to an injective homomorphism on the subgroup generated so far.
    """
    from .structure import require_p_group
    budget = default_budget() if budget is None else budget
    p = require_p_group(G, p)
    gens = burnside_generators(G, p)
    n = G.order
    label = _frattini_labels(G, frattini(G, p))
    in_phi = label == 0
    orders = G.orders
    cands = [[y for y in range(n) if orders[y] == orders[g] and not in_phi[y]] for g in gens]
    kt = G.kt
    found: list[tuple[int, ...]] = []
    nodes = 0
    exhausted = False

    def search(level, imgs, image_labels):
        nonlocal nodes, exhausted
        for h in cands[level]:
            if nodes >= budget:
                exhausted = True
                return
            nodes += 1
            if label[h] in image_labels:
                continue
            trial = imgs + [h]
            status, size, out, _, _ = kernels.extend_map(kt, gens[:level + 1], trial)
            if status:
                continue
            if level + 1 == len(gens):
                if size == n:
                    found.append(tuple(out.tolist()))
            else:
                image = out[out >= 0]
                search(level + 1, trial, set(label[image].tolist()))
            if exhausted:
                return

    if gens:
        search(0, [], {0})
    else:
        found.append((0,))
    auts = tuple(Automorphism.from_perm(G, perm) for perm in sorted(found))
    return AutEnumeration(G, gens, auts, not exhausted, nodes)


def theorem_predicate(G: GroupTable, p: int, f: Automorphism, inner_perms=None,
                      phi=None, omega=None) -> bool:
    """Noninner, of order exactly p, fixing Phi(G) or Omega_1(Z(G)) pointwise."""
    if inner_perms is None:
        inner_perms = {a.perm for a in inner_automorphisms(G)}
    phi = frattini(G, p) if phi is None else phi
    omega = omega1_center(G, p) if omega is None else omega
    return (f.perm not in inner_perms and automorphism_order(f) == p
            and (fixes_pointwise(f, phi) or fixes_pointwise(f, omega)))


def theorem_witnesses(G: GroupTable, p: int, enumeration: AutEnumeration | None = None) -> list[Automorphism]:
    enumeration = enumerate_automorphisms(G, p=p) if enumeration is None else enumeration
    if not enumeration.complete:
        raise IncompleteEnumeration(f"enumeration stopped after {enumeration.nodes} nodes")
    inner = {a.perm for a in inner_automorphisms(G)}
    phi, omega = frattini(G, p), omega1_center(G, p)
    return [f for f in enumeration.automorphisms
            if theorem_predicate(G, p, f, inner, phi, omega)]


def search_fallback(G: GroupTable, p: int, enumeration: AutEnumeration | None = None) -> Automorphism:
    """Least witness in lexicographic order of permutations."""
    enumeration = enumerate_automorphisms(G, p=p) if enumeration is None else enumeration
    if not enumeration.complete:
        raise BudgetExhausted(enumeration.nodes, enumeration)
    witnesses = theorem_witnesses(G, p, enumeration)
    if not witnesses:
        raise TheoremViolation("no noninner automorphism of order p fixes Phi(G) or Omega_1(Z(G))")
    return min(witnesses)


def oracle_report(name: str, G: GroupTable, p: int, enumeration: AutEnumeration | None = None) -> dict:
    enumeration = enumerate_automorphisms(G, p=p) if enumeration is None else enumeration
    witnesses = theorem_witnesses(G, p, enumeration) if enumeration.complete else []
    return {
        "group": name,
        "aut_count": len(enumeration),
        "inn_count": len(inner_automorphisms(G)),
        "witness_count": len(witnesses),
        "least_witness_perm": list(min(witnesses).perm) if witnesses else None,
        "complete": enumeration.complete,
    }


# independent cross-checks, deliberately free of the production shortcuts

def _closure(G, gens):
    mul = G.mul
    seen = {0}
    frontier = [0]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(mul[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def minimal_generating_size(G: GroupTable) -> int:
    if G.order == 1:
        return 0
    everything = range(G.order)
    for k in itertools.count(1):
        if any(len(_closure(G, S)) == G.order for S in itertools.combinations(everything, k)):
            return k


def frattini_by_nongenerators(G: GroupTable) -> frozenset[int]:
    """Phi(G) as the set of non-generators.

    x is a non-generator iff no subset S of size d-1 (d the minimal number
    of generators) has ``<S> != G`` but ``<S, x> = G``.
    """
    n = G.order
    d = minimal_generating_size(G)
    generators_of_something = set()
    seen_subgroups = set()
    for S in itertools.combinations(range(n), max(d - 1, 0)):
        U = _closure(G, S)
        if len(U) == n or U in seen_subgroups:
            continue
        seen_subgroups.add(U)
        for x in range(n):
            if x not in U and x not in generators_of_something:
                if len(_closure(G, set(U) | {x})) == n:
                    generators_of_something.add(x)
    return frozenset(x for x in range(n) if x not in generators_of_something)


def find_isomorphism(G: GroupTable, H: GroupTable) -> tuple[int, ...] | None:
    """An isomorphism G -> H as an index map, by backtracking over generator images."""
    if G.order != H.order:
        return None
    gens: list[int] = []
    span = frozenset([0])
    while len(span) < G.order:
        x = next(x for x in range(G.order) if x not in span)
        gens.append(x)
        span = _closure(G, gens)
    cands = [[y for y in range(H.order) if H.orders[y] == G.orders[g]] for g in gens]
    for imgs in itertools.product(*cands):
        out = _extend_between(G, H, gens, imgs)
        if out is not None:
            return out
    return None


def _extend_between(G, H, gens, imgs):
    out = {0: 0}
    used = {0}
    queue = [0]
    for x in queue:
        for g, h in zip(gens, imgs):
            y = int(G.mul[x, g])
            fy = int(H.mul[out[x], h])
            if y not in out:
                if fy in used:
                    return None
                out[y] = fy
                used.add(fy)
                queue.append(y)
            elif out[y] != fy:
                return None
    if len(out) != G.order:
        return None
    return tuple(out[x] for x in range(G.order))
