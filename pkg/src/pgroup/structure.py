"""Structural invariants of finite p-groups given by tables."""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (DecompositionFailed, DerivedNotCyclic, NonAbelianRequired, NotNormal,
                     NotPGroup)
from .table import (GroupTable, SubgroupRef, centralizer, commutator, commutator_table,
                    generated_subgroup, power, subgroup_as_group, whole)


def prime_of_order(n: int) -> int | None:
    """The prime p with n = p^k, or None (trial division)."""
    if n == 1:
        return None
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return p if n == 1 else None


def log_p(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def center(G: GroupTable) -> SubgroupRef:
    mul = G.mul
    ok = (mul == mul.T).all(axis=1)
    return SubgroupRef(G, frozenset(np.nonzero(ok)[0].tolist()))


def derived_subgroup(G: GroupTable) -> SubgroupRef:
    return generated_subgroup(G, np.unique(commutator_table(G)).tolist())


def commutator_subgroup(G: GroupTable, A, B) -> SubgroupRef:
    """``[A, B]``, generated by commutators of members of A and B."""
    A, B = sorted(A), sorted(B)
    comms = commutator_table(G)[np.ix_(A, B)]
    return generated_subgroup(G, np.unique(comms).tolist())


def lower_central_series(G: GroupTable) -> list[SubgroupRef]:
    series = [whole(G)]
    everything = range(G.order)
    while True:
        nxt = commutator_subgroup(G, series[-1], everything)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def nilpotency_class(G: GroupTable) -> int:
    """Length of the lower central series; raises NotPGroup if it stalls above 1."""
    series = lower_central_series(G)
    if len(series[-1]) != 1:
        raise NotPGroup("group is not nilpotent")
    return len(series) - 1


def agemo1(G: GroupTable, p: int) -> SubgroupRef:
    """``G^p``, generated by all p-th powers."""
    pw = np.arange(G.order)
    for _ in range(p - 1):
        pw = G.mul[pw, np.arange(G.order)]
    return generated_subgroup(G, np.unique(pw).tolist())


def frattini(G: GroupTable, p: int) -> SubgroupRef:
    """``Phi(G) = G' G^p`` for a finite p-group."""
    return generated_subgroup(G, derived_subgroup(G).members | agemo1(G, p).members)


def omega1_center(G: GroupTable, p: int) -> SubgroupRef:
    Z = center(G)
    return SubgroupRef(G, frozenset(z for z in Z.members if p % G.orders[z] == 0))


def is_cyclic(S: SubgroupRef) -> tuple[bool, int | None]:
    """Whether S is cyclic, with the smallest generating member as witness."""
    orders = S.parent.orders
    for x in S.sorted():
        if orders[x] == len(S):
            return True, x
    return False, None


def is_normal(G: GroupTable, S: SubgroupRef) -> bool:
    members = S.sorted()
    conj = G.mul[G.mul[np.ix_(G.inv, members)], np.arange(G.order)[:, None]]
    return bool(S.mask()[conj].all())


def quotient_exponent_mod(G: GroupTable, S: SubgroupRef) -> int:
    """Least k with ``x^k`` in S for every x."""
    if not is_normal(G, S):
        raise NotNormal("subgroup is not normal")
    mask = S.mask()
    idx = np.arange(G.order)
    cur = idx.copy()
    k = 1
    while not mask[cur].all():
        cur = G.mul[cur, idx]
        k += 1
    return k


def ds_condition(G: GroupTable, p: int) -> bool:
    """Whether ``C_G(Z(Phi(G))) = Phi(G)``."""
    F = frattini(G, p)
    FG, emb = subgroup_as_group(F)
    zf = [emb(x) for x in center(FG).members]
    return centralizer(G, zf) == F


def find_commutator_generators(G: GroupTable) -> tuple[int, int]:
    """Lexicographically smallest ``(a, b)`` with ``<[a, b]> = G'``."""
    D = derived_subgroup(G)
    if len(D) == 1:
        raise NonAbelianRequired("group is abelian")
    cyc, _ = is_cyclic(D)
    if not cyc:
        raise DerivedNotCyclic(f"derived subgroup of order {len(D)} is not cyclic")
    corder = G.orders[commutator_table(G)]
    hits = np.argwhere(corder == len(D))
    a, b = hits[0]
    return int(a), int(b)


def decompose_hk(G: GroupTable, a: int, b: int) -> tuple[SubgroupRef, SubgroupRef]:
    """``H = <a, b>`` and ``K = C_G(H)``, checked to satisfy ``G = HK``."""
    H = generated_subgroup(G, [a, b])
    K = centralizer(G, [a, b])
    inter = len(H.members & K.members)
    if len(H) * len(K) != G.order * inter:
        raise DecompositionFailed(f"|H||K|/|H n K| = {len(H) * len(K) // inter} != |G| = {G.order}")
    products = np.unique(G.mul[np.ix_(H.sorted(), K.sorted())])
    if products.size != G.order:
        raise DecompositionFailed("product set HK misses elements of G")
    return H, K


@dataclass(frozen=True)
class GroupProfile:
    prime: int
    order: int
    nilpotency_class: int
    derived: SubgroupRef
    center: SubgroupRef
    frattini: SubgroupRef
    omega1_center: SubgroupRef
    center_cyclic: bool
    derived_cyclic: bool
    n: int | None
    quotient_exponent: int
    ds_condition: bool
    commutator_pair: tuple[int, int] | None

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "order": self.order,
            "nilpotency_class": self.nilpotency_class,
            "center_cyclic": self.center_cyclic,
            "derived_cyclic": self.derived_cyclic,
            "n": self.n,
            "quotient_exponent": self.quotient_exponent,
            "ds_condition": self.ds_condition,
            "commutator_pair": list(self.commutator_pair) if self.commutator_pair else None,
            "derived": self.derived.sorted(),
            "center": self.center.sorted(),
            "frattini": self.frattini.sorted(),
            "omega1_center": self.omega1_center.sorted(),
        }


def require_p_group(G: GroupTable, p: int | None = None) -> int:
    q = prime_of_order(G.order)
    if q is None or (p is not None and p != q):
        raise NotPGroup(f"order {G.order} is not a power of {p if p else 'a prime'}")
    return q


def profile(G: GroupTable, p: int | None = None) -> GroupProfile:
    p = require_p_group(G, p)
    D = derived_subgroup(G)
    Z = center(G)
    dcyc, _ = is_cyclic(D)
    pair = None
    if dcyc and len(D) > 1:
        pair = find_commutator_generators(G)
    return GroupProfile(
        prime=p,
        order=G.order,
        nilpotency_class=nilpotency_class(G),
        derived=D,
        center=Z,
        frattini=frattini(G, p),
        omega1_center=omega1_center(G, p),
        center_cyclic=is_cyclic(Z)[0],
        derived_cyclic=dcyc,
        n=log_p(len(D), p) if dcyc else None,
        quotient_exponent=quotient_exponent_mod(G, Z),
        ds_condition=ds_condition(G, p),
        commutator_pair=pair,
    )


def subgroup_product(G: GroupTable, A: SubgroupRef, B: SubgroupRef) -> frozenset[int]:
    return frozenset(np.unique(G.mul[np.ix_(A.sorted(), B.sorted())]).tolist())


def intersection(A: SubgroupRef, B: SubgroupRef) -> SubgroupRef:
    return SubgroupRef(A.parent, A.members & B.members)


def join(G: GroupTable, *subs) -> SubgroupRef:
    return generated_subgroup(G, reduce(frozenset.union, (S.members for S in subs), frozenset()))


__all__ = [
    "GroupProfile", "agemo1", "center", "commutator", "commutator_subgroup", "decompose_hk",
    "derived_subgroup", "ds_condition", "find_commutator_generators", "frattini", "is_cyclic",
    "is_normal", "lower_central_series", "nilpotency_class", "omega1_center", "power",
    "profile", "quotient_exponent_mod", "require_p_group",
]
