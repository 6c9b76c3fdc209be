"""Automorphisms as certified permutations of element indices."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .errors import (BadCosetElement, DoesNotGenerate, FactorsDontCommute, FixedSetViolation,
                     NotAHomomorphism, NotAProduct, NotBijective, NotCentralOrderP, NotMaximal)
from .structure import center, is_normal, prime_of_order
from .table import GroupTable, SubgroupRef, generated_subgroup, power, subgroup_as_group


def homomorphism_violation(G: GroupTable, perm) -> tuple[int, int] | None:
    """First pair (x, y) with ``f(xy) != f(x) f(y)``, or None."""
    perm = np.asarray(perm)
    bad = np.nonzero(perm[G.mul] != G.mul[np.ix_(perm, perm)])
    if bad[0].size:
        return int(bad[0][0]), int(bad[1][0])
    return None


@dataclass(frozen=True, eq=False)
class Automorphism:
    group: GroupTable
    perm: tuple[int, ...]

    @classmethod
    def from_perm(cls, G: GroupTable, perm: Sequence[int]) -> "Automorphism":
        """Wrap ``perm`` after checking it is a bijective homomorphism of G."""
        perm = tuple(int(x) for x in perm)
        if len(perm) != G.order or sorted(perm) != list(range(G.order)):
            raise NotBijective("map is not a permutation of the elements")
        if perm[0] != 0:
            raise NotAHomomorphism("identity is not fixed", witness=(0,))
        bad = homomorphism_violation(G, perm)
        if bad is not None:
            x, y = bad
            raise NotAHomomorphism(
                f"f({G.label(x)}*{G.label(y)}) != f({G.label(x)})*f({G.label(y)})", witness=bad)
        return cls(G, perm)

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def __eq__(self, other):
        if not isinstance(other, Automorphism):
            return NotImplemented
        return self.group.digest == other.group.digest and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __lt__(self, other):
        return self.perm < other.perm

    def __repr__(self):
        moved = sum(1 for x, y in enumerate(self.perm) if x != y)
        return f"Automorphism(order={automorphism_order(self)}, moves={moved})"

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self o other``: apply ``other`` first."""
        return Automorphism(self.group, tuple(self.perm[y] for y in other.perm))

    def __pow__(self, k: int) -> "Automorphism":
        p = np.asarray(self.perm)
        if k < 0:
            p = np.argsort(p)
            k = -k
        out = np.arange(len(p))
        while k:
            if k & 1:
                out = p[out]
            p = p[p]
            k >>= 1
        return Automorphism(self.group, tuple(int(x) for x in out))

    def to_json(self) -> dict:
        return {"group": self.group.digest, "perm": list(self.perm)}


def identity_automorphism(G: GroupTable) -> Automorphism:
    return Automorphism(G, tuple(range(G.order)))


def from_generator_images(G: GroupTable, gens: Sequence[int], images: Sequence[int]) -> Automorphism:
    """The automorphism sending ``gens[i]`` to ``images[i]``, if one exists."""
    gens, images = [int(g) for g in gens], [int(h) for h in images]
    if len(gens) != len(images):
        raise ValueError("gens and images differ in length")
    if len(generated_subgroup(G, gens)) != G.order:
        raise DoesNotGenerate("the given elements do not generate the group")
    status, size, out, wx, wi = kernels.extend_map(G.kt, gens, images)
    if status == 1:
        raise NotAHomomorphism(
            f"relation violated: f({G.label(wx)}*{G.label(gens[wi])}) "
            f"!= f({G.label(wx)})*{G.label(images[wi])}", witness=(wx, gens[wi]))
    if status == 2:
        raise NotBijective(f"two elements map to the image of {G.label(wx)}")
    return Automorphism.from_perm(G, out.tolist())


def inner_automorphism(G: GroupTable, g: int) -> Automorphism:
    """Conjugation ``x -> g^-1 x g``."""
    perm = G.mul[G.mul[G.inv[g], :], g]
    return Automorphism(G, tuple(int(x) for x in perm))


def coset_representatives(G: GroupTable, S: SubgroupRef) -> list[int]:
    """Smallest element of each left coset ``gS``."""
    seen = np.zeros(G.order, dtype=bool)
    reps = []
    members = S.sorted()
    for g in range(G.order):
        if not seen[g]:
            reps.append(g)
            seen[G.mul[g, members]] = True
    return reps


def inner_automorphisms(G: GroupTable) -> list[Automorphism]:
    return [inner_automorphism(G, g) for g in coset_representatives(G, center(G))]


def is_inner(G: GroupTable, f: Automorphism) -> tuple[bool, int | None]:
    target = np.asarray(f.perm)
    for g in coset_representatives(G, center(G)):
        if np.array_equal(G.mul[G.mul[G.inv[g], :], g], target):
            return True, g
    return False, None


def automorphism_order(f: Automorphism) -> int:
    perm = f.perm
    seen = [False] * len(perm)
    out = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        out = math.lcm(out, length)
    return out


def fixes_pointwise(f: Automorphism, S) -> bool:
    members = S.members if isinstance(S, SubgroupRef) else S
    return all(f.perm[x] == x for x in members)


def extend_product(G: GroupTable, H: SubgroupRef, K: SubgroupRef, f_H: Automorphism) -> Automorphism:
    """``beta(hk) = f_H(h) k`` on ``G = HK`` with ``[H, K] = 1``.

    ``f_H`` acts on the induced group of H (as built by ``subgroup_as_group``).
    """
    Hg, emb = subgroup_as_group(H)
    if f_H.group != Hg:
        raise ValueError("f_H does not act on the induced group of H")
    hs, ks = H.sorted(), K.sorted()
    mul = G.mul
    if not (mul[np.ix_(hs, ks)] == mul[np.ix_(ks, hs)].T).all():
        raise FactorsDontCommute("some element of H does not commute with K")
    fh = {emb(x): emb(f_H.perm[x]) for x in range(Hg.order)}
    for x in H.members & K.members:
        if fh[x] != x:
            raise FixedSetViolation(f"f_H moves {G.label(x)}, which lies in H and K")
    beta = np.full(G.order, -1, dtype=np.int64)
    for h in hs:
        prod = mul[h, ks]
        vals = mul[fh[h], ks]
        prev = beta[prod]
        clash = (prev >= 0) & (prev != vals)
        if clash.any():
            raise FixedSetViolation(f"beta is not well defined at {G.label(int(prod[clash][0]))}")
        beta[prod] = vals
    if (beta < 0).any():
        raise NotAProduct("HK does not cover G")
    return Automorphism.from_perm(G, beta.tolist())


def remark4_map(G: GroupTable, M: SubgroupRef, g: int, z: int) -> Automorphism:
    """``alpha(m g^i) = m g^i z^i`` for a maximal M, g outside M and central z of order p."""
    p = prime_of_order(G.order)
    if p is None or len(M) * p != G.order or len(generated_subgroup(G, M.members)) != len(M) \
            or not is_normal(G, M):
        raise NotMaximal("M is not a subgroup of index p")
    if g in M:
        raise BadCosetElement(f"{G.label(g)} lies in M")
    if z not in center(G) or G.orders[z] != p:
        raise NotCentralOrderP(f"{G.label(z)} is not central of order {p}")
    mask = M.mask()
    ginv_pows = [power(G, g, -i) for i in range(p)]
    z_pows = [power(G, z, i) for i in range(p)]
    perm = np.empty(G.order, dtype=np.int64)
    for i in range(p):
        in_coset = mask[G.mul[:, ginv_pows[i]]]
        perm[in_coset] = G.mul[np.nonzero(in_coset)[0], z_pows[i]]
    return Automorphism.from_perm(G, perm.tolist())
