"""Explicit finite groups as indexed multiplication tables.

Elements are the integers ``0..order-1`` and the identity is always ``0``.
The commutator convention is fixed here, once, as ``[x, y] = x^-1 y^-1 x y``
(so ``[y, x] = y^-1 x^-1 y x``); every other module calls :func:`commutator`.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (MissingInverse, NoIdentity, NotAPermutationRow, NotAssociative,
                     TableError, TooLarge)

ASSOCIATIVITY_CAP = 256


@dataclass(frozen=True, eq=False)
class GroupTable:
    mul: np.ndarray
    inv: np.ndarray
    labels: tuple[str, ...] | None = None

    identity = 0

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, GroupTable):
            return NotImplemented
        return np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f"GroupTable(order={self.order}, digest={self.digest})"

    @cached_property
    def digest(self) -> str:
        """Short content hash used to tie automorphisms to their group."""
        data = np.ascontiguousarray(self.mul, dtype=np.int32).tobytes()
        return hashlib.sha256(data).hexdigest()[:16]

    @cached_property
    def kt(self):
        return kernels.prepare(self.mul)

    @cached_property
    def orders(self) -> np.ndarray:
        """Element orders, vectorised over the whole table."""
        n = self.order
        idx = np.arange(n)
        out = np.zeros(n, dtype=np.int64)
        cur = idx.copy()
        for k in range(1, n + 1):
            hit = (cur == 0) & (out == 0)
            out[hit] = k
            if out.all():
                break
            cur = self.mul[cur, idx]
        out.setflags(write=False)
        return out

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def elements(self) -> range:
        return range(self.order)


@dataclass(frozen=True, eq=False)
class SubgroupRef:
    parent: GroupTable
    members: frozenset[int]

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __eq__(self, other):
        if isinstance(other, SubgroupRef):
            return self.parent is other.parent and self.members == other.members
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def __le__(self, other):
        return self.members <= other.members

    def __repr__(self):
        return f"SubgroupRef(order={len(self)}, members={sorted(self.members)})"

    @property
    def order(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m


@dataclass(frozen=True)
class Embedding:
    source: GroupTable
    target: GroupTable
    map: tuple[int, ...] = field(repr=False)

    def __call__(self, x: int) -> int:
        return self.map[x]

    def preimage(self) -> dict[int, int]:
        return {y: x for x, y in enumerate(self.map)}


def _freeze(arr):
    arr = np.ascontiguousarray(arr, dtype=np.int32)
    arr.setflags(write=False)
    return arr


def validate_table(raw, labels: Sequence[str] | None = None, *, check_associativity=True) -> GroupTable:
    """Check a candidate Cayley table and return it renumbered with identity 0.

    Tables above 256 elements are only accepted with ``check_associativity``
    off, which is reserved for the verified pc-conversion path.
    """
    try:
        mul = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise TableError(f"table is not a rectangular integer array: {exc}") from None
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise TableError(f"table must be square and non-empty, got shape {mul.shape}")
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise TableError(f"table entries must lie in 0..{n - 1}")
    if labels is not None and len(labels) != n:
        raise TableError(f"{len(labels)} labels given for a table of order {n}")

    idx = np.arange(n)
    ids = np.nonzero((mul == idx[None, :]).all(axis=1) & (mul == idx[:, None]).all(axis=0))[0]
    if ids.size == 0:
        raise NoIdentity("no element acts as a two-sided identity")
    e = int(ids[0])

    for kind, arr in (("row", mul), ("column", mul.T)):
        srt = np.sort(arr, axis=1)
        bad = np.nonzero((srt != idx[None, :]).any(axis=1))[0]
        if bad.size:
            raise NotAPermutationRow(kind, int(bad[0]))

    if e != 0:
        order = [e] + [x for x in range(n) if x != e]
        old_to_new = np.empty(n, dtype=np.int64)
        old_to_new[order] = idx
        mul = old_to_new[mul[np.ix_(order, order)]]
        if labels is not None:
            labels = [labels[x] for x in order]

    right = np.argmax(mul == 0, axis=1)
    inv = right
    bad = np.nonzero(mul[inv, idx] != 0)[0]
    if bad.size:
        raise MissingInverse(int(bad[0]))

    if check_associativity:
        if n > ASSOCIATIVITY_CAP:
            raise TooLarge(f"explicit tables are capped at order {ASSOCIATIVITY_CAP}; "
                           "load larger groups from a presentation")
        trip = kernels.first_nonassociative(mul)
        if trip is not None:
            raise NotAssociative(trip)

    return GroupTable(_freeze(mul), _freeze(inv), tuple(labels) if labels is not None else None)


def element_order(G: GroupTable, x: int) -> int:
    return int(G.orders[x])


def power(G: GroupTable, x: int, k: int) -> int:
    if k < 0:
        x, k = int(G.inv[x]), -k
    result = 0
    base = int(x)
    mul = G.mul
    while k:
        if k & 1:
            result = int(mul[result, base])
        base = int(mul[base, base])
        k >>= 1
    return result


def commutator(G: GroupTable, x: int, y: int) -> int:
    """``[x, y] = x^-1 y^-1 x y``."""
    mul, inv = G.mul, G.inv
    return int(mul[mul[inv[x], inv[y]], mul[x, y]])


def commutator_table(G: GroupTable) -> np.ndarray:
    """All commutators at once: entry ``[x, y]`` at row x, column y."""
    mul, inv = G.mul, G.inv
    return mul[mul[np.ix_(inv, inv)], mul]


def generated_subgroup(G: GroupTable, gens: Iterable[int]) -> SubgroupRef:
    gens = sorted({int(g) for g in gens})
    if not gens:
        return SubgroupRef(G, frozenset([0]))
    _, _, out, _, _ = kernels.extend_map(G.kt, gens, gens)
    return SubgroupRef(G, frozenset(np.nonzero(out >= 0)[0].tolist()))


def subgroup(G: GroupTable, members: Iterable[int]) -> SubgroupRef:
    """Wrap a member set, checking closure."""
    S = SubgroupRef(G, frozenset(int(x) for x in members))
    if generated_subgroup(G, S.members) != S:
        raise TableError("member set is not a subgroup")
    return S


def whole(G: GroupTable) -> SubgroupRef:
    return SubgroupRef(G, frozenset(range(G.order)))


def subgroup_as_group(S: SubgroupRef) -> tuple[GroupTable, Embedding]:
    G = S.parent
    members = S.sorted()
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[members] = np.arange(len(members))
    mul = pos[G.mul[np.ix_(members, members)]]
    labels = tuple(G.label(x) for x in members) if G.labels else None
    H = validate_table(mul, labels, check_associativity=False)
    return H, Embedding(H, G, tuple(members))


def centralizer(G: GroupTable, S: Iterable[int]) -> SubgroupRef:
    S = list({int(s) for s in S})
    if not S:
        return whole(G)
    mul = G.mul
    ok = (mul[:, S] == mul[S, :].T).all(axis=1)
    return SubgroupRef(G, frozenset(np.nonzero(ok)[0].tolist()))


def relabel(G: GroupTable, perm: Sequence[int]) -> GroupTable:
    """Isomorphic copy in which old element x gets index ``perm[x]`` (``perm[0]`` must be 0)."""
    perm = np.asarray(perm, dtype=np.int64)
    n = G.order
    mul = np.empty((n, n), dtype=np.int64)
    mul[np.ix_(perm, perm)] = perm[G.mul]
    return validate_table(mul, check_associativity=n <= ASSOCIATIVITY_CAP)


# Cayley-table JSON files: {"order": n, "labels": [...], "table": [[...], ...]}

def table_to_json(G: GroupTable) -> dict:
    return {
        "order": G.order,
        "labels": list(G.labels) if G.labels else [str(x) for x in range(G.order)],
        "table": G.mul.tolist(),
    }


def table_from_json(data: dict) -> GroupTable:
    if not isinstance(data, dict) or "table" not in data:
        raise TableError('Cayley file must be an object with a "table" key')
    table = data["table"]
    if "order" in data and data["order"] != len(table):
        raise TableError(f'"order" is {data["order"]} but the table has {len(table)} rows')
    return validate_table(table, data.get("labels"))


def load_cayley(path) -> GroupTable:
    with open(path) as fh:
        return table_from_json(json.load(fh))


def save_cayley(G: GroupTable, path) -> None:
    with open(path, "w") as fh:
        json.dump(table_to_json(G), fh)
        fh.write("\n")
