"""Class-2 polycyclic presentations: parsing, collection, and table conversion.

Text format (statements end at a newline or ``;``, ``#`` starts a comment)::

    p=2
    gen a:4, b:4, z:4
    pow a^4 = z^2
    comm [b,a] = z
    central z

``gen`` fixes the generator order ``g_1, ..., g_m`` and each relative order
``o_i`` (a power of p).  ``pow g^o = w`` gives ``g^o`` as a word in later
generators; ``comm [h,g] = w`` (h after g) gives ``[h, g] = h^-1 g^-1 h g``
as a word in central generators later than h.  Words are products of
``name`` or ``name^k`` factors in generator order, joined by ``*`` or
spaces, with ``0 < k < o``; ``1`` is the empty word.  Relations that are
omitted are trivial.

Elements are exponent vectors ``(e_1, ..., e_m)`` standing for
``g_1^e_1 ... g_m^e_m`` with ``0 <= e_i < o_i``.  When a presentation is
converted to a table, the vector gets the mixed-radix index
``e_1 + o_1*(e_2 + o_2*(...))``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import kernels
from .errors import (BadRelativeOrder, InconsistentPresentation, NonCentralCommutator,
                     PresentationSyntaxError, TooLarge)
from .table import ASSOCIATIVITY_CAP, GroupTable, validate_table

MAX_ORDER = 4096
SAMPLED_PAIRS = 4096

ExponentVector = tuple


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _is_power_of(n, p):
    if n < p:
        return False
    while n % p == 0:
        n //= p
    return n == 1


@dataclass(frozen=True)
class PcPresentation:
    prime: int
    generators: tuple[str, ...]
    relative_orders: tuple[int, ...]
    power_relations: tuple[ExponentVector, ...]
    commutator_relations: tuple[tuple[int, int, ExponentVector], ...]
    central: tuple[bool, ...]

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def order(self) -> int:
        out = 1
        for o in self.relative_orders:
            out *= o
        return out

    @property
    def identity(self) -> ExponentVector:
        return (0,) * self.rank

    def generator(self, i: int) -> ExponentVector:
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)

    def comm_word(self, j: int, i: int) -> ExponentVector:
        for jj, ii, w in self.commutator_relations:
            if (jj, ii) == (j, i):
                return w
        return self.identity

    @cached_property
    def collector(self):
        m = self.rank
        comm = np.zeros((m, m, m), dtype=np.int64)
        for j, i, w in self.commutator_relations:
            comm[j, i] = w
        pw = np.array(self.power_relations, dtype=np.int64).reshape(m, m)
        return kernels.Collector(self.relative_orders, pw, comm, self.central)

    @cached_property
    def _radix(self) -> tuple[int, ...]:
        out, r = [], 1
        for o in self.relative_orders:
            out.append(r)
            r *= o
        return tuple(out)

    def index(self, v: ExponentVector) -> int:
        return sum(e * r for e, r in zip(v, self._radix))

    def vector(self, index: int) -> ExponentVector:
        out = []
        for o in self.relative_orders:
            index, e = divmod(index, o)
            out.append(e)
        return tuple(out)

    def word_label(self, v: ExponentVector) -> str:
        parts = [g if e == 1 else f"{g}^{e}" for g, e in zip(self.generators, v) if e]
        return "*".join(parts) if parts else "1"

    def check_vector(self, v) -> ExponentVector:
        v = tuple(int(e) for e in v)
        if len(v) != self.rank or any(not 0 <= e < o for e, o in zip(v, self.relative_orders)):
            raise ValueError(f"{v} is not a normal-form exponent vector for this presentation")
        return v


# parsing

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_RE_P = re.compile(r"p\s*=\s*(\d+)$")
_RE_GEN_ITEM = re.compile(rf"({_NAME})\s*:\s*(\d+)$")
_RE_POW = re.compile(rf"pow\s+({_NAME})\s*\^\s*(\d+)\s*=\s*(.+)$")
_RE_COMM = re.compile(rf"comm\s*\[\s*({_NAME})\s*,\s*({_NAME})\s*\]\s*=\s*(.+)$")
_RE_FACTOR = re.compile(rf"({_NAME})(?:\s*\^\s*(\d+))?")


def _statements(text):
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0]
        col = 0
        for chunk in line.split(";"):
            stripped = chunk.strip()
            if stripped:
                yield lineno, col + 1 + (len(chunk) - len(chunk.lstrip())), stripped
            col += len(chunk) + 1


def _parse_word(src, names, orders, line, col):
    src = src.strip()
    m = len(names)
    vec = [0] * m
    if src == "1":
        return vec
    pos, last = 0, -1
    while pos < len(src):
        while pos < len(src) and src[pos] in " \t*":
            pos += 1
        if pos >= len(src):
            break
        mt = _RE_FACTOR.match(src, pos)
        if not mt:
            raise PresentationSyntaxError(f"cannot parse word {src!r}", line, col + pos)
        name, exp = mt.group(1), int(mt.group(2) or 1)
        if name not in names:
            raise PresentationSyntaxError(f"unknown generator {name!r}", line, col + pos)
        g = names[name]
        if g <= last:
            raise PresentationSyntaxError(
                f"word {src!r} is not in normal-form generator order", line, col + pos)
        if not 0 < exp < orders[g]:
            raise PresentationSyntaxError(
                f"exponent of {name} must lie in 1..{orders[g] - 1}", line, col + pos)
        vec[g] = exp
        last = g
        pos = mt.end()
    return vec


def parse_presentation(text: str) -> PcPresentation:
    prime = None
    gens: list[tuple[str, int, int, int]] = []
    pending = []
    for line, col, stmt in _statements(text):
        head = stmt.split(None, 1)[0] if stmt else ""
        if stmt.startswith("p") and _RE_P.match(stmt.replace(" ", "")):
            prime = int(_RE_P.match(stmt.replace(" ", "")).group(1))
        elif head == "gen":
            for item in stmt[3:].split(","):
                mt = _RE_GEN_ITEM.match(item.strip())
                if not mt:
                    raise PresentationSyntaxError(f"bad generator declaration {item.strip()!r}",
                                                  line, col)
                gens.append((mt.group(1), int(mt.group(2)), line, col))
        elif head in ("pow", "central") or stmt.startswith("comm"):
            pending.append((line, col, stmt))
        else:
            raise PresentationSyntaxError(f"unrecognised statement {stmt!r}", line, col)

    if prime is None:
        raise PresentationSyntaxError("missing 'p=<prime>' statement")
    if not _is_prime(prime):
        raise PresentationSyntaxError(f"p={prime} is not prime")
    if not gens:
        raise PresentationSyntaxError("no generators declared")
    names: dict[str, int] = {}
    orders = []
    for name, o, line, col in gens:
        if name in names:
            raise PresentationSyntaxError(f"generator {name!r} declared twice", line, col)
        if not _is_power_of(o, prime):
            raise BadRelativeOrder(f"relative order {o} of {name} is not a power of {prime}")
        names[name] = len(orders)
        orders.append(o)
    m = len(orders)

    central = [False] * m
    for line, col, stmt in pending:
        if stmt.split(None, 1)[0] == "central":
            for name in stmt[len("central"):].split(","):
                name = name.strip()
                if name not in names:
                    raise PresentationSyntaxError(f"unknown generator {name!r}", line, col)
                central[names[name]] = True

    powers = [[0] * m for _ in range(m)]
    seen_pow, comms = set(), {}
    for line, col, stmt in pending:
        if stmt.startswith("pow"):
            mt = _RE_POW.match(stmt)
            if not mt:
                raise PresentationSyntaxError(f"bad power relation {stmt!r}", line, col)
            name, exp, rhs = mt.group(1), int(mt.group(2)), mt.group(3)
            if name not in names:
                raise PresentationSyntaxError(f"unknown generator {name!r}", line, col)
            g = names[name]
            if exp != orders[g]:
                raise PresentationSyntaxError(
                    f"power relation for {name} must use its relative order {orders[g]}",
                    line, col)
            if g in seen_pow:
                raise PresentationSyntaxError(f"second power relation for {name}", line, col)
            seen_pow.add(g)
            word = _parse_word(rhs, names, orders, line, col + mt.start(3))
            if any(word[k] for k in range(g + 1)):
                raise PresentationSyntaxError(
                    f"{name}^{exp} must be a word in generators after {name}", line, col)
            if central[g] and any(word[k] and not central[k] for k in range(m)):
                raise NonCentralCommutator(
                    f"power of central generator {name} is a non-central word")
            powers[g] = word
        elif stmt.startswith("comm"):
            mt = _RE_COMM.match(stmt)
            if not mt:
                raise PresentationSyntaxError(f"bad commutator relation {stmt!r}", line, col)
            hn, gn, rhs = mt.groups()
            for nm in (hn, gn):
                if nm not in names:
                    raise PresentationSyntaxError(f"unknown generator {nm!r}", line, col)
            h, g = names[hn], names[gn]
            if h <= g:
                raise PresentationSyntaxError(
                    f"write commutators as [later,earlier]; got [{hn},{gn}]", line, col)
            if (h, g) in comms:
                raise PresentationSyntaxError(f"second relation for [{hn},{gn}]", line, col)
            word = _parse_word(rhs, names, orders, line, col + mt.start(3))
            noncentral = [k for k in range(m) if word[k] and not central[k]]
            if noncentral:
                raise NonCentralCommutator(
                    f"[{hn},{gn}] involves non-central generator {list(names)[noncentral[0]]!r}; "
                    "class-2 presentations need central commutator values")
            if any(word) and (central[h] or central[g]):
                raise NonCentralCommutator(
                    f"[{hn},{gn}] is non-trivial but involves a declared-central generator")
            if any(word[k] for k in range(h + 1)):
                raise PresentationSyntaxError(
                    f"[{hn},{gn}] must be a word in generators after {hn}", line, col)
            if any(word):
                comms[(h, g)] = tuple(word)

    return PcPresentation(
        prime=prime,
        generators=tuple(names),
        relative_orders=tuple(orders),
        power_relations=tuple(tuple(w) for w in powers),
        commutator_relations=tuple((h, g, w) for (h, g), w in sorted(comms.items())),
        central=tuple(central),
    )


def format_presentation(P: PcPresentation) -> str:
    """Inverse of :func:`parse_presentation` (trivial relations are omitted)."""
    lines = [f"p={P.prime}",
             "gen " + ", ".join(f"{g}:{o}" for g, o in zip(P.generators, P.relative_orders))]
    for g, (name, o, w) in enumerate(zip(P.generators, P.relative_orders, P.power_relations)):
        if any(w):
            lines.append(f"pow {name}^{o} = {_format_word(P, w)}")
    for h, g, w in P.commutator_relations:
        lines.append(f"comm [{P.generators[h]},{P.generators[g]}] = {_format_word(P, w)}")
    cen = [name for name, c in zip(P.generators, P.central) if c]
    if cen:
        lines.append("central " + ", ".join(cen))
    return "\n".join(lines) + "\n"


def _format_word(P, w):
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in zip(P.generators, w) if e) or "1"


def load_presentation(path) -> PcPresentation:
    with open(path) as fh:
        return parse_presentation(fh.read())


# collection

def collect_product(P: PcPresentation, u, v) -> ExponentVector:
    return P.collector.product(P.check_vector(u), P.check_vector(v))


def collect_inverse(P: PcPresentation, u) -> ExponentVector:
    return P.collector.inverse(P.check_vector(u))


def collect_power(P: PcPresentation, u, k: int) -> ExponentVector:
    """``u^k`` by binary exponentiation; negative k uses the inverse."""
    u = P.check_vector(u)
    if k < 0:
        u, k = P.collector.inverse(u), -k
    prod = P.collector.product
    result = P.identity
    while k:
        if k & 1:
            result = prod(result, u)
        u = prod(u, u)
        k >>= 1
    return result


def collect_commutator(P: PcPresentation, u, v) -> ExponentVector:
    """``[u, v] = u^-1 v^-1 u v``."""
    c = P.collector
    u, v = P.check_vector(u), P.check_vector(v)
    return c.product(c.product(c.inverse(u), c.inverse(v)), c.product(u, v))


def vector_order(P: PcPresentation, u) -> int:
    u = P.check_vector(u)
    k, cur = 1, u
    while cur != P.identity:
        cur = P.collector.product(cur, u)
        k += 1
    return k


def class2_power(P: PcPresentation, u, v, k: int) -> ExponentVector:
    """Closed form ``u^k v^k [v,u]^(k(k-1)/2)`` for ``(uv)^k`` in class 2.

    The binomial is formed as an exact integer and only then reduced modulo
    the order of ``[v, u]``.
    """
    c = collect_commutator(P, v, u)
    e = (k * (k - 1) // 2) % vector_order(P, c)
    prod = P.collector.product
    return prod(prod(collect_power(P, u, k), collect_power(P, v, k)), collect_power(P, c, e))


# consistency and conversion

@dataclass(frozen=True)
class ConsistencyReport:
    order: int
    method: str
    pairs_checked: int


def _right_multiplications(P):
    n = P.order
    prod = P.collector.product
    vecs = [P.vector(x) for x in range(n)]
    out = np.empty((P.rank, n), dtype=np.int64)
    for g in range(P.rank):
        gen = P.generator(g)
        out[g] = [P.index(prod(v, gen)) for v in vecs]
    return out, vecs


def _table_from_generators(P, right):
    n = P.order
    table = np.full((n, n), -1, dtype=np.int64)
    table[:, 0] = np.arange(n)
    frontier = [0]
    while frontier:
        nxt = []
        for y in frontier:
            for g in range(P.rank):
                z = int(right[g, y])
                if table[0, z] < 0:
                    table[:, z] = right[g][table[:, y]]
                    nxt.append(z)
        frontier = nxt
    return table


@lru_cache(maxsize=64)
def _verified(P: PcPresentation):
    n = P.order
    if n > MAX_ORDER:
        raise TooLarge(f"presentation order {n} exceeds {MAX_ORDER}")
    right, vecs = _right_multiplications(P)
    for g in range(P.rank):
        if len(np.unique(right[g])) != n:
            x = int(np.nonzero(np.bincount(right[g], minlength=n) != 1)[0][0])
            raise InconsistentPresentation(
                f"right multiplication by {P.generators[g]} is not a bijection",
                witness=(P.vector(x), P.generators[g]))
    table = _table_from_generators(P, right)
    if (table[0] < 0).any():
        raise InconsistentPresentation("generators do not reach every normal form")

    # (xy)g == x(yg) for generators g makes the table associative
    for g in range(P.rank):
        lhs = right[g][table]
        rhs = table[:, right[g]]
        bad = np.nonzero(lhs != rhs)
        if bad[0].size:
            x, y = int(bad[0][0]), int(bad[1][0])
            raise InconsistentPresentation(
                "collection is not associative",
                witness=(vecs[x], vecs[y], P.generator(g)))

    gidx = [P.index(P.generator(g)) for g in range(P.rank)]
    inv = np.argmax(table == 0, axis=1)
    for h in range(P.rank):
        for g in range(h):
            a, b = gidx[h], gidx[g]
            comm = table[table[inv[a], inv[b]], table[a, b]]
            if comm != P.index(P.comm_word(h, g)):
                raise InconsistentPresentation(
                    f"[{P.generators[h]},{P.generators[g]}] does not collect to its relation",
                    witness=(P.generator(h), P.generator(g)))
    for g in range(P.rank):
        x = 0
        for _ in range(P.relative_orders[g]):
            x = table[x, gidx[g]]
        if x != P.index(P.power_relations[g]):
            raise InconsistentPresentation(
                f"power relation of {P.generators[g]} does not hold",
                witness=(P.generator(g),))

    if n <= ASSOCIATIVITY_CAP:
        prod = P.collector.product
        full = np.array([[P.index(prod(u, v)) for v in vecs] for u in vecs], dtype=np.int64)
        bad = np.nonzero(full != table)
        if bad[0].size:
            x, y = int(bad[0][0]), int(bad[1][0])
            raise InconsistentPresentation("collected product disagrees with the table",
                                           witness=(vecs[x], vecs[y]))
        G = validate_table(table, [P.word_label(v) for v in vecs])
        report = ConsistencyReport(n, "full-table", n * n)
    else:
        rng = np.random.default_rng(n)
        prod = P.collector.product
        for x, y in rng.integers(0, n, size=(SAMPLED_PAIRS, 2)):
            if P.index(prod(vecs[x], vecs[y])) != table[x, y]:
                raise InconsistentPresentation("collected product disagrees with the table",
                                               witness=(vecs[x], vecs[y]))
        G = validate_table(table, [P.word_label(v) for v in vecs], check_associativity=False)
        report = ConsistencyReport(n, "generator-associativity", SAMPLED_PAIRS)
    return G, tuple(vecs), report


def check_consistency(P: PcPresentation) -> ConsistencyReport:
    return _verified(P)[2]


def to_cayley(P: PcPresentation) -> tuple[GroupTable, tuple[ExponentVector, ...]]:
    G, vecs, _ = _verified(P)
    return G, vecs
