"""Pure-Python implementations of the hot kernels.

Each function here has a compiled twin in ``_ckernels.pyx`` with the same
signature and results; ``pgroup.kernels`` picks one at import time.
"""
import numpy as np

NAME = "python"


def prepare(mul):
    """Kernel-side view of a multiplication table."""
    return mul.tolist()


def extend_map(kt, gens, imgs):
    """Breadth-first extension of ``gens[i] -> imgs[i]`` to ``<gens>``.

    Every edge ``x -> x*gens[i]`` of the Cayley graph of ``<gens>`` is checked
    against ``f(x)*imgs[i]``, so a status of 0 means the map is a well-defined
    injective homomorphism on the subgroup generated by ``gens``.

    Returns ``(status, size, out, wx, wi)``: status 0 ok, 1 an edge conflict
    at ``(wx, wi)``, 2 an injectivity conflict at element ``wx``.
    ``out[x]`` is -1 for elements outside the subgroup.
    """
    n = len(kt)
    out = [-1] * n
    used = [False] * n
    out[0] = 0
    used[0] = True
    queue = [0]
    k = len(gens)
    for x in queue:
        row = kt[x]
        frow = kt[out[x]]
        for i in range(k):
            y = row[gens[i]]
            fy = frow[imgs[i]]
            cur = out[y]
            if cur < 0:
                if used[fy]:
                    return 2, len(queue), np.asarray(out, dtype=np.int32), y, i
                out[y] = fy
                used[fy] = True
                queue.append(y)
            elif cur != fy:
                return 1, len(queue), np.asarray(out, dtype=np.int32), x, i
    return 0, len(queue), np.asarray(out, dtype=np.int32), -1, -1


def first_nonassociative(mul):
    """Lexicographically first ``(x, y, z)`` with ``(xy)z != x(yz)``, or None."""
    mul = np.asarray(mul)
    for x in range(mul.shape[0]):
        lhs = mul[mul[x]]
        rhs = mul[x][mul]
        bad = np.nonzero(lhs != rhs)
        if bad[0].size:
            return x, int(bad[0][0]), int(bad[1][0])
    return None


def _sparse(word):
    return tuple((g, int(f)) for g, f in enumerate(word) if f)


class Collector:
    """Normal-form multiplication for a class-2 polycyclic presentation.

    ``pow_words[j]`` is the exponent vector of ``g_j^{o_j}`` and
    ``comm_words[k][j]`` (k > j) the exponent vector of ``[g_k, g_j]``.
    Relation values only involve generators later than the ones they
    describe, and commutator values only central generators.
    """

    def __init__(self, rel_orders, pow_words, comm_words, central):
        m = len(rel_orders)
        self.m = m
        self.orders = [int(o) for o in rel_orders]
        self.central = [bool(c) for c in central]
        self.pow_words = [_sparse(w) for w in pow_words]
        self.pow_central = [all(self.central[g] for g, _ in w) for w in self.pow_words]
        self.comm = [[_sparse(comm_words[k][j]) for j in range(m)] for k in range(m)]

    def product(self, u, v):
        x = [int(t) for t in u]
        for j, e in enumerate(v):
            if e:
                self._mul_gen(x, j, int(e))
        return tuple(x)

    def inverse(self, u):
        x = [0] * self.m
        for j in range(self.m - 1, -1, -1):
            if u[j]:
                self._mul_gen(x, j, -int(u[j]))
        return tuple(x)

    def _mul_gen(self, x, j, e):
        # x <- x * g_j^e
        m = self.m
        corr = []
        if not self.central[j]:
            comm = self.comm
            for k in range(j + 1, m):
                if x[k] and comm[k][j]:
                    corr.append((comm[k][j], x[k] * e))
        q, r = divmod(x[j] + e, self.orders[j])
        x[j] = r
        if q:
            tail = x[j + 1:]
            for k in range(j + 1, m):
                x[k] = 0
            self._mul_word_power(x, self.pow_words[j], q, self.pow_central[j])
            for k, t in enumerate(tail, start=j + 1):
                if t:
                    self._mul_gen(x, k, t)
        for w, t in corr:
            self._mul_word_power(x, w, t, True)

    def _mul_word_power(self, x, word, t, central):
        if central:
            for g, f in word:
                self._mul_gen(x, g, f * t)
        elif t > 0:
            for _ in range(t):
                for g, f in word:
                    self._mul_gen(x, g, f)
        else:
            for _ in range(-t):
                for g, f in reversed(word):
                    self._mul_gen(x, g, -f)
