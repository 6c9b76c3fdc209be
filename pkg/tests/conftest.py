import itertools

import pytest

from pgroup import corpus
from pgroup.table import validate_table

D8_LABELS = ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]
Q8_LABELS = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]


def dihedral_table(m):
    """Dihedral group of order 2m: r^k s^l at index k + m*l, using s r = r^-1 s."""
    def mul(x, y):
        k1, l1 = x % m, x // m
        k2, l2 = y % m, y // m
        k = (k1 + (-1) ** l1 * k2) % m
        return k + m * ((l1 + l2) % 2)
    return [[mul(x, y) for y in range(2 * m)] for x in range(2 * m)]


def dihedral8_table():
    return dihedral_table(4)


def _qmul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0)


def quaternion8_table():
    units = []
    for axis in range(4):
        for sign in (1, -1):
            v = [0, 0, 0, 0]
            v[axis] = sign
            units.append(tuple(v))
    return [[units.index(_qmul(a, b)) for b in units] for a in units]


def cyclic_table(n):
    return [[(x + y) % n for y in range(n)] for x in range(n)]


def direct_product_table(A, B):
    na, nb = len(A), len(B)
    pairs = list(itertools.product(range(na), range(nb)))
    return [[A[a1][a2] * nb + B[b1][b2] for (a2, b2) in pairs] for (a1, b1) in pairs]


@pytest.fixture(scope="session")
def d8():
    return validate_table(dihedral8_table(), D8_LABELS)


@pytest.fixture(scope="session")
def q8():
    return validate_table(quaternion8_table(), Q8_LABELS)


@pytest.fixture(scope="session")
def heis():
    return corpus.get("heis_z4").group()


def corpus_group(name):
    return corpus.get(name).group()


def corpus_groups(max_order=None, nonabelian=False):
    out = []
    for e in corpus.entries():
        if max_order is not None and e.expected["order"] > max_order:
            continue
        if nonabelian and e.expected["case_tag"] == "PRECONDITION":
            continue
        out.append(e.name)
    return out


# acceptance gate: one PASS/FAIL line per criterion in the terminal summary

ACCEPTANCE_RESULTS = {}


def record_criterion(number, title, ok, detail=""):
    ACCEPTANCE_RESULTS[number] = (title, bool(ok), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, ok, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(
            f"[{number:>2}] {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else ""))
