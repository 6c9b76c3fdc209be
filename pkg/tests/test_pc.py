import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgroup import corpus
from pgroup.errors import (BadRelativeOrder, InconsistentPresentation, NonCentralCommutator,
                           PresentationSyntaxError)
from pgroup.oracle import find_isomorphism
from pgroup.pc import (check_consistency, class2_power, collect_commutator, collect_inverse,
                       collect_power, collect_product, format_presentation, parse_presentation,
                       to_cayley, vector_order)
from pgroup.structure import center

HEIS = "p=2; gen a:4, b:4, z:4; comm [b,a] = z; central z"
HEIS2 = "p=2; gen a:2, b:2, z:2; comm [b,a] = z; central z"


def test_z2():
    P = parse_presentation("p=2; gen a:2;")
    assert P.order == 2
    G, _ = to_cayley(P)
    assert G.mul.tolist() == [[0, 1], [1, 0]]


def test_order16_example():
    P = parse_presentation("p=2; gen a:4, b:2, z:2; comm [b,a]=z; central z; "
                           "pow b^2=1; pow a^4=1; pow z^2=1")
    assert P.order == 16
    assert check_consistency(P).order == 16
    assert len(to_cayley(P)[0].mul) == 16


def test_multiline_with_comments():
    P = parse_presentation("""
        # comment line
        p = 3
        gen x:3, y:3, z:3   # trailing
        comm [y,x] = z^2
        central z
    """)
    assert P.prime == 3 and P.generators == ("x", "y", "z")
    assert P.commutator_relations == ((1, 0, (0, 0, 2)),)


@pytest.mark.parametrize("text, err", [
    ("p=2; gen a:2, b:2; comm [b,a]=a", NonCentralCommutator),
    ("p=2; gen a:2, b:2, z:2; central z; comm [z,a]=b", NonCentralCommutator),
    ("p=2; gen a:4, b:3; pow a^4 = b", BadRelativeOrder),
    ("p=4; gen a:2", PresentationSyntaxError),
    ("gen a:2", PresentationSyntaxError),
    ("p=2; gen a:2; pow a^4 = 1", PresentationSyntaxError),
    ("p=2; gen a:2, b:2; pow b^2 = a", PresentationSyntaxError),
    ("p=2; gen a:2, b:2; comm [a,b] = 1", PresentationSyntaxError),
    ("p=2; gen a:2; pow q^2 = 1", PresentationSyntaxError),
    ("p=2; gen a:2, a:2", PresentationSyntaxError),
    ("p=2; gen a:2; frobnicate", PresentationSyntaxError),
])
def test_rejected(text, err):
    with pytest.raises(err):
        parse_presentation(text)


def test_syntax_error_has_position():
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation("p=2\ngen a:2\nbogus")
    assert info.value.lineno == 3


def test_inconsistent_presentation():
    # a^2 = b forces [b,a] = 1, contradicting [b,a] = z
    P = parse_presentation("p=2; gen a:2, b:2, z:2; pow a^2 = b; comm [b,a]=z; central z")
    with pytest.raises(InconsistentPresentation) as info:
        check_consistency(P)
    assert info.value.witness is not None


def test_heisenberg_z4_products():
    P = parse_presentation(HEIS)
    a, b = P.generator(0), P.generator(1)
    e = P.identity
    assert collect_product(P, e, a) == a
    assert collect_product(P, a, b) == (1, 1, 0)
    assert collect_product(P, b, a) == (1, 1, 1)  # ba = ab[b,a]
    assert collect_commutator(P, b, a) == (0, 0, 1)


def test_heisenberg_power_example():
    P = parse_presentation(HEIS)
    a, b = P.generator(0), P.generator(1)
    ab = collect_product(P, a, b)
    # a^5 b^5 z^10 = a b z^2 by hand
    assert collect_power(P, ab, 5) == (1, 1, 2)
    assert class2_power(P, a, b, 5) == (1, 1, 2)
    assert collect_power(P, a, 0) == P.identity
    assert collect_power(P, a, 4) == P.identity


def test_heisenberg_consistency_and_center():
    P = parse_presentation(HEIS)
    assert check_consistency(P).order == 64
    G, vecs = to_cayley(P)
    Z = center(G)
    assert len(Z) == 4
    assert {vecs[x] for x in Z} == {(0, 0, k) for k in range(4)}


def test_z4_is_cyclic():
    G, _ = to_cayley(parse_presentation("p=2; gen a:4"))
    assert G.mul.tolist() == [[(x + y) % 4 for y in range(4)] for x in range(4)]


def test_heisenberg_z2_is_d8(d8):
    G, _ = to_cayley(parse_presentation(HEIS2))
    assert find_isomorphism(G, d8) is not None


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_round_trip(name):
    P = corpus.get(name).presentation()
    assert parse_presentation(format_presentation(P)) == P


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_inverse(u):
    P = parse_presentation(HEIS)
    u = tuple(u)
    assert collect_product(P, u, collect_inverse(P, u)) == P.identity
    assert collect_product(P, collect_inverse(P, u), u) == P.identity


def _vec(draw, P):
    return tuple(draw(st.integers(0, o - 1)) for o in P.relative_orders)


PROPERTY_GROUPS = ["heis_z4", "w_b", "w_c", "es27", "es125", "heis_z4_circ_z8"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PROPERTY_GROUPS), st.data())
def test_collection_is_associative(name, data):
    P = corpus.get(name).presentation()
    u, v, w = (_vec(data.draw, P) for _ in range(3))
    lhs = collect_product(P, collect_product(P, u, v), w)
    assert lhs == collect_product(P, u, collect_product(P, v, w))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PROPERTY_GROUPS), st.data(), st.integers(-40, 40))
def test_class2_power_law(name, data, k):
    P = corpus.get(name).presentation()
    u, v = _vec(data.draw, P), _vec(data.draw, P)
    if k < 0:
        # the closed form is stated for k >= 0; negative k via the inverse of (uv)^|k|
        assert collect_power(P, collect_product(P, u, v), k) == \
            collect_inverse(P, class2_power(P, u, v, -k))
    else:
        assert collect_power(P, collect_product(P, u, v), k) == class2_power(P, u, v, k)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PROPERTY_GROUPS), st.data())
def test_commutator_bilinear(name, data):
    P = corpus.get(name).presentation()
    u, v, w = (_vec(data.draw, P) for _ in range(3))
    uv = collect_product(P, u, v)
    assert collect_commutator(P, uv, w) == collect_product(
        P, collect_commutator(P, u, w), collect_commutator(P, v, w))
    assert collect_commutator(P, u, v) == collect_inverse(P, collect_commutator(P, v, u))


@pytest.mark.parametrize("name", ["heis_z4", "w_c"])
def test_vector_order_matches_table(name):
    P = corpus.get(name).presentation()
    G, vecs = to_cayley(P)
    assert [vector_order(P, v) for v in vecs] == G.orders.tolist()
