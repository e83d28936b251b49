"""Tests for symbolic torus elements, Weyl translation, and Delta/alpha.

Frozen values: the GL(2) pair delta(full) = q-1, delta(empty) = 0 for
eigenvalues with a*b = 1; the identity-element alternation
alpha(empty, 1) = (q-1)(q-2)...(q-n) for GL(n).  Structural oracles:
Mobius inversion (sum of alpha over all nodes = delta at the empty node),
Weyl equivariance of in_commutator, and monotonicity of the commutator
condition along inclusions.
"""

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from charvar.charsum import (
    EigenvalueDatum,
    SymbolicTorusElement,
    alpha,
    delta,
    evaluate_character,
    identity_element,
    in_commutator,
    product_translate,
    strongly_regular,
    translate,
)
from charvar.errors import InvalidInputError
from charvar.qpoly import RationalPoly, q_minus
from charvar.rootdata import build_root_datum, enumerate_weyl
from charvar.subsystems import build_poset


def _element(datum, *words):
    return SymbolicTorusElement.from_words(datum, words)


# ---------------------------------------------------------------------------
# Parsing and evaluation
# ---------------------------------------------------------------------------


def test_word_parsing():
    datum = EigenvalueDatum(symbols=("a", "b", "t"))
    assert datum.parse_word("a*b^-2") == (1, -2, 0)
    assert datum.parse_word("1") == (0, 0, 0)
    assert datum.parse_word("t^3 * a") == (1, 0, 3)
    assert datum.parse_relation("a*b = t^2") == (1, 1, -2)
    assert datum.parse_relation("a*b") == (1, 1, 0)
    with pytest.raises(InvalidInputError):
        datum.parse_word("a+b")
    with pytest.raises(InvalidInputError):
        datum.parse_word("z")
    with pytest.raises(InvalidInputError):
        datum.parse_relation("a = b = t")


def test_word_str_roundtrip():
    datum = EigenvalueDatum(symbols=("a", "b"))
    for text in ["a*b^-2", "1", "b^3"]:
        word = datum.parse_word(text)
        assert datum.parse_word(datum.word_str(word)) == word


def test_evaluate_character():
    datum = EigenvalueDatum(symbols=("a", "b"))
    s = _element(datum, "a", "b")
    # the GL(2) root e1 - e2 evaluates to a * b^-1
    assert evaluate_character((1, -1), s) == (1, -1)
    assert evaluate_character((0, 0), s) == (0, 0)
    assert evaluate_character((2, 1), s) == (2, 1)


def test_group_relations_decide_identity():
    datum = EigenvalueDatum(symbols=("a", "b"), relations=("a*b",))
    g = datum.group
    assert g.quotient().free_rank == 1
    word = datum.parse_word("a*b")
    from charvar.abelian import is_identity

    assert is_identity(g, word)
    assert not is_identity(g, datum.parse_word("a"))


# ---------------------------------------------------------------------------
# Weyl translation
# ---------------------------------------------------------------------------


def test_translate_permutes_gl3_coordinates():
    rd = build_root_datum("GL(3)")
    datum = EigenvalueDatum(symbols=("a", "b", "c"))
    s = _element(datum, "a", "b", "c")
    weyl = enumerate_weyl(rd)
    images = {translate(w, s).coords for w in weyl.elements}
    # W = S3 permutes the three coordinates freely here
    perms = {
        tuple(s.coords[i] for i in perm)
        for perm in itertools.permutations(range(3))
    }
    assert images == perms


def test_product_translate_sums_coordinates():
    rd = build_root_datum("GL(2)")
    datum = EigenvalueDatum(symbols=("a", "b", "c", "d"))
    s1 = _element(datum, "a", "b")
    s2 = _element(datum, "c", "d")
    identity = tuple(tuple(1 if i == j else 0 for j in range(2)) for i in range(2))
    swap = next(w for w in enumerate_weyl(rd).elements if w != identity)
    prod = product_translate([identity, swap], [s1, s2])
    # w2 swaps (c, d); the product multiplies coordinatewise
    assert prod.coords == (datum.parse_word("a*d"), datum.parse_word("b*c"))
    with pytest.raises(InvalidInputError):
        product_translate([identity], [s1, s2])


# ---------------------------------------------------------------------------
# Strong regularity
# ---------------------------------------------------------------------------


def test_strongly_regular_gl2():
    rd = build_root_datum("GL(2)")
    datum = EigenvalueDatum(symbols=("a", "b"), relations=("a*b",))
    assert strongly_regular(rd, _element(datum, "a", "b"))
    # equal coordinates: the root a/b collapses
    datum2 = EigenvalueDatum(symbols=("a",))
    assert not strongly_regular(rd, _element(datum2, "a", "a"))


def test_strongly_regular_needs_trivial_stabilizer():
    # a*b = 1 with a^2 = 1 makes S = (a, b) fixed by the swap: a != b is not
    # forced, since b = a^-1 = a
    rd = build_root_datum("GL(2)")
    datum = EigenvalueDatum(symbols=("a", "b"), relations=("a*b", "a^2"))
    s = _element(datum, "a", "b")
    assert not strongly_regular(rd, s)


def test_strongly_regular_pgl2_natural_pairing():
    # PGL(2) in the fundamental-coweight basis: S = (t) pairs with the root
    # to give t itself, so S is strongly regular whenever t is not forced
    # to 1 or to be fixed by inversion
    rd = build_root_datum("PGL(2)")
    datum = EigenvalueDatum(symbols=("t",))
    assert strongly_regular(rd, _element(datum, "t"))
    assert evaluate_character(rd.roots[rd.positive[0]], _element(datum, "t")) == (1,)
    datum2 = EigenvalueDatum(symbols=("t",), relations=("t^2",))
    assert not strongly_regular(rd, _element(datum2, "t"))


def test_strongly_regular_so5():
    rd = build_root_datum("SO(5)")
    datum = EigenvalueDatum(symbols=("a", "b"))
    assert strongly_regular(rd, _element(datum, "a", "b"))
    # a = b is fixed by the reflection swapping the two coordinates
    assert not strongly_regular(rd, _element(datum, "a", "a"))


def test_strongly_regular_wrong_rank():
    rd = build_root_datum("GL(2)")
    datum = EigenvalueDatum(symbols=("a",))
    with pytest.raises(InvalidInputError):
        strongly_regular(rd, _element(datum, "a"))


# ---------------------------------------------------------------------------
# in_commutator / delta / alpha
# ---------------------------------------------------------------------------


def test_gl2_delta_frozen():
    rd = build_root_datum("GL(2)")
    datum = EigenvalueDatum(symbols=("a", "b"), relations=("a*b",))
    s = _element(datum, "a", "b")
    full = frozenset(range(rd.num_roots))
    assert in_commutator(rd, full, s)
    assert delta(rd, full, s) == q_minus(1)
    assert not in_commutator(rd, frozenset(), s)
    assert delta(rd, frozenset(), s) == RationalPoly.from_int(0)


def test_gl2_delta_generic_eigenvalues():
    rd = build_root_datum("GL(2)")
    datum = EigenvalueDatum(symbols=("a", "b"))  # no relations: generic
    s = _element(datum, "a", "b")
    full = frozenset(range(rd.num_roots))
    # det S = a*b is not forced trivial
    assert not in_commutator(rd, full, s)
    assert delta(rd, full, s) == RationalPoly.from_int(0)


def test_delta_at_identity_counts_torus():
    for desc, d in [("GL(2)", 2), ("SO(5)", 2), ("G2", 2)]:
        rd = build_root_datum(desc)
        datum = EigenvalueDatum(symbols=("a",))
        one = identity_element(datum, rd.rank)
        assert delta(rd, frozenset(), one) == q_minus(1) ** d


def test_so5_torsion_power_condition():
    """The A1xA1 node of SO(5) needs both 2e_i-coordinates to be squares."""
    rd = build_root_datum("SO(5)")
    poset = build_poset(rd)
    a1a1 = next(
        i for i in range(poset.num_nodes)
        if poset.type_label(i) == "A1xA1"
    )
    node = poset.nodes[a1a1]
    # (a, b) with a = s^2, b = u^2: quotient conditions hold
    datum = EigenvalueDatum(symbols=("s", "u"))
    sq = SymbolicTorusElement(datum=datum, coords=((2, 0), (0, 2)))
    assert in_commutator(rd, node, sq)
    assert delta(rd, node, sq) == RationalPoly.from_int(4)
    # generic (a, b): not forced to be squares
    datum2 = EigenvalueDatum(symbols=("a", "b"))
    gen = _element(datum2, "a", "b")
    assert not in_commutator(rd, node, gen)


def test_in_commutator_monotone():
    rd = build_root_datum("SO(5)")
    poset = build_poset(rd)
    datum = EigenvalueDatum(symbols=("a", "b"), relations=("a*b",))
    samples = [
        _element(datum, "a", "b"),
        _element(datum, "a", "a"),
        _element(datum, "1", "1"),
        SymbolicTorusElement(datum=datum, coords=((2, 0), (0, 0))),
    ]
    for s in samples:
        for i in range(poset.num_nodes):
            for j in range(poset.num_nodes):
                if poset.leq(i, j) and in_commutator(rd, poset.nodes[i], s):
                    assert in_commutator(rd, poset.nodes[j], s)


def test_in_commutator_weyl_equivariant():
    rd = build_root_datum("SO(5)")
    poset = build_poset(rd)
    lookup = {v: i for i, v in enumerate(rd.coroots)}
    datum = EigenvalueDatum(symbols=("a", "b"), relations=("a^2*b",))
    s = _element(datum, "a", "b")
    for w in enumerate_weyl(rd).elements:
        ws = translate(w, s)
        for node in poset.nodes:
            image = frozenset(
                lookup[tuple(sum(w[r][c] * rd.coroots[k][c] for c in range(rd.rank))
                             for r in range(rd.rank))]
                for k in node
            )
            assert in_commutator(rd, node, s) == in_commutator(rd, image, ws)


def test_alpha_telescopes_to_delta_at_empty():
    """Mobius inversion: sum over all nodes of alpha(node, S) = delta(empty, S)."""
    for desc, relations in [
        ("GL(2)", ("a*b",)),
        ("GL(3)", ()),
        ("SO(5)", ("a*b",)),
    ]:
        rd = build_root_datum(desc)
        poset = build_poset(rd)
        datum = EigenvalueDatum(
            symbols=tuple("ab"[: rd.rank]) or ("a",), relations=relations
        )
        words = ["a", "b", "1"][: rd.rank]
        s = _element(datum, *words)
        total = RationalPoly.from_int(0)
        for i in range(poset.num_nodes):
            total = total + alpha(poset, i, s)
        assert total == delta(rd, frozenset(), s), desc


@pytest.mark.parametrize("n,expected_factors", [(2, 2), (3, 3), (4, 4)])
def test_alpha_empty_at_identity_gl(n, expected_factors):
    """alpha(empty, identity) = (q-1)(q-2)...(q-n) for GL(n)."""
    rd = build_root_datum(f"GL({n})")
    poset = build_poset(rd)
    datum = EigenvalueDatum(symbols=("a",))
    one = identity_element(datum, rd.rank)
    empty = poset.index_of[frozenset()]
    expected = RationalPoly.from_int(1)
    for i in range(1, n + 1):
        expected = expected * q_minus(i)
    assert alpha(poset, empty, one) == expected


def test_canonical_key_identifies_equal_elements():
    datum = EigenvalueDatum(symbols=("a", "b"), relations=("a*b",))
    s1 = _element(datum, "a", "b")
    s2 = SymbolicTorusElement(datum=datum, coords=((1, 0), (-1, 0)))  # b = a^-1
    assert s1.coords != s2.coords
    assert s1.canonical_key() == s2.canonical_key()


@settings(max_examples=40, deadline=None)
@given(
    rel=st.sampled_from(["a*b", "a^2*b", "a*b^2", "a^3"]),
    coords=st.lists(
        st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=2, max_size=2
    ),
)
def test_delta_properties(rel, coords):
    rd = build_root_datum("SO(5)")
    datum = EigenvalueDatum(symbols=("a", "b"), relations=(rel,))
    s = SymbolicTorusElement(datum=datum, coords=tuple(coords))
    full = frozenset(range(rd.num_roots))
    d_full = delta(rd, full, s)
    d_empty = delta(rd, frozenset(), s)
    # full-node delta is the constant |Tor| when the element is inside
    assert d_full.is_polynomial()
    if not d_empty.is_zero():
        # the identity is in every commutator subgroup image
        assert not d_full.is_zero()
