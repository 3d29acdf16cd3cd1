import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modelspace.homology import AbelianGroup, homology
from modelspace.matchings import catalog, enumerate_single, enumerate_two_simplex
from modelspace.pi1 import (
    DisconnectedComplex,
    GroupKind,
    Presentation,
    abelianization,
    classify,
    cyclic_reduce,
    free_reduce,
    inverse,
    presentation,
    symbol,
    tietze_simplify,
)
from modelspace.quotient import build_quotient, components


def P(text):
    return Presentation.parse(text)


def test_word_helpers():
    assert free_reduce((1, -1, 2, 2, -2)) == (2,)
    assert cyclic_reduce((-1, 2, 3, 1)) == (2, 3)
    assert inverse((1, -2, 3)) == (-3, 2, -1)
    assert [symbol(i) for i in (0, 1, 25, 26, 27)] == ["a", "b", "z", "a1", "b1"]


def test_presentation_text_round_trip():
    p = Presentation(("a", "b"), ((1, 2, -1, -2), (1, 1, 1)))
    assert p.text() == "gens: a,b; rels: a b A B, a a a"
    assert Presentation.parse(p.text()) == p
    assert P("gens: ; rels: ") == Presentation((), ())
    with pytest.raises(ValueError):
        Presentation(("a",), ((2,),))
    with pytest.raises(ValueError):
        P("a, b")
    with pytest.raises(ValueError):
        P("gens: a; rels: c")


@pytest.mark.parametrize(
    "text,expected",
    [
        ("gens: a; rels: a", "1"),
        ("gens: a,b; rels: a b, b", "1"),
        ("gens: a,b; rels: a b A B, a a a B", "Z"),
        ("gens: a; rels: a a a", "Z/3"),
        ("gens: a; rels: ", "Z"),
        # no generator occurs once in a relator, so the verdict stays open
        ("gens: a,b; rels: a a, b b b, a b A B", "?"),
        ("gens: a,b; rels: a a b, b b b", "Z/6"),
        ("gens: a; rels: a a a a, a a a a a a", "Z/2"),
    ],
)
def test_classify_examples(text, expected):
    v = classify(P(text))
    assert v.text() == expected


def test_commutator_example_simplifies_to_one_generator():
    q = tietze_simplify(P("gens: a,b; rels: a b A B, a a a B"))
    assert len(q.generators) == 1
    assert q.relators == ()


def test_free_group_is_undetermined():
    v = classify(P("gens: a,b; rels: "))
    assert v.kind is GroupKind.UNDETERMINED
    assert not v.is_cyclic
    assert v.abelianization == AbelianGroup(2)
    assert v.text() == "?"


def test_move_budget_zero_leaves_presentation():
    p = P("gens: a,b; rels: a b, b")
    assert len(tietze_simplify(p, move_budget=0).generators) == 2


def test_abelianization_examples():
    assert abelianization(P("gens: a,b; rels: a a, b b")) == AbelianGroup(0, (2, 2))
    assert abelianization(P("gens: a,b; rels: a b A B")) == AbelianGroup(2)
    assert abelianization(P("gens: ; rels: ")) == AbelianGroup()


words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=8)


@settings(max_examples=200, deadline=None)
@given(st.lists(words, max_size=4))
def test_tietze_preserves_abelianization(rels):
    p = Presentation(("a", "b", "c"), tuple(tuple(r) for r in rels))
    q = tietze_simplify(p)
    assert abelianization(q) == abelianization(p)
    assert len(q.generators) <= 3
    v = classify(p)
    if v.is_cyclic:
        assert len(v.simplified.generators) <= 1


def test_presentation_of_matchings_are_trivial():
    for n in (3, 5):
        for m in enumerate_single(n):
            assert classify(presentation(build_quotient(m))).kind is GroupKind.TRIVIAL


def test_circle_factor_gives_infinite_cyclic():
    for name in ("s1xs-odd-3", "s1xs-even-4", "s1xs-odd-5"):
        qc = build_quotient(catalog(name))
        v = classify(presentation(qc))
        assert v.kind is GroupKind.INFINITE_CYCLIC
        assert v.abelianization == homology(qc).group(1)


def test_disconnected_complex_rejected():
    for s in enumerate_two_simplex(3, "same"):
        qc = build_quotient(s)
        if qc.num_components > 1:
            with pytest.raises(DisconnectedComplex):
                presentation(qc)
            for comp in components(qc):
                presentation(comp)
            return
    pytest.fail("no disconnected system found")


def test_lens_space_torsion():
    found = set()
    for sign in ("same", "opp"):
        for s in enumerate_two_simplex(3, sign):
            for comp in components(build_quotient(s)):
                found.add(classify(presentation(comp)).text())
    assert found == {"1", "Z", "Z/2", "Z/3"}
