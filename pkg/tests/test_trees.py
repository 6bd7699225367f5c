import random

import pytest
from hypothesis import given, settings, strategies as st

from wafakit.errors import ShapeError
from wafakit.trees import (
    RankedAlphabet,
    TreeHom,
    WordHom,
    compose_word_then_tree,
    enumerate_terms,
    generic_hom,
    identity_hom,
    node,
    tree_var_stats,
    var,
)

LEAF = node("#")
AB2 = RankedAlphabet.make([("a", 2), ("b", 2), ("#", 0)])


def t_ab2():
    # full binary tree for the word ab
    return node("a", node("b", LEAF, LEAF), node("b", LEAF, LEAF))


def test_positions():
    assert LEAF.positions() == [()]
    assert node("a", LEAF, LEAF).positions() == [(), (1,), (2,)]
    assert len(t_ab2().positions()) == 7
    pos = t_ab2().positions()
    assert pos == sorted(pos)  # lexicographic order


def test_subtree():
    t = node("a", node("b", LEAF, LEAF), LEAF)
    assert t.subtree(()) == t
    assert t.subtree((1,)) == node("b", LEAF, LEAF)
    assert t.subtree((1, 1)) == LEAF
    with pytest.raises(ValueError):
        t.subtree((3,))


def test_substitute_positions():
    t = node("a", var(1), var(1))
    assert t.substitute_at((), LEAF) == LEAF
    out = t.substitute_positions([(1,), (2,)], [LEAF, node("b", LEAF, LEAF)])
    assert out == node("a", LEAF, node("b", LEAF, LEAF))
    # uniform form equals the tuple form with a repeated replacement
    uni = t.substitute_positions([(1,), (2,)], [LEAF, LEAF])
    assert uni == t.substitute_var(1, LEAF)


def test_substitute_disjoint_positions_commute():
    t = node("a", node("b", LEAF, LEAF), node("b", LEAF, LEAF))
    r1, r2 = node("#"), node("b", LEAF, LEAF)
    one = t.substitute_at((1,), r1).substitute_at((2,), r2)
    other = t.substitute_at((2,), r2).substitute_at((1,), r1)
    assert one == other == t.substitute_positions([(1,), (2,)], [r1, r2])


def test_var_stats():
    s = tree_var_stats(node("a", var(1), var(1)), 1)
    assert s.r == 2 and s.non_deleting and not s.linear
    s = tree_var_stats(node("a", var(1), var(2)), 2)
    assert s.r == 2 and s.linear
    s = tree_var_stats(var(1), 1)
    assert not s.non_deleting  # needs at least one alphabet symbol


def test_hom_apply():
    ident = identity_hom(AB2)
    for t in enumerate_terms(AB2, 5):
        assert ident.apply(t) == t
    h2 = generic_hom(("a", "b"), 2)
    assert h2.apply_word("ab") == t_ab2()
    assert h2.apply_word("") == LEAF
    h3 = generic_hom(("a", "b"), 3)
    assert h3.apply_word("") == LEAF
    h1 = generic_hom(("a", "b"), 1)
    assert h1.apply_word("ab") == node("a", node("b", LEAF))
    with pytest.raises(ValueError):
        generic_hom(("a",), 0)


def test_word_to_tree_hom_law():
    rng = random.Random(5)
    h = generic_hom(("a", "b"), 2)
    for _ in range(25):
        u = [rng.choice("ab") for _ in range(rng.randrange(0, 4))]
        v = [rng.choice("ab") for _ in range(rng.randrange(0, 4))]
        img_u_ctx = h.apply_word(u + v)
        # image of u with the image of v substituted at the end marker spine
        expect = h.apply_word(u)
        positions = [p for p in expect.positions() if expect.subtree(p) == h.apply_word([])]
        # replacing every end-marker of h(u) by h(v) gives h(uv)
        expect = expect.substitute_positions(positions, [h.apply_word(v)] * len(positions))
        assert img_u_ctx == expect


def test_compose_word_then_tree():
    h_tree = generic_hom(("a", "b"), 1)
    ident = WordHom(("a", "b"), ("a", "b"), {"a": ("a",), "b": ("b",)})
    comp = compose_word_then_tree(ident, h_tree)
    words = [""] + ["a", "b", "ab", "ba", "abab"]
    for w in words:
        assert comp.apply_word(w) == h_tree.apply_word(w)
    squash = WordHom(("c",), ("a", "b"), {"c": ("a", "b")})
    comp = compose_word_then_tree(squash, h_tree)
    assert comp.image("c") == node("a", node("b", var(1)))
    deleting = WordHom(("c",), ("a", "b"), {"c": ()})
    comp = compose_word_then_tree(deleting, h_tree)
    assert comp.image("c") == var(1)


def test_tree_hom_check():
    bad = TreeHom(AB2, AB2, {"a": node("a", var(1), var(2)), "b": node("b", var(1), var(3)), "#": LEAF})
    with pytest.raises(ShapeError):
        bad.check()


def test_enumerate_terms_counts():
    terms = enumerate_terms(AB2, 3)
    assert node("#") in terms
    assert node("a", LEAF, LEAF) in terms
    assert all(t.node_count() <= 3 for t in terms)
    assert len(set(terms)) == len(terms)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_position_count_is_node_count(seed):
    rng = random.Random(seed)
    terms = enumerate_terms(AB2, 7)
    t = terms[rng.randrange(len(terms))]
    assert len(t.positions()) == t.node_count()
    # prefix closed
    ps = set(t.positions())
    assert all(p[:-1] in ps for p in ps if p)
