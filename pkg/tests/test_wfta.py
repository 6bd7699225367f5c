import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_linear_hom, random_value, random_wfta
from wafakit import wfta
from wafakit.errors import ShapeError
from wafakit.semiring import BOOLEAN, NATURAL, RATIONAL
from wafakit.trees import (
    RankedAlphabet,
    TreeHom,
    enumerate_terms,
    identity_hom,
    node,
    var,
)

GAMMA = RankedAlphabet.make([("f", 2), ("g", 1), ("c", 0)])
LAM = RankedAlphabet.make([("u", 1), ("k", 0)])


def brute_state_behavior(B, q, t):
    """Independent oracle: direct sum over all state assignments."""
    if not t.children:
        return B.weight(t.sym, (), q)
    ring = B.ring
    total = ring.zero
    for frm in itertools.product(B.states, repeat=len(t.children)):
        w = B.weight(t.sym, frm, q)
        if ring.is_zero(w):
            continue
        val = w
        for p, c in zip(frm, t.children):
            val = ring.mul(val, brute_state_behavior(B, p, c))
        total = ring.add(total, val)
    return total


def test_state_behavior_leaf_and_zero():
    rng = random.Random(0)
    B = random_wfta(rng, NATURAL, GAMMA)
    for q in B.states:
        assert wfta.state_behavior(B, q, node("c")) == B.weight("c", (), q)
    empty = wfta.build(NATURAL, ("q",), GAMMA, [], {"q": 1})
    for t in enumerate_terms(GAMMA, 4):
        assert wfta.behavior(empty, t) == 0


def test_state_behavior_matches_brute_force():
    rng = random.Random(1)
    for _ in range(10):
        B = random_wfta(rng, NATURAL, GAMMA)
        for t in enumerate_terms(GAMMA, 4):
            for q in B.states:
                assert wfta.state_behavior(B, q, t) == brute_state_behavior(B, q, t)


def test_behavior_zero_root_weights():
    rng = random.Random(2)
    B = random_wfta(rng, NATURAL, GAMMA)
    Z = wfta.Wfta(B.ring, B.states, B.alphabet, B.delta, {})
    for t in enumerate_terms(GAMMA, 4):
        assert wfta.behavior(Z, t) == 0


def test_constant_one_automaton():
    one = wfta.constant_wfta(BOOLEAN, GAMMA, 1)
    for t in enumerate_terms(GAMMA, 5):
        assert wfta.behavior(one, t) == 1


def test_delta_prime_variable_identity():
    rng = random.Random(3)
    B = random_wfta(rng, NATURAL, GAMMA)
    dp = wfta.delta_prime(B, var(1))
    assert dp.occ_vars == (1,)
    assert dp.entries == {((q,), q): 1 for q in B.states}


def test_delta_prime_closed_column():
    rng = random.Random(4)
    B = random_wfta(rng, NATURAL, GAMMA)
    for t in enumerate_terms(GAMMA, 4):
        dp = wfta.delta_prime(B, t)
        assert dp.occ_vars == ()
        for q in B.states:
            assert dp.entries.get(((), q), 0) == wfta.state_behavior(B, q, t)


def test_delta_prime_substitution_identity():
    # the core substitution identity, checked against brute-force substitution
    rng = random.Random(5)
    small = enumerate_terms(GAMMA, 3)
    for _ in range(30):
        B = random_wfta(rng, rng.choice([NATURAL, BOOLEAN, RATIONAL]), GAMMA)
        ring = B.ring
        t_hat = rng.choice(
            [
                var(1),
                node("g", var(1)),
                node("f", var(1), var(1)),
                node("f", node("g", var(1)), node("c")),
                node("f", var(1), node("g", var(1))),
            ]
        )
        k = len(t_hat.var_positions(1))
        subs = [rng.choice(small) for _ in range(k)]
        t = t_hat.substitute_var_tuple(1, subs)
        dp = wfta.delta_prime(B, t_hat)
        for q in B.states:
            direct = wfta.state_behavior(B, q, t)
            total = ring.zero
            for (occ, to), w in dp.entries.items():
                if to != q:
                    continue
                val = w
                for p, ti in zip(occ, subs):
                    val = ring.mul(val, wfta.state_behavior(B, p, ti))
                total = ring.add(total, val)
            assert ring.equal(direct, total)


def test_hadamard_pointwise():
    rng = random.Random(6)
    for _ in range(8):
        ring = rng.choice([NATURAL, RATIONAL])
        B1 = random_wfta(rng, ring, GAMMA)
        B2 = random_wfta(rng, ring, GAMMA)
        H = wfta.hadamard(B1, B2)
        for t in enumerate_terms(GAMMA, 5):
            assert ring.equal(
                wfta.behavior(H, t), ring.mul(wfta.behavior(B1, t), wfta.behavior(B2, t))
            )


def test_hadamard_units():
    rng = random.Random(7)
    B = random_wfta(rng, NATURAL, GAMMA)
    one = wfta.constant_wfta(NATURAL, GAMMA, 1)
    zero = wfta.constant_wfta(NATURAL, GAMMA, 0)
    for t in enumerate_terms(GAMMA, 4):
        assert wfta.behavior(wfta.hadamard(B, one), t) == wfta.behavior(B, t)
        assert wfta.behavior(wfta.hadamard(B, zero), t) == 0


def test_hadamard_commutative_associative_behavior():
    rng = random.Random(8)
    B1, B2, B3 = (random_wfta(rng, NATURAL, GAMMA) for _ in range(3))
    left = wfta.hadamard(wfta.hadamard(B1, B2), B3)
    right = wfta.hadamard(B1, wfta.hadamard(B2, B3))
    swap = wfta.hadamard(B2, B1)
    for t in enumerate_terms(GAMMA, 4):
        assert wfta.behavior(left, t) == wfta.behavior(right, t)
        assert wfta.behavior(swap, t) == wfta.behavior(wfta.hadamard(B1, B2), t)


def test_preimages_identity_and_empty():
    ident = identity_hom(GAMMA)
    for t in enumerate_terms(GAMMA, 4):
        assert wfta.preimages(ident, t) == [t]
    # no source symbol maps onto g-rooted trees
    h = TreeHom(LAM, GAMMA, {"u": node("f", var(1), node("c")), "k": node("c")})
    assert wfta.preimages(h, node("g", node("c"))) == []


def test_preimages_relabel_count():
    # two unary source symbols with the same image double per matching node
    lam = RankedAlphabet.make([("u", 1), ("v", 1), ("k", 0)])
    gam = RankedAlphabet.make([("g", 1), ("c", 0)])
    h = TreeHom(
        lam, gam, {"u": node("g", var(1)), "v": node("g", var(1)), "k": node("c")}
    )
    t = node("g", node("g", node("c")))
    assert len(wfta.preimages(h, t)) == 4
    for tp in wfta.preimages(h, t):
        assert h.apply(tp) == t


def test_preimages_are_exactly_the_fiber():
    rng = random.Random(9)
    for _ in range(6):
        h = random_linear_hom(rng, LAM, GAMMA)
        sources = enumerate_terms(LAM, 4)
        for t in enumerate_terms(GAMMA, 6):
            fiber = [s for s in sources if h.apply(s) == t]
            got = [s for s in wfta.preimages(h, t) if s.node_count() <= 4]
            assert sorted(map(repr, fiber)) == sorted(map(repr, got))


def test_linear_hom_image_identity():
    rng = random.Random(10)
    B = random_wfta(rng, NATURAL, GAMMA)
    img = wfta.linear_hom_image(B, identity_hom(GAMMA))
    for t in enumerate_terms(GAMMA, 5):
        assert wfta.behavior(img, t) == wfta.behavior(B, t)


def test_linear_hom_image_preimage_sum():
    rng = random.Random(11)
    for _ in range(8):
        ring = rng.choice([NATURAL, RATIONAL, BOOLEAN])
        B = random_wfta(rng, ring, LAM)
        h = random_linear_hom(rng, LAM, GAMMA)
        img = wfta.linear_hom_image(B, h)
        for t in enumerate_terms(GAMMA, 6):
            expect = ring.sum(wfta.behavior(B, tp) for tp in wfta.preimages(h, t))
            assert ring.equal(wfta.behavior(img, t), expect)


def test_linear_hom_image_rejects_deleting_or_nonlinear():
    dele = TreeHom(LAM, GAMMA, {"u": node("c"), "k": node("c")})
    with pytest.raises(ShapeError):
        wfta.linear_hom_image(wfta.constant_wfta(NATURAL, LAM, 1), dele)
    nonlin = TreeHom(LAM, GAMMA, {"u": node("f", var(1), var(1)), "k": node("c")})
    with pytest.raises(ShapeError):
        wfta.linear_hom_image(wfta.constant_wfta(NATURAL, LAM, 1), nonlin)


def test_step_eval_basics():
    empty = wfta.StepFunction(NATURAL, ())
    assert wfta.step_eval(empty, node("c")) == 0
    allt = wfta.constant_wfta(BOOLEAN, GAMMA, 1)
    single = wfta.StepFunction(NATURAL, ((allt, 5),))
    assert wfta.step_eval(single, node("c")) == 5
    overlapping = wfta.StepFunction(NATURAL, ((allt, 1), (allt, 1)))
    assert wfta.step_eval(overlapping, node("g", node("c"))) == 2


def test_step_inverse_hom_identity():
    rng = random.Random(12)
    L = random_wfta(rng, BOOLEAN, GAMMA)
    sf = wfta.StepFunction(NATURAL, ((L, 3),))
    inv = wfta.step_inverse_hom(sf, identity_hom(GAMMA))
    for t in enumerate_terms(GAMMA, 5):
        assert wfta.step_eval(inv, t) == wfta.step_eval(sf, t)
    empty = wfta.step_inverse_hom(wfta.StepFunction(NATURAL, ()), identity_hom(GAMMA))
    assert empty.parts == ()


def test_step_inverse_hom_relabeling():
    lam = RankedAlphabet.make([("u", 1), ("v", 1), ("k", 0)])
    gam = RankedAlphabet.make([("g", 1), ("c", 0)])
    h = TreeHom(lam, gam, {"u": node("g", var(1)), "v": node("g", var(1)), "k": node("c")})
    rng = random.Random(13)
    L = random_wfta(rng, BOOLEAN, gam)
    sf = wfta.StepFunction(NATURAL, ((L, 2),))
    inv = wfta.step_inverse_hom(sf, h)
    for t in enumerate_terms(lam, 5):
        assert wfta.step_eval(inv, t) == wfta.step_eval(sf, h.apply(t))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_step_inverse_hom_random(seed):
    rng = random.Random(seed)
    h = random_linear_hom(rng, LAM, GAMMA)
    parts = tuple(
        (random_wfta(rng, BOOLEAN, GAMMA), random_value(rng, NATURAL))
        for _ in range(rng.randrange(0, 3))
    )
    sf = wfta.StepFunction(NATURAL, parts)
    inv = wfta.step_inverse_hom(sf, h)
    for t in enumerate_terms(LAM, 6):
        assert wfta.step_eval(inv, t) == wfta.step_eval(sf, h.apply(t))
