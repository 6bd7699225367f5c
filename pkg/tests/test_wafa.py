import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_words, random_nice_wafa, random_wafa
from wafakit import wafa
from wafakit.errors import ResourceLimitError, ShapeError
from wafakit.polynomial import Polynomial
from wafakit.samples import double_exponential_wafa, two_branch_wafa
from wafakit.semiring import NATURAL, RATIONAL


def test_validate_flags_double_exponential():
    A = double_exponential_wafa()
    d = wafa.diagnose(A)
    assert d.ok and d.nice
    assert not d.purely_polynomial  # the coefficient 2 on the b-loop
    assert not d.equalized  # degrees 1 and 2 both occur
    assert d.universal  # each transition is at most one monomial
    assert not d.wfa_shape


def test_validate_flags_two_branch():
    d = wafa.diagnose(two_branch_wafa())
    assert d.ok and d.nice
    assert not d.universal  # the a-transition has two monomials


def test_validate_reports_violations():
    A = double_exponential_wafa()
    broken = wafa.Wafa(A.ring, A.states, A.alphabet, dict(list(A.delta.items())[:-1]), A.p0, A.tau)
    d = wafa.diagnose(broken)
    assert not d.ok and any("missing transition" in v for v in d.violations)
    bad_poly = wafa.Wafa(
        A.ring, A.states, A.alphabet,
        {**A.delta, ("q", "a"): Polynomial.variable(A.ring, 3, 3)}, A.p0, A.tau,
    )
    assert any("variables" in v for v in wafa.diagnose(bad_poly).violations)


def test_state_behavior_examples():
    A = double_exponential_wafa()
    assert wafa.state_behavior(A, "p", "b") == 4  # doubling of the final weight 2
    for q in A.states:
        assert wafa.state_behavior(A, q, "") == A.tau[q]
    assert wafa.state_behavior(A, "q", "abb") == 16


def test_behavior_examples():
    A = double_exponential_wafa()
    assert wafa.behavior(A, "aabb") == 256
    for i in range(4):
        for j in range(4):
            assert wafa.behavior(A, "a" * i + "b" * j) == (2**j) ** (2**i)
    assert wafa.behavior(A, "ba") == 0


def test_symbolic_unfolding_two_branch():
    # reading letters substitutes the transition polynomials into the
    # behavior polynomial; after "aba" each monomial matches one run
    A = two_branch_wafa()
    ring = A.ring

    def read(p, letter):
        return p.substitute([A.delta[(q, letter)] for q in A.states])

    P = read(A.p0, "a")
    assert P == Polynomial.from_terms(ring, 2, [(1, {1: 1}), (1, {2: 1})])  # q + p
    P = read(P, "b")
    assert P == Polynomial.from_terms(ring, 2, [(1, {1: 1, 2: 1}), (1, {1: 1})])  # q p + q
    P = read(P, "a")
    assert P == Polynomial.from_terms(
        ring, 2, [(1, {1: 1, 2: 1}), (1, {2: 2}), (1, {1: 1}), (1, {2: 1})]
    )  # q p + p^2 + q + p
    assert len(P.monomials) == len(list(wafa.enumerate_runs(A, "aba")))
    assert P.eval_at([A.tau[q] for q in A.states]) == wafa.behavior(A, "aba")


def test_make_nice_fixed_point():
    A = double_exponential_wafa()
    assert wafa.make_nice(A) is A


def test_make_nice_displaces_constants():
    ring = NATURAL
    # one state, delta(q, a) = q + 3
    A = wafa.Wafa(
        ring, ("q",), ("a",),
        {("q", "a"): Polynomial.from_terms(ring, 1, [(1, {1: 1}), (3, {})])},
        Polynomial.variable(ring, 1, 1),
        {"q": 1},
    )
    B = wafa.make_nice(A)
    d = wafa.diagnose(B)
    assert d.nice
    added = [q for q in B.states if q not in A.states]
    assert len(added) == 1
    qc = added[0]
    assert B.tau[qc] == 3
    assert B.delta[(qc, "a")] == Polynomial.variable(ring, len(B.states), B.states.index(qc) + 1)
    for w in all_words(("a",), 4):
        assert wafa.behavior(A, w) == wafa.behavior(B, w)


def test_make_nice_folds_initial_polynomial():
    ring = NATURAL
    # P0 = q1 + 3*q2 forces an aggregate first state
    A = wafa.Wafa(
        ring, ("q1", "q2"), ("a",),
        {
            ("q1", "a"): Polynomial.variable(ring, 2, 2),
            ("q2", "a"): Polynomial.from_terms(ring, 2, [(2, {1: 1})]),
        },
        Polynomial.from_terms(ring, 2, [(1, {1: 1}), (3, {2: 1})]),
        {"q1": 1, "q2": 5},
    )
    B = wafa.make_nice(A)
    assert wafa.diagnose(B).nice
    agg = B.states[0]
    assert agg not in A.states
    # the new first state simulates one step of P0
    shifted = A.p0.substitute([A.delta[("q1", "a")], A.delta[("q2", "a")]]).shift_vars(1, 3)
    assert B.delta[(agg, "a")] == shifted
    assert B.tau[agg] == A.p0.eval_at([1, 5])
    for w in all_words(("a",), 4):
        assert wafa.behavior(A, w) == wafa.behavior(B, w)


def test_make_purely_polynomial():
    A = double_exponential_wafa()
    B = wafa.make_purely_polynomial(A)
    d = wafa.diagnose(B)
    assert d.nice and d.purely_polynomial
    added = [q for q in B.states if q not in A.states]
    assert len(added) == 1
    qs = added[0]
    assert B.tau[qs] == 2
    idx_p, idx_s = B.states.index("p") + 1, B.states.index(qs) + 1
    assert B.delta[("p", "b")] == Polynomial.from_terms(
        B.ring, len(B.states), [(1, {idx_p: 1, idx_s: 1})]
    )
    for w in all_words(A.alphabet, 4):
        assert wafa.behavior(A, w) == wafa.behavior(B, w)
    # fixed point
    assert wafa.make_purely_polynomial(B) is B


def test_make_purely_polynomial_breaks_wfa_shape():
    ring = NATURAL
    A = wafa.Wafa(
        ring, ("q",), ("a",),
        {("q", "a"): Polynomial.from_terms(ring, 1, [(2, {1: 1})])},
        Polynomial.variable(ring, 1, 1),
        {"q": 1},
    )
    assert wafa.diagnose(A).wfa_shape
    B = wafa.make_purely_polynomial(A)
    assert not wafa.diagnose(B).wfa_shape
    assert wafa.diagnose(B).purely_polynomial


def test_make_purely_polynomial_requires_nice():
    ring = NATURAL
    A = wafa.Wafa(
        ring, ("q",), ("a",),
        {("q", "a"): Polynomial.from_terms(ring, 1, [(1, {1: 1}), (3, {})])},
        Polynomial.variable(ring, 1, 1),
        {"q": 1},
    )
    with pytest.raises(ShapeError):
        wafa.make_purely_polynomial(A)


def test_equalize_double_exponential():
    A = double_exponential_wafa()
    B = wafa.equalize(A)
    d = wafa.diagnose(B)
    assert d.nice and d.equalized and d.common_degree == 2
    sink = B.states[-1]
    assert B.tau[sink] == 1
    n = len(B.states)
    iq, ip, ih = 1, 2, 3
    assert B.delta[("q", "b")] == Polynomial.from_terms(B.ring, n, [(1, {ip: 1, ih: 1})])
    assert B.delta[("p", "b")] == Polynomial.from_terms(B.ring, n, [(2, {ip: 1, ih: 1})])
    assert B.delta[(sink, "a")] == Polynomial.from_terms(B.ring, n, [(1, {ih: 2})])
    for w in all_words(A.alphabet, 4):
        assert wafa.behavior(A, w) == wafa.behavior(B, w)


def test_equalize_keeps_equalized_monomials():
    ring = NATURAL
    A = wafa.Wafa(
        ring, ("q",), ("a",),
        {("q", "a"): Polynomial.from_terms(ring, 1, [(1, {1: 2})])},
        Polynomial.variable(ring, 1, 1),
        {"q": 1},
    )
    B = wafa.equalize(A)
    assert B.delta[("q", "a")] == Polynomial.from_terms(ring, 2, [(1, {1: 2})])
    assert len(B.states) == 2


def test_equalize_degenerate_all_zero():
    ring = NATURAL
    A = wafa.Wafa(
        ring, ("q",), ("a",),
        {("q", "a"): Polynomial.zero(ring, 1)},
        Polynomial.variable(ring, 1, 1),
        {"q": 7},
    )
    B = wafa.equalize(A)
    assert wafa.diagnose(B).equalized
    for w in all_words(("a",), 3):
        assert wafa.behavior(A, w) == wafa.behavior(B, w)


def test_run_alphabet():
    A = double_exponential_wafa()
    ra = wafa.run_alphabet(A)
    sq = [s for s, r in ra.alphabet.symbols if s.startswith("q|") and r == 2]
    assert len(sq) == 1  # the squaring monomial has rank two
    assert ra.alphabet.rank(ra.leaf_symbol["p"]) == 0
    B = two_branch_wafa()
    rb = wafa.run_alphabet(B)
    names = [s for s, _ in rb.alphabet.symbols]
    assert not any("+" in s for s in names)  # only monomials label run nodes
    assert len(rb.by_state_letter[("q", "a")]) == 2


def test_enumerate_runs_counts():
    assert len(list(wafa.enumerate_runs(two_branch_wafa(), "aba"))) == 4
    A = double_exponential_wafa()
    for w in ["", "a", "ab", "abb", "aabb"]:
        assert len(list(wafa.enumerate_runs(A, w))) == 1
    assert list(wafa.enumerate_runs(A, "ba")) == []


def test_enumerate_runs_cap():
    with pytest.raises(ResourceLimitError):
        list(wafa.enumerate_runs(two_branch_wafa(), "aaaa", cap=3))


def test_run_weights():
    A = double_exponential_wafa()
    (run,) = list(wafa.enumerate_runs(A, "aabb"))
    assert wafa.run_weight(run) == 256
    B = two_branch_wafa()
    for run in wafa.enumerate_runs(B, "aba"):
        assert wafa.run_weight(run) == 1


def test_behavior_by_runs_examples():
    A = double_exponential_wafa()
    assert wafa.behavior_by_runs(A, "aabb") == 256
    assert wafa.behavior_by_runs(two_branch_wafa(), "aba") == 4
    assert wafa.behavior_by_runs(A, "ba") == 0


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_run_sum_identity_random(seed):
    rng = random.Random(seed)
    ring = rng.choice([NATURAL, RATIONAL])
    A = random_nice_wafa(rng, ring)
    for w in all_words(A.alphabet, 3):
        assert ring.equal(wafa.behavior(A, w), wafa.behavior_by_runs(A, w))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_normal_forms_preserve_behavior_random(seed):
    rng = random.Random(seed)
    ring = rng.choice([NATURAL, RATIONAL])
    A = random_wafa(rng, ring)
    N = wafa.make_nice(A)
    assert wafa.diagnose(N).nice
    E = wafa.equalize(N)
    P = wafa.make_purely_polynomial(N)
    d = wafa.diagnose(E)
    assert d.equalized and d.nice
    assert wafa.diagnose(P).purely_polynomial
    for w in all_words(A.alphabet, 3):
        v = wafa.behavior(A, w)
        assert ring.equal(v, wafa.behavior(N, w))
        assert ring.equal(v, wafa.behavior(E, w))
        assert ring.equal(v, wafa.behavior(P, w))


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_universal_iff_single_run(seed):
    rng = random.Random(seed)
    A = random_nice_wafa(rng, NATURAL)
    d = wafa.diagnose(A)
    counts = [len(list(wafa.enumerate_runs(A, w))) for w in all_words(A.alphabet, 3)]
    if d.universal:
        assert all(c <= 1 for c in counts)
    else:
        # some transition has two monomials; reachability may still hide it,
        # so only the converse direction is guaranteed on the nose
        assert max(counts) >= 0
