"""Small ready-made automata used by the documentation, CLI fixtures, and tests."""

from __future__ import annotations

from .polynomial import Polynomial
from .semiring import BOOLEAN, NATURAL, Semiring, polynomial_ring
from .trees import WordHom
from .wafa import Wafa


def double_exponential_wafa(ring: Semiring = NATURAL) -> Wafa:
    """Two states over {a, b} recognizing (2^j)^(2^i) on a^i b^j, 0 elsewhere.

    Reading ``a`` squares the first state's value, reading ``b`` hands over
    to the second state, which doubles per step and ends with weight 2.
    The growth is doubly exponential, which no linear-shaped automaton can
    reach, and every transition is a single monomial, so each word has at
    most one run.
    """
    v = ring.value
    P = lambda terms: Polynomial.from_terms(ring, 2, terms)
    delta = {
        ("q", "a"): P([(v(1), {1: 2})]),
        ("q", "b"): P([(v(1), {2: 1})]),
        ("p", "a"): P([]),
        ("p", "b"): P([(v(2), {2: 1})]),
    }
    return Wafa(
        ring,
        ("q", "p"),
        ("a", "b"),
        delta,
        Polynomial.variable(ring, 2, 1),
        {"q": v(1), "p": v(2)},
    )


def two_branch_wafa(ring: Semiring = NATURAL) -> Wafa:
    """A non-universal two-state automaton: reading ``a`` in the first state
    branches additively, so words pile up several runs (four on "aba").
    All weights and final outputs are one, making the behavior count runs.
    """
    v = ring.value
    P = lambda terms: Polynomial.from_terms(ring, 2, terms)
    delta = {
        ("q", "a"): P([(v(1), {1: 1}), (v(1), {2: 1})]),  # q + p
        ("q", "b"): P([(v(1), {1: 1, 2: 1})]),  # q * p
        ("p", "a"): P([(v(1), {2: 1})]),  # p
        ("p", "b"): P([(v(1), {1: 1})]),  # q
    }
    return Wafa(
        ring,
        ("q", "p"),
        ("a", "b"),
        delta,
        Polynomial.variable(ring, 2, 1),
        {"q": v(1), "p": v(1)},
    )


def marked_powers_wafa() -> Wafa:
    """Five states over {a, #, c, d} weighted in Boolean polynomials of one
    indeterminate x: the value on a^i # c^k d^l is x^(k*i), and zero on
    every other word.  Each ``c`` before the d-block multiplies one factor
    of x per leading ``a``.
    """
    ring = polynomial_ring(BOOLEAN, "x")
    one = ring.one
    x = ring.indeterminate(1)
    states = ("ql", "q1", "qa", "qc", "qd")
    P = lambda terms: Polynomial.from_terms(ring, 5, terms)
    zero = P([])
    vvar = lambda i: Polynomial.variable(ring, 5, i)
    delta = {
        ("ql", "a"): P([(one, {1: 1, 3: 1})]),  # ql * qa
        ("ql", "#"): vvar(2),
        ("ql", "c"): zero,
        ("ql", "d"): zero,
        ("q1", "a"): zero,
        ("q1", "#"): zero,
        ("q1", "c"): vvar(2),
        ("q1", "d"): vvar(5),
        ("qa", "a"): vvar(3),
        ("qa", "#"): vvar(4),
        ("qa", "c"): zero,
        ("qa", "d"): zero,
        ("qc", "a"): zero,
        ("qc", "#"): zero,
        ("qc", "c"): P([(x, {4: 1})]),  # x * qc
        ("qc", "d"): vvar(5),
        ("qd", "a"): zero,
        ("qd", "#"): zero,
        ("qd", "c"): zero,
        ("qd", "d"): vvar(5),
    }
    tau = {"ql": ring.zero, "q1": one, "qa": ring.zero, "qc": one, "qd": one}
    return Wafa(ring, states, ("a", "#", "c", "d"), delta, vvar(1), tau)


def collapse_marks_hom() -> WordHom:
    """Word homomorphism folding the two mark letters of the marked-powers
    automaton onto a single letter b."""
    return WordHom(
        ("a", "#", "c", "d"),
        ("a", "#", "b"),
        {"a": ("a",), "#": ("#",), "c": ("b",), "d": ("b",)},
    )
