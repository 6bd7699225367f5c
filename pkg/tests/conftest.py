"""Shared helpers: deterministic random instances and small enumerations."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from wafakit.polynomial import Polynomial
from wafakit.semiring import BOOLEAN, Semiring
from wafakit.trees import RankedAlphabet, TreeHom, WordHom, node, var
from wafakit.wafa import Wafa
from wafakit import wfta as wfta_mod


def all_words(letters, max_len):
    out = [()]
    layer = [()]
    for _ in range(max_len):
        layer = [w + (a,) for w in layer for a in letters]
        out.extend(layer)
    return out


def random_value(rng: random.Random, ring: Semiring, nonzero=False):
    if ring is BOOLEAN or ring.tag == "boolean":
        return 1 if nonzero else rng.randrange(2)
    if ring.tag == "natural":
        return rng.randrange(1 if nonzero else 0, 4)
    if ring.tag == "rational":
        num = rng.randint(-3, 3)
        if nonzero and num == 0:
            num = 1
        return Fraction(num, rng.randint(1, 3))
    raise ValueError(f"no random values for {ring.describe()}")


def random_polynomial(
    rng: random.Random,
    ring: Semiring,
    nvars: int,
    max_monos=2,
    max_degree=2,
    proper=True,
    allow_zero=True,
):
    count = rng.randrange(0 if allow_zero else 1, max_monos + 1)
    terms = []
    for _ in range(count):
        degree = rng.randrange(1 if proper else 0, max_degree + 1)
        exps: dict[int, int] = {}
        for _ in range(degree):
            v = rng.randrange(1, nvars + 1)
            exps[v] = exps.get(v, 0) + 1
        terms.append((random_value(rng, ring, nonzero=True), exps))
    return Polynomial.from_terms(ring, nvars, terms)


def random_nice_wafa(rng: random.Random, ring: Semiring, max_states=3, letters=("a", "b"), max_degree=2):
    n = rng.randrange(1, max_states + 1)
    states = tuple(f"s{i}" for i in range(1, n + 1))
    delta = {}
    for q in states:
        for a in letters:
            delta[(q, a)] = random_polynomial(rng, ring, n, max_degree=max_degree, proper=True)
    # keep at least one non-empty transition so the automaton reads something
    if all(p.is_zero for p in delta.values()):
        delta[(states[0], letters[0])] = Polynomial.variable(ring, n, 1)
    tau = {q: random_value(rng, ring) for q in states}
    return Wafa(ring, states, tuple(letters), delta, Polynomial.variable(ring, n, 1), tau)


def random_wafa(rng: random.Random, ring: Semiring, max_states=3, letters=("a", "b"), max_degree=2):
    """Arbitrary-shape automaton: constants allowed in transitions and an
    arbitrary initial polynomial."""
    n = rng.randrange(1, max_states + 1)
    states = tuple(f"s{i}" for i in range(1, n + 1))
    delta = {}
    for q in states:
        for a in letters:
            delta[(q, a)] = random_polynomial(rng, ring, n, max_degree=max_degree, proper=False)
    p0 = random_polynomial(rng, ring, n, max_monos=2, max_degree=max_degree, proper=False, allow_zero=False)
    tau = {q: random_value(rng, ring) for q in states}
    return Wafa(ring, states, tuple(letters), delta, p0, tau)


def random_wfta(rng: random.Random, ring: Semiring, alphabet: RankedAlphabet, max_states=2, density=0.5):
    n = rng.randrange(1, max_states + 1)
    states = tuple(f"t{i}" for i in range(1, n + 1))
    rows = []
    for sym, r in alphabet.symbols:
        for frm in itertools.product(states, repeat=r):
            for to in states:
                if rng.random() < density:
                    rows.append((sym, frm, to, random_value(rng, ring, nonzero=True)))
    lam = {q: random_value(rng, ring) for q in states}
    return wfta_mod.build(ring, states, alphabet, rows, lam)


def random_closed_term(rng: random.Random, alphabet: RankedAlphabet, budget=2):
    leaves = alphabet.of_rank(0)
    growers = [(s, r) for s, r in alphabet.symbols if r >= 1]
    if budget <= 0 or not growers or rng.random() < 0.6:
        return node(rng.choice(leaves))
    sym, r = rng.choice(growers)
    return node(sym, *[random_closed_term(rng, alphabet, budget - 1) for _ in range(r)])


def random_linear_context(rng: random.Random, alphabet: RankedAlphabet, k: int, budget=2):
    """A term over ``alphabet`` using x_1..x_k exactly once each, with at
    least one symbol; used to build linear non-deleting homomorphism images.
    Needs a symbol of rank >= 2 whenever k >= 2."""

    def build(vars_list: list[int], budget: int):
        if not vars_list:
            return random_closed_term(rng, alphabet, budget)
        need = 2 if len(vars_list) > 1 else 1
        candidates = [(s, r) for s, r in alphabet.symbols if r >= need]
        if not candidates:
            raise ValueError("alphabet cannot host a linear context of this arity")
        sym, r = rng.choice(candidates)
        groups: list[list[int]] = [[] for _ in range(r)]
        for v in vars_list:
            groups[rng.randrange(r)].append(v)
        while r >= 2 and len(vars_list) > 1 and any(len(g) == len(vars_list) for g in groups):
            groups = [[] for _ in range(r)]
            for v in vars_list:
                groups[rng.randrange(r)].append(v)
        kids = []
        for g in groups:
            if len(g) == 1 and (budget <= 0 or rng.random() < 0.6):
                kids.append(var(g[0]))
            else:
                kids.append(build(g, budget - 1))
        return node(sym, *kids)

    order = list(range(1, k + 1))
    rng.shuffle(order)
    return build(order, budget)


def random_linear_hom(rng: random.Random, source: RankedAlphabet, target: RankedAlphabet) -> TreeHom:
    images = {}
    for sym, r in source.symbols:
        images[sym] = random_linear_context(rng, target, r)
    return TreeHom(source, target, images)


def random_word_hom(rng: random.Random, source, target, max_image=2, allow_empty=True) -> WordHom:
    images = {}
    for a in source:
        length = rng.randrange(0 if allow_empty else 1, max_image + 1)
        images[a] = tuple(rng.choice(target) for _ in range(length))
    return WordHom(tuple(source), tuple(target), images)
