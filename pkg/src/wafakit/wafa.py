"""Weighted alternating finite automata.

Transitions map a (state, letter) pair to a polynomial in the state
indeterminates: sums branch existentially, products universally.  Two
semantics are provided and must agree: the substitution semantics
(suffix-table evaluation of the transition polynomials) and the run-tree
semantics (sum over all run trees of the product of their label
coefficients).  The normal-form constructions (nice, purely polynomial,
equalized) preserve behavior on every word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ResourceLimitError, ShapeError
from .polynomial import Monomial, Polynomial, monomial_text
from .semiring import Semiring
from .trees import RankedAlphabet, Term, node

DEFAULT_RUN_CAP = 10**6


@dataclass(frozen=True)
class Wafa:
    """States are ordered; state i owns variable x_i in every polynomial."""

    ring: Semiring
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    delta: Mapping[tuple[str, str], Polynomial]
    p0: Polynomial
    tau: Mapping[str, object]

    @property
    def n(self) -> int:
        return len(self.states)

    def state_index(self, q: str) -> int:
        try:
            return self.states.index(q) + 1
        except ValueError as exc:
            raise KeyError(f"unknown state {q!r}") from exc

    def transition(self, q: str, a: str) -> Polynomial:
        if a not in self.alphabet:
            raise KeyError(f"unknown letter {a!r}")
        try:
            return self.delta[(q, a)]
        except KeyError as exc:
            raise KeyError(f"missing transition ({q!r}, {a!r})") from exc

    def final(self, q: str):
        try:
            return self.tau[q]
        except KeyError as exc:
            raise KeyError(f"missing final weight for {q!r}") from exc


def state_vector(A: Wafa, word: Sequence[str]) -> tuple:
    """State behaviors on ``word``, one entry per state, suffix-table order."""
    vec = tuple(A.final(q) for q in A.states)
    for a in reversed(list(word)):
        vec = tuple(A.transition(q, a).eval_at(vec) for q in A.states)
    return vec


def state_behavior(A: Wafa, q: str, word: Sequence[str]):
    return state_vector(A, word)[A.state_index(q) - 1]


def behavior(A: Wafa, word: Sequence[str]):
    return A.p0.eval_at(state_vector(A, word))


# -- diagnostics ---------------------------------------------------------


@dataclass(frozen=True)
class WafaDiagnostics:
    violations: tuple[str, ...]
    nice: bool
    proper: bool
    initial_is_first_state: bool
    purely_polynomial: bool
    equalized: bool
    common_degree: int | None
    universal: bool
    wfa_shape: bool

    @property
    def ok(self) -> bool:
        return not self.violations


def diagnose(A: Wafa) -> WafaDiagnostics:
    violations: list[str] = []
    n = A.n
    if len(set(A.states)) != n:
        violations.append("duplicate state names")
    if len(set(A.alphabet)) != len(A.alphabet):
        violations.append("duplicate letters")
    polys: list[Polynomial] = []
    for q in A.states:
        for a in A.alphabet:
            p = A.delta.get((q, a))
            if p is None:
                violations.append(f"missing transition ({q}, {a})")
                continue
            polys.append(p)
            if p.ring != A.ring:
                violations.append(f"transition ({q}, {a}) uses a different carrier")
            if p.nvars != n:
                violations.append(f"transition ({q}, {a}) has {p.nvars} variables, expected {n}")
    if A.p0.nvars != n:
        violations.append(f"initial polynomial has {A.p0.nvars} variables, expected {n}")
    if A.p0.ring != A.ring:
        violations.append("initial polynomial uses a different carrier")
    for q in A.states:
        if q not in A.tau:
            violations.append(f"missing final weight for {q}")
        elif not A.ring.check(A.tau[q]):
            violations.append(f"final weight of {q} is not a carrier value")

    if violations:
        return WafaDiagnostics(
            tuple(violations), False, False, False, False, False, None, False, False
        )

    all_polys = polys + [A.p0]
    proper = all(p.classify().is_proper_sum for p in all_polys)
    initial_first = A.p0 == Polynomial.variable(A.ring, n, 1)
    purely = all(A.ring.is_one(m.coeff) for p in all_polys for m in p.monomials)
    degrees = {m.degree for p in polys for m in p.monomials}
    equalized = len(degrees) <= 1
    common = degrees.pop() if len(degrees) == 1 else None
    universal = all(len(p.monomials) <= 1 for p in polys)
    wfa_shape = all(p.classify().is_linear_form for p in all_polys)
    return WafaDiagnostics(
        violations=(),
        nice=proper and initial_first,
        proper=proper,
        initial_is_first_state=initial_first,
        purely_polynomial=purely,
        equalized=equalized,
        common_degree=common,
        universal=universal,
        wfa_shape=wfa_shape,
    )


def require_nice(A: Wafa):
    d = diagnose(A)
    if not d.ok:
        raise ShapeError("invalid automaton: " + "; ".join(d.violations))
    if not d.nice:
        raise ShapeError("automaton is not nice")
    return d


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    k = 1
    while name in taken:
        k += 1
        name = f"{base}{k}"
    taken.add(name)
    return name


# -- normal forms ----------------------------------------------------------


def make_nice(A: Wafa) -> Wafa:
    """Equivalent automaton whose transitions are proper monomial sums and
    whose initial polynomial is the first state.

    Constants are displaced into deadlock states carrying them as final
    weights; a non-variable initial polynomial is folded into a fresh
    first state that simulates one step of every original state.
    """
    diag = diagnose(A)
    if not diag.ok:
        raise ShapeError("invalid automaton: " + "; ".join(diag.violations))
    if diag.nice:
        return A
    ring = A.ring
    A = _displace_constants(A)
    n = A.n
    if A.p0 == Polynomial.variable(ring, n, 1):
        return A

    taken = set(A.states)
    agg = _fresh_name("q0", taken)
    states = (agg,) + A.states
    m = n + 1
    delta: dict[tuple[str, str], Polynomial] = {}
    for a in A.alphabet:
        step = A.p0.substitute([A.delta[(q, a)] for q in A.states])
        delta[(agg, a)] = step.shift_vars(1, m)
        for q in A.states:
            delta[(q, a)] = A.delta[(q, a)].shift_vars(1, m)
    tau = {agg: A.p0.eval_at([A.tau[q] for q in A.states])}
    tau.update(A.tau)
    return Wafa(ring, states, A.alphabet, delta, Polynomial.variable(ring, m, 1), tau)


def _displace_constants(A: Wafa) -> Wafa:
    ring = A.ring
    n = A.n
    consts: list = []
    for p in [A.p0] + [A.delta[(q, a)] for q in A.states for a in A.alphabet]:
        c = p.constant_term
        if not ring.is_zero(c) and not any(ring.equal(c, d) for d in consts):
            consts.append(c)
    if not consts:
        return A
    taken = set(A.states)
    const_states = [_fresh_name(f"c[{ring.format_value(c)}]", taken) for c in consts]
    m = n + len(consts)

    def rewrite(p: Polynomial) -> Polynomial:
        terms = []
        for mono in p.monomials:
            if mono.exps:
                terms.append((mono.coeff, mono.exps_dict()))
            else:
                idx = next(i for i, c in enumerate(consts) if ring.equal(c, mono.coeff))
                terms.append((ring.one, {n + idx + 1: 1}))
        return Polynomial.from_terms(ring, m, terms)

    states = A.states + tuple(const_states)
    delta = {
        (q, a): rewrite(A.delta[(q, a)]) for q in A.states for a in A.alphabet
    }
    for i, qc in enumerate(const_states):
        for a in A.alphabet:
            delta[(qc, a)] = Polynomial.variable(ring, m, n + i + 1)
    tau = dict(A.tau)
    for qc, c in zip(const_states, consts):
        tau[qc] = c
    return Wafa(ring, states, A.alphabet, delta, rewrite(A.p0), tau)


def make_purely_polynomial(A: Wafa) -> Wafa:
    """Push every non-unit coefficient into a dedicated self-looping state,
    leaving all monomials with coefficient one.  Requires a nice input and
    preserves niceness; the result is generally not of WFA shape."""
    require_nice(A)
    ring = A.ring
    n = A.n
    coeffs: list = []
    for q in A.states:
        for a in A.alphabet:
            for mono in A.delta[(q, a)].monomials:
                if not ring.is_one(mono.coeff) and not any(
                    ring.equal(mono.coeff, c) for c in coeffs
                ):
                    coeffs.append(mono.coeff)
    if not coeffs:
        return A
    taken = set(A.states)
    coeff_states = [_fresh_name(f"w[{ring.format_value(c)}]", taken) for c in coeffs]
    m = n + len(coeffs)

    def rewrite(p: Polynomial) -> Polynomial:
        terms = []
        for mono in p.monomials:
            if ring.is_one(mono.coeff):
                terms.append((mono.coeff, mono.exps_dict()))
            else:
                idx = next(i for i, c in enumerate(coeffs) if ring.equal(c, mono.coeff))
                exps = mono.exps_dict()
                exps[n + idx + 1] = 1
                terms.append((ring.one, exps))
        return Polynomial.from_terms(ring, m, terms)

    states = A.states + tuple(coeff_states)
    delta = {(q, a): rewrite(A.delta[(q, a)]) for q in A.states for a in A.alphabet}
    for i, qs in enumerate(coeff_states):
        for a in A.alphabet:
            delta[(qs, a)] = Polynomial.variable(ring, m, n + i + 1)
    tau = dict(A.tau)
    for qs, c in zip(coeff_states, coeffs):
        tau[qs] = c
    p0 = A.p0.shift_vars(0, m)
    return Wafa(ring, states, A.alphabet, delta, p0, tau)


def equalize(A: Wafa) -> Wafa:
    """Pad every transition monomial with powers of a fresh always-one sink
    state until all monomials share the maximum degree.  Requires a nice
    input; preserves niceness and pure polynomiality.

    An automaton whose transitions are all zero has no monomial degree to
    equalize towards; the sink is then given degree one, which keeps the
    construction total and behavior-preserving.
    """
    require_nice(A)
    ring = A.ring
    n = A.n
    degrees = [
        m.degree for q in A.states for a in A.alphabet for m in A.delta[(q, a)].monomials
    ]
    d = max(degrees, default=0)
    if d == 0:
        d = 1
    taken = set(A.states)
    sink = _fresh_name("h1", taken)
    m = n + 1

    def pad(p: Polynomial) -> Polynomial:
        terms = []
        for mono in p.monomials:
            exps = mono.exps_dict()
            gap = d - mono.degree
            if gap:
                exps[m] = gap
            terms.append((mono.coeff, exps))
        return Polynomial.from_terms(ring, m, terms)

    states = A.states + (sink,)
    delta = {(q, a): pad(A.delta[(q, a)]) for q in A.states for a in A.alphabet}
    for a in A.alphabet:
        delta[(sink, a)] = Polynomial.from_terms(ring, m, [(ring.one, {m: d})])
    tau = dict(A.tau)
    tau[sink] = ring.one
    return Wafa(ring, states, A.alphabet, delta, A.p0.shift_vars(0, m), tau)


# -- run-tree semantics -------------------------------------------------------


@dataclass(frozen=True)
class RunSymbol:
    state: str
    coeff: object
    child_states: tuple[str, ...]
    is_leaf: bool


@dataclass(frozen=True)
class RunAlphabet:
    ring: Semiring
    alphabet: RankedAlphabet
    info: Mapping[str, RunSymbol]
    # symbol name chosen per (q, a, monomial), keyed for enumeration
    by_state_letter: Mapping[tuple[str, str], tuple[str, ...]]
    leaf_symbol: Mapping[str, str]


def _monomial_symbol(A: Wafa, q: str, mono: Monomial) -> str:
    return f"{q}|{monomial_text(A.ring, mono, A.states)}"


def run_alphabet(A: Wafa) -> RunAlphabet:
    """Symbols pair a state with a chosen transition monomial (rank = its
    degree) or with the state's final weight (rank 0)."""
    require_nice(A)
    ring = A.ring
    info: dict[str, RunSymbol] = {}
    symbols: list[tuple[str, int]] = []
    leaf_symbol: dict[str, str] = {}
    by_state_letter: dict[tuple[str, str], tuple[str, ...]] = {}
    for q in A.states:
        name = f"{q}|{ring.format_value(A.tau[q])}"
        leaf_symbol[q] = name
        info[name] = RunSymbol(q, A.tau[q], (), True)
        symbols.append((name, 0))
    for q in A.states:
        for a in A.alphabet:
            chosen = []
            for mono in A.delta[(q, a)].monomials:
                name = _monomial_symbol(A, q, mono)
                if name not in info:
                    kids = []
                    for v, e in mono.exps:
                        kids.extend([A.states[v - 1]] * e)
                    info[name] = RunSymbol(q, mono.coeff, tuple(kids), False)
                    symbols.append((name, mono.degree))
                chosen.append(name)
            by_state_letter[(q, a)] = tuple(chosen)
    return RunAlphabet(ring, RankedAlphabet.make(symbols), info, by_state_letter, leaf_symbol)


@dataclass(frozen=True)
class RunTree:
    term: Term
    symbols: RunAlphabet


def enumerate_runs(A: Wafa, word: Sequence[str], cap: int = DEFAULT_RUN_CAP) -> Iterable[RunTree]:
    """All run trees on ``word``; raises ResourceLimitError past ``cap``.

    Children of a monomial node are grouped by ascending state index, so
    the enumeration order is deterministic.
    """
    ra = run_alphabet(A)
    word = list(word)
    for a in word:
        if a not in A.alphabet:
            raise KeyError(f"unknown letter {a!r}")
    count = 0
    memo: dict[tuple[str, int], list[Term]] = {}

    def runs(q: str, i: int) -> list[Term]:
        nonlocal count
        key = (q, i)
        if key in memo:
            return memo[key]
        out: list[Term] = []
        if i == len(word):
            out.append(node(ra.leaf_symbol[q]))
            count += 1
        else:
            for name in ra.by_state_letter[(q, word[i])]:
                sym = ra.info[name]
                child_lists = [runs(p, i + 1) for p in sym.child_states]
                for kids in itertools.product(*child_lists):
                    out.append(node(name, *kids))
                    count += 1
                    if count > cap:
                        raise ResourceLimitError(f"run cap {cap} exceeded")
        memo[key] = out
        return out

    for t in runs(A.states[0], 0):
        yield RunTree(t, ra)


def run_weight(run: RunTree):
    """Product of the coefficients in all node labels, leaf weights included."""
    ring = run.symbols.ring
    out = ring.one

    def walk(t: Term):
        nonlocal out
        sym = run.symbols.info.get(t.sym)
        if sym is None:
            raise ShapeError(f"label {t.sym!r} is not a run symbol")
        if len(t.children) != run.symbols.alphabet.rank(t.sym):
            raise ShapeError(f"malformed run at {t.sym!r}")
        out = ring.mul(out, sym.coeff)
        for c in t.children:
            walk(c)

    walk(run.term)
    return out


def behavior_by_runs(A: Wafa, word: Sequence[str], cap: int = DEFAULT_RUN_CAP):
    """Sum of the weights of all runs; must agree with ``behavior``.

    Run trees share subtrees, so subtree weights are memoized across runs
    (the weight is a function of the labels alone).
    """
    ring = A.ring
    weights: dict[Term, object] = {}

    def weight(t: Term, info):
        w = weights.get(t)
        if w is None:
            w = info[t.sym].coeff
            for c in t.children:
                w = ring.mul(w, weight(c, info))
            weights[t] = w
        return w

    total = ring.zero
    for run in enumerate_runs(A, word, cap):
        total = ring.add(total, weight(run.term, run.symbols.info))
    return total
