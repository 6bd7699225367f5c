"""Polynomial automata and the zeroness/equivalence decision over the rationals.

A polynomial automaton updates a register vector by per-letter polynomial
maps and reads the result through an output polynomial.  Its word order is
the reversal of the alternating-automaton order, which makes the two models
interchangeable representations.

Zeroness is decided by a stabilizing chain of polynomial ideals: starting
from the output polynomial, each round substitutes every letter's update
map into the current generators; generators already in the ideal are
dropped, and by Noetherianity the chain stabilizes.  The behavior is zero
on every word exactly when all generators vanish at the initial vector.
Ideal membership is tested against a reduced Groebner basis in graded
reverse lexicographic order.  The worst case is not elementary, so every
entry point takes a step budget and reports exhaustion as a resource
error rather than a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import CarrierError, ResourceLimitError, ShapeError
from .polynomial import Polynomial
from .semiring import RATIONAL, Semiring
from .wafa import Wafa

DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class Pa:
    ring: Semiring
    n: int
    alphabet: tuple[str, ...]
    alpha: tuple
    updates: Mapping[str, tuple[Polynomial, ...]]
    gamma: Polynomial

    def update(self, a: str) -> tuple[Polynomial, ...]:
        try:
            return self.updates[a]
        except KeyError as exc:
            raise KeyError(f"unknown letter {a!r}") from exc


def register_vector(A: Pa, word: Sequence[str]) -> tuple:
    vec = A.alpha
    for a in word:
        ps = A.update(a)
        vec = tuple(p.eval_at(vec) for p in ps)
    return vec


def behavior(A: Pa, word: Sequence[str]):
    return A.gamma.eval_at(register_vector(A, word))


def wafa_to_pa(A: Wafa) -> Pa:
    """Registers mirror the states: final weights initialize, transition
    polynomials update, the initial polynomial reads out.  The behaviors
    agree up to word reversal."""
    updates = {
        a: tuple(A.delta[(q, a)] for q in A.states) for a in A.alphabet
    }
    return Pa(
        A.ring,
        len(A.states),
        A.alphabet,
        tuple(A.tau[q] for q in A.states),
        updates,
        A.p0,
    )


def pa_to_wafa(B: Pa) -> Wafa:
    states = tuple(f"q{i + 1}" for i in range(B.n))
    delta = {
        (states[i], a): B.update(a)[i] for i in range(B.n) for a in B.alphabet
    }
    tau = {states[i]: B.alpha[i] for i in range(B.n)}
    return Wafa(B.ring, states, B.alphabet, delta, B.gamma, tau)


# -- Groebner bases over the rationals, grevlex order ---------------------------


class Budget:
    """Mutable step counter shared across basis completions and the chain."""

    def __init__(self, steps: int):
        if steps <= 0:
            raise ValueError("budget must be positive")
        self.left = steps

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise ResourceLimitError("unknown (resource limit)")


def _require_rational(ring: Semiring):
    if ring.tag != "rational":
        raise CarrierError(
            "ideal computations need the rational carrier, got " + ring.describe()
        )


def _dense(exps: tuple[tuple[int, int], ...], nvars: int) -> tuple[int, ...]:
    out = [0] * nvars
    for v, e in exps:
        out[v - 1] = e
    return tuple(out)


def _grevlex_key(exps: tuple[int, ...]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


def _to_dict(p: Polynomial) -> dict[tuple[int, ...], Fraction]:
    return {_dense(m.exps, p.nvars): m.coeff for m in p.monomials}


def _from_dict(nvars: int, d: Mapping[tuple[int, ...], Fraction]) -> Polynomial:
    return Polynomial.from_terms(
        RATIONAL,
        nvars,
        [(c, {i + 1: e for i, e in enumerate(exps) if e}) for exps, c in d.items()],
    )


def _leading(d: Mapping[tuple[int, ...], Fraction]) -> tuple[int, ...]:
    return max(d, key=_grevlex_key)


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _sub_scaled(
    p: dict[tuple[int, ...], Fraction],
    g: Mapping[tuple[int, ...], Fraction],
    coeff: Fraction,
    shift: tuple[int, ...],
):
    """p -= coeff * x^shift * g, in place."""
    for exps, c in g.items():
        key = tuple(x + y for x, y in zip(exps, shift))
        val = p.get(key, Fraction(0)) - coeff * c
        if val:
            p[key] = val
        else:
            p.pop(key, None)


def _normal_form(
    p: Mapping[tuple[int, ...], Fraction],
    basis: Sequence[dict[tuple[int, ...], Fraction]],
    leads: Sequence[tuple[tuple[int, ...], Fraction]],
    budget: Budget | None,
) -> dict[tuple[int, ...], Fraction]:
    rem: dict[tuple[int, ...], Fraction] = {}
    work = dict(p)
    while work:
        if budget is not None:
            budget.spend()
        lt = _leading(work)
        lc = work[lt]
        for g, (glt, glc) in zip(basis, leads):
            if _divides(glt, lt):
                shift = tuple(x - y for x, y in zip(lt, glt))
                _sub_scaled(work, g, lc / glc, shift)
                break
        else:
            rem[lt] = lc
            del work[lt]
    return rem


def _monic(d: dict[tuple[int, ...], Fraction]) -> dict[tuple[int, ...], Fraction]:
    if not d:
        return d
    lc = d[_leading(d)]
    if lc == 1:
        return d
    return {k: v / lc for k, v in d.items()}


def _buchberger(
    gens: list[dict[tuple[int, ...], Fraction]], nvars: int, budget: Budget
) -> list[dict[tuple[int, ...], Fraction]]:
    basis = [dict(g) for g in gens if g]
    leads = [(lt := _leading(g), g[lt]) for g in basis]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop()
        lti, _ = leads[i]
        ltj, _ = leads[j]
        lcm = tuple(max(a, b) for a, b in zip(lti, ltj))
        # product criterion: coprime leading monomials reduce to zero
        if lcm == tuple(a + b for a, b in zip(lti, ltj)):
            continue
        budget.spend()
        s: dict[tuple[int, ...], Fraction] = {}
        _sub_scaled(s, basis[j], Fraction(1) / leads[j][1], tuple(a - b for a, b in zip(lcm, ltj)))
        _sub_scaled(s, basis[i], Fraction(-1) / leads[i][1], tuple(a - b for a, b in zip(lcm, lti)))
        rem = _normal_form(s, basis, leads, budget)
        if rem:
            basis.append(rem)
            leads.append((lt := _leading(rem), rem[lt]))
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return _interreduce(basis, budget)


def _interreduce(
    basis: list[dict[tuple[int, ...], Fraction]], budget: Budget | None
) -> list[dict[tuple[int, ...], Fraction]]:
    """Minimalize and reduce a completed basis; input must already be a
    Groebner basis, so dropping covered leading terms is ideal-preserving."""
    kept: list[dict[tuple[int, ...], Fraction]] = []
    for g in sorted((g for g in basis if g), key=lambda g: _grevlex_key(_leading(g))):
        if not any(_divides(_leading(h), _leading(g)) for h in kept):
            kept.append(_monic(g))
    while True:
        changed = False
        nxt: list[dict[tuple[int, ...], Fraction]] = []
        for i, g in enumerate(kept):
            others = kept[:i] + kept[i + 1 :]
            if others:
                leads = [(lt := _leading(o), o[lt]) for o in others]
                rem = _monic(_normal_form(g, others, leads, budget))
            else:
                rem = g
            if rem != g:
                changed = True
            if rem:
                nxt.append(rem)
        kept = nxt
        if not changed:
            break
    kept.sort(key=lambda g: _grevlex_key(_leading(g)), reverse=True)
    return kept


@dataclass(frozen=True)
class GroebnerBasis:
    nvars: int
    polys: tuple[Polynomial, ...]
    order: str = "grevlex"

    @property
    def is_trivial(self) -> bool:
        """True for the unit ideal (basis {1})."""
        return any(len(p.monomials) == 1 and not p.monomials[0].exps for p in self.polys)


def groebner_basis(
    gens: Iterable[Polynomial], nvars: int | None = None, budget: Budget | None = None
) -> GroebnerBasis:
    gens = list(gens)
    if nvars is None:
        if not gens:
            raise ValueError("need nvars for an empty generator list")
        nvars = gens[0].nvars
    for g in gens:
        _require_rational(g.ring)
        if g.nvars != nvars:
            raise ShapeError("generators must share one variable count")
    if budget is None:
        budget = Budget(DEFAULT_BUDGET)
    basis = _buchberger([_to_dict(g) for g in gens], nvars, budget)
    return GroebnerBasis(nvars, tuple(_from_dict(nvars, g) for g in basis))


def ideal_member(p: Polynomial, gb: GroebnerBasis) -> bool:
    _require_rational(p.ring)
    if p.nvars != gb.nvars:
        raise ShapeError("variable counts differ")
    basis = [_to_dict(g) for g in gb.polys]
    leads = [(lt := _leading(g), g[lt]) for g in basis]
    return not _normal_form(_to_dict(p), basis, leads, None)


# -- zeroness and equivalence ----------------------------------------------------


@dataclass(frozen=True)
class ZeronessReport:
    zero: bool
    witness: tuple[str, ...] | None
    basis_size: int
    chain_depth: int


def pa_zeroness_report(A: Pa, budget: int = DEFAULT_BUDGET) -> ZeronessReport:
    """Decide whether the behavior is zero on every word.

    Raw chain generators correspond to words (letters in the order their
    substitutions were applied); a generator with a nonzero value at the
    initial vector immediately yields a witness word.
    """
    _require_rational(A.ring)
    tracker = Budget(budget)
    alpha = list(A.alpha)

    def vanishes(g: Polynomial) -> bool:
        return A.ring.is_zero(g.eval_at(alpha))

    if not vanishes(A.gamma):
        return ZeronessReport(False, (), 1, 0)
    frontier: list[tuple[Polynomial, tuple[str, ...]]] = []
    if not A.gamma.is_zero:
        frontier.append((A.gamma, ()))
    gb = groebner_basis([g for g, _ in frontier], A.n, tracker)
    depth = 0
    while frontier:
        tracker.spend()
        new: list[tuple[Polynomial, tuple[str, ...]]] = []
        for g, u in frontier:
            for a in A.alphabet:
                g2 = g.substitute(list(A.update(a)))
                if ideal_member(g2, gb):
                    continue
                u2 = u + (a,)
                if not vanishes(g2):
                    return ZeronessReport(
                        False, tuple(reversed(u2)), len(gb.polys), depth + 1
                    )
                new.append((g2, u2))
        if not new:
            break
        depth += 1
        gb = groebner_basis(list(gb.polys) + [g for g, _ in new], A.n, tracker)
        frontier = new
    return ZeronessReport(True, None, len(gb.polys), depth)


def pa_zeroness(A: Pa, budget: int = DEFAULT_BUDGET) -> bool:
    return pa_zeroness_report(A, budget).zero


def difference_pa(A: Pa, B: Pa) -> Pa:
    """Disjoint register union with output gamma_A - gamma_B; needs a
    carrier with subtraction, so it is gated to the rationals."""
    _require_rational(A.ring)
    _require_rational(B.ring)
    if tuple(sorted(A.alphabet)) != tuple(sorted(B.alphabet)):
        raise ShapeError("alphabets differ")
    n = A.n + B.n
    updates = {}
    for a in A.alphabet:
        ups = [p.shift_vars(0, n) for p in A.update(a)]
        ups += [p.shift_vars(A.n, n) for p in B.update(a)]
        updates[a] = tuple(ups)
    gamma = A.gamma.shift_vars(0, n) + B.gamma.shift_vars(A.n, n).scale(Fraction(-1))
    return Pa(A.ring, n, A.alphabet, tuple(A.alpha) + tuple(B.alpha), updates, gamma)


def pa_equivalence_report(A: Pa, B: Pa, budget: int = DEFAULT_BUDGET) -> ZeronessReport:
    return pa_zeroness_report(difference_pa(A, B), budget)


def pa_equivalence(A: Pa, B: Pa, budget: int = DEFAULT_BUDGET) -> bool:
    return pa_equivalence_report(A, B, budget).zero


def wafa_zeroness_report(A: Wafa, budget: int = DEFAULT_BUDGET) -> ZeronessReport:
    """Zeroness transfers through the register view: the behavior is zero
    on all words iff it is zero on all reversed words."""
    rep = pa_zeroness_report(wafa_to_pa(A), budget)
    witness = tuple(reversed(rep.witness)) if rep.witness is not None else None
    return ZeronessReport(rep.zero, witness, rep.basis_size, rep.chain_depth)


def wafa_zeroness(A: Wafa, budget: int = DEFAULT_BUDGET) -> bool:
    return wafa_zeroness_report(A, budget).zero


def wafa_equivalence_report(A: Wafa, B: Wafa, budget: int = DEFAULT_BUDGET) -> ZeronessReport:
    rep = pa_equivalence_report(wafa_to_pa(A), wafa_to_pa(B), budget)
    witness = tuple(reversed(rep.witness)) if rep.witness is not None else None
    return ZeronessReport(rep.zero, witness, rep.basis_size, rep.chain_depth)


def wafa_equivalence(A: Wafa, B: Wafa, budget: int = DEFAULT_BUDGET) -> bool:
    return wafa_equivalence_report(A, B, budget).zero
