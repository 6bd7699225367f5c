"""Weighted finite tree automata (bottom-up).

Transition tables are sparse: absent entries are zero.  The module also
provides the extension of the transition family to terms with variables
(used to read a whole homomorphism image as one transition), Hadamard
products, images under linear non-deleting tree homomorphisms, preimage
enumeration, and recognizable step functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import CarrierMismatchError, ShapeError
from .semiring import Semiring
from .trees import RankedAlphabet, Term, TreeHom, node, tree_var_stats

Entry = tuple[tuple[str, ...], str]  # (child states in order, target state)


@dataclass(frozen=True)
class Wfta:
    ring: Semiring
    states: tuple[str, ...]
    alphabet: RankedAlphabet
    delta: Mapping[str, Mapping[Entry, object]]
    lam: Mapping[str, object]

    def entries(self, sym: str) -> Mapping[Entry, object]:
        return self.delta.get(sym, {})

    def weight(self, sym: str, frm: tuple[str, ...], to: str):
        return self.entries(sym).get((frm, to), self.ring.zero)

    def root_weight(self, q: str):
        return self.lam.get(q, self.ring.zero)


def build(
    ring: Semiring,
    states: Sequence[str],
    alphabet: RankedAlphabet,
    entries: Iterable[tuple[str, Sequence[str], str, object]],
    lam: Mapping[str, object],
) -> Wfta:
    """Assemble a WFTA from (symbol, child states, target, weight) rows,
    summing duplicates and dropping zero entries."""
    states = tuple(states)
    known = set(states)
    delta: dict[str, dict[Entry, object]] = {}
    for sym, frm, to, w in entries:
        if not alphabet.has(sym):
            raise ShapeError(f"unknown symbol {sym!r}")
        frm = tuple(frm)
        if len(frm) != alphabet.rank(sym):
            raise ShapeError(f"entry for {sym!r} has {len(frm)} children, rank is {alphabet.rank(sym)}")
        for q in frm + (to,):
            if q not in known:
                raise ShapeError(f"unknown state {q!r}")
        ring.require(w)
        table = delta.setdefault(sym, {})
        key = (frm, to)
        w = ring.add(table[key], w) if key in table else w
        if ring.is_zero(w):
            table.pop(key, None)
        else:
            table[key] = w
    lam_clean = {}
    for q, w in lam.items():
        if q not in known:
            raise ShapeError(f"unknown state {q!r}")
        ring.require(w)
        if not ring.is_zero(w):
            lam_clean[q] = w
    return Wfta(ring, states, alphabet, delta, lam_clean)


def state_vector(B: Wfta, t: Term, memo: dict | None = None) -> dict[str, object]:
    """Sparse map state -> behavior on ``t`` (missing entries are zero)."""
    if t.is_var:
        raise ShapeError("state behavior is defined on closed terms")
    if memo is None:
        memo = {}
    cached = memo.get(t)
    if cached is not None:
        return cached
    if not B.alphabet.has(t.sym) or B.alphabet.rank(t.sym) != len(t.children):
        raise ShapeError(f"term does not fit the alphabet at symbol {t.sym!r}")
    kid_vecs = [state_vector(B, c, memo) for c in t.children]
    ring = B.ring
    out: dict[str, object] = {}
    for (frm, to), w in B.entries(t.sym).items():
        val = w
        dead = False
        for p, vec in zip(frm, kid_vecs):
            v = vec.get(p)
            if v is None:
                dead = True
                break
            val = ring.mul(val, v)
        if dead or ring.is_zero(val):
            continue
        out[to] = ring.add(out[to], val) if to in out else val
    out = {q: v for q, v in out.items() if not ring.is_zero(v)}
    memo[t] = out
    return out


def state_behavior(B: Wfta, q: str, t: Term):
    if q not in B.states:
        raise KeyError(f"unknown state {q!r}")
    return state_vector(B, t).get(q, B.ring.zero)


def behavior(B: Wfta, t: Term, memo: dict | None = None):
    vec = state_vector(B, t, memo)
    ring = B.ring
    return ring.sum(ring.mul(w, vec.get(q, ring.zero)) for q, w in B.lam.items())


# -- transition tables for terms with variables ------------------------------


@dataclass(frozen=True)
class DeltaPrime:
    """Transition table of a term read as a single ranked letter.

    ``occ_vars`` lists the variable index at each variable occurrence in
    lexicographic position order; table keys index child states by
    occurrence.  For a closed term the only key prefix is the empty tuple
    and the column equals the state behavior.
    """

    occ_vars: tuple[int, ...]
    entries: Mapping[Entry, object]


def delta_prime(B: Wfta, t: Term) -> DeltaPrime:
    ring = B.ring
    if t.is_var:
        return DeltaPrime((t.var,), {((q,), q): ring.one for q in B.states})
    if not B.alphabet.has(t.sym) or B.alphabet.rank(t.sym) != len(t.children):
        raise ShapeError(f"term does not fit the alphabet at symbol {t.sym!r}")
    kids = [delta_prime(B, c) for c in t.children]
    occ = tuple(v for k in kids for v in k.occ_vars)
    # child tables grouped by their target state
    grouped: list[dict[str, list[tuple[tuple[str, ...], object]]]] = []
    for k in kids:
        g: dict[str, list[tuple[tuple[str, ...], object]]] = {}
        for (frm, to), w in k.entries.items():
            g.setdefault(to, []).append((frm, w))
        grouped.append(g)
    table: dict[Entry, object] = {}
    for (frm, to), w in B.entries(t.sym).items():
        acc: list[tuple[tuple[str, ...], object]] = [((), w)]
        for i, p in enumerate(frm):
            rows = grouped[i].get(p)
            if not rows:
                acc = []
                break
            acc = [
                (tup + sub, ring.mul(val, wv))
                for tup, val in acc
                for sub, wv in rows
            ]
        for tup, val in acc:
            key = (tup, to)
            val = ring.add(table[key], val) if key in table else val
            table[key] = val
    table = {k: v for k, v in table.items() if not ring.is_zero(v)}
    return DeltaPrime(occ, table)


# -- products and homomorphic images ------------------------------------------


def _pair(a: str, b: str) -> str:
    return f"({a},{b})"


def hadamard(B1: Wfta, B2: Wfta) -> Wfta:
    """Pointwise product via the pair-state construction."""
    if B1.ring != B2.ring:
        raise CarrierMismatchError("Hadamard factors must share the carrier")
    if B1.alphabet != B2.alphabet:
        raise ShapeError("Hadamard factors must share the ranked alphabet")
    ring = B1.ring
    states = tuple(_pair(a, b) for a in B1.states for b in B2.states)
    rows = []
    for sym, _ in B1.alphabet.symbols:
        for (f1, t1), w1 in B1.entries(sym).items():
            for (f2, t2), w2 in B2.entries(sym).items():
                frm = tuple(_pair(a, b) for a, b in zip(f1, f2))
                rows.append((sym, frm, _pair(t1, t2), ring.mul(w1, w2)))
    lam = {}
    for q1, w1 in B1.lam.items():
        for q2, w2 in B2.lam.items():
            lam[_pair(q1, q2)] = ring.mul(w1, w2)
    return build(ring, states, B1.alphabet, rows, lam)


def constant_wfta(ring: Semiring, alphabet: RankedAlphabet, value) -> Wfta:
    """Single-state automaton mapping every tree to ``value``."""
    q = "u"
    rows = [(sym, (q,) * r, q, ring.one) for sym, r in alphabet.symbols]
    return build(ring, (q,), alphabet, rows, {q: value})


def is_boolean(B: Wfta) -> bool:
    return B.ring.tag == "boolean"


def to_weighted(L: Wfta, ring: Semiring) -> Wfta:
    """Characteristic embedding of a Boolean automaton into ``ring``."""
    if not is_boolean(L):
        raise ShapeError("expected a Boolean automaton")
    rows = [
        (sym, frm, to, ring.one)
        for sym, table in L.delta.items()
        for (frm, to), w in table.items()
        if w == 1
    ]
    lam = {q: ring.one for q, w in L.lam.items() if w == 1}
    return build(ring, L.states, L.alphabet, rows, lam)


def require_linear_nondeleting(h: TreeHom):
    for name, r in h.source.symbols:
        stats = tree_var_stats(h.image(name), r)
        if not stats.linear:
            raise ShapeError(
                f"homomorphism image of {name!r} is not linear non-deleting"
            )


def linear_hom_image(B: Wfta, h: TreeHom) -> Wfta:
    """Automaton for t |-> sum of B over the h-preimages of t.

    Each image term h(f) is simulated step by step: its internal
    positions get fresh states per transition entry of f, the weight is
    charged at the image root, and inner steps carry weight one.  Runs of
    the result then biject with (preimage, run-of-B) pairs.
    """
    if h.source != B.alphabet:
        raise ShapeError("homomorphism source must match the automaton alphabet")
    require_linear_nondeleting(h)
    ring = B.ring
    taken = set(B.states)
    states = list(B.states)
    rows = []
    for f, r in h.source.symbols:
        u = h.image(f)
        positions = u.positions()
        var_at = {p: u.subtree(p).var for p in positions if u.subtree(p).is_var}
        sym_pos = [p for p in positions if p not in var_at]
        for idx, ((frm, to), w) in enumerate(sorted(B.entries(f).items())):
            fresh = {}
            for p in sym_pos:
                if p == ():
                    continue
                name = f"~{f}.{idx}@{'.'.join(map(str, p))}"
                while name in taken:
                    name += "'"
                fresh[p] = name
                taken.add(name)
                states.append(name)

            def state_at(p: tuple[int, ...]) -> str:
                if p in var_at:
                    return frm[var_at[p] - 1]
                if p == ():
                    return to
                return fresh[p]

            for p in sym_pos:
                sub = u.subtree(p)
                kids = tuple(state_at(p + (i,)) for i in range(1, len(sub.children) + 1))
                rows.append((sub.sym, kids, state_at(p), w if p == () else ring.one))
    return build(ring, tuple(states), h.target, rows, dict(B.lam))


def match_image(image: Term, t: Term) -> dict[int, Term] | None:
    """Match a linear image term against ``t``; maps variables to subtrees."""
    if image.is_var:
        return {image.var: t}
    if t.is_var or image.sym != t.sym or len(image.children) != len(t.children):
        return None
    out: dict[int, Term] = {}
    for iu, it in zip(image.children, t.children):
        m = match_image(iu, it)
        if m is None:
            return None
        out.update(m)
    return out


def preimages(h: TreeHom, t: Term) -> list[Term]:
    """All source terms mapping onto ``t``; finite because h is linear
    non-deleting (every source node consumes at least one target node)."""
    require_linear_nondeleting(h)
    memo: dict[Term, list[Term]] = {}

    def pre(u: Term) -> list[Term]:
        if u in memo:
            return memo[u]
        out: list[Term] = []
        for f, r in h.source.symbols:
            m = match_image(h.image(f), u)
            if m is None:
                continue
            child_pres = [pre(m[i]) for i in range(1, r + 1)]
            for kids in itertools.product(*child_pres):
                out.append(node(f, *kids))
        memo[u] = out
        return out

    return pre(t)


def inverse_tree_hom(B: Wfta, h: TreeHom) -> Wfta:
    """Automaton for t |-> B(h(t)), for linear non-deleting h.

    Each source symbol adopts the extended transition table of its image;
    occurrence order is permuted back to child order.
    """
    if h.target != B.alphabet:
        raise ShapeError("homomorphism target must match the automaton alphabet")
    require_linear_nondeleting(h)
    rows = []
    for f, r in h.source.symbols:
        dp = delta_prime(B, h.image(f))
        slot_of_var = {v: i for i, v in enumerate(dp.occ_vars)}
        for (occ, to), w in dp.entries.items():
            frm = tuple(occ[slot_of_var[j]] for j in range(1, r + 1))
            rows.append((f, frm, to, w))
    return build(B.ring, B.states, h.source, rows, dict(B.lam))


# -- step functions -------------------------------------------------------------


@dataclass(frozen=True)
class StepFunction:
    """Finite weighted sum of characteristic functions of Boolean-recognizable
    tree languages.  The languages need not be disjoint."""

    ring: Semiring
    parts: tuple[tuple[Wfta, object], ...]

    def check(self):
        alphabets = {L.alphabet for L, _ in self.parts}
        if len(alphabets) > 1:
            raise ShapeError("step components must share one ranked alphabet")
        for L, w in self.parts:
            if not is_boolean(L):
                raise ShapeError("step languages must be Boolean automata")
            self.ring.require(w)


def step_eval(sf: StepFunction, t: Term):
    ring = sf.ring
    out = ring.zero
    for L, w in sf.parts:
        if behavior(L, t) == 1:
            out = ring.add(out, w)
    return out


def step_inverse_hom(sf: StepFunction, h: TreeHom) -> StepFunction:
    """Precompose a step function with a linear non-deleting homomorphism:
    each language is replaced by its preimage automaton."""
    require_linear_nondeleting(h)
    parts = tuple((inverse_tree_hom(L, h), w) for L, w in sf.parts)
    return StepFunction(sf.ring, parts)
