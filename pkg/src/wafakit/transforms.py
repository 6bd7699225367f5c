"""Constructive translations between the three automaton models.

* WAFA -> WFTA over the full r-ary word alphabet (after normalizing to a
  nice, equalized automaton of monomial degree r).
* WFTA composed with a word-to-tree homomorphism -> WAFA.
* Inverse word homomorphisms of WAFA behaviors, via the two above.
* The decomposition of a WFTA behavior into a relabeling homomorphism, a
  Boolean control language, and a single-state weight automaton, plus the
  reverse composition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ShapeError
from .polynomial import Polynomial
from .semiring import BOOLEAN
from .trees import (
    RankedAlphabet,
    Term,
    TreeHom,
    WordHom,
    WordToTreeHom,
    compose_word_then_tree,
    generic_hom,
    node,
    var,
)
from . import wafa as wafa_mod
from . import wfta as wfta_mod
from .wafa import Wafa, diagnose, equalize, make_nice
from .wfta import Wfta, build, delta_prime, hadamard, linear_hom_image, to_weighted


@dataclass(frozen=True)
class TreeTranslation:
    """A WAFA rendered as a tree automaton reading full r-ary word trees."""

    wfta: Wfta
    rank: int
    normalized: Wafa
    hom: WordToTreeHom


def wafa_to_wfta(A: Wafa) -> TreeTranslation:
    """Translate so that the word behavior equals the tree behavior on the
    full r-ary tree of the word; equality even holds statewise against the
    normalized automaton.

    Each degree-r monomial becomes one transition whose child states are
    the monomial's states in nondecreasing state order; any other ordering
    keeps weight zero so that runs stay in bijection.
    """
    N = A
    d = diagnose(N)
    if not d.nice:
        N = make_nice(N)
        d = diagnose(N)
    if not d.equalized:
        N = equalize(N)
        d = diagnose(N)
    r = d.common_degree or 1
    ring = N.ring
    hom = generic_hom(N.alphabet, r)
    marker = hom.end.sym
    rows = []
    for q in N.states:
        rows.append((marker, (), q, N.tau[q]))
        for a in N.alphabet:
            for mono in N.delta[(q, a)].monomials:
                frm = []
                for v, e in mono.exps:
                    frm.extend([N.states[v - 1]] * e)
                rows.append((a, tuple(frm), q, mono.coeff))
    B = build(ring, N.states, hom.target, rows, {N.states[0]: ring.one})
    return TreeTranslation(B, r, N, hom)


def wfta_hom_to_wafa(B: Wfta, h: WordToTreeHom) -> Wafa:
    """WAFA for w |-> B(h(w)).

    Letter images are read as single ranked letters through the extended
    transition table; every table entry becomes a transition monomial in
    the entry's child states.
    """
    if h.target != B.alphabet:
        raise ShapeError("homomorphism target must match the automaton alphabet")
    ring = B.ring
    n = len(B.states)
    index = {q: i + 1 for i, q in enumerate(B.states)}
    delta = {}
    for a in h.letters:
        dp = delta_prime(B, h.image(a))
        for q in B.states:
            terms = []
            for (occ, to), w in dp.entries.items():
                if to != q:
                    continue
                exps: dict[int, int] = {}
                for p in occ:
                    exps[index[p]] = exps.get(index[p], 0) + 1
                terms.append((w, exps))
            delta[(q, a)] = Polynomial.from_terms(ring, n, terms)
    end = wfta_mod.state_vector(B, h.end)
    tau = {q: end.get(q, ring.zero) for q in B.states}
    p0 = Polynomial.from_terms(
        ring, n, [(w, {index[q]: 1}) for q, w in B.lam.items()]
    )
    return Wafa(ring, B.states, tuple(h.letters), delta, p0, tau)


def wafa_inverse_word_hom(A: Wafa, hw: WordHom) -> Wafa:
    """WAFA for v |-> A(hw(v)); hw may delete letters."""
    for b in hw.target:
        if b not in A.alphabet:
            raise ShapeError(f"image letter {b!r} outside the automaton alphabet")
    tv = wafa_to_wfta(A)
    composed = compose_word_then_tree(hw, tv.hom)
    return wfta_hom_to_wafa(tv.wfta, composed)


def word_hom_image_eval(A: Wafa, hw: WordHom, word: Sequence[str]):
    """Sum of A over the hw-preimages of ``word`` (semantic oracle only;
    behaviors are not closed under homomorphic images in general)."""
    if not hw.non_deleting:
        raise ShapeError("image sums need a non-deleting homomorphism")
    word = tuple(word)
    memo: dict[int, list[tuple[str, ...]]] = {}

    def pre(i: int) -> list[tuple[str, ...]]:
        if i in memo:
            return memo[i]
        if i == len(word):
            out = [()]
        else:
            out = []
            for c in hw.source:
                img = hw.image(c)
                if word[i : i + len(img)] == img:
                    out.extend((c,) + rest for rest in pre(i + len(img)))
        memo[i] = out
        return out

    return A.ring.sum(wafa_mod.behavior(A, v) for v in pre(0))


# -- decomposition into homomorphism, control language, and weights ------------


@dataclass(frozen=True)
class NivatDecomposition:
    """Behavior = preimage-sum under ``relabel`` of (weights ⊙ language).

    ``lam_alphabet`` pairs every possible transition shape (child states,
    symbol, target-or-final-target) into one annotated letter; ``relabel``
    forgets the annotation.  ``language`` is a Boolean automaton accepting
    exactly the consistently annotated trees; ``weights`` is single-state
    and multiplies the annotated transition weights.
    """

    lam_alphabet: RankedAlphabet
    relabel: TreeHom
    language: Wfta
    weights: Wfta
    annotations: Mapping[str, tuple[tuple[str, ...], str, str]]


_FIN = "!fin"


def nivat_decompose(B: Wfta) -> NivatDecomposition:
    ring = B.ring
    states = B.states
    taken = set(states)
    fins = {}
    for q in states:
        name = q + _FIN
        while name in taken:
            name += "'"
        taken.add(name)
        fins[q] = name
    # every annotation target, paired with its underlying state and root flag
    targets = [(q, q, False) for q in states] + [(fins[q], q, True) for q in states]

    letters: list[tuple[str, int]] = []
    annotations: dict[str, tuple[tuple[str, ...], str, str]] = {}
    images: dict[str, Term] = {}
    lang_rows = []
    weight_rows = []
    w_state = "w"

    for sym, r in B.alphabet.symbols:
        for qbar in itertools.product(states, repeat=r):
            for p, base, is_fin in targets:
                name = f"[{'.'.join(qbar)}|{sym}|{p}]"
                letters.append((name, r))
                annotations[name] = (qbar, sym, p)
                images[name] = node(sym, *[var(i + 1) for i in range(r)])
                lang_rows.append((name, qbar, p, 1))
                w = B.weight(sym, qbar, base)
                if is_fin:
                    w = ring.mul(w, B.root_weight(base))
                if not ring.is_zero(w):
                    weight_rows.append((name, (w_state,) * r, w_state, w))

    lam_alphabet = RankedAlphabet.make(letters)
    relabel = TreeHom(lam_alphabet, B.alphabet, images)
    language = build(
        BOOLEAN,
        tuple(p for p, _, _ in targets),
        lam_alphabet,
        lang_rows,
        {fins[q]: 1 for q in states},
    )
    weights = build(ring, (w_state,), lam_alphabet, weight_rows, {w_state: ring.one})
    return NivatDecomposition(lam_alphabet, relabel, language, weights, annotations)


def nivat_recompose(d: NivatDecomposition) -> Wfta:
    """Compose the parts back into one automaton: Hadamard the weights with
    the characteristic automaton of the language, then push through the
    relabeling homomorphism."""
    if len(d.weights.states) != 1:
        raise ShapeError("weight automaton must have exactly one state")
    if not wfta_mod.is_boolean(d.language):
        raise ShapeError("control language must be a Boolean automaton")
    product = hadamard(d.weights, to_weighted(d.language, d.weights.ring))
    return linear_hom_image(product, d.relabel)


def hadamard_language_value(d: NivatDecomposition, t: Term):
    """(weights ⊙ language)(t) for an annotated tree."""
    ring = d.weights.ring
    if wfta_mod.behavior(d.language, t) != 1:
        return ring.zero
    return wfta_mod.behavior(d.weights, t)


def preimage_sum(d: NivatDecomposition, t: Term):
    """Sum of (weights ⊙ language) over the relabel-preimages of ``t``.

    Enumerates annotated preimages depth-first, pruning branches whose
    partial product is already zero; pruning is exact because zero
    annihilates in every semiring.  The full preimage set is astronomically
    large even for small trees, so the unpruned walk is only feasible on
    tiny inputs (see the preimage-based tests).
    """
    ring = d.weights.ring
    # index annotated letters by (symbol, annotation target)
    by_sym_target: dict[tuple[str, str], list[tuple[tuple[str, ...], object]]] = {}
    for name, (qbar, sym, p) in d.annotations.items():
        for _, wv in d.weights.entries(name).items():
            by_sym_target.setdefault((sym, p), []).append((qbar, wv))

    memo: dict[tuple[Term, str], object] = {}

    def total(u: Term, p: str):
        key = (u, p)
        if key in memo:
            return memo[key]
        out = ring.zero
        for qbar, w in by_sym_target.get((u.sym, p), []):
            if len(qbar) != len(u.children):
                continue
            val = w
            for child, q in zip(u.children, qbar):
                val = ring.mul(val, total(child, q))
                if ring.is_zero(val):
                    break
            out = ring.add(out, val)
        memo[key] = out
        return out

    # root labels must carry accepting annotations of the control language
    return ring.sum(total(t, fin) for fin in d.language.lam)


@dataclass(frozen=True)
class WafaNivat:
    rank: int
    decomposition: NivatDecomposition
    translation: TreeTranslation


def nivat_wafa_decompose(A: Wafa) -> WafaNivat:
    """Decompose a WAFA behavior: words enter through the full r-ary tree
    encoding, then the tree-level decomposition applies."""
    tv = wafa_to_wfta(A)
    return WafaNivat(tv.rank, nivat_decompose(tv.wfta), tv)
