"""Ranked alphabets, terms with variables, positions, and homomorphisms.

Positions are tuples of 1-based child indices; the empty tuple is the
root.  Tuple comparison gives exactly the lexicographic order on
position words, and pre-order traversal emits positions in that order.
Multi-position substitution is applied in descending lexicographic
order, so earlier positions stay valid while later ones are rewritten.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ShapeError

Position = tuple[int, ...]


class Term:
    """A ranked term: either a symbol node with children or a variable x_i."""

    __slots__ = ("sym", "var", "children", "_hash")

    def __init__(self, sym: str | None, var: int | None, children: tuple["Term", ...] = ()):
        if (sym is None) == (var is None):
            raise ValueError("a term is either a symbol node or a variable")
        if var is not None and children:
            raise ValueError("variables are leaves")
        object.__setattr__(self, "sym", sym)
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "_hash", hash((sym, var, children)))

    def __setattr__(self, *a):
        raise AttributeError("Term is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, Term)
            and self._hash == other._hash
            and self.sym == other.sym
            and self.var == other.var
            and self.children == other.children
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Term({self.to_text()})"

    @property
    def is_var(self) -> bool:
        return self.var is not None

    def to_text(self) -> str:
        if self.is_var:
            return f"x{self.var}"
        if not self.children:
            return self.sym
        return f"{self.sym}({','.join(c.to_text() for c in self.children)})"

    # -- structure -------------------------------------------------------

    def positions(self) -> list[Position]:
        out: list[Position] = []

        def walk(t: Term, pos: Position):
            out.append(pos)
            for i, c in enumerate(t.children, start=1):
                walk(c, pos + (i,))

        walk(self, ())
        return out

    def node_count(self) -> int:
        return 1 + sum(c.node_count() for c in self.children)

    def depth(self) -> int:
        if not self.children:
            return 0
        return 1 + max(c.depth() for c in self.children)

    def label(self, pos: Position):
        t = self.subtree(pos)
        return t.var if t.is_var else t.sym

    def subtree(self, pos: Position) -> "Term":
        t = self
        for i in pos:
            if t.is_var or not 1 <= i <= len(t.children):
                raise ValueError(f"invalid position {pos}")
            t = t.children[i - 1]
        return t

    def substitute_at(self, pos: Position, rep: "Term") -> "Term":
        if not pos:
            return rep
        i, rest = pos[0], pos[1:]
        if self.is_var or not 1 <= i <= len(self.children):
            raise ValueError(f"invalid position {pos}")
        kids = list(self.children)
        kids[i - 1] = kids[i - 1].substitute_at(rest, rep)
        return Term(self.sym, None, tuple(kids))

    def substitute_positions(self, positions: Iterable[Position], reps: Sequence["Term"]) -> "Term":
        """Replace the i-th position (lexicographic order) by reps[i]."""
        ordered = sorted(positions)
        if len(ordered) != len(set(ordered)):
            raise ValueError("duplicate positions")
        if len(ordered) != len(reps):
            raise ValueError(f"{len(ordered)} positions but {len(reps)} replacements")
        known = set(self.positions())
        for p in ordered:
            if p not in known:
                raise ValueError(f"invalid position {p}")
        out = self
        for p, rep in sorted(zip(ordered, reps), reverse=True):
            out = out.substitute_at(p, rep)
        return out

    def var_positions(self, i: int | None = None) -> list[Position]:
        return [
            p
            for p in self.positions()
            if self.subtree(p).is_var and (i is None or self.subtree(p).var == i)
        ]

    def substitute_var(self, i: int, rep: "Term") -> "Term":
        """Replace every occurrence of x_i by ``rep``."""
        pos = self.var_positions(i)
        return self.substitute_positions(pos, [rep] * len(pos))

    def substitute_var_tuple(self, i: int, reps: Sequence["Term"]) -> "Term":
        """Replace the occurrences of x_i, lexicographic order, by reps."""
        return self.substitute_positions(self.var_positions(i), reps)

    def substitute_vars(self, reps: Sequence["Term"]) -> "Term":
        """Simultaneously replace x_1..x_n by reps; capture-free."""
        mapping: dict[Position, Term] = {}
        for p in self.var_positions():
            v = self.subtree(p).var
            if v <= len(reps):
                mapping[p] = reps[v - 1]
        ordered = sorted(mapping)
        return self.substitute_positions(ordered, [mapping[p] for p in ordered])


def node(sym: str, *children: Term) -> Term:
    return Term(sym, None, tuple(children))


def var(i: int) -> Term:
    if i < 1:
        raise ValueError("variables are 1-based")
    return Term(None, i)


@dataclass(frozen=True)
class RankedAlphabet:
    symbols: tuple[tuple[str, int], ...]

    def __post_init__(self):
        names = [n for n, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol names")
        for _, r in self.symbols:
            if r < 0:
                raise ValueError("negative rank")

    @staticmethod
    def make(symbols: Iterable[tuple[str, int]]) -> "RankedAlphabet":
        return RankedAlphabet(tuple(symbols))

    def rank(self, name: str) -> int:
        for n, r in self.symbols:
            if n == name:
                return r
        raise KeyError(name)

    def has(self, name: str) -> bool:
        return any(n == name for n, _ in self.symbols)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.symbols)

    @property
    def max_rank(self) -> int:
        return max((r for _, r in self.symbols), default=0)

    def of_rank(self, r: int) -> tuple[str, ...]:
        return tuple(n for n, k in self.symbols if k == r)


def check_term(alphabet: RankedAlphabet, t: Term, nvars: int = 0):
    """Raise if ``t`` is not a well-ranked term over alphabet + x_1..x_nvars."""
    if t.is_var:
        if t.var > nvars:
            raise ShapeError(f"variable x{t.var} exceeds arity {nvars}")
        return
    if not alphabet.has(t.sym):
        raise ShapeError(f"unknown symbol {t.sym!r}")
    if alphabet.rank(t.sym) != len(t.children):
        raise ShapeError(
            f"symbol {t.sym!r} has rank {alphabet.rank(t.sym)}, got {len(t.children)} children"
        )
    for c in t.children:
        check_term(alphabet, c, nvars)


@dataclass(frozen=True)
class VarStats:
    r: int
    non_deleting: bool
    linear: bool


def tree_var_stats(t: Term, n: int) -> VarStats:
    """Counts of variable-labeled nodes and the non-deleting/linear flags
    with respect to variables x_1..x_n."""
    counts = [0] * (n + 1)
    symbols = 0

    def walk(u: Term):
        nonlocal symbols
        if u.is_var:
            if u.var <= n:
                counts[u.var] += 1
        else:
            symbols += 1
        for c in u.children:
            walk(c)

    walk(t)
    r = sum(counts[1:])
    non_deleting = symbols >= 1 and all(counts[i] >= 1 for i in range(1, n + 1))
    linear = non_deleting and all(counts[i] <= 1 for i in range(1, n + 1))
    return VarStats(r=r, non_deleting=non_deleting, linear=linear)


@dataclass(frozen=True)
class TreeHom:
    """Symbol-wise substitution h: T_source -> T_target.

    The image of a rank-r symbol is a term over the target alphabet and
    variables x_1..x_r.
    """

    source: RankedAlphabet
    target: RankedAlphabet
    images: Mapping[str, Term]

    def image(self, sym: str) -> Term:
        try:
            return self.images[sym]
        except KeyError as exc:
            raise ShapeError(f"no image for symbol {sym!r}") from exc

    def check(self):
        for name, r in self.source.symbols:
            check_term(self.target, self.image(name), r)

    def apply(self, t: Term) -> Term:
        if t.is_var:
            raise ShapeError("tree homomorphisms apply to closed terms")
        kids = [self.apply(c) for c in t.children]
        return self.image(t.sym).substitute_vars(kids)

    def is_non_deleting(self) -> bool:
        return all(
            tree_var_stats(self.image(n), r).non_deleting for n, r in self.source.symbols
        )

    def is_linear(self) -> bool:
        return all(tree_var_stats(self.image(n), r).linear for n, r in self.source.symbols)


def identity_hom(alphabet: RankedAlphabet) -> TreeHom:
    images = {
        n: node(n, *[var(i + 1) for i in range(r)]) for n, r in alphabet.symbols
    }
    return TreeHom(alphabet, alphabet, images)


@dataclass(frozen=True)
class WordToTreeHom:
    """Reads a word as a unary tree and emits a tree over ``target``.

    Each letter image may use x_1 with any multiplicity (including zero);
    the end marker has a closed image.
    """

    letters: tuple[str, ...]
    target: RankedAlphabet
    images: Mapping[str, Term]
    end: Term

    def image(self, letter: str) -> Term:
        try:
            return self.images[letter]
        except KeyError as exc:
            raise ShapeError(f"no image for letter {letter!r}") from exc

    def check(self):
        check_term(self.target, self.end, 0)
        for a in self.letters:
            check_term(self.target, self.image(a), 1)

    def apply_word(self, word: Sequence[str]) -> Term:
        out = self.end
        for a in reversed(list(word)):
            out = self.image(a).substitute_var(1, out)
        return out


END_MARKER = "#"


def end_marker_for(letters: Sequence[str]) -> str:
    marker = END_MARKER
    while marker in letters:
        marker += "'"
    return marker


def generic_alphabet(letters: Sequence[str], r: int) -> RankedAlphabet:
    marker = end_marker_for(letters)
    return RankedAlphabet.make([(a, r) for a in letters] + [(marker, 0)])


def generic_hom(letters: Sequence[str], r: int) -> WordToTreeHom:
    """Map each word w to the full r-ary tree with letters along every path,
    closed off by a rank-zero end marker."""
    if r < 1:
        raise ValueError("generic homomorphism needs rank >= 1")
    letters = tuple(letters)
    alphabet = generic_alphabet(letters, r)
    images = {a: node(a, *[var(1)] * r) for a in letters}
    return WordToTreeHom(letters, alphabet, images, node(end_marker_for(letters)))


@dataclass(frozen=True)
class WordHom:
    """Word homomorphism; images may be empty (deleting)."""

    source: tuple[str, ...]
    target: tuple[str, ...]
    images: Mapping[str, tuple[str, ...]]

    def image(self, letter: str) -> tuple[str, ...]:
        try:
            return self.images[letter]
        except KeyError as exc:
            raise ShapeError(f"no image for letter {letter!r}") from exc

    def check(self):
        for a in self.source:
            for b in self.image(a):
                if b not in self.target:
                    raise ShapeError(f"image letter {b!r} outside target alphabet")

    def apply(self, word: Sequence[str]) -> tuple[str, ...]:
        out: list[str] = []
        for a in word:
            out.extend(self.image(a))
        return tuple(out)

    @property
    def non_deleting(self) -> bool:
        return all(len(self.image(a)) >= 1 for a in self.source)


def compose_word_then_tree(word_hom: WordHom, tree_hom: WordToTreeHom) -> WordToTreeHom:
    """The word-to-tree homomorphism w |-> tree_hom(word_hom(w))."""
    for b in word_hom.target:
        if b not in tree_hom.letters:
            raise ShapeError(f"letter {b!r} missing from the tree homomorphism")
    images = {}
    for a in word_hom.source:
        ctx = var(1)
        for b in reversed(word_hom.image(a)):
            ctx = tree_hom.image(b).substitute_var(1, ctx)
        images[a] = ctx
    return WordToTreeHom(tuple(word_hom.source), tree_hom.target, images, tree_hom.end)


def enumerate_terms(alphabet: RankedAlphabet, max_nodes: int) -> list[Term]:
    """All closed terms with at most ``max_nodes`` nodes, smallest first."""
    by_size: dict[int, list[Term]] = {}
    for size in range(1, max_nodes + 1):
        acc: list[Term] = []
        for name, r in alphabet.symbols:
            if r == 0:
                if size == 1:
                    acc.append(node(name))
                continue
            for split in _compositions(size - 1, r):
                for kids in itertools.product(*[by_size.get(s, []) for s in split]):
                    acc.append(node(name, *kids))
        by_size[size] = acc
    out: list[Term] = []
    for size in range(1, max_nodes + 1):
        out.extend(by_size[size])
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
