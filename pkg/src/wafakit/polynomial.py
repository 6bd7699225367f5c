"""Sparse multivariate polynomials over a semiring.

One type serves two roles: transition polynomials in state indeterminates
(variables are state indices) and polynomial *values* of a polynomial
carrier.  Variables are 1-based.  Normal form: no two monomials share an
exponent map, zero coefficients are dropped, and monomials are kept in
descending graded-lexicographic order, which makes equality structural
and serialization deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import CarrierMismatchError, ResourceLimitError
from .semiring import Semiring

MAX_EXPONENT = 2**63 - 1


@dataclass(frozen=True)
class Monomial:
    """coeff * prod(x_v ** e) with sparse exponents; absent var means 0."""

    coeff: object
    exps: tuple[tuple[int, int], ...]  # sorted (var, exp) pairs, exp >= 1

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    def exps_dict(self) -> dict[int, int]:
        return dict(self.exps)


def _grlex_key(exps: tuple[tuple[int, int], ...], nvars: int):
    dense = [0] * nvars
    for v, e in exps:
        dense[v - 1] = e
    return (sum(dense), tuple(dense))


def _merge_exps(a: Mapping[int, int], b: Mapping[int, int]) -> tuple[tuple[int, int], ...]:
    out = dict(a)
    for v, e in b.items():
        k = out.get(v, 0) + e
        if k > MAX_EXPONENT:
            raise ResourceLimitError("exponent overflow")
        out[v] = k
    return tuple(sorted(out.items()))


class Polynomial:
    """Normal-form polynomial over ``ring`` in variables 1..nvars."""

    __slots__ = ("ring", "nvars", "monos", "_hash")

    def __init__(self, ring: Semiring, nvars: int, monos: Iterable[tuple[object, Mapping[int, int]]]):
        table: dict[tuple[tuple[int, int], ...], object] = {}
        for coeff, exps in monos:
            ring.require(coeff)
            key = tuple(sorted((v, e) for v, e in dict(exps).items() if e))
            for v, e in key:
                if not 1 <= v <= nvars:
                    raise ValueError(f"variable x{v} out of range 1..{nvars}")
                if e < 0:
                    raise ValueError("negative exponent")
                if e > MAX_EXPONENT:
                    raise ResourceLimitError("exponent overflow")
            if key in table:
                table[key] = ring.add(table[key], coeff)
            else:
                table[key] = coeff
        kept = [
            Monomial(c, k)
            for k, c in table.items()
            if not ring.is_zero(c)
        ]
        kept.sort(key=lambda m: _grlex_key(m.exps, nvars), reverse=True)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "monos", tuple(kept))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Polynomial is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(ring: Semiring, nvars: int) -> "Polynomial":
        return Polynomial(ring, nvars, [])

    @staticmethod
    def constant(ring: Semiring, nvars: int, value) -> "Polynomial":
        return Polynomial(ring, nvars, [(value, {})])

    @staticmethod
    def one(ring: Semiring, nvars: int) -> "Polynomial":
        return Polynomial.constant(ring, nvars, ring.one)

    @staticmethod
    def variable(ring: Semiring, nvars: int, i: int) -> "Polynomial":
        return Polynomial(ring, nvars, [(ring.one, {i: 1})])

    @staticmethod
    def from_terms(ring: Semiring, nvars: int, terms: Iterable[tuple[object, Mapping[int, int]]]) -> "Polynomial":
        return Polynomial(ring, nvars, terms)

    # -- equality / hashing ----------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.nvars == other.nvars
            and self.monos == other.monos
        )

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.ring, self.nvars, self.monos)))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.to_text()!r} over {self.ring.describe()})"

    # -- predicates -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.monos

    def _same_space(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise CarrierMismatchError(f"{other!r} is not a polynomial")
        if other.ring != self.ring or other.nvars != self.nvars:
            raise CarrierMismatchError(
                f"polynomial spaces differ: {self.ring.describe()}^{self.nvars}"
                f" vs {other.ring.describe()}^{other.nvars}"
            )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._same_space(other)
        terms = [(m.coeff, m.exps_dict()) for m in self.monos]
        terms += [(m.coeff, m.exps_dict()) for m in other.monos]
        return Polynomial(self.ring, self.nvars, terms)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._same_space(other)
        terms = []
        for ma in self.monos:
            ea = ma.exps_dict()
            for mb in other.monos:
                terms.append(
                    (self.ring.mul(ma.coeff, mb.coeff), dict(_merge_exps(ea, mb.exps_dict())))
                )
        return Polynomial(self.ring, self.nvars, terms)

    def scale(self, value) -> "Polynomial":
        self.ring.require(value)
        return Polynomial(
            self.ring,
            self.nvars,
            [(self.ring.mul(m.coeff, value), m.exps_dict()) for m in self.monos],
        )

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative exponent")
        out = Polynomial.one(self.ring, self.nvars)
        sq = self
        while k:
            if k & 1:
                out = out * sq
            k >>= 1
            if k:
                sq = sq * sq
        return out

    # -- substitution and evaluation ------------------------------------------

    def substitute(self, subs: Sequence["Polynomial"]) -> "Polynomial":
        """Simultaneously replace x_i by subs[i-1]; result lives in the subs' space."""
        if len(subs) != self.nvars:
            raise ValueError(f"expected {self.nvars} substituents, got {len(subs)}")
        if self.nvars == 0:
            return self
        target = subs[0].nvars
        for s in subs:
            if s.ring != self.ring or s.nvars != target:
                raise CarrierMismatchError("substituents must share ring and arity")
        out = Polynomial.zero(self.ring, target)
        for m in self.monos:
            term = Polynomial.constant(self.ring, target, m.coeff)
            for v, e in m.exps:
                term = term * (subs[v - 1] ** e)
            out = out + term
        return out

    def eval_at(self, point: Sequence) -> object:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(point)}")
        ring = self.ring
        for v in point:
            ring.require(v)
        out = ring.zero
        for m in self.monos:
            val = m.coeff
            for v, e in m.exps:
                val = ring.mul(val, ring.power(point[v - 1], e))
            out = ring.add(out, val)
        return out

    def shift_vars(self, offset: int, nvars: int) -> "Polynomial":
        """Reindex every variable by +offset inside a space of ``nvars`` variables."""
        return Polynomial(
            self.ring,
            nvars,
            [(m.coeff, {v + offset: e for v, e in m.exps}) for m in self.monos],
        )

    # -- inspection -----------------------------------------------------------

    @property
    def monomials(self) -> tuple[Monomial, ...]:
        return self.monos

    @property
    def constant_term(self):
        for m in self.monos:
            if not m.exps:
                return m.coeff
        return self.ring.zero

    def classify(self) -> "PolyInfo":
        degs = [m.degree for m in self.monos]
        degree = max(degs, default=0)
        const = self.constant_term
        return PolyInfo(
            degree=degree,
            max_monomial_degree=degree,
            constant_term=const,
            is_proper_sum=all(d >= 1 for d in degs),
            is_linear_form=all(d == 1 for d in degs),
        )

    def single_monomial(self) -> Monomial | None:
        """The unique monomial, if this polynomial has exactly one."""
        return self.monos[0] if len(self.monos) == 1 else None

    # -- text ---------------------------------------------------------------

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if not self.monos:
            return "0"
        return " + ".join(monomial_text(self.ring, m, names) for m in self.monos)


def monomial_text(ring: Semiring, m: Monomial, names: Sequence[str] | None = None) -> str:
    def name(v: int) -> str:
        if names is not None and v - 1 < len(names):
            return names[v - 1]
        return f"x{v}"

    factors = [f"{name(v)}^{e}" if e > 1 else name(v) for v, e in m.exps]
    coeff = ring.format_value(m.coeff)
    if not factors:
        return f"({coeff})" if " " in coeff else coeff
    if ring.is_one(m.coeff):
        return "*".join(factors)
    if " " in coeff:
        coeff = f"({coeff})"
    return "*".join([coeff] + factors)


@dataclass(frozen=True)
class PolyInfo:
    degree: int
    max_monomial_degree: int
    constant_term: object
    is_proper_sum: bool
    is_linear_form: bool
