"""Commutative semiring carriers with exact arithmetic.

Four carriers are provided: Boolean bits, non-negative integers, exact
rationals, and polynomial extensions of one of those in a fixed list of
indeterminates.  Values are plain Python objects (``int``, ``Fraction``,
or :class:`~wafakit.polynomial.Polynomial`); each :class:`Semiring`
validates membership before operating, so mixing carriers raises
:class:`~wafakit.errors.CarrierMismatchError` whenever that is decidable
from the value representation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import CarrierMismatchError, ParseError

BOOLEAN_TAG = "boolean"
NATURAL_TAG = "natural"
RATIONAL_TAG = "rational"
POLYNOMIAL_TAG = "polynomial"


@dataclass(frozen=True)
class Semiring:
    """A commutative semiring carrier.

    ``locally_finite`` is declared metadata, not computed: it is True for
    the Booleans, False for naturals, rationals, and every polynomial
    carrier (an indeterminate alone generates infinitely many values).
    """

    tag: str
    base: Optional["Semiring"] = None
    var_names: tuple[str, ...] = ()
    locally_finite: bool = False

    # -- constructors -------------------------------------------------

    @staticmethod
    def boolean() -> "Semiring":
        return Semiring(BOOLEAN_TAG, locally_finite=True)

    @staticmethod
    def natural() -> "Semiring":
        return Semiring(NATURAL_TAG)

    @staticmethod
    def rational() -> "Semiring":
        return Semiring(RATIONAL_TAG)

    @staticmethod
    def polynomials(base: "Semiring", var_names: Iterable[str]) -> "Semiring":
        names = tuple(var_names)
        if not names:
            raise ValueError("polynomial carrier needs at least one indeterminate")
        if len(set(names)) != len(names):
            raise ValueError("duplicate indeterminate names")
        return Semiring(POLYNOMIAL_TAG, base=base, var_names=names)

    # -- constants -----------------------------------------------------

    @property
    def zero(self):
        if self.tag == POLYNOMIAL_TAG:
            from .polynomial import Polynomial

            return Polynomial.zero(self.base, len(self.var_names))
        if self.tag == RATIONAL_TAG:
            return Fraction(0)
        return 0

    @property
    def one(self):
        if self.tag == POLYNOMIAL_TAG:
            from .polynomial import Polynomial

            return Polynomial.constant(self.base, len(self.var_names), self.base.one)
        if self.tag == RATIONAL_TAG:
            return Fraction(1)
        return 1

    def indeterminate(self, i: int = 1):
        """The i-th indeterminate as a value of a polynomial carrier."""
        if self.tag != POLYNOMIAL_TAG:
            raise CarrierMismatchError(f"{self.describe()} has no indeterminates")
        from .polynomial import Polynomial

        return Polynomial.variable(self.base, len(self.var_names), i)

    # -- membership ----------------------------------------------------

    def check(self, v) -> bool:
        if self.tag == BOOLEAN_TAG:
            return isinstance(v, int) and not isinstance(v, bool) and v in (0, 1)
        if self.tag == NATURAL_TAG:
            return isinstance(v, int) and not isinstance(v, bool) and v >= 0
        if self.tag == RATIONAL_TAG:
            return isinstance(v, Fraction)
        from .polynomial import Polynomial

        return (
            isinstance(v, Polynomial)
            and v.ring == self.base
            and v.nvars == len(self.var_names)
        )

    def require(self, v):
        if not self.check(v):
            raise CarrierMismatchError(f"{v!r} is not a value of {self.describe()}")
        return v

    def value(self, x):
        """Coerce a convenient Python object into a carrier value."""
        if self.tag == BOOLEAN_TAG and isinstance(x, (bool, int)):
            return self.require(int(bool(x)))
        if self.tag == NATURAL_TAG and isinstance(x, int) and not isinstance(x, bool):
            return self.require(x)
        if self.tag == RATIONAL_TAG and isinstance(x, (int, Fraction)):
            return self.require(Fraction(x))
        if self.tag == POLYNOMIAL_TAG:
            from .polynomial import Polynomial

            if isinstance(x, Polynomial):
                return self.require(x)
            return Polynomial.constant(self.base, len(self.var_names), self.base.value(x))
        return self.require(x)

    # -- arithmetic ------------------------------------------------------

    def add(self, a, b):
        self.require(a)
        self.require(b)
        if self.tag == BOOLEAN_TAG:
            return a | b
        return a + b

    def mul(self, a, b):
        self.require(a)
        self.require(b)
        if self.tag == BOOLEAN_TAG:
            return a & b
        return a * b

    def equal(self, a, b) -> bool:
        self.require(a)
        self.require(b)
        return a == b

    def is_zero(self, v) -> bool:
        return self.equal(v, self.zero)

    def is_one(self, v) -> bool:
        return self.equal(v, self.one)

    def power(self, v, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = self.one
        sq = v
        while k:
            if k & 1:
                out = self.mul(out, sq)
            k >>= 1
            if k:
                sq = self.mul(sq, sq)
        return out

    def sum(self, values: Iterable):
        out = self.zero
        for v in values:
            out = self.add(out, v)
        return out

    def product(self, values: Iterable):
        out = self.one
        for v in values:
            out = self.mul(out, v)
        return out

    # -- text ------------------------------------------------------------

    def format_value(self, v) -> str:
        self.require(v)
        if self.tag == POLYNOMIAL_TAG:
            return v.to_text(self.var_names)
        return str(v)

    def parse_text(self, text: str):
        """Parse the textual scalar syntax: "0"/"1", decimals, "p/q"."""
        text = text.strip()
        try:
            if self.tag == BOOLEAN_TAG:
                if text not in ("0", "1"):
                    raise ValueError(text)
                return int(text)
            if self.tag == NATURAL_TAG:
                n = int(text)
                if n < 0:
                    raise ValueError(text)
                return n
            if self.tag == RATIONAL_TAG:
                return Fraction(text)
        except ValueError as exc:
            raise ParseError(f"bad {self.tag} value {text!r}") from exc
        raise ParseError("polynomial values use the structured monomial-list form")

    def describe(self) -> str:
        if self.tag == POLYNOMIAL_TAG:
            return f"{self.base.describe()}[{', '.join(self.var_names)}]"
        return {BOOLEAN_TAG: "B", NATURAL_TAG: "N", RATIONAL_TAG: "Q"}[self.tag]


BOOLEAN = Semiring.boolean()
NATURAL = Semiring.natural()
RATIONAL = Semiring.rational()


def polynomial_ring(base: Semiring, *var_names: str) -> Semiring:
    return Semiring.polynomials(base, var_names)
