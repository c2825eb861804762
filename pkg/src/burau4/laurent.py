"""Exact integer Laurent polynomials in a single variable t.

The search pipeline only ever builds polynomials by accumulating ``+-t^e``
terms and then compares, normalizes and serializes them, so this module
deliberately stays small: dense coefficient window plus a minimum-exponent
offset, addition of single terms, the dual ``-p(1/t)``, the coefficient
norm, and comparison up to a unit ``+-t^k``.

Coefficients are Python ints, so there is no overflow to detect here; the
fixed-width fast path guards its own bounds separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


@dataclass(frozen=True)
class LaurentPolynomial:
    """A Laurent polynomial ``sum coeffs[i] * t**(min_exponent + i)``.

    Instances are normalized: the coefficient window has nonzero first and
    last entries, and the zero polynomial is the unique instance with an
    empty window (its ``min_exponent`` is 0).
    """

    min_exponent: int = 0
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if self.coeffs and (self.coeffs[0] == 0 or self.coeffs[-1] == 0):
            raise ValueError("coefficient window not normalized")
        if not self.coeffs and self.min_exponent != 0:
            raise ValueError("zero polynomial must have min_exponent 0")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls(0, ())

    @classmethod
    def from_terms(cls, terms: Mapping[int, int] | Iterable[tuple[int, int]]) -> "LaurentPolynomial":
        """Build from (exponent, coefficient) pairs; repeated exponents add."""
        acc: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            acc[exp] = acc.get(exp, 0) + c
        acc = {e: c for e, c in acc.items() if c}
        if not acc:
            return cls.zero()
        lo, hi = min(acc), max(acc)
        return cls(lo, tuple(acc.get(e, 0) for e in range(lo, hi + 1)))

    @classmethod
    def monomial(cls, coeff: int, exponent: int = 0) -> "LaurentPolynomial":
        if coeff == 0:
            return cls.zero()
        return cls(exponent, (coeff,))

    # -- queries -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exponent(self) -> int:
        if self.is_zero:
            return 0
        return self.min_exponent + len(self.coeffs) - 1

    def coefficient(self, exponent: int) -> int:
        i = exponent - self.min_exponent
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero (exponent, coefficient) pairs, exponent ascending."""
        return [(self.min_exponent + i, c) for i, c in enumerate(self.coeffs) if c]

    def norm(self) -> int:
        """Sum of absolute values of the coefficients."""
        return sum(abs(c) for c in self.coeffs)

    def signature(self) -> tuple[int, ...]:
        """The ordered sequence of nonzero coefficients, gaps ignored."""
        return tuple(c for c in self.coeffs if c)

    def __call__(self, t: int) -> int:
        return sum(c * t ** (self.min_exponent + i) for i, c in enumerate(self.coeffs))

    # -- algebra -----------------------------------------------------------

    def dual(self) -> "LaurentPolynomial":
        """Return ``-p(1/t)``: exponents negated, coefficients negated."""
        if self.is_zero:
            return self
        return LaurentPolynomial(-self.max_exponent, tuple(-c for c in reversed(self.coeffs)))

    def shifted(self, k: int) -> "LaurentPolynomial":
        """Return ``t**k * p``."""
        if self.is_zero:
            return self
        return LaurentPolynomial(self.min_exponent + k, self.coeffs)

    def __neg__(self) -> "LaurentPolynomial":
        if self.is_zero:
            return self
        return LaurentPolynomial(self.min_exponent, tuple(-c for c in self.coeffs))

    def equal_up_to_unit(self, other: "LaurentPolynomial") -> bool:
        """True iff ``other == +-t**k * self`` for some integer k."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return self.coeffs == other.coeffs or self.coeffs == tuple(-c for c in other.coeffs)

    def canonical(self) -> "LaurentPolynomial":
        """Unit-normalized form: min exponent 0, lowest coefficient positive."""
        if self.is_zero:
            return self
        coeffs = self.coeffs if self.coeffs[0] > 0 else tuple(-c for c in self.coeffs)
        return LaurentPolynomial(0, coeffs)

    # -- text form ---------------------------------------------------------

    def to_string(self) -> str:
        """Serialize as ``c*t^e`` terms joined by `` + ``; zero is ``0``."""
        if self.is_zero:
            return "0"
        return " + ".join(f"{c}*t^{e}" for e, c in self.terms())

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        text = text.strip()
        if text == "0":
            return cls.zero()
        terms = []
        for part in text.split("+"):
            part = part.strip()
            if not part:
                raise ValueError("empty term in polynomial string")
            coeff_s, _, exp_s = part.partition("*t^")
            if not exp_s:
                raise ValueError(f"malformed term {part!r}")
            terms.append((int(exp_s), int(coeff_s)))
        return cls.from_terms(terms)

    def __str__(self) -> str:
        return self.to_string()
