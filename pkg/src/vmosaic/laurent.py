"""Exact integer Laurent polynomials in one variable A."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce


@dataclass(frozen=True)
class LaurentPolynomial:
    """Immutable map exponent -> coefficient with no zero coefficients."""

    terms: tuple[tuple[int, int], ...]  # sorted by exponent

    @staticmethod
    def from_dict(d: dict[int, int]) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple(sorted((e, c) for e, c in d.items() if c)))

    @staticmethod
    def zero() -> "LaurentPolynomial":
        return LaurentPolynomial(())

    @staticmethod
    def one() -> "LaurentPolynomial":
        return LaurentPolynomial(((0, 1),))

    @staticmethod
    def monomial(exponent: int, coefficient: int = 1) -> "LaurentPolynomial":
        if coefficient == 0:
            return LaurentPolynomial(())
        return LaurentPolynomial(((exponent, coefficient),))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d = dict(self.terms)
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return LaurentPolynomial.from_dict(d)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                d[e] = d.get(e, 0) + c1 * c2
        return LaurentPolynomial.from_dict(d)

    def __pow__(self, k: int) -> "LaurentPolynomial":
        if k < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only unit monomials can be inverted")
            e, c = self.terms[0]
            return LaurentPolynomial.monomial(-e, c) ** (-k)
        return reduce(lambda a, b: a * b, [self] * k, LaurentPolynomial.one())

    def invert_variable(self) -> "LaurentPolynomial":
        """Substitute A -> A^-1."""
        return LaurentPolynomial(tuple(sorted((-e, c) for e, c in self.terms)))

    def sort_key(self) -> tuple:
        return self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.terms:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "A" if e == 1 else f"A^{e}"
                body = power if mag == 1 else f"{mag}{power}"
            out.append((sign, body))
        first_sign, first_body = out[0]
        text = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in out[1:]:
            text += sign + body
        return text


_TERM_RE = re.compile(r"([+-]?)(\d*)(?:(A)(?:\^(-?\d+))?)?")


def parse_laurent(text: str) -> LaurentPolynomial:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return LaurentPolynomial.zero()
    d: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad polynomial near {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            exp = int(m.group(4)) if m.group(4) is not None else 1
        else:
            if not m.group(2):
                raise ValueError(f"bad polynomial near {text[pos:]!r}")
            exp = 0
        d[exp] = d.get(exp, 0) + sign * coeff
        pos = m.end()
    return LaurentPolynomial.from_dict(d)


# The loop value of the bracket state sum.
LOOP_FACTOR = LaurentPolynomial.from_dict({2: -1, -2: -1})
