"""Integer Laurent polynomials in one variable.

Used for Alexander polynomials (variable ``t``), Kauffman brackets
(variable ``A``) and Jones polynomials.  Coefficients are Python ints, so
arithmetic is exact; zero coefficients are never stored.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import ParseError


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, v in items:
            if v:
                c[e] = c.get(e, 0) + v
        self._c = {e: v for e, v in c.items() if v}
        self._hash = None

    @classmethod
    def const(cls, value: int) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def from_dense(cls, coeffs: Iterable[int], low: int = 0) -> "LaurentPoly":
        """Build from a coefficient list starting at exponent ``low``."""
        return cls({low + k: v for k, v in enumerate(coeffs)})

    # --- inspection -------------------------------------------------------

    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def terms(self) -> list[tuple[int, int]]:
        return sorted(self._c.items())

    def __getitem__(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    @property
    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    @property
    def span(self) -> int:
        return self.max_exp - self.min_exp

    def __call__(self, x):
        """Evaluate at ``x``; negative powers need an invertible ``x``."""
        total = 0
        for e, v in self._c.items():
            total += v * (x ** e if e >= 0 else 1 / x ** (-e))
        return total

    def eval_int(self, x: int) -> int:
        """Exact evaluation at an integer; ``x`` must be +-1 if negative powers occur."""
        if self.min_exp < 0 and x not in (1, -1):
            raise ValueError("negative powers need x = +-1 for an integer result")
        return sum(v * (x ** abs(e) if x in (1, -1) else x ** e) for e, v in self._c.items())

    # --- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, v), = self._c.items()
            if v not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({e * k: v ** (-k)})
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by the monomial x^k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def mirror(self) -> "LaurentPoly":
        """Substitute x -> 1/x."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def scale_exponents(self, factor: int) -> "LaurentPoly":
        return LaurentPoly({e * factor: v for e, v in self._c.items()})

    def divide_exponents(self, divisor: int) -> "LaurentPoly":
        if any(e % divisor for e in self._c):
            raise ValueError(f"exponents of {self} are not all divisible by {divisor}")
        return LaurentPoly({e // divisor: v for e, v in self._c.items()})

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self._c)
        q: dict[int, int] = {}
        lead_e = other.max_exp
        lead_v = other._c[lead_e]
        lowest_quotient = self.min_exp - other.min_exp
        while rem:
            top = max(rem)
            shift = top - lead_e
            v = rem[top]
            if shift < lowest_quotient or v % lead_v:
                raise ArithmeticError(f"{self} is not divisible by {other}")
            f = v // lead_v
            q[shift] = f
            for e, w in other._c.items():
                k = e + shift
                nv = rem.get(k, 0) - f * w
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return LaurentPoly(q)

    # --- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def sort_key(self) -> tuple:
        """Deterministic total order: lexicographic on ascending (exponent, coefficient)."""
        return tuple(self.terms())

    # --- text -------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical ``exp:coeff`` pairs sorted by exponent, comma separated."""
        return ",".join(f"{e}:{v}" for e, v in self.terms()) or "0"

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly":
        text = text.strip()
        if text == "0":
            return cls()
        c = {}
        pos = 0
        for item in text.split(","):
            try:
                e, v = item.split(":")
                c[int(e)] = int(v)
            except ValueError:
                raise ParseError(f"bad polynomial term {item!r}", pos) from None
            pos += len(item) + 1
        return cls(c)

    def pretty(self, var: str = "t") -> str:
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            mag = abs(v)
            if e == 0:
                body = str(mag)
            else:
                power = var if e == 1 else f"{var}^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            sign = "-" if v < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"

    def __str__(self):
        return self.pretty()


T = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
