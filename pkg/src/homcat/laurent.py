"""Exact integer Laurent polynomials in one variable ``v``.

A :class:`LaurentPoly` stores a dense coefficient tuple together with the
exponent of its first entry.  Values are immutable and hashable, so they can be
used as dictionary keys and shared freely.
"""

from __future__ import annotations

import functools
import re
from typing import Iterable, Mapping

__all__ = [
    "NEG_INF",
    "NegInf",
    "LaurentPoly",
    "ZERO",
    "ONE",
    "V",
    "lp_add",
    "lp_mul",
    "lp_bar",
    "lp_inspect",
    "parse_laurent",
]


@functools.total_ordering
class NegInf:
    """The degree of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("-inf")

    def __repr__(self):
        return "-inf"

    __str__ = __repr__


NEG_INF = NegInf()


class LaurentPoly:
    __slots__ = ("coeffs", "offset", "_hash")

    def __init__(self, coeffs: Iterable[int] = (), offset: int = 0):
        coeffs = list(coeffs)
        lo = 0
        while lo < len(coeffs) and coeffs[lo] == 0:
            lo += 1
        hi = len(coeffs)
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.coeffs: tuple[int, ...] = ()
            self.offset = 0
        else:
            self.coeffs = tuple(int(c) for c in coeffs[lo:hi])
            self.offset = offset + lo
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls((coeff,), exponent)

    @classmethod
    def from_dict(cls, terms: Mapping[int, int]) -> "LaurentPoly":
        terms = {k: c for k, c in terms.items() if c}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls([terms.get(k, 0) for k in range(lo, hi + 1)], lo)

    def to_dict(self) -> dict[int, int]:
        return {self.offset + i: c for i, c in enumerate(self.coeffs) if c}

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def degree(self):
        """Largest exponent with nonzero coefficient, ``NEG_INF`` for zero."""
        if not self.coeffs:
            return NEG_INF
        return self.offset + len(self.coeffs) - 1

    @property
    def valuation(self):
        if not self.coeffs:
            return None
        return self.offset

    def coeff(self, k: int) -> int:
        i = k - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self):
        """Yield ``(exponent, coefficient)`` pairs for the nonzero terms."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.offset + i, c

    def evaluate(self, value=1):
        if value == 1:
            return sum(self.coeffs)
        return sum(c * value**k for k, c in self.terms())

    def is_bar_invariant(self) -> bool:
        return self == self.bar()

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs, self.offset - lo):
            out[i] += c
        for i, c in enumerate(other.coeffs, other.offset - lo):
            out[i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        if not self.coeffs:
            return self
        p = LaurentPoly.__new__(LaurentPoly)
        p.coeffs = tuple(-c for c in self.coeffs)
        p.offset = self.offset
        p._hash = None
        return p

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly([c * other for c in self.coeffs], self.offset)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        a, b = self.coeffs, other.coeffs
        if len(a) == 1:
            c = a[0]
            return LaurentPoly([c * x for x in b], self.offset + other.offset)
        if len(b) == 1:
            c = b[0]
            return LaurentPoly([c * x for x in a], self.offset + other.offset)
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return LaurentPoly(out, self.offset + other.offset)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        if not self.coeffs or k == 0:
            return self
        p = LaurentPoly.__new__(LaurentPoly)
        p.coeffs = self.coeffs
        p.offset = self.offset + k
        p._hash = None
        return p

    def bar(self) -> "LaurentPoly":
        """The involution ``v -> v^-1``."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.coeffs[::-1], -(self.offset + len(self.coeffs) - 1))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly((other,), 0)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.offset == other.offset

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.coeffs, self.offset))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly((x,), 0)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly((1,), 0)
V = LaurentPoly((1,), 1)


def lp_add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def lp_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def lp_bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def lp_inspect(p: LaurentPoly, k: int):
    """Return ``(degree, coefficient of v**k)``."""
    return p.degree, p.coeff(k)


# -- text format -----------------------------------------------------------


def _monomial_text(k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return "v"
    return f"v^{k}"


def format_laurent(p: LaurentPoly) -> str:
    """Render as e.g. ``v^3+2v+2v^-1+v^-3`` (descending exponents)."""
    if not p.coeffs:
        return "0"
    parts = []
    for k, c in sorted(p.terms(), reverse=True):
        mono = _monomial_text(k)
        if mono == "":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}{mono}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(sign + body)
    return "".join(parts)


_TERM_RE = re.compile(r"([+-]?)(\d*)(v(?:\^(-?\d+))?)?")


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the format produced by :func:`format_laurent`.

    Whitespace is ignored, and ``v^{k}`` braces are accepted.
    """
    s = re.sub(r"\s+", "", text).replace("{", "").replace("}", "")
    if not s:
        raise ValueError("empty polynomial text")
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at {pos}")
        sign, digits, var, exp = m.groups()
        if not digits and not var:
            raise ValueError(f"cannot parse Laurent polynomial {text!r} at {pos}")
        if pos > 0 and not sign:
            raise ValueError(f"missing sign between terms in {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        if var:
            k = int(exp) if exp is not None else 1
        else:
            k = 0
        terms[k] = terms.get(k, 0) + c
        pos = m.end()
    return LaurentPoly.from_dict(terms)
