"""The Hecke algebra of a finite Coxeter system over Z[v, v^-1].

Conventions follow Soergel's normalization::

    H_s H_s = H_e + (v^-1 - v) H_s,      KL_s = H_s + v,
    KL_w = H_w + sum_{y < w} h_{y,w} H_y  with h_{y,w} in v Z[v].

Elements are sparse maps from element indices to :class:`LaurentPoly`.
"""

from __future__ import annotations

import threading
from typing import Mapping

from .coxeter import CoxeterSystem, Element
from .errors import SystemMismatch
from .laurent import ONE, ZERO, LaurentPoly

__all__ = ["HeckeElt", "HeckeAlgebra", "STANDARD", "KL"]

STANDARD = "standard"
KL = "KL"

_V = LaurentPoly((1,), 1)
_VINV = LaurentPoly((1,), -1)
_VINV_MINUS_V = LaurentPoly((1, 0, -1), -1)  # v^-1 - v
_V_MINUS_VINV = LaurentPoly((-1, 0, 1), -1)  # v - v^-1
_V_PLUS_VINV = LaurentPoly((1, 0, 1), -1)


def _acc(d: dict, k: int, p: LaurentPoly):
    if not p:
        return
    q = d.get(k)
    if q is None:
        d[k] = p
    else:
        q = q + p
        if q:
            d[k] = q
        else:
            del d[k]


class HeckeElt:
    """A Hecke algebra element in the standard or the KL basis."""

    __slots__ = ("algebra", "basis", "coeffs")

    def __init__(self, algebra: "HeckeAlgebra", coeffs: Mapping[int, LaurentPoly], basis: str = STANDARD):
        if basis not in (STANDARD, KL):
            raise ValueError(f"unknown basis {basis!r}")
        self.algebra = algebra
        self.basis = basis
        self.coeffs = {w: p for w, p in coeffs.items() if p}

    def _check(self, other: "HeckeElt"):
        if not isinstance(other, HeckeElt):
            raise TypeError("expected HeckeElt")
        if other.algebra.system is not self.algebra.system:
            raise SystemMismatch("Hecke elements over different Coxeter systems")
        if other.basis != self.basis:
            raise ValueError("cannot combine elements written in different bases")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for w, p in other.coeffs.items():
            _acc(out, w, p)
        return HeckeElt(self.algebra, out, self.basis)

    def __neg__(self):
        return HeckeElt(self.algebra, {w: -p for w, p in self.coeffs.items()}, self.basis)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElt":
        if isinstance(c, int):
            c = LaurentPoly((c,), 0)
        return HeckeElt(self.algebra, {w: p * c for w, p in self.coeffs.items()}, self.basis)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        self._check(other)
        return self.algebra.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return (
            other.algebra.system is self.algebra.system
            and other.basis == self.basis
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.basis, frozenset(self.coeffs.items())))

    def coefficient(self, w) -> LaurentPoly:
        i = self.algebra.system.idx(w)
        return self.coeffs.get(i, ZERO)

    def support(self) -> list[Element]:
        W = self.algebra.system
        return [Element(W, w) for w in sorted(self.coeffs)]

    def as_dict(self) -> dict[Element, LaurentPoly]:
        W = self.algebra.system
        return {Element(W, w): p for w, p in sorted(self.coeffs.items())}

    def __repr__(self):
        W = self.algebra.system
        sym = "H" if self.basis == STANDARD else "KL"
        if not self.coeffs:
            return "0"
        parts = []
        for w, p in sorted(self.coeffs.items(), key=lambda kv: -kv[0]):
            parts.append(f"({p}){sym}_{W.render(w)}")
        return " + ".join(parts)


class HeckeAlgebra:
    """Hecke algebra of ``system`` with lazily built KL and structure-constant tables."""

    def __init__(self, system: CoxeterSystem):
        self.system = system
        self._kl: list[dict[int, LaurentPoly]] | None = None
        self._mu: list[list[tuple[int, int]]] | None = None
        self._kl_lower: list[dict[int, LaurentPoly]] | None = None
        self._bar_std: dict[int, dict[int, LaurentPoly]] = {0: {0: ONE}}
        self._struct: dict[tuple[int, int], dict[int, LaurentPoly]] = {}
        self._lock = threading.RLock()

    # -- constructors ------------------------------------------------------

    def standard(self, w) -> HeckeElt:
        return HeckeElt(self, {self.system.idx(w): ONE}, STANDARD)

    def from_dict(self, coeffs: Mapping, basis: str = STANDARD) -> HeckeElt:
        return HeckeElt(self, {self.system.idx(w): p for w, p in coeffs.items()}, basis)

    def _coerce(self, a: HeckeElt) -> HeckeElt:
        if a.algebra.system is not self.system:
            raise SystemMismatch("Hecke element belongs to a different Coxeter system")
        return a

    # -- standard basis arithmetic ----------------------------------------

    def _right_gen(self, a: Mapping[int, LaurentPoly], s: int) -> dict[int, LaurentPoly]:
        """a * H_s on a standard-basis coefficient map."""
        W = self.system
        rt = W.right_table
        ln = W.lengths
        out: dict[int, LaurentPoly] = {}
        for x, p in a.items():
            xs = rt[x][s]
            _acc(out, xs, p)
            if ln[xs] < ln[x]:
                _acc(out, x, p * _VINV_MINUS_V)
        return out

    def _left_gen(self, s: int, a: Mapping[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        """H_s * a on a standard-basis coefficient map."""
        W = self.system
        lt = W.left_table
        ln = W.lengths
        out: dict[int, LaurentPoly] = {}
        for x, p in a.items():
            sx = lt[x][s]
            _acc(out, sx, p)
            if ln[sx] < ln[x]:
                _acc(out, x, p * _VINV_MINUS_V)
        return out

    def _std_mul(self, a: Mapping[int, LaurentPoly], b: Mapping[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        W = self.system
        cache: dict[int, dict[int, LaurentPoly]] = {0: dict(a)}

        def times_hw(w: int) -> dict[int, LaurentPoly]:
            hit = cache.get(w)
            if hit is not None:
                return hit
            word = W.words[w]
            prefix = W._word_lookup[word[:-1]]
            res = self._right_gen(times_hw(prefix), word[-1])
            cache[w] = res
            return res

        out: dict[int, LaurentPoly] = {}
        for w in sorted(b, key=lambda u: W.lengths[u]):
            c = b[w]
            for x, p in times_hw(w).items():
                _acc(out, x, p * c)
        return out

    def std_multiply(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        self._coerce(a)
        self._coerce(b)
        if a.basis != STANDARD or b.basis != STANDARD:
            raise ValueError("std_multiply expects standard-basis elements")
        return HeckeElt(self, self._std_mul(a.coeffs, b.coeffs), STANDARD)

    def multiply(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        if a.basis == KL and b.basis == KL:
            out: dict[int, LaurentPoly] = {}
            for x, p in a.coeffs.items():
                for y, q in b.coeffs.items():
                    pq = p * q
                    for z, c in self.structure_constants_index(x, y).items():
                        _acc(out, z, pq * c)
            return HeckeElt(self, out, KL)
        return self.std_multiply(self.to_standard(a), self.to_standard(b))

    def _bar_hw(self, w: int) -> dict[int, LaurentPoly]:
        hit = self._bar_std.get(w)
        if hit is not None:
            return hit
        W = self.system
        word = W.words[w]
        prefix = W._word_lookup[word[:-1]]
        s = word[-1]
        base = self._bar_hw(prefix)
        # bar(H_s) = H_s^{-1} = H_s + (v - v^-1)
        res = self._right_gen(base, s)
        for x, p in base.items():
            _acc(res, x, p * _V_MINUS_VINV)
        self._bar_std[w] = res
        return res

    def bar_involution(self, a: HeckeElt) -> HeckeElt:
        self._coerce(a)
        if a.basis == KL:
            return HeckeElt(self, {w: p.bar() for w, p in a.coeffs.items()}, KL)
        out: dict[int, LaurentPoly] = {}
        for w, p in a.coeffs.items():
            pb = p.bar()
            for x, q in self._bar_hw(w).items():
                _acc(out, x, q * pb)
        return HeckeElt(self, out, STANDARD)

    # -- Kazhdan-Lusztig basis ---------------------------------------------

    def _build_kl(self):
        with self._lock:
            if self._kl is not None:
                return
            W = self.system
            kl: list[dict[int, LaurentPoly]] = [dict() for _ in range(W.order)]
            mu: list[list[tuple[int, int]]] = [[] for _ in range(W.order)]
            kl[0] = {0: ONE}
            lt = W.left_table
            ln = W.lengths
            for w in range(1, W.order):
                word = W.words[w]
                s = word[0]
                wp = W._word_lookup[word[1:]]
                # KL_s * KL_{w'} in the standard basis
                prod: dict[int, LaurentPoly] = {}
                for y, p in kl[wp].items():
                    sy = lt[y][s]
                    _acc(prod, sy, p)
                    if ln[sy] < ln[y]:
                        _acc(prod, y, p * _VINV)  # (v^-1 - v) p + v p
                    else:
                        _acc(prod, y, p * _V)
                for z, m in mu[wp]:
                    if ln[lt[z][s]] < ln[z]:
                        for y, q in kl[z].items():
                            _acc(prod, y, q * (-m))
                kl[w] = prod
                mu[w] = [(y, p.coeff(1)) for y, p in prod.items() if y != w and p.coeff(1)]
            self._mu = mu
            self._kl = kl

    @property
    def kl_table(self) -> list[dict[int, LaurentPoly]]:
        if self._kl is None:
            self._build_kl()
        return self._kl

    @property
    def mu_table(self) -> list[list[tuple[int, int]]]:
        if self._mu is None:
            self._build_kl()
        return self._mu

    def kl_table_by_lower(self, y: int) -> dict[int, LaurentPoly]:
        """``{w: h_{y,w}}`` over all ``w >= y``."""
        if self._kl_lower is None:
            with self._lock:
                if self._kl_lower is None:
                    lower: list[dict[int, LaurentPoly]] = [dict() for _ in range(self.system.order)]
                    for w, row in enumerate(self.kl_table):
                        for z, p in row.items():
                            lower[z][w] = p
                    self._kl_lower = lower
        return self._kl_lower[y]

    def kl_element(self, w) -> HeckeElt:
        return HeckeElt(self, self.kl_table[self.system.idx(w)], STANDARD)

    def kl_poly_index(self, y: int, w: int) -> LaurentPoly:
        return self.kl_table[w].get(y, ZERO)

    def kl_polynomial(self, y, w) -> LaurentPoly:
        y, w = self.system.element(y), self.system.element(w)
        return self.kl_poly_index(y.index, w.index)

    def mu_coefficient(self, y, w) -> int:
        return self.kl_polynomial(y, w).coeff(1) if self.system.idx(y) != self.system.idx(w) else 0

    def expand_in_kl_basis(self, a: HeckeElt) -> HeckeElt:
        """Rewrite a standard-basis element in the KL basis (top-down elimination)."""
        self._coerce(a)
        if a.basis == KL:
            return a
        kl = self.kl_table
        rem = dict(a.coeffs)
        out: dict[int, LaurentPoly] = {}
        # enumeration order refines length, so the largest index is maximal
        while rem:
            z = max(rem)
            c = rem[z]
            out[z] = c
            for y, p in kl[z].items():
                _acc(rem, y, -(p * c))
        return HeckeElt(self, out, KL)

    def to_standard(self, a: HeckeElt) -> HeckeElt:
        self._coerce(a)
        if a.basis == STANDARD:
            return a
        kl = self.kl_table
        out: dict[int, LaurentPoly] = {}
        for z, c in a.coeffs.items():
            for y, p in kl[z].items():
                _acc(out, y, p * c)
        return HeckeElt(self, out, STANDARD)

    # -- structure constants -------------------------------------------------

    def kl_structure_constants(self, x, y) -> dict[Element, LaurentPoly]:
        """The family h_{x,y}^z, from the product KL_x KL_y computed in the standard basis."""
        W = self.system
        x, y = W.element(x), W.element(y)
        prod = self._std_mul(self.kl_table[x.index], self.kl_table[y.index])
        expanded = self.expand_in_kl_basis(HeckeElt(self, prod, STANDARD))
        return {Element(W, z): p for z, p in sorted(expanded.coeffs.items())}

    def _times_kl_s(self, c: Mapping[int, LaurentPoly], s: int) -> dict[int, LaurentPoly]:
        """Right multiplication by KL_s of a KL-basis coefficient map."""
        W = self.system
        rt = W.right_table
        ln = W.lengths
        mu = self.mu_table
        out: dict[int, LaurentPoly] = {}
        for z, p in c.items():
            zs = rt[z][s]
            if ln[zs] < ln[z]:
                _acc(out, z, p * _V_PLUS_VINV)
            else:
                _acc(out, zs, p)
                for u, m in mu[z]:
                    if ln[rt[u][s]] < ln[u]:
                        _acc(out, u, p * m)
        return out

    def structure_constants_index(self, x: int, y: int) -> dict[int, LaurentPoly]:
        """h_{x,y}^z as a map z -> polynomial, via the KL-basis recursion in y."""
        key = (x, y)
        hit = self._struct.get(key)
        if hit is not None:
            return hit
        with self._lock:
            return self._struct_compute(x, y)

    def _struct_compute(self, x: int, y: int) -> dict[int, LaurentPoly]:
        W = self.system
        # iterative along the ShortLex word of y so deep words do not recurse
        word = W.words[y]
        chain = [0]
        for i in word:
            chain.append(W.right_table[chain[-1]][i])
        mu = self.mu_table
        rt = W.right_table
        ln = W.lengths
        for k, cur in enumerate(chain):
            if (x, cur) in self._struct:
                continue
            if cur == 0:
                self._struct[(x, 0)] = {x: ONE}
                continue
            prev = chain[k - 1]
            s = word[k - 1]
            row = self._times_kl_s(self._struct[(x, prev)], s)
            for z, m in mu[prev]:
                if ln[rt[z][s]] < ln[z]:
                    sub = self.structure_constants_index(x, z)
                    for u, p in sub.items():
                        _acc(row, u, p * (-m))
            self._struct[(x, cur)] = row
        return self._struct[(x, y)]

    def structure_constant(self, x, y, z) -> LaurentPoly:
        W = self.system
        return self.structure_constants_index(W.idx(x), W.idx(y)).get(W.idx(z), ZERO)

    def build_all_structure_constants(self):
        W = self.system
        for x in range(W.order):
            for y in range(W.order):
                self.structure_constants_index(x, y)
        return self._struct
