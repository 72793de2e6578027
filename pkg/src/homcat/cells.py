"""Kazhdan-Lusztig preorders, cells, the a-function and the b-function.

Orientation: the identity is the minimum and ``w0`` the maximum of every
preorder.  ``KL_x`` occurring in ``KL_y * KL_z`` means ``x >=_R y``; occurring
in ``KL_z * KL_y`` means ``x >=_L y``.
"""

from __future__ import annotations

import threading

from .coxeter import Element
from .hecke import HeckeAlgebra
from .laurent import NEG_INF

__all__ = ["CellData", "SIDES"]

SIDES = ("L", "R", "J")


def _closure(direct: list[int]) -> list[int]:
    """Reflexive-transitive closure of a relation given as bit-mask rows."""
    n = len(direct)
    reach = [m | (1 << i) for i, m in enumerate(direct)]
    for k in range(n):
        bit = 1 << k
        rk = reach[k]
        for i in range(n):
            if reach[i] & bit:
                reach[i] |= rk
    return reach


class CellData:
    def __init__(self, hecke: HeckeAlgebra):
        self.hecke = hecke
        self.system = hecke.system
        self._up: dict[str, list[int]] | None = None
        self._a: list[int] | None = None
        self._b: list[list] | None = None
        self._lock = threading.RLock()

    def _build(self):
        with self._lock:
            if self._up is not None:
                return
            W = self.system
            H = self.hecke
            n = W.order
            right = [0] * n
            left = [0] * n
            a = [0] * n
            for x in range(n):
                for y in range(n):
                    row = H.structure_constants_index(x, y)
                    m = 0
                    for z, p in row.items():
                        m |= 1 << z
                        d = p.degree
                        if d > a[z]:
                            a[z] = d
                    right[x] |= m
                    left[y] |= m
            reach_r = _closure(right)
            reach_l = _closure(left)
            reach_j = _closure([reach_r[i] | reach_l[i] for i in range(n)])
            self._up = {"R": reach_r, "L": reach_l, "J": reach_j}
            self._a = a

    def up_masks(self, side: str) -> list[int]:
        """``up_masks(side)[x]`` has bit ``y`` set iff ``x <=_side y``."""
        if side not in SIDES:
            raise ValueError(f"side must be one of {SIDES}")
        if self._up is None:
            self._build()
        return self._up[side]

    def leq_index(self, side: str, x: int, y: int) -> bool:
        return bool(self.up_masks(side)[x] >> y & 1)

    def kl_leq(self, side: str, x, y) -> bool:
        """``x <=_side y``."""
        W = self.system
        x, y = W.element(x), W.element(y)
        return self.leq_index(side, x.index, y.index)

    def equivalent_index(self, side: str, x: int, y: int) -> bool:
        return self.leq_index(side, x, y) and self.leq_index(side, y, x)

    def cell_indices(self, side: str) -> list[list[int]]:
        up = self.up_masks(side)
        seen = 0
        cells = []
        for x in range(self.system.order):
            if seen >> x & 1:
                continue
            cell = [y for y in range(self.system.order) if up[x] >> y & 1 and up[y] >> x & 1]
            for y in cell:
                seen |= 1 << y
            cells.append(cell)
        return cells

    def cell_partition(self, side: str) -> list[list[Element]]:
        W = self.system
        return [[Element(W, w) for w in cell] for cell in self.cell_indices(side)]

    def cell_of_index(self, side: str, x: int) -> list[int]:
        up = self.up_masks(side)
        return [y for y in range(self.system.order) if up[x] >> y & 1 and up[y] >> x & 1]

    @property
    def a_table(self) -> list[int]:
        if self._a is None:
            self._build()
        return self._a

    def a_index(self, w: int) -> int:
        return self.a_table[w]

    def a_function(self, w) -> int:
        return self.a_table[self.system.idx(w)]

    def b_index(self, x: int, y: int):
        """max over z of deg h_{z, x^-1}^y, or NEG_INF."""
        W = self.system
        xi = W.inverse_index[x]
        best = NEG_INF
        for z in range(W.order):
            p = self.hecke.structure_constants_index(z, xi).get(y)
            if p is not None:
                d = p.degree
                if best is NEG_INF or d > best:
                    best = d
        return best

    def b_function(self, x, y):
        W = self.system
        x, y = W.element(x), W.element(y)
        return self.b_index(x.index, y.index)

    @property
    def b_table(self) -> list[list]:
        """``b_table[x][y] == b_index(x, y)``, built in one pass over the structure constants."""
        if self._b is None:
            with self._lock:
                if self._b is None:
                    W = self.system
                    n = W.order
                    table = [[NEG_INF] * n for _ in range(n)]
                    for x in range(n):
                        row = table[x]
                        xi = W.inverse_index[x]
                        for z in range(n):
                            for y, p in self.hecke.structure_constants_index(z, xi).items():
                                d = p.degree
                                if row[y] is NEG_INF or d > row[y]:
                                    row[y] = d
                    self._b = table
        return self._b
