"""Finite Coxeter systems enumerated in ShortLex order.

Elements are identified by their position in the ShortLex enumeration of
normal forms, so element ``0`` is the identity and the last element is the
longest element ``w0``.  Group elements are found by acting on a regular
vector in the contragredient of the root representation; for crystallographic
Coxeter matrices this uses an integer Cartan matrix and is exact.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InfiniteGroup, MalformedMatrix, SystemMismatch

__all__ = [
    "DEFAULT_CAP",
    "BRUHAT_MATRIX_LIMIT",
    "CoxeterSystem",
    "Element",
    "GeneratorSubset",
    "build_system",
    "cartan_type_matrix",
]

DEFAULT_CAP = 40320
BRUHAT_MATRIX_LIMIT = 1000

INFINITY = 0  # entry of a Coxeter matrix meaning m(s, t) = infinity


def _chain(n: int, bonds: dict[tuple[int, int], int] | None = None) -> list[list[int]]:
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1
    for i in range(n - 1):
        m[i][i + 1] = m[i + 1][i] = 3
    for (i, j), val in (bonds or {}).items():
        m[i][j] = m[j][i] = val
    return m


def cartan_type_matrix(name: str) -> list[list[int]]:
    """Coxeter matrix of a finite Cartan type such as ``"A3"`` or ``"E_6"``."""
    text = name.strip().upper().replace("_", "")
    m = re.fullmatch(r"I2\((\d+)\)", text)
    if m:
        k = int(m.group(1))
        if k < 2:
            raise MalformedMatrix(f"bad dihedral order in {name!r}")
        return [[1, k], [k, 1]]
    m = re.fullmatch(r"([A-G])(\d+)", text)
    if not m:
        raise MalformedMatrix(f"unrecognised Cartan type {name!r}")
    letter, n = m.group(1), int(m.group(2))
    if n < 1:
        raise MalformedMatrix(f"rank must be positive in {name!r}")
    if letter == "A":
        return _chain(n)
    if letter in "BC":
        if n < 2:
            raise MalformedMatrix(f"{letter}{n} needs rank >= 2")
        return _chain(n, {(n - 2, n - 1): 4})
    if letter == "D":
        if n < 4:
            raise MalformedMatrix("D_n needs rank >= 4")
        mat = _chain(n)
        mat[n - 2][n - 1] = mat[n - 1][n - 2] = 2
        mat[n - 3][n - 1] = mat[n - 1][n - 3] = 3
        return mat
    if letter == "E":
        if n not in (6, 7, 8):
            raise MalformedMatrix("E_n needs n in 6, 7, 8")
        # Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4
        mat = [[2] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = 1
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            mat[i][j] = mat[j][i] = 3
        return mat
    if letter == "F":
        if n != 4:
            raise MalformedMatrix("F_n needs n = 4")
        return _chain(4, {(1, 2): 4})
    if letter == "G":
        if n != 2:
            raise MalformedMatrix("G_n needs n = 2")
        return [[1, 6], [6, 1]]
    raise MalformedMatrix(f"unrecognised Cartan type {name!r}")


def _validate_matrix(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(matrix)
    if n == 0:
        raise MalformedMatrix("empty Coxeter matrix")
    out = []
    for row in matrix:
        if len(row) != n:
            raise MalformedMatrix("Coxeter matrix must be square")
        out.append([int(x) for x in row])
    for i in range(n):
        if out[i][i] != 1:
            raise MalformedMatrix(f"m(s{i+1}, s{i+1}) must be 1")
        for j in range(n):
            if out[i][j] != out[j][i]:
                raise MalformedMatrix("Coxeter matrix must be symmetric")
            if i != j and out[i][j] != INFINITY and out[i][j] < 2:
                raise MalformedMatrix(f"m(s{i+1}, s{j+1}) must be >= 2 or 0 (infinity)")
    return out


def _cartan_from_coxeter(m: list[list[int]]):
    """Return (A, exact) with A[k][i] = <alpha_i, alpha_k^vee>."""
    n = len(m)
    crystallographic = all(m[i][j] in (2, 3, 4, 6, INFINITY) for i in range(n) for j in range(n) if i != j)
    if crystallographic:
        prod = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3), INFINITY: (-2, -2)}
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = 2
            for j in range(i + 1, n):
                a[i][j], a[j][i] = prod[m[i][j]]
        return a, True
    a = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                a[i][j] = 2.0
            elif m[i][j] == INFINITY:
                a[i][j] = -2.0
            else:
                a[i][j] = -2.0 * math.cos(math.pi / m[i][j])
    return a, False


def default_generator_names(rank: int) -> list[str]:
    if rank == 1:
        return ["s"]
    if rank == 2:
        return ["s", "t"]
    return [f"s{i}" for i in range(1, rank + 1)]


@dataclass(frozen=True)
class GeneratorSubset:
    """A subset J of the simple reflections, stored as a bit mask."""

    mask: int = 0

    @classmethod
    def of(cls, indices: Iterable[int]) -> "GeneratorSubset":
        mask = 0
        for i in indices:
            mask |= 1 << i
        return cls(mask)

    def __iter__(self):
        i, m = 0, self.mask
        while m:
            if m & 1:
                yield i
            m >>= 1
            i += 1

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def __len__(self):
        return bin(self.mask).count("1")

    def indices(self) -> tuple[int, ...]:
        return tuple(self)


class Element:
    """An element of a :class:`CoxeterSystem`, identified by its index."""

    __slots__ = ("system", "index")

    def __init__(self, system: "CoxeterSystem", index: int):
        self.system = system
        self.index = index

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if other.system is not self.system:
            raise SystemMismatch("elements belong to different Coxeter systems")

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.system, self.system.mul(self.index, other.index))

    def inverse(self) -> "Element":
        return Element(self.system, self.system.inverse_index[self.index])

    @property
    def length(self) -> int:
        return self.system.lengths[self.index]

    @property
    def word(self) -> tuple[int, ...]:
        return self.system.words[self.index]

    def __eq__(self, other):
        return isinstance(other, Element) and other.system is self.system and other.index == self.index

    def __hash__(self):
        return hash((id(self.system), self.index))

    def __lt__(self, other):
        self._check(other)
        return self.index < other.index

    def __repr__(self):
        return f"Element({self.system.name}, {self})"

    def __str__(self):
        return self.system.render(self.index)


class CoxeterSystem:
    """A fully enumerated finite Coxeter system.

    Indices ``0 .. order-1`` enumerate the group in ShortLex order of normal
    forms; ``words[w]`` is the ShortLex-minimal reduced word of ``w``.
    """

    def __init__(
        self,
        matrix: Sequence[Sequence[int]],
        names: Sequence[str] | None = None,
        cap: int = DEFAULT_CAP,
        name: str | None = None,
    ):
        self.coxeter_matrix = _validate_matrix(matrix)
        self.rank = len(self.coxeter_matrix)
        self.generator_names = list(names) if names is not None else default_generator_names(self.rank)
        if len(self.generator_names) != self.rank or len(set(self.generator_names)) != self.rank:
            raise MalformedMatrix("need one distinct name per generator")
        if "e" in self.generator_names:
            raise MalformedMatrix("'e' is reserved for the identity")
        self.cap = cap
        self.name = name or f"W(rank {self.rank})"
        self._enumerate()
        self._bruhat_masks: list[int] | None = None
        self._bruhat_cache: dict[tuple[int, int], bool] = {}

    # -- construction ------------------------------------------------------

    def _enumerate(self):
        n = self.rank
        a, exact = _cartan_from_coxeter(self.coxeter_matrix)

        if exact:
            def act(c, i):
                ci = c[i]
                return tuple(c[k] - ci * a[k][i] for k in range(n))

            def key(c):
                return c
        else:
            def act(c, i):
                ci = c[i]
                return tuple(c[k] - ci * a[k][i] for k in range(n))

            def key(c):
                return tuple(round(x, 8) + 0.0 for x in c)

        start = tuple(1 if exact else 1.0 for _ in range(n))
        # vectors[w] = w^{-1}(rho); right multiplication by s acts by s on it
        vectors = [start]
        words: list[tuple[int, ...]] = [()]
        lengths = [0]
        lookup = {key(start): 0}
        right = [[-1] * n]
        frontier = [0]
        length = 0
        while frontier:
            length += 1
            nxt = []
            for w in frontier:
                vec = vectors[w]
                for i in range(n):
                    if right[w][i] != -1:
                        continue
                    if vec[i] < 0:
                        # i is a right descent; ws is shorter and already known
                        continue
                    nv = act(vec, i)
                    k = key(nv)
                    idx = lookup.get(k)
                    if idx is None:
                        idx = len(vectors)
                        if idx >= self.cap:
                            raise InfiniteGroup(
                                f"{self.name}: enumeration exceeded cap of {self.cap} elements"
                            )
                        lookup[k] = idx
                        vectors.append(nv)
                        words.append(words[w] + (i,))
                        lengths.append(length)
                        right.append([-1] * n)
                        nxt.append(idx)
                    right[w][i] = idx
                    right[idx][i] = w
            frontier = nxt
        for w in range(len(vectors)):
            if -1 in right[w]:  # pragma: no cover - sanity guard
                raise MalformedMatrix("incomplete multiplication table")
        self.order = len(vectors)
        self.words = words
        self.lengths = lengths
        self.right_table = [tuple(r) for r in right]
        self.right_descent_masks = [
            sum(1 << i for i in range(n) if lengths[right[w][i]] < lengths[w]) for w in range(self.order)
        ]
        inv = [0] * self.order
        for w in range(self.order):
            x = 0
            for i in reversed(words[w]):
                x = right[x][i]
            inv[w] = x
        self.inverse_index = inv
        self.left_table = [
            tuple(inv[right[inv[w]][i]] for i in range(n)) for w in range(self.order)
        ]
        self.left_descent_masks = [self.right_descent_masks[inv[w]] for w in range(self.order)]
        self.w0_index = max(range(self.order), key=lambda w: lengths[w])
        self._word_lookup = {words[w]: w for w in range(self.order)}

    # -- element access ----------------------------------------------------

    def __len__(self):
        return self.order

    def __iter__(self):
        for w in range(self.order):
            yield Element(self, w)

    def __repr__(self):
        return f"CoxeterSystem({self.name}, order={self.order})"

    def element(self, w) -> Element:
        """Coerce an index, word, string or Element into an Element of this system."""
        if isinstance(w, Element):
            if w.system is not self:
                raise SystemMismatch("element belongs to a different Coxeter system")
            return w
        if isinstance(w, int):
            if not 0 <= w < self.order:
                raise IndexError(f"element index {w} out of range")
            return Element(self, w)
        if isinstance(w, str):
            return Element(self, self.from_word(self.parse_word(w)))
        return Element(self, self.from_word(w))

    def idx(self, w) -> int:
        return self.element(w).index

    @property
    def identity(self) -> Element:
        return Element(self, 0)

    @property
    def w0(self) -> Element:
        return Element(self, self.w0_index)

    def generators(self) -> list[Element]:
        return [Element(self, self.right_table[0][i]) for i in range(self.rank)]

    def generator_index(self, i: int) -> int:
        return self.right_table[0][i]

    def from_word(self, word: Iterable[int]) -> int:
        x = 0
        for i in word:
            if not 0 <= i < self.rank:
                raise ValueError(f"generator index {i} out of range")
            x = self.right_table[x][i]
        return x

    def parse_word(self, text: str) -> list[int]:
        s = re.sub(r"[\s.*·]", "", text)
        if s in ("", "e", "1"):
            return []
        if s in ("w0", "w_0"):
            return list(self.words[self.w0_index])
        names = sorted(range(self.rank), key=lambda i: -len(self.generator_names[i]))
        out = []
        pos = 0
        while pos < len(s):
            if s.startswith("w0", pos) or s.startswith("w_0", pos):
                out.extend(self.words[self.w0_index])
                pos += 2 if s.startswith("w0", pos) else 3
                continue
            for i in names:
                nm = self.generator_names[i]
                if s.startswith(nm, pos):
                    out.append(i)
                    pos += len(nm)
                    break
            else:
                raise ValueError(f"cannot parse word {text!r} over generators {self.generator_names}")
        return out

    def render(self, w: int) -> str:
        word = self.words[w]
        if not word:
            return "e"
        return "".join(self.generator_names[i] for i in word)

    # -- group operations --------------------------------------------------

    def mul(self, u: int, w: int) -> int:
        x = u
        for i in self.words[w]:
            x = self.right_table[x][i]
        return x

    def multiply(self, u, w) -> Element:
        u, w = self.element(u), self.element(w)
        return u * w

    def inverse(self, w) -> Element:
        return self.element(w).inverse()

    def length(self, w) -> int:
        return self.lengths[self.idx(w)]

    def descents(self, w, side: str = "right") -> GeneratorSubset:
        i = self.idx(w)
        if side == "right":
            return GeneratorSubset(self.right_descent_masks[i])
        if side == "left":
            return GeneratorSubset(self.left_descent_masks[i])
        raise ValueError("side must be 'left' or 'right'")

    def conjugate_by_w0(self, w) -> Element:
        i = self.idx(w)
        return Element(self, self.mul(self.mul(self.w0_index, i), self.w0_index))

    def conj_w0(self, i: int) -> int:
        return self.mul(self.mul(self.w0_index, i), self.w0_index)

    # -- Bruhat order ------------------------------------------------------

    def _build_bruhat_masks(self):
        # {u <= w} is the set of products of subwords of a reduced word of w
        below: list[set[int]] = [set() for _ in range(self.order)]
        below[0] = {0}
        for w in range(1, self.order):
            word = self.words[w]
            prefix = self._word_lookup[word[:-1]]
            s = word[-1]
            base = below[prefix]
            rt = self.right_table
            below[w] = base | {rt[u][s] for u in base}
        masks = []
        for w in range(self.order):
            m = 0
            for u in below[w]:
                m |= 1 << u
            masks.append(m)
        self._bruhat_masks = masks

    def bruhat_leq_index(self, u: int, w: int) -> bool:
        if self.order <= BRUHAT_MATRIX_LIMIT:
            if self._bruhat_masks is None:
                self._build_bruhat_masks()
            return bool(self._bruhat_masks[w] >> u & 1)
        return self._bruhat_recursive(u, w)

    def _bruhat_recursive(self, u: int, w: int) -> bool:
        key = (u, w)
        hit = self._bruhat_cache.get(key)
        if hit is not None:
            return hit
        lu, lw = self.lengths[u], self.lengths[w]
        if lu > lw:
            res = False
        elif lu == lw:
            res = u == w
        elif u == 0:
            res = True
        else:
            m = self.right_descent_masks[w]
            s = (m & -m).bit_length() - 1
            ws = self.right_table[w][s]
            us = self.right_table[u][s]
            res = self._bruhat_recursive(min(u, us, key=lambda x: self.lengths[x]), ws)
        self._bruhat_cache[key] = res
        return res

    def bruhat_leq(self, u, w) -> bool:
        u, w = self.element(u), self.element(w)
        return self.bruhat_leq_index(u.index, w.index)

    def bruhat_lower_interval(self, w: int) -> list[int]:
        """Indices u with u <= w, in enumeration order."""
        if self.order <= BRUHAT_MATRIX_LIMIT:
            if self._bruhat_masks is None:
                self._build_bruhat_masks()
            m = self._bruhat_masks[w]
            return [u for u in range(self.order) if m >> u & 1]
        return [u for u in range(self.order) if self._bruhat_recursive(u, w)]

    # -- parabolic data ----------------------------------------------------

    def subset(self, spec) -> GeneratorSubset:
        """Build a GeneratorSubset from names, indices, a word string or a mask."""
        if isinstance(spec, GeneratorSubset):
            if spec.mask >> self.rank:
                raise ValueError("generator subset out of range")
            return spec
        if spec is None:
            return GeneratorSubset(0)
        if isinstance(spec, str):
            s = spec.strip()
            if s in ("", "{}", "none", "empty", "∅"):
                return GeneratorSubset(0)
            if s in ("S", "all"):
                return GeneratorSubset((1 << self.rank) - 1)
            parts = [p for p in re.split(r"[,\s{}]+", s) if p]
            idx = []
            for p in parts:
                idx.extend(self.parse_word(p))
            return GeneratorSubset.of(idx)
        idx = []
        for p in spec:
            if isinstance(p, str):
                idx.extend(self.parse_word(p))
            else:
                if not 0 <= p < self.rank:
                    raise ValueError(f"generator index {p} out of range")
                idx.append(p)
        return GeneratorSubset.of(idx)

    def in_parabolic(self, w: int, J: GeneratorSubset) -> bool:
        return all(i in J for i in self.words[w])

    def parabolic_elements(self, J) -> list[int]:
        J = self.subset(J)
        return [w for w in range(self.order) if self.in_parabolic(w, J)]

    def longest_element_index(self, J) -> int:
        J = self.subset(J)
        return max(self.parabolic_elements(J), key=lambda w: self.lengths[w])

    def longest_element(self, J=None) -> Element:
        if J is None:
            return self.w0
        return Element(self, self.longest_element_index(J))

    def coset_representatives(self, J, side: str = "left", extreme: str = "shortest") -> list[Element]:
        """Minimal or maximal representatives of W_J\\W (``left``) or W/W_J (``right``)."""
        return [Element(self, w) for w in self.coset_rep_indices(J, side, extreme)]

    def coset_rep_indices(self, J, side: str = "left", extreme: str = "shortest") -> list[int]:
        J = self.subset(J)
        if side == "left":
            masks = self.left_descent_masks
        elif side == "right":
            masks = self.right_descent_masks
        else:
            raise ValueError("side must be 'left' or 'right'")
        short = [w for w in range(self.order) if masks[w] & J.mask == 0]
        if extreme == "shortest":
            return short
        if extreme != "longest":
            raise ValueError("extreme must be 'shortest' or 'longest'")
        wj = self.longest_element_index(J)
        if side == "left":
            reps = [self.mul(wj, w) for w in short]
        else:
            reps = [self.mul(w, wj) for w in short]
        return sorted(reps)

    def parabolic_embed(self, J):
        """The Coxeter system of W_J and its embedding (list: sub index -> ambient index)."""
        J = self.subset(J)
        gens = J.indices()
        if not gens:
            sub = _TrivialSystem(self.name + "_{}")
            return sub, [0]
        matrix = [[self.coxeter_matrix[i][j] for j in gens] for i in gens]
        names = [self.generator_names[i] for i in gens]
        label = "{" + ",".join(names) + "}"
        sub = CoxeterSystem(matrix, names=names, cap=self.cap, name=f"{self.name}_{label}")
        embedding = [self.from_word(gens[i] for i in sub.words[w]) for w in range(sub.order)]
        return sub, embedding

    def to_json(self, with_bruhat: bool = False) -> dict:
        data = {
            "system": self.name,
            "rank": self.rank,
            "coxeter_matrix": self.coxeter_matrix,
            "generators": self.generator_names,
            "order": self.order,
            "w0": self.render(self.w0_index),
            "elements": [
                {"index": w, "word": self.render(w), "length": self.lengths[w]} for w in range(self.order)
            ],
        }
        if with_bruhat:
            data["bruhat"] = [
                [int(self.bruhat_leq_index(u, w)) for w in range(self.order)] for u in range(self.order)
            ]
        return data


class _TrivialSystem(CoxeterSystem):
    """The trivial Coxeter group (rank zero)."""

    def __init__(self, name: str = "trivial"):
        self.coxeter_matrix = []
        self.rank = 0
        self.generator_names = []
        self.cap = 1
        self.name = name
        self.order = 1
        self.words = [()]
        self.lengths = [0]
        self.right_table = [()]
        self.left_table = [()]
        self.right_descent_masks = [0]
        self.left_descent_masks = [0]
        self.inverse_index = [0]
        self.w0_index = 0
        self._word_lookup = {(): 0}
        self._bruhat_masks = [1]
        self._bruhat_cache = {}


def build_system(spec, cap: int = DEFAULT_CAP, names: Sequence[str] | None = None) -> CoxeterSystem:
    """Build a system from a Cartan type string (``"A2"``, ``"B_3"``) or a Coxeter matrix."""
    if isinstance(spec, CoxeterSystem):
        return spec
    if isinstance(spec, str):
        text = spec.strip()
        if text.startswith("["):
            import json

            try:
                matrix = json.loads(text)
            except ValueError as exc:
                raise MalformedMatrix(f"cannot parse matrix {spec!r}") from exc
            return CoxeterSystem(matrix, names=names, cap=cap)
        matrix = cartan_type_matrix(text)
        label = text.upper().replace("_", "")
        return CoxeterSystem(matrix, names=names, cap=cap, name=label)
    return CoxeterSystem(spec, names=names, cap=cap)


@lru_cache(maxsize=16)
def cached_system(spec: str, cap: int = DEFAULT_CAP) -> CoxeterSystem:
    return build_system(spec, cap=cap)
