"""Independent reference implementations used to cross-check the engine.

Nothing here imports the package's Hecke or cell code.  Type A is modelled on
permutations in one-line notation (Bruhat order by the tableau criterion, KL
polynomials by the classical q-recursion, cells via Robinson-Schensted);
dihedral groups use closed forms.  Polynomials are plain ``{exponent: coeff}``
dicts.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

# -- polynomial dicts ---------------------------------------------------------


def padd(p, q, sign=1):
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + sign * c
        if not out[k]:
            del out[k]
    return out


def pmul(p, q):
    out = {}
    for a, c in p.items():
        for b, d in q.items():
            out[a + b] = out.get(a + b, 0) + c * d
    return {k: c for k, c in out.items() if c}


def pshift(p, k):
    return {e + k: c for e, c in p.items()}


# -- permutations ------------------------------------------------------------------


def word_to_perm(word, n):
    """Product of adjacent transpositions, each acting on positions from the right."""
    p = list(range(n))
    for i in word:
        p[i], p[i + 1] = p[i + 1], p[i]
    return tuple(p)


def length(p):
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def bruhat_leq(x, w):
    """Tableau criterion."""
    for k in range(1, len(x)):
        if any(a > b for a, b in zip(sorted(x[:k]), sorted(w[:k]))):
            return False
    return True


def left_mul(i, p):
    """s_i * p swaps the values i and i+1."""
    return tuple(i + 1 if v == i else i if v == i + 1 else v for v in p)


def right_mul(p, i):
    q = list(p)
    q[i], q[i + 1] = q[i + 1], q[i]
    return tuple(q)


def inverse(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


class TypeA:
    """S_{n+1} with KL polynomials from the P-polynomial recursion."""

    def __init__(self, rank: int):
        self.n = rank + 1
        self.rank = rank
        self.elements = sorted(permutations(range(self.n)), key=lambda p: (length(p), p))
        self.e = tuple(range(self.n))

    @lru_cache(maxsize=None)
    def P(self, x, w):
        """P_{x,w} in q, as {exponent: coeff}."""
        if not bruhat_leq(x, w):
            return {}
        if x == w:
            return {0: 1}
        s = next(i for i in range(self.rank) if length(left_mul(i, w)) < length(w))
        v = left_mul(s, w)
        sx = left_mul(s, x)
        c = 1 if length(sx) < length(x) else 0
        out = padd(pshift(self.P(sx, v), 1 - c), pshift(self.P(x, v), c))
        for z in self.elements:
            if length(z) >= length(v) or length(left_mul(s, z)) > length(z):
                continue
            m = self.mu(z, v)
            if m and bruhat_leq(x, z):
                out = padd(out, pshift({k: m * c_ for k, c_ in self.P(x, z).items()}, (length(w) - length(z)) // 2), -1)
        return out

    def mu(self, z, v):
        d = length(v) - length(z)
        if d <= 0 or d % 2 == 0:
            return 0
        return self.P(z, v).get((d - 1) // 2, 0)

    def h(self, y, w):
        """h_{y,w}(v) = v^{l(w)-l(y)} P_{y,w}(v^-2)."""
        d = length(w) - length(y)
        return {d - 2 * k: c for k, c in self.P(y, w).items()}

    # naive Hecke algebra in the standard basis
    def times_generator(self, elt, i):
        out = {}
        for w, p in elt.items():
            ws = right_mul(w, i)
            if length(ws) > length(w):
                out[ws] = padd(out.get(ws, {}), p)
            else:
                out[ws] = padd(out.get(ws, {}), p)
                out[w] = padd(out.get(w, {}), padd(pshift(p, -1), pshift(p, 1), -1))
        return {w: p for w, p in out.items() if p}

    def std_mul(self, a, b):
        out = {}
        for w, q in b.items():
            word = reduced_word(w)
            part = dict(a)
            for i in word:
                part = self.times_generator(part, i)
            for z, p in part.items():
                out[z] = padd(out.get(z, {}), pmul(p, q))
        return {w: p for w, p in out.items() if p}

    def kl(self, w):
        return {y: self.h(y, w) for y in self.elements if bruhat_leq(y, w)}

    def structure_constants(self, x, y):
        """Coefficients of KL_x * KL_y in the KL basis, by peeling top-length terms."""
        rest = self.std_mul(self.kl(x), self.kl(y))
        out = {}
        while rest:
            top = max(rest, key=lambda w: (length(w), w))
            c = rest[top]
            out[top] = c
            for z, p in self.kl(top).items():
                rest[z] = padd(rest.get(z, {}), pmul(c, p), -1)
                if not rest[z]:
                    del rest[z]
        return out

    def a_function(self, w):
        """n(lambda) for the Robinson-Schensted shape lambda of w."""
        shape = rs_shape(w)
        return sum(i * row for i, row in enumerate(shape))


def reduced_word(p):
    """A reduced word via bubble sort (right descents)."""
    p = list(p)
    word = []
    while True:
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i)
                break
        else:
            return tuple(reversed(word))


def rsk(p):
    """Insertion and recording tableaux."""
    P, Q = [], []
    for step, v in enumerate(p):
        row = 0
        while True:
            if row == len(P):
                P.append([v])
                Q.append([step])
                break
            r = P[row]
            bump = next((j for j, u in enumerate(r) if u > v), None)
            if bump is None:
                r.append(v)
                Q[row].append(step)
                break
            r[bump], v = v, r[bump]
            row += 1
    return tuple(map(tuple, P)), tuple(map(tuple, Q))


def rs_shape(p):
    return tuple(len(r) for r in rsk(p)[0])


# -- dihedral closed forms --------------------------------------------------------


def dihedral_h(len_y, len_w, same):
    """All KL polynomials of a dihedral group are 1 on Bruhat intervals."""
    if same:
        return {0: 1}
    if len_y < len_w:
        return {len_w - len_y: 1}
    return {}


def dihedral_a(length_, m):
    if length_ == 0:
        return 0
    if length_ == m:
        return m
    return 1
