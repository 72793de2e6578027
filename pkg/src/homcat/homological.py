"""Homological invariants of the principal block of category O, read off Hecke data.

Nothing here touches modules directly.  Every quantity is obtained from KL
polynomials, KL structure constants and cell data through quoted rules:

* ``[Delta_x : L_w<-k>]`` is the coefficient of ``v^k`` in ``h_{x,w}``;
* ``proj.dim`` of the structural modules is given by lengths and the a-function;
* twisted projectives ``T_x P_y`` are ``theta_y Delta_x`` and twisted tiltings
  ``T_x T_y`` are ``theta_{w0 y} nabla_{x w0}``; their classes are
  ``H_x * KL_y`` and its duality flip.

Projective dimensions of twisted and shuffled modules are only partially known.
They are returned as :class:`~homcat.results.PdResult` values that say which
rule established them, and stay ranges where no rule applies.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .cells import CellData
from .coxeter import CoxeterSystem, Element, GeneratorSubset, build_system
from .errors import ConventionError, FixtureMissing, NotACosetRepresentative
from .hecke import HeckeAlgebra
from .laurent import NEG_INF, LaurentPoly
from .results import (
    DEGREE,
    POSITION,
    GradedMultiplicityTable,
    PdResult,
    Provenance,
    RegularityReport,
    Violation,
)

__all__ = [
    "StructuralKind",
    "HomologicalOracle",
    "SSubcategorySummary",
    "ConjectureReport",
    "oracle_for",
]

# wall-case rule enumerates all parabolic subsets; skip it beyond this rank
_WALL_RANK_LIMIT = 10


class StructuralKind(str, enum.Enum):
    DELTA = "Delta"
    NABLA = "nabla"
    P = "P"
    I = "I"  # noqa: E741
    T = "T"

    @classmethod
    def parse(cls, text) -> "StructuralKind":
        if isinstance(text, cls):
            return text
        aliases = {
            "delta": cls.DELTA, "Δ": cls.DELTA, "standard": cls.DELTA, "verma": cls.DELTA,
            "nabla": cls.NABLA, "∇": cls.NABLA, "costandard": cls.NABLA,
            "p": cls.P, "projective": cls.P,
            "i": cls.I, "injective": cls.I,
            "t": cls.T, "tilting": cls.T,
        }
        key = str(text).strip()
        kind = aliases.get(key) or aliases.get(key.lower())
        if kind is None:
            raise ValueError(f"unknown structural kind {text!r}")
        return kind


@dataclass
class SSubcategorySummary:
    system: CoxeterSystem
    J: GeneratorSubset
    projective_indices: list[int]
    tilting_indices: list[int]
    tilting_pd: dict[int, int]
    injective_pd: dict[int, int]

    def to_json(self) -> dict:
        r = self.system.render
        return {
            "system": self.system.name,
            "J": [self.system.generator_names[i] for i in self.J],
            "projective_injective_indices": [r(w) for w in self.projective_indices],
            "tilting_indices": [r(w) for w in self.tilting_indices],
            "tilting_pd": {r(w): d for w, d in self.tilting_pd.items()},
            "injective_pd": {r(w): d for w, d in self.injective_pd.items()},
        }

    def to_text(self) -> str:
        r = self.system.render
        names = ",".join(self.system.generator_names[i] for i in self.J) or "-"
        tw = [r(w) for w in self.tilting_indices]
        iw = [r(w) for w in self.projective_indices]
        width = max(len(x) for x in tw + iw + ["w"]) + 1
        return "\n".join(
            [
                f"{self.system.name} S-subcategory, J={{{names}}}",
                "w".ljust(8) + "".join(w.rjust(width) for w in tw),
                "pd T".ljust(8) + "".join(str(self.tilting_pd[w]).rjust(width) for w in self.tilting_indices),
                "w".ljust(8) + "".join(w.rjust(width) for w in iw),
                "pd I".ljust(8) + "".join(str(self.injective_pd[w]).rjust(width) for w in self.projective_indices),
            ]
        )


@dataclass
class ConjectureCheck:
    name: str
    statement: str
    evaluated: int = 0
    confirmed: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    status: str = ""

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "statement": self.statement,
            "evaluated": self.evaluated,
            "confirmed": self.confirmed,
            "counterexamples": self.counterexamples,
        }
        if self.status:
            out["status"] = self.status
        return out


@dataclass
class ConjectureReport:
    system: str
    source: str
    checks: list[ConjectureCheck]

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "source": self.source,
            "verdict": "pass" if self.passed else "fail",
            "checks": [c.to_json() for c in self.checks],
        }

    def to_text(self) -> str:
        lines = [f"{self.system} conjectures (source: {self.source}): {'pass' if self.passed else 'fail'}"]
        for c in self.checks:
            if c.status:
                lines.append(f"  {c.name}: {c.status}")
            else:
                lines.append(
                    f"  {c.name}: {c.confirmed}/{c.evaluated} confirmed, {len(c.counterexamples)} counterexamples"
                )
            for ce in c.counterexamples:
                lines.append(f"    counterexample: {ce}")
        return "\n".join(lines)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


class HomologicalOracle:
    """All homological computations for one finite Coxeter system."""

    def __init__(self, system: CoxeterSystem, hecke: HeckeAlgebra | None = None):
        self.system = system
        self.hecke = hecke or HeckeAlgebra(system)
        self.cells = CellData(self.hecke)
        self._lock = threading.RLock()
        self._delta: list[list[PdResult]] | None = None
        self._nabla: list[list[PdResult]] | None = None
        self._descent_ok: dict[tuple[int, int], bool] = {}

    # -- small helpers -----------------------------------------------------

    @property
    def w0(self) -> int:
        return self.system.w0_index

    def _a(self, w: int) -> int:
        return self.cells.a_table[w]

    def _l(self, w: int) -> int:
        return self.system.lengths[w]

    def _mul(self, *ws: int) -> int:
        out = 0
        for w in ws:
            out = self.system.mul(out, w)
        return out

    def _inv(self, w: int) -> int:
        return self.system.inverse_index[w]

    def _idx(self, w) -> int:
        return self.system.idx(w)

    def _gen(self, s) -> int:
        """Generator index (0..rank-1) of a simple reflection given by name, index or element."""
        W = self.system
        if isinstance(s, int) and not isinstance(s, bool):
            if not 0 <= s < W.rank:
                raise ValueError(f"generator index {s} out of range")
            return s
        w = W.idx(s)
        word = W.words[w]
        if len(word) != 1:
            raise ValueError(f"{W.render(w)} is not a simple reflection")
        return word[0]

    def _conj_subset(self, J: GeneratorSubset) -> GeneratorSubset:
        W = self.system
        out = []
        for i in J:
            c = W.conj_w0(W.generator_index(i))
            out.append(W.words[c][0])
        return GeneratorSubset.of(out)

    # -- decomposition numbers and structural modules ------------------------

    def graded_decomposition_number(self, x, w) -> LaurentPoly:
        """``h_{x,w}``; its ``v^k`` coefficient is ``[Delta_x : L_w<-k>]``."""
        return self.hecke.kl_polynomial(x, w)

    def structural_proj_dim(self, kind, w) -> int:
        kind = StructuralKind.parse(kind)
        w = self._idx(w)
        if kind is StructuralKind.P:
            return 0
        if kind is StructuralKind.DELTA:
            return self._l(w)
        if kind is StructuralKind.T:
            return self._a(w)
        if kind is StructuralKind.I:
            return 2 * self._a(self._mul(self.w0, w))
        return 2 * self._l(self.w0) - self._l(w)

    def structural_table(self, kind) -> list[int]:
        return [self.structural_proj_dim(kind, w) for w in range(self.system.order)]

    def tilting_coresolution_dominant(self) -> GradedMultiplicityTable:
        """Multiplicity of ``T_w`` at position ``i`` in the tilting coresolution of ``P_e``."""
        W, H = self.system, self.hecke
        entries = {}
        for w in range(W.order):
            u = self._mul(self.w0, self._inv(w), self.w0)
            for i, c in H.kl_poly_index(0, u).terms():
                entries[(w, i)] = c
        return GradedMultiplicityTable(W, "tilting coresolution of P_e", entries, POSITION)

    def linear_injective_coresolution_antidominant(self) -> GradedMultiplicityTable:
        """Multiplicity of ``I_x`` at position ``i`` in the linear injective coresolution of ``T_w0``."""
        W, H = self.system, self.hecke
        entries = {}
        for x in range(W.order):
            u = self._mul(self.w0, self._inv(x))
            for i, c in H.kl_poly_index(0, u).terms():
                entries[(x, i)] = c
        return GradedMultiplicityTable(W, "linear injective coresolution of T_w0", entries, POSITION)

    # -- regularity certificates -----------------------------------------------

    def certify_auslander_ringel(self) -> RegularityReport:
        """Every ``T_w`` at position ``i`` of the coresolution of ``P_e`` has ``a(w) <= i <= l(w)``."""
        W = self.system
        report = RegularityReport(W.name, "auslander-ringel")
        for (w, i), _ in self.tilting_coresolution_dominant():
            report.checked += 1
            lo, hi = self._a(w), self._l(w)
            if not lo <= i <= hi:
                report.violations.append(Violation(W.render(w), i, f"[{lo},{hi}]", i))
        return report

    def certify_auslander(self) -> RegularityReport:
        """Support, monotonicity and linear-coresolution conditions, each checked exhaustively."""
        W, H, C = self.system, self.hecke, self.cells
        n = W.order
        r = W.render
        support = RegularityReport(W.name, "support: h_{w,y}^z != 0 implies z >=_J w")
        for w in range(n):
            for y in range(n):
                for z in H.structure_constants_index(w, y):
                    support.checked += 1
                    if not C.leq_index("J", w, z):
                        support.violations.append(
                            Violation(f"({r(w)},{r(y)},{r(z)})", None, f">=_J {r(w)}", r(z))
                        )
        mono = RegularityReport(W.name, "monotonicity: x >=_J y implies a(w0 x) <= a(w0 y)")
        up = C.up_masks("J")
        for y in range(n):
            ay = self._a(self._mul(self.w0, y))
            for x in range(n):
                if up[y] >> x & 1:
                    mono.checked += 1
                    ax = self._a(self._mul(self.w0, x))
                    if ax > ay:
                        mono.violations.append(Violation(f"({r(x)},{r(y)})", None, f"<= {ay}", ax))
        linear = RegularityReport(W.name, "linear coresolution: I_x at position i has i >= a(w0 x)")
        for (x, i), _ in self.linear_injective_coresolution_antidominant():
            linear.checked += 1
            bound = self._a(self._mul(self.w0, x))
            if i < bound:
                linear.violations.append(Violation(r(x), i, f">= {bound}", i))
        report = RegularityReport(W.name, "auslander", parts=[support, mono, linear])
        report.checked = support.checked + mono.checked + linear.checked
        return report

    # -- parabolic blocks ------------------------------------------------------

    def singular_verma_character(self, J) -> GradedMultiplicityTable:
        """Graded character of the singular dominant Verma module, indexed by ``long(W/W_J')``."""
        W, H = self.system, self.hecke
        J = W.subset(J)
        Jp = self._conj_subset(J)
        shift = self._l(W.longest_element_index(J))
        entries = {}
        for u in W.coset_rep_indices(Jp, "right", "longest"):
            for k, c in H.kl_poly_index(0, u).terms():
                entries[(u, k - shift)] = c
        return GradedMultiplicityTable(W, f"singular Verma character, J={self._names(J)}", entries, DEGREE)

    def _names(self, J: GeneratorSubset) -> str:
        return "{" + ",".join(self.system.generator_names[i] for i in J) + "}"

    def _check_short(self, x: int, J: GeneratorSubset):
        if self.system.left_descent_masks[x] & J.mask:
            raise NotACosetRepresentative(
                f"{self.system.render(x)} is not a shortest representative of W_J\\W for J={self._names(J)}"
            )

    def parabolic_proj_dim(self, kind, x, J) -> int:
        W = self.system
        J = W.subset(J)
        kind = StructuralKind.parse(kind)
        x = self._idx(x)
        self._check_short(x, J)
        wj = W.longest_element_index(J)
        if kind is StructuralKind.T:
            return self._a(self._mul(wj, x)) - self._a(wj)
        if kind is StructuralKind.I:
            return 2 * self._a(self._mul(self.w0, x)) - 2 * self._a(wj)
        raise ValueError("parabolic_proj_dim supports the kinds T and I")

    def parabolic_tilting_coresolution(self, J) -> GradedMultiplicityTable:
        W = self.system
        J = W.subset(J)
        sv = self.singular_verma_character(J)
        longs = set(W.coset_rep_indices(self._conj_subset(J), "right", "longest"))
        wj = W.longest_element_index(J)
        shorts = W.coset_rep_indices(J, "left", "shortest")
        image = {}
        for x in shorts:
            u = self._mul(self.w0, self._inv(self._mul(wj, x)), self.w0)
            if u not in longs:
                raise ConventionError(
                    f"index translation sends {W.render(x)} to {W.render(u)}, outside long(W/W_J')"
                )
            image[x] = u
        if set(image.values()) != longs:
            raise ConventionError("index translation is not a bijection onto long(W/W_J')")
        entries = {}
        for x, u in image.items():
            for k, m in sv.column(u).items():
                entries[(x, k)] = m
        return GradedMultiplicityTable(
            W, f"parabolic tilting coresolution of P_e, J={self._names(J)}", entries, POSITION
        )

    def certify_parabolic(self, J) -> RegularityReport:
        W = self.system
        J = W.subset(J)
        report = RegularityReport(W.name, f"parabolic auslander-ringel, J={self._names(J)}")
        for (x, i), _ in self.parabolic_tilting_coresolution(J):
            report.checked += 1
            pd = self.parabolic_proj_dim(StructuralKind.T, x, J)
            if pd > i:
                report.violations.append(Violation(W.render(x), i, f"pd <= {i}", pd))
        return report

    def s_subcategory_summary(self, J) -> SSubcategorySummary:
        W = self.system
        J = W.subset(J)
        longs = W.coset_rep_indices(J, "left", "longest")
        shorts = W.coset_rep_indices(J, "left", "shortest")
        return SSubcategorySummary(
            W,
            J,
            longs,
            shorts,
            {w: self.structural_proj_dim(StructuralKind.T, w) for w in shorts},
            {w: self.structural_proj_dim(StructuralKind.I, w) for w in longs},
        )

    # -- twisted modules: characters -------------------------------------------

    def _flag_index(self, x: int, y: int) -> dict[int, LaurentPoly]:
        H = self.hecke
        return H._std_mul({x: LaurentPoly((1,), 0)}, H.kl_table[y])

    def twisted_verma_flag(self, x, y) -> dict[Element, LaurentPoly]:
        """Graded Verma flag of ``T_x P_y``: the standard-basis coefficients of ``H_x KL_y``."""
        W = self.system
        flag = self._flag_index(self._idx(x), self._idx(y))
        return {Element(W, z): p for z, p in sorted(flag.items())}

    def _character_from_flag(self, flag: dict[int, LaurentPoly], label: str) -> GradedMultiplicityTable:
        W, H = self.system, self.hecke
        acc: dict[int, LaurentPoly] = {}
        for z, c in flag.items():
            for w, h in H.kl_table_by_lower(z).items():
                acc[w] = acc.get(w, LaurentPoly()) + c * h
        entries = {}
        for w, p in acc.items():
            for k, m in p.terms():
                if m < 0:
                    raise ConventionError(f"negative multiplicity in {label}")
                entries[(w, k)] = m
        return GradedMultiplicityTable(W, label, entries, DEGREE)

    def twisted_projective_character(self, x, y) -> GradedMultiplicityTable:
        W = self.system
        x, y = self._idx(x), self._idx(y)
        label = f"graded character of T_{W.render(x)} P_{W.render(y)}"
        return self._character_from_flag(self._flag_index(x, y), label)

    def twisted_tilting_character(self, x, y) -> GradedMultiplicityTable:
        W = self.system
        x, y = self._idx(x), self._idx(y)
        base = self.twisted_projective_character(self._mul(x, self.w0), self._mul(self.w0, y))
        return base.reversed(f"graded character of T_{W.render(x)} T_{W.render(y)}")

    # -- twisted modules: projective dimension -----------------------------------

    def twisted_pd_upper_bound(self, x, y) -> tuple[int, bool]:
        """Bound on ``pd theta_x Delta_y`` from the b-function, and whether it is attained at ``a = y``."""
        return self._b_bound(self._idx(x), self._idx(y))

    def _b_bound(self, x: int, y: int) -> tuple[int, bool]:
        W = self.system
        B = self.cells.b_table
        second = self._mul(self._inv(x), self.w0)
        best = NEG_INF
        top = NEG_INF
        for a in W.bruhat_lower_interval(y):
            val = B[self._mul(self.w0, self._inv(a), self.w0)][second]
            if val is not NEG_INF and (best is NEG_INF or val > best):
                best = val
            if a == y:
                top = val
        # a = e always contributes b(e, .) = 0
        return best, top is not NEG_INF and top == best

    def descent_rule_holds(self, a: int, s: int) -> bool:
        """Check ``H_{bs} KL_a`` is a grading shift of ``H_b KL_a`` for every ``b``.

        ``s`` is a generator index in the left descent set of ``a``.
        """
        key = (a, s)
        hit = self._descent_ok.get(key)
        if hit is not None:
            return hit
        W = self.system
        ok = True
        for b in range(W.order):
            bs = W.right_table[b][s]
            if W.lengths[bs] < W.lengths[b]:
                continue
            lo = self._flag_index(b, a)
            hi = self._flag_index(bs, a)
            if {z: p.shift(-1) for z, p in lo.items()} != hi:
                ok = False
                break
        self._descent_ok[key] = ok
        return ok

    def _wall_pairs(self) -> list[tuple[int, int, int]]:
        """``(theta parameter, w0^J, l(w0^J))`` triples with theta parameter ``<=_R w0^J w0``."""
        W, C = self.system, self.cells
        if W.rank > _WALL_RANK_LIMIT:
            return []
        out = []
        for k in range(W.rank + 1):
            for gens in combinations(range(W.rank), k):
                wj = W.longest_element_index(GeneratorSubset.of(gens))
                target = self._mul(wj, self.w0)
                for a in range(W.order):
                    if C.leq_index("R", a, target):
                        out.append((a, wj, self._l(wj)))
        return out

    def _propagate(self, direct, lo, hi, use_descent: bool = True) -> list[list[PdResult]]:
        """Combine direct exact values with descent/cell propagation and monotone bounds.

        ``direct[(a, b)]`` lists ``(value, provenance)`` pairs for the module with
        theta parameter ``a`` and (co)standard parameter ``b``.
        """
        W, C = self.system, self.cells
        n = W.order
        r = W.render
        value: dict[int, tuple[int, Provenance]] = {}
        for (a, b), cands in direct.items():
            vals = {v for v, _ in cands}
            if len(vals) > 1:
                raise ConventionError(f"rules disagree at ({r(a)},{r(b)}): {cands}")
            value[a * n + b] = cands[0]

        uf = _UnionFind(n * n)
        edge_kind: dict[tuple[int, int], Provenance] = {}
        adj: list[list[int]] = [[] for _ in range(n * n)]

        def link(i, j, prov):
            uf.union(i, j)
            adj[i].append(j)
            adj[j].append(i)
            edge_kind.setdefault((i, j), prov)
            edge_kind.setdefault((j, i), prov)

        if use_descent:
            for a in range(n):
                for s in range(W.rank):
                    if not W.left_descent_masks[a] >> s & 1:
                        continue
                    if not self.descent_rule_holds(a, s):
                        continue
                    for b in range(n):
                        link(a * n + b, a * n + W.right_table[b][s], Provenance.DESCENT)
        for cell in C.cell_indices("R"):
            for a, a2 in zip(cell, cell[1:]):
                for b in range(n):
                    link(a * n + b, a2 * n + b, Provenance.CELL)

        lo = [row[:] for row in lo]
        hi = [row[:] for row in hi]
        prov = [[None] * n for _ in range(n)]

        # breadth-first spread of exact values, recording the rule used
        frontier = sorted(value)
        for i in frontier:
            a, b = divmod(i, n)
            prov[a][b] = value[i][1]
        while frontier:
            nxt = []
            for i in frontier:
                for j in adj[i]:
                    if j in value:
                        if value[j][0] != value[i][0]:
                            a, b = divmod(j, n)
                            raise ConventionError(f"propagated values disagree at ({r(a)},{r(b)})")
                        continue
                    value[j] = (value[i][0], edge_kind[(i, j)])
                    a, b = divmod(j, n)
                    prov[a][b] = value[j][1]
                    nxt.append(j)
            frontier = nxt
        for i, (v, _) in value.items():
            a, b = divmod(i, n)
            if not lo[a][b] <= v <= hi[a][b]:
                raise ConventionError(f"exact value {v} at ({r(a)},{r(b)}) outside [{lo[a][b]},{hi[a][b]}]")
            lo[a][b] = hi[a][b] = v

        # pd decreases weakly as the theta parameter goes up in the right order
        up = C.up_masks("R")
        groups: dict[int, list[int]] = {}
        for i in range(n * n):
            groups.setdefault(uf.find(i), []).append(i)
        changed = True
        while changed:
            changed = False
            for b in range(n):
                for a in range(n):
                    for a2 in range(n):
                        if a2 != a and up[a] >> a2 & 1:
                            if lo[a2][b] > lo[a][b]:
                                lo[a][b] = lo[a2][b]
                                changed = True
                            if hi[a][b] < hi[a2][b]:
                                hi[a2][b] = hi[a][b]
                                changed = True
            for members in groups.values():
                glo = max(lo[i // n][i % n] for i in members)
                ghi = min(hi[i // n][i % n] for i in members)
                for i in members:
                    a, b = divmod(i, n)
                    if lo[a][b] != glo or hi[a][b] != ghi:
                        lo[a][b], hi[a][b] = glo, ghi
                        changed = True
        out = []
        for a in range(n):
            row = []
            for b in range(n):
                if lo[a][b] > hi[a][b]:
                    raise ConventionError(f"empty range at ({r(a)},{r(b)})")
                p = prov[a][b]
                if p is None:
                    p = Provenance.MONOTONE if lo[a][b] == hi[a][b] else None
                row.append((lo[a][b], hi[a][b], p))
            out.append(row)
        return out

    def _delta_table(self) -> list[list[PdResult]]:
        """``table[a][b] = pd theta_a Delta_b``."""
        if self._delta is not None:
            return self._delta
        with self._lock:
            if self._delta is not None:
                return self._delta
            W = self.system
            n, w0 = W.order, self.w0
            direct: dict[tuple[int, int], list] = {}

            def put(a, b, v, p):
                direct.setdefault((a, b), []).append((v, p))

            lo = [[0] * n for _ in range(n)]
            hi = [[0] * n for _ in range(n)]
            bound_kind = {}
            for a in range(n):
                for b in range(n):
                    if b == 0:
                        put(a, b, 0, Provenance.PROJECTIVE)
                    if b == w0:
                        put(a, b, self._a(self._mul(w0, a)), Provenance.TILTING)
                    if a == 0:
                        put(a, b, self._l(b), Provenance.VERMA)
                    if a == w0:
                        put(a, b, 0, Provenance.PROJECTIVE)
                    bound, top = self._b_bound(a, b)
                    if top:
                        put(a, b, bound, Provenance.B_BOUND_EXACT)
                    if bound <= self._l(b):
                        hi[a][b], bound_kind[(a, b)] = bound, Provenance.B_BOUND
                    else:
                        hi[a][b], bound_kind[(a, b)] = self._l(b), Provenance.LENGTH_BOUND
            for a, wj, lj in self._wall_pairs():
                put(a, wj, lj, Provenance.WALL)
            raw = self._propagate(direct, lo, hi)
            self._delta = [
                [PdResult(l, h, p or bound_kind[(a, b)]) for b, (l, h, p) in enumerate(row)]
                for a, row in enumerate(raw)
            ]
            return self._delta

    def _nabla_table(self) -> list[list[PdResult]]:
        """``table[a][b] = pd theta_a nabla_b``."""
        if self._nabla is not None:
            return self._nabla
        with self._lock:
            if self._nabla is not None:
                return self._nabla
            delta = self._delta_table()
            W = self.system
            n, w0 = W.order, self.w0
            lw0 = self._l(w0)
            direct: dict[tuple[int, int], list] = {}

            def put(a, b, v, p):
                direct.setdefault((a, b), []).append((v, p))

            lo = [[0] * n for _ in range(n)]
            hi = [[0] * n for _ in range(n)]
            bound_kind = {}
            conj = {}
            for a in range(n):
                aw = self._a(self._mul(w0, a))
                for b in range(n):
                    if b == w0:
                        put(a, b, aw, Provenance.TILTING)
                    if b == 0:
                        put(a, b, 2 * aw, Provenance.INJECTIVE)
                    if a == 0:
                        put(a, b, 2 * lw0 - self._l(b), Provenance.COSTANDARD)
                    if a == w0:
                        put(a, b, 0, Provenance.PROJECTIVE)
                    d = delta[a][self._mul(w0, b)]
                    via = aw + d.hi
                    cap = 2 * lw0 - self._l(b)
                    if via <= cap:
                        hi[a][b], bound_kind[(a, b)] = via, Provenance.TILTING_BOUND
                    else:
                        hi[a][b], bound_kind[(a, b)] = cap, Provenance.LENGTH_BOUND
                    if d.is_exact:
                        conj[(a, b)] = aw + d.lo
            raw = self._propagate(direct, lo, hi)
            self._nabla = [
                [
                    PdResult(l, h, p or bound_kind[(a, b)], conj.get((a, b)))
                    for b, (l, h, p) in enumerate(row)
                ]
                for a, row in enumerate(raw)
            ]
            return self._nabla

    def proj_dim_twisted_projective(self, x, y) -> PdResult:
        """``pd T_x P_y`` (computed as ``pd theta_y Delta_x``)."""
        return self._delta_table()[self._idx(y)][self._idx(x)]

    def proj_dim_twisted_tilting(self, x, y) -> PdResult:
        """``pd T_x T_y`` (computed as ``pd theta_{w0 y} nabla_{x w0}``)."""
        x, y = self._idx(x), self._idx(y)
        return self._nabla_table()[self._mul(self.w0, y)][self._mul(x, self.w0)]

    def proj_dim_theta_delta(self, a, b) -> PdResult:
        return self._delta_table()[self._idx(a)][self._idx(b)]

    def proj_dim_theta_nabla(self, a, b) -> PdResult:
        return self._nabla_table()[self._idx(a)][self._idx(b)]

    def twisted_projective_table(self) -> list[list[PdResult]]:
        n = self.system.order
        return [[self.proj_dim_twisted_projective(x, y) for y in range(n)] for x in range(n)]

    def twisted_tilting_table(self) -> list[list[PdResult]]:
        n = self.system.order
        return [[self.proj_dim_twisted_tilting(x, y) for y in range(n)] for x in range(n)]

    # -- shuffled modules --------------------------------------------------------

    def _known(self, cands, x, y) -> tuple[int, Provenance] | None:
        if not cands:
            return None
        if len({v for v, _ in cands}) > 1:
            r = self.system.render
            raise ConventionError(f"rules disagree at ({r(x)},{r(y)}): {cands}")
        return cands[0]

    def proj_dim_shuffled_projective(self, x, y, fixture: int | None = None) -> PdResult:
        """``pd C_x P_y``; a fixture value may replace a range it lies in."""
        W = self.system
        x, y = self._idx(x), self._idx(y)
        w0 = self.w0
        cands = []
        if x == 0:
            cands.append((0, Provenance.PROJECTIVE))
        if x == w0:
            cands.append((self._a(self._mul(y, w0)), Provenance.TILTING))
        if y == 0:
            cands.append((self._l(x), Provenance.VERMA))
        if y == w0:
            cands.append((0, Provenance.PROJECTIVE))
        if self._l(x) == 1:
            s = W.words[x][0]
            cands.append((0 if W.right_descent_masks[y] >> s & 1 else 1, Provenance.SIMPLE_REFLECTION))
        known = self._known(cands, x, y)
        if known is not None:
            return PdResult.exact(*known)
        res = PdResult(0, self._l(x), Provenance.LENGTH_BOUND)
        return self._with_fixture(res, fixture, x, y)

    def _with_fixture(self, res: PdResult, fixture, x, y) -> PdResult:
        if fixture is None:
            return res
        if not res.contains(fixture):
            r = self.system.render
            raise ConventionError(f"fixture value {fixture} at ({r(x)},{r(y)}) outside {res}")
        return PdResult.exact(fixture, Provenance.FIXTURE, res.conjectured)

    def proj_dim_shuffled_tilting(self, x, y, fixture: int | None = None, projective_fixture=None) -> PdResult:
        """``pd C_x T_y``.  ``projective_fixture`` may supply ``pd C_x P_{w0 y}`` for the bound."""
        W = self.system
        x, y = self._idx(x), self._idx(y)
        w0 = self.w0
        ay = self._a(y)
        cands = []
        if x == 0:
            cands.append((ay, Provenance.TILTING))
        if x == w0:
            cands.append((2 * self._a(self._mul(w0, y, w0)), Provenance.INJECTIVE))
        if y == 0:
            cands.append((0, Provenance.PROJECTIVE))
        if y == w0:
            cands.append((self._l(w0) + self._l(x), Provenance.COSTANDARD))
        if self._l(x) == 1:
            s = W.words[x][0]
            cands.append((ay + 1 if W.right_descent_masks[y] >> s & 1 else ay, Provenance.SIMPLE_REFLECTION))
        partner = self.proj_dim_shuffled_projective(x, self._mul(w0, y), projective_fixture)
        conj = ay + partner.lo if partner.is_exact else None
        known = self._known(cands, x, y)
        if known is not None:
            return PdResult.exact(known[0], known[1], conj)
        cap = self._l(x) + ay
        via = ay + partner.hi
        if via < cap:
            res = PdResult(0, via, Provenance.TILTING_BOUND, conj)
        else:
            res = PdResult(0, cap, Provenance.LENGTH_BOUND, conj)
        return self._with_fixture(res, fixture, x, y)

    def shuffled_projective_table(self, fixture=None) -> list[list[PdResult]]:
        n = self.system.order
        return [
            [self.proj_dim_shuffled_projective(x, y, fixture[x][y] if fixture else None) for y in range(n)]
            for x in range(n)
        ]

    def shuffled_tilting_table(self, fixture=None, projective_fixture=None) -> list[list[PdResult]]:
        n, w0 = self.system.order, self.w0
        out = []
        for x in range(n):
            row = []
            for y in range(n):
                f = fixture[x][y] if fixture else None
                pf = projective_fixture[x][self._mul(w0, y)] if projective_fixture else None
                row.append(self.proj_dim_shuffled_tilting(x, y, f, pf))
            out.append(row)
        return out

    # -- further certificates -----------------------------------------------------

    def certify_shuffle_simple(self, s, variant: str = "projective") -> RegularityReport:
        W, H = self.system, self.hecke
        i = self._gen(s)
        sidx = W.generator_index(i)
        r = W.render
        if variant not in ("projective", "tilting"):
            raise ValueError("variant must be 'projective' or 'tilting'")
        report = RegularityReport(W.name, f"shuffle-simple {variant}, s={r(sidx)}")
        for x in range(W.order):
            xs_down = W.right_descent_masks[x] >> i & 1
            if variant == "projective":
                if xs_down:
                    continue
                base = x
            else:
                if not xs_down:
                    continue
                base = self._mul(self.w0, x)
            for z in H.structure_constants_index(base, sidx):
                if z == base:
                    continue
                report.checked += 1
                if variant == "projective":
                    if not W.right_descent_masks[z] >> i & 1:
                        report.violations.append(Violation(r(x), None, f"{r(z)}s < {r(z)}", r(z)))
                else:
                    u = self._mul(self.w0, z)
                    if W.right_descent_masks[u] >> i & 1:
                        report.violations.append(Violation(r(x), None, f"{r(u)}s > {r(u)}", r(u)))
        return report

    def certify_twisted_levi(self, J, variant: str = "projective") -> RegularityReport:
        """Levi-induced certificate for twisting by ``w0^J``, computed on the subsystem ``W_J``."""
        W = self.system
        J = W.subset(J)
        if variant not in ("projective", "tilting"):
            raise ValueError("variant must be 'projective' or 'tilting'")
        sub, emb = W.parabolic_embed(J)
        levi = oracle_for(sub)
        wj = W.longest_element_index(J)
        r = W.render
        report = RegularityReport(W.name, f"twisted-levi {variant}, J={self._names(J)}")
        components = []
        if variant == "projective":
            for (x, i), m in levi.tilting_coresolution_dominant():
                report.checked += 1
                pd = levi._a(x)
                target = emb[levi._mul(levi.w0, x)]
                components.append(
                    {"levi_tilting": sub.render(x), "module": f"T_{r(wj)}P_{r(target)}", "position": i,
                     "mult": m, "pd": pd}
                )
                if pd > i:
                    report.violations.append(Violation(sub.render(x), i, f"pd <= {i}", pd))
        else:
            inner = levi.certify_auslander()
            report.parts.append(inner)
            report.checked = inner.checked
            for (x, i), m in levi.linear_injective_coresolution_antidominant():
                target = emb[levi._mul(levi.w0, x)]
                components.append(
                    {"levi_injective": sub.render(x), "module": f"T_{r(wj)}T_{r(target)}", "position": i,
                     "mult": m, "pd": 2 * levi._a(levi._mul(levi.w0, x))}
                )
        report.details = {"levi": sub.name, "twist": r(wj), "components": components}
        return report

    def remark_necessary_condition(self, w) -> tuple[int, bool]:
        """Ungraded multiplicity of ``Delta_w0`` in the standard flag of ``T_w``."""
        w = self._idx(w)
        m = self.hecke.kl_poly_index(0, self._mul(self.w0, w)).evaluate(1)
        return m, m == 1

    def twisting_cohomology_window(self, w) -> tuple[int, int, int]:
        w = self._idx(w)
        u = self._mul(self.w0, w)
        return self._a(u), self._l(u), 2 * self._a(u)

    def conjecture_tables(self) -> dict[str, list[list[int | None]]]:
        """Engine values in the layout of the fixture pd tables (``None`` where not exact)."""
        n = self.system.order

        def vals(table):
            return [[table[x][y].value for y in range(n)] for x in range(n)]

        return {
            "twisted-projective-pd": vals(self.twisted_projective_table()),
            "twisted-tilting-pd": vals(self.twisted_tilting_table()),
            "shuffled-projective-pd": vals(self.shuffled_projective_table()),
            "shuffled-tilting-pd": vals(self.shuffled_tilting_table()),
        }

    def check_conjectures(self, tables: dict | None = None, source: str = "fixture") -> ConjectureReport:
        """Evaluate the two pd conjectures on every pair where both sides are known exactly.

        ``tables`` maps table names to square grids indexed ``[x][y]`` (``None``
        for unknown).  Pass ``source="engine"`` to use certified engine values.
        """
        W = self.system
        n, w0 = W.order, self.w0
        r = W.render
        if tables is None:
            if source != "engine":
                raise FixtureMissing(f"no fixture tables supplied for {W.name}")
            tables = self.conjecture_tables()
        need = ("twisted-projective-pd", "twisted-tilting-pd", "shuffled-projective-pd", "shuffled-tilting-pd")
        missing = [k for k in need if k not in tables]
        if missing:
            raise FixtureMissing(f"{W.name}: missing tables {missing}")
        tp, tt = tables["twisted-projective-pd"], tables["twisted-tilting-pd"]
        sp, st = tables["shuffled-projective-pd"], tables["shuffled-tilting-pd"]
        twisted = ConjectureCheck(
            "twisted-tilting", "pd T_x T_y = a(y) + pd T_{w0 x w0} P_{w0 y}"
        )
        shuffled = ConjectureCheck("shuffled-tilting", "pd C_x T_y = a(y) + pd C_x P_{w0 y}")
        for x in range(n):
            for y in range(n):
                ay = self._a(y)
                wy = self._mul(w0, y)
                lhs, rhs = tt[x][y], tp[self._mul(w0, x, w0)][wy]
                if lhs is not None and rhs is not None:
                    twisted.evaluated += 1
                    if lhs == ay + rhs:
                        twisted.confirmed += 1
                    else:
                        twisted.counterexamples.append({"x": r(x), "y": r(y), "lhs": lhs, "rhs": ay + rhs})
                lhs, rhs = st[x][y], sp[x][wy]
                if lhs is not None and rhs is not None:
                    shuffled.evaluated += 1
                    if lhs == ay + rhs:
                        shuffled.confirmed += 1
                    else:
                        shuffled.counterexamples.append({"x": r(x), "y": r(y), "lhs": lhs, "rhs": ay + rhs})
        checks = [twisted, shuffled]
        for variant in ("projective", "tilting"):
            checks.append(self._shuffle_regularity_status(variant))
        return ConjectureReport(W.name, source, checks)

    def _shuffle_regularity_status(self, variant: str) -> ConjectureCheck:
        """Regularity for shuffling by every parabolic longest element: proved cases only."""
        W = self.system
        kind = "C_wP" if variant == "projective" else "C_wT"
        check = ConjectureCheck(f"{kind}-regularity", f"O_0 is {kind}-regular for w = w0^J")
        settled, open_ = [], []
        for k in range(W.rank + 1):
            for gens in combinations(range(W.rank), k):
                label = self._names(GeneratorSubset.of(gens))
                if k == 0:
                    settled.append(label)
                    continue
                if k == 1:
                    rep = self.certify_shuffle_simple(gens[0], variant)
                elif k == W.rank:
                    rep = self.certify_auslander_ringel() if variant == "projective" else self.certify_auslander()
                else:
                    open_.append(label)
                    continue
                check.evaluated += 1
                if rep.passed:
                    check.confirmed += 1
                    settled.append(label)
                else:
                    check.counterexamples.append({"J": label, "report": rep.to_json()})
        check.status = f"certified for J in {settled}; not evaluated for {open_ or 'none'}"
        return check


@lru_cache(maxsize=32)
def _oracle_cached(system: CoxeterSystem) -> HomologicalOracle:
    return HomologicalOracle(system)


def oracle_for(system) -> HomologicalOracle:
    """Shared oracle for a system object or type string."""
    if not isinstance(system, CoxeterSystem):
        from .coxeter import cached_system

        system = cached_system(system) if isinstance(system, str) else build_system(system)
    return _oracle_cached(system)
