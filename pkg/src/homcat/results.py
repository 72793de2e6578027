"""Result records: multiplicity grids, projective-dimension values and certificates.

Every record renders as aligned text and as JSON-compatible dictionaries.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .coxeter import CoxeterSystem

__all__ = [
    "POSITION",
    "DEGREE",
    "GradedMultiplicityTable",
    "Provenance",
    "PdResult",
    "Violation",
    "RegularityReport",
]

POSITION = "pos"
DEGREE = "deg"


class GradedMultiplicityTable:
    """A finite map ``(element index, integer) -> nonnegative multiplicity``.

    The integer axis is a homological position (coresolutions) or an internal
    degree (character grids); ``axis`` records which.
    """

    def __init__(
        self,
        system: CoxeterSystem,
        label: str,
        entries: Mapping[tuple[int, int], int] | Iterable[tuple[tuple[int, int], int]] = (),
        axis: str = POSITION,
    ):
        if axis not in (POSITION, DEGREE):
            raise ValueError(f"unknown axis {axis!r}")
        self.system = system
        self.label = label
        self.axis = axis
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: dict[tuple[int, int], int] = {}
        for key, m in items:
            if m < 0:
                raise ValueError("multiplicities must be nonnegative")
            if m:
                data[key] = data.get(key, 0) + m
        self.entries = dict(sorted(data.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def get(self, w, k: int) -> int:
        return self.entries.get((self.system.idx(w), k), 0)

    def __iter__(self):
        return iter(self.entries.items())

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, GradedMultiplicityTable):
            return NotImplemented
        return self.system is other.system and self.entries == other.entries

    def levels(self) -> list[int]:
        return sorted({k for _, k in self.entries})

    def at(self, k: int) -> dict[int, int]:
        """Elements (with multiplicity) sitting at position or degree ``k``."""
        return {w: m for (w, j), m in self.entries.items() if j == k}

    def column(self, w) -> dict[int, int]:
        wi = self.system.idx(w)
        return {k: m for (x, k), m in self.entries.items() if x == wi}

    def named(self) -> dict[tuple[str, int], int]:
        r = self.system.render
        return {(r(w), k): m for (w, k), m in self.entries.items()}

    def reversed(self, label: str | None = None) -> "GradedMultiplicityTable":
        """Negate the integer axis (the duality flip of a character grid)."""
        return GradedMultiplicityTable(
            self.system, label or self.label, {(w, -k): m for (w, k), m in self.entries.items()}, self.axis
        )

    def to_json(self) -> dict:
        r = self.system.render
        return {
            "system": self.system.name,
            "label": self.label,
            "axis": self.axis,
            "entries": [{"w": r(w), self.axis: k, "mult": m} for (w, k), m in self.entries.items()],
        }

    @classmethod
    def from_json(cls, system: CoxeterSystem, data: Mapping) -> "GradedMultiplicityTable":
        axis = data.get("axis", POSITION)
        entries = {}
        for e in data["entries"]:
            key = (system.idx(e["w"]), int(e[axis]))
            entries[key] = entries.get(key, 0) + int(e["mult"])
        return cls(system, data.get("label", ""), entries, axis)

    def to_text(self) -> str:
        r = self.system.render
        lines = [self.label]
        for k in self.levels():
            cells = []
            for w, m in sorted(self.at(k).items()):
                cells.append(r(w) if m == 1 else f"{m}*{r(w)}")
            lines.append(f"{k:>+4d} | " + " ".join(cells))
        return "\n".join(lines)

    def __repr__(self):
        return f"GradedMultiplicityTable({self.label!r}, {len(self.entries)} entries)"


class Provenance(str, enum.Enum):
    """Which rule produced a projective-dimension value."""

    PROJECTIVE = "projective-case"
    VERMA = "verma-case"
    COSTANDARD = "costandard-case"
    TILTING = "tilting-case"
    INJECTIVE = "injective-case"
    SIMPLE_REFLECTION = "simple-reflection-case"
    WALL = "wall-case"
    B_BOUND_EXACT = "b-bound-with-exactness"
    DESCENT = "descent-rule"
    CELL = "cell-rule"
    MONOTONE = "monotonicity"
    B_BOUND = "b-bound"
    TILTING_BOUND = "tilting-resolution-bound"
    LENGTH_BOUND = "length-bound"
    FIXTURE = "fixture"


# rules whose Range output is a bound rather than a proof of equality
_BOUND_RULES = {Provenance.B_BOUND, Provenance.TILTING_BOUND, Provenance.LENGTH_BOUND}


@dataclass(frozen=True)
class PdResult:
    """``Exact(n)`` when ``lo == hi``, else ``Range(lo, hi)``.

    ``conjectured`` carries a conjecture-predicted value; it never influences
    ``lo``/``hi``.
    """

    lo: int
    hi: int
    provenance: Provenance
    conjectured: int | None = None

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise ValueError(f"invalid range [{self.lo},{self.hi}]")

    @classmethod
    def exact(cls, n: int, provenance: Provenance, conjectured: int | None = None) -> "PdResult":
        return cls(n, n, provenance, conjectured)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def kind(self) -> str:
        return "Exact" if self.is_exact else "Range"

    @property
    def value(self) -> int | None:
        return self.lo if self.is_exact else None

    @property
    def status(self) -> str:
        """``certified``, ``fixture`` or ``bound``."""
        if self.provenance is Provenance.FIXTURE:
            return "fixture"
        return "certified" if self.is_exact else "bound"

    def contains(self, n: int) -> bool:
        return self.lo <= n <= self.hi

    def __str__(self):
        return str(self.lo) if self.is_exact else f"[{self.lo},{self.hi}]"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "lo": self.lo, "hi": self.hi, "provenance": self.provenance.value}
        if self.is_exact:
            out["value"] = self.lo
        if self.conjectured is not None:
            out["conjectured"] = self.conjectured
        return out


@dataclass(frozen=True)
class Violation:
    element: str
    position: int | None
    bound: object
    found: object
    note: str = ""

    def to_json(self) -> dict:
        out = {"element": self.element, "position": self.position, "bound": self.bound, "found": self.found}
        if self.note:
            out["note"] = self.note
        return out

    def __str__(self):
        where = f" at position {self.position}" if self.position is not None else ""
        extra = f" ({self.note})" if self.note else ""
        return f"{self.element}{where}: required {self.bound}, found {self.found}{extra}"


@dataclass
class RegularityReport:
    system: str
    condition: str
    violations: list[Violation] = field(default_factory=list)
    checked: int = 0
    details: dict = field(default_factory=dict)
    parts: list["RegularityReport"] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations and all(p.passed for p in self.parts)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        out = {
            "system": self.system,
            "condition": self.condition,
            "verdict": self.verdict,
            "checked": self.checked,
            "violations": [v.to_json() for v in self.violations],
        }
        if self.details:
            out["details"] = self.details
        if self.parts:
            out["parts"] = [p.to_json() for p in self.parts]
        return out

    def to_text(self, indent: str = "") -> str:
        lines = [f"{indent}{self.system} {self.condition}: {self.verdict} ({self.checked} checks)"]
        for v in self.violations:
            lines.append(f"{indent}  violation: {v}")
        for p in self.parts:
            lines.append(p.to_text(indent + "  "))
        return "\n".join(lines)
