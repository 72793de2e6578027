"""Reference fixtures: loading, listing and verification against the engine.

A fixture file ``<SYSTEM>.json`` holds a list of records.  Records with a
``table`` or ``module`` key are recomputed and diffed; records marked
``"documentation": true`` are carried along unverified.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .coxeter import CoxeterSystem
from .errors import FixtureError, FixtureMissing, HomcatError
from .homological import HomologicalOracle, StructuralKind, oracle_for
from .laurent import NEG_INF, format_laurent, parse_laurent
from .results import PdResult

__all__ = [
    "ENV_VAR",
    "FixtureSet",
    "RecordResult",
    "FixtureReport",
    "fixture_dir",
    "load_fixture",
    "parse_fixture",
    "verify_fixture",
]

ENV_VAR = "HOMCAT_FIXTURES"

PD_GRIDS = ("twisted-projective-pd", "twisted-tilting-pd", "shuffled-projective-pd", "shuffled-tilting-pd")


def fixture_dir(override: str | os.PathLike | None = None) -> Path:
    """``override``, else ``$HOMCAT_FIXTURES``, else the packaged data directory."""
    if override:
        return Path(override)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("homcat") / "data"))


def record_id(rec: dict) -> str:
    for key in ("table", "module", "display", "report"):
        if key in rec:
            return str(rec[key])
    raise FixtureError(f"record without table/module/display key: {sorted(rec)}")


@dataclass
class FixtureSet:
    system: str
    elements: list[str]
    records: list[dict]
    errata: list[dict] = field(default_factory=list)
    path: Path | None = None

    @property
    def computable(self) -> list[dict]:
        return [r for r in self.records if not _informational(r)]

    @property
    def documentation(self) -> list[dict]:
        return [r for r in self.records if _informational(r)]

    def table(self, name: str) -> dict:
        for r in self.records:
            if r.get("table") == name:
                return r
        raise FixtureMissing(f"{self.system}: no fixture table {name!r}")

    def pd_grid(self, W: CoxeterSystem, name: str) -> list[list[int]]:
        """A pd table re-indexed by element index: ``grid[x][y]``."""
        rec = self.table(name)
        n = W.order
        grid = [[None] * n for _ in range(n)]
        rows = [W.idx(x) for x in rec["row_labels"]]
        cols = [W.idx(y) for y in rec["col_labels"]]
        for x, vals in zip(rows, rec["rows"]):
            for y, v in zip(cols, vals):
                grid[x][y] = v
        return grid

    def pd_tables(self, W: CoxeterSystem) -> dict[str, list[list[int]]]:
        return {name: self.pd_grid(W, name) for name in PD_GRIDS}


def _informational(rec: dict) -> bool:
    return bool(rec.get("documentation")) or "report" in rec


def _check_records(data) -> None:
    if not isinstance(data, dict) or "records" not in data or "system" not in data:
        raise FixtureError("fixture must be an object with 'system' and 'records'")
    if not isinstance(data["records"], list):
        raise FixtureError("'records' must be a list")
    for rec in data["records"]:
        if not isinstance(rec, dict):
            raise FixtureError("every record must be an object")
        rid = record_id(rec)
        if _informational(rec):
            continue
        kind = rec.get("kind")
        if "module" in rec:
            ents = rec.get("entries")
            if not isinstance(ents, list) or not all(
                isinstance(e, dict) and {"w", "deg", "mult"} <= set(e) for e in ents
            ):
                raise FixtureError(f"{rid}: grid entries must be objects with w, deg, mult")
            if "x" not in rec or "y" not in rec or "family" not in rec:
                raise FixtureError(f"{rid}: grid record needs family, x and y")
        elif kind == "row":
            if len(rec.get("columns", [])) != len(rec.get("values", [None])):
                raise FixtureError(f"{rid}: columns and values differ in length")
        elif kind == "grid":
            rows = rec.get("rows")
            if not isinstance(rows, list) or len(rows) != len(rec.get("row_labels", [])):
                raise FixtureError(f"{rid}: grid rows do not match row labels")
            if any(len(r) != len(rec.get("col_labels", [])) for r in rows):
                raise FixtureError(f"{rid}: grid row length does not match column labels")
        elif kind == "polys":
            if not all(isinstance(e, dict) and {"y", "w", "poly"} <= set(e) for e in rec.get("entries", [None])):
                raise FixtureError(f"{rid}: polynomial entries must be objects with y, w, poly")
        elif kind == "partition":
            if not isinstance(rec.get("cells"), list):
                raise FixtureError(f"{rid}: partition needs a 'cells' list")
        elif kind == "consts":
            if not all(isinstance(e, dict) and {"x", "y", "z", "poly"} <= set(e) for e in rec.get("entries", [None])):
                raise FixtureError(f"{rid}: structure constants must be objects with x, y, z, poly")
        elif kind not in ("set", "coresolution"):
            raise FixtureError(f"{rid}: unknown record kind {kind!r}")


def parse_fixture(data, path: Path | None = None) -> FixtureSet:
    """Validate a decoded fixture document (also accepts CLI ``--format json`` output)."""
    _check_records(data)
    return FixtureSet(
        system=data["system"],
        elements=list(data.get("elements", [])),
        records=data["records"],
        errata=list(data.get("errata", [])),
        path=path,
    )


def load_fixture(system: str, directory=None) -> FixtureSet:
    d = fixture_dir(directory)
    name = system.upper().replace("_", "")
    path = d / f"{name}.json"
    if not path.is_file():
        raise FixtureMissing(f"no fixture file for {name} in {d}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, ValueError) as exc:
        raise FixtureError(f"{path}: {exc}") from exc
    return parse_fixture(data, path)


@dataclass
class RecordResult:
    id: str
    documentation: bool
    diffs: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diffs

    def to_json(self) -> dict:
        status = "documentation" if self.documentation else ("match" if self.ok else "diff")
        out = {"id": self.id, "status": status}
        if self.diffs:
            out["diffs"] = self.diffs
        return out


@dataclass
class FixtureReport:
    system: str
    results: list[RecordResult]
    checks: list[RecordResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results) and all(c.ok for c in self.checks)

    @property
    def diff_count(self) -> int:
        return sum(len(r.diffs) for r in self.results + self.checks)

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "verdict": "pass" if self.passed else "fail",
            "records": [r.to_json() for r in self.results],
            "consistency": [c.to_json() for c in self.checks],
        }

    def to_text(self) -> str:
        verified = [r for r in self.results if not r.documentation]
        docs = [r for r in self.results if r.documentation]
        lines = [f"{self.system} fixtures: {'pass' if self.passed else 'fail'}"]
        lines.append(f"  verified {len(verified)} records, {len(docs)} documentation-only")
        for r in verified + self.checks:
            mark = "ok  " if r.ok else "DIFF"
            lines.append(f"  {mark} {r.id}")
            for d in r.diffs:
                lines.append(f"       {d}")
        return "\n".join(lines)


# -- record verifiers ---------------------------------------------------------


def _labels(W, names) -> list[int]:
    return [W.idx(x) for x in names]


def _cmp_row(res: RecordResult, cols, expected, actual):
    for c, e, a in zip(cols, expected, actual):
        if e != a:
            res.diffs.append(f"{c}: fixture {e}, computed {a}")


def _cmp_coresolution(res: RecordResult, W, rec, table):
    want: dict[tuple[int, int], int] = {}
    for i, comps in enumerate(rec["positions"]):
        for w in comps:
            key = (W.idx(w), i)
            want[key] = want.get(key, 0) + 1
    got = table.entries
    for key in sorted(set(want) | set(got), key=lambda k: (k[1], k[0])):
        if want.get(key, 0) != got.get(key, 0):
            res.diffs.append(
                f"{W.render(key[0])} at position {key[1]}: fixture {want.get(key, 0)}, computed {got.get(key, 0)}"
            )


def _cmp_set(res: RecordResult, W, expected, computed):
    e = sorted(set(_labels(W, expected)))
    c = sorted(set(computed))
    if e != c or len(expected) != len(computed):
        res.diffs.append(f"fixture {expected}, computed {[W.render(w) for w in computed]}")


def _cmp_pd_grid(res: RecordResult, W, rec, results: list[list[PdResult]]):
    rows = _labels(W, rec["row_labels"])
    cols = _labels(W, rec["col_labels"])
    for x, vals in zip(rows, rec["rows"]):
        for y, v in zip(cols, vals):
            pd = results[x][y]
            if isinstance(v, list) and len(v) == 2:
                # a stored range must equal the computed one
                if (pd.lo, pd.hi) != tuple(v):
                    res.diffs.append(f"({W.render(x)},{W.render(y)}): fixture {v}, computed {pd}")
            elif not isinstance(v, int) or isinstance(v, bool) or not pd.contains(v):
                res.diffs.append(f"({W.render(x)},{W.render(y)}): fixture {v}, computed {pd} [{pd.provenance.value}]")


def _cmp_grid(res: RecordResult, W, rec, table):
    want: dict[tuple[int, int], int] = {}
    for e in rec["entries"]:
        key = (W.idx(e["w"]), int(e["deg"]))
        want[key] = want.get(key, 0) + int(e["mult"])
    got = table.entries
    for key in sorted(set(want) | set(got), key=lambda k: (k[1], k[0])):
        if want.get(key, 0) != got.get(key, 0):
            res.diffs.append(
                f"{W.render(key[0])} in degree {key[1]}: fixture {want.get(key, 0)}, computed {got.get(key, 0)}"
            )


def _verify_record(O: HomologicalOracle, rec: dict) -> RecordResult:
    W = O.system
    rid = record_id(rec)
    res = RecordResult(rid, False)
    J = W.subset(rec.get("J", []))
    if "module" in rec:
        family = rec["family"]
        if family == "twisted-projective":
            table = O.twisted_projective_character(rec["x"], rec["y"])
        elif family == "twisted-tilting":
            table = O.twisted_tilting_character(rec["x"], rec["y"])
        else:
            res.diffs.append(f"no verifier for character family {family!r}")
            return res
        _cmp_grid(res, W, rec, table)
        return res
    name = rec["table"]
    cols = rec.get("columns", [])
    vals = rec.get("values", [])
    if name == "kl-polynomials":
        H = O.hecke
        seen = set()
        for e in rec["entries"]:
            y, w = W.idx(e["y"]), W.idx(e["w"])
            seen.add((y, w))
            got = H.kl_poly_index(y, w)
            if parse_laurent(e["poly"]) != got:
                res.diffs.append(f"h({e['y']},{e['w']}): fixture {e['poly']}, computed {format_laurent(got)}")
        want = {(y, w) for w in range(W.order) for y in H.kl_table[w]}
        for y, w in sorted(want - seen):
            res.diffs.append(f"h({W.render(y)},{W.render(w)}) missing from fixture")
    elif name == "structure-constants":
        H = O.hecke
        want = {
            (x, y, z): p for x in range(W.order) for y in range(W.order)
            for z, p in H.structure_constants_index(x, y).items()
        }
        got = {(W.idx(e["x"]), W.idx(e["y"]), W.idx(e["z"])): parse_laurent(e["poly"]) for e in rec["entries"]}
        for key in sorted(set(want) | set(got)):
            if want.get(key) != got.get(key):
                names = ",".join(W.render(k) for k in key)
                res.diffs.append(f"h({names}): fixture {got.get(key)}, computed {want.get(key)}")
    elif name.startswith("cells-"):
        side = name[len("cells-"):]
        want = sorted(sorted(c) for c in O.cells.cell_indices(side))
        got = sorted(sorted(_labels(W, c)) for c in rec["cells"])
        if want != got:
            res.diffs.append(f"fixture {rec['cells']}, computed {[[W.render(w) for w in c] for c in want]}")
    elif name == "b-function":
        b = O.cells.b_table
        for x, vals_ in zip(_labels(W, rec["row_labels"]), rec["rows"]):
            for y, v in zip(_labels(W, rec["col_labels"]), vals_):
                got = b[x][y]
                shown = "-inf" if got is NEG_INF else got
                if v != shown:
                    res.diffs.append(f"b({W.render(x)},{W.render(y)}): fixture {v}, computed {shown}")
    elif name == "a-function":
        _cmp_row(res, cols, vals, [O.cells.a_function(c) for c in cols])
    elif name == "tilting-pd":
        _cmp_row(res, cols, vals, [O.structural_proj_dim(StructuralKind.T, c) for c in cols])
    elif name == "injective-pd":
        _cmp_row(res, cols, vals, [O.structural_proj_dim(StructuralKind.I, c) for c in cols])
    elif name == "tilting-coresolution-P_e":
        _cmp_coresolution(res, W, rec, O.tilting_coresolution_dominant())
    elif name == "parabolic-short-representatives":
        _cmp_set(res, W, vals, W.coset_rep_indices(J, "left", "shortest"))
    elif name == "parabolic-tilting-pd":
        _cmp_row(res, cols, vals, [O.parabolic_proj_dim(StructuralKind.T, c, J) for c in cols])
    elif name == "parabolic-injective-pd":
        _cmp_row(res, cols, vals, [O.parabolic_proj_dim(StructuralKind.I, c, J) for c in cols])
    elif name == "parabolic-tilting-coresolution-P_e":
        _cmp_coresolution(res, W, rec, O.parabolic_tilting_coresolution(J))
    elif name == "s-subcategory-long-representatives":
        _cmp_set(res, W, vals, O.s_subcategory_summary(J).projective_indices)
    elif name == "s-subcategory-tilting-pd":
        summary = O.s_subcategory_summary(J)
        _cmp_row(res, cols, vals, [summary.tilting_pd.get(W.idx(c)) for c in cols])
    elif name == "s-subcategory-injective-pd":
        summary = O.s_subcategory_summary(J)
        _cmp_row(res, cols, vals, [summary.injective_pd.get(W.idx(c)) for c in cols])
    elif name == "twisted-projective-pd":
        _cmp_pd_grid(res, W, rec, O.twisted_projective_table())
    elif name == "twisted-tilting-pd":
        _cmp_pd_grid(res, W, rec, O.twisted_tilting_table())
    elif name == "shuffled-projective-pd":
        _cmp_pd_grid(res, W, rec, O.shuffled_projective_table())
    elif name == "shuffled-tilting-pd":
        _cmp_pd_grid(res, W, rec, O.shuffled_tilting_table())
    else:
        res.diffs.append(f"no verifier for table {name!r}")
    return res


def _rule_consistency(O: HomologicalOracle, tables) -> RecordResult:
    """Fixture pd tables must respect the proven constancy and monotonicity rules."""
    W, C = O.system, O.cells
    n, w0 = W.order, O.w0
    r = W.render
    res = RecordResult("rule-consistency", False)
    up = C.up_masks("R")

    def check(name, value):
        # value(a, b) is the pd of theta_a applied to the (co)standard module with index b
        for b in range(n):
            for a in range(n):
                for a2 in range(n):
                    if a2 != a and up[a] >> a2 & 1 and value(a, b) < value(a2, b):
                        res.diffs.append(
                            f"{name}: theta parameter {r(a)} <=_R {r(a2)} but pd {value(a, b)} < {value(a2, b)}"
                        )
            for a in range(n):
                for s in range(W.rank):
                    if W.left_descent_masks[a] >> s & 1:
                        bs = W.right_table[b][s]
                        if value(a, b) != value(a, bs):
                            res.diffs.append(
                                f"{name}: descent rule fails for theta parameter {r(a)}, {r(b)} vs {r(bs)}"
                            )

    tp, tt = tables["twisted-projective-pd"], tables["twisted-tilting-pd"]
    # T_x P_y = theta_y Delta_x and T_x T_y = theta_{w0 y} nabla_{x w0}
    check("twisted-projective-pd", lambda a, b: tp[b][a])
    check("twisted-tilting-pd", lambda a, b: tt[W.mul(b, w0)][W.mul(w0, a)])
    return res


def verify_fixture(fs: FixtureSet, system: CoxeterSystem | None = None) -> FixtureReport:
    """Recompute every computable record; documentation records are listed, not checked."""
    O = oracle_for(system or fs.system)
    W = O.system
    results = []
    for rec in fs.records:
        if _informational(rec):
            results.append(RecordResult(record_id(rec), True))
            continue
        try:
            results.append(_verify_record(O, rec))
        except (HomcatError, KeyError, ValueError, TypeError) as exc:
            res = RecordResult(record_id(rec), False)
            res.diffs.append(f"cannot verify: {type(exc).__name__}: {exc}")
            results.append(res)
    checks = []
    names = {r.get("table") for r in fs.records}
    if all(name in names for name in PD_GRIDS):
        try:
            tables = fs.pd_tables(W)
            checks.append(_rule_consistency(O, tables))
            conj = O.check_conjectures(tables)
            res = RecordResult("conjecture-consistency", False)
            for c in conj.checks:
                for ce in c.counterexamples:
                    res.diffs.append(f"{c.name}: {ce}")
            checks.append(res)
        except (HomcatError, KeyError, ValueError, TypeError) as exc:
            res = RecordResult("consistency", False)
            res.diffs.append(f"cannot check: {type(exc).__name__}: {exc}")
            checks.append(res)
    return FixtureReport(W.name, results, checks)
