"""Command-line interface: ``homcat <command> SYSTEM ...``.

Every command builds a list of records.  ``--format json`` prints them as a
fixture document (so the output loads with :func:`homcat.fixtures.parse_fixture`),
``text`` prints aligned tables and ``tsv`` prints tab-separated rows.

Exit status: 0 when every executed check passes, 1 on a failed check or a
fixture diff, 2 on usage or input errors, 3 when the time budget runs out.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from itertools import combinations

from . import __version__
from .coxeter import DEFAULT_CAP, CoxeterSystem, GeneratorSubset, cached_system
from .errors import FixtureError, FixtureMissing, HomcatError
from .fixtures import load_fixture, record_id, verify_fixture
from .homological import HomologicalOracle, StructuralKind, oracle_for
from .laurent import NEG_INF, format_laurent
from .results import GradedMultiplicityTable, PdResult

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

FORMATS = ("text", "json", "tsv")


class BudgetExceeded(Exception):
    pass


@dataclass
class Item:
    record: dict
    text: str
    tsv: list[list[str]]
    ok: bool = True


@dataclass
class Output:
    system: CoxeterSystem
    items: list[Item] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"format": 1, "system": self.system.name, "records": [i.record for i in self.items]}
            return json.dumps(doc, indent=2)
        if fmt == "tsv":
            blocks = []
            for i in self.items:
                head = [f"# {record_id(i.record)}"]
                blocks.append("\n".join(head + ["\t".join(map(str, row)) for row in i.tsv]))
            return "\n\n".join(blocks)
        return "\n\n".join(i.text for i in self.items)


class Budget:
    def __init__(self, seconds: float | None):
        self.seconds = seconds
        self.start = time.monotonic()

    def check(self, what: str):
        if self.seconds is not None and time.monotonic() - self.start > self.seconds:
            raise BudgetExceeded(f"time budget of {self.seconds}s exhausted before {what}")


# -- rendering helpers ------------------------------------------------------------


def _align(rows: list[list[str]], title: str | None = None) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = [title] if title else []
    for r in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def _names(W: CoxeterSystem, J: GeneratorSubset) -> list[str]:
    return [W.generator_names[i] for i in J]


def row_item(W, name, columns, values, title, J=None) -> Item:
    rec = {"system": W.name, "table": name, "kind": "row", "columns": columns, "values": values}
    if J is not None:
        rec["J"] = _names(W, J)
    rows = [["w"] + columns, ["pd" if "pd" in name else "value"] + [str(v) for v in values]]
    return Item(rec, _align(rows, title), rows)


def set_item(W, name, values, title, J) -> Item:
    rec = {"system": W.name, "table": name, "kind": "set", "J": _names(W, J), "values": values}
    return Item(rec, f"{title}\n  {{{', '.join(values)}}}", [values])


def coresolution_item(W, name, table: GradedMultiplicityTable, title, J=None) -> Item:
    r = W.render
    positions = []
    for k in range(max(table.levels(), default=-1) + 1):
        comp = []
        for w, m in sorted(table.at(k).items()):
            comp.extend([r(w)] * m)
        positions.append(comp)
    rec = {"system": W.name, "table": name, "kind": "coresolution", "positions": positions}
    if J is not None:
        rec["J"] = _names(W, J)
    text = title + "\n  " + " | ".join(" + ".join(f"T_{w}" for w in p) or "0" for p in positions)
    tsv = [[str(k), w] for k, p in enumerate(positions) for w in p]
    return Item(rec, text, tsv)


def pd_grid_item(W, name, table: list[list[PdResult]], title) -> Item:
    labels = [W.render(w) for w in range(W.order)]
    rows = [[p.value if p.is_exact else [p.lo, p.hi] for p in row] for row in table]
    prov = [[p.provenance.value for p in row] for row in table]
    rec = {
        "system": W.name,
        "table": name,
        "kind": "grid",
        "row_labels": labels,
        "col_labels": labels,
        "rows": rows,
        "provenance": prov,
    }
    conj = {
        f"{labels[x]},{labels[y]}": p.conjectured
        for x, row in enumerate(table)
        for y, p in enumerate(row)
        if p.conjectured is not None and not p.is_exact
    }
    if conj:
        rec["conjectured"] = conj
    cells = [["x\\y"] + labels] + [[labels[x]] + [str(p) for p in row] for x, row in enumerate(table)]
    exact = sum(p.is_exact for row in table for p in row)
    text = _align(cells, f"{title} (rows x, columns y; {exact}/{W.order ** 2} exact)")
    if conj:
        text += "\n  conjectured: " + ", ".join(f"({k}) {v}" for k, v in conj.items())
    tsv = [["x", "y", "lo", "hi", "provenance"]] + [
        [labels[x], labels[y], str(p.lo), str(p.hi), p.provenance.value]
        for x, row in enumerate(table)
        for y, p in enumerate(row)
    ]
    return Item(rec, text, tsv)


def character_item(W, family, x, y, table: GradedMultiplicityTable) -> Item:
    r = W.render
    letter = "P" if family == "twisted-projective" else "T"
    rec = {
        "system": W.name,
        "module": f"T{r(x)}_{letter}{r(y)}",
        "family": family,
        "x": r(x),
        "y": r(y),
        "entries": [{"w": r(w), "deg": k, "mult": m} for (w, k), m in table],
    }
    tsv = [["deg", "w", "mult"]] + [[str(k), r(w), str(m)] for (w, k), m in table]
    return Item(rec, table.to_text(), tsv)


def report_item(report) -> Item:
    rec = {"report": getattr(report, "condition", "conjectures"), "kind": "report"}
    rec.update(report.to_json())
    tsv = [["condition", "verdict"], [rec["report"], rec["verdict"]]]
    return Item(rec, report.to_text(), tsv, report.passed)


# -- commands ----------------------------------------------------------------------


def cmd_kl(O: HomologicalOracle, what: str, args) -> list[Item]:
    W, H, C = O.system, O.hecke, O.cells
    r = W.render
    labels = [r(w) for w in range(W.order)]
    if what == "polys":
        entries = []
        for w in range(W.order):
            for y, p in sorted(H.kl_table[w].items()):
                entries.append({"y": r(y), "w": r(w), "poly": format_laurent(p)})
        rec = {"system": W.name, "table": "kl-polynomials", "kind": "polys", "entries": entries}
        rows = [[e["y"], e["w"], e["poly"]] for e in entries]
        text = _align([["y", "w", "h_{y,w}"]] + rows, f"{W.name} Kazhdan-Lusztig polynomials")
        return [Item(rec, text, [["y", "w", "poly"]] + rows)]
    if what == "consts":
        entries = []
        for x in range(W.order):
            for y in range(W.order):
                for z, p in sorted(H.structure_constants_index(x, y).items()):
                    entries.append({"x": r(x), "y": r(y), "z": r(z), "poly": format_laurent(p)})
        rec = {"system": W.name, "table": "structure-constants", "kind": "consts", "entries": entries}
        rows = [[e["x"], e["y"], e["z"], e["poly"]] for e in entries]
        text = _align([["x", "y", "z", "h_{x,y}^z"]] + rows, f"{W.name} structure constants")
        return [Item(rec, text, [["x", "y", "z", "poly"]] + rows)]
    if what == "cells":
        items = []
        for side, title in (("L", "left"), ("R", "right"), ("J", "two-sided")):
            cells = [[r(w) for w in c] for c in C.cell_indices(side)]
            rec = {"system": W.name, "table": f"cells-{side}", "kind": "partition", "cells": cells}
            text = f"{W.name} {title} cells ({len(cells)})\n" + "\n".join(
                f"  a={C.a_index(W.idx(c[0]))}: {{{', '.join(c)}}}" for c in cells
            )
            items.append(Item(rec, text, [[str(i), w] for i, c in enumerate(cells) for w in c]))
        return items
    if what == "afun":
        return [row_item(W, "a-function", labels, list(C.a_table), f"{W.name} a-function")]
    if what == "bfun":
        b = C.b_table
        rows = [["-inf" if v is NEG_INF else v for v in row] for row in b]
        rec = {
            "system": W.name,
            "table": "b-function",
            "kind": "grid",
            "row_labels": labels,
            "col_labels": labels,
            "rows": rows,
        }
        cells = [["x\\y"] + labels] + [[labels[x]] + [str(v) for v in row] for x, row in enumerate(rows)]
        return [Item(rec, _align(cells, f"{W.name} b-function b(x,y) (rows x, columns y)"), cells)]
    if what == "elements":
        data = W.to_json(with_bruhat=args.bruhat)
        rec = {"report": "elements", "kind": "report", **data}
        rows = [[str(e["index"]), e["word"], str(e["length"])] for e in data["elements"]]
        text = _align([["index", "word", "length"]] + rows, f"{W.name}: {W.order} elements")
        if args.bruhat:
            text += "\nBruhat matrix (row u, column w: u <= w)\n" + "\n".join(
                " ".join(map(str, row)) for row in data["bruhat"]
            )
        return [Item(rec, text, rows)]
    raise ValueError(f"unknown kl table {what!r}")


def cmd_table(O: HomologicalOracle, family: str, J_spec, args) -> list[Item]:
    W = O.system
    r = W.render
    labels = [r(w) for w in range(W.order)]
    if family == "structural":
        return [
            row_item(W, "tilting-pd", labels, O.structural_table(StructuralKind.T), f"{W.name} pd T_w"),
            row_item(W, "injective-pd", labels, O.structural_table(StructuralKind.I), f"{W.name} pd I_w"),
            coresolution_item(
                W, "tilting-coresolution-P_e", O.tilting_coresolution_dominant(), f"{W.name} tilting coresolution of P_e"
            ),
        ]
    if family in ("parabolic", "s-subcat"):
        if J_spec is None:
            raise ValueError(f"table {family} needs a generator subset J")
        J = W.subset(J_spec)
        if J.mask == (1 << W.rank) - 1:
            raise ValueError("J must be a proper subset of the generators")
        tag = "{" + ",".join(_names(W, J)) + "}"
        if family == "parabolic":
            shorts = W.coset_rep_indices(J, "left", "shortest")
            cols = [r(x) for x in shorts]
            return [
                set_item(W, "parabolic-short-representatives", cols, f"{W.name} parabolic block, J={tag}", J),
                row_item(
                    W, "parabolic-tilting-pd", cols,
                    [O.parabolic_proj_dim(StructuralKind.T, x, J) for x in shorts], "pd T_x", J,
                ),
                row_item(
                    W, "parabolic-injective-pd", cols,
                    [O.parabolic_proj_dim(StructuralKind.I, x, J) for x in shorts], "pd I_x", J,
                ),
                coresolution_item(
                    W, "parabolic-tilting-coresolution-P_e", O.parabolic_tilting_coresolution(J),
                    "tilting coresolution of P_e", J,
                ),
            ]
        s = O.s_subcategory_summary(J)
        tcols = [r(w) for w in s.tilting_indices]
        icols = [r(w) for w in s.projective_indices]
        return [
            set_item(W, "s-subcategory-long-representatives", icols, f"{W.name} S-subcategory, J={tag}", J),
            row_item(W, "s-subcategory-tilting-pd", tcols, [s.tilting_pd[w] for w in s.tilting_indices], "pd T_w", J),
            row_item(
                W, "s-subcategory-injective-pd", icols, [s.injective_pd[w] for w in s.projective_indices], "pd I_w", J
            ),
        ]
    if family == "twisted-p":
        return [pd_grid_item(W, "twisted-projective-pd", O.twisted_projective_table(), f"{W.name} pd T_x P_y")]
    if family == "twisted-t":
        return [pd_grid_item(W, "twisted-tilting-pd", O.twisted_tilting_table(), f"{W.name} pd T_x T_y")]
    if family in ("shuffled-p", "shuffled-t"):
        fixture = None
        if args.use_fixture:
            fs = load_fixture(W.name, args.fixtures)
            fixture = fs.pd_grid(W, "shuffled-projective-pd")
            if family == "shuffled-t":
                return [
                    pd_grid_item(
                        W, "shuffled-tilting-pd",
                        O.shuffled_tilting_table(fs.pd_grid(W, "shuffled-tilting-pd"), fixture),
                        f"{W.name} pd C_x T_y",
                    )
                ]
        if family == "shuffled-p":
            return [pd_grid_item(W, "shuffled-projective-pd", O.shuffled_projective_table(fixture), f"{W.name} pd C_x P_y")]
        return [pd_grid_item(W, "shuffled-tilting-pd", O.shuffled_tilting_table(), f"{W.name} pd C_x T_y")]
    raise ValueError(f"unknown table family {family!r}")


def _proper_subsets(W: CoxeterSystem):
    for k in range(W.rank):
        for gens in combinations(range(W.rank), k):
            yield GeneratorSubset.of(gens)


def cmd_certify(O: HomologicalOracle, which: str, arg, args, budget: Budget) -> list[Item]:
    W = O.system
    reports: list = []

    def run(label, fn, *a):
        budget.check(label)
        reports.append(fn(*a))

    if which in ("ringel", "all"):
        run("ringel", O.certify_auslander_ringel)
    if which in ("auslander", "all"):
        run("auslander", O.certify_auslander)
    if which == "parabolic":
        if arg is None:
            raise ValueError("certify parabolic needs a generator subset J")
        run("parabolic", O.certify_parabolic, W.subset(arg))
    if which == "all":
        for J in _proper_subsets(W):
            run("parabolic", O.certify_parabolic, J)
    if which == "shuffle":
        if arg is None:
            raise ValueError("certify shuffle needs a simple reflection")
        for variant in ("projective", "tilting"):
            run("shuffle", O.certify_shuffle_simple, arg, variant)
    if which == "all":
        for i in range(W.rank):
            for variant in ("projective", "tilting"):
                run("shuffle", O.certify_shuffle_simple, i, variant)
    if which == "twisted-levi":
        J = W.subset(arg)
        for variant in ("projective", "tilting"):
            run("twisted-levi", O.certify_twisted_levi, J, variant)
    if which in ("conjectures", "all"):
        budget.check("conjectures")
        if which == "conjectures" and args.use_fixture:
            fs = load_fixture(W.name, args.fixtures)
            reports.append(O.check_conjectures(fs.pd_tables(W), source="fixture"))
        else:
            reports.append(O.check_conjectures(source="engine"))
    if not reports:
        raise ValueError(f"unknown certificate {which!r}")
    return [report_item(rep) for rep in reports]


def cmd_character(O: HomologicalOracle, x, y, family: str) -> list[Item]:
    W = O.system
    xi, yi = W.idx(x), W.idx(y)
    if family == "twisted-p":
        return [character_item(W, "twisted-projective", xi, yi, O.twisted_projective_character(xi, yi))]
    if family == "twisted-t":
        return [character_item(W, "twisted-tilting", xi, yi, O.twisted_tilting_character(xi, yi))]
    raise ValueError(f"unknown character family {family!r}")


def cmd_fixtures(O: HomologicalOracle, action: str, args) -> list[Item]:
    W = O.system
    fs = load_fixture(W.name, args.fixtures)
    if action == "list":
        comp = [record_id(r) for r in fs.computable]
        docs = [record_id(r) for r in fs.documentation]
        rec = {"report": "fixture-list", "kind": "report", "computable": comp, "documentation": docs}
        if fs.errata:
            rec["errata"] = fs.errata
        lines = [f"{W.name} fixtures ({fs.path})", f"computable ({len(comp)}):"]
        lines += [f"  {c}" for c in comp]
        lines.append(f"documentation only ({len(docs)}):")
        lines += [f"  {d}" for d in docs]
        for e in fs.errata:
            lines.append(f"erratum: {e.get('module')} degree {e.get('deg')}: {e.get('reason', '')}")
        tsv = [["computable", c] for c in comp] + [["documentation", d] for d in docs]
        return [Item(rec, "\n".join(lines), tsv)]
    if action == "verify":
        rep = verify_fixture(fs, W)
        rec = {"report": "fixture-verify", "kind": "report", **rep.to_json()}
        tsv = [["record", "status"]] + [[r.id, r.to_json()["status"]] for r in rep.results + rep.checks]
        return [Item(rec, rep.to_text(), tsv, rep.passed)]
    raise ValueError(f"unknown fixtures action {action!r}")


# -- argument parsing ----------------------------------------------------------------


def _common(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=FORMATS, default=d("text"), help="output format")
    p.add_argument("--cap", type=int, default=d(DEFAULT_CAP), help="enumeration cap on |W|")
    p.add_argument("--fixtures", metavar="DIR", default=d(None), help="fixture directory override")
    p.add_argument("--budget-seconds", type=float, default=d(None), help="wall-clock budget for certificates")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homcat", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"homcat {__version__}")
    _common(parser, False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kl", help="Kazhdan-Lusztig tables")
    p.add_argument("system")
    p.add_argument("what", choices=("polys", "consts", "cells", "afun", "bfun", "elements"))
    p.add_argument("--bruhat", action="store_true", help="include the Bruhat matrix (elements)")

    p = sub.add_parser("table", help="projective-dimension tables")
    p.add_argument("system")
    p.add_argument(
        "family",
        choices=("structural", "parabolic", "s-subcat", "twisted-p", "twisted-t", "shuffled-p", "shuffled-t"),
    )
    p.add_argument("J", nargs="?", help="generator subset for parabolic and s-subcat, e.g. 's' or 's1,s2'")
    p.add_argument("--use-fixture", action="store_true", help="fill open shuffled entries from the fixture")

    p = sub.add_parser("certify", help="regularity certificates")
    p.add_argument("system")
    p.add_argument("which", choices=("ringel", "auslander", "parabolic", "shuffle", "twisted-levi", "conjectures", "all"))
    p.add_argument("arg", nargs="?", help="J for parabolic/twisted-levi, s for shuffle")
    p.add_argument("--use-fixture", action="store_true", help="check conjectures on the fixture tables")

    p = sub.add_parser("character", help="graded character of a twisted module")
    p.add_argument("system")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("family", choices=("twisted-p", "twisted-t"))

    p = sub.add_parser("fixtures", help="verify or list reference fixtures")
    p.add_argument("system")
    p.add_argument("action", choices=("verify", "list"))

    for p in sub.choices.values():
        _common(p, True)
    return parser


def run(argv=None) -> tuple[int, str]:
    """Parse ``argv``, execute, and return ``(exit status, rendered output)``."""
    args = build_parser().parse_args(argv)
    budget = Budget(args.budget_seconds)
    try:
        W = cached_system(args.system, args.cap)
        O = oracle_for(W)
        if args.command == "kl":
            items = cmd_kl(O, args.what, args)
        elif args.command == "table":
            items = cmd_table(O, args.family, args.J, args)
        elif args.command == "certify":
            items = cmd_certify(O, args.which, args.arg, args, budget)
        elif args.command == "character":
            items = cmd_character(O, args.x, args.y, args.family)
        else:
            items = cmd_fixtures(O, args.action, args)
    except BudgetExceeded as exc:
        return EXIT_BUDGET, f"homcat: {exc}"
    except (FixtureMissing, FixtureError) as exc:
        return EXIT_USAGE, f"homcat: fixture error: {exc}"
    except (HomcatError, ValueError, KeyError) as exc:
        return EXIT_USAGE, f"homcat: {type(exc).__name__}: {exc}"
    out = Output(W, items)
    return (EXIT_OK if out.ok else EXIT_FAIL), out.render(args.format)


def main(argv=None) -> int:
    status, text = run(argv)
    stream = sys.stderr if status in (EXIT_USAGE, EXIT_BUDGET) else sys.stdout
    try:
        print(text, file=stream)
        stream.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        sys.stdout = None
    return status


if __name__ == "__main__":
    sys.exit(main())
