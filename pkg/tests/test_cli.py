import json
import subprocess
import sys

import pytest

from homcat.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, run
from homcat.fixtures import load_fixture, parse_fixture, verify_fixture


def ok(argv):
    status, text = run(argv)
    assert status == EXIT_OK, text
    return text


def test_kl_afun():
    out = ok(["kl", "A2", "afun"])
    assert out.splitlines()[-1].split() == ["value", "0", "1", "1", "1", "1", "3"]


def test_kl_polys_a1():
    data = json.loads(ok(["kl", "A1", "polys", "--format", "json"]))
    entries = {(e["y"], e["w"]): e["poly"] for e in data["records"][0]["entries"]}
    assert entries == {("e", "e"): "1", ("e", "s"): "v", ("s", "s"): "1"}


def test_kl_cells_b2():
    data = json.loads(ok(["kl", "B2", "cells", "--format", "json"]))
    two_sided = next(r for r in data["records"] if r["table"] == "cells-J")
    assert len(two_sided["cells"]) == 3


def test_table_structural_and_parabolic():
    out = ok(["table", "A2", "structural"])
    assert "6  2  2   2   2    0" in out
    assert "T_e | T_s + T_t | T_st + T_ts | T_sts" in out
    data = json.loads(ok(["table", "A2", "parabolic", "s", "--format", "json"]))
    rows = {r["table"]: r for r in data["records"]}
    assert rows["parabolic-tilting-pd"]["values"] == [0, 0, 2]
    assert rows["parabolic-injective-pd"]["values"] == [4, 0, 0]


def test_table_twisted_matches_fixture():
    data = json.loads(ok(["table", "A2", "twisted-p", "--format", "json"]))
    assert data["records"][0]["rows"] == load_fixture("A2").table("twisted-projective-pd")["rows"]
    text = ok(["table", "A2", "twisted-t"])
    assert "[0,2]" in text


def test_table_shuffled_with_fixture():
    text = ok(["table", "A2", "shuffled-t", "--use-fixture"])
    assert "36/36 exact" in text
    assert "[" not in text.split("\n", 1)[1]


def test_character_layout():
    out = ok(["character", "A2", "s", "s", "twisted-p"])
    degrees = [int(line.split("|")[0]) for line in out.splitlines()[1:]]
    assert degrees == sorted(degrees)
    assert "+0 | e st ts" in out


def test_certify_all_and_exit_status():
    out = ok(["certify", "A2", "all"])
    assert "fail" not in out
    ok(["certify", "A1", "ringel"])
    ok(["certify", "A2", "conjectures", "--use-fixture"])
    ok(["certify", "A3", "twisted-levi", "s1,s2"])


def test_fixtures_commands():
    out = ok(["fixtures", "A2", "verify"])
    assert out.startswith("A2 fixtures: pass")
    listing = ok(["fixtures", "A2", "list"])
    assert "documentation only" in listing and "twisting-cohomology-figure" in listing


@pytest.mark.parametrize(
    "argv",
    [
        ["kl", "A2", "afun"],
        ["kl", "A2", "bfun"],
        ["kl", "A2", "consts"],
        ["kl", "B2", "cells"],
        ["table", "A2", "structural"],
        ["table", "A3", "s-subcat", "s2"],
        ["table", "A2", "shuffled-p"],
        ["character", "A2", "ts", "e", "twisted-t"],
        ["certify", "A2", "auslander"],
    ],
)
def test_json_round_trips_through_fixture_parser(argv):
    text = ok(argv + ["--format", "json"])
    fs = parse_fixture(json.loads(text))
    assert verify_fixture(fs).passed
    assert json.loads(json.dumps(json.loads(text))) == json.loads(text)


def test_tsv_output():
    out = ok(["kl", "A2", "afun", "--format", "tsv"])
    assert out.splitlines()[0] == "# a-function"
    assert out.splitlines()[1].split("\t")[:2] == ["w", "e"]


def test_diff_gives_nonzero_exit(tmp_path):
    data = json.loads(load_fixture("A2").path.read_text())
    next(r for r in data["records"] if r.get("table") == "a-function")["values"][5] = 2
    (tmp_path / "A2.json").write_text(json.dumps(data))
    status, text = run(["fixtures", "A2", "verify", "--fixtures", str(tmp_path)])
    assert status == EXIT_FAIL
    assert "w0: fixture 2, computed 3" in text


def test_corrupted_fixture_is_clean_error(tmp_path, monkeypatch):
    (tmp_path / "A2.json").write_text("[")
    monkeypatch.setenv("HOMCAT_FIXTURES", str(tmp_path))
    status, text = run(["fixtures", "A2", "verify"])
    assert status == EXIT_USAGE and "fixture error" in text
    status, text = run(["fixtures", "B2", "list", "--fixtures", str(tmp_path)])
    assert status == EXIT_USAGE and "no fixture file" in text


def test_usage_errors():
    assert run(["kl", "A5", "afun", "--cap", "50"])[0] == EXIT_USAGE
    assert run(["character", "A2", "x", "e", "twisted-p"])[0] == EXIT_USAGE
    assert run(["table", "A2", "parabolic"])[0] == EXIT_USAGE
    assert run(["table", "A2", "parabolic", "s,t"])[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        run(["kl", "A2", "nonsense"])
    assert exc.value.code == 2


def test_budget():
    status, text = run(["certify", "A2", "all", "--budget-seconds", "0"])
    assert status == EXIT_BUDGET and "budget" in text


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "homcat.cli", "certify", "A1", "ringel"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "pass" in proc.stdout


def test_global_flags_before_subcommand():
    status, text = run(["--format", "json", "kl", "A1", "afun"])
    assert status == EXIT_OK and json.loads(text)["system"] == "A1"
