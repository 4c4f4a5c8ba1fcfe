import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from gcsnil.catalog import ENTRIES
from gcsnil.cli import main, run

ALGEBRAS = Path(__file__).resolve().parent.parent / "algebras"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv, "--format", "json")
    return code, json.loads(out)


def test_classify_n6_3_admits():
    code, out, _ = call("classify", "--catalog", "N6_3")
    assert code == 0
    assert "outcome: admits" in out
    assert "witness: w0 + i w1, w3 + i w5, w2 + i w4" in out


def test_classify_dim6_minus_one():
    code, rep = call_json("classify", "--catalog", "dim6", "--delta", "-1")
    assert code == 1
    assert rep["schema"] == 1 and rep["verb"] == "classify"
    (p,) = rep["profiles"]
    assert p["polynomial"] == "t^2 - 1" and p["real_root_count"] == 2


def test_classify_codes():
    assert call("classify", "--catalog", "L_sum_R", "--n", "2")[0] == 0
    assert call("classify", "--catalog", "filiform", "--d", "6")[0] == 1
    assert call("classify", "--catalog", "T_2n", "--n", "4")[0] == 1
    assert call("classify", str(ALGEBRAS / "l3r.alg"))[0] == 0


def test_validate_broken_file():
    code, out, err = call("validate", str(ALGEBRAS / "broken.alg"))
    assert code == 65
    assert "Jacobi identity fails on (X0, X1, X2)" in err


def test_parse_error_location():
    code, _, err = call("validate", str(ALGEBRAS / "bad_syntax.alg"))
    assert code == 65
    assert "line 2, col 9: i < j required" in err


def test_usage_errors():
    assert call("classify")[0] == 64
    assert call("classify", "--catalog", "nope")[0] == 64
    assert call("classify", "--catalog", "dim6")[0] == 64  # missing --delta
    assert call("classify", "--catalog", "dim6", "--delta", "x")[0] == 64
    assert call("witness", "--catalog", "N6_3")[0] == 64
    assert call("catalog")[0] == 64
    assert main(["frobnicate"]) == 64
    assert main(["classify", "--catalog", "N6_3", "--bogus"]) == 64


def test_data_errors():
    assert call("classify", "--catalog", "abelian", "--d", "4")[0] == 65
    assert call("witness", "--catalog", "N6_3", "--theta", "w0 + w9")[0] == 65
    assert call("validate", "/nonexistent/file.alg")[0] == 65


def test_witness_verb():
    code, out, _ = call("witness", "--catalog", "L_sum_R", "--n", "2",
                        "--theta", "w0 + i w1", "--theta", "w2 + i w3")
    assert code == 0 and "verdict: valid" in out
    code, rep = call_json("witness", "--catalog", "dim6", "--delta", "0",
                          "--theta", "w0 + i w1", "--theta", "w3 + i w5", "--theta", "w2 + i w4")
    assert code == 1 and rep["failed_stage"] == "closed"


def test_bound_verb():
    code, rep = call_json("bound", "--catalog", "filiform", "--d", "6")
    assert code == 1 and rep["k_max"] == 1 and rep["type_n_excluded"]
    code, rep = call_json("bound", "--catalog", "dim6", "--delta", "1")
    assert code == 0 and rep["j"] == 3


def test_structure_verbs():
    assert call("validate", "--catalog", "N6_3")[0] == 0
    code, rep = call_json("filtration", "--catalog", "T_2n", "--n", "4")
    assert code == 0
    assert rep["dims"] == [0, 2, 3, 4, 5, 7, 8] and rep["j_index"] == 5
    assert call("series", "--catalog", "L_2n_r", "--n", "4", "--r", "5")[0] == 0
    assert call("grade", "--catalog", "t3", "--a", "1", "--b", "1/2")[0] == 0


def test_courant_verb():
    code, out, _ = call("courant", "--catalog", "L_sum_R", "--n", "2", "--u", "X0", "--v", "X1 + w2")
    assert code == 0
    assert "[u, v] = X2" in out
    assert "<u, v> = 0" in out


def test_spinor_verb():
    code, rep = call_json("spinor", "--catalog", "L_sum_R", "--n", "2",
                          "--omega", "w0^w2 + w1^w3")
    assert code == 0 and rep["pure"] and rep["type"] == 0
    code, rep = call_json("spinor", "--catalog", "N6_3", "--theta", "w0 + i w1",
                          "--theta", "w3 + i w5", "--theta", "w2 + i w4")
    assert code == 0 and rep["type"] == 3 and rep["line_round_trip"]
    code, _, _ = call("spinor", "--catalog", "L_sum_R", "--n", "2", "--theta", "w0")
    assert code == 1
    assert call("spinor", "--catalog", "N6_3", "--max-dim", "4")[0] == 65


def test_catalog_list_covers_entries():
    code, rep = call_json("catalog", "--list")
    assert code == 0
    names = [e["name"] for e in rep["entries"]]
    assert names == list(ENTRIES)
    assert all(e["ranges"] for e in rep["entries"])
    code, out, _ = call("catalog", "--list")
    for name in ENTRIES:
        assert name in out


def test_catalog_print_round_trips(tmp_path):
    code, out, _ = call("catalog", "--catalog", "N6_3")
    assert code == 0
    path = tmp_path / "g.alg"
    path.write_text(out)
    assert call("classify", str(path))[0] == 0


@pytest.mark.parametrize("argv", [
    ["classify", "--catalog", "T_2n", "--n", "4", "--format", "json"],
    ["classify", "--catalog", "dim6", "--delta", "1"],
    ["catalog", "--list"],
])
def test_deterministic_output(argv):
    assert call(*argv) == call(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gcsnil", "classify", "--catalog", "dim6",
                           "--delta", "0"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "outcome: obstructed" in proc.stdout
