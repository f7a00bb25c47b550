from __future__ import annotations

import io
import json
import subprocess
import sys

from singlab.cli import run
from singlab.parser import infer_ring


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    assert code == 0, text
    return json.loads(text)


def test_milnor_command():
    assert call_json("milnor", "--f", "x^3+y^3")["mu"] == 4


def test_milnor_text_output():
    code, text = call("milnor", "--f", "x^3+y^3", "--format", "text")
    assert code == 0
    assert "mu" in text and "4" in text


def test_dm_check_command():
    data = call_json("dm-check", "--f", "x^2+y^3")
    assert data["verdict"] is True and data["mu"] == data["pairing"] == 2


def test_gb_command():
    data = call_json("gb", "--ideal", "x^2+y^2, x*y", "--order", "grevlex")
    assert len(data["basis"]) == 3
    assert data["colength"] == 4


def test_gb_local_order():
    data = call_json("gb", "--ideal", "x - x^2", "--order", "local")
    assert data["colength"] == 1 and data["order"] == "local"


def test_pairing_command_with_graph():
    data = call_json("pairing", "--f", "x^2", "--class", "graph", "--sigma=-x")
    assert data["class"] == "graph(-x)"
    assert isinstance(data["pairing"], int)


def test_mf_stabilize_command():
    data = call_json("mf-stabilize", "--potential", "x^2-y^2", "--module", "x-y")
    assert data["mf"] == {"potential": "x^2 - y^2", "A": [["x - y"]], "B": [["x + y"]]}


def test_xi_fold_command():
    data = call_json("xi-fold", "--f", "x^2+y^3")
    assert (data["even"], data["odd"]) == (2, 0)


def test_resolve_command():
    data = call_json("resolve", "--potential", "x^2", "--module", "x", "--length", "3")
    assert data["ranks"] == [1, 1, 1, 1]


def test_prime_field_option():
    data = call_json("milnor", "--f", "x^3+y^3", "--field", "fp:3")
    assert data["warnings"]


def test_usage_errors_exit_two():
    assert call("gb", "--ideal", "x^^2")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("milnor")[0] == 2
    assert call("milnor", "--f", "x", "--field", "fp:4")[0] == 2


def test_computation_errors_exit_one():
    code, text = call("pairing", "--f", "x^2*y")
    assert code == 1
    assert json.loads(text)["error"] == "SUPPORT_NOT_FINITE"
    assert call("pairing", "--f", "x^3", "--class", "graph", "--sigma=-x")[0] == 1


def test_reports_embed_replayable_input():
    data = call_json("dm-check", "--f", "y^3 + x^2")
    R = infer_ring(data["f"])
    assert R(data["f"]) == R("x^2 + y^3")
    again = call_json("dm-check", "--f", data["f"])
    assert again == data


def test_identical_invocations_are_byte_identical():
    a = call("pairing", "--f", "x^3+y^4")[1]
    b = call("pairing", "--f", "x^3+y^4")[1]
    assert a == b


def test_suite_json_and_toml(tmp_path):
    cases = [{"name": "A2", "f": "x^3", "weights": ["1/3"]}, {"name": "cusp", "f": "x^2+y^3", "weights": None}]
    js = tmp_path / "suite.json"
    js.write_text(json.dumps(cases))
    toml = tmp_path / "suite.toml"
    toml.write_text('[[case]]\nname = "A2"\nf = "x^3"\nweights = ["1/3"]\n'
                    '[[case]]\nname = "cusp"\nf = "x^2+y^3"\n')
    a = call_json("dm-check", "--suite", str(js))
    b = call_json("dm-check", "--suite", str(toml))
    assert a["ok"] and [r["mu"] for r in a["results"]] == [2, 2]
    assert a["results"] == b["results"]
    code, text = call("dm-check", "--suite", str(js), "--format", "text")
    assert code == 0 and text.splitlines()[0].split()[:3] == ["name", "f", "n"]


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "singlab.cli", "milnor", "--f", "x^2+y^3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["mu"] == 2
