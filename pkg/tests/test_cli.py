import json
import subprocess
import sys

from tightiso import germs
from tightiso.cli import main, status_code
from tightiso.suites import SuiteResult


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "analyze", "--builder", "swap", "--json", str(a))[0] == 0
    assert run(capsys, "analyze", "--builder", "swap", "--json", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["input"]["size"] == 8
    assert len(rep["isotropy"]["s_iso"]) == 8 and len(rep["isotropy"]["centralizer"]) == 5
    assert rep["groupoid"]["units"] == 1 and rep["groupoid"]["arrows"] == 1
    assert rep["condition_I"] == "not evaluated"


def test_analyze_from_file(tmp_path, capsys):
    f = tmp_path / "z2.json"
    f.write_text(json.dumps({"name": "Z2", "elements": ["1", "g"], "mul": [[0, 1], [1, 0]]}))
    code, out, _ = run(capsys, "analyze", "--input", str(f))
    rep = json.loads(out)
    assert code == 0 and rep["input"]["zero_adjoined"] and rep["groupoid"]["effective"] is False


def test_malformed_json_reports_offset(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"mul": [[0, 1], [1 0]]}')
    code, _, err = run(capsys, "analyze", "--input", str(f))
    assert code == 3 and "byte offset 20" in err


def test_invalid_table_exit_code(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"mul": [[1, 0], [0, 0]]}))
    code, _, err = run(capsys, "analyze", "--input", str(f))
    assert code == 3 and "NonAssociative" in err


def test_missing_file_and_unwritable_output(tmp_path, capsys):
    assert run(capsys, "analyze", "--input", str(tmp_path / "nope.json"))[0] == 3
    assert run(capsys, "analyze", "--builder", "z2", "--json", str(tmp_path / "no" / "x.json"))[0] == 3


def test_argparse_errors_are_input_errors(capsys):
    assert run(capsys, "analyze", "--builder", "nope")[0] == 3
    assert run(capsys, "frobnicate")[0] == 3
    assert run(capsys, "analyze")[0] == 3


def test_check_suites(capsys):
    code, out, _ = run(capsys, "check", "--builder", "sym3")
    assert code == 0 and "FAIL" not in out and "PASS    condexp" in out
    code, out, _ = run(capsys, "check", "--builder", "brandt2", "--suite", "condh", "--suite", "zdef")
    assert code == 0 and out.count("PASS") == 2
    assert run(capsys, "check", "--builder", "z2", "--suite", "bogus")[0] == 3
    assert run(capsys, "check", "--builder", "z2", "--shift", "full-2")[0] == 3


def test_check_shift_and_monoid(capsys):
    code, out, _ = run(capsys, "check", "--shift", "ab-periodic")
    assert code == 0 and "shift-finite" in out
    code, out, _ = run(capsys, "check", "--monoid", "free2xn", "--suite", "lcm1")
    assert code == 0 and "PASS    lcm1" in out


def test_global_flags_in_either_position(capsys):
    a = run(capsys, "--seed", "5", "uniqueness-check", "--builder", "z3")
    b = run(capsys, "uniqueness-check", "--builder", "z3", "--seed", "5")
    assert a == b and a[0] == 0


def test_export(tmp_path, capsys):
    dot, js = tmp_path / "g.dot", tmp_path / "g.json"
    assert run(capsys, "export", "--builder", "brandt2", "--dot", str(dot), "--json", str(js))[0] == 0
    assert dot.read_text().count("->") == 2
    G = germs.groupoid_from_json(json.loads(js.read_text()))
    assert len(G) == 4 and germs.groupoid_axioms(G)
    assert run(capsys, "export", "--builder", "brandt2")[0] == 3


def test_expectation(capsys):
    code, out, _ = run(capsys, "expectation", "--builder", "swap", "--element", "sigma")
    rep = json.loads(out)
    assert code == 0 and rep["in_s_iso"] and rep["formula_holds"]
    assert run(capsys, "expectation", "--builder", "swap", "--element", "nope")[0] == 3


def test_uniqueness(capsys):
    code, out, _ = run(capsys, "uniqueness-check", "--builder", "brandt2")
    assert code == 0
    assert json.loads(out)["blocks"] == [{"dimension": 4, "subalgebra_intersection_dim": 2}]


def test_lcm_commands(capsys):
    code, out, _ = run(capsys, "lcm", "mul", "--pairs", "b,a", "ab,ε")
    assert code == 0 and json.loads(out)["product"] == "[bb,ε]"
    code, out, _ = run(capsys, "lcm", "check", "--pair", "a,a")
    rep = json.loads(out)
    assert code == 0 and rep["s_iso"]["status"] == "pass" and rep["lcm1"]["status"] == "pass"
    code, out, _ = run(capsys, "lcm", "check", "--pair", "a,ab")
    assert code == 1 and json.loads(out)["s_iso"]["witness"] == "a"
    code, out, _ = run(capsys, "lcm", "foundation", "--set", "a;b")
    assert code == 0
    assert run(capsys, "lcm", "foundation", "--set", "a")[0] == 1
    code, out, _ = run(capsys, "lcm", "core", "--monoid", "n2", "--element", "2:1")
    assert code == 0 and json.loads(out)["core"] is True
    code, _, err = run(capsys, "lcm", "check", "--pair", "a,ax")
    assert code == 3 and "byte offset 3" in err
    assert run(capsys, "lcm", "mul")[0] == 3


def test_shift_commands(capsys):
    code, out, _ = run(capsys, "shift", "eq", "--shift", "one-letter", "--e1", "s(a)", "--e2", "E(a;a)")
    assert code == 0 and json.loads(out)["equal"] is True
    assert run(capsys, "shift", "eq", "--e1", "s(0)", "--e2", "1")[0] == 1
    code, out, _ = run(capsys, "shift", "show", "--e1", "s(0).s*(00)")
    assert json.loads(out)["fixed_points"] == ["(0)^inf"]
    code, out, _ = run(capsys, "shift", "apply", "--e1", "s(1)", "--point", "0(01)")
    assert json.loads(out)["image"] == "10(01)^inf"
    assert run(capsys, "shift", "apply", "--e1", "s(1)", "--point", "(1)")[0] == 3
    code, out, _ = run(capsys, "shift", "operators", "--shift", "ab-periodic")
    rep = json.loads(out)
    assert code == 0 and rep["points"] == ["(ab)^inf", "(ba)^inf"]
    assert rep["operators"] == {"a": [[0, 1], [0, 0]], "b": [[0, 0], [1, 0]]}
    assert run(capsys, "shift", "operators", "--shift", "golden-mean")[0] == 3
    code, out, _ = run(capsys, "shift", "check", "--shift", "golden-mean")
    assert code == 0 and out.count("PASS") == 4


def test_shift_from_file(tmp_path, capsys):
    f = tmp_path / "even.json"
    f.write_text(json.dumps({"alphabet": ["a", "b"], "forbidden": ["aa", "bb"]}))
    code, out, _ = run(capsys, "shift", "operators", "--shift", str(f))
    assert code == 0 and len(json.loads(out)["points"]) == 2


def test_status_code():
    rows = [SuiteResult("x", "pass"), SuiteResult("y", "unknown")]
    assert status_code(rows, False) == 2
    assert status_code(rows, True) == 0
    assert status_code(rows + [SuiteResult("z", "fail")], True) == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tightiso", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "analyze" in res.stdout
