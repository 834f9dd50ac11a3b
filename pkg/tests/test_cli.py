import json
import subprocess
import sys

import jsonschema
import pytest

from zipstrata.cli import RunConfig, UsageError, jsonable, load_schema, main, run
from fractions import Fraction


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def check_schema(command, text):
    doc = json.loads(text)
    jsonschema.validate(doc, load_schema(command))
    return doc


def test_weights_siegel(capsys):
    code, out, _ = call(capsys, "weights", "--family", "sp", "--n", "4", "--q", "3")
    assert code == 0
    doc = check_schema("weights", out)
    lams = [row["lambda"] for row in doc["rows"]]
    assert [row["d"] for row in doc["rows"]] == [1, 2, 3, 4]
    for d, lam in enumerate(lams, start=1):
        assert lam == [a - b for a, b in zip([1] * d + [0] * (4 - d), [0] * (4 - d) + [3] * d)]
    assert "lambda_det" not in doc


def test_weights_unitary_rationals(capsys):
    code, out, _ = call(capsys, "weights", "--family", "u-inert", "--r", "2", "--s", "1", "--q", "5")
    doc = check_schema("weights", out)
    assert code == 0 and doc["lambda_det"] == [6, 6, 6]
    vals = [x for v in doc["delta_alpha"].values() for x in v]
    assert all(isinstance(x, (int, str)) for x in vals)
    assert any(isinstance(x, str) and "/" in x for x in vals)


def test_identity_binomial_reports_negative_shift_failures(capsys):
    code, out, _ = call(capsys, "identity", "--binomial", "12")
    doc = check_schema("identity", out)
    assert doc["cases_checked"] > 0
    # the sum is nonzero for some d < 0; the command reports them and exits 1
    assert code == 1 and doc["failures"]
    assert all(f["d"] < 0 for f in doc["failures"])


def test_identity_socle(capsys):
    code, out, _ = call(capsys, "identity", "--socle", "2", "--socle", "3")
    doc = check_schema("identity", out)
    assert code == 0 and doc["failures"] == []
    assert [s["contained"] for s in doc["socle"]] == [False, False]


def test_verify_is_deterministic(capsys):
    argv = ["verify", "--family", "u-inert", "--r", "2", "--s", "1", "--q", "5",
            "--samples", "200", "--seed", "42"]
    code1, out1, _ = call(capsys, *argv)
    code2, out2, _ = call(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = check_schema("verify", out1)
    assert doc["pass"] and doc["seed"] == 42


def test_verify_threads_do_not_change_bytes(capsys, monkeypatch):
    argv = ["verify", "--family", "gl", "--n", "3", "--q", "5", "--samples", "30", "--seed", "1",
            "--suite", "borel", "--suite", "zip"]
    _, serial, _ = call(capsys, *argv)
    monkeypatch.setenv("ZIPSTRATA_THREADS", "2")
    _, parallel, _ = call(capsys, *argv)
    assert serial == parallel


def test_verify_failure_exit_code(capsys):
    # over the prime field itself the ev1 sign cannot be calibrated
    code, out, _ = call(capsys, "verify", "--family", "gl", "--n", "3", "--q", "5", "--seed", "0",
                        "--suite", "ev1", "--ext", "1", "--d", "3", "--samples", "10")
    doc = check_schema("verify", out)
    assert code == 1 and not doc["pass"] and "counterexample" in doc


@pytest.mark.parametrize("argv", [
    ["weights", "--family", "so", "--n", "3", "--q", "5"],
    ["weights", "--family", "sp", "--q", "5"],
    ["weights", "--family", "sp", "--n", "3", "--q", "6"],
    ["verify", "--family", "sp", "--n", "2", "--q", "5"],               # no seed
    ["weights", "--family", "u-inert", "--r", "1", "--s", "2", "--q", "5"],
    ["gs-cone", "--family", "gl", "--n", "3", "--q", "5", "--lambda", "1,x,0"],
    ["gs-cone", "--family", "gl", "--n", "3", "--q", "5", "--lambda", "1,0"],
    ["verify", "--family", "sp", "--n", "2", "--q", "5", "--seed", "1", "--suite", "nope"],
    ["frobnicate"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and "error" in err


def test_unwritable_output(capsys, tmp_path):
    target = tmp_path / "missing" / "out.json"
    code, _, _ = call(capsys, "weights", "--family", "sp", "--n", "2", "--q", "3", "-o", str(target))
    assert code == 2


def test_output_file(capsys, tmp_path):
    target = tmp_path / "w.json"
    code, out, _ = call(capsys, "weights", "--family", "sp", "--n", "2", "--q", "3", "-o", str(target))
    assert code == 0 and out == ""
    check_schema("weights", target.read_text())


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"family": "sp", "n": 3, "q": 3}))
    _, from_file, _ = call(capsys, "weights", "--config", str(cfg))
    _, flags, _ = call(capsys, "weights", "--family", "sp", "--n", "3", "--q", "3")
    assert from_file == flags
    _, override, _ = call(capsys, "weights", "--config", str(cfg), "--q", "5")
    assert json.loads(override)["q"] == 5
    cfg.write_text(json.dumps({"family": "sp", "n": 3, "q": 3, "colour": 1}))
    assert call(capsys, "weights", "--config", str(cfg))[0] == 2


def test_strata_json_and_dot(capsys):
    code, out, _ = call(capsys, "strata", "--family", "sp", "--n", "2", "--q", "3")
    doc = check_schema("strata", out)
    assert code == 0 and len(doc["elements"]) == 4
    code, out, _ = call(capsys, "strata", "--family", "gl", "--n", "3", "--r", "2", "--s", "1",
                        "--q", "3", "--kind", "flag", "--format", "dot")
    assert code == 0 and out.startswith("digraph") and out.count("->") > 0


def test_gs_cone_command(capsys):
    code, out, _ = call(capsys, "gs-cone", "--family", "gl", "--n", "4", "--r", "2", "--s", "2",
                        "--q", "5", "--lambda", "0,-1,0,0")
    doc = check_schema("gs-cone", out)
    assert code == 0 and doc["in_gs_cone"] and doc["vgs_full"]
    code, out, _ = call(capsys, "gs-cone", "--family", "sp", "--n", "2", "--q", "3", "--lambda", "1,0")
    doc = check_schema("gs-cone", out)
    assert code == 0 and not doc["in_gs_cone"] and doc["vgs_full"] is False


def test_steinberg_command(capsys):
    code, out, _ = call(capsys, "steinberg", "--family", "gl", "--n", "1", "--q", "3", "--lambda", "4")
    doc = check_schema("steinberg", out)
    assert code == 0 and doc["digits"] == [[1], [1]]
    code, out, _ = call(capsys, "steinberg", "--family", "sp", "--n", "2", "--q", "3",
                        "--lambda", "1,-3", "--levi-only")
    doc = check_schema("steinberg", out)
    assert code == 0 and doc["digits"] == [[1, 0], [0, -1]]
    code, _, _ = call(capsys, "steinberg", "--family", "sp", "--n", "2", "--q", "3", "--lambda", "0,1")
    assert code == 2


def test_run_config_directly():
    status, text = run(RunConfig("weights", family="gl", n=2, q=3))
    assert status == 0 and json.loads(text)["signature"] == [2, 0]
    with pytest.raises(UsageError):
        run(RunConfig("weights", family="u-inert", n=2, q=3))


def test_jsonable():
    assert jsonable({"a": (Fraction(1, 2), Fraction(4, 2))}) == {"a": ["1/2", 2]}


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "zipstrata", "weights", "--family", "sp",
                          "--n", "1", "--q", "2"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["rows"][0]["lambda"] == [-1]
