import json
import subprocess
import sys

import pytest

from shimura_gate.cli import cache_dir, cache_key, main
from shimura_gate.exceptional import ExceptionalConfig, ExceptionalSetReport
from shimura_gate.fields import parse_field_spec


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("SHIMURA_GATE_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    assert code == 0, err
    return json.loads(out)


def test_verdict_assumed_biquadratic(capsys):
    data = run_json(capsys, "verdict", "--d", "10", "--field", "biquad:-5,7", "--p", "127", "--assume-outside-exceptional")
    assert data["outcome"] == "empty" and data["conditional"] is True and data["q"] == 29
    assert {"d", "field", "p", "outcome", "conditional", "reasons", "q", "L_source"} <= set(data)


def test_verdict_class_number_one(capsys):
    data = run_json(capsys, "verdict", "--d", "10", "--field", "quad:-1", "--p", "101")
    assert data["outcome"] == "inconclusive" and "HCF_CONTAINED" in data["reasons"]


def test_verdict_range_and_text(capsys):
    code, out, _ = run(capsys, "verdict", "--d", "22", "--field", "cyclo:13", "--p-range", "317:350", "--assume-outside-exceptional")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5 and all("no k-rational points" in line and "conditional" in line for line in lines)


def test_verdict_irreducibility(capsys):
    data = run_json(capsys, "verdict", "--d", "10", "--field", "biquad:-5,7", "--p", "331", "--assume-outside-exceptional", "--irreducibility")
    assert data["outcome"] == "irreducible"


def test_sets_examples(capsys):
    data = run_json(capsys, "sets", "--field", "quad:-5")
    assert data["T"] == [2, 3, 7] and data["Ram"] == [2, 5]
    for key in ("field", "S", "N0", "T", "Ram", "N1", "N0p", "N1p", "L", "complete"):
        assert key in data
    data = run_json(capsys, "sets", "--field", "quad:7")
    assert data["T"] == [2, 3, 19] and data["Ram"] == [2, 7]


def test_sets_json_round_trip(capsys):
    data = run_json(capsys, "sets", "--field", "quad:7")
    report = ExceptionalSetReport.from_json(data)
    assert report.to_json() == data


def test_cache_is_byte_identical(capsys, isolated_cache):
    _, fresh, _ = run(capsys, "sets", "--field", "quad:7", "--json")
    key = cache_key(parse_field_spec("quad:7"), ExceptionalConfig())
    assert (cache_dir() / f"{key}.json").exists()
    _, cached, _ = run(capsys, "sets", "--field", "quad:7", "--json")
    _, uncached, _ = run(capsys, "sets", "--field", "quad:7", "--json", "--no-cache")
    assert fresh == cached == uncached


def test_cache_label_follows_request(capsys):
    run(capsys, "sets", "--field", "biquad:2,3", "--json", "--supplied", "/nonexistent")  # exit 2, no cache write
    a = run_json(capsys, "sets", "--field", "quad:-5")
    b = run_json(capsys, "sets", "--field", "abelian:f=20;H=3")
    assert a["canonical"] == b["canonical"]
    assert b["field"] == "abelian:f=20;H=3"


def test_corrupt_cache_entry_is_ignored(capsys, isolated_cache):
    key = cache_key(parse_field_spec("quad:7"), ExceptionalConfig())
    isolated_cache.mkdir(parents=True)
    (isolated_cache / f"{key}.json").write_text("{not json")
    data = run_json(capsys, "sets", "--field", "quad:7")
    assert data["T"] == [2, 3, 19]


def test_other_commands(capsys):
    assert run_json(capsys, "least-q", "--d", "22", "--field", "cyclo:13")["q"] == 79
    assert run_json(capsys, "genus", "--d", "14")["genus"] == 1
    conic = run_json(capsys, "conic", "--d", "6", "--field", "biquad:-5,7")
    assert conic["result"] == {"kind": "local_obstruction", "place": "3"}
    conic = run_json(capsys, "conic", "--d", "10", "--field", "biquad:-5,7")
    assert conic["result"]["point"] == ["2+sqrt(-5)", "2-sqrt(-5)"]
    assert run_json(capsys, "conic", "--c", "2")["result"]["kind"] == "local_obstruction"
    assert run_json(capsys, "classgroup", "--D", "-20")["h"] == 2
    assert run_json(capsys, "fr", "--q", "29")["traces"] == list(range(-10, 11))
    assert run_json(capsys, "trace-filter", "--q", "3", "--p", "11")["traces"] == [-3, 0, 3]
    code, out, _ = run(capsys, "least-q", "--d", "10", "--field", "biquad:-5,7")
    assert code == 0 and out.strip() == "29"


def test_json_outputs_round_trip(capsys):
    for argv in (
        ["genus", "--d", "22"],
        ["fr", "--q", "7"],
        ["conic", "--d", "22", "--field", "cyclo:13"],
        ["verdict", "--d", "10", "--field", "quad:-1", "--p", "101"],
    ):
        code, out, _ = run(capsys, *argv, "--json")
        assert code == 0
        assert json.dumps(json.loads(out), sort_keys=True) == out.strip()


def test_degree_cap_exit_code(capsys):
    code, _, err = run(capsys, "sets", "--field", "cyclo:13")
    assert code == 3 and "DegreeUnsupported" in err
    code, _, _ = run(capsys, "verdict", "--d", "22", "--field", "cyclo:13", "--p", "401")
    assert code == 3


MALFORMED = [
    ["verdict", "--d", "30", "--field", "quad:-5", "--p", "101"],
    ["verdict", "--d", "1", "--field", "quad:-5", "--p", "101"],
    ["verdict", "--d", "10", "--field", "quad:4", "--p", "101"],
    ["verdict", "--d", "10", "--field", "galois:x^3-2", "--p", "101"],
    ["verdict", "--d", "10", "--field", "quad:-5", "--p", "100", "--assume-outside-exceptional"],
    ["verdict", "--d", "10", "--field", "quad:-5", "--assume-outside-exceptional"],
    ["verdict", "--d", "10", "--field", "quad:-5", "--p", "101", "--p-range", "2:9"],
    ["verdict", "--d", "10", "--field", "quad:-5", "--p-range", "9-2", "--assume-outside-exceptional"],
    ["verdict", "--d", "10", "--field", "quad:-5", "--p-range", "90:20", "--assume-outside-exceptional"],
    ["sets", "--field", "nonsense"],
    ["sets", "--field", "cyclo:5", "--supplied", "/nonexistent/file.json"],
    ["least-q", "--d", "12", "--field", "quad:-5"],
    ["least-q", "--d", "10", "--field", "quad:-5", "--bound", "1"],
    ["genus", "--d", "5"],
    ["conic", "--d", "15"],
    ["conic", "--field", "quad:-5"],
    ["conic", "--d", "6", "--c", "3"],
    ["conic", "--c", "2", "--height", "-1"],
    ["classgroup", "--D", "-21"],
    ["classgroup", "--D", "16"],
    ["fr", "--q", "9"],
    ["trace-filter", "--q", "3", "--p", "9"],
    ["trace-filter", "--q", "3", "--p", "2"],
]


@pytest.mark.parametrize("argv", MALFORMED, ids=[" ".join(a) for a in MALFORMED])
def test_malformed_inputs_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2, (out, err)
    assert err.startswith("error:")


@pytest.mark.parametrize("argv", [[], ["verdict"], ["genus", "--d", "ten"], ["bogus"]])
def test_argparse_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_supplied_file(capsys, tmp_path):
    path = tmp_path / "cyclo5.json"
    path.write_text(json.dumps({"h": 1, "generators": [{"q": 11, "root": 9, "alpha": [-2, -1, 0, 0]}]}))
    data = run_json(capsys, "sets", "--field", "cyclo:5", "--supplied", str(path), "--variant", "primed", "--rho-budget", "10000", "--ecm-curves", "0")
    assert data["S"][0]["provenance"] == "supplied+verified"
    assert data["N1"] is None and data["N1p"] is not None
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"h": 1, "generators": [{"q": 11, "root": 9, "alpha": [11, 0, 0, 0]}]}))
    code, _, _ = run(capsys, "sets", "--field", "cyclo:5", "--supplied", str(bad))
    assert code == 2


def test_module_entry_point(isolated_cache):
    proc = subprocess.run(
        [sys.executable, "-m", "shimura_gate", "genus", "--d", "10", "--json"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"d": 10, "genus": 0}
