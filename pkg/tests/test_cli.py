import json

import pytest

from artifact import cli

DIM = ["dim", "--lambda", "w1,w2", "--n", "3", "--weight", "1,1,1"]


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    return tmp_path


def run(capsys, argv):
    rc = cli.run(argv)
    out, err = capsys.readouterr()
    return rc, out, err


def test_dim(capsys):
    rc, out, _ = run(capsys, DIM)
    assert rc == 0
    obj = json.loads(out)
    assert obj["dim"] == 19 and obj["graded"] == {"0": 6, "1": 8, "2": 5}


def test_output_is_deterministic_and_cached(capsys, cache):
    _, first, _ = run(capsys, DIM + ["--no-cache"])
    assert not list(cache.glob("*.json"))
    _, second, _ = run(capsys, DIM)
    assert first == second
    entries = list(cache.glob("*.json"))
    assert len(entries) == 1
    # a hit is served from the file
    entry = json.loads(entries[0].read_text())
    entry["payload"]["dim"] = -1
    entries[0].write_text(json.dumps(entry))
    _, third, _ = run(capsys, DIM)
    assert json.loads(third)["dim"] == -1
    # a version mismatch invalidates the entry
    entry["version"] = "0.0.0"
    entries[0].write_text(json.dumps(entry))
    _, fourth, _ = run(capsys, DIM)
    assert fourth == first


def test_cache_key_depends_on_file_contents(tmp_path):
    f = tmp_path / "t.json"
    f.write_text('{"n": 2, "slices": []}')
    args = cli.build_parser().parse_args(["knot", "eval", "--file", str(f)])
    k1 = cli.cache_key(args)
    f.write_text('{"n": 3, "slices": []}')
    assert cli.cache_key(args) != k1


def test_empty_knot(capsys):
    rc, out, _ = run(capsys, ["knot", "eval", "--file", '{"n": 2, "slices": []}'])
    assert rc == 0 and json.loads(out) == {"offset": "0", "poly": {"0": 1}}


def test_knot_from_file(capsys, tmp_path):
    f = tmp_path / "unknot.json"
    f.write_text(json.dumps({"n": 3, "slices": [{"cup": [0, 1]}, {"cap": [0, 1]}],
                             "framing": [0]}))
    rc, out, _ = run(capsys, ["knot", "eval", "--file", str(f)])
    assert rc == 0 and json.loads(out)["poly"] == {"-2": 1, "0": 1, "2": 1}


def test_malformed_input_exit_code(capsys):
    assert run(capsys, ["dim", "--lambda", "wx", "--n", "3", "--weight", "1"])[0] == 2
    assert run(capsys, ["knot", "eval", "--file", '{"n": 2, "slices": [{"cup": [0, 5]}]}'])[0] == 2
    assert run(capsys, ["knot", "eval", "--file", "/nonexistent.json"])[0] == 2
    assert run(capsys, ["nosuchcommand"])[0] == 2


def test_cutoff_exit_code(capsys):
    rc, _, err = run(capsys, DIM + ["--cutoff", "1", "--no-cache"])
    assert rc == 3 and "raise --cutoff" in err


def test_verify_bigon(capsys):
    rc, out, _ = run(capsys, ["verify", "--suite", "bigon"])
    assert rc == 0 and json.loads(out)["ok"]


def test_verify_criterion_prints_lines(capsys):
    rc, out, err = run(capsys, ["verify", "--suite", "2,9"])
    assert rc == 0
    assert json.loads(out)["ok"]
    assert "criterion  2 PASS" in err and "criterion  9 PASS" in err


@pytest.mark.parametrize("argv", [
    ["tableaux", "--shape", "2", "2"],
    ["resolution", "--c", "3"],
    ["ladder", "bigon", "--a", "1", "--b", "2"],
    ["shw", "hwv", "--a", "1", "--b", "1", "--n", "2"],
    ["shw", "commute", "--ell", "2", "--n", "2", "--p", "2"],
    ["chain", "rickard", "--i", "1", "--weight", "1", "--n", "2"],
])
def test_other_subcommands(capsys, argv):
    rc, out, _ = run(capsys, argv)
    assert rc == 0 and json.loads(out)
