import json
import subprocess
import sys

import pytest

from branched_cp1.cli import BEGIN, END, main, parse_report
from branched_cp1.decomposition import canonical, same_graph
from branched_cp1.decomposition.io import dump, graph_to_dict, load


@pytest.fixture
def fixtures(tmp_path):
    paths = {}
    for name, f in canonical.CANONICAL.items():
        p = tmp_path / f"{name}.json"
        dump(f(), p)
        paths[name] = p
    d = graph_to_dict(canonical.pospos())
    d["curves"][0]["index"] = 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    paths["bad"] = bad
    trunc = tmp_path / "trunc.json"
    trunc.write_text(paths["pospos"].read_text()[:40])
    paths["trunc"] = trunc
    return paths


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


def test_validate_ok(capsys, fixtures):
    code, out = run(capsys, "validate", fixtures["pospos"])
    assert code == 0
    rep = parse_report(out)
    assert rep["classification"] == "PosPos"
    assert rep["eu.S"] == "-2" and rep["eu.D"] == "0"


def test_validate_violation(capsys, fixtures):
    code, out = run(capsys, "validate", fixtures["bad"])
    assert code == 2
    assert "V4" in parse_report(out)["violations"].split(",")


@pytest.mark.parametrize("name", ["trunc", "missing"])
def test_validate_io_errors(capsys, fixtures, tmp_path, name):
    path = fixtures.get(name, tmp_path / "nope.json")
    code, _ = run(capsys, "validate", path)
    assert code == 1


def test_bad_arguments_exit_one(capsys):
    with pytest.raises(SystemExit) as e:
        main(["demo", "nope"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 1


def test_enumerate(capsys, tmp_path):
    out_dir = tmp_path / "enum"
    code, out = run(capsys, "enumerate", "--genus", 2, "--max-components", 4, "--max-curves", 4, "--out", out_dir)
    assert code == 0
    assert "count=28" in out.splitlines()
    files = sorted(out_dir.glob("*.json"))
    assert len(files) == 28
    graphs = [load(f) for f in files]
    for name in ("pospos", "mixed", "negneg"):
        assert any(same_graph(g, canonical.CANONICAL[name]()) for g in graphs)


def test_apply_roundtrip(capsys, fixtures, tmp_path):
    script = tmp_path / "s.txt"
    script.write_text("bubble interior S\ndebubble b0\n")
    code, out = run(capsys, "apply", fixtures["uniformizing"], script)
    assert code == 0
    rep = parse_report(out)
    assert rep["same_as_input"] == "true" and rep["steps"] == "2"


@pytest.mark.parametrize(
    "graph,text,code",
    [
        ("pospos", "graft D nonsep\n", 2),
        ("pospos", "move D l\n", 3),
        ("uniformizing", "debubble l9\n", 3),
        ("pospos", "frobnicate\n", 1),
        ("bad", "bubble interior S\n", 2),
    ],
)
def test_apply_failures(capsys, fixtures, tmp_path, graph, text, code):
    script = tmp_path / "s.txt"
    script.write_text(text)
    got, out = run(capsys, "apply", fixtures[graph], script)
    assert got == code
    if code in (2, 3):
        assert parse_report(out)["valid"] == "false"


def test_apply_streams_valid_intermediates(capsys, fixtures, tmp_path):
    script = tmp_path / "s.txt"
    script.write_text("graft S nonsep\nbubble crossing g0\n")
    code, out = run(capsys, "apply", fixtures["uniformizing"], script)
    assert code == 0
    assert out.count('"genus"') == 2  # one graph per step
    assert parse_report(out)["classification"] == "Mixed"


def test_demo_nonisobub(capsys, tmp_path):
    code, out = run(capsys, "demo", "nonisobub", "--theta", 0.2, "--out", tmp_path)
    assert code == 0
    rep = parse_report(out)
    assert rep["plus.injective"] == rep["minus.injective"] == "true"
    assert rep["zero.injective"] == "false"
    assert int(rep["plus.orientation"]) == -int(rep["minus.orientation"])
    assert (tmp_path / "nonisobub_zero.txt").exists()


def test_demo_bad_theta(capsys, tmp_path):
    code, _ = run(capsys, "demo", "nonisobub", "--theta", 1.0, "--out", tmp_path)
    assert code == 1


@pytest.mark.parametrize("name", ["systole", "index", "safety"])
def test_other_demos(capsys, tmp_path, name):
    argv = ["demo", name, "--out", tmp_path]
    if name == "systole":
        argv += ["--word-ball", 4]
    code, out = run(capsys, *argv)
    assert code == 0
    assert BEGIN in out and END in out


def test_demo_systole_failure_code(capsys, tmp_path):
    # an absurd tolerance cannot be met: numeric-certificate failure
    code, _ = run(capsys, "demo", "systole", "--word-ball", 2, "--tol", 0.0, "--out", tmp_path)
    assert code == 4


def test_machine_block_deterministic(capsys, fixtures):
    _, a = run(capsys, "validate", fixtures["mixed"])
    _, b = run(capsys, "validate", fixtures["mixed"])
    block = lambda s: s[s.index(BEGIN) : s.index(END)]
    assert block(a) == block(b)


def test_module_entry_point(fixtures):
    p = subprocess.run([sys.executable, "-m", "branched_cp1", "validate", str(fixtures["bad"])], capture_output=True, text=True)
    assert p.returncode == 2
    assert "V4" in p.stdout
