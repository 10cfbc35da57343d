import io
import json
import re
import shlex
from pathlib import Path

import pytest

from localaction.cli import run
from localaction.diagram import loads, validate

README = Path(__file__).resolve().parent.parent / "README.md"


def lad(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def ex(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert lad("examples", "--out", "ex")[0] == 0
    return tmp_path / "ex"


def test_validate(ex):
    assert lad("validate", ex / "fig3.lad.json")[:2] == (0, "ok\n")
    code, out, _ = lad("validate", ex / "fig3.lad.json", "--format", "json")
    assert code == 0 and json.loads(out) == {"ok": True, "violations": []}


def test_validate_failure_exits_one(ex):
    obj = json.loads((ex / "fig1.lad.json").read_text())
    obj["vertices"][0]["local_action"]["generators"] = ["(1 2 3)"]
    bad = ex / "bad.lad.json"
    bad.write_text(json.dumps(obj))
    code, out, _ = lad("validate", bad)
    assert code == 1 and "differs from colour partition" in out


def test_usage_and_file_errors(ex):
    assert lad()[0] == 2
    assert lad("nonsense")[0] == 2
    code, _, err = lad("validate", "missing.json")
    assert code == 2 and "cannot read" in err
    Path("junk.json").write_text("{")
    assert lad("validate", "junk.json")[0] == 2
    assert lad("classify", "--out", "x")[0] == 2
    assert lad("make", "box", "--domain", "1,2")[0] == 2
    assert lad("check-p", ex / "bm_s3.lad.json", "--edge", "zz")[0] == 2
    assert lad("tree", ex / "fig3.lad.json", "--root", "nope")[0] == 2


def test_props_json(ex):
    code, out, _ = lad("props", ex / "fig5.lad.json", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["simple_nondiscrete_with_translation"]["value"] == "yes"


def test_make_round_trips(ex):
    code, out, _ = lad("make", "pair", "--domain", "1 2 3", "--gen", "(1 2)", "--pairing", "1,0")
    assert code == 0 and validate(loads(out)).ok
    assert lad("make", "box", "--domain", "1,2,3", "--gen", "(1 2 3)", "--domain2", "a,b", "--gen2", "(a b)",
               "--out", "box.lad.json")[0] == 0
    assert validate(loads(Path("box.lad.json").read_text())).ok
    code, out, _ = lad("make", "bm", "--domain", "1,2", "--gen", "(1 2)", "--format", "dot")
    assert code == 0 and out.startswith("digraph lad {")


def test_tree_formats(ex):
    code, out, _ = lad("tree", ex / "fig3.lad.json", "--radius", "2")
    assert code == 0 and out.startswith("9 vertices\nroot [v]\n")
    code, out, _ = lad("tree", ex / "fig3.lad.json", "--radius", "2", "--format", "dot")
    assert out.count("->") == 16  # both arcs of each of the 8 edges
    code, out, _ = lad("tree", ex / "fig3.lad.json", "--radius", "1", "--format", "json")
    assert code == 0 and json.loads(out)


def test_iso_witness(ex):
    code, out, _ = lad("iso", ex / "fig3.lad.json", ex / "fig3.lad.json", "--format", "json")
    assert code == 0 and json.loads(out)["isomorphic"]


def test_roundtrip_radius_too_small(ex):
    code, _, err = lad("roundtrip", ex / "fig3.lad.json", "--radius", "1")
    assert code == 2 and "increase radius" in err


def test_symbolic_ball_is_usage_error(ex):
    assert lad("ballgroup", ex / "fig4.lad.json")[0] == 2


def test_output_is_deterministic(ex):
    first = lad("props", ex / "fig1.lad.json", "--format", "json")
    assert lad("props", ex / "fig1.lad.json", "--format", "json") == first
    assert lad("classify", "--degree", "3", "--out", "a", "--format", "json")[0] == 0
    assert lad("classify", "--degree", "3", "--out", "b", "--jobs", "2")[0] == 0
    for f in sorted(Path("a/d3").iterdir()):
        assert f.read_bytes() == (Path("b/d3") / f.name).read_bytes()
    assert len(list(Path("a/d3").iterdir())) == 13


def _readme_sessions():
    text = README.read_text(encoding="utf-8")
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        cmd, expected = None, []
        for line in block.splitlines():
            if line.startswith("$ "):
                if cmd:
                    yield cmd, "".join(expected)
                cmd, expected = line[2:], []
            else:
                expected.append(line + "\n")
        if cmd:
            yield cmd, "".join(expected)


SESSIONS = list(_readme_sessions())


@pytest.mark.parametrize("cmd,expected", SESSIONS, ids=[c for c, _ in SESSIONS])
def test_readme_examples(ex, cmd, expected):
    argv = shlex.split(cmd)
    assert argv[0] == "lad"
    code, out, err = lad(*argv[1:])
    assert code in (0, 1), err
    assert out == expected
