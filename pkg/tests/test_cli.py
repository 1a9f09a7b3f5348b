import json
import os

import pytest

from confren.cli import main, load_config
from confren.errors import UsageError

HERE = os.path.join(os.path.dirname(__file__), "golden")

GOLDEN = [
    (["cohomology", "--config", "cohomology_d1.cfg"], 0),
    (["cocycle", "--config", "cocycle_d2.cfg"], 0),
    (["check-closure", "--config", "closure_d1.cfg"], 0),
    (["check-closure", "--config", "closure_bad_sign.cfg"], 1),
    (["scheme-change", "--config", "scheme_change_d1.cfg"], 0),
    (["scheme-change", "--config", "cocycle_d2.cfg"], 0),
    (["urg", "--config", "urg_d1.cfg"], 0),
    (["cocycle", "--config", "unsupported.cfg"], 2),
    (["degrees", "elements.txt", "--dim", "2", "--points", "3"], 0),
]


def _run(argv, tmp_path, tag):
    argv = [os.path.join(HERE, a) if a.endswith((".cfg", ".txt")) else a for a in argv]
    out = tmp_path / ("%s.jsonl" % tag)
    code = main(argv + ["--out", str(out)])
    return code, (out.read_bytes() if out.exists() else None)


@pytest.mark.parametrize("argv,code", GOLDEN, ids=[" ".join(a[:3]) for a, _ in GOLDEN])
def test_golden_runs(argv, code, tmp_path):
    c1, t1 = _run(argv, tmp_path, "a")
    c2, t2 = _run(argv, tmp_path, "b")
    assert c1 == c2 == code
    assert t1 == t2
    if code != 2:
        lines = t1.decode().splitlines()
        summary = json.loads(lines[-1])
        assert summary["kind"] == "summary"
        assert summary["ok"] == (code == 0)
        assert all(json.loads(l)["ok"] is not None for l in lines)


def test_flags_override_config(tmp_path):
    _, text = _run(["cohomology", "--config", "cohomology_d1.cfg", "--points", "2"], tmp_path, "o")
    summary = json.loads(text.decode().splitlines()[-1])
    assert summary["config"]["points"] == 2
    assert summary["checked"] == 2


def test_degrees_output(tmp_path):
    _, text = _run(["degrees", "elements.txt", "--dim", "2", "--points", "3"], tmp_path, "d")
    recs = [json.loads(l) for l in text.decode().splitlines()[:-1]]
    assert [r["devd"] for r in recs] == [2, 1, 4]


def test_degrees_empty_and_malformed(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    assert main(["degrees", str(empty), "--out", str(tmp_path / "e.jsonl")]) == 0
    assert len((tmp_path / "e.jsonl").read_text().splitlines()) == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("1*G[1,2](x^-1\n")
    assert main(["degrees", str(bad)]) == 2


def test_usage_errors(tmp_path, capsys):
    assert main(["urg", "--points", "2"]) == 2
    assert main(["cohomology", "--probes", "-1"]) == 2
    assert main(["check-closure", "--wedge-sign", "3"]) == 2
    assert main(["cohomology", "--config", str(tmp_path / "missing.cfg")]) == 2
    with pytest.raises(SystemExit) as e:
        main(["nosuchcommand"])
    assert e.value.code == 2
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    with pytest.raises(UsageError):
        load_config(str(cfg))
