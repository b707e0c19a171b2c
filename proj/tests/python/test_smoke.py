import os
import pathlib

import pytest

import fpf

ROOT = pathlib.Path(os.environ.get("FPF_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
CORPUS = ROOT / "corpus"


def source(name):
    return (CORPUS / name).read_text(encoding="utf-8")


def test_check_corpus():
    res = fpf.check(source("and_comm.fpf"))
    assert res == [{"theorem": "and_comm", "statement": "A ∧ B → B ∧ A", "tactics": 5}]


def test_wrong_start():
    with pytest.raises(fpf.FpfError) as info:
        fpf.check(source("and_comm_wrong_start.fpf"))
    err = info.value
    assert err.code_name == "GOAL_NOT_CONJUNCTION"
    assert (err.line, err.column) == (5, 3)
    assert "an implication (A ∧ B → B ∧ A)" in str(err)


def test_render_levels():
    src = source("exists_or.fpf")
    golden = (ROOT / "tests" / "golden" / "exists_or_level2.txt").read_text(encoding="utf-8")
    assert fpf.render(src, level=2) == golden
    assert fpf.render(src, level=1).count("\n") == 13
    lines = fpf.render(src, level=3, format="jsonl").splitlines()
    assert lines[0].startswith('{"level":3')
    with pytest.raises(ValueError):
        fpf.render(src, level=7)


def test_session_stepping():
    s = fpf.Session(source("and_comm.fpf"))
    for _ in range(5):
        s.step_forward()
    st = fpf.state(s)
    assert st["open_goals"] == 2
    assert st["goals"] == ["B", "A"]
    s.step_back()
    assert s.cursor == 4
    s.run_to_end()
    assert s.at_end and s.proved == ["and_comm"]


def test_protocol():
    h = fpf.ProtocolHandler()
    r = fpf.request(h, "step_back")
    assert r["type"] == "error" and r["code_name"] == "PROTOCOL_ERROR"
    r = fpf.request(h, "load", source=source("sub_suc.fpf"))
    assert r["v"] == 1 and r["state"]["cursor"] == 0
    r = fpf.request(h, "run_to_end")
    assert r["type"] == "accepted" and r["state"]["proved"] == ["suc_n_sub_m"]
    doc = fpf.request(h, "render", level=3)
    assert doc["text"].endswith("q.e.d.\n")


def test_formula_printing():
    assert fpf.normalize_formula("A /\\ B -> ~C") == "A ∧ B → ¬C"
