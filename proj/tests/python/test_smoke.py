import os

import pytest

import hetcrash

CORPUS = os.environ.get("HETCRASH_CORPUS", os.path.join(os.path.dirname(__file__), "..", "..", "corpus"))


def trace(name):
    return hetcrash.load_trace(os.path.join(CORPUS, name + ".trace"))


def test_overlay():
    assert hetcrash.overlay("------", "317", 1) == "-317--"
    with pytest.raises(hetcrash.HetcrashError, match="BOUNDS"):
        hetcrash.overlay("------", "abc", 5)


def test_strategies():
    assert hetcrash.strategies() == [
        "naive-disk", "naive-nvm", "latest-dev", "wb-mark-start", "wb-mark-end", "versioned-mark",
    ]


def test_parse_and_format_round_trip():
    s = hetcrash.parse_trace('init 0 "------"\nwrite 0 1 "317"\nwb 0\nsync\ncrash\n')
    assert s.page_size == 6 and s.page_count == 1
    assert len(s) == 7
    assert [e.kind for e in s.events][:3] == ["init", "write", "wb_start"]
    assert s.crashed
    assert hetcrash.parse_trace(hetcrash.format_trace(s)) == s


def test_parse_error():
    with pytest.raises(hetcrash.HetcrashError, match="line 2"):
        hetcrash.parse_trace("sync\nfrobnicate\n")


def test_run_lost_write():
    s = trace("fig2_t10")
    bad = hetcrash.run(s, "latest-dev")
    assert not bad["passed"]
    assert bad["recovered"] == ["abcxyz"]
    assert "expected={3} actual=b" in bad["witness"]
    good = hetcrash.run(s, "wb-mark-end")
    assert good["passed"]
    assert good["recovered"][0][1:3] == "31"


def test_latest_dev_mark():
    s = trace("fig3_t10")
    assert hetcrash.run(s, "latest-dev")["passed"]
    assert not hetcrash.run(s, "latest-dev", latest_dev_mark="end")["passed"]


def test_sweep_world_a():
    r = hetcrash.sweep("a", max_events=3, strategies=["latest-dev", "naive-nvm"])
    assert r["crash_schedules"] > 0
    assert r["violations"]["latest-dev"] == 0
    assert r["violations"]["naive-nvm"] > 0
    assert r["counterexamples"]["naive-nvm"][0].endswith("crash\n")
    assert set(r["cases"]) >= {"1.1", "3.5"}


def test_sample_is_reproducible():
    a = hetcrash.sweep("c", max_events=9, samples=200, seed=7)
    assert a == hetcrash.sweep("c", max_events=9, samples=200, seed=7)
    assert a["seed"] == 7


def test_corpus():
    table = hetcrash.corpus(CORPUS)
    assert len(table) == 10
    assert table["fig2_t10"]["versioned-mark"]
    assert not table["fig2_t10"]["latest-dev"]
