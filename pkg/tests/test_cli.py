import csv
import json

import pytest

from tricub import cli
from tricub.io import read_graph
from tricub.reports import CONJECTURE, THEOREM, Row, compare


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def graphs(tmp_path, capsys):
    d = tmp_path / "graphs"
    d.mkdir()
    for name in ("K4", "P10", "prism", "S10"):
        assert cli.main(["gen", name, "-o", str(d / f"{name}.el")]) == 0
    capsys.readouterr()
    return d


def test_gen_catalog_roundtrip(tmp_path, capsys):
    path = tmp_path / "p10.el"
    assert run(["gen", "P10", "-o", str(path)], capsys)[0] == 0
    g = read_graph(path)
    assert (g.n, g.m) == (10, 15)


def test_gen_sparse6_stdout(capsys):
    code, out, _ = run(["gen", "K4", "--format", "sparse6"], capsys)
    assert code == 0 and out.startswith(":")


def test_gen_family_and_random(capsys):
    code, out, _ = run(["gen", "family", "--gadget", "W", "--n", "6"], capsys)
    assert code == 0 and "family_W_6" in out
    code, out, _ = run(["gen", "random", "--n", "8", "--seed", "3", "--simple"], capsys)
    assert code == 0
    assert run(["gen", "family", "--n", "6"], capsys)[0] == cli.EXIT_INPUT_ERROR
    assert run(["gen", "random"], capsys)[0] == cli.EXIT_INPUT_ERROR
    assert run(["gen", "nosuch"], capsys)[0] == cli.EXIT_INPUT_ERROR


def test_analyze_petersen_text(capsys):
    code, out, _ = run(["analyze", "P10", "--checks", "t,T,bounds"], capsys)
    assert code == 0
    assert "T<=V/10" in out and "PASS" in out


def test_analyze_json_is_byte_stable(capsys):
    a = run(["analyze", "S16", "--json"], capsys)[1]
    b = run(["analyze", "S16", "--json"], capsys)[1]
    assert a == b
    d = json.loads(a)
    assert d["values"]["t"] == "1" and d["exit_code"] == 0


def test_analyze_rejects_bridged_for_T(graphs, capsys):
    code, _, err = run(["analyze", str(graphs / "S10.el"), "--checks", "T"], capsys)
    assert code == cli.EXIT_INPUT_ERROR and "bridges" in err


def test_analyze_default_checks_accept_bridged(graphs, capsys):
    assert run(["analyze", str(graphs / "S10.el")], capsys)[0] == 0


def test_analyze_budget_zero_inconclusive(capsys):
    assert run(["analyze", "P10", "--checks", "T", "--budget", "0"], capsys)[0] == 3


def test_analyze_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.el"
    bad.write_text("3 1\n0 1\n")
    assert run(["analyze", str(bad)], capsys)[0] == cli.EXIT_INPUT_ERROR
    assert run(["analyze", str(tmp_path / "missing.el")], capsys)[0] == cli.EXIT_INPUT_ERROR
    assert run(["analyze", "K4", "--checks", "bogus"], capsys)[0] == cli.EXIT_INPUT_ERROR


def test_analyze_disconnected(tmp_path, capsys):
    g = tmp_path / "two.el"
    g.write_text("4 6\n0 1\n0 1\n0 1\n2 3\n2 3\n2 3\n")
    code, _, err = run(["analyze", str(g)], capsys)
    assert code == cli.EXIT_INPUT_ERROR and "disconnected" in err


def test_conjecture_and_theorem_exit_codes(monkeypatch, capsys):
    def conj(g, cfg, rep, certs):
        rep.add(compare("fake", CONJECTURE, 1, "<", 0))

    monkeypatch.setitem(cli.RUNNERS, "t", conj)
    code, _, err = run(["analyze", "K4", "--checks", "t"], capsys)
    assert code == 2 and "CONJECTURE VIOLATION" in err

    def theo(g, cfg, rep, certs):
        conj(g, cfg, rep, certs)
        rep.add(Row("fake2", THEOREM, status="fail"))

    monkeypatch.setitem(cli.RUNNERS, "t", theo)
    assert run(["analyze", "K4", "--checks", "t"], capsys)[0] == 1


def test_certificates_emitted_and_verified(tmp_path, capsys):
    out = tmp_path / "certs"
    code, _, _ = run(["analyze", "P10", "--checks", "t,T,scc,cdc,hcolor", "--certificates", str(out)], capsys)
    assert code == 0
    files = sorted(p.name for p in out.iterdir())
    assert files == ["T.json", "cdc.json", "hcolor.json", "hcolor_cdc.json", "scc.json", "t.json"]
    code, text, _ = run(["verify", "P10"] + [str(out / f) for f in files], capsys)
    assert code == 0 and text.count("valid") == len(files)


def test_verify_detects_tampering(tmp_path, capsys):
    out = tmp_path / "certs"
    run(["analyze", "P10", "--checks", "T", "--certificates", str(out)], capsys)
    data = json.loads((out / "T.json").read_text())
    data["value"] = 0
    (out / "T.json").write_text(json.dumps(data))
    (out / "junk.json").write_text("{")
    code, text, _ = run(["verify", "P10", str(out / "T.json"), str(out / "junk.json")], capsys)
    assert code == 1 and "INVALID" in text and "unreadable" in text


def test_batch_jsonl_and_jobs(graphs, tmp_path, capsys):
    one, two = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert run(["batch", str(graphs), "--no-timing", "-o", str(one)], capsys)[0] == 0
    assert run(["batch", str(graphs), "--no-timing", "--jobs", "2", "-o", str(two)], capsys)[0] == 0
    assert one.read_bytes() == two.read_bytes()
    recs = [json.loads(line) for line in one.read_text().splitlines()]
    assert len(recs) == 4 and all("wall_time" not in r for r in recs)


def test_batch_csv(graphs, tmp_path, capsys):
    out = tmp_path / "r.csv"
    run(["batch", str(graphs), "-o", str(out)], capsys)
    lines = out.read_text().splitlines()
    assert lines[0] == f"# {cli.CSV_VERSION}"
    rows = list(csv.reader(lines[1:]))
    assert tuple(rows[0]) == cli.CSV_COLUMNS and len(rows) == 5
    assert all(float(r[5]) >= 0 for r in rows[1:])


def test_batch_failed_rows(graphs, capsys):
    (graphs / "broken.el").write_text("not a graph\n")
    code, out, err = run(["batch", str(graphs), "--checks", "T", "--no-timing"], capsys)
    recs = [json.loads(line) for line in out.splitlines()]
    failed = [r for r in recs if r["status"] == "failed"]
    assert {r["source"].rsplit("/", 1)[-1] for r in failed} == {"broken.el", "S10.el"}
    assert code == 3 and "2 failed" in err


def test_batch_list_file_and_empty(graphs, tmp_path, capsys):
    lst = tmp_path / "list.txt"
    lst.write_text(f"# comment\n{graphs / 'K4.el'}\n\n{graphs / 'P10.el'}\n")
    code, out, _ = run(["batch", str(lst)], capsys)
    assert code == 0 and len(out.splitlines()) == 2
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run(["batch", str(empty)], capsys)[:2] == (0, "")
    assert run(["batch", str(tmp_path / "nope")], capsys)[0] == cli.EXIT_INPUT_ERROR


def test_no_subcommand_is_input_error(capsys):
    assert run([], capsys)[0] == cli.EXIT_INPUT_ERROR
