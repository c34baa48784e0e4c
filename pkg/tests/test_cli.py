import json

import pytest

from regretgames import cli, docio, fixtures
from regretgames.reports import SolveReport

MINIMAL = json.dumps(
    {
        "version": 1,
        "initial": "a",
        "positions": [{"id": "a", "owner": 1}, {"id": "t", "owner": 2, "target1": True, "weight1": 2}],
        "edges": [{"from": "a", "to": "t"}],
    }
)


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _main(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


# ---------------------------------------------------------------------------
# documents


def test_minimal_document():
    arena = docio.load_arena(MINIMAL)
    assert list(arena.ids) == ["a", "t"]
    assert arena.edges[0].w1 == 2


def test_bad_owner_is_located():
    doc = json.loads(MINIMAL)
    doc["positions"][0]["owner"] = 3
    arena, diags = docio.parse_arena(json.dumps(doc))
    assert arena is None
    assert [(d.where, d.message) for d in diags] == [("positions[0].owner", "owner must be 1 or 2")]


def test_unknown_field():
    doc = json.loads(MINIMAL)
    doc["edges"][0]["colour"] = "red"
    _, diags = docio.parse_arena(json.dumps(doc))
    assert any("colour" in str(d) for d in diags)


def test_target_weight_mismatch():
    doc = json.loads(MINIMAL)
    doc["edges"][0]["w1"] = 5
    _, diags = docio.parse_arena(json.dumps(doc))
    assert any(d.where == "edges[0].w1" for d in diags)


def test_syntax_error_has_line_and_column():
    _, diags = docio.parse_arena('{"version": 1,\n  "initial": }')
    assert "line 2" in str(diags[0])


@pytest.mark.parametrize("name", ["memory_arena", "centipede"])
def test_fixture_round_trip(name):
    text = docio.arena_to_text(fixtures.arena(name))
    assert docio.arena_to_text(docio.load_arena(text)) == text
    assert docio.arena_digest(docio.load_arena(text)) == docio.arena_digest(fixtures.arena(name))


def test_centipede_size():
    assert len(fixtures.centipede().ids) == 11


def test_report_round_trip():
    rep = cli.run("regret", fixtures.text("memory_arena"), {"player": 1})
    again = SolveReport.from_json(json.loads(rep.dumps()))
    assert again.dumps() == rep.dumps()


# ---------------------------------------------------------------------------
# commands


def test_regret_command(capsys, tmp_path):
    code, out = _main(capsys, "regret", _write(tmp_path, "g.json", fixtures.text("memory_arena")))
    doc = json.loads(out)
    assert code == 0 and doc["results"]["regret"] == 3 and doc["exit_code"] == 0


def test_minmax_command(capsys, tmp_path):
    code, out = _main(capsys, "minmax", _write(tmp_path, "g.json", MINIMAL))
    assert code == 0 and json.loads(out)["results"]["value"] == 2


def test_validate_command(capsys, tmp_path):
    code, out = _main(capsys, "validate", _write(tmp_path, "c.json", fixtures.text("centipede")))
    res = json.loads(out)["results"]
    assert code == 0 and res["tree"] and res["positions"] == 11


def test_validate_reports_diagnostics(capsys, tmp_path):
    doc = json.loads(MINIMAL)
    doc["positions"][0]["owner"] = 3
    code, out = _main(capsys, "validate", _write(tmp_path, "bad.json", json.dumps(doc)))
    assert code == 1
    assert json.loads(out)["diagnostics"][0]["message"] == "owner must be 1 or 2"


def test_iterated_centipede(capsys, tmp_path):
    code, out = _main(capsys, "iterated", _write(tmp_path, "c.json", fixtures.text("centipede")))
    res = json.loads(out)["results"]
    assert code == 0
    assert [(r["regret1"], r["regret2"]) for r in res["ranks"]] == [(1, 1), (0, 0)]
    assert res["outcome"]["penalty"] == [1, 3]


def test_iterated_needs_tree_or_positive(capsys, tmp_path):
    code, _ = _main(capsys, "iterated", _write(tmp_path, "g.json", fixtures.text("memory_arena")))
    assert code == 1


def test_matrix_command(capsys, tmp_path):
    code, out = _main(capsys, "matrix", _write(tmp_path, "m.json", fixtures.text("penalty_matrix")))
    res = json.loads(out)["results"]
    assert code == 0 and res["survivors"] == {"1": ["B1"], "2": ["A2"]}


def test_resource_limit_exit_code(capsys, tmp_path):
    path = tmp_path / "p.json"
    assert cli.main(["gen", "--positive", "--positions", "3", "--max-weight", "2", "--seed", "1"]) == 0
    path.write_text(capsys.readouterr().out)
    code, out = _main(capsys, "iterated", "--cap", "1", "--bound", "10", str(path))
    doc = json.loads(out)
    assert code == 2 and doc["results"]["limit"] == 1 and doc["results"]["required"] > 1


@pytest.mark.parametrize("name", ["memory_arena", "centipede"])
def test_check_fixtures(capsys, tmp_path, name):
    code, out = _main(capsys, "check", _write(tmp_path, "x.json", fixtures.text(name)))
    assert code == 0 and json.loads(out)["results"]["verdict"] == "agree"


@pytest.mark.parametrize("seed", [7, 11])
def test_check_generated_tree(capsys, tmp_path, seed):
    cli.main(["gen", "--tree", "--positions", "6", "--seed", str(seed)])
    path = _write(tmp_path, "t.json", capsys.readouterr().out)
    code, out = _main(capsys, "check", path)
    assert code == 0 and json.loads(out)["results"]["agree"]


def test_gen_is_deterministic(capsys):
    cli.main(["gen", "--seed", "4"])
    a = capsys.readouterr().out
    cli.main(["gen", "--seed", "4"])
    assert capsys.readouterr().out == a
    assert docio.parse_arena(a)[1] == []


def test_output_is_byte_identical(capsys, tmp_path):
    path = _write(tmp_path, "c.json", fixtures.text("centipede"))
    _, a = _main(capsys, "iterated", path)
    _, b = _main(capsys, "iterated", path)
    assert a == b


def test_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(fixtures.text("memory_arena")))
    code, out = _main(capsys, "regret", "-")
    assert code == 0 and json.loads(out)["results"]["regret"] == 3


def test_several_files_make_an_array(capsys, tmp_path):
    a = _write(tmp_path, "a.json", fixtures.text("memory_arena"))
    b = _write(tmp_path, "b.json", "{")
    code, out = _main(capsys, "validate", a, b)
    docs = json.loads(out)
    assert [d["exit_code"] for d in docs] == [0, 1] and code == 1


def test_jobs_match_sequential(capsys, tmp_path):
    files = [_write(tmp_path, f"{k}.json", fixtures.text(n)) for k, n in enumerate(["memory_arena", "centipede"])]
    _, seq = _main(capsys, "regret", *files)
    _, par = _main(capsys, "regret", "--jobs", "2", *files)
    assert seq == par


def test_missing_file(capsys, tmp_path):
    code, out = _main(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 1 and "cannot read" in out
