import json

import pytest
from click.testing import CliRunner

from quillenlab.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def test_construct_and_verify_pipeline(runner, tmp_path):
    res = runner.invoke(main, ["construct", "a8-p3"])
    assert res.exit_code == 0, res.output
    payload = json.loads(res.output)
    assert payload["collection"]["p"] == 3

    path = tmp_path / "a8.json"
    path.write_text(res.output)
    res2 = runner.invoke(main, ["verify", "--collection", str(path)])
    assert res2.exit_code == 0, res2.output
    assert json.loads(res2.output)["verdict"] is True


def test_verify_from_stdin(runner):
    res = runner.invoke(main, ["construct", "linear", "--n", "2", "--q", "7", "--p", "3"])
    assert res.exit_code == 0
    res2 = runner.invoke(main, ["verify", "--collection", "-"], input=res.output)
    assert res2.exit_code == 0
    assert json.loads(res2.output)["verdict"] is True


def test_certify_command(runner, tmp_path):
    res = runner.invoke(main, ["construct", "sym-alt", "--n", "10", "--p", "5"])
    assert res.exit_code == 0
    path = tmp_path / "c.json"
    path.write_text(res.output)
    res2 = runner.invoke(main, ["certify", "--collection", str(path)])
    assert res2.exit_code == 0, res2.output
    body = json.loads(res2.output)
    assert body["certified"] is True
    assert body["independent_homology_check"] == "skipped(cap)"


def test_homology_command(runner):
    res = runner.invoke(main, ["homology", "--group", "Sym(3)", "--p", "2"])
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["qdp"] is True and body["betti"]["0"] == 2


def test_search_exit_codes(runner):
    res = runner.invoke(main, ["search", "--group", "Alt(4)", "--p", "3"])
    assert res.exit_code == 0
    assert json.loads(res.output)["outcome"] == "found"

    res = runner.invoke(main, ["search", "--group", "GL(2,4)", "--p", "3"])
    assert res.exit_code == 1
    assert json.loads(res.output)["outcome"] == "obstructed"

    res = runner.invoke(main, ["search", "--group", "Sym(6)", "--p", "3",
                               "--exhaustive"])
    assert res.exit_code == 1
    assert json.loads(res.output)["outcome"] == "none"


def test_cap_env_var_gives_capped(runner, monkeypatch):
    monkeypatch.setenv("QUILLENLAB_CAP", "100")
    res = runner.invoke(main, ["search", "--group", "Sym(6)", "--p", "3"])
    assert res.exit_code == 2
    assert json.loads(res.output)["outcome"] == "capped"


def test_error_exit_code(runner):
    res = runner.invoke(main, ["homology", "--group", "Nope(1)", "--p", "3"])
    assert res.exit_code == 2
    assert "error" in json.loads(res.output)
    res = runner.invoke(main, ["construct", "sym-alt", "--n", "5", "--p", "3"])
    assert res.exit_code == 2


def test_group_spec_file_argument(runner, tmp_path):
    spec = {"kind": "perm", "n": 6, "generators": ["(1,2,3)", "(4,5,6)"]}
    path = tmp_path / "grp.json"
    path.write_text(json.dumps(spec))
    res = runner.invoke(main, ["homology", "--group", f"@{path}", "--p", "3"])
    assert res.exit_code == 0
    assert json.loads(res.output)["rank"] == 2


def test_paper_suite_single_criterion(runner):
    res = runner.invoke(main, ["paper-suite", "--criteria", "9"])
    assert res.exit_code == 0, res.output
    assert "criterion 9" in res.output
    assert "ALL PASSED" in res.output


def test_paper_suite_json_output(runner):
    res = runner.invoke(main, ["paper-suite", "--criteria", "9", "--json"])
    assert res.exit_code == 0
    body = json.loads(res.output)
    assert body["all_passed"] is True and body["schema_version"] == 1
