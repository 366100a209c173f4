import json

from polynerve.cli import main
from polynerve.report import ReportOptions, run_report


def test_report_sections_present():
    rep = run_report("pyr(polygon(4))")
    assert set(rep.sections) == {"polytope", "nerve", "identities", "polytopic", "betti", "buchstaber"}
    assert rep.exit_code == 0
    betti = rep.sections["betti"].data["betti"]
    assert {(e["i"], e["j"]): e["value"] for e in betti} == {(0, 0): 1, (1, 3): 2, (2, 5): 1}
    assert rep.sections["buchstaber"].data["exact"] == 1


def test_skipped_sections_have_reasons():
    rep = run_report("cube(3)", ReportOptions(betti=False, polytopic=False))
    assert rep.sections["betti"].status == "skipped" and rep.sections["betti"].reason
    rep = run_report("prod(cube(4),cube(4))", ReportOptions(identities=False, polytopic=False, buchstaber=False))
    assert rep.sections["betti"].status == "skipped"
    assert "14" in rep.sections["betti"].reason


def test_cube_identities_equal_in_all_degrees():
    rep = run_report("cube(3)", ReportOptions(polytopic=False, betti=False, buchstaber=False))
    assert set(rep.sections["identities"].data["ds_inequality"]["verdicts"]) == {"="}


def test_cli_betti_text(capsys):
    assert main(["pyr(polygon(4))", "--betti"]) == 0
    out = capsys.readouterr().out
    assert "== betti [ok]" in out
    assert "== identities [skipped: not requested]" in out
    assert "-2    .   .   .   .   .   1" in out


def test_cli_buchstaber(capsys):
    assert main(["simplex(3)", "--buchstaber"]) == 0
    assert "s = 1" in capsys.readouterr().out


def test_cli_search(capsys):
    assert main(["polygon(5)", "--buchstaber", "--search", "--seed", "3", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["sections"]["buchstaber"]["data"]["exact"] == 3


def test_cli_labels(capsys):
    main(["pyr(polygon(4))", "--polytopic"])
    text = capsys.readouterr().out
    assert "{1,2,3,4}" in text
    main(["pyr(polygon(4))", "--json"])
    data = json.loads(capsys.readouterr().out)
    assert [0, 1, 2, 3] in data["sections"]["nerve"]["data"]["complex"]["maximal"]


def test_cli_errors_exit_two(capsys):
    assert main(["pyr()"]) == 2
    assert "error" in capsys.readouterr().err
    assert main(["nothing(1)", "--quiet"]) == 2
    assert capsys.readouterr().err == ""


def test_quiet(capsys):
    assert main(["cube(2)", "--quiet"]) == 0
    assert capsys.readouterr().out == ""


def test_round_trip_through_file(tmp_path, capsys):
    main(["prod(pyr(polygon(4)),simplex(1))", "--json"])
    first = json.loads(capsys.readouterr().out)
    path = tmp_path / "report.json"
    path.write_text(json.dumps(first))
    main([f'file("{path}")', "--json"])
    second = json.loads(capsys.readouterr().out)

    def strip(rep):
        for sec in rep["sections"].values():
            sec.pop("seconds")
            if sec.get("data") and "stats" in sec["data"]:
                sec["data"]["stats"].pop("seconds")
        rep.pop("expression")
        return rep

    assert strip(first) == strip(second)


def test_corpus_subcommand(capsys):
    assert main(["corpus", "--max-m", "6", "--depth", "1"]) == 0
    out = capsys.readouterr().out
    assert "polytopes checked" in out
