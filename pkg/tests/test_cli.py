"""Command-line interface: parsing, exit codes, rendering, file inputs."""

import json
from fractions import Fraction

import pytest

from equidouble import cli
from equidouble.catalogue import catalogue_list
from equidouble.errors import UsageError
from equidouble.scalars import Cyclotomic


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_catalogue_names_cover_the_required_inputs():
    listing = catalogue_list()
    for name in ("Z2", "Z4", "S3", "D4", "Q8", "S4"):
        assert name in listing["groups"]
    for name in ("A3-S3", "Z2-Z4", "Z4-D4", "A4-S4"):
        assert name in listing["extensions"]
    assert "T3" in listing["presentations"]
    assert "circle" in listing["presentations"]
    assert listing["nerves"] == ("circle3",)


def test_config_validation():
    with pytest.raises(UsageError):
        cli.RunConfig(command="dw", budget_homs=0)
    with pytest.raises(UsageError):
        cli.RunConfig(command="dw", budget_dim=-1)
    with pytest.raises(UsageError):
        cli.RunConfig(command="dw", threads=0)
    with pytest.raises(UsageError):
        cli.RunConfig(command="verify-all", format="csv")


def test_scalar_encoding_forms():
    assert cli.encode_scalar(Fraction(3, 2)) == "3/2"
    assert cli.encode_scalar(Fraction(4)) == "4/1"
    enc = cli.encode_scalar(Cyclotomic.zeta(8))
    assert enc["conductor"] == 8
    assert enc["coeffs"][0] == "0/1"
    assert enc["coeffs"][1] == "1/1"
    assert cli.scalar_string(Fraction(4)) == "4"
    assert cli.scalar_string(Fraction(-3, 2)) == "-3/2"
    assert cli.scalar_string(Cyclotomic.zeta(4)) == "0 + 1*z(4)^1"


def test_dw_report_fields(capsys):
    code, out = run_cli(capsys, "dw", "--presentation", "T3", "--group", "S3")
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert report["command"] == "dw"
    assert report["hom_count"] == 48
    assert report["invariant"] == "8/1"


def test_catalogue_command_lists_kinds(capsys):
    code, out = run_cli(capsys, "catalogue")
    assert code == 0
    report = json.loads(out)
    assert "A3-S3" in report["extensions"]
    assert "csv_rows" not in report  # only the csv format keeps the rows


def test_unknown_names_exit_with_usage_code(capsys):
    assert cli.main(["double", "--group", "NoSuchGroup"]) == 2
    assert cli.main(["jdouble", "--extension", "NoSuchExt"]) == 2
    assert cli.main(["cech", "--extension", "Z2-Z4", "--monodromy", "7"]) == 2
    capsys.readouterr()


def test_argparse_rejects_unknown_subcommand():
    with pytest.raises(SystemExit) as info:
        cli.main(["frobnicate"])
    assert info.value.code == 2


def test_budget_exceeded_exits_with_resource_code(capsys):
    argv = ["dw", "--presentation", "Sigma_3", "--group", "S4", "--budget-homs", "2"]
    assert cli.main(argv) == 3
    capsys.readouterr()


def test_csv_rejected_for_non_tabular_commands(capsys):
    assert cli.main(["verify-all", "--extension", "Z2-Z4", "--format", "csv"]) == 2
    capsys.readouterr()


def test_bad_thread_env_is_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("EQUIDOUBLE_THREADS", "soon")
    assert cli.main(["catalogue"]) == 2
    monkeypatch.setenv("EQUIDOUBLE_THREADS", "0")
    assert cli.main(["catalogue"]) == 2
    capsys.readouterr()


def test_smatrix_csv_is_the_pinned_z2_table(capsys):
    code, out = run_cli(capsys, "smatrix", "--group", "Z2", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "label,[0]x0,[0]x1,[1]x0,[1]x1"
    assert lines[1] == "[0]x0,1,1,1,1"
    assert lines[2] == "[0]x1,1,1,-1,-1"
    assert lines[3] == "[1]x0,1,-1,1,-1"
    assert lines[4] == "[1]x1,1,-1,-1,1"


def test_simples_reports_count_and_dimension_sum(capsys):
    code, out = run_cli(capsys, "simples", "--group", "S3")
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 8
    assert report["sum_of_squared_dimensions"] == 36

    code, out = run_cli(capsys, "simples", "--extension", "A3-S3")
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 10
    assert {entry["sector"] for entry in report["simples"]} == {0, 1}


def test_orbifold_check_psi_adds_section(capsys):
    code, out = run_cli(capsys, "orbifold", "--extension", "Z2-Z4", "--check-psi")
    assert code == 0
    report = json.loads(out)
    assert report["psi"] == {
        "bijective": True,
        "product": True,
        "coproduct": True,
        "rmatrix": True,
        "twist": True,
    }
    assert report["all_passed"] is True


def test_verify_category_sampled_subset(capsys):
    argv = ["verify-category", "--extension", "A3-S3", "--sampled", "--budget-dim", "1"]
    code, out = run_cli(capsys, *argv)
    assert code == 0
    report = json.loads(out)
    assert report["sample_size"] == 3
    assert report["all_passed"] is True


def test_text_rendering_is_flat_and_sorted(capsys):
    code, out = run_cli(capsys, "cech", "--extension", "Z2-Z4", "--format", "text")
    assert code == 0
    assert "matches_sector_groupoid: True" in out
    keys = [
        line.split(":")[0]
        for line in out.splitlines()
        if line and not line.startswith((" ", "-"))
    ]
    assert keys == sorted(keys)


def test_json_file_inputs(tmp_path, capsys):
    group_file = tmp_path / "k4.json"
    group_file.write_text(
        json.dumps(
            {
                "order": 4,
                "table": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
                "name": "K4",
            }
        )
    )
    pres_file = tmp_path / "torus.json"
    pres_file.write_text(json.dumps({"generators": 2, "relations": [[1, 2, -1, -2]]}))
    code, out = run_cli(capsys, "dw", "--presentation", str(pres_file), "--group", str(group_file))
    assert code == 0
    report = json.loads(out)
    assert report["hom_count"] == 16  # abelian group: every pair commutes
    assert report["invariant"] == "4/1"

    ext_file = tmp_path / "ext.json"
    ext_file.write_text(json.dumps({"h": "Z4", "kernel": [0, 2]}))
    code, out = run_cli(capsys, "sectors", "--extension", str(ext_file), "--monodromy", "1")
    assert code == 0
    report = json.loads(out)
    assert report["orbit_count"] == 2


def test_out_file_reports_are_byte_identical(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        assert cli.main(["jdouble", "--extension", "Z2-Z4", "--out", str(path)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_thread_count_does_not_change_output(tmp_path, monkeypatch):
    base = tmp_path / "one.json"
    threaded = tmp_path / "four.json"
    assert cli.main(["verify-all", "--extension", "Z2-Z4", "--out", str(base)]) == 0
    monkeypatch.setenv("EQUIDOUBLE_THREADS", "4")
    assert cli.main(["verify-all", "--extension", "Z2-Z4", "--out", str(threaded)]) == 0
    assert base.read_bytes() == threaded.read_bytes()
    report = json.loads(base.read_text())
    assert sorted(report["sections"]) == [
        "category-diagrams",
        "hopf-axioms",
        "j-hopf-axioms",
        "modularity",
        "psi-identification",
    ]
    assert report["all_passed"] is True


def test_failing_checks_exit_one_but_still_write(tmp_path, monkeypatch):
    def fake(config):
        return {"all_passed": False}, False

    monkeypatch.setitem(cli._COMMANDS, "dw", fake)
    path = tmp_path / "fail.json"
    argv = ["dw", "--presentation", "T3", "--group", "S3", "--out", str(path)]
    assert cli.main(argv) == 1
    assert json.loads(path.read_text())["all_passed"] is False
