"""Command line behavior: values, formats, determinism, exit codes.

Exit code semantics under test: 0 success, 1 unusable input (also the
argparse path, which is overridden away from its default of 2), 2 internal
consistency failure.  Byte-identical output on identical invocations is
part of the contract."""

import json
from pathlib import Path

import pytest

from sheafcount import cli

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "sheafcount" / "fixtures"


def fixture(name):
    return str(FIXTURES / (name + ".json"))


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- p3 ------------------------------------------------------------------

def test_p3_values(capsys):
    for argv, want in [
        (["p3", "--n", "0"], "1"),
        (["p3", "--n", "1"], "7"),
        (["p3", "--n", "2"], "35"),
        (["p3", "--s", "1", "--d", "1"], "35"),
        (["p3", "--s", "1", "--d", "2"], "7"),
    ]:
        code, out, _ = run(capsys, argv)
        assert code == 0 and out.strip() == want


def test_p3_structured(capsys):
    code, out, _ = run(capsys, ["p3", "--n", "2", "--format", "structured"])
    assert code == 0
    assert json.loads(out) == {"value": "35"}


def test_p3_sampled_seed_independent_value(capsys):
    for seed in ("11", "17"):
        code, out, _ = run(capsys, ["p3", "--n", "4", "--mode", "sampled",
                                    "--seed", seed])
        assert code == 0 and out.strip() == "490"


def test_p3_workers(capsys):
    code, out, _ = run(capsys, ["p3", "--n", "3", "--workers", "4"])
    assert code == 0 and out.strip() == "140"


def test_p3_verbose_lists_fixed_points(capsys):
    code, out, _ = run(capsys, ["p3", "--n", "1", "--verbose"])
    assert code == 0
    lines = out.strip().splitlines()
    assert "3 monomial configurations" in lines[0]
    assert lines[-1] == "7"
    assert len([ln for ln in lines if ln.startswith("#")]) == 4


def test_p3_conflicting_selectors(capsys):
    code, _, err = run(capsys, ["p3", "--n", "1", "--s", "1", "--d", "1"])
    assert code == 1 and "either" in err
    code, _, err = run(capsys, ["p3", "--s", "1"])
    assert code == 1


def test_p3_domain_error(capsys):
    code, _, err = run(capsys, ["p3", "--s", "0", "--d", "2"])
    assert code == 1 and "error" in err


# -- argparse-level failures --------------------------------------------

def test_unknown_subcommand_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == 1


def test_missing_required_flag_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["goettsche"])
    assert exc.value.code == 1


def test_no_subcommand_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 1


# -- series commands -----------------------------------------------------

def test_goettsche_text(capsys):
    code, out, _ = run(capsys, ["goettsche", "--terms", "2"])
    assert code == 0
    assert out.splitlines() == ["q^(0): 1", "q^(1): 24", "q^(2): 324",
                                "O(q^(3))"]


def test_goettsche_enriques(capsys):
    code, out, _ = run(capsys, ["goettsche", "--euler", "12", "--terms", "1"])
    assert code == 0
    assert out.splitlines()[:2] == ["q^(0): 1", "q^(1): 12"]


def test_goettsche_trivial_euler(capsys):
    code, out, _ = run(capsys, ["goettsche", "--euler", "0", "--terms", "5",
                                "--format", "structured"])
    assert code == 0
    doc = json.loads(out)
    assert doc == {"grid": 1, "truncation": "5", "terms": [["0", "1"]]}


def test_phi_series_output(capsys):
    code, out, _ = run(capsys, ["phi", "--nl", fixture("mixed_shift"),
                                "--d", "1", "--terms", "3"])
    assert code == 0
    assert out.splitlines() == ["q^(1/8): 3/2", "O(q^(25/8))"]


def test_z_single_component(capsys):
    code, out, _ = run(capsys, ["z", "--nl", fixture("two_copies"),
                                "--terms", "2", "--d", "0"])
    assert code == 0
    assert out.splitlines() == ["q^(-1): 1", "q^(0): 24", "q^(1): 324",
                                "q^(2): 3200", "O(q^(9/4))"]


def test_z_all_components_structured(capsys):
    code, out, _ = run(capsys, ["z", "--nl", fixture("mixed_shift"),
                                "--terms", "2", "--format", "structured"])
    assert code == 0
    doc = json.loads(out)
    comps = dict((d, payload) for d, payload in doc["components"])
    assert set(comps) == {0, 1, 2, 3}
    assert comps[1]["grid"] == 8
    assert comps[1]["terms"][0] == ["-7/8", "3/4"]
    assert comps[3]["terms"] == []


def test_z_check_ok_on_all_fixtures(capsys):
    for name in ("two_copies", "mixed_shift", "symmetry_window",
                 "quartic_pencil"):
        code, out, _ = run(capsys, ["z", "--nl", fixture(name),
                                    "--terms", "6", "--check"])
        assert code == 0
        assert out.strip() == "closed = direct: OK"


def test_dt_values(capsys):
    for argv, want in [
        (["dt", "--nl", fixture("two_copies"), "--d", "0", "--c", "2"], "1"),
        (["dt", "--nl", fixture("mixed_shift"), "--d", "0", "--c", "2"], "-1"),
        (["dt", "--nl", fixture("symmetry_window"), "--d", "1", "--c", "2"],
         "1/4"),
        (["dt", "--nl", fixture("quartic_pencil"), "--d", "0", "--c", "1"],
         "42"),
    ]:
        code, out, _ = run(capsys, argv)
        assert code == 0 and out.strip() == want


def test_missing_table_file(capsys):
    code, _, err = run(capsys, ["dt", "--nl", "/no/such/table.json",
                                "--d", "0", "--c", "0"])
    assert code == 1 and "error" in err


# -- table maintenance ---------------------------------------------------

def test_nl_validate_good(capsys):
    code, out, _ = run(capsys, ["nl-validate", fixture("quartic_pencil")])
    assert code == 0
    assert out.startswith("ok: 4 entries")


def test_nl_validate_structured(capsys):
    code, out, _ = run(capsys, ["nl-validate", fixture("two_copies"),
                                "--format", "structured"])
    assert code == 0
    doc = json.loads(out)
    assert doc["value"] == "ok" and doc["entries"] == 1 and doc["ell"] == 2


def test_nl_validate_bound_violation(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(
        {"ell": 4, "k": 0, "nl": [{"h": 2, "d": 1, "value": "1"}]}))
    code, _, err = run(capsys, ["nl-validate", str(bad)])
    assert code == 1
    assert "h=2" in err and "d=1" in err


def test_nl_validate_float_rejected(capsys, tmp_path):
    bad = tmp_path / "f.json"
    bad.write_text('{"ell": 2, "k": 0, "nl": [{"h": 1, "d": 0, "value": 0.5}]}')
    code, _, err = run(capsys, ["nl-validate", str(bad)])
    assert code == 1 and "float" in err


def test_nl_extend_stdout(capsys):
    code, out, _ = run(capsys, ["nl-extend", fixture("two_copies"),
                                "--h-lo", "0", "--d-min", "0", "--d-max", "2"])
    assert code == 0
    doc = json.loads(out)
    assert {"h": 2, "d": 2, "value": "2"} in doc["nl"]
    assert doc["ell"] == 2 and doc["k"] == 0


def test_nl_extend_to_file_roundtrip(capsys, tmp_path):
    out_path = tmp_path / "extended.json"
    code, out, _ = run(capsys, ["nl-extend", fixture("symmetry_window"),
                                "--h-lo", "0", "--d-min", "0", "--d-max", "9",
                                "-o", str(out_path)])
    assert code == 0 and out == ""
    code2, out2, _ = run(capsys, ["nl-validate", str(out_path)])
    assert code2 == 0 and out2.startswith("ok: 3 entries")
    # extending the extension changes nothing
    code3, out3, _ = run(capsys, ["nl-extend", str(out_path),
                                  "--h-lo", "0", "--d-min", "0",
                                  "--d-max", "9"])
    assert code3 == 0
    assert json.loads(out3) == json.loads(out_path.read_text())


def test_nl_extend_conflict_exits_two(capsys, tmp_path):
    doc = {"ell": 4, "k": 0, "nl": [
        {"h": 1, "d": 0, "value": "1"},
        {"h": 3, "d": 4, "value": "2"},
    ]}
    p = tmp_path / "conflict.json"
    p.write_text(json.dumps(doc))
    code, _, err = run(capsys, ["nl-extend", str(p), "--h-lo", "0",
                                "--d-min", "0", "--d-max", "4"])
    assert code == 2 and "consistency" in err


def test_nl_extend_odd_ell_exits_one(capsys, tmp_path):
    p = tmp_path / "odd.json"
    p.write_text(json.dumps({"ell": 3, "k": 0, "nl": []}))
    code, _, err = run(capsys, ["nl-extend", str(p), "--h-lo", "0",
                                "--d-min", "0", "--d-max", "3"])
    assert code == 1 and "even" in err


# -- self-test battery ---------------------------------------------------

def test_check_passes(capsys):
    code, out, _ = run(capsys, ["check"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1] == "all 10 checks passed"
    assert sum(1 for ln in lines if ln.startswith("ok: ")) == 10
    assert not any(ln.startswith("FAIL") for ln in lines)


def test_check_seed_reproducible(capsys):
    _, out1, _ = run(capsys, ["check", "--seed", "17"])
    _, out2, _ = run(capsys, ["check", "--seed", "17"])
    assert out1 == out2


# -- determinism ---------------------------------------------------------

def test_byte_identical_reruns(capsys):
    invocations = [
        ["p3", "--n", "3"],
        ["p3", "--n", "4", "--mode", "sampled"],
        ["goettsche", "--terms", "6", "--format", "structured"],
        ["z", "--nl", fixture("mixed_shift"), "--terms", "4"],
        ["nl-extend", fixture("symmetry_window"), "--h-lo", "0",
         "--d-min", "0", "--d-max", "9"],
    ]
    for argv in invocations:
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second, argv
