import io
import json
from pathlib import Path

import pytest

from conftest import ROOT, law
from lawkit.cli import (
    EXIT_FAILED,
    EXIT_INCONCLUSIVE,
    EXIT_INPUT,
    EXIT_OK,
    run,
    validate_report,
)

GOLDEN = Path(__file__).parent / "golden"


def invoke(argv, chdir=None):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def _repo_root(monkeypatch):
    monkeypatch.chdir(ROOT)


def test_commutative_exit_codes():
    assert invoke(["commutative", law("t_comm.law")])[0] == EXIT_OK
    assert invoke(["commutative", law("t_ass.law")])[0] == EXIT_FAILED
    code, text = invoke(["commutative", law("t_ass.law"),
                         "--mode", "semantic", "--max-size", "4"])
    assert code == EXIT_FAILED
    assert "witness" in text


def test_yang_baxter_exit_codes():
    assert invoke(["yang-baxter", law("t_comm_flat.law"),
                   "--model", "graded_lines", "--braiding", "c"])[0] == EXIT_OK
    code, text = invoke(["yang-baxter", law("graded_lines_mutant.law"),
                         "--model", "graded_lines_mutant", "--braiding", "c"])
    assert code == EXIT_FAILED
    assert "triple" in text


def test_sigma_check_exit_codes():
    assert invoke(["sigma-check", law("t_comm_flat.law")])[0] == EXIT_OK
    code, text = invoke(["sigma-check", law("t_braid.law")])
    assert code == EXIT_FAILED
    assert "gray2-vertical" in text


def test_input_error_exit_code():
    assert invoke(["commutative", "no/such/file.law"])[0] == EXIT_INPUT
    assert invoke(["homs", law("t_ass.law"),
                   "--source", "x", "--target", "y"])[0] == EXIT_INPUT


def test_inconclusive_on_bound():
    code, text = invoke(["models", law("t_ass.law"), "--size", "9"])
    assert code == EXIT_INCONCLUSIVE


def test_never_crashes_on_malformed_input(tmp_path):
    bad = tmp_path / "bad.law"
    bad.write_text("theory { nope")
    code, text = invoke(["check-theory", str(bad)])
    assert code == EXIT_INPUT
    assert "Error" in text


def test_json_reports_match_schema_and_are_deterministic():
    argv = ["--format", "json", "--no-timings", "commutative",
            "src/lawkit/fixtures/law/t_comm.law"]
    first = invoke(list(argv))
    second = invoke(list(argv))
    assert first == second
    report = json.loads(first[1])
    assert validate_report(report) == []


def test_golden_reports():
    codes = json.loads((GOLDEN / "exit_codes.json").read_text())
    for name, expected_code in sorted(codes.items()):
        golden = (GOLDEN / f"{name}.json").read_text()
        argv = _argv_for(name)
        code, text = invoke(argv)
        assert code == expected_code, name
        assert text == golden, f"golden drift for {name}"
        assert validate_report(json.loads(text)) == []


def _argv_for(name):
    base = ["--format", "json", "--no-timings"]
    F = "src/lawkit/fixtures/law/"
    table = {
        "commutative_t_comm": ["commutative", F + "t_comm.law"],
        "commutative_t_ass": ["commutative", F + "t_ass.law"],
        "commutative_t_ass_semantic": ["commutative", F + "t_ass.law",
                                       "--mode", "semantic", "--max-size", "4"],
        "sigma_check_t_comm_flat": ["sigma-check", F + "t_comm_flat.law"],
        "sigma_check_t_braid": ["sigma-check", F + "t_braid.law"],
        "sigma_check_t_inv": ["sigma-check", F + "t_inv.law"],
        "assoc_derived_t_gl2": ["assoc-derived", F + "t_gl2.law"],
        "assoc_derived_t_comm_flat": ["assoc-derived", F + "t_comm_flat.law"],
        "yang_baxter_graded_lines": ["yang-baxter", F + "t_comm_flat.law",
                                     "--model", "graded_lines", "--braiding", "c"],
        "yang_baxter_mutant": ["yang-baxter", F + "graded_lines_mutant.law",
                               "--model", "graded_lines_mutant", "--braiding", "c"],
        "models_t_ass_2": ["models", F + "t_ass.law", "--size", "2"],
        "homs_z2": ["homs", F + "t_comm.law", "--source", "z2_add",
                    "--target", "z2_add"],
        "intalg_poset": ["intalg", F + "t_comm_flat.law", "--model", "poset_meet"],
        "intcoalg_delooping": ["intcoalg", F + "t_ass_flat.law",
                               "--model", "delooping_z2"],
        "intbialg_poset": ["intbialg", F + "t_comm_flat.law", "--model", "poset_meet"],
        "convolve_delooping": ["convolve", F + "t_ass_flat.law",
                               "--model", "delooping_z2",
                               "--algebra", "1", "--coalgebra", "1"],
        "hom_internal_poset": ["hom-internal", F + "t_comm_flat.law",
                               "--source", "poset_meet", "--target", "poset_meet"],
        "closed_check_poset": ["closed-check", F + "t_comm_flat.law",
                               "--x", "poset_meet", "--y", "poset_meet",
                               "--z", "poset_meet"],
        "closed_check_mixed": ["closed-check", F + "t_comm_flat.law",
                               "--x", "poset_meet", "--y", "poset_join",
                               "--z", "poset_join"],
        "fox_poset": ["fox", F + "t_comm_flat.law", "--models", "poset_meet"],
        "fox_pointed": ["fox", F + "t_pointed_flat.law", "--models", "pointed_poset"],
        "fox_involution": ["fox", F + "t_inv.law", "--models", "scalar_involution"],
        "eh2_t_comm_flat": ["eh", F + "t_comm_flat.law", "--dim", "2",
                            "--models", "poset_meet"],
        "eh2_t_inv": ["eh", F + "t_inv.law", "--dim", "2"],
        "eh1_t_comm": ["eh", F + "t_comm.law", "--dim", "1"],
        "bilax_poset": ["bilax", F + "t_comm_flat.law", "--model", "poset_meet"],
        "check_theory_t_comm_flat": ["check-theory", F + "t_comm_flat.law"],
        "check_theory_t_pointed": ["check-theory", F + "t_pointed_flat.law"],
    }
    return base + table[name]


def test_every_failure_report_carries_a_witness():
    failing = [
        ["commutative", law("t_ass.law")],
        ["sigma-check", law("t_braid.law")],
        ["yang-baxter", law("graded_lines_mutant.law"),
         "--model", "graded_lines_mutant", "--braiding", "c"],
    ]
    for argv in failing:
        code, text = invoke(["--format", "json", "--no-timings"] + argv)
        assert code == EXIT_FAILED
        report = json.loads(text)
        assert report["witnesses"], argv


def test_jobs_and_seed_flags_accepted():
    code, _ = invoke(["--jobs", "2", "--seed", "5",
                      "commutative", law("t_comm.law")])
    assert code == EXIT_OK


def test_shipped_schema_file_matches():
    import lawkit.cli as cli
    schema = json.loads((ROOT / "report_schema.json").read_text())
    assert schema == cli.REPORT_SCHEMA


def test_eh_dim1_uniqueness_probe():
    code, text = invoke(["eh", law("t_comm.law"), "--dim", "1",
                         "--models", "z2_add"])
    assert code == EXIT_OK
    assert "uniqueness(z2_add): Unique" in text


def test_eh_dim1_detects_double_lift():
    code, text = invoke(["eh", law("t_inv.law"), "--dim", "1",
                         "--models", "swap_set"])
    assert code == EXIT_FAILED
    assert "NotUnique" in text and "2 doubled structures" in text


def test_check_theory_on_every_fixture_file():
    from lawkit import fixtures
    for path in fixtures.law_files():
        expected = EXIT_FAILED if "mutant" in path.name else EXIT_OK
        code, text = invoke(["check-theory", str(path)])
        assert code == expected, (path.name, text)
