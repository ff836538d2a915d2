"""End-to-end tests of the command line, run in process via main(argv).

Golden outputs live in tests/golden/.  To regenerate them after an
intentional output change:

    TRANSLIM_REGEN_GOLDENS=1 python3 -m pytest tests/test_cli.py

and review the diff before committing.
"""

import json
import os
import pathlib

import pytest

from translim.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def check_golden(name: str, text: str) -> None:
    path = GOLDEN / name
    if os.environ.get("TRANSLIM_REGEN_GOLDENS") == "1":
        path.write_text(text, encoding="utf-8")
    assert text == path.read_text(encoding="utf-8")


# -- calculators -------------------------------------------------------------


def test_ordinal_add_example(capsys):
    code, out, err = run_cli(capsys, "ordinal", "add", "w+3", "w")
    assert (code, out, err) == (0, "w*2\n", "")


def test_ordinal_sub_is_left_subtraction(capsys):
    # sub A B answers: what g satisfies B + g = A
    code, out, _ = run_cli(capsys, "ordinal", "sub", "w+3", "w")
    assert (code, out) == (0, "3\n")
    code, out, _ = run_cli(capsys, "ordinal", "sub", "w", "3")
    assert (code, out) == (0, "w\n")


def test_ordinal_cmp_and_fmt(capsys):
    assert run_cli(capsys, "ordinal", "cmp", "w", "w+1")[:2] == (0, "lt\n")
    assert run_cli(capsys, "ordinal", "cmp", "w+w", "w*2")[:2] == (0, "eq\n")
    assert run_cli(capsys, "ordinal", "fmt", "w^1*1+0")[:2] == (0, "w\n")


def test_ordinal_points_golden(capsys):
    code, out, _ = run_cli(capsys, "ordinal", "points", "w*2")
    assert code == 0
    check_golden("ordinal_points_w2.txt", out)


def test_ordinal_sub_underflow_is_check_failure(capsys):
    code, out, err = run_cli(capsys, "ordinal", "sub", "3", "w")
    assert code == 1
    assert out == ""
    assert err.startswith("check failed: OrdinalUnderflowError:")


def test_ordinal_usage_errors(capsys):
    code, _, err = run_cli(capsys, "ordinal", "add", "w")
    assert code == 2 and err.startswith("error:")
    code, _, err = run_cli(capsys, "ordinal", "fmt", "bogus")
    assert code == 2 and err.startswith("error:")


# -- term / limterm / sumterm ------------------------------------------------


def test_term_parse_normalizes(capsys):
    code, out, _ = run_cli(capsys, "term", "parse", "(+ x0 (scal 2 x1))")
    assert (code, out) == (0, "(+ x0 (scal 2 x1))\n")


def test_term_eval_json_golden(capsys):
    code, out, _ = run_cli(capsys, "term", "eval", "(+ x0 (scal 2 x1))",
                           "--module", "Z/4", "--seq", "[0,w)->1", "--json")
    assert code == 0
    assert json.loads(out)["value"] == "3"
    check_golden("term_eval_z4.json", out)


def test_limterm_eval_example(capsys):
    code, out, err = run_cli(capsys, "limterm", "eval", "--alpha", "w",
                             "--module", "Z/4", "--seq", "[0,w)->1")
    assert (code, out, err) == (0, "1\n", "")


def test_limterm_build_golden(capsys):
    code, out, _ = run_cli(capsys, "limterm", "build", "--alpha", "w+2")
    assert code == 0
    check_golden("limterm_build_wp2.txt", out)


def test_limterm_eval_length_mismatch(capsys):
    code, _, err = run_cli(capsys, "limterm", "eval", "--alpha", "w+1",
                           "--module", "Z/4", "--seq", "[0,w)->1")
    assert code == 2
    assert "covers w" in err and "w+1" in err


def test_sumterm_build_golden(capsys):
    code, out, _ = run_cli(capsys, "sumterm", "build", "--alpha", "w")
    assert (code, out) == (0, "(sum w [0,w)->idx)\n")
    check_golden("sumterm_build_w.txt", out)


def test_sumterm_eval_finite_support(capsys):
    code, out, _ = run_cli(capsys, "sumterm", "eval", "--alpha", "w",
                           "--module", "Z/4",
                           "--seq", "[0,3)->1; [3,w)->0")
    assert (code, out) == (0, "3\n")


def test_sumterm_eval_divergent_is_check_failure(capsys):
    code, out, err = run_cli(capsys, "sumterm", "eval", "--alpha", "w",
                             "--module", "Z/4", "--seq", "[0,w)->1")
    assert code == 1
    assert out == ""
    assert err.startswith("check failed: DivergentSumError:")


def test_sumterm_restrict(capsys):
    code, out, _ = run_cli(capsys, "sumterm", "restrict", "--alpha", "w",
                           "--module", "Z/4", "--seq", "[0,3)->1")
    assert (code, out) == (0, "3\n")
    # the family may not overhang the ambient index
    code, _, err = run_cli(capsys, "sumterm", "restrict", "--alpha", "3",
                           "--module", "Z/4", "--seq", "[0,w)->0")
    assert code == 2 and "beyond" in err


# -- check -------------------------------------------------------------------


def test_check_limterm_echoes_seed_and_passes(capsys):
    code, out, _ = run_cli(capsys, "check", "limterm", "--alpha", "w",
                           "--module", "Z/4", "--trials", "20",
                           "--seed", "7")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "seed: 7"
    assert lines[-1].startswith("check limterm: PASS")
    check_golden("check_limterm_w_z4_seed7.txt", out)


def test_check_limterm_battery_golden(capsys):
    code, out, _ = run_cli(capsys, "check", "limterm", "--alpha", "w+1",
                           "--trials", "10")
    assert code == 0
    assert out.count(": pass") == 5
    check_golden("check_limterm_battery_wp1.txt", out)


def test_check_ab5_infinitary_golden(capsys):
    code, out, _ = run_cli(capsys, "check", "ab5", "--ring", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "seed: 0"
    assert "equivalence: PASS (conditions agree)" in lines
    assert "  limit terms:    holds" in lines
    check_golden("check_ab5_inf_w_mod2.txt", out)


def test_check_ab5_finitary_golden(capsys):
    code, out, _ = run_cli(capsys, "check", "ab5", "--ring", "2",
                           "--theory", "fin-add")
    assert code == 0
    assert "  limit terms:    fails" in out.splitlines()
    assert "equivalence: PASS (conditions agree)" in out
    check_golden("check_ab5_fin_w_mod2.txt", out)


def test_check_ab5_trivial_ring_finitary(capsys):
    # over the zero ring even finite sums reach everything
    code, out, _ = run_cli(capsys, "check", "ab5", "--mod", "1",
                           "--theory", "fin-add")
    assert code == 0
    assert "  limit terms:    holds" in out.splitlines()


def test_check_ab5_usage_errors(capsys):
    code, _, err = run_cli(capsys, "check", "ab5")
    assert code == 2 and "one of --ring or --mod" in err
    code, _, err = run_cli(capsys, "check", "ab5", "--ring", "2",
                           "--mod", "3")
    assert code == 2 and "disagree" in err
    code, _, err = run_cli(capsys, "check", "ab5", "--ring", "2",
                           "--set", "w*2")
    assert code == 2 and "finite or w" in err
    code, _, err = run_cli(capsys, "check", "ab5", "--ring", "0")
    assert code == 2 and "at least 1" in err


def test_check_refute_successor_has_witness(capsys):
    code, out, _ = run_cli(capsys, "check", "refute", "--mod", "3",
                           "--alpha", "5")
    assert code == 0
    assert out.splitlines() == [
        "seed: 0",
        "theory: add-fin mod 3",
        "alpha: 5",
        "verdict: a limit term exists",
        "witness: x4",
        "witness check: pass",
    ]


def test_check_refute_challenge_golden(capsys):
    code, out, _ = run_cli(capsys, "check", "refute", "--mod", "2",
                           "--alpha", "w", "--term", "(+ x0 x1)")
    assert code == 0
    assert "verdict: no limit term exists" in out
    assert "certificate check: pass" in out
    check_golden("check_refute_mod2_w_challenge.txt", out)


def test_check_refute_rejects_malformed_candidate(capsys):
    code, _, err = run_cli(capsys, "check", "refute", "--mod", "2",
                           "--alpha", "w", "--term", "(+ x0")
    assert code == 2 and err.startswith("error:")


# -- diagram -----------------------------------------------------------------


def test_diagram_sample_golden(capsys):
    code, out, err = run_cli(capsys, "diagram", "sample", "--mod", "4",
                             "--seed", "3")
    assert code == 0
    assert err == "seed: 3\n"
    json.loads(out)
    check_golden("diagram_sample_mod4_seed3.json", out)


def test_diagram_sample_check_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "diagram", "sample", "--mod", "4",
                           "--seed", "3")
    assert code == 0
    path = tmp_path / "system.json"
    path.write_text(out, encoding="utf-8")

    code, out, err = run_cli(capsys, "diagram", "check", str(path))
    assert (code, err) == (0, "")
    lines = out.splitlines()
    assert lines[0] == "index: w"
    assert lines[-1] == "diagram check: PASS"

    code, out, _ = run_cli(capsys, "diagram", "check", str(path), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["index"] == "w"

    code, out, _ = run_cli(capsys, "diagram", "limit", str(path))
    assert code == 0
    assert out.splitlines()[0].startswith("limit: ")


def test_diagram_check_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "diagram", "check",
                           str(tmp_path / "nope.json"))
    assert code == 2 and err.startswith("error: cannot read diagram file")


def test_diagram_check_bad_json(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json", encoding="utf-8")
    code, _, err = run_cli(capsys, "diagram", "check", str(path))
    assert code == 2 and "not JSON" in err


def test_diagram_check_bad_field(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "diagram", "sample", "--mod", "2",
                           "--seed", "0")
    data = json.loads(out)
    del data["index"]
    path = tmp_path / "mangled.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    code, _, err = run_cli(capsys, "diagram", "check", str(path))
    assert code == 2 and "missing field 'index'" in err


# -- suite -------------------------------------------------------------------


def test_suite_run_all_golden(capsys):
    code, out, _ = run_cli(capsys, "suite", "run", "all")
    assert code == 0
    assert out.splitlines()[0] == "suite transfinite (seed 0)"
    assert "suite transfinite: 40/40 passed" in out
    assert "suite diagrams: 33/33 passed" in out
    assert "suite ab5: 35/35 passed" in out
    assert out.rstrip().endswith("suite run: PASS")
    check_golden("suite_run_all_seed0.txt", out)


def test_suite_run_one_with_seed(capsys):
    code, out, _ = run_cli(capsys, "suite", "run", "diagrams",
                           "--seed", "4")
    assert code == 0
    assert out.splitlines()[0] == "suite diagrams (seed 4)"


def test_suite_run_json_totals(capsys):
    code, out, _ = run_cli(capsys, "suite", "run", "transfinite", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["suites"][0]["total"] == 40


def test_suite_run_fails_under_tampered_evaluator(capsys, monkeypatch):
    # negative control: a broken limit evaluator must not pass the suite
    monkeypatch.setattr("translim.transfinite.lim_eval",
                        lambda module, fam: module.zero())
    code, out, _ = run_cli(capsys, "suite", "run", "transfinite")
    assert code == 1
    assert out.rstrip().endswith("suite run: FAIL")


# -- plumbing ----------------------------------------------------------------


def test_help_exits_zero(capsys):
    assert run_cli(capsys, "--help")[0] == 0


def test_unknown_command_exits_two(capsys):
    assert run_cli(capsys, "frobnicate")[0] == 2


def test_missing_subcommand_exits_two(capsys):
    assert run_cli(capsys)[0] == 2


@pytest.mark.parametrize("argv", [
    ("ordinal", "add", "w+3", "w", "--json"),
    ("term", "parse", "(sum w [0,w)->idx)", "--json"),
    ("limterm", "eval", "--alpha", "w", "--module", "Z/4",
     "--seq", "[0,w)->1", "--json"),
    ("check", "refute", "--mod", "2", "--alpha", "3", "--json"),
], ids=["ordinal", "term-parse", "limterm-eval", "check-refute"])
def test_json_flag_emits_one_json_object(capsys, argv):
    code, out, _ = run_cli(capsys, *argv)
    assert code == 0
    payload = json.loads(out)
    assert "command" in payload


@pytest.mark.parametrize("argv", [
    ("check", "limterm", "--alpha", "w", "--module", "Z/4",
     "--trials", "20"),
    ("diagram", "sample", "--mod", "4", "--seed", "3"),
    ("suite", "run", "ab5"),
    ("check", "ab5", "--ring", "3", "--set", "4", "--json"),
], ids=["check-limterm", "diagram-sample", "suite-ab5", "check-ab5"])
def test_identical_argv_identical_bytes(capsys, argv):
    first = run_cli(capsys, *argv)
    second = run_cli(capsys, *argv)
    assert first == second
    assert first[0] == 0
