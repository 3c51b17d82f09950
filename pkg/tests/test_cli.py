"""Command-line surface: JSON shapes, exit codes, determinism, dispatch coverage."""

import json

import pytest

from congruence_lattice import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- crt ---------------------------------------------------------------------------


def test_crt_solve(capsys):
    code, out, _ = run(capsys, "crt", "solve", '[{"m":3,"a":2},{"m":5,"a":3}]')
    assert code == 0
    assert json.loads(out) == {"M": 15, "x0": 8}


def test_crt_solve_infeasible(capsys):
    code, out, _ = run(capsys, "crt", "solve", '[{"m":2,"a":0},{"m":4,"a":1}]')
    assert code == 0
    assert json.loads(out) == {"infeasible": True}


def test_crt_solve_fail_flag(capsys):
    code, out, _ = run(
        capsys, "crt", "solve", '[{"m":2,"a":0},{"m":4,"a":1}]', "--fail-on-infeasible"
    )
    assert code == 1
    assert json.loads(out) == {"infeasible": True}


def test_crt_solve_rejects_zero_modulus(capsys):
    code, _, err = run(capsys, "crt", "solve", '[{"m":0,"a":1}]')
    assert code == 2
    assert '"m"' in err


def test_crt_solve_names_missing_field(capsys):
    code, _, err = run(capsys, "crt", "solve", '[{"a":1}]')
    assert code == 2
    assert '"m"' in err


def test_crt_solve_malformed_json(capsys):
    code, _, err = run(capsys, "crt", "solve", "[{")
    assert code == 2
    assert "JSON" in err


def test_crt_big_modulus_serializes_as_string(capsys):
    m = 2**60
    code, out, _ = run(capsys, "crt", "solve", json.dumps([{"m": str(m), "a": 1}]))
    assert code == 0
    assert json.loads(out) == {"M": str(m), "x0": 1}


def test_crt_stream(capsys):
    code, out, _ = run(capsys, "crt", "stream", '[{"m":2,"a":0},{"m":4,"a":1}]')
    assert code == 0
    data = json.loads(out)
    assert data["states"] == [{"M": 2, "x0": 0}, {"infeasible": True}]


def test_crt_classify(capsys):
    code, out, _ = run(capsys, "crt", "classify", '{"2":[0,0,0],"3":[1,4,13]}')
    assert code == 0
    assert json.loads(out) == {
        "2": {"kind": "zero_to_depth", "depth": 3},
        "3": {"kind": "nonzero", "first_nonzero": 1},
    }


# -- geom ---------------------------------------------------------------------------


def test_geom_expand(capsys):
    code, out, _ = run(capsys, "geom", "expand", "-p", "5", "-s", "1", "-r", "2")
    assert code == 0
    assert json.loads(out)["set"] == [1, 2, 3, 4]


def test_geom_check_negative_shape(capsys):
    code, out, _ = run(capsys, "geom", "check", "-p", "5", "--set", "1,2")
    assert code == 0
    assert json.loads(out) == {"geometric": False}


def test_geom_check_positive(capsys):
    code, out, _ = run(capsys, "geom", "check", "-p", "5", "--set", "1,4")
    assert code == 0
    assert json.loads(out) == {"geometric": True, "descriptor": {"p": 5, "s": 1, "r": 4}}


def test_geom_enum(capsys):
    code, out, _ = run(capsys, "geom", "enum", "-p", "3")
    assert code == 0
    assert json.loads(out)["sets"] == [[0], [1], [1, 2], [2]]


def test_geom_errors_exit_2(capsys):
    code, _, err = run(capsys, "geom", "expand", "-p", "6", "-s", "1", "-r", "2")
    assert code == 2 and "prime" in err


# -- lattice -------------------------------------------------------------------------


def test_lattice_subcommands(capsys):
    code, out, _ = run(capsys, "lattice", "down", "12")
    assert code == 0 and json.loads(out) == {"divisors": [1, 2, 3, 4, 6, 12]}
    code, out, _ = run(capsys, "lattice", "is-antichain", "4,6,9")
    assert code == 0 and json.loads(out) == {"antichain": True}
    code, out, _ = run(capsys, "lattice", "hull", "2,8")
    assert code == 0 and json.loads(out) == {"hull": [2, 4, 8]}
    code, out, _ = run(capsys, "lattice", "omega", "12")
    assert code == 0 and json.loads(out) == {"omega": 3}
    code, out, _ = run(capsys, "lattice", "levels", "-l", "2", "--bound", "10")
    assert code == 0 and json.loads(out) == {"members": [4, 6, 9, 10]}
    code, out, _ = run(capsys, "lattice", "up", "2")
    assert code == 0
    assert json.loads(out) == {"modulus": 2, "residues": [0], "add": [], "remove": [0]}


def test_lattice_is_upward(capsys):
    code, out, _ = run(capsys, "lattice", "is-upward", "--set", '{"modulus":6,"residues":[0]}')
    assert code == 0 and json.loads(out) == {"upward_closed": True}
    code, _, err = run(
        capsys, "lattice", "is-upward", "--set", '{"modulus":2,"residues":[0],"add":[3]}'
    )
    assert code == 2 and "undecidable" in err


# -- antichain ------------------------------------------------------------------------


SPEC_JSON = json.dumps(
    {
        "chains": [
            {"prime": 3, "residues": [1, 4, 13, 40, 40]},
            {"prime": 5, "residues": [2, 7, 57, 57, 57]},
            {"prime": 7, "residues": [3, 3, 3, 3, 3]},
        ],
        "divisors": [2],
    }
)


def test_antichain_build_decimal_strings(capsys):
    code, out, _ = run(capsys, "antichain", "build", "--spec", SPEC_JSON, "-n", "1")
    assert code == 0
    assert json.loads(out) == ["3", "40"]


def test_antichain_build_from_file(tmp_path, capsys):
    path = tmp_path / "spec.json"
    path.write_text(SPEC_JSON)
    code, out, _ = run(capsys, "antichain", "build", "--spec", str(path), "-n", "1")
    assert code == 0
    assert json.loads(out) == ["3", "40"]


def test_antichain_verify(capsys):
    code, out, _ = run(capsys, "antichain", "verify", "--spec", SPEC_JSON, "--prefix", "[3,40]")
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert report["monotone"] and report["antichain"]
    code, out, _ = run(capsys, "antichain", "verify", "--spec", SPEC_JSON, "--prefix", "[3,39]")
    report = json.loads(out)
    assert report["ok"] is False and report["antichain"] is False


def test_antichain_depths(capsys):
    code, out, _ = run(capsys, "antichain", "depths", "--spec", SPEC_JSON)
    assert code == 0
    assert json.loads(out) == {"3": 1, "5": 1, "7": 1}


# -- filter ----------------------------------------------------------------------------


BASE_2N = '[{"modulus":2,"residues":[0]}]'


def test_filter_fip(capsys):
    code, out, _ = run(capsys, "filter", "fip", "--base", BASE_2N)
    assert code == 0 and json.loads(out) == {"fip": True}
    disjoint = '[{"modulus":2,"residues":[0]},{"modulus":2,"residues":[1]}]'
    code, out, _ = run(capsys, "filter", "fip", "--base", disjoint)
    assert code == 0 and json.loads(out) == {"fip": False}


def test_filter_residues(capsys):
    code, out, _ = run(capsys, "filter", "residues", "--base", BASE_2N, "-m", "4")
    assert code == 0 and json.loads(out) == {"residues": [0, 2]}


def test_filter_extend(capsys):
    code, out, _ = run(capsys, "filter", "extend", "--base", BASE_2N, "--set", '{"modulus":2,"residues":[1]}')
    assert code == 0 and json.loads(out) == {"inconsistent": True}


def test_filter_congruent_and_divides(capsys):
    one = '[{"modulus":4,"residues":[1]}]'
    three = '[{"modulus":4,"residues":[3]}]'
    code, out, _ = run(capsys, "filter", "congruent", "--left", one, "--right", three, "-m", "4")
    assert code == 0 and json.loads(out) == {"verdict": "not_congruent"}
    six = '[{"modulus":6,"residues":[0]}]'
    code, out, _ = run(capsys, "filter", "divides", "--left", six, "--right", one)
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "fails" and data["witness"]["modulus"] == 6


def test_filter_nmax(capsys):
    code, out, _ = run(capsys, "filter", "nmax", "-m", "4", "-r", "1", "--forbid", "3", "--pool", "5,7")
    assert code == 0 and json.loads(out) == {"witness": 5}
    code, _, err = run(capsys, "filter", "nmax", "-m", "4", "-r", "2", "--pool", "5")
    assert code == 2 and "gcd" in err


# -- oracle ------------------------------------------------------------------------------


def test_oracle_run_small(capsys):
    code, out, _ = run(capsys, "oracle", "run", "crt", "--seed", "7", "--cases", "50")
    assert code == 0
    report = json.loads(out)
    assert report["mismatches"] == 0 and report["cases_run"] == 50 and report["seed"] == 7


def test_oracle_unknown_suite_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["oracle", "run", "bogus"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_oracle_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("CONGRUENCE_LATTICE_SEED", "99")
    code, out, _ = run(capsys, "oracle", "run", "upward", "--cases", "20")
    assert code == 0 and json.loads(out)["seed"] == 99


# -- global behavior ------------------------------------------------------------------------


def test_outputs_byte_identical_across_runs(capsys):
    first = run(capsys, "geom", "enum", "-p", "7")
    second = run(capsys, "geom", "enum", "-p", "7")
    assert first == second
    # oracle reports are deterministic apart from wall time
    a = json.loads(run(capsys, "oracle", "run", "crt", "--seed", "3", "--cases", "40")[1])
    b = json.loads(run(capsys, "oracle", "run", "crt", "--seed", "3", "--cases", "40")[1])
    a.pop("wall_time_s"), b.pop("wall_time_s")
    assert a == b


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "--output", "pretty", "lattice", "omega", "12")
    assert code == 0 and out == '{\n  "omega": 3\n}\n'


def test_no_command_prints_help(capsys):
    assert cli.main([]) == 2


def test_dispatch_table_covers_each_operation_once():
    ops = list(cli.DISPATCH.values())
    assert len(ops) == len(set(ops)), "an operation is reachable from two subcommands"
    groups = {group for group, _ in cli.DISPATCH}
    assert groups == {"crt", "geom", "lattice", "antichain", "filter", "oracle"}
    required = {
        ("crt", "solve"),
        ("crt", "classify"),
        ("geom", "expand"),
        ("geom", "check"),
        ("geom", "enum"),
        ("antichain", "build"),
        ("antichain", "verify"),
        ("filter", "fip"),
        ("filter", "residues"),
        ("filter", "divides"),
        ("filter", "nmax"),
        ("oracle", "run"),
    }
    assert required <= set(cli.DISPATCH)


def test_dispatch_targets_exist():
    import congruence_lattice

    for dotted in cli.DISPATCH.values():
        module_name, attr = dotted.split(".")
        assert hasattr(getattr(congruence_lattice, module_name), attr), dotted
