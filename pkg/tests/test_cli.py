import json

import pytest

from cyclecalc.chow import load_instance
from cyclecalc.cli import ExprError, parse_class, run


@pytest.fixture(scope="module")
def cfg_path(tmp_path_factory):
    p = tmp_path_factory.mktemp("cfg") / "g1def.json"
    p.write_text(json.dumps({"g": 1, "mode": "deformed",
                             "W": "trivial", "s": 2}))
    return str(p)


@pytest.fixture(scope="module")
def inst():
    return load_instance({"g": 1, "mode": "deformed", "W": "trivial", "s": 2})


# -- the expression grammar --------------------------------------------------

def test_parse_named_classes(inst):
    assert parse_class(inst, "h") == inst.h_class()
    assert parse_class(inst, "eps") == inst.eps_unit(1)
    assert parse_class(inst, "iota1") == inst.point_class(1)
    assert parse_class(inst, "Delta1") == inst.delta_one(1)


def test_parse_arithmetic(inst):
    h, eps = inst.h_class(), inst.eps_unit(1)
    assert parse_class(inst, "h + eps") == h + eps
    assert parse_class(inst, "h - eps") == h - eps
    assert parse_class(inst, "-h") == h.scale(-1)
    assert parse_class(inst, "1/2*h") == h.scale("1/2")
    assert parse_class(inst, "2h") == h.scale(2)
    assert parse_class(inst, "h^2") == h * h
    assert parse_class(inst, "(h)#(h)") == inst.external(h, h)
    assert parse_class(inst, "h*eps") == h * eps


def test_parse_errors(inst):
    for bad in ("h +", "(h", "q", "h ^ x", "2.5*h"):
        with pytest.raises(ExprError):
            parse_class(inst, bad)


def test_sum_shape_mismatch_rejected(inst):
    with pytest.raises(ValueError):
        parse_class(inst, "h + 1")   # 1 is not a class; scalar needs a factor


# -- subcommand behavior -----------------------------------------------------

def test_schur_weyl_exit_and_output(capsys):
    assert run(["schur-weyl", "--n", "2", "--r", "3"]) == 0
    out = capsys.readouterr().out
    assert "dim: 5" in out


def test_homdim(capsys):
    assert run(["homdim", "--gens", "N:-2", "--src", "N N", "--dst", "N N"]) == 0
    assert "dim: 2" in capsys.readouterr().out


def test_json_output_is_deterministic(capsys):
    assert run(["schur-weyl", "--n", "2", "--r", "4", "--json"]) == 0
    first = capsys.readouterr().out
    assert run(["schur-weyl", "--n", "2", "--r", "4", "--json"]) == 0
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["schema"] == "cyclecalc/1"
    assert payload["dim"] == 14


def test_identities_battery(capsys):
    for which in ("incl-excl", "pfaffian", "cayley-hamilton", "poscontr",
                  "diagpull", "duality"):
        assert run(["identities", "--which", which]) == 0, which
        capsys.readouterr()


def test_bad_arguments_exit_two(capsys):
    assert run(["no-such-command"]) == 2
    assert run(["homdim", "--gens", "N:-2", "--src", "M", "--dst", "M"]) == 2
    capsys.readouterr()


def test_symdist_test_verdicts(cfg_path, capsys):
    assert run(["symdist", "test", "--config", cfg_path,
                "--alpha", "h", "--mmax", "2"]) == 0
    capsys.readouterr()
    assert run(["symdist", "test", "--config", cfg_path,
                "--alpha", "h+eps", "--mmax", "2", "--json"]) == 3
    payload = json.loads(capsys.readouterr().out)
    assert payload["injective"] is False
    assert payload["fail_at_m"] == 1
    assert payload["theoretical_bound"] == 5


def test_symdist_lift_and_probe(cfg_path, capsys):
    assert run(["symdist", "lift", "--config", cfg_path,
                "--alpha", "h", "--mmax", "2"]) == 0
    out = capsys.readouterr().out
    assert "numeric: (0,1):1" in out
    assert run(["symdist", "probe", "--config", cfg_path, "--alpha", "h",
                "--mmax", "2", "--grid", "1,-1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["survivors"] == 0


def test_chow_axioms_command(cfg_path, capsys):
    assert run(["chow-axioms", "--config", cfg_path, "--mmax", "2",
                "--trials", "5", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pass"] is True
