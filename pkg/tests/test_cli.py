import json

import pytest

from agkit.cli import main

FAN_WITH_LATTICE = json.dumps({"rank": 2, "cones": [[[1, 0], [0, 1]]], "lattice": {"den": 7, "extra": [1, 3]}})

COMMANDS = [
    ["hilbert", "--vars", "x,y,z", "--gens", "x*z-y^2"],
    ["bezout", "--f", "x0*x2-x1^2", "--g", "x2"],
    ["mult", "--f", "y", "--g", "y-x^2", "--vars", "x,y"],
    ["molien", "--modulus", "7", "--elements", "[[0,0],[1,6]]"],
    ["groebner", "--vars", "x,y", "--gens", "x^2-y", "x*y-1"],
    ["radical", "--f", "x+1", "--gens", "x^2", "--vars", "x"],
    ["pluecker", "--k", "2", "--n", "4"],
    ["chern", "--preset", "quintic-lines"],
    ["chern", "--construction", "sym(3)", "--rank", "2", "--degree", "4"],
    ["hrr", "--space", "CP3", "--bundle", "O(2)"],
    ["hrr", "--space", "surface", "--numbers", "1,-3,1"],
    ["rh", "--gx", "1", "--gy", "0", "--deg", "2", "--ram", "2,2,2,2"],
    ["toric", "dual", "--cone", "[[1,0],[1,2]]"],
    ["toric", "hilbert-basis", "--cone", "[[1,0],[2,3]]"],
    ["toric", "resolve", "--fan", FAN_WITH_LATTICE],
    ["toric", "check-fan", "--fan", "cp2"],
    ["toric", "check-map", "--source", "blowup", "--target", "octant", "--matrix", "[[1,0],[0,1]]"],
    ["elliptic", "p", "--tau", "1.5i", "--z", "0.3+0.2i"],
    ["elliptic", "params", "--tau", "1.5i"],
    ["theta", "--check-identities"],
    ["modular", "j", "--terms", "5"],
    ["modular", "g4", "--tau", "2i"],
    ["verify-all", "--only", "1,5"],
]


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_every_subcommand_emits_json(capsys, argv):
    code, out = run(capsys, argv + ["--json"])
    assert code == 0
    json.loads(out)


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_human_output(capsys, argv):
    code, out = run(capsys, argv)
    assert code == 0 and out.strip()


def test_quintic_example(capsys):
    _, out = run(capsys, ["chern", "--preset", "quintic-lines", "--json"])
    assert json.loads(out) == {"count": 2875}


def test_bezout_example(capsys):
    _, out = run(capsys, ["bezout", "--f", "x0*x2-x1^2", "--g", "x2", "--json"])
    data = json.loads(out)
    assert data["product"] == 2 and data["agrees"] is True


def test_modular_example(capsys):
    _, out = run(capsys, ["modular", "j", "--terms", "2", "--json"])
    assert json.loads(out) == {"q^-1": 1, "q^0": 744, "q^1": 196884}


def test_mult_example(capsys):
    _, out = run(capsys, ["mult", "--f", "y2", "--g", "y2 - y1^2", "--json"])
    assert json.loads(out) == {"multiplicity": 2, "stabilizedAt": 2}


def test_json_flag_before_subcommand(capsys):
    _, out = run(capsys, ["--json", "hrr", "--space", "CP2", "--bundle", "O(1)"])
    assert json.loads(out)["chi"] == 3


def test_complex_values_are_pairs(capsys):
    _, out = run(capsys, ["elliptic", "dp", "--tau", "1.5i", "--z", "0.5", "--json"])
    value = json.loads(out)["value"]
    assert isinstance(value, list) and len(value) == 2 and abs(complex(*value)) < 1e-5


def test_usage_errors_exit_2(capsys):
    for argv in (["frobnicate"], ["bezout", "--f", "x0"], ["hrr", "--space", "CP2", "--bundle", "O(("], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_computation_errors_exit_1(capsys):
    code, out = run(capsys, ["elliptic", "p", "--tau", "1.5i", "--z", "0", "--json"])
    assert code == 1
    err = json.loads(out)["error"]
    assert err["type"] == "PoleError" and err["command"] == "elliptic"
    code, out = run(capsys, ["rh", "--gx", "0", "--gy", "0", "--deg", "2", "--ram", "5", "--json"])
    assert code == 1 and "error" in json.loads(out)


def test_config_flag_reaches_numerics(capsys, tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text("lattice_radius = 20\n")
    _, small = run(capsys, ["elliptic", "p", "--tau", "1.5i", "--z", "0.3+0.2i", "--json", "--config", str(cfg)])
    _, full = run(capsys, ["elliptic", "p", "--tau", "1.5i", "--z", "0.3+0.2i", "--json"])
    assert json.loads(small)["radius"] == 20
    assert json.loads(small)["value"] != json.loads(full)["value"]


def test_verify_all_fails_with_tiny_radius(capsys, tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text("lattice_radius = 20\n")
    code, out = run(capsys, ["verify-all", "--only", "13", "--config", str(cfg), "--json"])
    report = json.loads(out)
    assert code == 1
    assert [c["passed"] for c in report["checks"]] == [False]


def test_exact_output_is_deterministic(capsys):
    argv = ["groebner", "--vars", "x,y,z,t", "--gens", "x*t-y*z", "x*z-y^2", "y*t-z^2", "--json"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second


def test_seeded_extended_checks_replay(capsys):
    argv = ["verify-all", "--extended", "--only", "104", "--seed", "17", "--json"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    a, b = json.loads(first), json.loads(second)
    assert a["seed"] == 17
    assert [c["computed"] for c in a["checks"]] == [c["computed"] for c in b["checks"]]
