import json

import pytest

from hextqft.cli import EXIT_BUDGET, EXIT_FAILED, EXIT_INPUT, EXIT_OK, main
from hextqft.triangulation import parse_tri


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariant_on_sphere(capsys):
    code, out, _ = run(capsys, "invariant", "--gen", "boundary-simplex", "--field", "2,1",
                       "--cocycle", "p2k3c1", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["histogram"] == {"0": "1/1", "1": "0/1"}
    assert doc["i_rough"] == -6


def test_invariant_on_shipped_cp2(capsys):
    code, out, _ = run(capsys, "invariant", "--tri", "data/cp2_9.tri", "--field", "2,2",
                       "--cocycle", "p2k3c1", "--format", "json")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["histogram"] == {"0": "1/4", "1": "3/4", "2": "0/1", "3": "0/1"}


def test_json_is_deterministic_and_agrees_with_text(capsys):
    args = ["invariant", "--manifold", "rp2xs2", "--field", "2,3"]
    _, j1, _ = run(capsys, *args, "--format", "json")
    _, j2, _ = run(capsys, *args, "--format", "json")
    assert j1 == j2
    _, text, _ = run(capsys, *args)
    doc = json.loads(j1)
    for v, f in doc["histogram"].items():
        if f != "0/1":
            assert f"  {v:<5}  {f}" in text
    for name, g in doc["grouped"].items():
        assert g["total"] in text
    assert f"I_rough    {doc['i_rough']}" in text


def test_sampled_mode_deterministic(capsys):
    args = ["invariant", "--manifold", "cp2", "--field", "2,2", "--sample", "500", "--seed", "4",
            "--format", "json"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and "sampled(n=500, seed=4)" in a


def test_multiple_cocycles_give_a_list(capsys):
    code, out, _ = run(capsys, "invariant", "--manifold", "cp2", "--cocycle", "p2k3c1",
                       "--cocycle", "p2k3c1+p2k3c2", "--format", "json")
    assert code == EXIT_OK
    docs = json.loads(out)
    assert [d["cocycle"] for d in docs] == ["p2k3c1", "p2k3c1+p2k3c2"]


@pytest.mark.parametrize("argv", [
    ["invariant", "--gen", "boundary-simplex", "--cocycle", "nope"],
    ["invariant", "--gen", "boundary-simplex", "--field", "4,1"],
    ["invariant", "--gen", "boundary-simplex", "--field", "3,1"],
    ["invariant", "--gen", "torus"],
    ["invariant", "--tri", "missing.tri"],
    ["invariant", "--manifold", "twisted_t4_1"],
    ["invariant", "--manifold", "rp2xs2", "--field", "3,1", "--cocycle", "p3k2c1"],
    ["invariant"],
    ["rough", "--gen", "circle3"],
    ["cohomology", "--p", "4"],
    ["generate", "product", "circle3"],
    ["generate", "circle3"],
])
def test_input_errors_exit_one(capsys, argv):
    assert main(argv) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_usage_errors_exit_one_not_two(capsys):
    with pytest.raises(SystemExit) as e:
        main(["invariant", "--bogus"])
    assert e.value.code == EXIT_INPUT


def test_budget_exceeded_exits_two(capsys):
    code, _, err = run(capsys, "invariant", "--manifold", "t4", "--field", "2,4",
                       "--budget", "10")
    assert code == EXIT_BUDGET and "budget" in err


def test_rough(capsys):
    code, out, _ = run(capsys, "rough", "--manifold", "cp2", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["i_rough"] == -8


def test_cohomology_lines(capsys):
    code, out, _ = run(capsys, "cohomology", "--p", "2", "--kappa", "6")
    assert code == EXIT_OK and out.strip() == "H4 p=2 kappa=6 dim=4"
    _, out, _ = run(capsys, "cohomology", "--p", "7", "--kappa", "2", "--emit")
    assert out.startswith("H4 p=7 kappa=2 dim=1  (non-catalogue)")
    assert "basis 1:" in out


def test_generate_torus(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "product", "circle3", "circle3", "circle3", "circle3")
    assert code == EXIT_OK
    t = parse_tri(out)
    assert t.is_closed and t.euler_characteristic == 0
    path = tmp_path / "t4.tri"
    assert main(["generate", "product", "circle3", "circle3", "circle3", "circle3",
                 "-o", str(path)]) == EXIT_OK
    assert path.read_text() == out


def test_pachner_fuzz(capsys, tmp_path):
    out_file = tmp_path / "f.tri"
    code, out, _ = run(capsys, "pachner-fuzz", "--gen", "boundary-simplex", "--moves", "5",
                       "--seed", "2", "-o", str(out_file))
    assert code == EXIT_OK
    assert len(out.splitlines()) == 5 and out.startswith("move k=")
    assert parse_tri(out_file.read_text()).is_closed
    code, out, err = run(capsys, "pachner-fuzz", "--gen", "boundary-simplex", "--moves", "5",
                         "--seed", "2")
    assert out == out_file.read_text() and err.startswith("move k=")


@pytest.mark.parametrize("target", ["hexagon", "cocycles", "appendix"])
def test_verify_targets_pass(capsys, target):
    code, out, _ = run(capsys, "verify", target)
    assert code == EXIT_OK, out
    assert "FAIL" not in out


def test_verify_hexagon_gf4_multiplicities(capsys):
    _, out, _ = run(capsys, "verify", "hexagon", "--field", "2,2")
    assert "a_1..a_5 = (1, 1, 1, 4, 256) PASS" in out


def test_verify_pachner_small(capsys):
    code, out, _ = run(capsys, "verify", "pachner", "--manifolds", "s4", "--seeds", "1",
                       "--moves", "6")
    assert code == EXIT_OK, out


def test_failed_verification_exit_code(monkeypatch, capsys):
    import hextqft.hexagon as hexagon

    class Failing:
        passed = False

        def text(self):
            return "forced failure"
    monkeypatch.setattr(hexagon, "verify_full_hexagon", lambda F: Failing())
    code, out, _ = run(capsys, "verify", "hexagon", "--field", "2,1")
    assert code == EXIT_FAILED and "forced failure" in out
