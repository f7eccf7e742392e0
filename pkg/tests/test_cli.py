"""Wire-format round trips and the command-line surface."""

import io

import sys

import numpy as np
import pytest

from vnalg import equal, make_algebra, maps_equal
from vnalg.cli import main
from vnalg.jsonio import (algebra_from_json, algebra_to_json, dumps,
                          element_from_json, element_to_json, loads,
                          map_from_json, map_to_json)
from vnalg.maps import conjugation_map, random_cp_map
from vnalg.sampling import random_element, random_projection

M2 = make_algebra([2])


def run_cli(argv, stdin_text=""):
    old_in, old_out = sys.stdin, sys.stdout
    sys.stdin = io.StringIO(stdin_text)
    sys.stdout = io.StringIO()
    try:
        code = main(argv)
        out = sys.stdout.getvalue()
    finally:
        sys.stdin, sys.stdout = old_in, old_out
    return code, out


def test_round_trips_on_random_fixtures():
    # parse(print(x)) = x for algebras, elements, and maps.
    rng = np.random.default_rng(0)
    alg = make_algebra([2, 3])
    for _ in range(100):
        a = random_element(alg, rng)
        assert equal(element_from_json(loads(dumps(element_to_json(a)))), a)
        p = random_projection(alg, rng)
        assert equal(element_from_json(loads(dumps(element_to_json(p)))), p)
    for _ in range(10):
        f = random_cp_map(M2, alg, rng)
        assert maps_equal(map_from_json(loads(dumps(map_to_json(f)))), f)


def test_algebra_round_trip():
    alg = make_algebra([4, 1, 2])
    assert algebra_from_json(loads(dumps(algebra_to_json(alg)))) == alg


@pytest.mark.parametrize("seed", range(3))
def test_map_round_trip(seed):
    rng = np.random.default_rng(seed)
    f = random_cp_map(M2, make_algebra([2, 1]), rng)
    assert maps_equal(map_from_json(loads(dumps(map_to_json(f)))), f)


def test_serialization_is_lossless_for_awkward_floats():
    alg = make_algebra([1])
    a = alg.element([[[0.1 + 1.0 / 3.0 * 1j]]])
    back = element_from_json(loads(dumps(element_to_json(a))))
    assert back.blocks[0][0, 0] == a.blocks[0][0, 0]


def test_spectrum_command():
    payload = dumps(element_to_json(M2.element([np.array([[0, 2], [0, 0]])])))
    code, out = run_cli(["spectrum"], payload)
    assert code == 0
    data = loads(out)
    assert data["values"] == [[0.0, 0.0], [0.0, 0.0]]


def test_seqprod_command_unit():
    one = element_to_json(M2.unit())
    code, out = run_cli(["seqprod"], dumps({"p": one, "q": one}))
    assert code == 0
    assert equal(element_from_json(loads(out)), M2.unit())


def test_determinism_byte_identical():
    argv = ["gen", "--kind", "effect", "--algebra", "2,3", "--seed", "42",
            "--count", "3"]
    _, out1 = run_cli(argv)
    _, out2 = run_cli(argv)
    assert out1 == out2
    argv2 = ["check-axioms", "--op", "std", "--algebra", "2", "--trials", "5",
             "--seed", "9"]
    _, rep1 = run_cli(argv2)
    _, rep2 = run_cli(argv2)
    assert rep1 == rep2


def test_parse_error_exit_code():
    code, out = run_cli(["spectrum"], "this is not json")
    assert code == 1
    assert loads(out)["error"] == "ParseError"


def test_precondition_exit_code():
    bad = dumps(element_to_json(M2.element([np.diag([1.0, -1.0])])))
    code, out = run_cli(["sqrt"], bad)
    assert code == 2
    assert loads(out)["error"] == "NotPositive"


def test_division_undefined_exit_code():
    a = element_to_json(M2.element([np.diag([1.0, 0.0])]))
    b = element_to_json(M2.element([np.diag([0.0, 1.0])]))
    code, out = run_cli(["divide"], dumps({"a": a, "b": b}))
    assert code == 2
    assert loads(out)["error"] == "DivisionUndefined"


def test_check_axioms_reports_failure_with_witness():
    code, out = run_cli(["check-axioms", "--op", "ceil", "--algebra", "2",
                         "--trials", "10", "--seed", "7"])
    assert code == 3  # a property failed, with witness attached
    data = loads(out)
    assert data["A"]["status"] == "fail"
    w = element_from_json(data["A"]["witness"]["p"])
    assert np.allclose(w.blocks[0], np.diag([0.5, 0.0]))
    assert all(data[ax]["status"] == "pass" for ax in "BCDE")


def test_named_function_flag():
    a = element_to_json(M2.element([np.diag([4.0, 16.0])]))
    code, out = run_cli(["sqrt", "--f", "pow:0.25"], dumps(a))
    assert code == 0
    got = element_from_json(loads(out))
    assert np.allclose(got.blocks[0], np.diag([np.sqrt(2.0), 2.0]))


def test_ceil_floor_support_commands():
    a = dumps(element_to_json(M2.element([np.diag([0.5, 0.0])])))
    for cmd, want in [("ceil", np.diag([1.0, 0.0])),
                      ("floor", np.diag([0.0, 0.0])),
                      ("support", np.diag([1.0, 0.0])),
                      ("csupport", np.eye(2))]:
        code, out = run_cli([cmd], a)
        assert code == 0
        assert np.allclose(element_from_json(loads(out)).blocks[0], want), cmd


def test_join_meet_commands():
    p = element_to_json(M2.element([np.diag([1.0, 0.0])]))
    q = element_to_json(M2.element([0.5 * np.ones((2, 2))]))
    code, out = run_cli(["join"], dumps({"elements": [p, q]}))
    assert code == 0
    assert np.allclose(element_from_json(loads(out)).blocks[0], np.eye(2))
    code, out = run_cli(["meet"], dumps({"elements": [p, q]}))
    assert np.allclose(element_from_json(loads(out)).blocks[0], 0.0)


def test_polar_pinv_divide_seqquot_commands():
    nil = element_to_json(M2.element([np.array([[0.0, 2.0], [0.0, 0.0]])]))
    code, out = run_cli(["polar"], dumps(nil))
    parts = loads(out)
    assert np.allclose(element_from_json(parts["isometry"]).blocks[0],
                       [[0.0, 1.0], [0.0, 0.0]])
    code, out = run_cli(["pinv"], dumps(nil))
    assert np.allclose(element_from_json(loads(out)).blocks[0],
                       [[0.0, 0.0], [0.5, 0.0]])
    b = element_to_json(M2.element([np.diag([0.0, 2.0])]))
    code, out = run_cli(["divide"], dumps({"a": nil, "b": b}))
    data = loads(out)
    assert np.allclose(element_from_json(data["quotient"]).blocks[0],
                       [[0.0, 1.0], [0.0, 0.0]])
    assert data["lambda"] == pytest.approx(1.0)
    eff = element_to_json(M2.element([np.diag([0.5, 0.5])]))
    one = element_to_json(M2.unit())
    code, out = run_cli(["seqquot"], dumps({"a": eff, "b": one}))
    assert np.allclose(element_from_json(loads(out)).blocks[0], 0.5 * np.eye(2))


def test_checkmap_and_choi_commands():
    rng = np.random.default_rng(0)
    f = conjugation_map(random_element(M2, rng))
    payload = dumps(map_to_json(f))
    code, out = run_cli(["checkmap", "--cp", "--carrier"], payload)
    data = loads(out)
    assert data["cp"] is True
    assert "carrier" in data
    code, out = run_cli(["choi"], payload)
    data = loads(out)
    assert data["min_eigenvalue"] >= -1e-9
    assert data["blocks"][0]["domain_block_index"] == 0


def test_corner_filter_bracket_purity_commands():
    p = dumps(element_to_json(M2.element([np.diag([1.0, 0.0])])))
    code, out = run_cli(["corner"], p)
    assert code == 0
    data = loads(out)
    g = map_from_json(data["map"])
    assert g.cod.dims == (1,)
    code, out = run_cli(["filter"], p)
    assert map_from_json(loads(out)["map"]).dom.dims == (1,)
    f = dumps(map_to_json(conjugation_map(M2.element([np.diag([1.0, 0.5])]))))
    code, out = run_cli(["purity"], f)
    assert loads(out)["pure"] is True
    code, out = run_cli(["bracket"], f)
    assert code == 0


def test_tensor_and_bang_commands():
    code, out = run_cli(["tensor", "--algebras", "2:2,3"])
    assert loads(out)["product"]["dims"] == [4, 6]
    left = element_to_json(M2.unit())
    right = element_to_json(make_algebra([1, 1]).unit())
    code, out = run_cli(["tensor-el"], dumps({"left": left, "right": right}))
    assert loads(out)["algebra"]["dims"] == [2, 2]
    code, out = run_cli(["bang", "--algebra", "2,1"])
    data = loads(out)
    assert data["points"] == [1]
    assert data["bang"]["dims"] == [1]
    code, out = run_cli(["dup-check", "--algebra", "1,1"])
    assert loads(out)["duplicable"] is True
    code, out = run_cli(["dup-check", "--algebra", "2", "--samples", "500"])
    data = loads(out)
    assert data["duplicable"] is False
    assert data["witness"] is not None


def test_wedderburn_and_gns_commands():
    rng = np.random.default_rng(1)
    basis = [element_to_json(e) for e in M2.basis()]
    payload = dumps({"ambient": algebra_to_json(M2), "basis": basis})
    code, out = run_cli(["wedderburn", "--seed", "3"], payload)
    assert code == 0
    assert loads(out)["dims"] == [2]
    diag = [element_to_json(M2.element([np.diag([1.0, 0.0])])),
            element_to_json(M2.element([np.diag([0.0, 1.0])]))]
    payload = dumps({"ambient": algebra_to_json(M2), "basis": diag})
    code, out = run_cli(["gelfand"], payload)
    assert loads(out)["points"] == 2
    from vnalg import functional_from_density
    omega = functional_from_density((1 / 2) * M2.unit())
    code, out = run_cli(["gns"], dumps(map_to_json(omega)))
    assert loads(out)["hilbert_dim"] == 4


def test_gen_kinds():
    for kind in ["effect", "projection", "element", "state", "cpmap"]:
        code, out = run_cli(["gen", "--kind", kind, "--algebra", "2",
                             "--seed", "1", "--count", "2"])
        assert code == 0
        assert len(loads(out)) == 2


def test_in_out_file_flags(tmp_path):
    src = tmp_path / "a.json"
    dst = tmp_path / "out.json"
    src.write_text(dumps(element_to_json(M2.element([np.diag([4.0, 9.0])]))))
    code, _ = run_cli(["sqrt", "--in", str(src), "--out", str(dst)])
    assert code == 0
    got = element_from_json(loads(dst.read_text()))
    assert np.allclose(got.blocks[0], np.diag([2.0, 3.0]))


def test_verify_suite_smoke_runs():
    code, out = run_cli(["verify-suite", "--level", "smoke"])
    assert code == 0
    assert "10/10 checks passed" in out
