import json

import pytest

from frobalg.checks import REGISTRY, fixture_path, select
from frobalg.cli import main
from frobalg.expr import ExpressionError, parse_terms


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_verify_bigon_reports_remark(capsys):
    code, report = run(capsys, "verify", "bigon", "--n", "3")
    assert code == 0 and report["passed"]
    names = [c["name"] for c in report["checks"]]
    assert names == sorted(names)
    remark = next(c for c in report["checks"] if c["name"] == "bigon_remark")
    assert remark["status"] == "pass"
    assert remark["witness"]["got"] == "(-1 + -1*z)*b^3*c^3"


def test_verify_torus_with_form(capsys):
    code, report = run(
        capsys, "verify", "torus", "--form", str(fixture_path("rank2.json")), "--only", "torus_fixture_oracle"
    )
    assert code == 0
    (rec,) = report["checks"]
    assert rec["witness"]["monomials"] == 100 and rec["witness"]["mismatches"] == []


def test_same_seed_same_report(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        main(["verify", "bigon", "--seed", "7", "--no-timings", "--report", str(p)])
    capsys.readouterr()
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_surface_info(capsys):
    code, info = run(capsys, "surface", "info", "--fixture", str(fixture_path("square.json")), "--n", "3")
    assert code == 0
    assert (info["r"], info["tauBar"], info["lambda"]) == (3, 9, 1)
    assert info["dims"] == {"overFrobenius": 3**9, "overCenter": 3**8}


def test_trace_bigon_and_torus(capsys):
    code, out = run(capsys, "trace", "--element", "a d b^2 c^2", "--over", "frobenius")
    assert code == 0 and out["text"] == "(-1 + -1*z)*b^3*c^3"
    code, out = run(capsys, "trace", "--element", "b c^2 + d b", "--over", "center")
    assert out["trace"] == [{"alpha": {}, "k": [0, 1, 2], "coef": ["1", "0"]}]
    code, out = run(
        capsys,
        "trace", "--element", "x[0]^3 x[1] + 2 x[1]^3", "--over", "frobenius",
        "--form", str(fixture_path("rank2.json")),
    )
    assert code == 0 and out["trace"] == [{"alpha": {}, "k": [0, 3], "coef": ["2", "0"]}]


def test_trace_with_alpha(capsys):
    code, out = run(
        capsys,
        "trace", "--element", "alpha[0]^3 x[0]^3", "--over", "frobenius",
        "--form", str(fixture_path("rank2.json")),
    )
    assert code == 0
    # alpha^3 = T_3(alpha) + 3 T_1(alpha); only T_3 survives
    assert {tuple(t["k"]) for t in out["trace"]} == {(3, 0)}


def test_specialize_cli(tmp_path, capsys):
    dump = tmp_path / "alg.json"
    code, out = run(capsys, "specialize", "--rho", str(fixture_path("rho_generic.json")), "--dump", str(dump))
    assert code == 0 and out["dim"] == 27 and out["verdict"] == "nondegenerate"
    assert len(json.loads(dump.read_text())["labels"]) == 27
    code, out = run(capsys, "specialize", "--rho", str(fixture_path("rho_identity.json")))
    assert out["verdict"] == "degenerate"


def test_w_point_needs_exploratory(capsys):
    code, _ = run(capsys, "specialize", "--rho", str(fixture_path("rho_w.json")))
    assert code == 2
    code, out = run(capsys, "specialize", "--rho", str(fixture_path("rho_w.json")), "--exploratory")
    assert code == 0 and out["exploratory"] and out["dim"] == 27


def test_fixture_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "P": [[0, 1], [1, 0]]}))
    assert main(["verify", "torus", "--form", str(bad), "--only", "torus_fixture_oracle"]) == 2
    rho = tmp_path / "rho.json"
    rho.write_text(json.dumps({"m": [["1", "1"], ["1", "1"]]}))
    assert main(["specialize", "--rho", str(rho)]) == 2
    assert main(["trace", "--element", "a + + b", "--over", "center"]) == 2
    assert main(["trace", "--element", "x[0]", "--over", "center"]) == 2


def test_noncentral_square_form_is_fixture_error(tmp_path, capsys):
    data = json.loads(fixture_path("square.json").read_text())
    data["form"]["P"][0][1] += 1
    data["form"]["P"][1][0] -= 1
    path = tmp_path / "square.json"
    path.write_text(json.dumps(data))
    assert main(["verify", "surface", "--square", str(path), "--only", "c06_surface_center_trace"]) == 2


def test_bad_n_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bigon", "--n", "4"])
    assert exc.value.code == 2


def test_failing_check_exits_1(capsys):
    assert main(["verify", "specialize", "--only", "c07_specialization"]) == 1


def test_exploratory_checks_never_fail(capsys):
    code, report = run(capsys, "verify", "specialize", "--exploratory", "--only", "x_w_point_gram")
    assert code == 0
    assert report["checks"][0]["status"] == "info"


def test_every_criterion_registered_once():
    names = [n for n in REGISTRY if n[0] == "c" and n[1:3].isdigit()]
    assert sorted(names) == sorted(set(names))
    assert [n[:3] for n in sorted(names)] == [f"c{i:02d}" for i in range(1, 11)]
    assert {c.name for c in select("all", False)} >= set(names)


def test_unknown_check(capsys):
    assert main(["verify", "all", "--only", "nope"]) == 2


def test_expression_parser_errors():
    with pytest.raises(ExpressionError):
        parse_terms("a ^")
    with pytest.raises(ExpressionError):
        parse_terms("2 a 3")
    assert parse_terms("-a") == [(-1, [("gen", "a", 1)])]
