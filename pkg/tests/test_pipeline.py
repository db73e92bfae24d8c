import json
from fractions import Fraction

import pytest

from crosscc import pipeline
from crosscc.cli import EXIT_OK, EXIT_USAGE, main
from crosscc.dimension import monomial_ideal_dimension_bruteforce
from crosscc.groebner import write_ideal_file
from crosscc.mpoly import VarTable, parse_poly
from crosscc.rationals import rat
from crosscc.systems import example_config_6bp


def test_published_monomial_list():
    mons = pipeline.published_k_monomials()
    assert len(mons) == 21
    assert monomial_ideal_bruteforce_dim(mons) == 2


def monomial_ideal_bruteforce_dim(mons):
    return monomial_ideal_dimension_bruteforce(mons, 11)


def test_example_eliminant_structure():
    h, path, detail = pipeline.example_eliminant()
    assert path in ("groebner", "resultant")
    assert detail["roots_removed_at_one"] >= 1
    if path == "groebner":
        assert detail["factor_degree"] == 52
        assert detail["head_matches"]


def test_example_point_covers_distances():
    point = pipeline.example_point()
    box = point.box(rat("1/10000000000"))
    names = {"R12", "R13", "R14", "R15", "R23", "R24", "R25",
             "R34", "R35", "R45", "R56"}
    assert names <= set(box)
    # derived coordinates respect the family relations
    assert (box["R13"] - (2 - box["R12"])).contains(0)
    assert ((box["R15"] ** 2) - (1 + (1 - box["R12"]) ** 2)).contains(0)


def test_witness_oracle_consistency():
    point = pipeline.example_point()
    iv = point.refine(Fraction(1, 10**12))
    cfg = example_config_6bp(iv, pipeline.witness_target() * 0 + 1)
    det = pipeline.witness_determinant_interval(cfg)
    assert det.excludes_zero()


def test_report_status_aggregation():
    from crosscc.certify import CERTIFIED, Certificate, FALSIFIED, INCONCLUSIVE

    rpt = pipeline.ReproReport([Certificate("a", CERTIFIED)])
    assert rpt.status == CERTIFIED
    rpt.certificates.append(Certificate("b", INCONCLUSIVE))
    assert rpt.status == INCONCLUSIVE
    rpt.certificates.append(Certificate("c", FALSIFIED))
    assert rpt.status == FALSIFIED
    assert json.dumps(rpt.as_dict())


def test_repro_claim_unknown():
    with pytest.raises(ValueError):
        pipeline.repro_claim("warp-drive")


# -- command line -----------------------------------------------------------

def test_cli_sturm_and_isolate(capsys):
    assert main(["sturm", "x^3 - 2*x", "0", "2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"
    assert main(["isolate", "x^2 - 2", "1", "2", "--eps", "1/1000000"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("[1.414213")


def test_cli_parse_error(capsys):
    assert main(["sturm", "x +", "0", "1"]) == EXIT_USAGE
    assert main(["sturm", "x", "2", "1"]) == EXIT_USAGE


def test_cli_gb_and_dim(tmp_path, capsys):
    ring = VarTable(["x", "y"])
    path = tmp_path / "circle.ideal"
    write_ideal_file(path, ring, [parse_poly("x^2 + y^2 - 1", ring)])
    assert main(["dim", str(path)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"
    assert main(["gb", str(path), "--json", str(tmp_path / "gb.json")]) == EXIT_OK
    data = json.loads((tmp_path / "gb.json").read_text())
    assert data["basis"]


def test_cli_dim_empty_ideal(tmp_path, capsys):
    ring = VarTable(["x", "y", "z"])
    path = tmp_path / "zero.ideal"
    write_ideal_file(path, ring, [])
    assert main(["dim", str(path)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "3"


def test_cli_eliminate(tmp_path, capsys):
    ring = VarTable(["x", "y"])
    path = tmp_path / "pair.ideal"
    write_ideal_file(path, ring, [parse_poly("x - y", ring),
                                  parse_poly("x + y", ring)])
    assert main(["eliminate", str(path), "--keep", "1"]) == EXIT_OK
    out = capsys.readouterr().out.strip()
    assert "y" in out and "x" not in out


def test_cli_resultant(tmp_path, capsys):
    ring = VarTable(["x", "a"])
    path = tmp_path / "res.ideal"
    write_ideal_file(path, ring, [parse_poly("x^2 - a", ring),
                                  parse_poly("x - 2", ring)])
    assert main(["resultant", str(path), "x"]) == EXIT_OK
    out = capsys.readouterr().out.strip()
    assert parse_poly(out, ring).primitive() in (
        parse_poly("a - 4", ring), parse_poly("4 - a", ring))


def test_cli_repro_json(tmp_path):
    out = tmp_path / "report.json"
    assert main(["repro", "dim-shape", "--json", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["status"] == "certified"
    assert data["detail"]["dimension"] == 4


def test_cli_env_override(monkeypatch, capsys):
    monkeypatch.setenv("CROSSCC_EPS", "1/4")
    assert main(["isolate", "x^2 - 2", "1", "2"]) == EXIT_OK
    out = capsys.readouterr().out.strip()
    lo, hi = out.strip("[]").split(",")
    assert rat(hi) - rat(lo) <= rat("1/4")
