import json

import pytest
from click.testing import CliRunner

from artifact.cli import main

from oracles import count_monomials

R = CliRunner()


def run(*args):
    return R.invoke(main, list(args))


def test_hermite_command():
    r = run("hermite", "--alpha", "2,0,1", "--variant", "H_tilde")
    assert r.exit_code == 0 and r.output.strip() == "-2*x3 + 8*x1^2*x3"


def test_sb_command_methods_agree():
    a = run("sb", "--input", "2*x1+x2*x3")
    b = run("sb", "--input", "2*x1+x2*x3", "--method", "hermite_basis")
    assert a.exit_code == 0 and a.output == b.output
    assert a.output.strip() == "-1/4 + z1 + 1/4*z2*z3"


def test_sb_bad_input():
    assert run("sb", "--input", "x1 +* 2").exit_code == 2


def test_gram_fock_k4():
    r = run("gram", "--product", "fock", "--k", "4", "--format", "json")
    assert r.exit_code == 0
    d = json.loads(r.output)
    G, basis = d["matrix"], d["basis"]
    assert len(G) == len(basis)
    assert all(G[i][j] == G[j][i] or G[i][j] == "-" + G[j][i] or G[j][i] == "-" + G[i][j]
               for i in range(len(G)) for j in range(len(G)))


@pytest.mark.parametrize("product", ["fischer", "sf", "bessel_fischer"])
def test_gram_products(product):
    assert run("gram", "--product", product, "--k", "1").exit_code == 0


def test_verify_rep():
    r = run("verify", "--rep", "pi_tilde", "--m", "1", "--n", "1", "--samples", "20")
    assert r.exit_code == 0 and json.loads(r.output)["summary"]["fail"] == 0


@pytest.mark.parametrize("args", [["--m", "0", "--n", "1"], ["--m", "1"], ["--degree-cap", "9"],
                                  ["--samples", "0"], ["--m", "0", "--n", "0"]])
def test_config_errors(args):
    r = run("run-suite", *args)
    assert r.exit_code == 2


def test_grid_cap():
    args = []
    for m in range(1, 10):
        args += ["--m", str(m), "--n", "0"]
    assert run("run-suite", *args).exit_code == 2


def test_json_deterministic_and_alias():
    args = ["--m", "1", "--n", "1", "--suite", "gk", "--seed", "3"]
    a, b = run("run-suite", *args), run("run_suite", *args)
    assert a.exit_code == b.exit_code == 0 and a.output == b.output


def test_text_format():
    r = run("run-suite", "--m", "2", "--n", "0", "--suite", "gk", "--format", "text")
    assert r.exit_code == 0 and r.output.splitlines()[-1].startswith("pass 2")


def test_table_hermite():
    r = run("table", "hermite", "--format", "json")
    rows = json.loads(r.output)["rows"]
    assert [x[3] for x in rows[:3]] == ["1", "2*x1", "-2 + 4*x1^2"]


def test_table_gk():
    r = run("table", "gk", "--m", "2", "--n", "1", "--format", "json")
    row = json.loads(r.output)["rows"][0]
    assert row[4] == 2 and row[5] is True


def test_table_vdim_all_match():
    rows = json.loads(run("table", "vdim", "--format", "json").output)["rows"]
    assert len(rows) == 18 and all(r[-1] is True for r in rows)


def test_table_fischer_dims():
    r = run("table", "fischer_dims", "--m", "1", "--n", "1", "--k-max", "2", "--format", "json")
    rows = json.loads(r.output)["rows"]
    assert [x[3] for x in rows] == [count_monomials(1, 1, k) for k in range(3)] == [1, 3, 4]
    assert all(x[5] for x in rows)
