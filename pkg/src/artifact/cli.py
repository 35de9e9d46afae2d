"""Command line entry point: batch verification, single checks and tables."""
import json
import sys
from fractions import Fraction

import click

from .suite import (SUITES, TABLES, ConfigError, SuiteConfig, emit_table, exit_code, format_table,
                    render, run_suite, MAX_DEGREE)
from .report import Report

REPS = ("pi_lambda", "rho_lambda", "pi_tilde", "rho_tilde", "pi_hat", "mu_star", "U_star")
PRODUCTS = ("fischer", "fock", "sf", "bessel_fischer")


def _grid(ms, ns, default=None):
    if not ms and not ns:
        return list(default) if default is not None else None
    if len(ms) != len(ns):
        raise ConfigError("--m and --n must be given the same number of times")
    return list(zip(ms, ns))


def _single(ms, ns, default):
    grid = _grid(ms, ns, [default])
    if len(grid) != 1:
        raise ConfigError("this command takes a single (m, n)")
    m, n = grid[0]
    SuiteConfig(grid=[(m, n)], suites=[]).validate()
    return m, n


def _fail_config(exc):
    click.echo(f"config error: {exc}", err=True)
    sys.exit(2)


@click.group()
def main():
    """Exact verification of the spo(2m|2n,2n) representations."""


def _run(m, n, suite, degree_cap, samples, seed, fmt):
    try:
        grid = _grid(m, n)
        cfg = SuiteConfig(suites=list(suite) or list(SUITES), degree_cap=degree_cap, samples=samples,
                          seed=seed, format=fmt)
        if grid is not None:
            cfg.grid = grid
        report = run_suite(cfg)
    except ConfigError as exc:
        _fail_config(exc)
    click.echo(render(report, fmt), nl=False)
    sys.exit(exit_code(report))


_run_options = [
    click.option("--m", "m", type=int, multiple=True, help="m of a grid point (repeatable, paired with --n)."),
    click.option("--n", "n", type=int, multiple=True, help="n of a grid point (repeatable)."),
    click.option("--suite", type=click.Choice(SUITES), multiple=True, help="Suite to run (repeatable)."),
    click.option("--degree-cap", type=int, default=4, show_default=True),
    click.option("--samples", type=int, default=300, show_default=True),
    click.option("--seed", type=int, default=0, show_default=True),
    click.option("--format", "fmt", type=click.Choice(("json", "text")), default="json", show_default=True),
]


def _with_options(fn):
    for opt in reversed(_run_options):
        fn = opt(fn)
    return fn


@main.command("run-suite")
@_with_options
def run_suite_cmd(m, n, suite, degree_cap, samples, seed, fmt):
    """Run the verification suites over a grid of (m, n)."""
    _run(m, n, suite, degree_cap, samples, seed, fmt)


main.add_command(run_suite_cmd, "run_suite")


@main.command()
@click.option("--rep", "rep_tag", type=click.Choice(REPS), required=True)
@click.option("--m", "m", type=int, multiple=True)
@click.option("--n", "n", type=int, multiple=True)
@click.option("--lam", default="-1/2", show_default=True, help="lambda for pi_lambda and rho_lambda.")
@click.option("--samples", type=int, default=300, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(("json", "text")), default="json", show_default=True)
def verify(rep_tag, m, n, lam, samples, seed, fmt):
    """Check that one realisation is a Lie superalgebra homomorphism."""
    from .reps import make_rep, verify_homomorphism
    try:
        grid = _grid(m, n, [(1, 1), (2, 0), (0, 2), (2, 1)])
        SuiteConfig(grid=grid, suites=[], samples=samples, seed=seed).validate()
        lam_ = Fraction(lam)
    except (ConfigError, ValueError, ZeroDivisionError) as exc:
        _fail_config(exc)
    report = Report(meta={"rep": rep_tag, "grid": [list(g) for g in grid], "seed": seed, "samples": samples})
    for mm, nn in grid:
        r = make_rep(rep_tag, mm, nn, lam=lam_) if rep_tag in ("pi_lambda", "rho_lambda") else make_rep(rep_tag, mm, nn)
        verify_homomorphism(r, rep_tag, mm, nn, seed=seed, samples=samples, report=report)
    click.echo(render(report, fmt), nl=False)
    sys.exit(exit_code(report))


@main.command()
@click.option("--product", type=click.Choice(PRODUCTS), default="fock", show_default=True)
@click.option("--k", "k", type=int, default=2, show_default=True, help="Degree of the monomial basis.")
@click.option("--m", "m", type=int, multiple=True)
@click.option("--n", "n", type=int, multiple=True)
@click.option("--lam", default="-1/2", show_default=True)
@click.option("--format", "fmt", type=click.Choice(("json", "text")), default="text", show_default=True)
def gram(product, k, m, n, lam, fmt):
    """Exact Gram matrix of a product on degree-k polynomials."""
    from .products import gram_matrix
    try:
        mm, nn = _single(m, n, (1, 1))
        if not 0 <= k <= MAX_DEGREE:
            raise ConfigError(f"k must lie in 0..{MAX_DEGREE}")
        basis, G = gram_matrix(mm, nn, k, product, Fraction(lam))
    except (ConfigError, ValueError) as exc:
        _fail_config(exc)
    labels = [b.render() for b in basis]
    rows = [[str(x) for x in row] for row in G]
    if fmt == "json":
        click.echo(json.dumps({"product": product, "m": mm, "n": nn, "k": k, "basis": labels, "matrix": rows},
                              sort_keys=True, ensure_ascii=False))
    else:
        click.echo(format_table([""] + labels, [[lab] + row for lab, row in zip(labels, rows)]), nl=False)


@main.command()
@click.option("--alpha", required=True, help="Comma separated multi-index, even slots first.")
@click.option("--variant", type=click.Choice(("h", "H", "h_tilde", "H_tilde")), default="H", show_default=True)
@click.option("--m", "m", type=int, multiple=True)
@click.option("--n", "n", type=int, multiple=True)
def hermite(alpha, variant, m, n):
    """Hermite superfunction or superpolynomial for one multi-index.

    Without --m/--n the space is (len(alpha), 0)."""
    from .superspace import SuperSpace
    from .transforms import hermite as hermite_fn
    try:
        a = tuple(int(v) for v in alpha.split(","))
        mm, nn = _single(m, n, (len(a), 0))
        out = hermite_fn(SuperSpace(mm, nn), a, variant)
    except (ConfigError, ValueError) as exc:
        _fail_config(exc)
    click.echo(out.render())


@main.command()
@click.option("--input", "text", required=True, help="Polynomial p in x1, x2, ...; SB is applied to p*exp(-R^2).")
@click.option("--method", type=click.Choice(("moments", "hermite_basis")), default="moments", show_default=True)
@click.option("--m", "m", type=int, multiple=True)
@click.option("--n", "n", type=int, multiple=True)
def sb(text, method, m, n):
    """Segal-Bargmann transform of p(x) exp(-R^2)."""
    from .gaussian import GaussianFunction
    from .superspace import parse_poly
    from .transforms import SegalBargmann
    try:
        mm, nn = _single(m, n, (1, 1))
        T = SegalBargmann(mm, nn)
        p = parse_poly(text, T.xspace.ring)
    except (ConfigError, ValueError) as exc:
        _fail_config(exc)
    click.echo(T(GaussianFunction(T.xspace, p, 1), method).render())


@main.command()
@click.argument("kind", type=click.Choice(TABLES))
@click.option("--m", "m", type=int, multiple=True)
@click.option("--n", "n", type=int, multiple=True)
@click.option("--k-max", type=int, default=None, help="Degree bound (default 4, or 8 for gk).")
@click.option("--variant", type=click.Choice(("h", "H", "h_tilde", "H_tilde")), default="H", show_default=True)
@click.option("--format", "fmt", type=click.Choice(("json", "text")), default="text", show_default=True)
def table(kind, m, n, k_max, variant, fmt):
    """Emit one of the dimension or Hermite tables."""
    params = {"variant": variant}
    try:
        grid = _grid(m, n)
        if grid is not None:
            SuiteConfig(grid=grid, suites=[]).validate()
            params["grid"] = grid
        if k_max is not None:
            if not 0 <= k_max <= MAX_DEGREE:
                raise ConfigError(f"--k-max must lie in 0..{MAX_DEGREE}")
            params["k_max"] = k_max
        header, rows = emit_table(kind, params)
    except (ConfigError, ValueError) as exc:
        _fail_config(exc)
    click.echo(format_table(header, rows, fmt), nl=False)


if __name__ == "__main__":
    main()
