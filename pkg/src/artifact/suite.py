"""Batch runner over (m, n) grids and the table emitters."""
import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .report import Report, rng_for

SUITES = ("algebra", "bessel", "reps", "products", "transforms", "dims", "gk")
DEFAULT_GRID = ((1, 1), (2, 0), (0, 2), (2, 1))
MAX_DEGREE = 8
MAX_GRID = 8
TABLES = ("vdim", "fischer_dims", "gk", "hermite")
ALGEBRA_CHECKS = ("super_jacobi", "jordan_identity", "grading", "tkk_phi", "kc_unitary_isom", "cayley",
                  "heisenberg_rep_axioms")


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    grid: list = field(default_factory=lambda: list(DEFAULT_GRID))
    suites: list = field(default_factory=lambda: list(SUITES))
    degree_cap: int = 4
    samples: int = 300
    seed: int = 0
    format: str = "json"

    def validate(self):
        grid = []
        for mn in self.grid:
            m, n = (int(v) for v in mn)
            if m < 0 or n < 0 or (m, n) == (0, 0):
                raise ConfigError(f"invalid grid point ({m},{n})")
            if (m, n) == (0, 1):
                raise ConfigError("(m, n) = (0, 1) is excluded")
            if (m, n) not in grid:
                grid.append((m, n))
        if not grid:
            raise ConfigError("empty grid")
        if len(grid) > MAX_GRID:
            raise ConfigError(f"at most {MAX_GRID} grid entries")
        suites = []
        for s in self.suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}")
            if s not in suites:
                suites.append(s)
        if not 0 <= self.degree_cap <= MAX_DEGREE:
            raise ConfigError(f"degree cap must lie in 0..{MAX_DEGREE}")
        if self.samples < 1:
            raise ConfigError("samples must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.format not in ("json", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        self.grid = grid
        self.suites = [s for s in SUITES if s in suites]
        return self


# -- suites -------------------------------------------------------------------------------

def _algebra(m, n, cfg, rep):
    from .algebra import verify_structure
    for which in ALGEBRA_CHECKS:
        verify_structure(which, m, n, seed=cfg.seed, samples=cfg.samples, report=rep)


def _bessel(m, n, cfg, rep):
    from .bessel import verify_bessel
    verify_bessel(m, n, rep, degree_cap=min(cfg.degree_cap, 4), samples=cfg.samples, seed=cfg.seed)


def _reps(m, n, cfg, rep):
    from .reps import verify_reps
    verify_reps(m, n, rep, seed=cfg.seed, samples=cfg.samples, degree_cap=cfg.degree_cap)


def _products(m, n, cfg, rep):
    from .gaussian import omega, gamma, omega_closed, gamma_closed
    from .products import verify_products
    w, g = omega(m, n), gamma(m, n)
    rep.record("products", f"omega[{m},{n}]", "omega = 2^n (pi/2)^{M/2}", w == omega_closed(m, n),
               {"engine": str(w), "closed": str(omega_closed(m, n))}, detail={"omega": str(w)})
    rep.record("products", f"gamma[{m},{n}]", "gamma = pi^M", g == gamma_closed(m, n),
               {"engine": str(g), "closed": str(gamma_closed(m, n))}, detail={"gamma": str(g)})
    verify_products(m, n, rep, degree_cap=cfg.degree_cap, samples=min(cfg.samples, 60), seed=cfg.seed)


def _transforms(m, n, cfg, rep):
    from .transforms import verify_transforms
    verify_transforms(m, n, rep, degree_cap=cfg.degree_cap, samples=min(cfg.samples, 60), seed=cfg.seed)


def _dims(m, n, cfg, rep):
    from .reps import fischer_decompose, in_minus_2N
    tag = f"[{m},{n}]"
    M = m - 2 * n
    for k in range(cfg.degree_cap + 1):
        res = fischer_decompose(k, m, n)
        total = sum(s["dim"] for s in res["summands"])
        anchor = ("generalised Fischer decomposition" if in_minus_2N(M) else "Fischer decomposition")
        rep.record("dims", f"fischer{tag}[k={k}]", anchor, res["direct"],
                   {"dim_P": res["dim_P"], "sum": total, "rank": res["rank"]},
                   detail={"dim_P": res["dim_P"], "summands": res["summands"]})
    for k, dj, dk in fold_rank_table(m, n, min(cfg.degree_cap, 3)):
        rep.record("dims", f"fold_rank{tag}[k={k}]", "F_{-1/2} = F~_e", dj == dk,
                   {"rank psi on P_k(J)": dj, "dim P_2k": dk}, detail={"rank": dj, "dim_P_2k": dk})


def fold_rank_table(m, n, k_max):
    """rank of psi on P_k(J) against dim P_{2k}(K^{m|2n})."""
    from .bessel import MatrixVarSpace, fold
    from .linalg import SparseBasis
    from .superspace import SuperPoly, SuperSpace
    from .scalar import ONE
    ms = MatrixVarSpace(m, n)
    target = SuperSpace(m, n, banks=("x",))
    out = []
    for k in range(k_max + 1):
        sb = SparseBasis()
        for mono in ms.monomials(k):
            sb.add(fold(SuperPoly(ms.ring, {mono: ONE}), ms, target=target)[0].terms)
        out.append((k, len(sb), len(target.monomials(2 * k))))
    return out


def _gk(m, n, cfg, rep):
    from .reps import gk_growth, gk_default_kmax
    g = gk_growth(m, n, max(gk_default_kmax(m, n), cfg.degree_cap))
    tag = f"[{m},{n}]"
    rep.record("gk", f"gk_counting{tag}", "dimension counting formula", g["agree"],
               {"formula": g["dims_formula"], "enumerated": g["dims_enumerated"]},
               detail={"dims": g["dims_formula"]})
    rep.record("gk", f"gk_exponent{tag}", "Gelfand-Kirillov dimension", g["exponent"] == m,
               {"exponent": g["exponent"], "expected": m, "partial_sums": g["partial_sums"]},
               detail={"exponent": g["exponent"], "partial_sums": g["partial_sums"]})


RUNNERS = {"algebra": _algebra, "bessel": _bessel, "reps": _reps, "products": _products,
           "transforms": _transforms, "dims": _dims, "gk": _gk}


def run_suite(config):
    cfg = config.validate()
    rep = Report(meta={"version": __version__, "seed": cfg.seed, "grid": [list(mn) for mn in cfg.grid],
                       "suites": list(cfg.suites), "degree_cap": cfg.degree_cap, "samples": cfg.samples})
    for m, n in cfg.grid:
        for s in cfg.suites:
            RUNNERS[s](m, n, cfg, rep)
    return rep


def exit_code(report):
    return 0 if report.ok else 1


def to_json(report):
    return json.dumps(report.to_dict(), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def to_text(report):
    lines = []
    for c in report.checks:
        lines.append(f"{c.status.upper():7} {c.suite:10} {c.check_id}")
        if c.witness is not None:
            lines.append("        witness: " + json.dumps(c.witness, sort_keys=True, ensure_ascii=False))
    s = report.summary()
    lines.append(f"pass {s['pass']}  fail {s['fail']}  skipped {s['skipped']}")
    return "\n".join(lines) + "\n"


def render(report, fmt="json"):
    return to_json(report) if fmt == "json" else to_text(report)


# -- tables -------------------------------------------------------------------------------

VDIM_POINTS = {4: (4, 0), 3: (3, 0), 2: (2, 0), 1: (1, 0), 0: (2, 1), -1: (1, 1), -2: (2, 2), -3: (1, 2),
               -4: (0, 2)}


def emit_table(kind, params=None):
    """Rows of a table as (header, rows) with exact entries rendered as strings."""
    params = dict(params or {})
    if kind == "vdim":
        from .bessel import MatrixVarSpace, v_lambda_direct, vdim_formula, sdim_formula
        points = params.get("grid") or [VDIM_POINTS[M] for M in sorted(VDIM_POINTS)]
        header = ["M", "m", "n", "lambda", "dim_even", "dim_odd", "sdim", "sdim_formula", "match"]
        rows = []
        for m, n in points:
            ms = MatrixVarSpace(m, n)
            for lam in (Fraction(1), Fraction(-1, 2)):
                V = v_lambda_direct(ms, lam)
                ev, od = vdim_formula(m, n, lam)
                sd = sdim_formula(m - 2 * n, lam)
                ok = (V.dim_even, V.dim_odd) == (ev, od) and V.sdim == sd
                rows.append([m - 2 * n, m, n, str(lam), V.dim_even, V.dim_odd, V.sdim, str(sd), ok])
        return header, rows
    if kind == "fischer_dims":
        from .reps import fischer_decompose
        grid = params.get("grid") or list(DEFAULT_GRID)
        k_max = params.get("k_max", 4)
        header = ["m", "n", "k", "dim_P", "summands", "direct"]
        rows = []
        for m, n in grid:
            for k in range(k_max + 1):
                r = fischer_decompose(k, m, n)
                parts = " + ".join(f"{s['kind']}_{s['l']}[{s['dim']}]" for s in r["summands"])
                rows.append([m, n, k, r["dim_P"], parts, r["direct"]])
        return header, rows
    if kind == "gk":
        from .reps import gk_growth
        grid = params.get("grid") or [(2, 1)]
        k_max = params.get("k_max", 8)
        header = ["m", "n", "dims P_2j", "partial sums", "exponent", "agree"]
        rows = []
        for m, n in grid:
            g = gk_growth(m, n, max(k_max, 2 * n + 2))
            rows.append([m, n, " ".join(map(str, g["dims_formula"])), " ".join(map(str, g["partial_sums"])),
                         g["exponent"], g["agree"]])
        return header, rows
    if kind == "hermite":
        from .transforms import hermite_table
        grid = params.get("grid") or [(1, 0)]
        k_max = params.get("k_max", 4)
        variant = params.get("variant", "H")
        header = ["m", "n", "alpha", variant]
        rows = []
        for m, n in grid:
            for a, txt in hermite_table(m, n, k_max, variant):
                rows.append([m, n, ",".join(map(str, a)), txt])
        return header, rows
    raise ConfigError(f"unknown table {kind!r}")


def format_table(header, rows, fmt="text"):
    if fmt == "json":
        return json.dumps({"header": header, "rows": rows}, sort_keys=True, ensure_ascii=False) + "\n"
    cells = [[str(h) for h in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    out = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    return "\n".join(out) + "\n"
