"""Command-line frontend with machine-readable reports.

Subcommands::

    verify     run every explicit-constant lemma suite; exit 1 on violation
    constants  spectral constants c, eta with their closed-form bounds
    equidist   residue counts of s_q(p^2) mod m up to x
    expsum     bound reports for one named lemma family
    typesums   type I / type II sums with their parameter plans
    decay      |sum Lambda(n) f(n^2)| / x along a list of x values

Reports are JSON (schema ``report-v1``, validated by the shipped
``report_schema.json``) or CSV; identical config + seed produces byte
identical files.  gamma is accepted only as an exact rational string
("1/2", "3"); floating gamma would silently break the exact phase
arithmetic, so it is rejected at parse time.

Exit codes: 0 ok, 1 hard contract violated, 2 usage, 3 capacity.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import fourier, harness, vaaler
from . import expsums as xs
from .errors import CapacityError, DomainError, PreconditionError
from .qmult import StronglyQMultiplicative, is_proper, make_digit_exponential

SCHEMA = "report-v1"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

_GAMMA_RE = re.compile(r"^[+-]?\d+(/\d+)?$")

EXPSUM_FAMILIES = (
    "geometric",
    "min-sum",
    "gauss-complete",
    "gauss-incomplete",
    "weyl",
    "gcd-average",
    "vdc",
    "second-derivative",
    "bilinear-mn2",
    "bilinear-xi2",
    "bilinear-m2n2",
)


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: int = 2
    m: int = 2
    gamma: str = "1/2"
    x: int = 10**6
    theta: float = 0.0
    seed: int = 1
    threads: int = 1
    output_path: str = "-"
    format: str = "json"
    mu: int = 6
    nu: int = 10
    family: str = "geometric"
    xs_list: tuple[int, ...] = (10**4, 10**5, 10**6)

    def gamma_fraction(self) -> Fraction:
        return Fraction(self.gamma)


def _parse_gamma(text: str) -> str:
    if not _GAMMA_RE.match(text):
        raise argparse.ArgumentTypeError(
            f"gamma must be an exact rational like 1/2, got {text!r}"
        )
    return text


def _parse_x(text: str) -> int:
    try:
        return int(float(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad x value {text!r}") from exc


def _parse_xs(text: str) -> tuple[int, ...]:
    return tuple(_parse_x(part) for part in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqdigits",
        description="verification suites and experiments for digital functions along squares",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--q", type=int, default=2, help="base (>= 2)")
        p.add_argument("--gamma", type=_parse_gamma, default="1/2",
                       help="exact rational phase step, e.g. 1/2")
        p.add_argument("--seed", type=int, default=1, help="seed for all randomized sweeps")
        p.add_argument("--threads", type=int, default=1, help="worker threads (recorded)")
        p.add_argument("--output", default="-", help="report path, - for stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("verify", help="run every explicit-constant lemma suite")
    common(p)

    p = sub.add_parser("constants", help="spectral constants with closed-form bounds")
    common(p)

    p = sub.add_parser("equidist", help="counts of s_q(p^2) mod m")
    common(p)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--x", type=_parse_x, default=10**6)

    p = sub.add_parser("expsum", help="bound reports for a lemma family")
    common(p)
    p.add_argument("--family", choices=EXPSUM_FAMILIES, default="geometric")

    p = sub.add_parser("typesums", help="type I / type II sums and parameter plans")
    common(p)
    p.add_argument("--mu", type=int, default=6)
    p.add_argument("--nu", type=int, default=10)
    p.add_argument("--theta", type=float, default=0.0)

    p = sub.add_parser("decay", help="Lambda-weighted decay trend")
    common(p)
    p.add_argument("--xs", type=_parse_xs, default=(10**4, 10**5, 10**6),
                   help="comma-separated x values")
    p.add_argument("--theta", type=float, default=0.0)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        q=args.q,
        m=getattr(args, "m", 2),
        gamma=args.gamma,
        x=getattr(args, "x", 10**6),
        theta=getattr(args, "theta", 0.0),
        seed=args.seed,
        threads=args.threads,
        output_path=args.output,
        format=args.format,
        mu=getattr(args, "mu", 6),
        nu=getattr(args, "nu", 10),
        family=getattr(args, "family", "geometric"),
        xs_list=getattr(args, "xs", (10**4, 10**5, 10**6)),
    )


@dataclass
class CheckRow:
    """One verified inequality or identity instance."""

    suite: str
    label: str
    exact: float
    bound: float
    kind: str  # "upper" (exact <= bound) or "identity" (exact == bound within tol)
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.kind == "identity":
            self.passed = abs(self.exact - self.bound) <= self.tol
        else:
            self.passed = self.exact <= self.bound + self.tol

    @property
    def ratio(self) -> float:
        if self.bound != 0:
            return self.exact / self.bound
        return 0.0 if self.exact == 0 else math.inf


def _f_of(config: RunConfig) -> StronglyQMultiplicative:
    return make_digit_exponential(config.q, config.gamma_fraction())


def _verify_rows(config: RunConfig) -> list[CheckRow]:
    rng = np.random.default_rng(config.seed)
    f = _f_of(config)
    q = config.q
    rows: list[CheckRow] = []

    lam_max = 1
    while q ** (lam_max + 1) <= 2**14:
        lam_max += 1
    for t in rng.random(5) * q:
        sums = fourier.quadratic_mean(f, lam_max, float(t))
        for lam, s in enumerate(sums, start=1):
            rows.append(CheckRow("quadratic-mean", f"lam={lam} t={t:.4f}", s, 1.0, "identity", 1e-9))

    for U in (2, 3, 5, 8):
        for a in (0, 1, 3):
            total, tail = vaaler.aliased_chi_sq_sum(U, a)
            rows.append(
                CheckRow("aliased-vaaler", f"U={U} a={a}", total, 1.0 / U**2, "identity", tail + 1e-12)
            )

    for U, H in ((2, 7), (3, 8), (4, 15)):
        for ell in (0, 2):
            chiB, BB, twisted = vaaler.convolution_defects(U, H, ell)
            if ell == 0:
                rows.append(CheckRow("conv-chiB", f"U={U} H={H}", chiB, 1.0 / (H + 1), "identity", 1e-10))
                rows.append(CheckRow("conv-BB", f"U={U} H={H}", BB, 1.0 / (H + 1), "upper", 1e-12))
            rows.append(
                CheckRow("conv-twisted", f"U={U} H={H} l={ell}", twisted, 3.0 / (H + 1), "upper", 1e-12)
            )

    for alpha, H in ((0.5, 7), (1.0 / 3.0, 26)):
        defect = vaaler.sandwich_defect(vaaler.VaalerKernel(alpha, H), 10**4)
        rows.append(CheckRow("vaaler-sandwich", f"alpha={alpha:.4f} H={H}", defect, 0.0, "upper", 1e-9))

    for _ in range(100):
        lam = int(rng.integers(1, 5))
        kappa1 = int(rng.integers(0, 3))
        K = int(rng.integers(1, 6))
        a = int(rng.integers(0, q ** (kappa1 + lam + 2)))
        defect, bound = vaaler.window_approximation_defect(f, a, kappa1, kappa1 + lam, K)
        rows.append(
            CheckRow("window-approx", f"a={a} w={lam} K={K}", defect, min(bound, 1.0), "upper", 1e-9)
        )

    for _ in range(40):
        lam = int(rng.integers(1, 7))
        delta = int(rng.integers(0, lam + 1))
        a = int(rng.integers(0, q**delta))
        t = float(rng.random() * q**lam)
        value, bound = fourier.l1_masked_sum(f, lam, delta, a, t)
        rows.append(CheckRow("l1-masked", f"lam={lam} d={delta}", value, bound, "upper", 1e-9))

    for _ in range(50):
        lam = int(rng.integers(2, 9))
        delta = 0.5 / q ** min(lam, 6)
        # at most floor(1/delta) points fit; stay at half that for sampling room
        count = int(rng.integers(1, min(50, int(0.5 / delta)) + 1))
        nodes = _well_spaced_nodes(rng, count, delta)
        value, bound = fourier.large_sieve_sum(f, 0, lam, nodes, delta)
        rows.append(CheckRow("large-sieve", f"lam={lam} n={count}", value, bound, "upper", -1e-12))

    for _ in range(20):
        lam = int(rng.integers(2, 9))
        A = float(1.0 + rng.random() * (q ** (lam - 1) - 1.0))
        B = float(rng.random() * 10)
        value, bound = fourier.almost_ap_l2_sum(f, 0, lam, A, B)
        rows.append(CheckRow("almost-ap", f"lam={lam} A={A:.3f}", value, bound, "upper", 1e-9))

    for m in range(1, 33):
        for a in range(m):
            for b in range(0, m, max(1, m // 4)):
                r = xs.gauss_complete(a, b, m)
                rows.append(CheckRow("gauss-complete", f"a={a} b={b} m={m}", r.exact, r.bound, "upper", 1e-9))
    for _ in range(200):
        m = int(rng.integers(1, 65))
        a = int(rng.integers(0, m))
        b = int(rng.integers(0, m))
        N = int(rng.integers(0, 3 * m + 1))
        n0 = int(rng.integers(0, 100))
        r = xs.gauss_incomplete(a, b, m, n0, N)
        rows.append(CheckRow("gauss-incomplete", f"a={a} b={b} m={m} N={N}", r.exact, r.bound, "upper", 1e-9))

    for _ in range(10**4):
        L1 = int(rng.integers(-100, 100))
        L2 = L1 + int(rng.integers(0, 1000))
        xi = float(rng.random())
        r = xs.geometric_sum(L1, L2, xi)
        rows.append(CheckRow("geometric", f"len={L2 - L1}", r.exact, r.bound, "upper", 1e-9))

    for m in range(1, 201):
        for A in (1, 7, 61, 500):
            r = xs.gcd_average(m, A, 1.0)
            rows.append(CheckRow("gcd-average", f"m={m} A={A}", r.exact, r.bound, "upper", 1e-9))

    for i in range(1000):
        n = int(rng.integers(1, 200))
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lhs, rhs = xs.vdc_variant_check(z, int(rng.integers(1, 8)), int(rng.integers(1, 8)))
        rows.append(CheckRow("vdc-variant", f"i={i}", lhs, rhs, "upper", 1e-9 * max(1.0, abs(rhs))))

    for qq in (2, 6, 12, 30):
        for lam in (1, 2, 5):
            db = xs.divisor_bounds(qq, lam, -1.0)
            rows.append(CheckRow("divisor-tau-lower", f"q={qq} lam={lam}", db.tau_lower, db.tau_value, "upper", 0.0))
            rows.append(CheckRow("divisor-tau-upper", f"q={qq} lam={lam}", db.tau_value, db.tau_upper, "upper", 0.0))
            rows.append(CheckRow("divisor-sigma", f"q={qq} lam={lam}", db.sigma_value, db.sigma_bound, "upper", -1e-12))
    return rows


def _well_spaced_nodes(rng: np.random.Generator, count: int, delta: float) -> list[float]:
    """Rejection-sample count nodes pairwise delta-spaced mod 1."""
    if count > 1.0 / delta:
        raise PreconditionError(f"cannot place {count} nodes at spacing {delta}")
    nodes: list[float] = []
    attempts = 0
    while len(nodes) < count:
        attempts += 1
        if attempts > 10**6:
            raise PreconditionError("node sampling did not converge; spacing too tight")
        t = float(rng.random())
        if all(min(abs(t - s), 1 - abs(t - s)) >= delta for s in nodes):
            nodes.append(t)
    return nodes


def _constants_results(config: RunConfig) -> dict:
    gamma = config.gamma_fraction()
    q = config.q
    f = make_digit_exponential(q, gamma)
    dist = abs(float((q - 1) * gamma - round((q - 1) * gamma)))
    if not is_proper(f):
        return {
            "q": q,
            "gamma": config.gamma,
            "proper": False,
            "diagnostic": "(q-1)*gamma is an integer: f(n) = e(gamma n) is improper, "
            "c(f) is undefined",
        }
    sc = fourier.compute_constants(f)
    return {
        "q": q,
        "gamma": config.gamma,
        "proper": True,
        "c": sc.c,
        "eta": sc.eta,
        "argmax_c": sc.argmax_c,
        "argmax_eta": sc.argmax_eta,
        "grid_size": sc.grid_size,
        "c_lower_bound": fourier.c_lower_bound_digit_sum(q, gamma),
        "eta_upper_bound": fourier.eta_upper_bound_digit_sum(q),
        "norm_q_minus_1_gamma": dist,
        "c_bound_holds": sc.c >= fourier.c_lower_bound_digit_sum(q, gamma) - 1e-9,
        "eta_bound_holds": sc.eta <= fourier.eta_upper_bound_digit_sum(q) + 1e-9,
    }


def _expsum_rows(config: RunConfig) -> list[dict]:
    rng = np.random.default_rng(config.seed)
    family = config.family
    out: list[dict] = []

    def emit(label: str, report: xs.BoundReport) -> None:
        out.append(
            {
                "family": family,
                "label": label,
                "exact": report.exact,
                "bound": report.bound,
                "ratio": report.ratio,
                "explicit_constant": report.explicit_constant,
                "pass": report.holds if report.explicit_constant else None,
            }
        )

    if family == "geometric":
        for i in range(200):
            L1 = int(rng.integers(-50, 50))
            L2 = L1 + int(rng.integers(0, 500))
            emit(f"i={i}", xs.geometric_sum(L1, L2, float(rng.random())))
    elif family == "min-sum":
        for N2 in (100, 1000, 10000):
            emit(f"N={N2}", xs.min_sum(0, N2, 50.0, math.sqrt(0.5), 0.0))
    elif family == "gauss-complete":
        for m in range(1, 65):
            emit(f"m={m}", xs.gauss_complete(int(rng.integers(0, m)), int(rng.integers(0, m)), m))
    elif family == "gauss-incomplete":
        for m in range(1, 65):
            N = int(rng.integers(0, 3 * m + 1))
            emit(f"m={m} N={N}", xs.gauss_incomplete(int(rng.integers(0, m)), int(rng.integers(0, m)), m, 0, N))
    elif family == "weyl":
        golden = (math.sqrt(5.0) - 1.0) / 2.0
        for a, m in ((1, 2), (2, 3), (3, 5), (5, 8), (8, 13), (13, 21), (21, 34)):
            emit(f"convergent {a}/{m}", xs.weyl_quadratic(golden, 0.3, 0.1, 0, 10**4, a, m))
    elif family == "gcd-average":
        for m in (1, 6, 12, 60, 200):
            emit(f"m={m}", xs.gcd_average(m, 500, 0.5))
    elif family == "vdc":
        for i in range(50):
            n = int(rng.integers(1, 200))
            z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            lhs, rhs = xs.vdc_variant_check(z, int(rng.integers(1, 8)), int(rng.integers(1, 8)))
            out.append(
                {
                    "family": family,
                    "label": f"i={i}",
                    "exact": lhs,
                    "bound": rhs,
                    "ratio": lhs / rhs if rhs else math.inf,
                    "explicit_constant": True,
                    "pass": lhs <= rhs + 1e-9 * max(1.0, abs(rhs)),
                }
            )
    elif family == "second-derivative":
        for N in (64, 128, 256, 512, 1024, 2048, 4096):
            emit(f"N={N}", xs.second_derivative_report(1.0 / (10.0 * math.sqrt(2.0)), N))
    elif family in ("bilinear-mn2", "bilinear-xi2", "bilinear-m2n2"):
        for size in (32, 64, 128):
            a = np.exp(2j * np.pi * rng.random(size))
            b = np.exp(2j * np.pi * rng.random(size))
            if family == "bilinear-mn2":
                xi = Fraction(1, 17)
                s = xs.bilinear_quadratic_sum(a, b, xi3=xi)
                exact = (abs(s) / (size * size)) ** 2
                bound = xs.bound_mn2(size, size, xi)
            elif family == "bilinear-xi2":
                xi = Fraction(1, 17)
                s = xs.bilinear_quadratic_sum(a, b, xi2=xi)
                exact = (abs(s) / (size * size)) ** 2
                bound = xs.bound_xi2(size, size, xi)
            else:
                xi = Fraction(1, 101)
                s = xs.bilinear_quadratic_sum(a, b, xi4=xi)
                exact = (abs(s) / (size * size)) ** 4
                bound = xs.bound_m2n2(size, size, xi)
            out.append(
                {
                    "family": family,
                    "label": f"M=N={size}",
                    "exact": exact,
                    "bound": bound,
                    "ratio": exact / bound,
                    "explicit_constant": False,
                    "pass": None,
                }
            )
    return out


def _typesums_results(config: RunConfig) -> dict:
    rng = np.random.default_rng(config.seed)
    f = _f_of(config)
    q, mu, nu = config.q, config.mu, config.nu
    sc = fourier.compute_constants(f)
    plan = harness.type2_plan(mu, nu, sc.c, sc.eta)
    a = np.exp(2j * np.pi * rng.random(q**mu - q ** (mu - 1)))
    b = np.exp(2j * np.pi * rng.random(q**nu - q ** (nu - 1)))
    s20 = harness.type2_S20(mu, nu, q, f, config.theta, a, b)
    si = harness.type1_SI(mu, nu, q, f, config.theta)
    si_max = harness.type1_SI(mu, nu, q, f, config.theta, maximize=True)
    return {
        "q": q,
        "mu": mu,
        "nu": nu,
        "theta": config.theta,
        "constants": {"c": sc.c, "eta": sc.eta},
        "plan": asdict(plan),
        "type1_rho": harness.type1_rho(nu, sc.c, sc.eta),
        "S20_abs": abs(s20),
        "S20_normalized": abs(s20) / q ** (mu + nu),
        "SI": si,
        "SI_normalized": si / q ** (mu + nu),
        "SI_max_over_t": si_max,
    }


def run(config: RunConfig) -> int:
    """Execute one command and write its report; returns the exit code."""
    if config.threads < 1:
        raise PreconditionError(f"threads must be >= 1, got {config.threads}")
    violation = False
    if config.command == "verify":
        rows = _verify_rows(config)
        violation = not all(r.passed for r in rows)
        results: object = [
            {
                "suite": r.suite,
                "label": r.label,
                "exact": r.exact,
                "bound": r.bound,
                "kind": r.kind,
                "ratio": r.ratio,
                "pass": r.passed,
            }
            for r in rows
        ]
    elif config.command == "constants":
        results = _constants_results(config)
    elif config.command == "equidist":
        report = harness.equidist_counts(config.x, config.q, config.m)
        results = {
            "x": report.x,
            "q": report.q,
            "m": report.m,
            "counts": list(report.counts),
            "pi_x": report.pi_x,
            "max_rel_discrepancy": report.max_rel_discrepancy,
            "coprime_to_q_minus_1": report.coprime_to_q_minus_1,
        }
    elif config.command == "expsum":
        results = _expsum_rows(config)
        violation = any(row["pass"] is False for row in results)
    elif config.command == "typesums":
        results = _typesums_results(config)
    elif config.command == "decay":
        f = _f_of(config)
        fit = harness.decay_fit(list(config.xs_list), f, config.theta)
        results = {
            "xs": list(fit.xs),
            "values": list(fit.values),
            "fitted_exponent": fit.fitted_exponent,
        }
    else:
        raise PreconditionError(f"unknown command {config.command!r}")

    config_echo = asdict(config)
    config_echo.pop("output_path")  # reports must not depend on where they land
    report = {
        "schema": SCHEMA,
        "command": config.command,
        "config": config_echo,
        "results": results,
    }
    _write_report(report, config)
    return EXIT_VIOLATION if violation else EXIT_OK


def _write_report(report: dict, config: RunConfig) -> None:
    if config.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"
    else:
        text = _to_csv(report)
    if config.output_path == "-":
        sys.stdout.write(text)
    else:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json_default(obj):
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def _to_csv(report: dict) -> str:
    """Rows of (suite/section, label, exact, bound, ratio, pass) where the
    results are check rows, else flattened (key, value) pairs."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    results = report["results"]
    if isinstance(results, list):
        writer.writerow(["suite", "label", "exact", "bound", "ratio", "pass"])
        for row in results:
            writer.writerow(
                [
                    row.get("suite", row.get("family", "")),
                    row.get("label", ""),
                    repr(row.get("exact", "")),
                    repr(row.get("bound", "")),
                    repr(row.get("ratio", "")),
                    row.get("pass", ""),
                ]
            )
    else:
        writer.writerow(["key", "value"])
        for key in sorted(results):
            writer.writerow([key, json.dumps(results[key], sort_keys=True, default=_json_default)])
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    config = config_from_args(args)
    try:
        return run(config)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (DomainError, PreconditionError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
