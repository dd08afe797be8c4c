"""Command-line front end.

Every subcommand produces a :class:`Report` that is written to stdout as
JSON (default) or as a plain table (``--format table``).  Exit status: 0 on
success, 1 if any check failed, 2 on usage / domain errors, 3 when a
resource budget is exceeded.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import covers, ewens, exactcomb, limitdist, perm
from .errors import DomainError, ResourceError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


def encode(value: Any) -> Any:
    """JSON-safe form: exact rationals as {"num", "den"}, integers as decimal strings."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, exactcomb.Polynomial):
        return [encode(c) for c in value.coeffs]
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if hasattr(value, "tolist"):
        return encode(value.tolist())
    return str(value)


def _as_ints(value: Any) -> Any:
    if hasattr(value, "tolist"):
        value = value.tolist()
    if isinstance(value, (list, tuple)):
        return [_as_ints(v) for v in value]
    return int(value)


def decode_rational(obj: Any) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    return Fraction(obj)


@dataclass
class Check:
    name: str
    status: str
    lhs: Any
    rhs: Any
    tolerance: Any = 0


@dataclass
class Report:
    command: str
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    seed: int | None = None
    elapsed_ms: int = 0

    def output(self, key: str, value: Any, raw: bool = False) -> None:
        # raw: small-integer arrays (permutation images, cycle counts) kept as JSON numbers
        self.outputs[key] = _as_ints(value) if raw else encode(value)

    def check(self, name: str, ok: bool, lhs: Any, rhs: Any, tolerance: Any = 0) -> bool:
        self.checks.append(Check(name, "pass" if ok else "fail", encode(lhs), encode(rhs), encode(tolerance)))
        return ok

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        data["checks"] = [Check(**c) for c in data["checks"]]
        return cls(**data)

    def to_table(self) -> str:
        lines = [f"# {self.command}"]
        for k, v in self.inputs.items():
            lines.append(f"  in   {k:<18} {_plain(v)}")
        for k, v in self.outputs.items():
            lines.append(f"  out  {k:<18} {_plain(v)}")
        for c in self.checks:
            lines.append(f"  {c.status.upper():<4} {c.name}: {_plain(c.lhs)} vs {_plain(c.rhs)} (tol {_plain(c.tolerance)})")
        lines.append(f"  {self.elapsed_ms} ms")
        return "\n".join(lines)


def _plain(v: Any) -> str:
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return v["num"] if v["den"] == "1" else f"{v['num']}/{v['den']}"
    if isinstance(v, list):
        return "[" + ", ".join(_plain(x) for x in v) + "]"
    return str(v)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def moment_specs(text: str) -> list[tuple[int, int]]:
    """Parse "m:k,m:k" (":k" may be omitted for k = 1)."""
    specs = []
    try:
        for item in text.split(","):
            m, _, k = item.strip().partition(":")
            specs.append((int(m), int(k or 1)))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad spec list {text!r}; expected m:k,m:k") from exc
    return specs


def int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_bell(a, r: Report) -> None:
    r.output("value", exactcomb.bell(a.n))


def cmd_stirling1(a, r: Report) -> None:
    r.output("value", exactcomb.stirling1_unsigned(a.n, a.k))


def cmd_stirling2(a, r: Report) -> None:
    r.output("value", exactcomb.stirling2(a.n, a.k))


def cmd_touchard(a, r: Report) -> None:
    poly = exactcomb.touchard(a.k)
    r.output("coefficients", poly)
    if a.x is not None:
        r.output("value", poly(a.x))


def cmd_dobinski(a, r: Report) -> None:
    approx = exactcomb.dobinski(a.n, a.x, a.tol)
    exact = exactcomb.touchard(a.n)(a.x)
    r.output("value", approx)
    r.output("exact", exact)
    rel = abs(approx - float(exact)) / float(exact) if exact else abs(approx)
    r.check("dobinski matches touchard", rel <= 10 * a.tol, approx, exact, 10 * a.tol)


def cmd_covers(a, r: Report) -> None:
    if a.table:
        rows = [(k, m, covers.count_covers(k, m, a.budget)) for k in range(1, a.k + 1) for m in range(1, a.m + 1)]
        r.output("rows", rows)
        r.inputs["csv"] = True
        return
    value = covers.count_covers(a.k, a.m, a.budget)
    r.output("value", value)
    if a.oracle:
        brute = covers.count_covers_bruteforce(a.k, a.m)
        r.check("dp equals brute force", value == brute, value, brute)


def cmd_gamma(a, r: Report) -> None:
    g = covers.gamma(a.m, a.u)
    b = covers.gamma_binomial_sum(a.m, a.u)
    r.output("value", g)
    r.check("coefficient equals binomial sum", g == b, g, b)


def cmd_fixedsets(a, r: Report) -> None:
    p = perm.Permutation.parse_cycles(a.perm, a.n)
    ct = perm.cycle_type(p)
    value = perm.fixed_set_count(ct, a.m)
    r.output("value", value)
    r.output("images", p.images, raw=True)
    r.output("cycle_type", ct.counts, raw=True)
    if math.comb(p.n, a.m) <= a.budget:
        direct = perm.fixed_set_count_direct(p, a.m, a.budget)
        r.check("cycle-type formula equals direct count", value == direct, value, direct)


def cmd_moment_exact(a, r: Report) -> None:
    r.output("value", perm.exact_moment_C(a.n, a.theta, a.spec))


def cmd_moment_closed(a, r: Report) -> None:
    value = perm.closed_moment_C(a.n, a.theta, a.m, a.k)
    r.output("value", value)
    r.output("limit", exactcomb.touchard(a.k)(a.theta / a.m))
    if a.n <= 8:
        exact = perm.exact_moment_C(a.n, a.theta, [(a.m, a.k)])
        r.check("closed form equals enumeration", value == exact, value, exact)


def cmd_moment_mc(a, r: Report) -> None:
    cfg = ewens.SamplerConfig(a.n, float(a.theta), a.seed, a.replicates)
    est, se = ewens.mc_moment(cfg, a.spec)
    r.seed = a.seed
    r.output("estimate", est)
    r.output("stderr", se)
    r.output("replicates", a.replicates)
    r.output("seed", a.seed)
    limit = Fraction(1)
    for m, k in a.spec:
        limit *= exactcomb.touchard(k)(a.theta / m)
    r.output("limit", limit)


def cmd_sample(a, r: Report) -> None:
    cfg = ewens.SamplerConfig(a.n, float(a.theta), a.seed, a.replicates)
    r.seed = a.seed
    if a.max_m:
        r.output("cycle_counts", ewens.sample_cycle_counts(cfg, a.max_m), raw=True)
    else:
        r.output("permutations", ewens.sample_permutations(cfg), raw=True)


def cmd_limit(a, r: Report) -> None:
    if a.what == "dist":
        d = limitdist.dist_E(a.m, a.eps)
        r.output("pmf", {str(v): p for v, p in d.support})
        r.output("mass_captured", d.mass_captured)
        r.output("mean", d.mean)
        r.output("variance", d.variance)
    elif a.what == "egf":
        v = limitdist.vm_eval(a.m, a.x, a.eps)
        r.output("value", v.value)
        r.output("truncation_bound", v.truncation_bound)
        if a.m in (2, 3):
            closed = limitdist.vm_closed(a.m, a.x)
            tol = 10 * v.truncation_bound + 1e-12
            r.check("box sum equals closed form", abs(v.value - closed) <= tol, v.value, closed, tol)
    elif a.what == "coeffs":
        r.output("coefficients", limitdist.vm_series_coeffs(a.m, a.K))
    elif a.what == "nonzero":
        lo, hi = limitdist.prob_nonzero(a.m, a.eps)
        r.output("lower", lo)
        r.output("upper", hi)


def cmd_verify(a, r: Report) -> None:
    from . import verify

    r.seed = a.seed
    suites = verify.SUITES if a.suite == "all" else {a.suite: verify.SUITES[a.suite]}
    for suite in suites.values():
        suite(r, seed=a.seed)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=d(12345))
    parser.add_argument("--format", choices=("json", "table"), default=d("json"))
    parser.add_argument("--eps", type=float, default=d(1e-8))
    parser.add_argument("--budget", type=int, default=d(10**7))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permstats", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    p = add("bell", cmd_bell, "Bell number B_n")
    p.add_argument("--n", type=int, required=True)
    p = add("stirling1", cmd_stirling1, "unsigned Stirling number of the first kind")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = add("stirling2", cmd_stirling2, "Stirling number of the second kind")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = add("touchard", cmd_touchard, "Touchard polynomial T_k (optionally evaluated)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--x", type=rational)
    p = add("dobinski", cmd_dobinski, "Dobinski series for T_n(x)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=rational, default=Fraction(1))
    p.add_argument("--tol", type=float, default=1e-12)
    p = add("covers", cmd_covers, "number of m-covers of [k]")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--table", action="store_true", help="CSV rows k,m,v for all k'<=k, m'<=m")
    p = add("gamma", cmd_gamma, "coefficient of z^m in prod (1+z^j)^u_j")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--u", type=int_list, required=True)
    p = add("fixedsets", cmd_fixedsets, "number of m-sets fixed by a permutation")
    p.add_argument("--perm", required=True, help='cycle notation, e.g. "(3 7 9)(2 4)(1 6)(5)(8)"')
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p = add("moment-exact", cmd_moment_exact, "exact E prod C_m^k by enumerating S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=rational, default=Fraction(1))
    p.add_argument("--spec", type=moment_specs, required=True)
    p = add("moment-closed", cmd_moment_closed, "closed-form E C_m^k, n >= mk")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=rational, default=Fraction(1))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p = add("moment-mc", cmd_moment_mc, "Monte Carlo E prod C_m^k")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=rational, default=Fraction(1))
    p.add_argument("--spec", type=moment_specs, required=True)
    p.add_argument("--replicates", type=int, default=10000)
    p = add("sample", cmd_sample, "draw Ewens permutations or cycle counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=rational, default=Fraction(1))
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--max-m", type=int)
    p = add("limit", cmd_limit, "limit law of E_m and its exponential moments")
    p.add_argument("what", choices=("dist", "egf", "coeffs", "nonzero"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--K", type=int, default=5)
    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", choices=("theoremC", "theorem1", "theorem2", "identities", "all"))
    return parser


def run(argv: Sequence[str]) -> tuple[Report | None, int]:
    """Parse ``argv``, execute, and return the report and exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return None, EXIT_USAGE if exc.code else EXIT_OK
    inputs = {
        k: v if isinstance(v, int) and not isinstance(v, bool) else encode(v)
        for k, v in vars(args).items()
        if k not in ("fn", "format", "command")
    }
    report = Report(args.command, inputs=inputs)
    report.format = args.format  # presentation only; not serialized
    start = time.perf_counter()
    try:
        args.fn(args, report)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_USAGE
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return None, EXIT_RESOURCE
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report, EXIT_OK if report.ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, code = run(argv)
    if report is not None:
        if report.inputs.get("csv"):
            print("k,m,v")
            for k, m, v in report.outputs["rows"]:
                print(f"{k},{m},{v}")
        elif report.format == "table":
            print(report.to_table())
        else:
            print(report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
