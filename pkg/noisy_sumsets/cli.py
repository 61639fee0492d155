"""
Command-line interface for noisy-sumsets.

    noisy-sumsets mu --n 10 --k 2 --l 1 --noise 0,1
    noisy-sumsets bounds --n 40 --k 9 --l 4 --c 2
    noisy-sumsets scan --out scan.csv

Exit codes: 0 success, 1 finding (scan counterexample, sandwich violation,
failing property suite), 2 usage error, 3 search ceiling or budget.
"""

import argparse
import logging
import sys
import time
from dataclasses import replace
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import __version__
from .analysis.report import ReportEnvelope, rows_to_csv, summarize_rows, write_rows
from .bounds.formulas import BoundsReport, bounds_for_noise, bounds_prefix_noise, bounds_two_element
from .core.config import SearchSettings, ToolConfig, load_config_from_file, resolve_settings
from .core.cyclic import CyclicSet
from .equivalence.orbits import are_equivalent, canonicalize, size3_orbit
from .production.cache import configure_global_cache
from .production.error_handling import (
    EXIT_FINDING,
    EXIT_OK,
    EXIT_USAGE,
    NoisySumsetError,
    configure_logging,
    exit_code_for,
)
from .search.sumfree import SumFreeParams, brute_force_mu, is_sumfree
from .verify import properties
from .verify.harness import (
    NoiseKind,
    ScanRanges,
    SweepRanges,
    SweepRow,
    conjecture_scan,
    counterexamples,
    sandwich_sweep,
)

logger = logging.getLogger("noisy_sumsets.cli")

SUITES: Dict[str, Callable[[int], properties.SuiteReport]] = {
    "kneser": lambda seed: properties.kneser_suite(seed=seed),
    "downward_closure": lambda seed: properties.downward_closure_suite(seed=seed),
    "translation_symmetry": lambda seed: properties.translation_symmetry_suite(),
    "lift_project": lambda seed: properties.lift_project_suite(seed=seed),
    "scale": lambda seed: properties.scale_suite(seed=seed),
    "equivalence": lambda seed: properties.equivalence_suite(seed=seed),
    "orbit": lambda seed: properties.orbit_suite(),
    "redundancy": lambda seed: properties.redundancy_suite(),
}


class _Output:
    """Collects text lines or a JSON envelope and prints once at the end."""

    def __init__(self, command: str, params: Dict[str, Any], as_json: bool):
        self.envelope = ReportEnvelope(version=__version__, command=command, params=params)
        self.as_json = as_json
        self.lines: List[str] = []
        self.started = time.perf_counter_ns()

    def text(self, line: str) -> None:
        self.lines.append(line)

    def result(self, payload: Dict[str, Any]) -> None:
        self.envelope.results.append(payload)

    def flush(self) -> None:
        if self.as_json:
            self.envelope.elapsed_ms = (time.perf_counter_ns() - self.started) // 1_000_000
            print(self.envelope.to_json())
        else:
            for line in self.lines:
                print(line)


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _params(args: argparse.Namespace) -> SumFreeParams:
    return SumFreeParams(args.n, args.k, args.l)


def _noise(args: argparse.Namespace) -> CyclicSet:
    return CyclicSet.from_literal(args.noise, args.n)


def cmd_mu(args: argparse.Namespace, settings: SearchSettings, out: _Output) -> int:
    params = _params(args)
    noise = CyclicSet.from_literal(args.noise, args.n)
    cap = args.witnesses or settings.witness_cap
    cache = configure_global_cache(cache_dir=settings.cache_dir)
    result = brute_force_mu(
        params,
        noise,
        cap,
        jobs=settings.jobs,
        search_ceiling=settings.search_ceiling,
        cache=cache,
    )

    out.text(f"mu={result.mu}")
    for literal in result.witness_literals:
        out.text(f"witness={literal}")
    out.result(
        {
            "n": params.n,
            "k": params.k,
            "l": params.ell,
            "noise": noise.to_literal(),
            "mu": result.mu,
            "witnesses": result.witness_literals,
            "nodes_explored": result.nodes_explored,
            "exhaustive": result.exhaustive,
        }
    )
    return EXIT_OK


def _bounds(args: argparse.Namespace) -> BoundsReport:
    if args.c is not None:
        return bounds_prefix_noise(args.n, args.k, args.l, args.c)
    if args.s is not None:
        return bounds_two_element(args.n, args.k, args.l, args.s)
    return bounds_for_noise(args.n, args.k, args.l, _noise(args))


def cmd_bounds(args: argparse.Namespace, settings: SearchSettings, out: _Output) -> int:
    report = _bounds(args)
    data = report.to_dict()

    out.text(f"lower={report.lower}")
    out.text(f"upper={report.upper}")
    out.text(f"method={report.method.value}")
    out.text(f"delta={report.delta}")
    for name in ("chi", "r", "f", "coset_term", "interval_c", "refined_lower"):
        if data[name] is not None:
            out.text(f"{name}={data[name]}")
    for d, term in data["per_divisor_terms"].items():
        out.text(f"term[{d}]={term}")
    out.result(dict(data, n=args.n, k=args.k, l=args.l))
    return EXIT_OK


def cmd_check(args: argparse.Namespace, settings: SearchSettings, out: _Output) -> int:
    params = _params(args)
    a = CyclicSet.from_literal(args.set, args.n)
    noise = CyclicSet.from_literal(args.noise, args.n)
    free = is_sumfree(a, noise, params)
    out.text(_bool(free))
    out.result({"set": a.to_literal(), "noise": noise.to_literal(), "sumfree": free})
    return EXIT_OK


def _emit_rows(args: argparse.Namespace, settings: SearchSettings, out: _Output, rows: List[SweepRow]) -> None:
    fmt = args.format or (settings.output_format if settings.output_format != "text" else "csv")
    if args.out:
        write_rows(rows, args.out, fmt, replace(out.envelope))
        logger.info("wrote %d rows to %s", len(rows), args.out)
    for row in rows:
        out.result(row.to_dict())
    if not args.out and fmt == "csv" and not out.as_json:
        out.text(rows_to_csv(rows).rstrip("\n"))
    for kind, summary in summarize_rows(rows).items():
        fields = " ".join(f"{key}={value}" for key, value in summary.items())
        out.text(f"{kind}: {fields}")


def cmd_scan(args: argparse.Namespace, settings: SearchSettings, out: _Output) -> int:
    if args.full:
        ranges = ScanRanges.full_range()
    else:
        ranges = ScanRanges.desk_scale()
        overrides = {
            "c_max": args.c_max,
            "k_max": args.k_max,
            "l_max": args.l_max,
            "n_max": args.n_max,
        }
        ranges = replace(
            ranges,
            search_ceiling=settings.search_ceiling,
            **{key: value for key, value in overrides.items() if value is not None},
        )

    rows = conjecture_scan(
        ranges,
        jobs=settings.jobs,
        time_budget_ms=settings.budget_ms,
        cache=configure_global_cache(cache_dir=settings.cache_dir),
    )
    _emit_rows(args, settings, out, rows)

    found = counterexamples(rows)
    for row in found:
        out.text(
            f"counterexample: n={row.n} k={row.k} l={row.ell} noise={row.noise} "
            f"mu={row.oracle_mu} bounds={row.formula_lower}..{row.formula_upper} "
            f"witness={row.witness}"
        )
    out.text(f"counterexamples={len(found)}")
    return EXIT_FINDING if found else EXIT_OK


def cmd_sweep(args: argparse.Namespace, settings: SearchSettings, out: _Output) -> int:
    defaults = SweepRanges()
    ranges = SweepRanges(
        n_max=args.n_max or defaults.n_max,
        k_max=args.k_max or defaults.k_max,
        c_max=args.c_max or defaults.c_max,
        l_max=args.l_max,
        search_ceiling=settings.search_ceiling,
    )
    rows = sandwich_sweep(
        NoiseKind(args.kind),
        ranges,
        noise_literal=args.noise,
        jobs=settings.jobs,
        time_budget_ms=settings.budget_ms,
        cache=configure_global_cache(cache_dir=settings.cache_dir),
    )
    _emit_rows(args, settings, out, rows)
    return EXIT_OK


def cmd_orbit(args: argparse.Namespace, settings: SearchSettings, out: _Output) -> int:
    orbit = size3_orbit(args.c, args.p)
    out.text(orbit.to_literal())
    out.result({"c": args.c, "p": args.p, "orbit": orbit.to_literal()})
    return EXIT_OK


def cmd_equiv(args: argparse.Namespace, settings: SearchSettings, out: _Output) -> int:
    c1 = CyclicSet.from_literal(args.c1, args.n)
    c2 = CyclicSet.from_literal(args.c2, args.n)
    equivalent = are_equivalent(c1, c2)
    out.text("equivalent" if equivalent else "not equivalent")

    payload: Dict[str, Any] = {"n": args.n, "equivalent": equivalent}
    for name, noise in (("c1", c1), ("c2", c2)):
        form = canonicalize(noise)
        payload[name] = {
            "set": noise.to_literal(),
            "canonical": form.representative.to_literal(),
            "orbit_size": form.orbit_size,
            "transform": list(form.transform),
        }
    out.result(payload)
    return EXIT_OK


def cmd_suite(args: argparse.Namespace, settings: SearchSettings, out: _Output) -> int:
    seed = settings.seed if args.seed is None else args.seed
    names = args.name or list(SUITES)
    failed = 0
    for name in names:
        report = SUITES[name](seed)
        status = "ok" if report.ok else "FAILED"
        passes = sum(report.passes.values())
        out.text(f"{name}: {status} trials={report.trials} checks={passes} failures={len(report.failures)}")
        out.result(report.to_dict())
        failed += 0 if report.ok else 1
    return EXIT_FINDING if failed else EXIT_OK


def _add_kl(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="Modulus n.")
    parser.add_argument("--k", type=int, required=True, help="Larger multiplicity k.")
    parser.add_argument("--l", type=int, required=True, help="Smaller multiplicity l < k.")


def _add_report_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="Write rows to this path.")
    parser.add_argument("--format", choices=("csv", "json"), help="Row format for --out.")
    parser.add_argument("--budget-ms", type=int, help="Wall-clock budget per row in milliseconds.")
    parser.add_argument("--ceiling", type=int, help="Largest modulus the oracle may search.")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print a JSON envelope.")
    common.add_argument("--jobs", type=int, help="Worker processes (default: NOISY_SUMSETS_JOBS or config).")
    common.add_argument("--config", help="YAML, JSON or key=value configuration file.")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG.")

    parser = argparse.ArgumentParser(
        prog="noisy-sumsets",
        description="Exact noisy sum-free computations over Z/nZ.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    mu = subparsers.add_parser("mu", parents=[common], help="Exact largest sum-free size.")
    _add_kl(mu)
    mu.add_argument("--noise", required=True, help="Noise set literal, e.g. 0,1.")
    mu.add_argument("--witnesses", type=int, help="Number of witnesses to report.")
    mu.add_argument("--ceiling", type=int, help="Largest modulus the oracle may search.")
    mu.set_defaults(func=cmd_mu)

    bounds = subparsers.add_parser("bounds", parents=[common], help="Closed-form bounds.")
    _add_kl(bounds)
    shape = bounds.add_mutually_exclusive_group(required=True)
    shape.add_argument("--c", type=int, help="Interval noise {0, ..., c-1}.")
    shape.add_argument("--s", type=int, help="Two-element noise {0, s}.")
    shape.add_argument("--noise", help="Arbitrary noise set literal.")
    bounds.set_defaults(func=cmd_bounds)

    check = subparsers.add_parser("check", parents=[common], help="Test one set for sum-freeness.")
    check.add_argument("--set", required=True, help="Candidate set literal.")
    _add_kl(check)
    check.add_argument("--noise", required=True, help="Noise set literal.")
    check.set_defaults(func=cmd_check)

    scan = subparsers.add_parser("scan", parents=[common], help="Interval-noise conjecture scan.")
    scan.add_argument("--n-max", type=int)
    scan.add_argument("--k-max", type=int)
    scan.add_argument("--l-max", type=int)
    scan.add_argument("--c-max", type=int)
    scan.add_argument("--full", action="store_true", help="Full long-running range.")
    _add_report_flags(scan)
    scan.set_defaults(func=cmd_scan)

    sweep = subparsers.add_parser("sweep", parents=[common], help="Bounds-versus-oracle sandwich sweep.")
    sweep.add_argument("--kind", choices=[kind.value for kind in NoiseKind], default="prefix")
    sweep.add_argument("--noise", help="Noise literal for --kind custom.")
    sweep.add_argument("--n-max", type=int)
    sweep.add_argument("--k-max", type=int)
    sweep.add_argument("--l-max", type=int)
    sweep.add_argument("--c-max", type=int)
    _add_report_flags(sweep)
    sweep.set_defaults(func=cmd_sweep)

    orbit = subparsers.add_parser("orbit", parents=[common], help="Size-3 equivalence orbit mod a prime.")
    orbit.add_argument("--c", type=int, required=True)
    orbit.add_argument("--p", type=int, required=True)
    orbit.set_defaults(func=cmd_orbit)

    equiv = subparsers.add_parser("equiv", parents=[common], help="Shift-mult equivalence of two sets.")
    equiv.add_argument("--n", type=int, required=True)
    equiv.add_argument("--c1", required=True)
    equiv.add_argument("--c2", required=True)
    equiv.set_defaults(func=cmd_equiv)

    suite = subparsers.add_parser("suite", parents=[common], help="Seeded property suites.")
    suite.add_argument("--seed", type=int)
    suite.add_argument("--name", action="append", choices=list(SUITES), help="Suite to run; repeatable.")
    suite.set_defaults(func=cmd_suite)

    return parser


def _log_level(verbose: int, settings: SearchSettings) -> int:
    if verbose >= 2:
        return logging.DEBUG
    if verbose == 1:
        return logging.INFO
    return getattr(logging, settings.log_level, logging.WARNING)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    try:
        config = load_config_from_file(args.config) if args.config else ToolConfig()
        settings = resolve_settings(
            config,
            overrides={
                "jobs": args.jobs,
                "budget_ms": getattr(args, "budget_ms", None),
                "search_ceiling": getattr(args, "ceiling", None),
                "output_format": "json" if args.json else None,
            },
        )
        configure_logging(_log_level(args.verbose, settings))

        params = {
            key: value
            for key, value in sorted(vars(args).items())
            if key not in ("func", "command", "config", "verbose")
        }
        out = _Output(args.command, params, as_json=settings.output_format == "json")
        code = args.func(args, settings, out)
        out.flush()
        return code
    except NoisySumsetError as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
