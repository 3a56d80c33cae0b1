"""
Command line entry point: `python -m src.main.cli list` and
`python -m src.main.cli run <scenario>... [--param key=value]...`.

Exit codes: 0 when every verdict matches the expectation catalog, 1 when one
contradicts it, 2 on usage errors.
"""
import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Dict, List, Optional

from joblib import Parallel, delayed

from src.main.config import EngineConfig
from src.main.errors import BadParameter, LieHermError, UnknownScenario
from src.main.geometry.flag_bundles import scan_to_csv
from src.main.scenarios import (EXPECTATIONS_PATH, Report, Scenario, compare_expectation,
                                find_expectation, get_scenario, list_scenarios,
                                load_expectations, resolve_params, run_scenario)

log = logging.getLogger("lieherm")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lieherm",
                                description="Exact Lie-theoretic checks of Hermitian metrics on Lie groups.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="INFO with -v, DEBUG with -vv.")
    p.add_argument("-q", "--quiet", action="store_true", help="Only log errors.")
    sub = p.add_subparsers(dest="command", required=True)

    listing = sub.add_parser("list", help="List scenarios with their parameters.")
    listing.add_argument("--json", type=str, default=None, help="Write the catalog as JSON to this path.")

    run = sub.add_parser("run", help="Run one or more scenarios.")
    run.add_argument("scenarios", nargs="+", help="Scenario names (see `lieherm list`).")
    run.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                     help="Scenario parameter; exact rationals as p/q. Repeatable.")
    run.add_argument("--json", type=str, default=None,
                     help="Report path; a directory when several scenarios run.")
    run.add_argument("--csv", type=str, default=None, help="CSV path for the su5-t2-scan table.")
    run.add_argument("--plot", type=str, default=None, help="Image path for the su5-t2-scan grid.")
    run.add_argument("--seed", type=int, default=None, help="Seed for randomized checks.")
    run.add_argument("--trials", type=int, default=None, help="Falsifier samples.")
    run.add_argument("--jobs", type=int, default=None, help="Worker processes.")
    run.add_argument("--expectations", type=str, default=str(EXPECTATIONS_PATH),
                     help="Expectation catalog (JSON array of {scenario, params, verdicts, values}).")
    return p


def parse_params(items: List[str]) -> Dict[str, str]:
    params: Dict[str, str] = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise BadParameter(item, "expected key=value")
        params[key.strip()] = value.strip()
    return params


def configure_logging(args: argparse.Namespace, config: EngineConfig) -> None:
    if args.quiet:
        level = logging.ERROR
    elif args.verbose:
        level = logging.DEBUG if args.verbose > 1 else logging.INFO
    else:
        level = getattr(logging, config.log_level, logging.WARNING)
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def write_atomic(path: Path, text: str) -> None:
    """Write through a temporary file in the target directory, then move it into place."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def run_all(scenarios: List[Scenario], config: EngineConfig) -> List[Report]:
    """Run scenarios in order; independent scenarios run in parallel workers when jobs > 1."""
    if config.jobs > 1 and len(scenarios) > 1:
        inner = config.with_overrides(jobs=1)
        return Parallel(n_jobs=config.jobs)(delayed(run_scenario)(s, inner) for s in scenarios)
    return [run_scenario(s, config) for s in scenarios]


def _report_path(base: Path, report: Report, several: bool) -> Path:
    return base / f"{report.scenario}.json" if several else base


def _cmd_list(args: argparse.Namespace) -> int:
    catalog = list_scenarios()
    for info in catalog:
        params = ", ".join(f"{k}={p.default}" for k, p in info.params.items()) or "no parameters"
        print(f"{info.name:20s} {info.description} [{params}]")
    if args.json:
        write_atomic(Path(args.json), json.dumps([i.to_json() for i in catalog], sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_run(args: argparse.Namespace, config: EngineConfig) -> int:
    params = parse_params(args.param)
    scenarios = [Scenario(name, dict(params)) for name in args.scenarios]
    for s in scenarios:
        resolve_params(get_scenario(s.name), s.params)
    catalog = load_expectations(Path(args.expectations)) if args.expectations else []

    reports = run_all(scenarios, config)

    status = 0
    several = len(reports) > 1
    for report in reports:
        print(report.summary())
        if args.json:
            write_atomic(_report_path(Path(args.json), report, several), report.dumps())
        records = report.artifacts.get("records")
        if records is not None and args.csv:
            write_atomic(Path(args.csv), scan_to_csv(records))
        if records is not None and args.plot:
            import matplotlib
            matplotlib.use("Agg")
            from src.main.visualization.plot import visualize_scan
            visualize_scan(records, title=f"{report.scenario} {report.params}", save_path=args.plot)
        expected = find_expectation(report, catalog)
        if expected is None:
            log.info("No expectation recorded for %s %s", report.scenario, report.params)
            continue
        mismatches = compare_expectation(report, expected)
        for line in mismatches:
            print(f"  MISMATCH {line}", file=sys.stderr)
        if mismatches:
            status = 1
    return status


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = EngineConfig.from_env()
        if args.command == "run":
            config = config.with_overrides(seed=args.seed, trials=args.trials, jobs=args.jobs)
        configure_logging(args, config)
        if args.command == "list":
            return _cmd_list(args)
        return _cmd_run(args, config)
    except (BadParameter, UnknownScenario) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LieHermError as exc:
        log.error("Scenario failed: %s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
