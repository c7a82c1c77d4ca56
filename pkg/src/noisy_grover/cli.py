"""Command-line front end.

Exit codes: 0 success, 1 usage or configuration error, 2 numerical failure,
3 I/O failure. Data goes to stdout or ``--out``; warnings go to stderr.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import reporting
from .ensembles import ControlledVariance, Seed, spec_from_json
from .errors import ConfigurationError, NumericalError
from .experiments import AMPLITUDE, PROBABILITY, SweepConfig, markov_experiment, run_baseline, run_sweep
from .grover import GroverConfig, IterationSchedule, build_diffusion_matrix

SEED_ENV = "NOISY_GROVER_SEED"

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _schedule(text: str) -> IterationSchedule:
    try:
        return IterationSchedule.parse(text)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _warn_power_of_two(n: int) -> None:
    if n >= 2 and n & (n - 1):
        print(f"warning: N={n} is not a power of two; no whole number of qubits has this many states",
              file=sys.stderr)


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _load_ensemble(text: str | None, n: int | None):
    if text is None:
        if n is None:
            raise ConfigurationError("need --n or an --ensemble that specifies n")
        return ControlledVariance(n)
    stripped = text.lstrip()
    if not stripped.startswith("{"):
        text = Path(text).read_text()
    return spec_from_json(text, n=n)


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_baseline(args) -> int:
    for n in args.sizes:
        _warn_power_of_two(n)
    rows = run_baseline(args.sizes, args.schedule, marked=args.marked)
    text = reporting.baseline_json(rows) if args.format == "json" else reporting.baseline_csv(rows)
    _emit(text, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    spec = _load_ensemble(args.ensemble, args.n)
    _warn_power_of_two(spec.n)
    seed = Seed(args.seed if args.seed is not None else _default_seed())
    config = SweepConfig(
        grover=GroverConfig(spec.n, args.marked, args.schedule),
        ensemble=spec,
        num_samples=args.samples,
        seed=seed,
        num_bins=args.bins,
        metric=args.metric,
    )
    summary = run_sweep(config, workers=args.workers)
    _emit(reporting.records_csv(summary), args.out)
    summary_path = args.summary
    if summary_path is None and args.out not in (None, "-"):
        summary_path = str(Path(args.out).with_suffix(".summary.json"))
    if summary_path is not None:
        _emit(reporting.summary_json(summary), summary_path)
    if args.plot is not None:
        _emit(reporting.sweep_svg(summary, axis=args.axis), args.plot)
    return EXIT_OK


def cmd_diffusion(args) -> int:
    _warn_power_of_two(args.n)
    _emit(reporting.diffusion_csv(build_diffusion_matrix(args.n)), args.out)
    return EXIT_OK


def cmd_markov(args) -> int:
    spec = _load_ensemble(args.ensemble, args.n)
    _warn_power_of_two(spec.n)
    seed = Seed(args.seed if args.seed is not None else _default_seed())
    rows = markov_experiment(spec, args.eps, args.samples, seed)
    text = reporting.markov_json(rows) if args.format == "json" else reporting.markov_csv(rows)
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="noisy-grover", description="Grover search with noisy initial states.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("baseline", help="success table for uniform starts")
    b.add_argument("--sizes", type=_int_list, default=[4, 8, 16, 32])
    b.add_argument("--schedule", type=_schedule, default=IterationSchedule.standard(),
                   help="paper | standard | fixed:K (default: standard)")
    b.add_argument("--marked", type=int, default=1)
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--out")
    b.set_defaults(func=cmd_baseline)

    s = sub.add_parser("sweep", help="Monte-Carlo sweep of success vs initial-state variance")
    s.add_argument("--n", type=int)
    s.add_argument("--marked", type=int, default=1)
    s.add_argument("--schedule", type=_schedule, default=IterationSchedule.standard())
    s.add_argument("--ensemble", help="inline JSON object or path to a JSON file")
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--bins", type=int, default=20)
    s.add_argument("--seed", type=int, help=f"master seed (default: ${SEED_ENV} or 0)")
    s.add_argument("--metric", choices=(PROBABILITY, AMPLITUDE), default=PROBABILITY)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", help="records CSV (default: stdout)")
    s.add_argument("--summary", help="summary JSON (default: <out>.summary.json when --out is a file)")
    s.add_argument("--plot", help="SVG scatter plot path")
    s.add_argument("--axis", choices=("ratio", "variance"), default="ratio", help="x axis of the plot")
    s.set_defaults(func=cmd_sweep)

    d = sub.add_parser("diffusion", help="dump the N x N diffusion matrix as CSV")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_diffusion)

    m = sub.add_parser("markov", help="empirical exceedance vs Markov bound")
    m.add_argument("--n", type=int)
    m.add_argument("--ensemble", help="inline JSON object or path to a JSON file")
    m.add_argument("--eps", type=_float_list, required=True)
    m.add_argument("--samples", type=int, default=10000)
    m.add_argument("--seed", type=int)
    m.add_argument("--format", choices=("csv", "json"), default="csv")
    m.add_argument("--out")
    m.set_defaults(func=cmd_markov)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (UsageError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
