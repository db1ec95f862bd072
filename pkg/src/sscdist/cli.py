"""Command-line entry point: one subcommand per experiment plus ``sample``.

Examples
--------
    sscdist table1 --out table1.csv --seed 7
    sscdist table2 --lambda=-0.9 --rho=-0.9 --replicates 200 --out t2.csv
    sscdist ev-convergence --sizes 100,10000 --replicates 2000
    sscdist sample --lambda 0.9 --rho=-0.9 --n 1000 --out draws.txt

Comma lists that start with a negative number need the ``--flag=value``
form (``--rho=-0.9,0.9``), as usual with argparse.  Defaults can also
come from a ``key=value`` config file (one pair per line, ``#``
comments); explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import sys

from .errors import SscError
from .harness import (
    EXPERIMENTS,
    SimConfig,
    default_config,
    run_experiment,
    write_csv,
)
from .model import SscParams
from .sampling import (
    BRACKET_BISECTION,
    DIGIT_REFINEMENT,
    InversionConfig,
    sample,
    save_batch,
)

_EXPERIMENT_COMMANDS = {name.replace("_", "-"): name for name in EXPERIMENTS}


def read_config(path) -> dict[str, str]:
    """Parse a simple key=value file; later lines win."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise SscError(f"{path}:{lineno}: expected key=value, got {text!r}")
            key, value = text.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def _csv_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _csv_ints(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key=value file with defaults for the flags")
    parser.add_argument("--lambda", dest="lam", type=str,
                        help="comma-separated skewness weights (sine factor)")
    parser.add_argument("--rho", dest="rho", type=str,
                        help="comma-separated concentration weights (cosine factor)")
    parser.add_argument("--sizes", type=str, help="comma-separated sample sizes")
    parser.add_argument("--replicates", type=int, help="replicates per configuration")
    parser.add_argument("--seed", type=int, help="master seed (default 20260809)")
    parser.add_argument("--decimals", type=int,
                        help="digit-refinement inversion with this many decimals")
    parser.add_argument("--tol", type=float,
                        help="bracket-bisection inversion tolerance (default 1e-10)")
    parser.add_argument("--out", type=str, help="output file path")


def _merged(args: argparse.Namespace) -> dict[str, str]:
    merged: dict[str, str] = {}
    if args.config:
        merged.update(read_config(args.config))
    for key in ("lam", "rho", "sizes", "replicates", "seed", "decimals", "tol",
                "out", "n"):
        value = getattr(args, key, None)
        if value is not None:
            file_key = {"lam": "lambda"}.get(key, key)
            merged[file_key] = str(value)
    return merged


def _inversion_from(merged: dict[str, str]) -> InversionConfig:
    if "decimals" in merged:
        return InversionConfig(mode=DIGIT_REFINEMENT, nbr_dec=int(merged["decimals"]))
    if "tol" in merged:
        return InversionConfig(mode=BRACKET_BISECTION, abs_tol=float(merged["tol"]))
    return InversionConfig()


def _experiment_config(name: str, merged: dict[str, str]) -> SimConfig:
    cfg = default_config(name)
    lams = _csv_floats(merged["lambda"]) if "lambda" in merged else None
    rhos = _csv_floats(merged["rho"]) if "rho" in merged else None
    if (lams is None) != (rhos is None):
        raise SscError("--lambda and --rho must be given together")
    grid = cfg.param_grid
    if lams is not None:
        if len(lams) != len(rhos):
            raise SscError("--lambda and --rho need the same number of values")
        grid = tuple(zip(lams, rhos))
    return SimConfig(
        experiment=name,
        param_grid=grid,
        sizes=tuple(_csv_ints(merged["sizes"])) if "sizes" in merged else cfg.sizes,
        replicates=int(merged.get("replicates", cfg.replicates)),
        seed=int(merged.get("seed", cfg.seed)),
        inversion=_inversion_from(merged),
        output_path=merged.get("out", f"{name}.csv"),
    )


def _run_experiment_command(name: str, args: argparse.Namespace) -> int:
    cfg = _experiment_config(name, _merged(args))
    report = run_experiment(cfg)
    write_csv(report, cfg.output_path)
    print(f"wrote {cfg.output_path} ({len(report.rows)} rows)")
    return 0


def _run_sample_command(args: argparse.Namespace) -> int:
    merged = _merged(args)
    for key in ("lambda", "rho"):
        if key not in merged:
            raise SscError(f"sample requires --{key}")
    lam = float(merged["lambda"])
    rho = float(merged["rho"])
    n = int(merged.get("n", 1000))
    seed = int(merged.get("seed", 20260809))
    batch = sample(SscParams(skew=lam, conc=rho), n, seed, _inversion_from(merged))
    out = merged.get("out", "sample.txt")
    save_batch(batch, out)
    print(f"wrote {out} ({n} values)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sscdist",
        description="Sine-skewed cardioid distribution experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in _EXPERIMENT_COMMANDS:
        p = sub.add_parser(command, help=f"run the {command} experiment")
        _add_common(p)
    p = sub.add_parser("sample", help="draw a sample and write one value per line")
    _add_common(p)
    p.add_argument("--n", type=int, help="sample size (default 1000)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sample":
            return _run_sample_command(args)
        return _run_experiment_command(_EXPERIMENT_COMMANDS[args.command], args)
    except SscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
