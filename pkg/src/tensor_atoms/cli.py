"""Command-line front end: ``tensor-atoms {dim,lr,identity,scan,rmt,sample}``.

Exit codes: 0 success, 2 input error, 3 enumeration cap exceeded,
4 a verification or statistical test failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Sequence

from .core import ValidationError, Weight, format_weight, parse_weight
from .lr import CapExceeded, default_cap

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_FAILED = 4


@dataclass
class RunConfig:
    n: int | None = None
    weights: list[str] = field(default_factory=list)
    cap: int = field(default_factory=default_cap)
    seed: int = 0
    out: str | None = None
    format: str = "json"
    significance: float = 1e-3
    workers: int = 1

    def __post_init__(self) -> None:
        if self.cap <= 0:
            raise ValidationError("cap must be positive")
        if self.format not in ("json", "csv"):
            raise ValidationError(f"format must be json or csv, not {self.format!r}")
        if not 0 < self.significance < 1:
            raise ValidationError("significance must lie in (0, 1)")
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")

    @classmethod
    def load(cls, path: str | None, overrides: dict) -> RunConfig:
        data: dict = {}
        if path:
            try:
                data = json.loads(Path(path).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ValidationError(f"cannot read config {path}: {exc}") from None
            known = {f.name for f in fields(cls)}
            unknown = set(data) - known
            if unknown:
                raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        data.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**data)


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _weight_arg(positional: str | None, flag: str | None, name: str, n: int | None) -> Weight:
    text = positional if positional is not None else flag
    if text is None:
        raise CliError(f"missing weight {name}")
    w = parse_weight(text)
    if n is not None and w.n != n:
        raise CliError(f"{name}={text} has {w.n} parts but --n={n}")
    return w


def _normalized_info(**weights: Weight) -> dict:
    out = {}
    for name, w in weights.items():
        w0, p = w.normalized()
        out[name] = {"input": list(w.parts), "normalized": list(w0.parts), "shift": p}
    return out


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def cmd_dim(args, cfg: RunConfig) -> int:
    from .dims import dim_by_counting

    lam = _weight_arg(args.weight, args.lam, "lambda", cfg.n)
    lam0, p = lam.normalized()
    _note(f"lambda={format_weight(lam)} normalized={format_weight(lam0)} (shift {p})")
    _emit(cfg, str(dim_by_counting(lam)))
    return EXIT_OK


def cmd_lr(args, cfg: RunConfig) -> int:
    from .lr import lr_measure

    lam = _weight_arg(args.weight, args.lam, "lambda", cfg.n)
    mu = _weight_arg(args.weight2, args.mu, "mu", cfg.n)
    if lam.n != mu.n:
        raise CliError(f"rank mismatch: {lam.n} vs {mu.n}")
    dec = lr_measure(lam, mu)
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["nu", "c", "atom_num", "atom_den", "atom_approx"])
        for t in dec.terms:
            w.writerow([format_weight(t.nu), t.c, t.atom.numerator, t.atom.denominator,
                        f"{float(t.atom):.12g}"])
        _note(json.dumps(_normalized_info(**{"lambda": lam, "mu": mu})))
        _emit(cfg, buf.getvalue())
    else:
        payload = dec.to_json()
        if not args.measure:
            for t in payload["terms"]:
                t.pop("atom")
        payload["normalization"] = _normalized_info(**{"lambda": lam, "mu": mu})
        _emit(cfg, json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_identity(args, cfg: RunConfig) -> int:
    from .measure import max_convolution, nu1_from_lr

    lam = _weight_arg(args.weight, args.lam, "lambda", cfg.n)
    mu = _weight_arg(args.weight2, args.mu, "mu", cfg.n)
    if lam.n != mu.n:
        raise CliError(f"rank mismatch: {lam.n} vs {mu.n}")
    left = max_convolution(lam, mu, cfg.cap)
    right = nu1_from_lr(lam, mu)
    equal = left == right
    if cfg.format == "csv":
        text = "# max_convolution\n" + left.to_csv() + "# nu1_from_lr\n" + right.to_csv()
        text += f"# verdict,{'equal' if equal else 'unequal'}\n"
    else:
        text = json.dumps({
            "lambda": list(lam.parts),
            "mu": list(mu.parts),
            "normalization": _normalized_info(**{"lambda": lam, "mu": mu}),
            "max_convolution": left.to_json(),
            "nu1_from_lr": right.to_json(),
            "verdict": "equal" if equal else "unequal",
        }, indent=2)
    _emit(cfg, text)
    return EXIT_OK if equal else EXIT_FAILED


def cmd_scan(args, cfg: RunConfig) -> int:
    from .bounds import firstrow_scan, reports_to_csv, saturation_scan, theorem_scan

    n = cfg.n
    if n is None or n < 1:
        raise CliError("scan needs --n")
    if args.saturation:
        if n < 2:
            raise CliError("saturation scan needs n >= 2")
        rows = saturation_scan(n, args.nmax)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "N", "M", "support_size", "stated_count", "support_matches",
                    "all_multiplicities_one", "max_atom_num", "max_atom_den",
                    "max_atom_bound_holds", "ratio_num", "ratio_den"])
        for r in rows:
            w.writerow([r.n, r.N, r.M, r.support_size, r.stated_count, int(r.support_matches),
                        int(r.all_multiplicities_one), r.max_atom.numerator,
                        r.max_atom.denominator, int(r.max_atom_bound_holds),
                        r.report.ratio.numerator, r.report.ratio.denominator])
        ok = all(r.support_matches and r.all_multiplicities_one and r.max_atom_bound_holds
                 for r in rows)
        sup = max(r.report.ratio for r in rows)
        text = buf.getvalue()
        summary = {"scan": "saturation", "n": n, "nmax": args.nmax, "rows": len(rows),
                   "all_checks_pass": ok, "max_ratio": f"{sup.numerator}/{sup.denominator}"}
        if cfg.format == "json":
            text = json.dumps({**summary, "csv": text}, indent=2)
        _emit(cfg, text)
        _note(json.dumps(summary))
        return EXIT_OK if ok else EXIT_FAILED

    if args.theorem:
        result = theorem_scan(n, args.max_gap, cfg.workers)
        kind, label = "theorem", "C"
    else:
        if n < 2:
            raise CliError("first-row scan needs n >= 2")
        result = firstrow_scan(n, args.max_gap, cfg.workers, k=args.k)
        kind, label = "firstrow", "D"
    sup = result.supremum
    wit = result.witness
    summary = {
        "scan": kind, "n": n, "max_gap": args.max_gap,
        f"empirical_{label}_{n}": f"{sup.numerator}/{sup.denominator}",
        "approx": float(sup),
        "witness": None if wit is None else {
            "lambda": list(wit.lam.parts),
            "mu_or_k": list(wit.second.parts) if isinstance(wit.second, Weight) else wit.second,
            "argmax": list(wit.witness.parts) if isinstance(wit.witness, Weight) else wit.witness,
        },
    }
    text = reports_to_csv(result.reports)
    if cfg.format == "json":
        text = json.dumps({**summary, "csv": text}, indent=2)
    _emit(cfg, text)
    line = f"empirical {label}_{n} >= {sup.numerator}/{sup.denominator} (~{float(sup):.6g})"
    if cfg.out:
        print(line)
    else:
        _note(line)
    return EXIT_OK


def cmd_rmt(args, cfg: RunConfig) -> int:
    from .rmt import corollary_experiment

    def spectrum(text: str | None, name: str) -> list[float]:
        if text is None:
            raise CliError(f"missing spectrum {name}")
        try:
            return [float(t) for t in text.split(",")]
        except ValueError:
            raise CliError(f"cannot parse spectrum {text!r}") from None

    spec_a = spectrum(args.spec_a if args.spec_a is not None else args.lam, "A")
    spec_b = spectrum(args.spec_b if args.spec_b is not None else args.mu, "B")
    if len(spec_a) != len(spec_b):
        raise CliError("spectra must have the same size")
    report = corollary_experiment(spec_a, spec_b, args.samples, cfg.seed, cfg.significance,
                                  keep_samples=args.dump_samples is not None)
    if args.dump_samples:
        Path(args.dump_samples).write_text(report.samples_csv())
    _emit(cfg, json.dumps(report.to_json(), indent=2))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_sample(args, cfg: RunConfig) -> int:
    from .measure import sample_uniform_patterns

    lam = _weight_arg(args.weight, args.lam, "lambda", cfg.n)
    if args.count < 0:
        raise CliError("count must be non-negative")
    pats = list(sample_uniform_patterns(lam, args.count, cfg.seed, cfg.cap))
    _note(json.dumps(_normalized_info(**{"lambda": lam})))
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "rows"])
        for i, p in enumerate(pats):
            w.writerow([i, json.dumps(p.to_json())])
        _emit(cfg, buf.getvalue())
    else:
        _emit(cfg, json.dumps([p.to_json() for p in pats]))
    return EXIT_OK


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with RunConfig defaults")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--lambda", dest="lam", default=None)
    p.add_argument("--mu", default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--significance", type=float, default=None)
    p.add_argument("--workers", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tensor-atoms",
                                     description="Exact Littlewood-Richardson measure toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="dimension of an irreducible GL(n) representation")
    p.add_argument("weight", nargs="?")
    _common(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("lr", help="Littlewood-Richardson decomposition of lambda x mu")
    p.add_argument("weight", nargs="?")
    p.add_argument("weight2", nargs="?")
    p.add_argument("--measure", action="store_true", help="include exact atoms")
    _common(p)
    p.set_defaults(func=cmd_lr)

    p = sub.add_parser("identity", help="compare the law of nu_1 with the max-convolution")
    p.add_argument("weight", nargs="?")
    p.add_argument("weight2", nargs="?")
    _common(p)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("scan", help="grid scans of the atom bounds")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--theorem", action="store_true")
    mode.add_argument("--firstrow", action="store_true")
    mode.add_argument("--saturation", action="store_true")
    p.add_argument("--max-gap", type=int, default=6)
    p.add_argument("--nmax", type=int, default=20)
    _common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("rmt", help="Monte-Carlo corner-process experiment")
    p.add_argument("spec_a", nargs="?")
    p.add_argument("spec_b", nargs="?")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--dump-samples", default=None, help="CSV path for raw samples")
    _common(p)
    p.set_defaults(func=cmd_rmt)

    p = sub.add_parser("sample", help="uniform Gelfand-Tsetlin patterns")
    p.add_argument("weight", nargs="?")
    p.add_argument("--count", type=int, default=1)
    _common(p)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        overrides = {
            "n": args.n, "seed": args.seed, "cap": args.cap, "out": args.out,
            "format": args.format, "significance": args.significance, "workers": args.workers,
        }
        cfg = RunConfig.load(args.config, overrides)
        return args.func(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
