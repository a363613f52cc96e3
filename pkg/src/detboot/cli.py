"""Command line front end.

    detboot density  --input sample.txt --method efron-mean --grid-size 1024
    detboot quantile --input sample.txt --method moving-block --block-length 5 --alpha 0.05,0.95
    detboot cdf      --input sample.txt --method custom-mixture --coeff 1 --m 5 --format csv
    detboot compare  --input sample.txt --method custom-mixture --coeffs 1,1 --replicates 100000
    detboot bench    --input sample.txt --method custom-mixture --coeff 1 --m 5 --grid-size 1000,2000,4000
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .adapters import efron_mean, moving_block
from .bench import bench_spec
from .charfn import GridConfig
from .distribution import from_sample, support_bounds
from .errors import DetbootError, EnumerationTooLarge, ParseError
from .inversion import quantiles
from .mixture import MixtureSpec, compute_distribution
from .oracle import brute_force_cdf, ks_distance, monte_carlo_cdf

log = logging.getLogger("detboot")

METHODS = ("efron-mean", "moving-block", "custom-mixture")
DEFAULT_ALPHAS = (0.025, 0.05, 0.5, 0.95, 0.975)


def parse_sample_file(path) -> list[float]:
    """One number per line; blank lines and ``#`` comments are skipped."""
    path = Path(path)
    values = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(float(line))
            except ValueError:
                raise ParseError(str(path), lineno, line) from None
    return values


@dataclass
class RunRequest:
    input: str
    method: str
    block_length: int | None = None
    coeffs: list[float] | None = None
    coeff: float | None = None
    m: int | None = None
    grid_size: int = 1024
    pad: float = 1.0
    alphas: list[float] = field(default_factory=lambda: list(DEFAULT_ALPHAS))
    format: str = "json"
    output: str | None = None
    workers: int = 1

    def method_echo(self) -> dict:
        echo = {"name": self.method}
        if self.method == "moving-block":
            echo["block_length"] = self.block_length
        elif self.method == "custom-mixture":
            echo["coeffs"] = self.coefficients()
        return echo

    def coefficients(self) -> list[float]:
        if self.coeffs is not None:
            return list(self.coeffs)
        return [float(self.coeff)] * int(self.m)


def build_spec(req: RunRequest, values: list[float]) -> MixtureSpec:
    if req.method == "efron-mean":
        return efron_mean(values)
    if req.method == "moving-block":
        return moving_block(values, req.block_length)[0]
    return MixtureSpec.iid(from_sample(values), req.coefficients())


def run(req: RunRequest) -> dict:
    """Compute the result document for a request."""
    t0 = time.perf_counter()
    values = parse_sample_file(req.input)
    spec = build_spec(req, values)
    density, cdf = compute_distribution(spec, GridConfig(req.grid_size, req.pad), workers=req.workers)
    support = support_bounds(spec)
    doc = {
        "method": req.method_echo(),
        "n": len(values),
        "m": spec.m,
        "support": {"z_L": support.z_L, "z_U": support.z_U, "T_Z": support.T_Z},
        "z_L": density.z_L,
        "T": density.T,
        "N": density.N,
        "pad": req.pad,
        "bins": density.bins.tolist(),
        "cum": cdf.cum.tolist(),
        "quantiles": {repr(a): z for a, z in quantiles(cdf, req.alphas).items()},
    }
    doc["timing"] = {"seconds": time.perf_counter() - t0}
    return doc


def read_result(path) -> dict:
    """Load a JSON result document; quantile keys come back as floats."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    doc["quantiles"] = {float(k): v for k, v in doc["quantiles"].items()}
    return doc


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _grid_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["bin_left", "bin_right", "density_mass", "cdf"])
    width = doc["T"] / doc["N"]
    for i, (b, c) in enumerate(zip(doc["bins"], doc["cum"])):
        w.writerow([_fmt(doc["z_L"] + i * width), _fmt(doc["z_L"] + (i + 1) * width), _fmt(b), _fmt(c)])
    return buf.getvalue()


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out or any(v < 1 for v in out):
        raise argparse.ArgumentTypeError("grid sizes must be positive")
    return out


def _alpha_list(text: str) -> list[float]:
    out = _float_list(text)
    if not out or any(not 0 < a < 1 for a in out):
        raise argparse.ArgumentTypeError("every alpha must lie in (0, 1)")
    return out


def _pad(text: str) -> float:
    p = float(text)
    if not p >= 1:
        raise argparse.ArgumentTypeError("pad must be >= 1")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="detboot", description="Deterministic bootstrap distributions.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="sample file, one value per line")
    common.add_argument("--method", required=True, choices=METHODS)
    common.add_argument("--block-length", type=int)
    common.add_argument("--coeffs", type=_float_list, help="a1,a2,... for custom-mixture")
    common.add_argument("--coeff", type=float, help="shared coefficient for custom-mixture")
    common.add_argument("--m", type=int, help="number of components with --coeff")
    common.add_argument("--pad", type=_pad, default=1.0, help="period multiplier T = pad * T_Z")
    common.add_argument("--alpha", type=_alpha_list, default=list(DEFAULT_ALPHAS))
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output")
    common.add_argument("--workers", type=int, default=1)

    for name, help_text in (
        ("density", "binned density"),
        ("cdf", "cumulative distribution"),
        ("quantile", "quantiles at --alpha levels"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--grid-size", type=int, default=1024)

    p = sub.add_parser("compare", parents=[common], help="KS distance to Monte Carlo and enumeration")
    p.add_argument("--grid-size", type=int, default=1024)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replicates", type=int, default=100_000)

    p = sub.add_parser("bench", parents=[common], help="time forward, inverse and MC stages")
    p.add_argument("--grid-size", type=_int_list, default=[1024])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replicates", type=int, default=10_000)
    p.add_argument("--repeat", type=int, default=3)
    return parser


def _request(args) -> RunRequest:
    grid = args.grid_size
    return RunRequest(
        input=args.input,
        method=args.method,
        block_length=args.block_length,
        coeffs=args.coeffs,
        coeff=args.coeff,
        m=args.m,
        grid_size=grid if isinstance(grid, int) else grid[0],
        pad=args.pad,
        alphas=args.alpha,
        format=args.format,
        output=args.output,
        workers=max(1, args.workers),
    )


def _validate(parser, args) -> None:
    if args.method == "moving-block" and args.block_length is None:
        parser.error("--method moving-block needs --block-length")
    if args.method == "custom-mixture":
        if args.coeffs is None and (args.coeff is None or args.m is None):
            parser.error("--method custom-mixture needs --coeffs or both --coeff and --m")
        if args.coeffs is not None and not args.coeffs:
            parser.error("--coeffs is empty")
        if args.coeffs is None and args.m < 1:
            parser.error("--m must be positive")
    grids = args.grid_size if isinstance(args.grid_size, list) else [args.grid_size]
    if any(g < 1 for g in grids):
        parser.error("--grid-size must be positive")


def _cmd_run(args, req: RunRequest) -> None:
    doc = run(req)
    if req.format == "json":
        _emit(json.dumps(doc, indent=1) + "\n", req.output)
    elif args.command == "quantile":
        _emit(_rows_csv(["alpha", "z"], [(float(a), z) for a, z in doc["quantiles"].items()]), req.output)
    else:
        _emit(_grid_csv(doc), req.output)


def _cmd_compare(args, req: RunRequest) -> None:
    spec = build_spec(req, parse_sample_file(req.input))
    cfg = GridConfig(req.grid_size, req.pad)
    _, cdf = compute_distribution(spec, cfg, workers=req.workers)
    ks_mc = ks_distance(cdf, monte_carlo_cdf(spec, args.replicates, args.seed, workers=req.workers))
    try:
        ks_bf = ks_distance(cdf, brute_force_cdf(spec, cfg))
    except EnumerationTooLarge as exc:
        log.info("brute force skipped: %s", exc)
        ks_bf = None
    result = {
        "method": req.method_echo(),
        "N": req.grid_size,
        "pad": req.pad,
        "replicates": args.replicates,
        "seed": args.seed,
        "ks_pipeline_vs_mc": ks_mc,
        "ks_pipeline_vs_brute_force": ks_bf,
    }
    if req.format == "json":
        _emit(json.dumps(result, indent=1) + "\n", req.output)
    else:
        rows = [("ks_pipeline_vs_mc", ks_mc), ("ks_pipeline_vs_brute_force", "skipped" if ks_bf is None else ks_bf)]
        _emit(_rows_csv(["metric", "value"], rows), req.output)


def _cmd_bench(args, req: RunRequest) -> None:
    spec = build_spec(req, parse_sample_file(req.input))
    rows = [
        bench_spec(spec, GridConfig(N, req.pad), args.replicates, seed=args.seed, repeat=args.repeat, workers=req.workers)
        for N in args.grid_size
    ]
    if req.format == "json":
        _emit(json.dumps([r.as_dict() for r in rows], indent=1) + "\n", req.output)
    else:
        header = ["n", "m", "N", "B", "t_forward", "t_ifft", "t_mc"]
        _emit(_rows_csv(header, [[getattr(r, h) for h in header] for r in rows]), req.output)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    _validate(parser, args)
    req = _request(args)
    try:
        if args.command == "compare":
            _cmd_compare(args, req)
        elif args.command == "bench":
            _cmd_bench(args, req)
        else:
            _cmd_run(args, req)
    except (DetbootError, OSError) as exc:
        print(f"detboot: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
