"""Command-line surface: classify, scan, curvature, find-params, verify.

Flags accept exact rationals ("16/3", "0.05") so that region boundaries are
testable without floating fuzz.  Scans evaluate at the float value of each
grid node, which is exactly what the CSV records, so re-parsing a CSV row and
re-evaluating reproduces the stored value bit-for-bit.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import regions as rg
from .regions import classify, find_params_thm1, find_params_thm3, stilde_values, _AB_arrays
from .scalars import Params
from .verify import SUITES, run_suites

MAX_GRID_CELLS = 10_000_000


def parse_number(text: str):
    """Exact rational flag parsing: "16/3", "0.05", "-2" all stay exact."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    frac = Fraction(text)  # exact for decimal strings
    return int(frac) if frac.denominator == 1 else frac


def parse_range(text: str):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("ranges are lo:hi:step")
    lo, hi, step = (parse_number(s) for s in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("step must be positive")
    if hi < lo:
        raise argparse.ArgumentTypeError("hi must be >= lo")
    return lo, hi, step


def _fmt(v) -> str:
    return f"{float(v):.12g}"


def _threads() -> int:
    raw = os.environ.get("CGM_THREADS", "1")
    try:
        k = int(raw)
    except ValueError:
        return 1
    return max(k, 1)


@dataclass(frozen=True)
class ScanSpec:
    p_range: tuple
    q_range: tuple
    n: int
    c: Optional[object]
    predicate: str

    def axis_count(self, which: str) -> int:
        lo, hi, step = self.p_range if which == "p" else self.q_range
        return int(Fraction(hi - lo) / Fraction(step)) + 1

    def axis(self, which: str) -> list:
        lo, hi, step = self.p_range if which == "p" else self.q_range
        return [lo + k * step for k in range(self.axis_count(which))]


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    tol_scale: float = 1.0
    threads: int = 1


PREDICATES = ("gamma", "gamma_prime", "delta", "delta_prime", "scalar_sufficient", "vertical_positive")


def _cell_value(spec: ScanSpec, p: float, q: float) -> float:
    params = Params(p, q)
    if spec.predicate == "gamma":
        return 1.0 if classify(params, spec.n).in_gamma else 0.0
    if spec.predicate == "gamma_prime":
        return 1.0 if classify(params, spec.n).in_gamma_prime else 0.0
    if spec.predicate == "vertical_positive":
        return 1.0 if rg.vertical_positivity(params, spec.n) else 0.0
    if spec.predicate == "delta":
        v = classify(params, spec.n, spec.c).in_delta
        return math.nan if v is None else float(v)
    if spec.predicate == "delta_prime":
        v = classify(params, spec.n, spec.c).in_delta_prime
        return math.nan if v is None else float(v)
    if spec.predicate == "scalar_sufficient":
        return 1.0 if rg.scalar_pos_sufficient(params, spec.n, spec.c) is not None else 0.0
    raise ValueError(spec.predicate)


def run_scan(spec: ScanSpec, threads: int = 1) -> list[tuple[float, float, float]]:
    """Evaluate the scan grid in deterministic row-major order (p outer, q inner)."""
    if spec.axis_count("p") * spec.axis_count("q") > MAX_GRID_CELLS:
        raise ValueError("grid exceeds the 1e7 cell limit")
    p_vals = [float(v) for v in spec.axis("p")]
    q_vals = [float(v) for v in spec.axis("q")]

    def row(p: float) -> list[tuple[float, float, float]]:
        return [(p, q, _cell_value(spec, p, q)) for q in q_vals]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, p_vals))
    else:
        rows = [row(p) for p in p_vals]
    return [cell for r in rows for cell in r]


def write_scan_csv(path: str, spec: ScanSpec, cells) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("p,q,predicate,value\n")
        for p, q, v in cells:
            fh.write(f"{_fmt(p)},{_fmt(q)},{spec.predicate},{_fmt(v)}\n")


def write_scan_svg(path: str, spec: ScanSpec, cells) -> None:
    p_vals = sorted({c[0] for c in cells})
    q_vals = sorted({c[1] for c in cells})
    cell_px = 6
    legend_h = 24
    width = len(p_vals) * cell_px + 2
    height = len(q_vals) * cell_px + legend_h + 2
    pi = {v: i for i, v in enumerate(p_vals)}
    qi = {v: i for i, v in enumerate(q_vals)}
    dark, light = "#1f3a6e", "#e8ecf4"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        "<defs><pattern id=\"hatch\" width=\"4\" height=\"4\" patternUnits=\"userSpaceOnUse\">"
        "<path d=\"M0,4 L4,0\" stroke=\"#8a8a8a\" stroke-width=\"1\"/></pattern></defs>",
    ]
    for p, q, v in cells:
        x = pi[p] * cell_px + 1
        y = (len(q_vals) - 1 - qi[q]) * cell_px + 1  # q grows upward
        fill = "url(#hatch)" if math.isnan(v) else (dark if v > 0.5 else light)
        parts.append(f'<rect x="{x}" y="{y}" width="{cell_px}" height="{cell_px}" fill="{fill}"/>')
    ly = len(q_vals) * cell_px + 6
    parts.append(f'<rect x="2" y="{ly}" width="10" height="10" fill="{dark}"/>')
    parts.append(f'<text x="16" y="{ly + 9}" font-size="9">{spec.predicate}</text>')
    parts.append(f'<rect x="90" y="{ly}" width="10" height="10" fill="{light}"/>')
    parts.append(f'<text x="104" y="{ly + 9}" font-size="9">outside</text>')
    parts.append(f'<rect x="160" y="{ly}" width="10" height="10" fill="url(#hatch)"/>')
    parts.append(f'<text x="174" y="{ly + 9}" font-size="9">n/a</text>')
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args) -> int:
    params = Params(args.p, args.q)
    verdict = classify(params, args.n, args.c)
    payload = verdict.as_dict()
    payload["p"], payload["q"], payload["n"] = float(args.p), float(args.q), args.n
    if args.c is not None:
        payload["c"] = float(args.c)
        payload["scalar_at_zero"] = float(
            args.n * (args.n - 1) * (Fraction(args.c) + 2 * Fraction(args.p) + Fraction(args.q))
        )
    for key in ("in_gamma", "in_gamma_prime", "in_omega", "in_delta", "in_delta_prime",
                "gamma_component", "scalar_condition"):
        print(f"{key} = {payload[key]}")
    if "scalar_at_zero" in payload:
        print(f"scalar_at_zero = {_fmt(payload['scalar_at_zero'])}")
    print(json.dumps(payload, default=str))
    return 0


def cmd_scan(args) -> int:
    spec = ScanSpec(args.p_range, args.q_range, args.n, args.c, args.predicate)
    config = RunConfig(threads=_threads())
    if spec.predicate in ("delta", "delta_prime", "scalar_sufficient") and spec.c is None:
        print("error: this predicate needs --c", file=sys.stderr)
        return 2
    try:
        cells = run_scan(spec, config.threads)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        write_scan_csv(args.csv, spec, cells)
        if args.svg:
            write_scan_svg(args.svg, spec, cells)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {len(cells)} cells to {args.csv}" + (f" and {args.svg}" if args.svg else ""))
    return 0


def cmd_curvature(args) -> int:
    params = Params(args.p, args.q)
    n, c = args.n, float(args.c)
    t_max = float(args.t_max)
    q = float(args.q)
    if q < 0 and t_max >= -1.0 / q:
        t_max = (1 - 1e-6) * (-1.0 / q)
        print(f"warning: t-max clipped to {t_max:.9g} (ball-bundle boundary)", file=sys.stderr)
    t = np.linspace(0.0, t_max, args.samples)
    p = float(args.p)
    w = 1.0 / (1.0 + t)
    A, B = _AB_arrays(params, t)
    k_hh = c - 0.75 * c * c * w**p * t
    k_hv = 0.25 * c * c * w**p * t
    k_vv_u = (1.0 + t) ** p * (A * t + B) / (1.0 + q * t)
    k_vv_perp = (1.0 + t) ** p * B
    k_vv_min = np.minimum(k_vv_u, k_vv_perp) if n >= 3 else k_vv_u
    s = stilde_values(params, n, c, t)
    lines = ["t,K_hh_max_e,K_hv_max_e,K_vv_min,K_vv_U,scalar"]
    for i in range(t.size):
        lines.append(
            ",".join(_fmt(v) for v in (t[i], k_hh[i], k_hv[i], k_vv_min[i], k_vv_u[i], s[i]))
        )
    text = "\n".join(lines) + "\n"
    if args.csv:
        try:
            with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"I/O error: {exc}", file=sys.stderr)
            return 3
    else:
        sys.stdout.write(text)
    return 0


def cmd_find_params(args) -> int:
    if args.nonneg_q:
        result = find_params_thm3(args.n, args.c)
        route = "nonnegative-q coefficient search"
    else:
        result = find_params_thm1(args.n, args.c)
        route = "minimal-mu grid search"
    p, q = float(result.params.p), float(result.params.q)
    print(f"route = {route}")
    print(f"p = {_fmt(p)}")
    print(f"q = {_fmt(q)}" + ("  (ball-bundle metric: q < 0)" if q < 0 else ""))
    print(f"search = {result.certificate.get('path', '')}")
    print(f"certificate_min_scalar = {_fmt(result.certificate['min_scalar_on_grid'])}")
    if "G_coefficients" in result.certificate:
        coeffs = ", ".join(_fmt(v) for v in result.certificate["G_coefficients"])
        print(f"G_coefficients = [{coeffs}]")
    payload = {"p": p, "q": q, "route": route}
    payload.update({k: v for k, v in result.certificate.items()})
    print(json.dumps(payload, default=str))
    return 0


def cmd_verify(args) -> int:
    config = RunConfig(seed=args.seed, tol_scale=args.tol_scale, threads=_threads())
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(names, seed=config.seed, tol_scale=config.tol_scale)
    for res in results:
        print(json.dumps(res.as_dict()))
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cgm",
        description="Curvature toolkit for the h_{p,q} family of tangent-bundle metrics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cl = sub.add_parser("classify", help="region memberships of one (p, q) point")
    cl.add_argument("--p", type=parse_number, required=True)
    cl.add_argument("--q", type=parse_number, required=True)
    cl.add_argument("--n", type=int, required=True)
    cl.add_argument("--c", type=parse_number, default=None)
    cl.set_defaults(func=cmd_classify)

    sc = sub.add_parser("scan", help="rasterize a region predicate over a (p, q) grid")
    sc.add_argument("--p-range", type=parse_range, required=True, metavar="LO:HI:STEP")
    sc.add_argument("--q-range", type=parse_range, required=True, metavar="LO:HI:STEP")
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--c", type=parse_number, default=None)
    sc.add_argument("--predicate", choices=PREDICATES, required=True)
    sc.add_argument("--csv", required=True)
    sc.add_argument("--svg", default=None)
    sc.set_defaults(func=cmd_scan)

    cu = sub.add_parser("curvature", help="curvature profiles along the fibre radius")
    cu.add_argument("--p", type=parse_number, required=True)
    cu.add_argument("--q", type=parse_number, required=True)
    cu.add_argument("--n", type=int, required=True)
    cu.add_argument("--c", type=parse_number, required=True)
    cu.add_argument("--t-max", type=parse_number, default=4)
    cu.add_argument("--samples", type=int, default=200)
    cu.add_argument("--csv", default=None)
    cu.set_defaults(func=cmd_curvature)

    fp = sub.add_parser("find-params", help="search parameters with positive scalar curvature")
    fp.add_argument("--n", type=int, required=True)
    fp.add_argument("--c", type=parse_number, required=True)
    fp.add_argument("--nonneg-q", action="store_true")
    fp.set_defaults(func=cmd_find_params)

    vf = sub.add_parser("verify", help="run the invariant suites")
    vf.add_argument("--suite", choices=list(SUITES) + ["all"], default="all")
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--tol-scale", type=float, default=1.0)
    vf.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "n", 2) < 2:
        print("error: n >= 2 required", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
