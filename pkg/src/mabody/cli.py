"""Command-line interface.

Subcommands:

* ``bstar``   - maximal tangency scale and witness ellipse at one (x, y)
* ``density`` - Monge-Ampere density on an interior grid (CSV, optional SVG)
* ``mass``    - total density mass vs the (2 pi)^n target (single-line JSON)
* ``verify``  - named invariant suites with TAP-style output

Exit codes: 0 success, 1 check failure, 2 parse error or unknown suite,
3 violated precondition (x not interior, y zero, asymmetric body), 4
unwritable output path.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .body import load_body
from .config import Config
from .ellipse import bstar
from .errors import (BodyParseError, MabodyError, NotOriginCentered,
                     NotSymmetric, XNotInterior, ZeroDirection)
from .extremal import density_field, total_mass
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_OUTPUT = 4


def _parse_csv_vector(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",")], dtype=float)
    except ValueError as exc:
        raise BodyParseError(f"not a comma-separated vector: {text!r}") from exc


def _build_config(args) -> Config:
    cfg = Config.from_env()
    overrides = {}
    if getattr(args, "tol", None) is not None:
        overrides["bisection_rel_tol"] = args.tol
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "threads", None) is not None:
        overrides["threads"] = args.threads
    if overrides:
        cfg = cfg.replace(**overrides)
    if getattr(args, "fast", False):
        cfg = cfg.fast()
    return cfg


def _open_out(path: str):
    try:
        return open(path, "w", encoding="utf-8", newline="\n")
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        sys.exit(EXIT_OUTPUT)


_SVG_STOPS = np.array([
    (0.267, 0.005, 0.329),
    (0.283, 0.141, 0.458),
    (0.254, 0.265, 0.530),
    (0.207, 0.372, 0.553),
    (0.164, 0.471, 0.558),
    (0.128, 0.567, 0.551),
    (0.135, 0.659, 0.518),
    (0.267, 0.749, 0.441),
    (0.478, 0.821, 0.318),
    (0.741, 0.873, 0.150),
    (0.993, 0.906, 0.144),
])


def _color(t: float) -> str:
    """Map t in [0, 1] to a hex color via linear stops."""
    t = min(max(t, 0.0), 1.0) * (len(_SVG_STOPS) - 1)
    i = min(int(t), len(_SVG_STOPS) - 2)
    frac = t - i
    rgb = (1.0 - frac) * _SVG_STOPS[i] + frac * _SVG_STOPS[i + 1]
    return "#%02x%02x%02x" % tuple(int(round(255 * c)) for c in rgb)


def write_density_svg(field, path: str, clip_percentile: float = 98.0,
                      size: int = 512):
    """Planar heatmap of the density samples; values are clipped at the given
    percentile so the boundary blow-up does not wash out the interior."""
    if field.points.shape[1] != 2:
        raise MabodyError("SVG heatmap requires a planar body")
    pts, vals = field.points, field.values
    hx, hy = field.spacing
    lo = pts.min(axis=0) - 0.5 * field.spacing
    hi = pts.max(axis=0) + 0.5 * field.spacing
    span = hi - lo
    scale = size / max(span)
    w, h = span * scale
    vmax = float(np.percentile(vals, clip_percentile))
    vmin = float(np.min(vals))
    denom = max(vmax - vmin, 1e-300)
    fh = _open_out(path)
    with fh:
        fh.write(f'<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1f}" '
                 f'height="{h:.1f}" viewBox="0 0 {w:.1f} {h:.1f}">\n')
        fh.write(f'<rect width="{w:.1f}" height="{h:.1f}" fill="white"/>\n')
        for (px, py), v in zip(pts, vals):
            cx = (px - 0.5 * hx - lo[0]) * scale
            cy = (hi[1] - py - 0.5 * hy) * scale
            fh.write(f'<rect x="{cx:.2f}" y="{cy:.2f}" '
                     f'width="{hx * scale:.2f}" height="{hy * scale:.2f}" '
                     f'fill="{_color((v - vmin) / denom)}"/>\n')
        fh.write("</svg>\n")


# -- subcommands ---------------------------------------------------------

def cmd_bstar(args) -> int:
    cfg = _build_config(args)
    K = load_body(args.body)
    x = _parse_csv_vector(args.x)
    y = _parse_csv_vector(args.y)
    res = bstar(K, x, y, cfg, method=args.method)
    out = {
        "bstar": res.bstar,
        "delta_b": 1.0 / res.bstar,
        "witness_a": res.witness.a.tolist(),
        "witness_b": res.witness.b,
        "iterations": res.iterations,
        "feasibility_residual": res.feasibility_residual,
    }
    text = json.dumps(out)
    if args.out:
        with _open_out(args.out) as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK


def cmd_density(args) -> int:
    cfg = _build_config(args)
    K = load_body(args.body)
    field = density_field(K, cfg, grid=args.grid,
                          clearance=args.margin)
    out = args.out or "density.csv"
    # probe writability first so a bad path fails before the SVG
    with _open_out(out):
        pass
    field.to_csv(out)
    if args.svg:
        write_density_svg(field, args.svg)
    print(f"wrote {len(field.points)} samples to {out} "
          f"(mass {field.mass:.6f})")
    return EXIT_OK


def cmd_mass(args) -> int:
    cfg = _build_config(args)
    K = load_body(args.body)
    margins = (2.0 * args.margin, args.margin) if args.margin else None
    rep = total_mass(K, cfg, grid=args.grid, margins=margins)
    text = rep.to_json()
    if args.out:
        with _open_out(args.out) as fh:
            fh.write(text + "\n")
    print(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; "
              f"choose from {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_PARSE
    cfg = _build_config(args)
    results = run_suite(args.suite, cfg, fast=args.fast)
    print(f"1..{len(results)}")
    failures = 0
    for i, (label, ok, detail) in enumerate(results, start=1):
        if ok:
            print(f"ok {i} - {label} # {detail}")
        else:
            failures += 1
            print(f"not ok {i} - {label} # {detail}")
    if failures:
        print(f"# {failures}/{len(results)} checks failed")
        return EXIT_FAIL
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, body_required: bool = True):
    p.add_argument("--body", required=body_required,
                   help="path to a body description (JSON)")
    p.add_argument("--grid", type=int, default=None, help="grid resolution")
    p.add_argument("--margin", type=float, default=None,
                   help="boundary clearance margin")
    p.add_argument("--tol", type=float, default=None,
                   help="relative tolerance for the bisection solver")
    p.add_argument("--seed", type=int, default=None, help="RNG seed")
    p.add_argument("--threads", type=int, default=None, help="worker threads")
    p.add_argument("--out", default=None, help="output file path")
    p.add_argument("--fast", action="store_true",
                   help="reduced resolutions for quick runs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mabody",
        description="Maximal inscribed ellipses and the Monge-Ampere "
                    "density of convex bodies.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bstar", help="maximal tangency scale at one (x, y)")
    _add_common(p)
    p.add_argument("--x", required=True, help="base point, comma-separated")
    p.add_argument("--y", required=True, help="tangent direction, comma-separated")
    p.add_argument("--method", choices=("auto", "exact", "bisect"),
                   default="auto")
    p.set_defaults(func=cmd_bstar)

    p = sub.add_parser("density", help="density field on an interior grid")
    _add_common(p)
    p.add_argument("--svg", default=None,
                   help="also render a heatmap (planar bodies)")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("mass", help="total mass vs the (2 pi)^n target")
    _add_common(p)
    p.set_defaults(func=cmd_mass)

    p = sub.add_parser("verify", help="run a named invariant suite")
    p.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    _add_common(p, body_required=False)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad usage, which matches the parse-error
        # convention; re-raise everything else unchanged
        raise exc
    try:
        return args.func(args)
    except BodyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (XNotInterior, ZeroDirection, NotSymmetric, NotOriginCentered) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
