"""Command-line front-end.

Emits deterministic CSV or JSON: fixed sector order, shortest round-trip
float formatting, no timestamps.  Run metadata is confined to a single
comment header line (CSV) or a "meta" object (JSON).

Exit codes: 0 success, 1 usage or parameter-validation errors, 2 regime
errors (degenerate parameters, unsupported classification regimes).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

import numpy as np

from .modulation import (
    DegenerateIndicatorError,
    PhaseKind,
    PhaseStateError,
    UnsupportedRegimeError,
)
from .models import (
    AnisotropicTwoPhoton,
    DegenerateParameterError,
    IntensityDependent,
    ModelSpec,
    SectorLabel,
    TwoPhoton,
    TwoPhotonRabiStark,
    decomposition_check,
    jacobi_params,
    model_name,
    predicted_phase,
    sectors,
)
from .spectra import collapse_scan, edge_density, spectrum_scan

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_REGIME = 2

_REGIME_ERRORS = (
    UnsupportedRegimeError,
    DegenerateParameterError,
    DegenerateIndicatorError,
    PhaseStateError,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; this tool reserves 2 for
    # regime errors
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _max_workers() -> int | None:
    raw = os.environ.get("RABI_SPECTRA_THREADS", "").strip()
    if not raw:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"RABI_SPECTRA_THREADS must be an integer, got {raw!r}")
    return n if n > 1 else None


def _parse_coupling(text: str, name: str) -> float:
    if text == "critical":
        return 0.5
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"--{name} expects a number or 'critical', got {text!r}")


def _parse_kappa(text: str) -> float:
    if text == "critical":
        return 1.0
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"--kappa expects a number or 'critical', got {text!r}")


def _add_model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--model",
        required=True,
        choices=("intensity", "two-photon", "anisotropic", "rabi-stark"),
        help="which Hamiltonian to analyse",
    )
    p.add_argument("--g", help="coupling g (a number, or 'critical' for exactly 1/2)")
    p.add_argument("--delta", type=float, default=0.0, help="level splitting (default 0)")
    p.add_argument("--kappa", help="kappa parameter (a number, or 'critical' for exactly 1)")
    p.add_argument("--g-plus", type=float, help="co-rotating coupling (anisotropic only)")
    p.add_argument("--g-minus", type=float, help="counter-rotating coupling (anisotropic only)")
    p.add_argument(
        "--on-circle",
        action="store_true",
        help="rabi-stark: derive g from kappa so that kappa^2 + 4 g^2 = 1",
    )


def _build_model(args: argparse.Namespace, g_value: float | None = None) -> ModelSpec:
    name = args.model
    if name == "anisotropic":
        if args.g_plus is None or args.g_minus is None:
            raise ValueError("anisotropic model requires --g-plus and --g-minus")
        return AnisotropicTwoPhoton(g_plus=args.g_plus, g_minus=args.g_minus, delta=args.delta)

    if g_value is None:
        if args.on_circle:
            if name != "rabi-stark":
                raise ValueError("--on-circle applies to the rabi-stark model only")
            if args.g is not None:
                raise ValueError("--on-circle derives g from kappa; drop --g")
            if args.kappa is None:
                raise ValueError("--on-circle requires --kappa")
            kap = _parse_kappa(args.kappa)
            if abs(kap) >= 1.0:
                raise ValueError("--on-circle requires |kappa| < 1")
            g_value = float(np.sqrt(1.0 - kap * kap) / 2.0)
        elif args.g is None:
            raise ValueError(f"{name} model requires --g")
        else:
            g_value = _parse_coupling(args.g, "g")

    if name == "intensity":
        if args.kappa is None:
            raise ValueError("intensity model requires --kappa")
        return IntensityDependent(g=g_value, delta=args.delta, kappa=_parse_kappa(args.kappa))
    if name == "two-photon":
        return TwoPhoton(g=g_value, delta=args.delta)
    if name == "rabi-stark":
        if args.kappa is None:
            raise ValueError("rabi-stark model requires --kappa")
        return TwoPhotonRabiStark(g=g_value, delta=args.delta, kappa=_parse_kappa(args.kappa))
    raise ValueError(f"unknown model {name!r}")


def _select_sectors(model: ModelSpec, text: str) -> tuple[SectorLabel, ...]:
    if text == "all":
        return sectors(model)
    label = SectorLabel.parse(text)
    if label not in sectors(model):
        raise ValueError(f"sector {label} does not exist for the {model_name(model)} model")
    return (label,)


def _default_sector(model: ModelSpec) -> SectorLabel:
    return SectorLabel(1) if isinstance(model, IntensityDependent) else SectorLabel(1, 0)


def _parse_index_range(text: str) -> range:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if hi < lo:
            raise ValueError(f"empty index range {text!r}")
        return range(lo, hi + 1)
    n = int(text)
    return range(n, n + 1)


def _parse_grid(text: str) -> list[float]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("grid must be start:stop:step or a comma-separated list")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        if count < 1:
            raise ValueError(f"grid {text!r} contains no points")
        return [start + step * i for i in range(count)]
    return [float(p) for p in text.split(",") if p]


def _parse_cutoffs(text: str) -> tuple[int, ...]:
    return tuple(int(p) for p in text.split(",") if p)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _jsonable(value):
    if value is None or isinstance(value, (str, int, bool)):
        return value
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    raise TypeError(f"cannot serialise {value!r}")


def _emit(meta: dict, header: list[str], rows: list[list], args: argparse.Namespace) -> None:
    if args.format == "json":
        payload = {
            "meta": {k: _jsonable(v) for k, v in meta.items()},
            "rows": [
                {k: _jsonable(v) for k, v in zip(header, row)} for row in rows
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        meta_line = " ".join(f"{k}={_cell(v)}" for k, v in meta.items())
        buf.write(f"# {meta_line}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _model_meta(model: ModelSpec) -> dict:
    meta: dict = {"model": model_name(model)}
    if isinstance(model, AnisotropicTwoPhoton):
        meta.update(g_plus=model.g_plus, g_minus=model.g_minus, delta=model.delta)
    elif isinstance(model, (IntensityDependent, TwoPhotonRabiStark)):
        meta.update(g=model.g, delta=model.delta, kappa=model.kappa)
    else:
        meta.update(g=model.g, delta=model.delta)
    return meta


def cmd_classify(args: argparse.Namespace) -> int:
    model = _build_model(args)
    header = [
        "model", "sector", "trace", "kind", "clause",
        "indicator_c1", "indicator_c0", "endpoint", "direction",
    ]
    rows = []
    for sector in _select_sectors(model, args.sector):
        report = predicted_phase(model, sector)
        ind, hl = report.indicator, report.essential_spectrum
        rows.append([
            model_name(model), str(sector), report.trace, report.kind.value, report.notes,
            ind.c1 if ind else None, ind.c0 if ind else None,
            hl.endpoint if hl else None, hl.direction if hl else None,
        ])
    meta = {"command": "classify", **_model_meta(model)}
    _emit(meta, header, rows, args)
    return EXIT_OK


def cmd_params(args: argparse.Namespace) -> int:
    model = _build_model(args)
    indices = _parse_index_range(args.n)
    header = ["model", "sector", "n", "a", "b"]
    rows = []
    for sector in _select_sectors(model, args.sector):
        params = jacobi_params(model, sector)
        for n in indices:
            rows.append([model_name(model), str(sector), n,
                         float(params.a(n)), float(params.b(n))])
    meta = {"command": "params", **_model_meta(model), "n": args.n}
    _emit(meta, header, rows, args)
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    model = _build_model(args)
    window = (args.window[0], args.window[1]) if args.window else None
    header = ["model", "sector", "index", "eigenvalue"]
    rows = []
    for sector in _select_sectors(model, args.sector):
        params = jacobi_params(model, sector)
        spec = spectrum_scan(params, args.cutoff, window=window, tol=args.tol)
        for i, ev in enumerate(spec.eigenvalues):
            rows.append([model_name(model), str(sector), i, float(ev)])
    meta = {"command": "spectrum", **_model_meta(model), "cutoff": args.cutoff}
    if window is not None:
        meta.update(window_lo=window[0], window_hi=window[1])
    _emit(meta, header, rows, args)
    return EXIT_OK


def cmd_collapse(args: argparse.Namespace) -> int:
    grid = _parse_grid(args.grid)
    base = _build_model(args, g_value=grid[0])
    sector = (
        _default_sector(base) if args.sector == "default"
        else _select_sectors(base, args.sector)[0]
    )

    def factory(g: float) -> ModelSpec:
        if isinstance(base, AnisotropicTwoPhoton):
            # vary the mean coupling, holding the anisotropy fixed
            return AnisotropicTwoPhoton(
                g_plus=g + base.g_diff, g_minus=g - base.g_diff, delta=base.delta
            )
        return _build_model(args, g_value=g)

    scan = collapse_scan(factory, grid, sector, args.cutoff, args.lowest,
                         max_workers=_max_workers())
    for g, flag in zip(scan.couplings, scan.nondiscrete):
        if flag:
            print(
                f"warning: coupling {g!r} is not in the purely discrete regime; "
                "its gap statistics do not measure discrete-spectrum spacings",
                file=sys.stderr,
            )
    header = ["g", "mean_gap", "min_gap"]
    rows = [
        [float(g), float(mg), float(ng)]
        for g, mg, ng in zip(scan.couplings, scan.mean_gaps, scan.min_gaps)
    ]
    meta = {
        "command": "collapse", "model": args.model, "delta": args.delta,
        "sector": str(sector), "cutoff": args.cutoff, "k": args.lowest,
    }
    _emit(meta, header, rows, args)
    return EXIT_OK


def cmd_edge(args: argparse.Namespace) -> int:
    model = _build_model(args)
    sector = (
        _default_sector(model) if args.sector == "default"
        else _select_sectors(model, args.sector)[0]
    )
    report = predicted_phase(model, sector)
    if report.kind is not PhaseKind.CRITICAL_HALF_LINE:
        raise PhaseStateError(
            f"edge accumulation requires a critical parameter set; clause {report.notes!r} "
            f"gives {report.kind.value}"
        )
    params = jacobi_params(model, sector)
    cutoffs = _parse_cutoffs(args.cutoffs)
    density = edge_density(params, report, cutoffs, args.window_width,
                           max_workers=_max_workers())
    header = ["cutoff", "essential_count", "complementary_count"]
    rows = [
        [c, e, x]
        for c, e, x in zip(density.cutoffs, density.essential_counts,
                           density.complementary_counts)
    ]
    meta = {
        "command": "edge", **_model_meta(model), "sector": str(sector),
        "endpoint": density.endpoint, "direction": density.direction,
        "window_width": density.window_width,
    }
    _emit(meta, header, rows, args)
    return EXIT_OK


def cmd_verify_decomp(args: argparse.Namespace) -> int:
    model = _build_model(args)
    check = decomposition_check(model, args.cutoff)
    header = ["cutoff", "max_deviation", "max_block", "max_boundary", "max_cross"]
    rows = [[args.cutoff, check.max_deviation, check.max_block,
             check.max_boundary, check.max_cross]]
    meta = {"command": "verify-decomp", **_model_meta(model)}
    _emit(meta, header, rows, args)
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="rabi-spectra",
        description=(
            "Reduce Rabi-type Hamiltonians to Jacobi operators, classify their "
            "spectral phase, and cross-check the predictions on finite sections."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, sector_default: str = "all") -> None:
        _add_model_args(p)
        p.add_argument("--sector", default=sector_default,
                       help=f"sector label or 'all' (default {sector_default})")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("classify", help="phase table, one row per sector")
    common(p)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("params", help="table of Jacobi parameters a(n), b(n)")
    common(p)
    p.add_argument("--n", default="0..9", help="index or inclusive range lo..hi (default 0..9)")
    p.set_defaults(fn=cmd_params)

    p = sub.add_parser("spectrum", help="windowed eigenvalues of a finite section")
    common(p)
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--window", nargs=2, type=float, metavar=("LO", "HI"),
                   help="restrict to eigenvalues in [LO, HI) (default: full spectrum)")
    p.add_argument("--tol", type=float, help="bisection half-width tolerance")
    p.set_defaults(fn=cmd_spectrum)

    p = sub.add_parser("collapse", help="gap statistics along a coupling grid")
    common(p, sector_default="default")
    p.add_argument("--grid", required=True,
                   help="start:stop:step or comma list of couplings; the grid value "
                        "replaces g (anisotropic: the mean coupling, anisotropy fixed)")
    p.add_argument("--cutoff", type=int, default=400)
    p.add_argument("-k", "--lowest", type=int, default=20,
                   help="number of lowest eigenvalues per grid point (default 20)")
    p.set_defaults(fn=cmd_collapse)

    p = sub.add_parser("edge", help="eigenvalue counts near the predicted spectral edge")
    common(p, sector_default="default")
    p.add_argument("--cutoffs", default="200,400,800", help="comma list (default 200,400,800)")
    p.add_argument("--window-width", type=float, default=5.0)
    p.set_defaults(fn=cmd_edge)

    p = sub.add_parser("verify-decomp",
                       help="entrywise check that sector reordering block-diagonalises")
    common(p)
    p.add_argument("--cutoff", type=int, default=200)
    p.set_defaults(fn=cmd_verify_decomp)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _REGIME_ERRORS as exc:
        print(f"rabi-spectra: regime error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except ValueError as exc:
        print(f"rabi-spectra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
