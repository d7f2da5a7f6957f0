"""Command-line interface.

Every subcommand writes CSV or JSON to stdout or ``--out`` and records a
JSON run manifest (command, inputs, solver settings, version) next to the
output, or on stderr when the output goes to stdout.  Exit status: 0 on
success, 1 on domain errors, 2 on usage errors.
"""

import argparse
import cmath
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .atlas import (
    Window,
    classify_param,
    connectivity_check,
    cross_section,
    path_to_superattracting,
    superattracting_atlas,
    tip_exponent_estimate,
    tongue_tip,
)
from .circle_map import CircleParams
from .complex_map import ComplexParams, OrbitTag, classify_critical_orbit, g_eval
from .config import DEFAULT_CONFIG, SolverConfig
from .errors import DomainError
from .linearization import koenigs_chart, koenigs_derivative, koenigs_derivative_fd, koenigs_eval
from .render import RenderManifest, render
from .semiconjugacy import BinaryType


class UsageError(Exception):
    pass


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def to_csv(header, rows):
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for r in rows:
        wr.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def to_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _type(text):
    try:
        return BinaryType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rows_of_table(header, rows):
    return [dict(zip(header, r)) for r in rows]


# ---------------------------------------------------------------- commands


def cmd_atlas(args, cfg):
    header = ["type", "tau", "period", "a_super"]
    rows = [[e.type.label, str(e.type), e.type.p, e.a_super]
            for e in superattracting_atlas(args.period, cfg)]
    return header, rows


def cmd_classify(args, cfg):
    params = CircleParams(args.a, args.b)
    s = classify_param(params, cfg)
    out = {"a": args.a, "b": args.b, "outcome": s.outcome.value}
    if s.in_tongue:
        out.update({"type": s.type.label, "tau": str(s.type), "period": s.cycle.period,
                    "multiplier": s.cycle.multiplier, "distinguished": s.cycle.distinguished,
                    "cycle": list(s.cycle.points)})
    return out


def cmd_section(args, cfg):
    return ["lo", "hi", "width"], [[lo, hi, hi - lo] for lo, hi in cross_section(args.type, args.b, cfg)]


def cmd_tip(args, cfg):
    return {"type": args.type.label, "tau": str(args.type), "tip": tongue_tip(args.type, cfg)}


def cmd_connect(args, cfg):
    win = Window(*args.window)
    r = connectivity_check(args.type, win, args.width, args.height, cfg, threads=args.threads)
    return {"type": r.type.label, "tau": str(r.type), "width": r.width, "height": r.height,
            "window": list(args.window), "components": r.components,
            "center_sampled_components": r.raw_components, "pixels": r.pixels,
            "refined_pixels": r.refined_pixels, "anchor_pixel": list(r.anchor),
            "anchor_in_component": r.anchor_in_component,
            "undecided_fraction": r.undecided_fraction,
            "status": "PASS" if r.passed else "FAIL", "note": r.note}


def cmd_path(args, cfg):
    p = path_to_superattracting(args.type, CircleParams(args.a, args.b), cfg)
    flagged = set(p.violations)
    rows = [[a, b, m, int(i in flagged)] for i, ((a, b), m) in enumerate(zip(p.vertices, p.multipliers))]
    return ["a", "b", "abs_multiplier", "flagged"], rows


def cmd_tip_exponent(args, cfg):
    tip = tongue_tip(args.type, cfg)
    est = tip_exponent_estimate(args.type, cfg, tip=tip, n_samples=args.samples)
    out = {"type": args.type.label, "tau": str(args.type), "tip": tip,
           "exponent": est.exponent, "residual": est.residual, "samples": len(est.widths)}
    try:
        dense = tip_exponent_estimate(args.type, cfg, tip=tip, n_samples=2 * args.samples)
        out["exponent_doubled_density"] = dense.exponent
        out["delta"] = dense.exponent - est.exponent
    except DomainError as exc:
        out["doubled_density_error"] = str(exc)
    return out


def cmd_koenigs_check(args, cfg):
    params = ComplexParams(args.a, args.b)
    oc = classify_critical_orbit(params, cfg)
    if oc.tag is not OrbitTag.CIRCLE_ATTRACTING:
        raise DomainError(f"({args.a}, {args.b}) has no attracting circle cycle ({oc.tag.value})")
    chart = koenigs_chart(params, oc.cycle, cfg)
    x0 = chart.base
    pts = [x0 + 0.5 * chart.radius * math.sqrt((k + 1) / args.samples)
           * cmath.exp(2j * math.pi * 0.6180339887 * k) for k in range(args.samples)]
    fe = sym = sym4 = 0.0
    for z in pts:
        gz = z
        for _ in range(chart.period):
            gz = g_eval(params, gz)
        fz = koenigs_eval(chart, z)
        fe = max(fe, abs(koenigs_eval(chart, gz) - chart.lambda_ * fz))
        fr = koenigs_eval(chart, 1.0 / z.conjugate()).conjugate()
        sym = max(sym, abs(fr - fz))
        sym4 = max(sym4, abs(fr - x0.conjugate() ** 4 * fz))
    d_fd = koenigs_derivative_fd(chart, x0)
    d_ch = koenigs_derivative(chart, x0)
    return {"a": args.a, "b": args.b, "period": chart.period, "base": [x0.real, x0.imag],
            "multiplier": chart.lambda_, "radius": chart.radius,
            "functional_equation_residual": fe,
            "derivative_fd": [d_fd.real, d_fd.imag], "derivative_chain": [d_ch.real, d_ch.imag],
            "normalization_error": abs(d_fd - 1j * x0),
            "reflection_residual": sym, "reflection_residual_with_factor": sym4}


def cmd_render(args, cfg):
    if args.manifest and Path(args.manifest).exists():
        data = json.loads(Path(args.manifest).read_text())
        data = data.get("render_manifest", data)
        man = RenderManifest.from_dict(data)
        if args.mode and args.mode != man.mode:
            raise UsageError(f"--mode {args.mode} disagrees with the manifest mode {man.mode}")
    else:
        if not args.mode:
            raise UsageError("render needs --mode or an existing --manifest")
        man = RenderManifest.default(args.mode, args.width, args.height,
                                     tuple(args.window) if args.window else None, cfg)
    if args.out is None:
        raise UsageError("render needs --out for the image")
    res = render(man, threads=args.threads)
    Path(args.out).write_bytes(res.ppm_bytes())
    Path(str(args.out) + ".legend.csv").write_text(res.legend_csv(), encoding="utf-8")
    if args.manifest and not Path(args.manifest).exists():
        Path(args.manifest).write_text(man.to_json(), encoding="utf-8")
    return man


# ---------------------------------------------------------------- parser


def build_parser():
    ap = argparse.ArgumentParser(prog="doublestandard",
                                 description="Tongues of the double standard family.")
    ap.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format")
    common.add_argument("--config", help="JSON file with solver settings")
    common.add_argument("--threads", type=int, help="worker threads (output does not depend on it)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("atlas", parents=[common], help="superattracting parameters at b = 1")
    p.add_argument("--period", type=int, required=True)
    p = sub.add_parser("classify", parents=[common], help="tongue membership of (a, b)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p = sub.add_parser("section", parents=[common], help="cross-section of a tongue at b")
    p.add_argument("--type", type=_type, required=True, help="K/P: tau = K/(2^P - 1)")
    p.add_argument("--b", type=float, required=True)
    p = sub.add_parser("tip", parents=[common], help="lowest b of a tongue")
    p.add_argument("--type", type=_type, required=True)
    p = sub.add_parser("connect", parents=[common], help="raster connectedness check")
    p.add_argument("--type", type=_type, required=True)
    p.add_argument("--width", type=int, default=1024)
    p.add_argument("--height", type=int, default=512)
    p.add_argument("--window", type=float, nargs=4, default=(0.0, 1.0, 0.5, 1.0),
                   metavar=("AMIN", "AMAX", "BMIN", "BMAX"))
    p = sub.add_parser("path", parents=[common], help="in-tongue path to (a_tau, 1)")
    p.add_argument("--type", type=_type, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p = sub.add_parser("render", parents=[common], help="parameter-plane image (P6)")
    p.add_argument("--mode", choices=("tongues", "complex_classes"))
    p.add_argument("--manifest", help="render manifest to read (written if missing)")
    p.add_argument("--width", type=int, default=512)
    p.add_argument("--height", type=int, default=256)
    p.add_argument("--window", type=float, nargs=4, metavar=("AMIN", "AMAX", "BMIN", "BMAX"))
    p = sub.add_parser("koenigs-check", parents=[common], help="Koenigs chart diagnostics")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--samples", type=int, default=100)
    p = sub.add_parser("tip-exponent", parents=[common], help="width exponent above the tip")
    p.add_argument("--type", type=_type, required=True)
    p.add_argument("--samples", type=int, default=8)
    return ap


_TABLES = {"atlas": cmd_atlas, "section": cmd_section, "path": cmd_path}
_RECORDS = {"classify": cmd_classify, "tip": cmd_tip, "connect": cmd_connect,
            "tip-exponent": cmd_tip_exponent, "koenigs-check": cmd_koenigs_check}


def _inputs(args):
    skip = {"out", "format", "config", "threads"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        out[k] = v.label if isinstance(v, BinaryType) else (list(v) if isinstance(v, tuple) else v)
    return out


def run_manifest(args, cfg, extra=None):
    man = {"command": args.command, "inputs": _inputs(args), "cfg": cfg.to_dict(),
           "tool_version": __version__}
    if extra:
        man.update(extra)
    return man


def _emit(text, args, stdout):
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def _emit_manifest(man, args, stderr):
    text = to_json(man)
    if args.out:
        Path(str(args.out) + ".manifest.json").write_text(text, encoding="utf-8")
    else:
        stderr.write(text)


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = DEFAULT_CONFIG
        if args.config:
            cfg = SolverConfig.from_dict(json.loads(Path(args.config).read_text()))
        if args.command == "render":
            man = cmd_render(args, cfg)
            _emit_manifest(run_manifest(args, man.cfg, {"render_manifest": man.to_dict()}),
                           args, stderr)
            return 0
        if args.command in _TABLES:
            header, rows = _TABLES[args.command](args, cfg)
            fmt = args.format or "csv"
            text = to_csv(header, rows) if fmt == "csv" else to_json(_rows_of_table(header, rows))
        else:
            rec = _RECORDS[args.command](args, cfg)
            fmt = args.format or "json"
            text = to_json(rec) if fmt == "json" else to_csv(list(rec), [list(rec.values())])
        _emit(text, args, stdout)
        _emit_manifest(run_manifest(args, cfg), args, stderr)
        return 0
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        ap.print_usage(stderr)
        return 2
    except DomainError as exc:
        stderr.write(f"{type(exc).__name__}: {exc}\n")
        return 1
    except (ValueError, argparse.ArgumentTypeError) as exc:
        stderr.write(f"usage error: {exc}\n")
        ap.print_usage(stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
