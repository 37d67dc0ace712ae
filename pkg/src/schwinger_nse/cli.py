"""
Command-line frontend.

    schwinger-nse table1 [--lambda 0.25nm] [--phi-target 0.1] [--theta 45deg]
    schwinger-nse transform --E 30MV/m --eps-r 9.7
    schwinger-nse phase --E 30MV/m --L 1.6m
    schwinger-nse wave --B-eff 0.527uT --L 0.1m --nx 21 --ny 5
    schwinger-nse scan --param E --from 0 --to 30MV/m --count 4 --L 1.6m
    schwinger-nse assess --L 0.01m --arm-B 0.01T --arm-L 1m

Exit status: 0 success, 2 configuration error, 3 computation domain error,
4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import materials as mat
from .config import COMMANDS, ConfigError, RunConfig, build_config, read_config_file
from .constants import NeutronBeam
from .em_transform import transform_consistency_report
from .errors import DomainError, MaterialParseError
from .precession import (
    larmor_phase,
    refraction_angle_from_B,
    refraction_angle_from_E,
    schwinger_phase,
    schwinger_rate,
)
from .spinecho import SpinEchoArm, enhancement_assessment
from .spinor_wave import TriangleRegion, propagate_triangle, sample_grid

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_IO = 0, 2, 3, 4

TABLE1_HEADER = ("name", "E_b_MV_per_m", "eps_r", "B_eff_uT", "L_min_m", "alpha_picorad")
WAVE_HEADER = ("x_m", "y_m", "re_up", "im_up", "re_dn", "im_dn", "phase_rad")
SCAN_AXIS_COLUMN = {"E": "E_V_per_m", "L": "L_m", "lambda": "lambda_m", "theta": "theta_rad"}

# flag -> RunConfig attribute
FLAGS = {
    "--lambda": "wavelength",
    "--phi0": "phi0",
    "--phi-target": "phi_target",
    "--theta": "theta",
    "--L": "L",
    "--E": "E",
    "--B-eff": "B_eff",
    "--material": "material",
    "--materials": "materials_file",
    "--eps-r": "eps_r",
    "--mu-r": "mu_r",
    "--y-extent": "y_extent",
    "--arm-B": "arm_B",
    "--arm-L": "arm_L",
    "--theta0": "theta0",
    "--orientation": "orientation",
    "--param": "scan_param",
    "--from": "scan_from",
    "--to": "scan_to",
    "--count": "scan_count",
    "--nx": "nx",
    "--ny": "ny",
    "--x-min": "x_min",
    "--x-max": "x_max",
}


def sci(x: float) -> str:
    """6 significant digits, scientific notation."""
    return f"{x:.5e}"


def full(x: float) -> str:
    return repr(float(x))


def sig2(x: float) -> str:
    """Two significant digits in positional notation, matching the precision of the reference table."""
    if x == 0 or not math.isfinite(x):
        return repr(float(x))
    decimals = 1 - math.floor(math.log10(abs(x)))
    rounded = round(x, decimals)
    return f"{rounded:.{max(decimals, 0)}f}"


def plain(x: float) -> str:
    return f"{x:g}"


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"command line: {message}")


def make_parser() -> argparse.ArgumentParser:
    common = _ArgParser(add_help=False, allow_abbrev=False)
    common.add_argument("--config", help="config file with [section] key = value lines")
    common.add_argument("--out", help="output file (default: standard output)")
    common.add_argument("--raw", action="store_true", help="full-precision numbers")
    common.add_argument("--diagnostics", action="store_true",
                        help="add would-be values of neglected effects (assess)")
    for flag, attr in FLAGS.items():
        common.add_argument(flag, dest=attr, default=None, metavar="VALUE")

    parser = _ArgParser(prog="schwinger-nse", description="Schwinger-term neutron spin calculations.", allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgParser)
    helps = {
        "table1": "material table: B_eff, L_min and refraction angle",
        "transform": "neutron-frame B by capacitor, Galilean and Lorentz routes",
        "phase": "Schwinger and Larmor rotation, refraction angles",
        "wave": "spinor wavefield on a grid through the triangular region",
        "scan": "sweep one parameter of the phase calculation",
        "assess": "direct vs spin-echo-enhanced rotation",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def parse_config(argv) -> RunConfig:
    args = make_parser().parse_args(argv)
    flags = {}
    for flag, attr in FLAGS.items():
        val = getattr(args, attr)
        if val is not None:
            flags[attr] = (val, f"flag {flag}")
    if args.diagnostics:
        flags["diagnostics"] = ("true", "flag --diagnostics")
    file_entries = read_config_file(args.config) if args.config else {}
    return build_config(args.command, file_entries, flags, out=args.out, raw=args.raw)


# --------------------------------------------------------------------------
# commands

def _materials(cfg):
    if cfg.materials_file:
        return mat.load_materials(cfg.materials_file)
    return mat.builtin_materials()


def _lookup_material(cfg):
    if cfg.material is None:
        return None
    for m in _materials(cfg):
        if m.name.lower() == cfg.material.lower():
            return m
    raise ConfigError(f"field.material: unknown material {cfg.material!r}")


def _field_E(cfg):
    m = _lookup_material(cfg)
    return m.E_b if m is not None else cfg.E


def _medium(cfg):
    m = _lookup_material(cfg)
    if m is not None:
        return m.eps_r, m.mu_r
    return cfg.eps_r, cfg.mu_r


def _writer(buf):
    return csv.writer(buf, lineterminator="\n")


def cmd_table1(cfg, buf):
    w = _writer(buf)
    w.writerow(TABLE1_HEADER)
    num = full if cfg.raw else sig2
    for m in _materials(cfg):
        row = mat.derived_row(m, cfg.wavelength, cfg.phi_target, cfg.theta)
        w.writerow([
            m.name,
            full(m.E_b / 1e6) if cfg.raw else plain(m.E_b / 1e6),
            full(m.eps_r) if cfg.raw else plain(m.eps_r),
            num(row.B_eff * 1e6),
            num(row.L_min),
            num(row.alpha * 1e12),
        ])


def cmd_transform(cfg, buf):
    num = full if cfg.raw else sci
    beam = cfg.beam
    eps_r, mu_r = _medium(cfg)
    E = np.array([0.0, _field_E(cfg), 0.0])
    v = np.array([beam.v, 0.0, 0.0])
    rep = transform_consistency_report(E, v, eps_r, mu_r)
    w = _writer(buf)
    w.writerow(("route", "Bx_T", "By_T", "Bz_T", "B_abs_T", "rel_dev_vs_galilean"))
    for route, B in (("capacitor", rep.B_capacitor), ("galilean", rep.B_galilean),
                     ("lorentz", rep.B_lorentz)):
        dev = {"capacitor": rep.dev_galilean_capacitor, "galilean": 0.0,
               "lorentz": rep.dev_lorentz_galilean}[route]
        w.writerow([route, *(num(b) for b in B), num(np.linalg.norm(B)), num(dev)])


def _phase_quantities(wavelength, E, L, theta):
    beam = NeutronBeam(wavelength)
    B_eff = mat.effective_field(E, wavelength)
    return {
        "phi_S_rad": schwinger_phase(E, L),
        "B_eff_T": B_eff,
        "phi_larmor_rad": larmor_phase(B_eff, L, beam.v),
        "alpha_B_rad": refraction_angle_from_B(B_eff, beam.k, theta),
        "alpha_E_rad": refraction_angle_from_E(E, wavelength, theta),
    }


def cmd_phase(cfg, buf):
    num = full if cfg.raw else sci
    E = _field_E(cfg)
    beam = cfg.beam
    q = _phase_quantities(cfg.wavelength, E, cfg.L, cfg.theta)
    rows = [
        ("lambda", cfg.wavelength, "m"),
        ("v", beam.v, "m/s"),
        ("E", E, "V/m"),
        ("L", cfg.L, "m"),
        ("theta", cfg.theta, "rad"),
        ("B_eff", q["B_eff_T"], "T"),
        ("phi_S", q["phi_S_rad"], "rad"),
        ("phi_larmor", q["phi_larmor_rad"], "rad"),
        ("schwinger_rate", schwinger_rate(), "rad/V"),
        ("alpha_B", q["alpha_B_rad"], "rad"),
        ("alpha_E", q["alpha_E_rad"], "rad"),
    ]
    w = _writer(buf)
    w.writerow(("quantity", "value", "unit"))
    for name, value, unit in rows:
        w.writerow((name, num(value), unit))


def cmd_scan(cfg, buf):
    num = full if cfg.raw else sci
    axis = np.linspace(cfg.scan_from, cfg.scan_to, cfg.scan_count)
    base = {"lambda": cfg.wavelength, "E": _field_E(cfg), "L": cfg.L, "theta": cfg.theta}
    rows = []
    for value in axis:
        point = dict(base)
        point[cfg.scan_param] = float(value)
        rows.append((float(value), _phase_quantities(point["lambda"], point["E"],
                                                     point["L"], point["theta"])))
    w = _writer(buf)
    keys = list(rows[0][1])
    w.writerow([SCAN_AXIS_COLUMN[cfg.scan_param], *keys])
    for value, q in rows:
        w.writerow([num(value), *(num(q[key]) for key in keys)])


def _region(cfg):
    beam = cfg.beam
    B_eff = cfg.B_eff
    if B_eff is None:
        B_eff = mat.effective_field(_field_E(cfg), beam.wavelength)
    return TriangleRegion(cfg.L, cfg.theta, B_eff, cfg.y_extent)


def cmd_wave(cfg, buf):
    region = _region(cfg)
    wave = propagate_triangle(cfg.beam, region)
    x_min = -0.1 * region.L if cfg.x_min is None else cfg.x_min
    x_max = 1.1 * region.L if cfg.x_max is None else cfg.x_max
    xs = np.linspace(x_min, x_max, cfg.nx)
    ys = np.linspace(0.0, region.y_extent, cfg.ny)
    X, Y, up, dn, phase = sample_grid(wave, xs, ys)
    w = _writer(buf)
    w.writerow(WAVE_HEADER)
    f17 = "{:.16e}".format
    for i in range(X.size):
        w.writerow([f17(X[i]), f17(Y[i]), f17(up[i].real), f17(up[i].imag),
                    f17(dn[i].real), f17(dn[i].imag), f17(phase[i])])


def cmd_assess(cfg, buf):
    num = full if cfg.raw else sci
    region = _region(cfg)
    arm = SpinEchoArm(cfg.arm_B, cfg.arm_L, cfg.theta0, cfg.orientation)
    rep = enhancement_assessment(cfg.beam, region, arm, diagnostics=cfg.diagnostics)
    w = _writer(buf)
    w.writerow(("quantity", "value"))
    w.writerow(("phi_direct_rad", num(rep.phi_direct)))
    w.writerow(("phi_enhanced_rad", num(rep.phi_enhanced)))
    w.writerow(("ratio", num(rep.ratio)))
    w.writerow(("dominant", rep.dominant))
    w.writerow(("spin_echo_length_m", num(rep.spin_echo_length)))
    w.writerow(("alpha_rad", num(rep.alpha)))
    w.writerow(("rotator_required", "yes" if rep.orientation_note else "no"))
    if rep.orientation_note:
        w.writerow(("orientation_note", rep.orientation_note))
    for key, value in (rep.diagnostics or {}).items():
        w.writerow((f"diag_{key}", num(value)))


COMMAND_FUNCS = {
    "table1": cmd_table1,
    "transform": cmd_transform,
    "phase": cmd_phase,
    "wave": cmd_wave,
    "scan": cmd_scan,
    "assess": cmd_assess,
}


def render(cfg: RunConfig) -> str:
    buf = io.StringIO()
    COMMAND_FUNCS[cfg.command](cfg, buf)
    return buf.getvalue()


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    try:
        text = render(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except MaterialParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO if isinstance(exc.__cause__, OSError) else EXIT_CONFIG
    except DomainError as exc:
        print(f"error: {cfg.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    try:
        if cfg.out:
            with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            stdout.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
