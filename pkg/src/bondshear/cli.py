"""Command-line interface.

Lengths are given and printed in nm, shear in MPa, energies in mJ/m^2 and
Hamaker constants in zJ (1e-21 J). Everything is converted to SI before it
reaches the library.

Exit codes: 0 success, 2 bad input or parse error, 3 violated
precondition, 4 I/O failure, 5 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import drag_oracle, interface_model, reference, shear_model, surface_metrology, units
from .lifshitz import DEFAULT_TEMPERATURE, hamaker_constant
from .materials import DEFAULT_ABSORPTION_FREQUENCY, MATERIALS_ENV_VAR, MaterialValidationError, default_catalogue, load_catalogue

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4
EXIT_NUMERIC = 5


class CommandError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


# ----------------------------------------------------------------- helpers

def number(text):
    """argparse type: a finite float."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def _catalogue(args):
    try:
        if args.materials:
            return load_catalogue(args.materials)
        return default_catalogue()
    except FileNotFoundError as exc:
        raise CommandError(f"material file not found: {exc.filename}", EXIT_INPUT) from None
    except MaterialValidationError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from None


def _lookup(catalogue, name):
    if name not in catalogue:
        raise CommandError(f"unknown material {name!r}; known: {', '.join(sorted(catalogue))}", EXIT_INPUT)
    return catalogue[name]


def _hamaker(args):
    if args.temperature <= 0:
        raise CommandError("--temperature must be positive (K)", EXIT_INPUT)
    if args.nu_e <= 0:
        raise CommandError("--nu-e must be positive (Hz)", EXIT_INPUT)
    cat = _catalogue(args)
    m1, m2, medium = (_lookup(cat, n) for n in (args.top_material, args.bottom_material, args.medium))
    return hamaker_constant(m1, m2, medium, args.temperature, args.nu_e)


def _policy(args):
    if getattr(args, "calibration", None):
        try:
            data = json.loads(Path(args.calibration).read_text(encoding="utf-8"))
            return interface_model.SeparationPolicy(
                float(data["location_factor"]), float(data["scale_factor"]), "calibrated (file)"
            )
        except FileNotFoundError:
            raise CommandError(f"calibration file not found: {args.calibration}", EXIT_INPUT) from None
        except (KeyError, ValueError, TypeError) as exc:
            raise CommandError(f"bad calibration file {args.calibration}: {exc}", EXIT_INPUT) from None
    if args.policy == "half-normal":
        return interface_model.HALF_NORMAL
    return interface_model.calibrated_policy()


def _require_positive(**values):
    for name, value in values.items():
        if not value > 0:
            raise CommandError(f"--{name.replace('_', '-')} must be positive, got {value:g}", EXIT_PRECONDITION)


def _output_dir(path):
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".bondshear-write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise CommandError(f"cannot write to output directory {out}: {exc.strerror or exc}", EXIT_IO) from None
    return out


def _write_csv(path, header, rows):
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise CommandError(f"cannot write {path}: {exc.strerror or exc}", EXIT_IO) from None


def _fmt(value):
    return "nan" if not math.isfinite(value) else f"{value:.10g}"


def _table(rows):
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


# ---------------------------------------------------------------- commands

def cmd_hamaker(args):
    res = _hamaker(args)
    print(
        _table(
            [
                ("materials", f"{args.top_material} / {args.bottom_material} across {args.medium}"),
                ("temperature", f"{res.temperature:g} K"),
                ("A_H total", f"{res.total:.4e} J  ({res.total / units.ZEPTOJOULE:.2f} x 1e-21 J)"),
                ("A_H entropic", f"{res.entropic_term:.4e} J"),
                ("A_H dispersive", f"{res.dispersive_term:.4e} J"),
            ]
        )
    )
    return EXIT_OK


def cmd_predict(args):
    _require_positive(rms_top=args.rms_top, rms_bottom=args.rms_bottom, delta_x=args.delta_x, d_min=args.d_min)
    res = _hamaker(args)
    policy = _policy(args)
    rms_top, rms_bottom = units.nm_to_m(args.rms_top), units.nm_to_m(args.rms_bottom)
    delta_x, d_min = units.nm_to_m(args.delta_x), units.nm_to_m(args.d_min)
    try:
        dist = interface_model.separation_from_roughness(rms_top, rms_bottom, d_min, policy)
    except interface_model.DegenerateInterfaceError as exc:
        raise CommandError(str(exc), EXIT_PRECONDITION) from None
    moments = interface_model.energy_moments(res.total, dist)
    vdw = shear_model.vdw_shear(moments, delta_x)
    molecular = shear_model.molecular_bounds()
    w0 = shear_model.hydrogen_bond_surface_energy(shear_model.ISOLATED_OH, shear_model.ASSOCIATED_OH)

    rows = [
        ("materials", f"{args.top_material} / {args.bottom_material} across {args.medium}"),
        ("separation policy", f"{policy.label} (location {policy.location_factor:.4g} x rms_top, scale {policy.scale_factor:.4g} x rms_top)"),
        ("A_H", f"{res.total / units.ZEPTOJOULE:.2f} x 1e-21 J"),
        ("d_min", f"{units.m_to_nm(dist.d_min):.4g} nm"),
        ("d_max", f"{units.m_to_nm(dist.d_max):.4g} nm"),
        ("mean separation", f"{units.m_to_angstrom(interface_model.mean_separation(dist)):.3f} A"),
        ("mu_w", f"{units.j_per_m2_to_mj(moments.mean_energy):.4g} mJ/m^2"),
        ("sigma_w", f"{units.j_per_m2_to_mj(moments.std_energy):.4g} mJ/m^2"),
        ("gap <= 2.5 A", f"{interface_model.proximity_fraction(dist, reference.BOND_WINDOW_STRICT):.4f}"),
        ("gap <= 10 A", f"{interface_model.proximity_fraction(dist, reference.BOND_WINDOW_RELAXED):.4f}"),
        ("delta_x", f"{args.delta_x:g} nm"),
        ("vdW shear", f"{units.pa_to_mpa(vdw.shear_stress):.2f} MPa"),
        ("W_0 (hydrogen bonded)", f"{w0:.4g} J/m^2"),
    ]
    for pred in molecular:
        rows.append((f"{pred.label} bonded energy", f"{pred.rest_energy:.4g} J/m^2"))
        rows.append((f"{pred.label} shear", f"{pred.shear_stress / units.GPA:.2f} GPa"))
    print(_table(rows))
    print()
    for pred in [vdw, *molecular]:
        s = shear_model.comparison_summary(pred)
        print(
            f"{s.prediction}: {s.predicted_mpa:.4g} MPa, inside measured dry range: {'yes' if s.inside_measured_dry_range else 'no'}, "
            f"x{s.factor_over_literature:.3g} the strongest published bond"
        )
    print()
    sys.stdout.write(shear_model.format_comparison(shear_model.literature_comparison([vdw, *molecular])))
    return EXIT_OK


def cmd_curve(args):
    _require_positive(rms_min=args.rms_min, rms_max=args.rms_max, rms_bottom=args.rms_bottom, delta_x=args.delta_x)
    if args.points < 2:
        raise CommandError("--points must be at least 2", EXIT_INPUT)
    out = _output_dir(args.output_dir)
    res = _hamaker(args)
    lo, hi = sorted((args.rms_min, args.rms_max))
    grid_nm = set(np.linspace(lo, hi, args.points).round(12).tolist())
    if args.operating_rms is not None and lo <= args.operating_rms <= hi:
        grid_nm.add(args.operating_rms)
    points = shear_model.shear_vs_roughness_curve(
        res.total,
        units.nm_to_m(args.rms_bottom),
        [units.nm_to_m(v) for v in grid_nm],
        units.nm_to_m(args.delta_x),
        units.nm_to_m(args.d_min),
        _policy(args),
    )
    rms_nm = [units.m_to_nm(p.rms_top) for p in points]
    shear_mpa = [units.pa_to_mpa(p.shear_stress) for p in points]
    written = []
    if args.format in ("csv", "both"):
        path = out / f"{args.name}.csv"
        _write_csv(path, ["rms_top_nm", "shear_MPa"], [[_fmt(r), _fmt(s)] for r, s in zip(rms_nm, shear_mpa)])
        written.append(path)
    if args.format in ("svg", "both"):
        from .plotting import plot_shear_curve

        path = out / f"{args.name}.svg"
        try:
            plot_shear_curve(rms_nm, shear_mpa, path, operating_rms_nm=args.operating_rms)
        except OSError as exc:
            raise CommandError(f"cannot write {path}: {exc}", EXIT_IO) from None
        written.append(path)
    for p in points:
        if p.error:
            print(f"warning: rms_top {units.m_to_nm(p.rms_top):g} nm: {p.error}", file=sys.stderr)
    if args.operating_rms is not None:
        at = [s for r, s in zip(rms_nm, shear_mpa) if r == args.operating_rms]
        if at:
            print(f"shear at rms_top {args.operating_rms:g} nm: {at[0]:.2f} MPa")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_afm(args):
    try:
        hmap = surface_metrology.parse_height_map(args.path)
    except FileNotFoundError:
        raise CommandError(f"file not found: {args.path}", EXIT_INPUT) from None
    except surface_metrology.HeightMapParseError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from None
    rows = [("grid", f"{hmap.nx} x {hmap.ny}, pitch {units.m_to_nm(hmap.pitch):g} nm")]
    rms = surface_metrology.rms_roughness(hmap)
    rows.append(("rms", f"{units.m_to_nm(rms):.4g} nm"))
    try:
        stats = surface_metrology.compute_stats(hmap)
    except (surface_metrology.CorrelationUndefinedError, surface_metrology.CapabilityError) as exc:
        rows.append(("correlation length", f"undefined ({exc})"))
    else:
        rows += [
            ("correlation length", f"{units.m_to_nm(stats.correlation_length):.4g} nm"),
            ("delta_x (half)", f"{units.m_to_nm(stats.half_correlation_length):.4g} nm"),
            ("fractal dimension", f"{stats.fractal_dimension:.4f}"),
        ]
    print(_table(rows))
    return EXIT_OK


def cmd_synth(args):
    _require_positive(rms=args.rms, correlation_length=args.correlation_length, pitch=args.pitch)
    try:
        hmap = surface_metrology.synthesize_surface(
            units.nm_to_m(args.rms), units.nm_to_m(args.correlation_length), args.nx, args.ny, units.nm_to_m(args.pitch), args.seed
        )
    except (surface_metrology.ResolutionError, surface_metrology.CapabilityError) as exc:
        raise CommandError(str(exc), EXIT_PRECONDITION) from None
    try:
        surface_metrology.write_height_map(hmap, args.output)
    except OSError as exc:
        raise CommandError(f"cannot write {args.output}: {exc.strerror or exc}", EXIT_IO) from None
    print(f"wrote {args.output} ({args.nx} x {args.ny}, rms {args.rms:g} nm)")
    return EXIT_OK


def _load_map(path):
    try:
        return surface_metrology.parse_height_map(path)
    except FileNotFoundError:
        raise CommandError(f"file not found: {path}", EXIT_INPUT) from None
    except surface_metrology.HeightMapParseError as exc:
        raise CommandError(str(exc), EXIT_INPUT) from None


def cmd_oracle(args):
    _require_positive(delta_x=args.delta_x, lateral_step=args.lateral_step, max_offset=args.max_offset)
    out = _output_dir(args.output_dir)
    res = _hamaker(args)
    if bool(args.top) != bool(args.bottom):
        raise CommandError("--top and --bottom must be given together", EXIT_INPUT)
    if args.top:
        top, bottom = _load_map(args.top), _load_map(args.bottom)
        periodic = False
        rms_top, rms_bottom = surface_metrology.rms_roughness(top), surface_metrology.rms_roughness(bottom)
    else:
        _require_positive(correlation_length=args.correlation_length, pitch=args.pitch)
        if args.rms_top < 0 or args.rms_bottom < 0:
            raise CommandError("rms values must be non-negative", EXIT_PRECONDITION)
        rms_top, rms_bottom = units.nm_to_m(args.rms_top), units.nm_to_m(args.rms_bottom)
        try:
            top, bottom = drag_oracle.synthesize_pair(
                rms_top, rms_bottom, units.nm_to_m(args.correlation_length), args.n, units.nm_to_m(args.pitch), args.seed, args.conformity
            )
        except ValueError as exc:
            raise CommandError(str(exc), EXIT_PRECONDITION) from None
        periodic = True
    try:
        cfg = drag_oracle.DragConfig(
            lateral_step=units.nm_to_m(args.lateral_step),
            max_offset=units.nm_to_m(args.max_offset),
            hamaker=res.total,
            nominal_gap=units.nm_to_m(args.nominal_gap),
            d_min_clamp=units.nm_to_m(args.d_min),
            periodic=periodic,
        )
        land = drag_oracle.energy_landscape(top, bottom, cfg)
        tau_oracle = drag_oracle.oracle_shear(land, units.nm_to_m(args.delta_x))
    except drag_oracle.DragConfigError as exc:
        raise CommandError(str(exc), EXIT_PRECONDITION) from None
    except drag_oracle.InvariantViolation as exc:
        raise CommandError(str(exc), EXIT_NUMERIC) from None

    # flat inputs have no analytic counterpart (zero gap range)
    try:
        dist = interface_model.separation_from_roughness(rms_top, rms_bottom, units.nm_to_m(args.d_min), _policy(args))
        analytic = shear_model.vdw_shear(interface_model.energy_moments(res.total, dist), units.nm_to_m(args.delta_x))
    except ValueError:
        analytic = None

    path = out / f"{args.name}.csv"
    _write_csv(
        path,
        ["offset_nm", "energy_mJ_per_m2"],
        [[_fmt(units.m_to_nm(o)), _fmt(units.j_per_m2_to_mj(e))] for o, e in zip(land.offsets, land.energies)],
    )
    if args.format in ("svg", "both"):
        from .plotting import plot_landscape

        plot_landscape(units.m_to_nm(land.offsets), units.j_per_m2_to_mj(land.energies), out / f"{args.name}.svg", units.m_to_nm(land.rest_offset))
    rows = [
        ("rest offset", f"{units.m_to_nm(land.rest_offset):.4g} nm"),
        ("rest energy", f"{units.j_per_m2_to_mj(land.rest_energy):.4g} mJ/m^2"),
        ("oracle shear", f"{units.pa_to_mpa(tau_oracle):.3f} MPa"),
    ]
    if analytic is None:
        rows.append(("analytic shear", "undefined (gap range collapses below d_min)"))
    else:
        ratio = tau_oracle / analytic.shear_stress if analytic.shear_stress > 0 else math.inf
        rows += [
            ("analytic mu_w", f"{units.j_per_m2_to_mj(analytic.rest_energy):.4g} mJ/m^2"),
            ("analytic shear", f"{units.pa_to_mpa(analytic.shear_stress):.3f} MPa"),
            ("ratio oracle/analytic", f"{ratio:.4f}"),
        ]
    print(_table(rows))
    print(f"wrote {path}")
    return EXIT_OK


def cmd_calibrate(args):
    _require_positive(rms_top=args.rms_top, rms_bottom=args.rms_bottom, d_min=args.d_min, hamaker=args.hamaker)
    targets = interface_model.CalibrationTargets(
        units.nm_to_m(args.mean_separation),
        units.mj_to_j_per_m2(args.mean_energy),
        units.mj_to_j_per_m2(args.std_energy),
    )
    rms_top = units.nm_to_m(args.rms_top)
    try:
        result = interface_model.calibrate(
            rms_top, units.nm_to_m(args.rms_bottom), units.nm_to_m(args.d_min), args.hamaker * units.ZEPTOJOULE, targets
        )
    except interface_model.DegenerateInterfaceError as exc:
        raise CommandError(str(exc), EXIT_PRECONDITION) from None
    except interface_model.CalibrationError as exc:
        if exc.best is not None:
            _print_calibration(exc.best)
        raise CommandError(f"calibration failed: {exc}", EXIT_NUMERIC) from None
    except interface_model.QuadratureError as exc:
        raise CommandError(str(exc), EXIT_NUMERIC) from None
    _print_calibration(result)
    policy = result.policy(rms_top)
    out = _output_dir(args.output_dir)
    snippet = {
        "location_nm": units.m_to_nm(result.location),
        "scale_nm": units.m_to_nm(result.scale),
        "rms_top_nm": args.rms_top,
        "location_factor": policy.location_factor,
        "scale_factor": policy.scale_factor,
        "residuals": dict(zip(("mean_separation", "mean_energy", "std_energy"), result.residuals)),
    }
    path = out / args.name
    try:
        path.write_text(json.dumps(snippet, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot write {path}: {exc.strerror or exc}", EXIT_IO) from None
    print(f"wrote {path}")
    return EXIT_OK


def _print_calibration(result):
    t, a = result.targets, result.achieved
    rows = [
        ("location", f"{units.m_to_nm(result.location):.5g} nm"),
        ("scale", f"{units.m_to_nm(result.scale):.5g} nm"),
        ("mean separation", f"{units.m_to_angstrom(a.mean_separation):.4g} A (target {units.m_to_angstrom(t.mean_separation):.4g}, residual {result.residuals[0]:+.1%})"),
        ("mu_w", f"{units.j_per_m2_to_mj(a.mean_energy):.4g} mJ/m^2 (target {units.j_per_m2_to_mj(t.mean_energy):.4g}, residual {result.residuals[1]:+.1%})"),
        ("sigma_w", f"{units.j_per_m2_to_mj(a.std_energy):.4g} mJ/m^2 (target {units.j_per_m2_to_mj(t.std_energy):.4g}, residual {result.residuals[2]:+.1%})"),
    ]
    print(_table(rows))
    if max(abs(r) for r in result.residuals) > 0.10:
        print("note: no truncated normal on this gap range meets all targets within 10%")


# ------------------------------------------------------------------ parser

def _add_material_options(p, medium=True):
    p.add_argument("--materials", help=f"material file merged over the built-ins (default: ${MATERIALS_ENV_VAR} if set)")
    p.add_argument("--temperature", type=number, default=DEFAULT_TEMPERATURE, help="temperature in K (default %(default)s)")
    p.add_argument("--nu-e", type=number, default=DEFAULT_ABSORPTION_FREQUENCY, help="UV absorption frequency in Hz (default %(default)g)")
    if medium:
        p.add_argument("--medium", default="vacuum", help="intervening medium (default %(default)s)")


def _add_pair_options(p):
    p.add_argument("--top-material", default="diamond", help="top (dragged) material (default %(default)s)")
    p.add_argument("--bottom-material", default="fused_silica", help="substrate material (default %(default)s)")
    _add_material_options(p)


def _add_policy_options(p):
    p.add_argument("--policy", choices=("calibrated", "half-normal"), default="calibrated",
                   help="gap-distribution shape (default %(default)s)")
    p.add_argument("--calibration", help="JSON snippet written by 'calibrate'; overrides --policy")


UNITS_NOTE = (
    "Units: lengths in nm, shear stress in MPa, surface energies in mJ/m^2, "
    "Hamaker constants in J (also shown in units of 1e-21 J), temperature in K, frequency in Hz."
)


def _subcommand(sub, name, help):
    return sub.add_parser(name, help=help, description=help, epilog=UNITS_NOTE)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bondshear",
        description="van der Waals and molecular shear strength of direct-bonded surfaces. "
        "Lengths in nm, shear in MPa, energies in mJ/m^2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = _subcommand(sub, "hamaker", "nonretarded Hamaker constant of two materials across a medium")
    p.add_argument("top_material", help="first material name")
    p.add_argument("bottom_material", help="second material name")
    _add_material_options(p)
    p.set_defaults(func=cmd_hamaker)

    p = _subcommand(sub, "predict", "end-to-end shear prediction with literature comparison")
    p.add_argument("--rms-top", type=number, default=0.61, help="top surface RMS roughness in nm (default %(default)s)")
    p.add_argument("--rms-bottom", type=number, default=0.37, help="bottom surface RMS roughness in nm (default %(default)s)")
    p.add_argument("--delta-x", type=number, default=0.54, help="drag distance, half the correlation length, in nm (default %(default)s)")
    p.add_argument("--d-min", type=number, default=0.096, help="minimum gap in nm (default %(default)s)")
    _add_pair_options(p)
    _add_policy_options(p)
    p.set_defaults(func=cmd_predict)

    p = _subcommand(sub, "curve", "shear vs top-surface roughness, CSV and SVG")
    p.add_argument("--rms-min", type=number, default=0.2, help="lower end of the rms sweep in nm (default %(default)s)")
    p.add_argument("--rms-max", type=number, default=2.0, help="upper end of the rms sweep in nm (default %(default)s)")
    p.add_argument("--points", type=int, default=46, help="number of sweep points (default %(default)s)")
    p.add_argument("--operating-rms", type=number, default=0.61, help="rms (nm) always included and marked (default %(default)s)")
    p.add_argument("--rms-bottom", type=number, default=0.37, help="bottom surface RMS in nm (default %(default)s)")
    p.add_argument("--delta-x", type=number, default=0.54, help="drag distance in nm (default %(default)s)")
    p.add_argument("--d-min", type=number, default=0.096, help="minimum gap in nm (default %(default)s)")
    p.add_argument("--output-dir", default=".", help="directory for output files (default current)")
    p.add_argument("--name", default="shear_curve", help="output file stem (default %(default)s)")
    p.add_argument("--format", choices=("csv", "svg", "both"), default="both", help="outputs to write (default %(default)s)")
    _add_pair_options(p)
    _add_policy_options(p)
    p.set_defaults(func=cmd_curve)

    p = _subcommand(sub, "afm", "roughness statistics of a height-map file")
    p.add_argument("path", help="height-map file (heightmap v1, heights in nm)")
    p.set_defaults(func=cmd_afm)

    p = _subcommand(sub, "synth", "write a synthetic Gaussian-correlated height map")
    p.add_argument("--rms", type=number, default=0.61, help="target RMS in nm (default %(default)s)")
    p.add_argument("--correlation-length", type=number, default=1.08, help="correlation length in nm (default %(default)s)")
    p.add_argument("--nx", type=int, default=256, help="grid columns (default %(default)s)")
    p.add_argument("--ny", type=int, default=256, help="grid rows (default %(default)s)")
    p.add_argument("--pitch", type=number, default=0.2, help="pixel pitch in nm (default %(default)s)")
    p.add_argument("--seed", type=int, default=1, help="random seed (default %(default)s)")
    p.add_argument("-o", "--output", required=True, help="output height-map path")
    p.set_defaults(func=cmd_synth)

    p = _subcommand(sub, "oracle", "brute-force drag of rough surfaces; landscape CSV and shear")
    p.add_argument("--top", help="top height-map file (non-periodic; must be narrower than --bottom)")
    p.add_argument("--bottom", help="bottom height-map file")
    p.add_argument("--rms-top", type=number, default=0.61, help="synthetic top RMS in nm (default %(default)s)")
    p.add_argument("--rms-bottom", type=number, default=0.37, help="synthetic bottom RMS in nm (default %(default)s)")
    p.add_argument("--correlation-length", type=number, default=1.08, help="synthetic correlation length in nm (default %(default)s)")
    p.add_argument("--conformity", type=float, default=1.0, help="top/bottom height correlation at rest, 0..1 (default %(default)s)")
    p.add_argument("--n", type=int, default=128, help="synthetic grid size (default %(default)s)")
    p.add_argument("--pitch", type=number, default=0.2, help="synthetic pitch in nm (default %(default)s)")
    p.add_argument("--seed", type=int, default=1, help="random seed (default %(default)s)")
    p.add_argument("--lateral-step", type=number, default=0.1, help="drag step in nm, at most half the pitch (default %(default)s)")
    p.add_argument("--max-offset", type=number, default=2.16, help="drag span in nm (default %(default)s)")
    p.add_argument("--nominal-gap", type=number, default=0.096, help="closest local gap in nm (default %(default)s)")
    p.add_argument("--d-min", type=number, default=0.096, help="gap clamp in nm (default %(default)s)")
    p.add_argument("--delta-x", type=number, default=0.54, help="shear window in nm (default %(default)s)")
    p.add_argument("--output-dir", default=".", help="directory for output files (default current)")
    p.add_argument("--name", default="landscape", help="output file stem (default %(default)s)")
    p.add_argument("--format", choices=("csv", "both"), default="csv", help="csv only, or csv plus SVG plot (default %(default)s)")
    _add_pair_options(p)
    _add_policy_options(p)
    p.set_defaults(func=cmd_oracle)

    p = _subcommand(sub, "calibrate", "fit the gap distribution to target statistics")
    p.add_argument("--rms-top", type=number, default=0.61, help="top RMS in nm (default %(default)s)")
    p.add_argument("--rms-bottom", type=number, default=0.37, help="bottom RMS in nm (default %(default)s)")
    p.add_argument("--d-min", type=number, default=0.096, help="minimum gap in nm (default %(default)s)")
    p.add_argument("--hamaker", type=number, default=130.0, help="Hamaker constant in units of 1e-21 J (default %(default)s)")
    p.add_argument("--mean-separation", type=number, default=0.48, help="target mean gap in nm (default %(default)s)")
    p.add_argument("--mean-energy", type=number, default=5.4, help="target mu_w in mJ/m^2 (default %(default)s)")
    p.add_argument("--std-energy", type=number, default=10.8, help="target sigma_w in mJ/m^2 (default %(default)s)")
    p.add_argument("--output-dir", default=".", help="directory for the JSON snippet (default current)")
    p.add_argument("--name", default="calibration.json", help="snippet file name (default %(default)s)")
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
