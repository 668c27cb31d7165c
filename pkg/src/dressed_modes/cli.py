"""Command-line front end.

Subcommands: spectrum, sweep, chi, rabi, multimode, parity, wedge,
validate. Frequencies are GHz in every file and printout, rad/s inside.
Every file-producing run drops a <out>.manifest.json sidecar recording the
resolved inputs; rerunning with the same arguments reproduces every output
byte for byte. Exit codes: 0 success, 1 validation or solver failure,
2 usage error, 3 unreadable or invalid config.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace

from . import __version__
from .dispersive import (
    DISPERSIVE_RATIO,
    critical_photon_number,
    dispersive_shift_exact,
    resolved_coupling,
)
from .errors import ConfigError
from .jc import jc_branch_sweep
from .multimode import MultimodeModel, divergence_report
from .multiqubit import (
    parity_report,
    qnd_residual,
    single_qubit_commutators,
    two_qubit_model,
)
from .params import GHZ, load_config
from .resonator import ShortedLine
from .spectrum import qubit_frequency_sweep, solve_spectrum
from .boundary import transmon_boundary
from .wedge import (
    WedgeGeometry,
    azimuthal_wavenumber,
    derivative_wall_values,
    laplacian_eigenvalue,
    sine_mode_overlap,
)

MHZ = GHZ / 1000.0


def _grid(text: str) -> list[float]:
    """START:STOP:COUNT, endpoints inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be START:STOP:COUNT")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from exc
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be >= 1")
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    vals = [start + i * step for i in range(count - 1)]
    vals.append(stop)
    return vals


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from exc


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _cell(cell) -> str:
    if cell is None:
        return ""
    if isinstance(cell, bool):
        return "true" if cell else "false"
    if isinstance(cell, float):
        return _fmt(cell)
    return str(cell)


def _csv_text(header: list[str], rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _write_csv(path: str, header: list[str], rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(_csv_text(header, rows))


def _write_json(path: str, payload):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(json.dumps(payload, sort_keys=True, indent=2))
        fh.write("\n")


def _write_rows(args, header: list[str], rows):
    """Row data as CSV (default) or, with --json, a list of row objects."""
    if getattr(args, "format", "csv") == "json":
        _write_json(args.out, [dict(zip(header, row)) for row in rows])
    else:
        _write_csv(args.out, header, rows)


def _snapshot(dev, spec, extra=None) -> dict:
    snap = {
        "resonator.length_m": dev.length,
        "resonator.phase_velocity_m_s": dev.phase_velocity,
        "resonator.impedance_ohm": dev.impedance,
        "qubit.frequency_ghz": spec.frequency / GHZ,
        "qubit.anharmonicity_ghz": spec.anharmonicity / GHZ,
        "qubit.state": spec.state,
    }
    if spec.coupling is not None:
        snap["qubit.coupling_ghz"] = spec.coupling / GHZ
    if spec.charge_element is not None:
        snap["qubit.charge_element_C"] = spec.charge_element
    if spec.junction_capacitance is not None:
        snap["qubit.cj_f"] = spec.junction_capacitance
    if spec.junction_inductance is not None:
        snap["qubit.lj_h"] = spec.junction_inductance
    if extra:
        snap.update(extra)
    return snap


def _write_manifest(args, outputs: list[str], snapshot: dict):
    payload = {
        "subcommand": args.command,
        "config": snapshot,
        "outputs": outputs,
        "seed": getattr(args, "seed", 0),
        "version": __version__,
    }
    _write_json(outputs[0] + ".manifest.json", payload)


def _load(args):
    dev, spec, _ = load_config(args.config)
    if getattr(args, "state", None):
        spec = replace(spec, state=args.state)
    return dev, spec


def cmd_spectrum(args) -> int:
    dev, spec = _load(args)
    line = ShortedLine(dev.length)
    bnd = transmon_boundary(spec, dev, levels=args.levels)
    sp = solve_spectrum(line, bnd)
    v = dev.phase_velocity
    bpoles = [m.location for m in sp.partition if m.kind == "boundary"]
    margins = []
    if bpoles:
        margins = [
            min(abs(r.lam - p) / p for p in bpoles) for r in sp.records
        ]
    payload = {
        "eigenvalues_hz": [f / (2.0 * math.pi) for f in sp.frequencies(v)],
        "brackets": [list(r.bracket) for r in sp.records],
        "margins": margins,
        "boundary": {
            "beta": bnd.beta,
            "gamma": bnd.gamma,
            "poles": [
                {"lambda": p.location, "delta": p.strength, "label": p.label}
                for p in bnd.poles
            ],
        },
    }
    _write_json(args.out, payload)
    _write_manifest(args, [args.out], _snapshot(dev, spec, {"levels": args.levels}))
    return 0


def cmd_sweep(args) -> int:
    dev, spec = _load(args)
    omegas = [w * GHZ for w in args.omega_q_ghz]
    sweep = qubit_frequency_sweep(dev, spec, omegas, levels=args.levels)
    rows = [
        (wq / GHZ, lo / GHZ, hi / GHZ, (hi - lo) / GHZ)
        for wq, lo, hi in zip(sweep.qubit_frequency, sweep.lower, sweep.upper)
    ]
    _write_rows(args, ["omega_q_ghz", "branch_lo_ghz", "branch_hi_ghz", "gap_ghz"], rows)
    grid = args.omega_q_ghz
    _write_manifest(
        args,
        [args.out],
        _snapshot(
            dev,
            spec,
            {
                "levels": args.levels,
                "format": args.format,
                "sweep.omega_q_ghz": [grid[0], grid[-1], len(grid)],
            },
        ),
    )
    return 0


def cmd_chi(args) -> int:
    dev, spec = _load(args)
    g = resolved_coupling(spec, dev)
    delta = spec.frequency - dev.fundamental_frequency
    chi, pull_g, pull_e = dispersive_shift_exact(dev, spec, levels=args.levels)
    payload = {
        "chi_mhz": chi / MHZ,
        "delta_omega_g_mhz": pull_g / MHZ,
        "delta_omega_e_mhz": pull_e / MHZ,
        "n_crit": critical_photon_number(g, delta),
        "flags": {
            "dispersive": abs(g) < DISPERSIVE_RATIO * abs(delta),
            "straddling": delta * (delta + spec.anharmonicity) <= 0.0,
        },
    }
    if args.format == "csv":
        header = [
            "chi_mhz", "delta_omega_g_mhz", "delta_omega_e_mhz", "n_crit",
            "dispersive", "straddling",
        ]
        row = (
            payload["chi_mhz"], payload["delta_omega_g_mhz"],
            payload["delta_omega_e_mhz"], payload["n_crit"],
            payload["flags"]["dispersive"], payload["flags"]["straddling"],
        )
        print(_csv_text(header, [row]), end="")
        if args.out:
            _write_csv(args.out, header, [row])
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))
        if args.out:
            _write_json(args.out, payload)
    if args.out:
        _write_manifest(
            args,
            [args.out],
            _snapshot(dev, spec, {"levels": args.levels, "format": args.format}),
        )
    return 0


def cmd_rabi(args) -> int:
    dev, spec = _load(args)
    omegas = [w * GHZ for w in args.omega_q_ghz]
    jc = sl = None
    if args.method in ("jc", "both"):
        g = resolved_coupling(spec, dev)
        jc = jc_branch_sweep(dev.fundamental_frequency, omegas, g)
    if args.method in ("sl", "both"):
        sl = qubit_frequency_sweep(dev, replace(spec, state="g"), omegas, levels=2)
    rows = []
    for i, wq in enumerate(omegas):
        jc_lo = jc.lower[i] / GHZ if jc else None
        jc_hi = jc.upper[i] / GHZ if jc else None
        sl_lo = sl.lower[i] / GHZ if sl else None
        sl_hi = sl.upper[i] / GHZ if sl else None
        diff = None
        if jc and sl:
            diff = (sl.gap[i] - jc.gap[i]) / GHZ
        rows.append((wq / GHZ, jc_lo, jc_hi, sl_lo, sl_hi, diff))
    _write_rows(args, ["omega_q_ghz", "jc_lo", "jc_hi", "sl_lo", "sl_hi", "diff"], rows)
    grid = args.omega_q_ghz
    _write_manifest(
        args,
        [args.out],
        _snapshot(
            dev,
            spec,
            {
                "method": args.method,
                "format": args.format,
                "sweep.omega_q_ghz": [grid[0], grid[-1], len(grid)],
            },
        ),
    )
    return 0


def cmd_multimode(args) -> int:
    dev, spec = _load(args)
    model = MultimodeModel(
        omega_1=dev.fundamental_frequency,
        g_1=resolved_coupling(spec, dev),
        omega_q=spec.frequency,
        alpha=spec.anharmonicity,
    )
    rep = divergence_report(model, schedule=args.nmax_schedule)
    rows = [
        (n, lamb / GHZ, chi / GHZ)
        for n, lamb, chi in zip(rep.n_values, rep.lamb_sums, rep.chi_sums)
    ]
    _write_rows(args, ["n_max", "lamb_ghz", "chi_ghz"], rows)
    fits = {
        "lamb_slope_ghz_per_mode": rep.lamb_slope / GHZ,
        "lamb_intercept_ghz": rep.lamb_intercept / GHZ,
        "lamb_r_squared": rep.lamb_r_squared,
        "chi_increments_ghz": [x / GHZ for x in rep.chi_increments],
        "chi_increment_spread": rep.chi_increment_spread,
        "chi_increment_asymptote_ghz": rep.chi_increment_asymptote / GHZ,
        "degenerate": rep.degenerate,
    }
    fits_path = args.out + ".fits.json"
    _write_json(fits_path, fits)
    _write_manifest(
        args,
        [args.out, fits_path],
        _snapshot(
            dev,
            spec,
            {"nmax_schedule": list(args.nmax_schedule), "format": args.format},
        ),
    )
    return 0


def cmd_parity(args) -> int:
    dev, spec1 = _load(args)
    spec2 = spec1
    if args.q2_frequency_ghz is not None:
        spec2 = replace(spec2, frequency=args.q2_frequency_ghz * GHZ)
    if args.q2_anharmonicity_ghz is not None:
        spec2 = replace(spec2, anharmonicity=args.q2_anharmonicity_ghz * GHZ)
    if args.q2_coupling_ghz is not None:
        spec2 = replace(spec2, coupling=args.q2_coupling_ghz * GHZ)
    model = two_qubit_model(dev, spec1, spec2, levels=args.levels)
    if args.chi_p_mhz is not None:
        model = replace(model, chi_p=args.chi_p_mhz * MHZ)
    rep = parity_report(model)
    comm = single_qubit_commutators(model.chi_1, n_max=5)
    qnd_comm, _ = qnd_residual(model, 10)
    protected = []
    if rep.odd_protected:
        protected.append("ge-eg")
    if rep.even_protected:
        protected.append("gg-ee")
    payload = {
        "frequencies_ghz": {k: f / GHZ for k, f in rep.frequencies.items()},
        "odd_gap_mhz": rep.odd_gap / MHZ,
        "even_gap_mhz": rep.even_gap / MHZ,
        "commutator_norms": {
            "hint_sz": comm["with_sz"],
            "hint_sx": comm["with_sx"],
            "sx_identity_residual": comm["sx_identity_residual"],
            "hdisp_parity": qnd_comm,
        },
        "protected": protected,
    }
    if args.chi_p_mhz is not None:
        payload["engineered"] = {
            "chi_p_mhz": args.chi_p_mhz,
            "even_ghz": (model.center + model.chi_p) / GHZ,
            "odd_ghz": (model.center - model.chi_p) / GHZ,
        }
    text = json.dumps(payload, sort_keys=True, indent=2)
    print(text)
    if args.out:
        _write_json(args.out, payload)
        extra = {
            "levels": args.levels,
            "q2.frequency_ghz": spec2.frequency / GHZ,
            "q2.anharmonicity_ghz": spec2.anharmonicity / GHZ,
            "q2.coupling_ghz": (spec2.coupling or 0.0) / GHZ,
        }
        _write_manifest(args, [args.out], _snapshot(dev, spec1, extra))
    return 0


def cmd_wedge(args) -> int:
    geom = WedgeGeometry(angle=args.angle_rad)
    n_modes = args.modes
    worst = 0.0
    for n in range(1, n_modes + 1):
        for m in range(1, n_modes + 1):
            ref = geom.angle / 2.0 if n == m else 0.0
            worst = max(worst, abs(sine_mode_overlap(n, m, geom) - ref))
    wall = {str(n): list(derivative_wall_values(n, geom)) for n in range(1, n_modes + 1)}
    payload = {
        "angle_rad": geom.angle,
        "wavenumbers": [azimuthal_wavenumber(n, geom) for n in range(1, n_modes + 1)],
        "laplacian_eigenvalues": [
            laplacian_eigenvalue(n, geom) for n in range(1, n_modes + 1)
        ],
        "orthogonality_max_error": worst,
        "wall_derivative_values": wall,
    }
    text = json.dumps(payload, sort_keys=True, indent=2)
    print(text)
    if args.out:
        _write_json(args.out, payload)
        _write_manifest(args, [args.out], {"angle_rad": geom.angle, "modes": n_modes})
    return 0


def cmd_validate(args) -> int:
    from .acceptance import run_all

    results = run_all(only=args.only, seed=args.seed)
    failed = 0
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"[{tag}] {res.name}: {res.detail}")
        if not res.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} criteria passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dressed-modes",
        description="Dressed-mode spectra of a transmon-terminated resonator.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, out_default=None, out_required=False):
        p.add_argument("--config", required=True, help="device config file")
        if out_default is not None or out_required:
            p.add_argument("--out", default=out_default, required=out_required)
        else:
            p.add_argument("--out", default=None)
        p.add_argument("--seed", type=int, default=0)

    def add_format(p, default):
        group = p.add_mutually_exclusive_group()
        group.add_argument(
            "--json", dest="format", action="store_const", const="json",
            help="emit rows as a JSON array" if default == "csv" else "JSON output (default)",
        )
        group.add_argument(
            "--csv", dest="format", action="store_const", const="csv",
            help="CSV output (default)" if default == "csv" else "emit a one-row CSV",
        )
        p.set_defaults(format=default)

    p = sub.add_parser("spectrum", help="solve one configuration")
    add_common(p, out_default="spectrum.json")
    p.add_argument("--state", choices=("g", "e"))
    p.add_argument("--levels", type=int, choices=(2, 3), default=2)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="tune the qubit through the fundamental")
    add_common(p, out_default="sweep.csv")
    add_format(p, "csv")
    p.add_argument("--state", choices=("g", "e"))
    p.add_argument("--levels", type=int, choices=(2, 3), default=2)
    p.add_argument(
        "--omega-q-ghz", dest="omega_q_ghz", type=_grid, required=True,
        help="grid START:STOP:COUNT in GHz",
    )
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("chi", help="dispersive shift of the fundamental")
    add_common(p)
    add_format(p, "json")
    p.add_argument("--levels", type=int, choices=(2, 3), default=3)
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("rabi", help="avoided-crossing branches, both models")
    add_common(p, out_default="rabi.csv")
    add_format(p, "csv")
    p.add_argument("--method", choices=("jc", "sl", "both"), default="both")
    p.add_argument(
        "--omega-q-ghz", dest="omega_q_ghz", type=_grid, required=True,
        help="grid START:STOP:COUNT in GHz",
    )
    p.set_defaults(func=cmd_rabi)

    p = sub.add_parser("multimode", help="divergent partial sums over modes")
    add_common(p, out_default="multimode.csv")
    add_format(p, "csv")
    p.add_argument(
        "--nmax-schedule", dest="nmax_schedule", type=_int_list,
        default=[100, 200, 400, 800],
    )
    p.set_defaults(func=cmd_multimode)

    p = sub.add_parser("parity", help="two-qubit readout map and QND checks")
    add_common(p)
    p.add_argument("--levels", type=int, choices=(2, 3), default=3)
    p.add_argument("--q2-frequency-ghz", type=float, default=None)
    p.add_argument("--q2-anharmonicity-ghz", type=float, default=None)
    p.add_argument("--q2-coupling-ghz", type=float, default=None)
    p.add_argument("--chi-p-mhz", type=float, default=None)
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("wedge", help="azimuthal modes of a wedge domain")
    p.add_argument("--angle-rad", type=float, default=math.pi / 2.0)
    p.add_argument("--modes", type=int, default=4)
    p.add_argument("--out", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_wedge)

    p = sub.add_parser("validate", help="run the acceptance criteria")
    p.add_argument("--only", default=None, help="run a single named criterion")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # solver or validation failure
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
