"""Dispersive-regime quantities.

Three routes to the qubit-state-dependent pull of a resonator mode:
the closed form chi = g^2 alpha / (Delta (Delta + alpha)), the first-order
perturbative shift evaluated from the boundary function at the bare mode,
and the exact half-difference of paired boundary-value solves with the
qubit prepared in g and in e.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .boundary import coupling_from_charge, transmon_boundary
from .params import DeviceParams, TransmonSpec, omega_to_lambda, lambda_to_omega
from .resonator import ShortedLine
from .spectrum import solve_spectrum

RESONANCE_GUARD_REL = 1e-6   # reject detunings smaller than this, relative
DISPERSIVE_RATIO = 0.3       # |g / Delta| below this counts as dispersive


def dispersive_shift(g: float, delta: float, alpha: float) -> float:
    """Half the e/g splitting of the mode, g^2 alpha / (Delta (Delta + alpha)).

    delta is the qubit-mode detuning omega_q - omega_ref and alpha the
    (negative) anharmonicity. Vanishes with alpha: for a linear ancilla the
    absorption and emission pulls cancel exactly.
    """
    if delta == 0.0 or delta + alpha == 0.0:
        raise ValueError("dispersive shift undefined at zero detuning")
    return g * g * alpha / (delta * (delta + alpha))


def critical_photon_number(g: float, delta: float) -> float:
    """Photon number Delta^2 / (4 g^2) where the dispersive expansion fails."""
    if g == 0.0:
        return math.inf
    return delta * delta / (4.0 * g * g)


def perturbative_mode_shift(b, dev: DeviceParams, omega_ref: float | None = None) -> float:
    """First-order pull of the mode at omega_ref from the boundary function.

    delta_omega = -(v^2 / (omega_ref L)) F(lam_ref). Valid while the pull is
    small against the mode spacing and omega_ref is not near a pole of F.
    """
    if omega_ref is None:
        omega_ref = dev.fundamental_frequency
    v = dev.phase_velocity
    lam_ref = omega_to_lambda(omega_ref, v)
    return -(v * v / (omega_ref * dev.length)) * b.value(lam_ref)


def resolved_coupling(spec: TransmonSpec, dev: DeviceParams) -> float:
    """The g a charge entry implies at the fundamental, or the stated g."""
    if spec.coupling is not None:
        return spec.coupling
    return coupling_from_charge(spec.charge_element, dev.fundamental_frequency, dev)


def _guard_detuning(delta: float, alpha: float, omega_ref: float):
    if abs(delta) < RESONANCE_GUARD_REL * omega_ref:
        raise ValueError("qubit degenerate with the mode; dispersive quantities undefined")
    if abs(delta + alpha) < RESONANCE_GUARD_REL * omega_ref:
        raise ValueError("e-f transition degenerate with the mode; dispersive quantities undefined")


def dispersive_shift_exact(
    dev: DeviceParams,
    spec: TransmonSpec,
    levels: int = 3,
    lam_max: float | None = None,
) -> tuple[float, float, float]:
    """(chi, ground pull, excited pull) from paired exact solves.

    Solves the full boundary-value problem twice, qubit in g then in e, and
    reads off the dressed frequency nearest the bare fundamental each time.
    chi is half the difference, the pulls are quoted against the bare mode.
    """
    line = ShortedLine(dev.length)
    v = dev.phase_velocity
    omega_ref = dev.fundamental_frequency
    lam_ref = omega_to_lambda(omega_ref, v)
    pulled = {}
    for state in ("g", "e"):
        bnd = transmon_boundary(replace(spec, state=state), dev, levels=levels)
        sp = solve_spectrum(line, bnd, lam_max)
        pulled[state] = lambda_to_omega(sp.nearest_eigenvalue(lam_ref), v)
    chi = 0.5 * (pulled["e"] - pulled["g"])
    return chi, pulled["g"] - omega_ref, pulled["e"] - omega_ref


@dataclass(frozen=True)
class DispersiveResult:
    chi: float               # closed form
    chi_exact: float         # paired solves, half-difference
    chi_perturbative: float  # first-order pole sum at the bare mode
    detuning: float
    anharmonicity: float
    coupling: float
    n_crit: float
    dispersive: bool         # |g / Delta| < DISPERSIVE_RATIO
    straddling: bool         # mode between the g-e and e-f transitions


def dispersive_report(
    dev: DeviceParams,
    spec: TransmonSpec,
    levels: int = 3,
    lam_max: float | None = None,
) -> DispersiveResult:
    omega_ref = dev.fundamental_frequency
    g = resolved_coupling(spec, dev)
    delta = spec.frequency - omega_ref
    alpha = spec.anharmonicity
    _guard_detuning(delta, alpha, omega_ref)
    chi = dispersive_shift(g, delta, alpha)
    chi_exact, _, _ = dispersive_shift_exact(dev, spec, levels=levels, lam_max=lam_max)
    chi_pert = 0.5 * (
        perturbative_mode_shift(transmon_boundary(replace(spec, state="e"), dev, levels), dev)
        - perturbative_mode_shift(transmon_boundary(replace(spec, state="g"), dev, levels), dev)
    )
    return DispersiveResult(
        chi=chi,
        chi_exact=chi_exact,
        chi_perturbative=chi_pert,
        detuning=delta,
        anharmonicity=alpha,
        coupling=g,
        n_crit=critical_photon_number(g, delta),
        dispersive=abs(g) < DISPERSIVE_RATIO * abs(delta),
        straddling=delta * (delta + alpha) <= 0.0,
    )
