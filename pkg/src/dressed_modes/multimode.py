"""Multimode sums over the quarter-wave ladder and their divergences.

The shorted line presents modes at omega_n = (2n-1) omega_1 with couplings
growing as g_n = g_1 sqrt(2n-1), so g_n^2/omega_n is the same for every
mode. Consequences: the qubit Lamb-shift sum diverges linearly in the mode
cutoff, and the total dispersive pull diverges logarithmically. Both are
computed as explicit partial sums so the growth law itself can be checked.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

RESONANCE_GUARD_REL = 1e-6
DEFAULT_SCHEDULE = (100, 200, 400, 800)


@dataclass(frozen=True)
class MultimodeModel:
    omega_1: float
    g_1: float
    omega_q: float
    alpha: float

    def __post_init__(self):
        if self.omega_1 <= 0.0:
            raise ValueError("fundamental must be positive")
        if self.g_1 < 0.0:
            raise ValueError("coupling must be nonnegative")
        if self.omega_q <= 0.0:
            raise ValueError("qubit frequency must be positive")
        if self.alpha > 0.0:
            raise ValueError("anharmonicity must not be positive")

    def bare_frequency(self, n: int) -> float:
        if n < 1:
            raise ValueError("mode index starts at 1")
        return (2 * n - 1) * self.omega_1

    def mode_coupling(self, n: int) -> float:
        if n < 1:
            raise ValueError("mode index starts at 1")
        return self.g_1 * math.sqrt(2 * n - 1)


def _guarded_detuning(model: MultimodeModel, omega: float, n: int) -> float:
    omega_n = model.bare_frequency(n)
    delta = omega - omega_n
    if abs(delta) < RESONANCE_GUARD_REL * omega_n:
        raise ValueError(f"transition resonant with mode {n}; sum undefined")
    return delta


def lamb_shift_partial_sum(model: MultimodeModel, n_max: int) -> float:
    """Sum of g_n^2 / (omega_q - omega_n) over the first n_max modes.

    Terms tend to the constant -g_1^2/omega_1, so the partial sums grow
    linearly in n_max; there is no limit to converge to.
    """
    if n_max < 1:
        raise ValueError("need at least one mode")
    terms = []
    for n in range(1, n_max + 1):
        delta = _guarded_detuning(model, model.omega_q, n)
        g_n = model.mode_coupling(n)
        terms.append(g_n * g_n / delta)
    return math.fsum(terms)


def dispersive_partial_sum(model: MultimodeModel, n_max: int) -> float:
    """Total dispersive pull summed over the first n_max modes.

    Per-mode chi falls off as 1/(2n-1), a harmonic tail, so the partial sums
    grow like (g_1^2 alpha / omega_1^2) * (ln n_max)/2.
    """
    if n_max < 1:
        raise ValueError("need at least one mode")
    terms = []
    for n in range(1, n_max + 1):
        delta = _guarded_detuning(model, model.omega_q, n)
        delta_ef = _guarded_detuning(model, model.omega_q + model.alpha, n)
        g_n = model.mode_coupling(n)
        terms.append(g_n * g_n * model.alpha / (delta * delta_ef))
    return math.fsum(terms)


@dataclass(frozen=True)
class DivergenceReport:
    n_values: tuple[int, ...]
    lamb_sums: tuple[float, ...]
    chi_sums: tuple[float, ...]
    lamb_slope: float
    lamb_intercept: float
    lamb_r_squared: float
    chi_increments: tuple[float, ...]
    chi_increment_spread: float
    chi_increment_asymptote: float
    degenerate: bool


def divergence_report(model: MultimodeModel, schedule=DEFAULT_SCHEDULE) -> DivergenceReport:
    """Partial-sum growth diagnostics over a cutoff schedule.

    Fits the Lamb sums linearly in the cutoff and reports R^2; collects the
    chi increments between consecutive doubled cutoffs, whose common limit
    is (g_1^2 alpha / omega_1^2) (ln 2)/2. With g_1 = 0 every sum is zero
    and the report is flagged degenerate.
    """
    n_values = tuple(sorted(set(int(n) for n in schedule)))
    if len(n_values) < 2:
        raise ValueError("schedule needs at least two cutoffs")
    lamb = tuple(lamb_shift_partial_sum(model, n) for n in n_values)
    chi = tuple(dispersive_partial_sum(model, n) for n in n_values)

    slope, intercept = np.polyfit(n_values, lamb, 1)
    fitted = np.polyval([slope, intercept], n_values)
    ss_res = float(np.sum((np.asarray(lamb) - fitted) ** 2))
    ss_tot = float(np.sum((np.asarray(lamb) - np.mean(lamb)) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot

    increments = []
    by_n = dict(zip(n_values, chi))
    for n in n_values:
        if 2 * n in by_n:
            increments.append(by_n[2 * n] - by_n[n])
    if increments and any(x != 0.0 for x in increments):
        mean = math.fsum(increments) / len(increments)
        spread = max(abs(x - mean) for x in increments) / abs(mean)
    else:
        spread = 0.0

    return DivergenceReport(
        n_values=n_values,
        lamb_sums=lamb,
        chi_sums=chi,
        lamb_slope=float(slope),
        lamb_intercept=float(intercept),
        lamb_r_squared=r_squared,
        chi_increments=tuple(increments),
        chi_increment_spread=spread,
        chi_increment_asymptote=(
            model.g_1 ** 2 * model.alpha / model.omega_1 ** 2 * 0.5 * math.log(2.0)
        ),
        degenerate=model.g_1 == 0.0,
    )
