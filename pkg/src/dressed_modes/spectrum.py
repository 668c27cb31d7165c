"""Dressed-mode spectra of the terminated line.

Eigenvalues are the roots of H(lam) = log_deriv(lam) - F(lam) on (0, lam_max].
The domain is partitioned at every pole of either side; each subinterval is
scanned on an adaptive grid for sign changes, every bracket is refined by
bisection and polished with a few safeguarded Newton steps using analytic
derivatives. When all boundary residues are positive the partition pins
exactly one root to every pole-bounded interval, and the solver enforces
that; with mixed signs (occupied excited state) intervals may hold zero or
several roots and all of them are reported.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .boundary import transmon_boundary
from .errors import InterlacingError, PoleCollisionError, SolverError
from .params import DeviceParams, TransmonSpec, lambda_to_omega
from .resonator import ShortedLine

BRACKET_REL = 1e-13          # bisection stops at this relative bracket width
RESIDUAL_REL = 1e-8          # acceptance threshold on |H| at the root
CLAMP_REL = 1e-8             # evaluation offset from pole endpoints
GRID_INITIAL = 64
GRID_MAX = 4096
NEWTON_STEPS = 5
DIRICHLET_COLLISION_REL = 1e-6


@dataclass(frozen=True)
class PolePoint:
    location: float
    kind: str      # "dirichlet" or "boundary"
    label: str


@dataclass(frozen=True)
class EigenvalueRecord:
    lam: float
    bracket: tuple[float, float]
    residual: float
    iterations: int


@dataclass(frozen=True)
class DressedSpectrum:
    records: tuple[EigenvalueRecord, ...]
    partition: tuple[PolePoint, ...]
    intervals: tuple[tuple[float, float], ...]
    counts: tuple[int, ...]
    interlacing: tuple[bool | None, ...]   # None on the two edge intervals
    lam_max: float

    @property
    def eigenvalues(self) -> tuple[float, ...]:
        return tuple(r.lam for r in self.records)

    def frequencies(self, v: float) -> tuple[float, ...]:
        return tuple(lambda_to_omega(r.lam, v) for r in self.records)

    def nearest_eigenvalue(self, lam: float) -> float:
        if not self.records:
            raise SolverError("spectrum is empty")
        return min(self.records, key=lambda r: abs(r.lam - lam)).lam


def _scan_brackets(h, lo: float, hi: float, n: int):
    """Sign changes of h on an n-point uniform grid over [lo, hi]."""
    step = (hi - lo) / (n - 1)
    brackets = []
    x_prev = lo
    v_prev = h(lo)
    for i in range(1, n):
        x = hi if i == n - 1 else lo + i * step
        v = h(x)
        if v_prev == 0.0:
            brackets.append((x_prev, x_prev, 0.0, 0.0))
        elif v == 0.0:
            pass  # picked up as the next leading edge
        elif (v_prev < 0.0) != (v < 0.0):
            brackets.append((x_prev, x, v_prev, v))
        x_prev, v_prev = x, v
    if v_prev == 0.0:
        brackets.append((x_prev, x_prev, 0.0, 0.0))
    return brackets


def _refine(h, dh, a: float, b: float, ha: float, hb: float):
    """Bisection to BRACKET_REL width, then safeguarded Newton polish."""
    iters = 0
    if a == b:
        return a, iters
    while (b - a) > BRACKET_REL * max(abs(a), abs(b)):
        mid = 0.5 * (a + b)
        if not (a < mid < b):
            break
        hm = h(mid)
        iters += 1
        if hm == 0.0:
            return mid, iters
        if (hm < 0.0) == (ha < 0.0):
            a, ha = mid, hm
        else:
            b, hb = mid, hm
    x = 0.5 * (a + b)
    hx = h(x)
    for _ in range(NEWTON_STEPS):
        if hx == 0.0:
            break
        d = dh(x)
        if d == 0.0:
            break
        x_next = x - hx / d
        if not (a <= x_next <= b):
            break
        h_next = h(x_next)
        iters += 1
        if abs(h_next) < abs(hx):
            x, hx = x_next, h_next
        else:
            break
    return x, iters


def solve_spectrum(line: ShortedLine, b, lam_max: float | None = None) -> DressedSpectrum:
    """All dressed eigenvalues on (0, lam_max].

    `b` is any boundary object exposing poles / value / derivative /
    all_positive_residues (RationalBoundary or FullSusceptanceBoundary).
    Raises PoleCollisionError when a boundary pole sits within 1e-6 relative
    of a Dirichlet pole, InterlacingError when the positive-residue count
    guarantee fails, SolverError when a refined root's residual is too large.
    """
    length = line.length
    if lam_max is None:
        lam_max = line.default_lam_max()
    if lam_max <= 0.0:
        raise ValueError("lam_max must be positive")

    markers: list[PolePoint] = []
    k = 1
    while True:
        p = (k * math.pi / length) ** 2
        if p >= lam_max:
            break
        markers.append(PolePoint(p, "dirichlet", f"k={k}"))
        k += 1
    dirichlet = [m.location for m in markers]
    for p in b.poles:
        if p.location >= lam_max:
            continue
        for d in dirichlet:
            if abs(p.location - d) < DIRICHLET_COLLISION_REL * d:
                raise PoleCollisionError(
                    f"boundary pole {p.label or p.location} within "
                    f"{DIRICHLET_COLLISION_REL} relative of Dirichlet pole at {d}"
                )
        markers.append(PolePoint(p.location, "boundary", p.label))
    markers.sort(key=lambda m: m.location)

    def h(lam):
        return line.log_deriv(lam) - b.value(lam)

    def dh(lam):
        return line.dlog_deriv(lam) - b.derivative(lam)

    demand = b.all_positive_residues
    edges = [0.0] + [m.location for m in markers] + [lam_max]
    records: list[EigenvalueRecord] = []
    intervals: list[tuple[float, float]] = []
    counts: list[int] = []
    flags: list[bool | None] = []

    for i in range(len(edges) - 1):
        lo_edge, hi_edge = edges[i], edges[i + 1]
        lo_is_pole = 0 < i
        hi_is_pole = i + 1 < len(edges) - 1
        lo = lo_edge + CLAMP_REL * lo_edge if lo_is_pole else lo_edge
        hi = hi_edge - CLAMP_REL * hi_edge if hi_is_pole else hi_edge
        pole_bounded = lo_is_pole and hi_is_pole
        intervals.append((lo_edge, hi_edge))
        if hi <= lo:
            if demand and pole_bounded:
                raise InterlacingError(
                    "interval too narrow to resolve",
                    interval=(lo_edge, hi_edge),
                    count=0,
                )
            counts.append(0)
            flags.append(None if not pole_bounded else False)
            continue

        n = GRID_INITIAL
        brackets = _scan_brackets(h, lo, hi, n)
        if demand and pole_bounded:
            while len(brackets) == 0 and n < GRID_MAX:
                n *= 2
                brackets = _scan_brackets(h, lo, hi, n)
            if len(brackets) != 1:
                raise InterlacingError(
                    f"expected one eigenvalue, found {len(brackets)}",
                    interval=(lo_edge, hi_edge),
                    count=len(brackets),
                )
        else:
            while n < GRID_MAX:
                n2 = n * 2
                finer = _scan_brackets(h, lo, hi, n2)
                if len(finer) == len(brackets):
                    break
                n, brackets = n2, finer

        found = 0
        for (ba, bb, ha, hb) in brackets:
            root, iters = _refine(h, dh, ba, bb, ha, hb)
            gval = line.log_deriv(root)
            fval = b.value(root)
            residual = abs(gval - fval)
            scale = max(abs(gval), abs(fval), 1.0 / length)
            if residual > RESIDUAL_REL * scale:
                raise SolverError(
                    f"root at lam={root} residual {residual:.3e} exceeds "
                    f"{RESIDUAL_REL} of scale {scale:.3e}"
                )
            records.append(EigenvalueRecord(root, (ba, bb), residual, iters))
            found += 1
        counts.append(found)
        flags.append(found == 1 if pole_bounded else None)

    for r1, r2 in zip(records, records[1:]):
        if not r1.lam < r2.lam:
            raise SolverError("eigenvalues not strictly increasing")

    return DressedSpectrum(
        records=tuple(records),
        partition=tuple(markers),
        intervals=tuple(intervals),
        counts=tuple(counts),
        interlacing=tuple(flags),
        lam_max=lam_max,
    )


def pole_margin(spectrum: DressedSpectrum) -> float:
    """Minimum relative distance from any eigenvalue to any boundary pole."""
    bpoles = [m.location for m in spectrum.partition if m.kind == "boundary"]
    if not bpoles or not spectrum.records:
        return math.inf
    return min(
        abs(r.lam - p) / p for r in spectrum.records for p in bpoles
    )


@dataclass(frozen=True)
class CrossingSweep:
    """Branches of the avoided crossing as the qubit tunes through the mode."""

    qubit_frequency: tuple[float, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __post_init__(self):
        if not (len(self.qubit_frequency) == len(self.lower) == len(self.upper)):
            raise ValueError("branch arrays must share a grid")
        for lo, hi in zip(self.lower, self.upper):
            if not hi - lo > 0.0:
                raise ValueError("branch gap must stay positive")

    @property
    def gap(self) -> tuple[float, ...]:
        return tuple(u - l for l, u in zip(self.lower, self.upper))


def _worker_count(threads: int | None, njobs: int) -> int:
    if threads is None:
        raw = os.environ.get("DRESSED_MODES_THREADS", "1")
        try:
            threads = int(raw)
        except ValueError:
            threads = 1
    return max(1, min(threads, njobs))


def _map_ordered(fn, values, threads):
    workers = _worker_count(threads, len(values))
    if workers == 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, values))


def qubit_frequency_sweep(
    dev: DeviceParams,
    spec: TransmonSpec,
    omega_q_values,
    levels: int = 2,
    lam_max: float | None = None,
    threads: int | None = None,
) -> CrossingSweep:
    """Dressed branches bracketing the fundamental as omega_q is tuned.

    Poles and residues move with omega_q; the coupling is held fixed. At each
    grid point the two dressed frequencies nearest the bare fundamental (one
    at or below, one at or above) are recorded.
    """
    line = ShortedLine(dev.length)
    omega_ref = dev.fundamental_frequency
    v = dev.phase_velocity

    def solve_one(omega_q):
        s = replace(spec, frequency=omega_q)
        bnd = transmon_boundary(s, dev, levels)
        sp = solve_spectrum(line, bnd, lam_max)
        freqs = sp.frequencies(v)
        lower = max((f for f in freqs if f <= omega_ref), default=None)
        upper = min((f for f in freqs if f >= omega_ref), default=None)
        if lower is None or upper is None:
            raise SolverError(
                f"no dressed pair brackets the fundamental at omega_q={omega_q}"
            )
        return lower, upper

    pairs = _map_ordered(solve_one, list(omega_q_values), threads)
    return CrossingSweep(
        qubit_frequency=tuple(omega_q_values),
        lower=tuple(p[0] for p in pairs),
        upper=tuple(p[1] for p in pairs),
    )


@dataclass(frozen=True)
class RabiSplitting:
    measured: float    # gap between the dressed pair at resonance
    predicted: float   # (v^2/omega_q) sqrt(2 delta / L); identically 2g
    margin: float      # relative eigenvalue-pole margin at resonance


def vacuum_rabi_gap(
    dev: DeviceParams,
    spec: TransmonSpec,
    lam_max: float | None = None,
) -> RabiSplitting:
    """Vacuum Rabi splitting with the qubit tuned to the fundamental.

    The ground-state boundary is used regardless of spec.state. With zero
    coupling the pole term vanishes and the crossing is degenerate: both
    branches coincide with the fundamental and the gap and margin are zero.
    """
    omega_ref = dev.fundamental_frequency
    if abs(spec.frequency - omega_ref) > 1e-9 * omega_ref:
        raise ValueError("qubit must be tuned to the fundamental frequency")
    bnd = transmon_boundary(replace(spec, state="g"), dev, levels=2)
    if not bnd.poles:
        return RabiSplitting(measured=0.0, predicted=0.0, margin=0.0)
    delta = bnd.poles[0].strength
    v = dev.phase_velocity
    predicted = (v * v / spec.frequency) * math.sqrt(2.0 * delta / dev.length)
    line = ShortedLine(dev.length)
    sp = solve_spectrum(line, bnd, lam_max)
    freqs = sp.frequencies(v)
    lower = max((f for f in freqs if f <= omega_ref), default=None)
    upper = min((f for f in freqs if f >= omega_ref), default=None)
    if lower is None or upper is None:
        raise SolverError("no dressed pair brackets the fundamental")
    return RabiSplitting(
        measured=upper - lower,
        predicted=predicted,
        margin=pole_margin(sp),
    )
