import math
from dataclasses import replace

import numpy as np
import pytest

from dressed_modes import (
    GHZ,
    BoundaryPole,
    DeviceParams,
    FullSusceptanceBoundary,
    PoleProximityError,
    RationalBoundary,
    TransmonSpec,
    charge_from_coupling,
    coupling_from_charge,
    omega_to_lambda,
    pole_amplitudes,
    pole_strength_from_charge,
    pole_strength_from_coupling,
    sum_boundaries,
    transmon_boundary,
)

DEV = DeviceParams(length=3e-3, phase_velocity=1.2e8, impedance=50.0)
QUBIT = TransmonSpec(state="g", frequency=9 * GHZ, anharmonicity=-0.25 * GHZ, coupling=0.1 * GHZ)


def test_strength_formula_consistency_triangle():
    """coupling->strength and charge->strength agree through the charge map."""
    rng = np.random.default_rng(3)
    for _ in range(100):
        length = float(rng.uniform(1e-3, 1e-2))
        v = float(rng.uniform(0.5e8, 2e8))
        z0 = float(rng.uniform(20.0, 120.0))
        dev = DeviceParams(length=length, phase_velocity=v, impedance=z0)
        omega = float(rng.uniform(1.0, 20.0)) * GHZ
        charge = float(rng.uniform(0.1, 10.0)) * 1e-19
        g = coupling_from_charge(charge, omega, dev)
        via_coupling = pole_strength_from_coupling(g, omega, length, v)
        via_charge = pole_strength_from_charge(charge, omega, v, z0)
        assert via_coupling == pytest.approx(via_charge, rel=1e-10)
        # and the charge map inverts
        assert charge_from_coupling(g, omega, dev) == pytest.approx(charge, rel=1e-10)


def test_strength_sign_follows_transition_sign():
    s = pole_strength_from_coupling(0.1 * GHZ, 9 * GHZ, 3e-3, 1.2e8)
    assert s > 0.0
    assert pole_strength_from_coupling(0.1 * GHZ, -9 * GHZ, 3e-3, 1.2e8) == -s


def test_rational_boundary_rises_into_pole_from_left():
    """Positive-strength term is a rising branch: F -> +inf as lam -> pole-."""
    lam_q = omega_to_lambda(9 * GHZ, DEV.phase_velocity)
    b = RationalBoundary(beta=0.0, gamma=0.0, poles=(BoundaryPole(lam_q, 1e5, "ge"),))
    below_far = b.value(lam_q * 0.5)
    below_near = b.value(lam_q * (1.0 - 1e-6))
    above_near = b.value(lam_q * (1.0 + 1e-6))
    assert 0.0 < below_far < below_near
    assert above_near < 0.0
    # derivative of the pole term is positive on both sides
    assert b.derivative(lam_q * 0.5) > 0.0
    assert b.derivative(lam_q * 1.5) > 0.0


def test_affine_part_signs():
    b = RationalBoundary(beta=2.0, gamma=3.0, poles=())
    assert b.value(10.0) == pytest.approx(-2.0 * 10.0 - 3.0, rel=1e-15)
    assert b.derivative(10.0) == pytest.approx(-2.0, rel=1e-15)


def test_value_against_finite_difference():
    lam_q = omega_to_lambda(9 * GHZ, DEV.phase_velocity)
    b = RationalBoundary(
        beta=1.7, gamma=0.4, poles=(BoundaryPole(lam_q, 3.3e4, "ge"),)
    )
    for lam in (lam_q * 0.3, lam_q * 0.9, lam_q * 1.4):
        h = lam * 1e-7
        fd = (b.value(lam + h) - b.value(lam - h)) / (2 * h)
        assert b.derivative(lam) == pytest.approx(fd, rel=1e-5)


def test_zero_strength_poles_dropped():
    b = RationalBoundary(beta=0.0, gamma=0.0, poles=(BoundaryPole(1e6, 0.0, "ge"),))
    assert b.poles == ()
    assert b.all_positive_residues


def test_coincident_poles_rejected():
    with pytest.raises(ValueError):
        RationalBoundary(
            beta=0.0,
            gamma=0.0,
            poles=(BoundaryPole(1e6, 1.0, "a"), BoundaryPole(1e6 * (1 + 1e-12), 1.0, "b")),
        )


def test_guard_near_pole():
    b = RationalBoundary(beta=0.0, gamma=0.0, poles=(BoundaryPole(1e6, 1.0, "ge"),))
    with pytest.raises(PoleProximityError):
        b.value(1e6 * (1.0 + 1e-11))
    # outside the guard it evaluates
    assert math.isfinite(b.value(1e6 * (1.0 + 1e-8)))


def test_transmon_boundary_ground_state():
    b = transmon_boundary(QUBIT, DEV)
    assert len(b.poles) == 1
    pole = b.poles[0]
    assert pole.label == "ge"
    assert pole.location == pytest.approx(
        omega_to_lambda(QUBIT.frequency, DEV.phase_velocity), rel=1e-15
    )
    assert pole.strength > 0.0
    assert b.all_positive_residues
    assert b.beta == 0.0 and b.gamma == 0.0


def test_transmon_boundary_excited_state_levels():
    two = transmon_boundary(replace(QUBIT, state="e"), DEV, levels=2)
    assert len(two.poles) == 1
    assert two.poles[0].strength < 0.0
    assert not two.all_positive_residues

    three = transmon_boundary(replace(QUBIT, state="e"), DEV, levels=3)
    assert len(three.poles) == 2
    by_label = {p.label: p for p in three.poles}
    assert by_label["eg"].strength < 0.0 < by_label["ef"].strength
    # sqrt(2) g ladder step: strength ratio is 2 (omega_ef/omega_q)^2
    expected = 2.0 * (QUBIT.ef_frequency / QUBIT.frequency) ** 2
    assert -by_label["ef"].strength / by_label["eg"].strength == pytest.approx(
        expected, rel=1e-12
    )


def test_zero_coupling_gives_poleless_boundary():
    b = transmon_boundary(replace(QUBIT, coupling=0.0), DEV)
    assert b.poles == ()


def test_junction_capacitance_sets_beta():
    spec = replace(QUBIT, junction_capacitance=5e-15)
    b = transmon_boundary(spec, DEV)
    assert b.beta == pytest.approx(5e-15 / DEV.capacitance_per_length, rel=1e-15)


def test_sum_boundaries_merges_coincident_poles():
    b1 = transmon_boundary(QUBIT, DEV)
    b2 = transmon_boundary(replace(QUBIT, coupling=0.05 * GHZ), DEV)
    merged = sum_boundaries(b1, b2)
    assert len(merged.poles) == 1
    assert merged.poles[0].strength == pytest.approx(
        b1.poles[0].strength + b2.poles[0].strength, rel=1e-15
    )

    b3 = transmon_boundary(replace(QUBIT, frequency=8 * GHZ), DEV)
    both = sum_boundaries(b1, b3)
    assert len(both.poles) == 2
    assert both.pole_locations() == tuple(sorted(both.pole_locations()))


def test_full_form_matches_rational_at_reference():
    lam_ref = omega_to_lambda(DEV.fundamental_frequency, DEV.phase_velocity)
    b = transmon_boundary(QUBIT, DEV)
    full = FullSusceptanceBoundary.from_rational(
        b, DEV.inductance_per_length, DEV.phase_velocity, lam_ref
    )
    assert full.value(lam_ref) == pytest.approx(b.value(lam_ref), rel=1e-10)
    # pole locations survive the form change
    assert full.pole_locations() == pytest.approx(b.pole_locations(), rel=1e-12)
    # away from the calibration point the two forms drift apart slowly
    lam_off = lam_ref * 1.02
    rel = abs(full.value(lam_off) - b.value(lam_off)) / abs(b.value(lam_off))
    assert 0.0 < rel < 0.05


def test_full_form_derivative_consistent():
    lam_ref = omega_to_lambda(DEV.fundamental_frequency, DEV.phase_velocity)
    b = transmon_boundary(QUBIT, DEV)
    full = FullSusceptanceBoundary.from_rational(
        b, DEV.inductance_per_length, DEV.phase_velocity, lam_ref
    )
    lam = lam_ref * 1.01
    h = lam * 1e-7
    fd = (full.value(lam + h) - full.value(lam - h)) / (2 * h)
    assert full.derivative(lam) == pytest.approx(fd, rel=1e-5)


def test_full_form_rejects_gamma():
    b = RationalBoundary(beta=0.0, gamma=1.0, poles=())
    with pytest.raises(ValueError):
        FullSusceptanceBoundary.from_rational(b, 1e-7, 1.2e8, 1e6)


def test_pole_amplitudes_shape_and_divergence():
    b = transmon_boundary(QUBIT, DEV)
    lam_q = b.poles[0].location
    amps_near = pole_amplitudes(b, lam_q * (1 + 1e-6), 1.0)
    amps_far = pole_amplitudes(b, lam_q * 1.5, 1.0)
    assert len(amps_near) == len(amps_far) == 1
    assert abs(amps_near[0]) > abs(amps_far[0])
    assert pole_amplitudes(b, lam_q * 1.5, 0.0) == (0.0,)
