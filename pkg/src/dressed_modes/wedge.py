"""Dirichlet modes of a wedge of opening angle Phi.

The sine modes sin(n*pi*phi/Phi) diagonalize the Laplacian on (0, Phi) with
walls held at zero. Acting with the bare first-derivative operator maps them
onto cosines, which are nonzero at both walls, so -i d/dphi does not preserve
the Dirichlet domain; only its square does.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson


@dataclass(frozen=True)
class WedgeGeometry:
    """Opening angle of the wedge, 0 < angle <= 2*pi."""

    angle: float

    def __post_init__(self):
        if not 0.0 < self.angle <= 2.0 * math.pi:
            raise ValueError("angle must lie in (0, 2*pi]")


def _check_index(n: int):
    if not isinstance(n, int) or n < 1:
        raise ValueError("mode index must be an integer >= 1")


def azimuthal_wavenumber(n: int, geom: WedgeGeometry) -> float:
    """Quantized wavenumber mu_n = n*pi/Phi of the n-th sine mode."""
    _check_index(n)
    return n * math.pi / geom.angle


def laplacian_eigenvalue(n: int, geom: WedgeGeometry) -> float:
    """Eigenvalue -mu_n^2 of d^2/dphi^2 on the n-th mode."""
    return -azimuthal_wavenumber(n, geom) ** 2


def derivative_wall_values(n: int, geom: WedgeGeometry) -> tuple[float, float]:
    """Wall values (phi=0, phi=Phi) of the derivative image cos(mu_n*phi).

    Both magnitudes are 1, showing the image leaves the Dirichlet domain.
    """
    _check_index(n)
    return math.cos(0.0), math.cos(n * math.pi)


def sine_mode_overlap(n: int, m: int, geom: WedgeGeometry, panels: int = 10_000) -> float:
    """Quadrature of sin(mu_n phi) sin(mu_m phi) over (0, Phi).

    Composite Simpson on `panels` panels; equals (Phi/2) delta_nm exactly.
    """
    _check_index(n)
    _check_index(m)
    if panels < 2:
        raise ValueError("panels must be >= 2")
    phi = np.linspace(0.0, geom.angle, 2 * panels + 1)
    y = np.sin(azimuthal_wavenumber(n, geom) * phi) * np.sin(
        azimuthal_wavenumber(m, geom) * phi
    )
    return float(simpson(y, x=phi))
