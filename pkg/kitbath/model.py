# -*- coding: utf-8 -*-
"""Kitaev chain: coupling matrix, momentum grid and Bogoliubov data."""

import math
from typing import NamedTuple, Tuple

import numpy
from typing_extensions import Literal

from kitbath.errors import InvalidChain

__all__ = [
    'Boundary', 'KitaevParams', 'DispersionPoint',
    'build_A_matrix', 'dispersion', 'momentum_grid', 'half_zone',
    'a_phi_matrix', 'bogoliubov_matrix',
]

Boundary = Literal['antiperiodic', 'periodic']

#: Momentum offset ``κ`` of each boundary sector.
SECTOR_OFFSET = {
    'antiperiodic': 0.5,
    'periodic': 0.0,
}

###############################################################################
# Typings


class KitaevParams(NamedTuple):
    """Chain at ``w = -Δ = 1``, ``μ = 2h``.

    Attributes:
        h (float): transverse field
        n_sites (int): number of sites ``N`` of finite-chain paths
        boundary (Literal['antiperiodic', 'periodic']): sector of the wrap bond

    """

    h: float
    n_sites: int = 64
    boundary: Boundary = 'antiperiodic'


class DispersionPoint(NamedTuple):
    """Single-mode data ``(ε_φ, cos 2θ_φ, sin 2θ_φ)`` at momentum ``φ``."""

    phi: float
    epsilon: float
    cos2theta: float
    sin2theta: float

    @property
    def cos_sq(self) -> float:
        """float: ``cos²θ = (1 + cos 2θ) / 2``"""
        return 0.5 * (1.0 + self.cos2theta)

    @property
    def sin_sq(self) -> float:
        """float: ``sin²θ = (1 - cos 2θ) / 2``"""
        return 0.5 * (1.0 - self.cos2theta)


def _check_sector(sector: str) -> float:
    try:
        return SECTOR_OFFSET[sector]
    except KeyError:
        raise InvalidChain('unknown boundary sector %r, expected one of %s'
                           % (sector, ', '.join(sorted(SECTOR_OFFSET)))) from None


###############################################################################
# Real space


def build_A_matrix(params: KitaevParams) -> numpy.ndarray:
    """Coupling matrix of ``H = (i/4) Σ A_{αβ} γ_α γ_β`` for the chain.

    On-site entries ``A_{(j,0),(j,1)} = 2h``, bond entries
    ``A_{(j+1,0),(j,1)} = 2``, each with its antisymmetric partner. The bond
    closing the ring carries a minus sign in the antiperiodic sector.

    Args:
        params (KitaevParams): field, number of sites and boundary sector

    Returns:
        numpy.ndarray: real antisymmetric ``2N x 2N`` matrix

    Raises:
        InvalidChain: if ``N < 2`` or the sector is unknown

    """
    _check_sector(params.boundary)
    size = params.n_sites
    if size < 2:
        raise InvalidChain('chain needs at least 2 sites, got %d' % size)

    matrix = numpy.zeros((2 * size, 2 * size))
    sites = numpy.arange(size)
    matrix[2 * sites, 2 * sites + 1] = 2.0 * params.h
    matrix[2 * sites + 1, 2 * sites] = -2.0 * params.h

    bonds = numpy.arange(size - 1)
    matrix[2 * bonds + 2, 2 * bonds + 1] = 2.0
    matrix[2 * bonds + 1, 2 * bonds + 2] = -2.0

    wrap = -2.0 if params.boundary == 'antiperiodic' else 2.0
    last = 2 * (size - 1) + 1
    matrix[0, last] += wrap
    matrix[last, 0] -= wrap
    return matrix


###############################################################################
# Momentum space


def dispersion(h: float, phi: float) -> DispersionPoint:
    """Energy and Bogoliubov angle of the mode at momentum ``phi``.

    ``ε = sqrt((h + cos φ)² + sin² φ)``, ``cos 2θ = (h + cos φ) / ε`` and
    ``sin 2θ = sin φ / ε``. Where the gap closes (``ε == 0``) the one-sided
    limit along the zone, ``cos 2θ = 0`` and ``sin 2θ = 1``, is returned.

    """
    real = h + math.cos(phi)
    imag = math.sin(phi)
    epsilon = math.hypot(real, imag)
    if epsilon == 0.0:
        return DispersionPoint(phi, 0.0, 0.0, 1.0)
    return DispersionPoint(phi, epsilon, real / epsilon, imag / epsilon)


def momentum_grid(n_sites: int, sector: Boundary = 'antiperiodic') -> numpy.ndarray:
    """Momenta ``φ_m = 2π (m + κ) / N`` of a finite ring, mapped to ``(-π, π]``."""
    offset = _check_sector(sector)
    if n_sites < 2:
        raise InvalidChain('chain needs at least 2 sites, got %d' % n_sites)
    fraction = (numpy.arange(n_sites) + offset) / n_sites
    fraction = numpy.where(fraction > 0.5, fraction - 1.0, fraction)
    return 2.0 * math.pi * fraction


def half_zone(n_sites: int, sector: Boundary = 'antiperiodic') -> Tuple[numpy.ndarray, numpy.ndarray]:
    """Grid momenta in ``[0, π]`` with weights approximating ``(1/π) ∫₀^π dφ``.

    Interior momenta weigh ``2/N``; ``φ = 0`` and ``φ = π`` stand for a single
    mode and weigh ``1/N``.

    """
    grid = momentum_grid(n_sites, sector)
    phis = numpy.sort(grid[grid >= 0.0])
    edge = (phis == 0.0) | (phis == math.pi)
    weights = numpy.where(edge, 1.0, 2.0) / n_sites
    return phis, weights


def a_phi_matrix(h: float, phi: float) -> numpy.ndarray:
    """Momentum block ``A_φ = -(i/2) [[0, h + e^{-iφ}], [-(h + e^{iφ}), 0]]``."""
    upper = h + numpy.exp(-1j * phi)
    lower = h + numpy.exp(1j * phi)
    return -0.5j * numpy.array([[0.0, upper],
                                [-lower, 0.0]], dtype=complex)


def bogoliubov_matrix(disp: DispersionPoint) -> numpy.ndarray:
    """Unitary ``V_φ`` with ``V_φ diag(ε, -ε) V_φ^† = -2 A_φ``.

    ``V_φ = (1/√2) [[1, 1], [-i, i]] · exp(-iθσˣ)``; ``cos θ`` and ``sin θ``
    come from half-angle formulas with ``θ ∈ (-π/2, π/2]``.

    """
    cos_t = math.sqrt(max(disp.cos_sq, 0.0))
    sin_t = math.copysign(math.sqrt(max(disp.sin_sq, 0.0)), disp.sin2theta)
    rotation = numpy.array([[cos_t, -1j * sin_t],
                            [-1j * sin_t, cos_t]])
    frame = numpy.array([[1.0, 1.0],
                         [-1j, 1j]]) / math.sqrt(2.0)
    return frame @ rotation
