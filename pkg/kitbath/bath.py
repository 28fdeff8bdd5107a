# -*- coding: utf-8 -*-
"""Markovian fermionic bath: couplings, spectral densities and dissipation kernel."""

import math
from typing import Callable, Dict, Mapping, NamedTuple, Tuple

import numpy
import scipy.integrate
import scipy.special

from kitbath.errors import AsymmetricCoupling, InvalidBath, SingularDensity, UnsupportedClosedForm
from kitbath.model import DispersionPoint

__all__ = [
    'CouplingProfile', 'BathSpec', 'SpectralDensity', 'KernelCoefficients',
    'g_tilde', 'validate_positivity', 'rate_for_coupling',
    'spectral_density', 'markov_params', 'principal_value',
    'delta_elements', 'dissipation_kernel_markov',
]

#: Normalisation ``1/√(2π)`` of the coupling transform.
_FOURIER_NORM = 1.0 / math.sqrt(2.0 * math.pi)

###############################################################################
# Coupling profiles


class CouplingProfile(NamedTuple):
    """Translation-invariant coupling ``g_{jk} = g_{j-k}`` of finite support.

    Attributes:
        coefficients (Tuple[Tuple[int, float], ...]): ``(d, g_d)`` pairs sorted
            by displacement; zero coefficients are dropped

    """

    coefficients: Tuple[Tuple[int, float], ...]

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, float]) -> 'CouplingProfile':
        """Build a profile from ``{d: g_d}``.

        Raises:
            AsymmetricCoupling: if ``g_d != g_{-d}`` for some ``d``

        """
        values = {int(d): float(g) for d, g in mapping.items() if g != 0}
        for d, g in values.items():
            if values.get(-d, 0.0) != g:
                raise AsymmetricCoupling('coupling profile is not symmetric: g_%d = %r, g_%d = %r'
                                         % (d, g, -d, values.get(-d, 0.0)))
        return cls(tuple(sorted(values.items())))

    @classmethod
    def local(cls, g: float = 1.0) -> 'CouplingProfile':
        """Every site couples to its own bath mode only."""
        return cls.from_mapping({0: g})

    @classmethod
    def nearest_neighbour(cls, a: float, g0: float = 0.0) -> 'CouplingProfile':
        """``g_{±1} = a`` and ``g_0 = g0``."""
        return cls.from_mapping({-1: a, 0: g0, 1: a})

    @property
    def radius(self) -> int:
        """int: support radius ``R`` with ``g_d = 0`` for ``|d| > R``"""
        return max((abs(d) for d, _ in self.coefficients), default=0)

    def as_dict(self) -> Dict[int, float]:
        return dict(self.coefficients)


def _check_symmetric(profile: CouplingProfile) -> Dict[int, float]:
    values = profile.as_dict()
    for d, g in values.items():
        if values.get(-d, 0.0) != g:
            raise AsymmetricCoupling('coupling profile is not symmetric at d=%d' % d)
    return values


def g_tilde(profile: CouplingProfile, phi: float) -> float:
    """Coupling transform ``g̃_φ = (1/√(2π)) Σ_d g_d e^{iφd}``.

    Symmetric profiles have a real, even transform; it is summed as the cosine
    series.

    Raises:
        AsymmetricCoupling: if the profile is not symmetric

    """
    values = _check_symmetric(profile)
    return _FOURIER_NORM * math.fsum(g * math.cos(phi * d) for d, g in values.items())


def validate_positivity(profile: CouplingProfile, resolution: int = 1024) -> float:
    """Minimum of ``g̃_φ`` over a uniform grid of ``[0, π]`` (``g̃`` is even).

    Closed-form kernels need ``g̃_φ >= 0``; rejecting a negative minimum is left
    to the caller.

    """
    phis = numpy.linspace(0.0, math.pi, max(int(resolution), 2) + 1)
    return min(g_tilde(profile, float(phi)) for phi in phis)


def rate_for_coupling(profile: CouplingProfile, coupling: float, resolution: int = 1024) -> float:
    """Decay rate ``Γ`` for which ``max_φ g̃_φ Γ / 2`` equals ``coupling``."""
    phis = numpy.linspace(0.0, math.pi, max(int(resolution), 2) + 1)
    peak = max(abs(g_tilde(profile, float(phi))) for phi in phis)
    if peak == 0.0:
        raise InvalidBath('coupling profile vanishes identically')
    return 2.0 * coupling / peak


###############################################################################
# Bath parameters


class BathSpec(NamedTuple):
    """Markovian bath parameters.

    Attributes:
        gamma (float): decay rate ``Γ >= 0``
        delta_e (float): energy shift ``δE``
        b (float): occupancy factor in ``[0, 1]``
        beta (float): inverse temperature, ``inf`` for zero temperature

    """

    gamma: float
    delta_e: float = 0.0
    b: float = 0.0
    beta: float = math.inf

    @property
    def is_closed_form(self) -> bool:
        """bool: whether the closed-form kernels apply (``b == 0`` and ``δE == 0``)"""
        return self.b == 0.0 and self.delta_e == 0.0

    def check(self) -> 'BathSpec':
        """Validate ranges and return ``self``.

        Raises:
            InvalidBath: if ``Γ < 0``, ``b`` outside ``[0, 1]`` or ``β <= 0``

        """
        if not self.gamma >= 0.0:
            raise InvalidBath('decay rate must be non-negative, got %r' % self.gamma)
        if not 0.0 <= self.b <= 1.0:
            raise InvalidBath('occupancy factor must lie in [0, 1], got %r' % self.b)
        if not self.beta > 0.0:
            raise InvalidBath('inverse temperature must be positive, got %r' % self.beta)
        if not math.isfinite(self.delta_e):
            raise InvalidBath('energy shift must be finite, got %r' % self.delta_e)
        return self


def delta_elements(spec: BathSpec) -> Tuple[complex, complex, complex, complex]:
    """Contour matrix elements ``(Δ_{++}, Δ_{--}, Δ_{+-}, Δ_{-+})`` of the Markovian kernel."""
    spec.check()
    population = spec.gamma * (0.5 - spec.b)
    return (complex(population, -spec.delta_e),
            complex(population, spec.delta_e),
            complex(-spec.gamma * spec.b, 0.0),
            complex(spec.gamma * (1.0 - spec.b), 0.0))


###############################################################################
# Spectral densities


class SpectralDensity(NamedTuple):
    """Reentrant bath spectral density ``D(E)`` on ``E >= 0``.

    Attributes:
        family (str): family name
        parameters (Tuple[Tuple[str, float], ...]): family parameters
        support (Tuple[float, float]): interval outside which ``D`` vanishes
        breakpoints (Tuple[float, ...]): kinks and peaks quadrature must resolve
        function (Callable[[float], float]): the density itself

    """

    family: str
    parameters: Tuple[Tuple[str, float], ...]
    support: Tuple[float, float]
    breakpoints: Tuple[float, ...]
    function: Callable[[float], float]

    def __call__(self, energy: float) -> float:
        low, high = self.support
        if energy < low or energy > high:
            return 0.0
        return self.function(energy)


def _flat(level: float) -> Callable[[float], float]:
    return lambda energy: level


def _lorentzian(center: float, width: float, weight: float) -> Callable[[float], float]:
    return lambda energy: weight * width / math.pi / ((energy - center) ** 2 + width ** 2)


def _power_law(alpha: float, exponent: float, cutoff: float) -> Callable[[float], float]:
    return lambda energy: alpha * energy ** exponent * math.exp(-energy / cutoff)


def spectral_density(family: str, **parameters: float) -> SpectralDensity:
    """Build a named spectral-density family.

    Families and parameters:

    * ``flat``: ``level`` (``D₀``), ``cutoff`` (``E_max``); ``D = D₀`` on ``[0, E_max]``
    * ``lorentzian``: ``center``, ``width``, ``weight`` (default 1);
      ``D = weight · (1/π) · width / ((E - center)² + width²)``
    * ``power-law``: ``alpha``, ``exponent``, ``cutoff``;
      ``D = alpha · E^exponent · e^{-E/cutoff}``

    Raises:
        InvalidBath: on unknown family, missing or out-of-range parameters

    """
    try:
        if family == 'flat':
            level, cutoff = float(parameters['level']), float(parameters['cutoff'])
            if level < 0 or cutoff <= 0:
                raise InvalidBath('flat density needs level >= 0 and cutoff > 0')
            return SpectralDensity(family, (('level', level), ('cutoff', cutoff)),
                                   (0.0, cutoff), (0.0, cutoff), _flat(level))
        if family == 'lorentzian':
            center, width = float(parameters['center']), float(parameters['width'])
            weight = float(parameters.get('weight', 1.0))
            if width <= 0 or weight < 0:
                raise InvalidBath('lorentzian density needs width > 0 and weight >= 0')
            return SpectralDensity(family, (('center', center), ('width', width), ('weight', weight)),
                                   (0.0, math.inf), (max(center, 0.0),), _lorentzian(center, width, weight))
        if family == 'power-law':
            alpha, exponent = float(parameters['alpha']), float(parameters['exponent'])
            cutoff = float(parameters['cutoff'])
            if alpha < 0 or exponent < 0 or cutoff <= 0:
                raise InvalidBath('power-law density needs alpha >= 0, exponent >= 0 and cutoff > 0')
            return SpectralDensity(family, (('alpha', alpha), ('exponent', exponent), ('cutoff', cutoff)),
                                   (0.0, math.inf), (exponent * cutoff,), _power_law(alpha, exponent, cutoff))
    except KeyError as error:
        raise InvalidBath('%s density is missing parameter %s' % (family, error)) from None
    raise InvalidBath('unknown spectral density family %r, expected flat, lorentzian or power-law' % family)


###############################################################################
# Markovian limit


def _quad(func: Callable[[float], float], low: float, high: float, points: Tuple[float, ...],
          abs_tol: float, rel_tol: float, limit: int) -> float:
    if high <= low:
        return 0.0
    inner = [point for point in points if low < point < high]
    if math.isinf(high):
        value, _ = scipy.integrate.quad(func, low, high, epsabs=abs_tol, epsrel=rel_tol, limit=limit)
    else:
        value, _ = scipy.integrate.quad(func, low, high, points=inner or None,
                                        epsabs=abs_tol, epsrel=rel_tol, limit=limit)
    return float(value)


def principal_value(density: SpectralDensity, energy: float, *,
                    abs_tol: float = 1e-13, rel_tol: float = 1e-12, limit: int = 500) -> float:
    """``PV ∫₀^∞ dE D(E) / (E - energy)`` by symmetric excision.

    A window ``(energy - η, energy + η)`` is removed and folded onto itself,
    where ``D(energy)`` cancels and the remaining integrand
    ``(D(energy + u) - D(energy - u)) / u`` is regular. ``η`` is half the
    distance to the nearest support edge or breakpoint.

    Raises:
        SingularDensity: if ``D`` is not finite at ``energy`` or jumps there

    """
    low, high = density.support
    if not math.isfinite(density(energy)):
        raise SingularDensity('spectral density is not finite at E=%r' % energy)

    def pole(value: float) -> float:
        return density(value) / (value - energy)

    def fold(offset: float) -> float:
        return (density(energy + offset) - density(energy - offset)) / offset

    if not low < energy < high:
        if energy in (low, high) and density(energy) != 0.0:
            raise SingularDensity('spectral density jumps at E=%r' % energy)
        breaks = tuple(sorted(set(density.breakpoints)))
        return _piecewise(pole, low, high, breaks, abs_tol, rel_tol, limit)

    edges = [energy - low] + ([high - energy] if math.isfinite(high) else [])
    for point in density.breakpoints:
        if point != energy:
            edges.append(abs(point - energy))
    width = 0.5 * min(edges)

    breaks = tuple(sorted(set(density.breakpoints)))
    left = _piecewise(pole, low, energy - width, breaks, abs_tol, rel_tol, limit)
    right = _piecewise(pole, energy + width, high, breaks, abs_tol, rel_tol, limit)
    window = _quad(fold, 0.0, width, (), abs_tol, rel_tol, limit)
    return left + right + window


def _piecewise(func: Callable[[float], float], low: float, high: float, breaks: Tuple[float, ...],
               abs_tol: float, rel_tol: float, limit: int) -> float:
    if not math.isinf(high):
        return _quad(func, low, high, breaks, abs_tol, rel_tol, limit)
    # finite head through every breakpoint, then the tail to infinity
    head = max((low,) + tuple(point for point in breaks if point > low))
    head = 2.0 * head + 1.0
    return (_quad(func, low, head, breaks, abs_tol, rel_tol, limit)
            + _quad(func, head, high, (), abs_tol, rel_tol, limit))


def markov_params(density: SpectralDensity, epsilon_s: float, beta: float = math.inf) -> BathSpec:
    """Markovian bath parameters at system energy ``epsilon_s``.

    ``Γ = 2π D(ε_S)``, ``δE = PV ∫ D(E) / (E - ε_S)`` and the Fermi factor
    ``b = 1 / (1 + e^{β ε_S})`` (``b = 0`` at ``β = inf``, ``1/2`` as ``β → 0⁺``).

    Raises:
        InvalidBath: if ``epsilon_s <= 0`` or ``beta <= 0``
        SingularDensity: if ``D`` is singular at ``epsilon_s``

    """
    if not epsilon_s > 0.0:
        raise InvalidBath('system energy must be positive, got %r' % epsilon_s)
    if not beta > 0.0:
        raise InvalidBath('inverse temperature must be positive, got %r' % beta)
    value = density(epsilon_s)
    if not math.isfinite(value):
        raise SingularDensity('spectral density is not finite at E=%r' % epsilon_s)
    shift = principal_value(density, epsilon_s)
    occupancy = float(scipy.special.expit(-beta * epsilon_s))
    return BathSpec(2.0 * math.pi * value, shift, occupancy, beta).check()


###############################################################################
# Dissipation kernel


class KernelCoefficients(NamedTuple):
    """Momentum-space dissipation kernel of one mode.

    Attributes:
        phi (float): momentum
        A (float): ``g̃ (Γ/2) cos 2θ``
        B (float): ``g̃ (Γ/2) sin 2θ``
        loss (float): branch coupling ``Γ g̃ sin²θ``
        gain (float): branch coupling ``Γ g̃ cos²θ``
        branches (numpy.ndarray): complex ``K[u, w, P, P'']`` with flavor
            indices ``u, w`` and contour indices ``P, P''`` (0 is the forward
            branch, 1 the backward branch), ``g̃`` included

    """

    phi: float
    A: float
    B: float
    loss: float
    gain: float
    branches: numpy.ndarray


def dissipation_kernel_markov(phi: float, disp: DispersionPoint, gtilde: float, spec: BathSpec, *,
                              closed_form: bool = True) -> KernelCoefficients:
    """Dissipation kernel coefficients of one momentum mode.

    The flavor blocks, with ``Δ`` the contour matrix of :func:`delta_elements`:

    * ``K₀₀(P, P'') = g̃ (Δ_{PP''} cos²θ - Δ_{P''P} sin²θ)``
    * ``K₁₁(P, P'') = g̃ (Δ_{PP''} sin²θ - Δ_{P''P} cos²θ)``
    * ``K₀₁ = -K₁₀ = -(i/2) g̃ (Δ_{PP''} + Δ_{P''P}) sin 2θ``

    Args:
        phi (float): momentum
        disp (DispersionPoint): mode data at ``phi``
        gtilde (float): coupling transform at ``phi``
        spec (BathSpec): bath parameters

    Keyword Args:
        closed_form (bool): require the closed-form regime ``b == 0``, ``δE == 0``

    Raises:
        UnsupportedClosedForm: if ``closed_form`` and the bath is outside that regime

    """
    if closed_form and not spec.is_closed_form:
        raise UnsupportedClosedForm('closed forms need b == 0 and deltaE == 0, got b=%r, deltaE=%r'
                                    % (spec.b, spec.delta_e))
    pp, mm, pm, mp = delta_elements(spec)
    delta = numpy.array([[pp, pm],
                         [mp, mm]])
    cos_sq, sin_sq = disp.cos_sq, disp.sin_sq
    symmetric = delta + delta.T

    branches = numpy.empty((2, 2, 2, 2), dtype=complex)
    branches[0, 0] = gtilde * (delta * cos_sq - delta.T * sin_sq)
    branches[1, 1] = gtilde * (delta * sin_sq - delta.T * cos_sq)
    branches[0, 1] = -0.5j * gtilde * symmetric * disp.sin2theta
    branches[1, 0] = 0.5j * gtilde * symmetric * disp.sin2theta
    branches.setflags(write=False)

    half = 0.5 * gtilde * spec.gamma
    return KernelCoefficients(phi, half * disp.cos2theta, half * disp.sin2theta,
                              spec.gamma * gtilde * sin_sq, spec.gamma * gtilde * cos_sq, branches)
