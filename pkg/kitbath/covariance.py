# -*- coding: utf-8 -*-
"""Brillouin-zone quadrature of covariance blocks, closed forms and diagnostics.

Every covariance block of displacement ``d = j - k`` is obtained from the
equal-time kernel ``L_φ`` of each mode, rotated into the Majorana frame by
``R_φ = V_φ L_φ V_φ^†``::

    C_d = (1/π) ∫₀^π [e^{iφd} R_φ - e^{-iφd} R_φ^T] dφ

The integrand is real for every anti-Hermitian kernel; its imaginary part is
integrated alongside and reported as the residue of the block.

"""

import cmath
import math
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy
import scipy.integrate
from numpy.typing import ArrayLike
from typing_extensions import Literal

from kitbath.bath import BathSpec, CouplingProfile, g_tilde, validate_positivity
from kitbath.errors import (AtCriticalPoint, BeforeInitialTime, ConfigError, QuadratureFailure,
                            UnderflowRange, UnsupportedClosedForm)
from kitbath.greens import ModeContext, equal_time_kernel, greens_steady
from kitbath.model import DispersionPoint, bogoliubov_matrix, dispersion

__all__ = [
    'QuadratureSpec', 'BlockEstimate', 'TailFit', 'RelaxationFit', 'JumpEstimate', 'CriticalityReport',
    'integrate', 'critical_split_points', 'mode_kernel', 'rotated_summand', 'covariance_estimate',
    'covariance_time', 'covariance_steady', 'covariance_steady_weak', 'ground_state_covariance',
    'same_site_closed_form', 'jump_derivatives', 'asymptotic_offdiag',
    'fit_tail', 'correlation_length', 'fit_relaxation', 'criticality_scan',
]

Method = Literal['adaptive', 'gauss']
Kind = Literal['time', 'steady', 'weak', 'ground']
Rate = Literal['full', 'halved']
Kernel = Callable[[DispersionPoint, float], numpy.ndarray]

#: Largest displacement evaluated by quadrature; the weak-coupling tail is closed beyond it.
MAX_DISPLACEMENT = 10000
#: Entries below this magnitude carry no information for tail fits.
NOISE_FLOOR = 1e-13
#: Distance from ``|h| = 1`` of the one-sided derivative estimates.
JUMP_DELTA = 1e-3
#: Split points are inserted when ``||h| - 1|`` is below this window.
CRITICAL_WINDOW = 0.1

###############################################################################
# Typings


class QuadratureSpec(NamedTuple):
    """Quadrature over ``[0, π]``.

    Attributes:
        method (Literal['adaptive', 'gauss']): adaptive subdivision, or
            composite Gauss-Legendre with uniform refinement
        abs_tol (float): absolute tolerance
        rel_tol (float): relative tolerance
        max_subdivisions (int): bound on the number of subintervals
        split_points (Tuple[float, ...]): mandatory breakpoints in ``(0, π)``;
            empty selects :func:`critical_split_points`
        nodes (int): Gauss nodes per subinterval

    """

    method: Method = 'adaptive'
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    split_points: Tuple[float, ...] = ()
    nodes: int = 64

    def check(self) -> 'QuadratureSpec':
        """Validate ranges and return ``self``.

        Raises:
            ConfigError: on an unknown method, non-positive tolerance or
                misplaced split points

        """
        if self.method not in ('adaptive', 'gauss'):
            raise ConfigError("quadrature method must be 'adaptive' or 'gauss', got %r" % (self.method,),
                              key='quadrature.method')
        for key in ('abs_tol', 'rel_tol'):
            if not getattr(self, key) > 0.0:
                raise ConfigError('%s must be positive, got %r' % (key, getattr(self, key)),
                                  key='quadrature.%s' % key)
        if self.max_subdivisions < 1 or self.nodes < 2:
            raise ConfigError('max_subdivisions must be >= 1 and nodes >= 2, got %r and %r'
                              % (self.max_subdivisions, self.nodes), key='quadrature.max_subdivisions')
        points = list(self.split_points)
        if any(not 0.0 < point < math.pi for point in points) or any(a >= b for a, b in zip(points, points[1:])):
            raise ConfigError('split points must increase strictly within (0, pi), got %r' % (points,),
                              key='quadrature.split_points')
        return self


class BlockEstimate(NamedTuple):
    """Covariance block with its quadrature diagnostics."""

    block: numpy.ndarray
    error: float
    residue: float


class TailFit(NamedTuple):
    """Fit ``ln|C_L| = ln(prefactor) + slope · L``; ``xi = -1 / slope``."""

    slope: float
    prefactor: float
    xi: float


class RelaxationFit(NamedTuple):
    """Fit ``deviation(t) = prefactor · e^{-rate t}``; ``residual`` is the RMS log residual."""

    rate: float
    prefactor: float
    residual: float


class JumpEstimate(NamedTuple):
    """One-sided derivatives of the same-site value at ``|h| = 1 ∓ δ``."""

    below: float
    above: float
    delta: float

    @property
    def size(self) -> float:
        return self.above - self.below


class CriticalityReport(NamedTuple):
    """Criticality diagnostics over a field scan.

    Attributes:
        h_scan (numpy.ndarray): scanned fields
        same_site_value (numpy.ndarray): same-site steady entry ``C₀[0][1]``
            at weak coupling
        derivative_estimate (numpy.ndarray): finite-difference derivative
            along the scan
        jump_location (float): scanned field where the derivative changes most
        jump_size (float): derivative jump from :func:`jump_derivatives`
        correlation_length (numpy.ndarray): ``1 / |ln|h||`` of the weak-coupling
            tail, infinite at ``|h| = 1`` and NaN at ``h = 0``, where the tail
            vanishes identically

    """

    h_scan: numpy.ndarray
    same_site_value: numpy.ndarray
    derivative_estimate: numpy.ndarray
    jump_location: float
    jump_size: float
    correlation_length: numpy.ndarray


###############################################################################
# Quadrature


def critical_split_points(h: float) -> Tuple[float, ...]:
    """Breakpoints clustered where the gap of the field ``h`` closes.

    The gap closes at ``φ = π`` for ``h > 0`` and at ``φ = 0`` for ``h < 0``;
    ``θ_φ`` varies on the scale ``δ = ||h| - 1|`` there. Points sit at
    ``10δ``, ``δ`` and ``δ/10`` from the closing point. Fields outside the
    critical window need none.

    """
    distance = abs(abs(h) - 1.0)
    if distance >= CRITICAL_WINDOW:
        return ()
    scale = max(distance, 1e-6)
    offsets = [10.0 * scale, scale, 0.1 * scale]
    if h > 0:
        points = [math.pi - offset for offset in offsets]
    else:
        points = list(offsets)
    return tuple(sorted(point for point in points if 0.0 < point < math.pi))


def _gauss(func: Callable[[float], ArrayLike], quad: QuadratureSpec) -> Tuple[numpy.ndarray, float]:
    edges = (0.0,) + tuple(quad.split_points) + (math.pi,)
    nodes, weights = numpy.polynomial.legendre.leggauss(quad.nodes)

    def rule(pieces: int) -> numpy.ndarray:
        total = numpy.zeros_like(numpy.asarray(func(0.0), dtype=float))
        for low, high in zip(edges[:-1], edges[1:]):
            cuts = numpy.linspace(low, high, pieces + 1)
            for left, right in zip(cuts[:-1], cuts[1:]):
                half, mid = 0.5 * (right - left), 0.5 * (right + left)
                for node, weight in zip(mid + half * nodes, weights):
                    total = total + half * weight * numpy.asarray(func(float(node)), dtype=float)
        return total

    pieces = 1
    coarse = rule(pieces)
    while True:
        fine = rule(2 * pieces)
        error = float(numpy.max(numpy.abs(fine - coarse)))
        if error <= max(quad.abs_tol, quad.rel_tol * float(numpy.max(numpy.abs(fine)))):
            return fine, error
        pieces *= 2
        if 2 * pieces * (len(edges) - 1) > quad.max_subdivisions:
            raise QuadratureFailure('Gauss refinement exceeded %d subintervals' % quad.max_subdivisions, error)
        coarse = fine


def integrate(func: Callable[[float], ArrayLike], quad: QuadratureSpec) -> Tuple[numpy.ndarray, float]:
    """Integrate a scalar or vector valued function over ``[0, π]``.

    Args:
        func (Callable[[float], array_like]): integrand, finite on ``[0, π]``
        quad (QuadratureSpec): method, tolerances and breakpoints

    Returns:
        Tuple[numpy.ndarray, float]: integral and its error estimate (largest
        over the components)

    Raises:
        QuadratureFailure: if the tolerance ``max(abs_tol, rel_tol |value|)``
            is not met within ``max_subdivisions`` subintervals

    """
    quad.check()
    if quad.method == 'gauss':
        return _gauss(func, quad)

    value, error, info = scipy.integrate.quad_vec(func, 0.0, math.pi,
                                                  epsabs=quad.abs_tol, epsrel=quad.rel_tol, norm='max',
                                                  limit=quad.max_subdivisions,
                                                  points=list(quad.split_points) or None,
                                                  full_output=True)
    if info.status != 0:
        raise QuadratureFailure('adaptive quadrature failed: %s' % info.message, float(error))
    return numpy.asarray(value, dtype=float), float(error)


###############################################################################
# Rotated kernels


def _check_closed_form(profile: CouplingProfile, spec: BathSpec) -> None:
    spec.check()
    if not spec.is_closed_form:
        raise UnsupportedClosedForm('closed forms need b == 0 and deltaE == 0, got b=%r, deltaE=%r'
                                    % (spec.b, spec.delta_e))
    lowest = validate_positivity(profile)
    if lowest < -1e-12:
        raise UnsupportedClosedForm('coupling transform must be non-negative, minimum is %.6g' % lowest)


def _ground_kernel(disp: DispersionPoint, phi: float) -> numpy.ndarray:  # pylint: disable=unused-argument
    return numpy.diag([-0.5j, 0.5j])


def _weak_kernel(disp: DispersionPoint, phi: float) -> numpy.ndarray:  # pylint: disable=unused-argument
    population = 0.5 * disp.cos2theta
    return numpy.diag([-1j * population, 1j * population])


def mode_kernel(kind: Kind, *, profile: Optional[CouplingProfile] = None, spec: Optional[BathSpec] = None,
                t: float = 0.0, t_in: float = 0.0, coherent: bool = True, rate: Rate = 'full') -> Kernel:
    """Equal-time kernel of every mode for one kind of state.

    Args:
        kind (Literal['time', 'steady', 'weak', 'ground']): state to evaluate

    Keyword Args:
        profile (Optional[CouplingProfile]): coupling, required for
            ``'time'`` and ``'steady'``
        spec (Optional[BathSpec]): bath, required for ``'time'`` and ``'steady'``
        t (float): time of a ``'time'`` kernel
        t_in (float): initial time of a ``'time'`` kernel
        coherent (bool): include the coherence correction
        rate (Literal['full', 'halved']): population decay of a
            ``'time'`` kernel, ``e^{-|g̃|Γ(t-t_in)}`` or ``e^{-|g̃|Γ(t-t_in)/2}``

    Returns:
        Callable[[DispersionPoint, float], numpy.ndarray]: ``L_φ`` from the
        mode data and the momentum

    Raises:
        UnsupportedClosedForm: if the bath or coupling admits no closed form
        BeforeInitialTime: if ``t < t_in``

    """
    if kind == 'ground':
        return _ground_kernel
    if kind == 'weak':
        return _weak_kernel
    if kind not in ('time', 'steady'):
        raise ValueError('unknown covariance kind %r' % (kind,))
    if profile is None or spec is None:
        raise ValueError('%s covariance needs a coupling profile and a bath' % kind)
    _check_closed_form(profile, spec)
    coupling, bath = profile, spec
    if kind == 'steady':
        def steady(disp: DispersionPoint, phi: float) -> numpy.ndarray:
            ctx = ModeContext(disp, g_tilde(coupling, phi), bath.gamma)
            return greens_steady(ctx, coherent=coherent).entries
        return steady

    if rate not in ('full', 'halved'):
        raise ValueError("rate must be 'full' or 'halved', got %r" % (rate,))
    if t < t_in:
        raise BeforeInitialTime('time %r precedes the initial time %r' % (t, t_in))
    elapsed = t - t_in
    population_scale = 1.0 if rate == 'full' else 0.5

    def transient(disp: DispersionPoint, phi: float) -> numpy.ndarray:
        ctx = ModeContext(disp, g_tilde(coupling, phi), bath.gamma, t_in)
        coherence = math.exp(-ctx.rate * elapsed)
        population = math.exp(-population_scale * ctx.rate * elapsed)
        return equal_time_kernel(ctx, population, coherence, coherent=coherent)
    return transient


def rotated_summand(h: float, d: int, kernel: Kernel) -> Callable[[float], numpy.ndarray]:
    """Complex block ``e^{iφd} R_φ - e^{-iφd} R_φ^T`` as a function of ``φ``."""
    def summand(phi: float) -> numpy.ndarray:
        disp = dispersion(h, phi)
        frame = bogoliubov_matrix(disp)
        rotated = frame @ kernel(disp, phi) @ frame.conj().T
        phase = cmath.exp(1j * phi * d)
        return phase * rotated - phase.conjugate() * rotated.T
    return summand


def _rotated_block(h: float, d: int, kernel: Kernel, quad: QuadratureSpec) -> BlockEstimate:
    if not quad.split_points:
        quad = quad._replace(split_points=critical_split_points(h))
    summand = rotated_summand(h, d, kernel)

    def integrand(phi: float) -> numpy.ndarray:
        block = summand(phi)
        return numpy.concatenate([block.real.ravel(), block.imag.ravel()]) / math.pi

    value, error = integrate(integrand, quad)
    residue = float(numpy.max(numpy.abs(value[4:])))
    if residue > 10.0 * quad.abs_tol:
        raise QuadratureFailure('covariance block at d=%d has imaginary residue %.3g' % (d, residue), error)
    return BlockEstimate(value[:4].reshape(2, 2), error, residue)


def covariance_estimate(kind: Kind, h: float, d: int, *,
                        profile: Optional[CouplingProfile] = None, spec: Optional[BathSpec] = None,
                        quad: Optional[QuadratureSpec] = None, t: float = 0.0, t_in: float = 0.0,
                        coherent: bool = True, rate: Rate = 'full') -> BlockEstimate:
    """Covariance block with its achieved error and imaginary residue.

    Arguments are those of :func:`mode_kernel`, plus the field ``h``, the
    displacement ``d = j - k`` and the quadrature ``quad`` (defaults to
    ``QuadratureSpec()``). Weak-coupling blocks beyond ``MAX_DISPLACEMENT``
    come from :func:`asymptotic_offdiag`.

    Raises:
        UnsupportedClosedForm: if the bath or coupling admits no closed form
        BeforeInitialTime: if ``t < t_in``
        QuadratureFailure: if the quadrature does not converge

    """
    if kind == 'weak' and abs(d) > MAX_DISPLACEMENT:
        return BlockEstimate(asymptotic_offdiag(h, d), 0.0, 0.0)
    kernel = mode_kernel(kind, profile=profile, spec=spec, t=t, t_in=t_in, coherent=coherent, rate=rate)
    return _rotated_block(h, d, kernel, quad or QuadratureSpec())


def covariance_time(h: float, profile: CouplingProfile, spec: BathSpec, quad: Optional[QuadratureSpec] = None,
                    d: int = 0, t: float = 0.0, *, t_in: float = 0.0, coherent: bool = True,
                    rate: Rate = 'full') -> numpy.ndarray:
    """Equal-time covariance block ``C_d(t)`` after coupling the bath at ``t_in``.

    At ``t = t_in`` or ``Γ = 0`` this is the isolated ground state. The
    transient decays with ``e^{-|g̃_φ|Γ(t - t_in)}``; ``rate='halved'``
    halves the population rate for comparison.

    Raises:
        UnsupportedClosedForm: if ``b != 0``, ``δE != 0`` or ``g̃`` changes sign
        BeforeInitialTime: if ``t < t_in``
        QuadratureFailure: if the quadrature does not converge

    """
    return covariance_estimate('time', h, d, profile=profile, spec=spec, quad=quad, t=t, t_in=t_in,
                               coherent=coherent, rate=rate).block


def covariance_steady(h: float, profile: CouplingProfile, spec: BathSpec, quad: Optional[QuadratureSpec] = None,
                      d: int = 0, *, coherent: bool = True) -> numpy.ndarray:
    """Steady covariance block, the ``t → ∞`` limit evaluated without exponentials."""
    return covariance_estimate('steady', h, d, profile=profile, spec=spec, quad=quad, coherent=coherent).block


def covariance_steady_weak(h: float, quad: Optional[QuadratureSpec] = None, d: int = 0) -> numpy.ndarray:
    """Weak-coupling steady block ``(1/π) ∫ cos2θ [[0, cos(φd - 2θ)], [-cos(φd + 2θ), 0]] dφ``.

    Beyond ``|d| > MAX_DISPLACEMENT`` the closed tail :func:`asymptotic_offdiag` is returned.

    """
    return covariance_estimate('weak', h, d, quad=quad).block


def ground_state_covariance(h: float, quad: Optional[QuadratureSpec] = None, d: int = 0) -> numpy.ndarray:
    """Ground-state block ``(1/π) ∫ [[0, cos(φd - 2θ)], [-cos(φd + 2θ), 0]] dφ``."""
    return covariance_estimate('ground', h, d, quad=quad).block


###############################################################################
# Closed forms


def same_site_closed_form(h: float) -> Tuple[float, float]:
    """Weak-coupling steady same-site entry and its derivative with respect to ``|h|``.

    Args:
        h (float): transverse field

    Returns:
        Tuple[float, float]: ``(1/2, 0)`` for ``|h| < 1``,
        ``(1 - 1/(2h²), 1/|h|³)`` for ``|h| > 1``

    Raises:
        AtCriticalPoint: if ``|h| == 1``, where the derivative jumps

    """
    size = abs(h)
    if size == 1.0:
        raise AtCriticalPoint('the derivative jumps at |h| = 1; both branches give the value 1/2')
    if size < 1.0:
        return 0.5, 0.0
    return 1.0 - 0.5 / (size * size), size ** -3


def jump_derivatives(quad: Optional[QuadratureSpec] = None, delta: float = JUMP_DELTA) -> JumpEstimate:
    """Central differences of the same-site quadrature at ``|h| = 1 ∓ delta``.

    The difference step is ``delta / 2`` so that neither stencil crosses the
    critical point.

    """
    step = 0.5 * delta

    def slope(center: float) -> float:
        upper = covariance_steady_weak(center + step, quad, 0)[0, 1]
        lower = covariance_steady_weak(center - step, quad, 0)[0, 1]
        return float(upper - lower) / (2.0 * step)

    return JumpEstimate(slope(1.0 - delta), slope(1.0 + delta), delta)


def asymptotic_offdiag(h: float, L: int) -> numpy.ndarray:
    """Weak-coupling steady block at large displacement ``L``.

    For ``L >= 2`` the entries are exact:
    ``C_L[0][1] = (1 - h²)/(2h²) · (-h)^L`` when ``0 < |h| < 1`` and
    ``C_L[1][0] = (1 - h²)/(2h²) · (-1/h)^L`` when ``|h| > 1``, every other
    entry vanishing. At ``h = 0`` only ``C_2[0][1] = 1/2`` survives. Negative
    ``L`` follow from ``C_{-L}[u][v] = -C_L[v][u]``.

    """
    if L < 0:
        return -asymptotic_offdiag(h, -L).T
    block = numpy.zeros((2, 2))
    size = abs(h)
    if size < 1.0:
        if h == 0.0:
            block[0, 1] = 0.5 if L == 2 else 0.0
        else:
            block[0, 1] = (1.0 - h * h) / (2.0 * h * h) * (-h) ** L
    elif size > 1.0:
        block[1, 0] = (1.0 - h * h) / (2.0 * h * h) * (-1.0 / h) ** L
    return block


###############################################################################
# Fits


def fit_tail(displacements: Sequence[int], values: Sequence[float], *, floor: float = NOISE_FLOOR) -> TailFit:
    """Fit ``ln|C_L|`` linearly in ``L`` over the entries above ``floor``.

    Raises:
        UnderflowRange: if fewer than two entries clear the floor or the
            entries do not decay

    """
    lengths = numpy.asarray(displacements, dtype=float)
    magnitudes = numpy.abs(numpy.asarray(values, dtype=float))
    keep = magnitudes >= floor
    if numpy.count_nonzero(keep) < 2:
        raise UnderflowRange('fewer than two entries above %.3g in the fit range' % floor)
    slope, intercept = numpy.polyfit(lengths[keep], numpy.log(magnitudes[keep]), 1)
    if not slope < 0.0:
        raise UnderflowRange('entries do not decay over the fit range (slope %.6g)' % slope)
    return TailFit(float(slope), float(math.exp(intercept)), float(-1.0 / slope))


def correlation_length(h: float, quad: Optional[QuadratureSpec] = None,
                       fit_range: Tuple[int, int] = (20, 60)) -> float:
    """Correlation length of the weak-coupling steady state from a tail fit.

    The decaying entry is ``C_L[0][1]`` for ``|h| < 1`` and ``C_L[1][0]`` for
    ``|h| > 1``. Entries within a hundred quadrature tolerances of zero are
    left out of the fit.

    Raises:
        AtCriticalPoint: if ``|h| == 1``
        UnderflowRange: if the entries vanish over the fit range

    """
    if abs(h) == 1.0:
        raise AtCriticalPoint('the correlation length diverges at |h| = 1')
    quad = quad or QuadratureSpec()
    entry = (0, 1) if abs(h) < 1.0 else (1, 0)
    lengths = list(range(fit_range[0], fit_range[1] + 1))
    values = [covariance_steady_weak(h, quad, L)[entry] for L in lengths]
    return fit_tail(lengths, values, floor=max(NOISE_FLOOR, 100.0 * quad.abs_tol)).xi


def fit_relaxation(times: ArrayLike, deviations: ArrayLike, *, floor: float = NOISE_FLOOR) -> RelaxationFit:
    """Exponential rate of a decaying deviation ``‖C(t) - C(∞)‖∞``.

    Raises:
        UnderflowRange: if fewer than two deviations clear ``floor``

    """
    grid = numpy.asarray(times, dtype=float)
    values = numpy.asarray(deviations, dtype=float)
    keep = values >= floor
    if numpy.count_nonzero(keep) < 2:
        raise UnderflowRange('fewer than two deviations above %.3g' % floor)
    logs = numpy.log(values[keep])
    slope, intercept = numpy.polyfit(grid[keep], logs, 1)
    residual = float(numpy.sqrt(numpy.mean((logs - (slope * grid[keep] + intercept)) ** 2)))
    return RelaxationFit(float(-slope), float(math.exp(intercept)), residual)


###############################################################################
# Criticality


def criticality_scan(h_scan: ArrayLike, quad: Optional[QuadratureSpec] = None,
                     delta: float = JUMP_DELTA) -> CriticalityReport:
    """Same-site value, its derivative and the correlation length along a field scan.

    The derivative is ``numpy.gradient`` of the quadrature values over the
    scan; the jump is located where that derivative changes most, and sized
    by :func:`jump_derivatives`.

    """
    fields = numpy.asarray(h_scan, dtype=float)
    values = numpy.array([covariance_steady_weak(float(h), quad, 0)[0, 1] for h in fields])
    slopes = numpy.gradient(values, fields) if fields.size > 1 else numpy.zeros_like(values)
    if fields.size > 2:
        change = numpy.abs(numpy.diff(slopes))
        index = int(numpy.argmax(change))
        location = float(0.5 * (fields[index] + fields[index + 1]))
    else:
        location = float(fields[0]) if fields.size else math.nan

    lengths = []  # type: List[float]
    for h in numpy.abs(fields):
        if h == 1.0:
            lengths.append(math.inf)
        elif h == 0.0:
            lengths.append(math.nan)
        else:
            lengths.append(-1.0 / math.log(h) if h < 1.0 else 1.0 / math.log(h))
    jump = jump_derivatives(quad, delta)
    return CriticalityReport(fields, values, slopes, location, jump.size, numpy.array(lengths))
