# -*- coding: utf-8 -*-
"""Closed-form Keldysh Green's kernels of a single momentum mode.

All kernels assume a zero-temperature bath without energy shift
(``b == 0``, ``δE == 0``) and a non-negative coupling transform. The
``coherent`` switch selects between the full closed forms, which carry
terms weighted by ``w = (g̃Γ/2)² / (ε² + (g̃Γ/2)²)`` together with the
off-diagonal kernels, and their secular reduction that drops them.

The Heaviside step takes the value ``1/2`` at zero.

"""

import cmath
import math
from typing import NamedTuple

import numpy

from kitbath.bath import BathSpec, CouplingProfile, g_tilde
from kitbath.errors import BeforeInitialTime, UnsupportedClosedForm
from kitbath.model import DispersionPoint, dispersion

__all__ = [
    'ModeContext', 'GreensBlock', 'mode_context',
    'greens_unbounded', 'greens_causal', 'greens_equal_time', 'greens_steady',
    'equal_time_kernel', 'coherence_weight',
]

###############################################################################
# Typings


class ModeContext(NamedTuple):
    """Parameters of one momentum mode.

    Attributes:
        disp (DispersionPoint): energy and Bogoliubov angle
        gtilde (float): coupling transform ``g̃_φ``
        gamma (float): bath decay rate ``Γ``
        t_in (float): initial time

    """

    disp: DispersionPoint
    gtilde: float
    gamma: float
    t_in: float = 0.0

    @property
    def half_rate(self) -> float:
        """float: ``|g̃_φ| Γ / 2``"""
        return 0.5 * abs(self.gtilde) * self.gamma

    @property
    def rate(self) -> float:
        """float: ``|g̃_φ| Γ``, the relaxation rate of the mode"""
        return abs(self.gtilde) * self.gamma


class GreensBlock(NamedTuple):
    """Two-by-two kernel ``L_φ(t, t')`` with flavor indices ``u, v``."""

    entries: numpy.ndarray
    t: float
    tp: float
    t_in: float


def mode_context(h: float, phi: float, profile: CouplingProfile, spec: BathSpec,
                 t_in: float = 0.0) -> ModeContext:
    """Bundle the mode data at momentum ``phi``."""
    return ModeContext(dispersion(h, phi), g_tilde(profile, phi), spec.gamma, t_in)


def _check_context(ctx: ModeContext) -> None:
    if ctx.gtilde < 0.0 or ctx.gamma < 0.0:
        raise UnsupportedClosedForm('closed forms need g_tilde >= 0 and gamma >= 0, got g_tilde=%r, gamma=%r'
                                    % (ctx.gtilde, ctx.gamma))


def _check_times(ctx: ModeContext, *times: float) -> None:
    for time in times:
        if time < ctx.t_in:
            raise BeforeInitialTime('time %r precedes the initial time %r' % (time, ctx.t_in))


###############################################################################
# Auxiliaries


def _step(value: float) -> float:
    if value > 0.0:
        return 1.0
    if value < 0.0:
        return 0.0
    return 0.5


def _sin_ratio(epsilon: float, tau: float) -> float:
    """``sin(ε τ) / ε``, continuous at ``ε = 0``."""
    return tau * float(numpy.sinc(epsilon * tau / math.pi))


def coherence_weight(ctx: ModeContext) -> float:
    """Weight ``(g̃Γ/2)² / (ε² + (g̃Γ/2)²) · sin² 2θ`` of the coherence terms."""
    half = ctx.half_rate
    if half == 0.0:
        return 0.0
    return half * half / (ctx.disp.epsilon ** 2 + half * half) * ctx.disp.sin2theta ** 2


def _oscillation(ctx: ModeContext, tau: float) -> float:
    """``cos(ε|τ|) + (g̃Γ/2) sin(ε|τ|) / ε``"""
    span = abs(tau)
    return math.cos(ctx.disp.epsilon * span) + ctx.half_rate * _sin_ratio(ctx.disp.epsilon, span)


###############################################################################
# Two-time kernels


def greens_unbounded(ctx: ModeContext, t: float, tp: float, *, coherent: bool = True) -> GreensBlock:
    """Particular solution of the kernel equations without boundary terms.

    Args:
        ctx (ModeContext): mode parameters
        t (float): first time argument
        tp (float): second time argument

    Keyword Args:
        coherent (bool): include the ``w``-weighted terms and the
            off-diagonal kernels

    Returns:
        GreensBlock: ``L_φ(t, t')``, a function of ``t - t'`` only

    Raises:
        UnsupportedClosedForm: if ``g̃ < 0`` or ``Γ < 0``

    """
    _check_context(ctx)
    tau = t - tp
    eps = ctx.disp.epsilon
    cos_sq, sin_sq = ctx.disp.cos_sq, ctx.disp.sin_sq
    decay = math.exp(-ctx.half_rate * abs(tau))
    phase = cmath.exp(1j * eps * tau)
    forward, backward = _step(tau), _step(-tau)

    entries = numpy.zeros((2, 2), dtype=complex)
    entries[0, 0] = phase * decay * (-1j * cos_sq * forward + 1j * sin_sq * backward)
    entries[1, 1] = phase.conjugate() * decay * (-1j * sin_sq * forward + 1j * cos_sq * backward)
    if coherent:
        weight = coherence_weight(ctx)
        oscillation = _oscillation(ctx, tau)
        entries[0, 0] -= 0.5j * weight * cos_sq * decay * oscillation
        entries[1, 1] -= 0.5j * weight * sin_sq * decay * oscillation
        off = -0.5 * decay * ctx.half_rate * _sin_ratio(eps, tau) * forward
        entries[0, 1] = entries[1, 0] = off
    return GreensBlock(entries, t, tp, ctx.t_in)


def greens_causal(ctx: ModeContext, t: float, tp: float, *, coherent: bool = True) -> GreensBlock:
    """Solution obeying the initial conditions at ``t_in``.

    ``L₀₀`` and ``L₀₁`` vanish at ``t = t_in``, ``L₁₀`` and ``L₁₁`` at
    ``t' = t_in`` (for the other argument strictly later than ``t_in``).
    The transient bracket ``e^{-(g̃Γ/2)|t-t'|} - e^{-(g̃Γ/2)(t+t'-2t_in)}``
    completes the unbounded solution; once it has relaxed, the two agree.

    Args:
        ctx (ModeContext): mode parameters
        t (float): first time argument, ``>= t_in``
        tp (float): second time argument, ``>= t_in``

    Keyword Args:
        coherent (bool): include the ``w``-weighted terms and the
            off-diagonal kernels

    Returns:
        GreensBlock: ``L_φ(t, t')``

    Raises:
        BeforeInitialTime: if ``t`` or ``tp`` precedes ``t_in``
        UnsupportedClosedForm: if ``g̃ < 0`` or ``Γ < 0``

    """
    _check_context(ctx)
    _check_times(ctx, t, tp)
    tau = t - tp
    eps = ctx.disp.epsilon
    half = ctx.half_rate
    cos_sq, sin_sq = ctx.disp.cos_sq, ctx.disp.sin_sq
    decay = math.exp(-half * abs(tau))
    bracket = decay - math.exp(-half * (t + tp - 2.0 * ctx.t_in))
    phase = cmath.exp(1j * eps * tau)
    forward, backward = _step(tau), _step(-tau)

    f00 = sin_sq * phase
    f11 = sin_sq * phase.conjugate()
    if coherent:
        weight = coherence_weight(ctx)
        oscillation = _oscillation(ctx, tau)
        f00 -= 0.5 * weight * cos_sq * oscillation
        f11 += 0.5 * weight * sin_sq * oscillation

    entries = numpy.zeros((2, 2), dtype=complex)
    entries[0, 0] = -1j * phase * decay * forward + 1j * f00 * bracket
    entries[1, 1] = 1j * phase.conjugate() * decay * backward - 1j * f11 * bracket
    if coherent:
        entries[0, 1] = -0.5 * decay * half * _sin_ratio(eps, tau) * forward
        lagging = decay * half * _sin_ratio(eps, abs(tau))
        entries[1, 0] = 0.5 * lagging * backward - lagging * bracket
    return GreensBlock(entries, t, tp, ctx.t_in)


###############################################################################
# Equal-time kernels


def equal_time_kernel(ctx: ModeContext, population_decay: float, coherence_decay: float, *,
                      coherent: bool = True) -> numpy.ndarray:
    """Equal-time kernel for given transient factors.

    ``-i [1/2 - sin²θ (1 - P)] σᶻ - (i/2) w sin²2θ (1 - C) diag(cos²θ, sin²θ)``
    with population factor ``P`` and coherence factor ``C``; both are
    ``e^{-|g̃|Γ (t - t_in)}`` for the kernel of record.

    """
    _check_context(ctx)
    cos_sq, sin_sq = ctx.disp.cos_sq, ctx.disp.sin_sq
    population = 0.5 - sin_sq * (1.0 - population_decay)
    weight = coherence_weight(ctx) * (1.0 - coherence_decay) if coherent else 0.0
    return numpy.array([[-1j * population - 0.5j * weight * cos_sq, 0.0],
                        [0.0, 1j * population - 0.5j * weight * sin_sq]], dtype=complex)


def greens_equal_time(ctx: ModeContext, t: float, *, coherent: bool = True) -> GreensBlock:
    """Equal-time kernel ``L_φ(t, t)``, evaluated directly rather than as a limit.

    Raises:
        BeforeInitialTime: if ``t`` precedes ``t_in``

    """
    _check_times(ctx, t)
    decay = math.exp(-ctx.rate * (t - ctx.t_in))
    return GreensBlock(equal_time_kernel(ctx, decay, decay, coherent=coherent), t, t, ctx.t_in)


def greens_steady(ctx: ModeContext, *, coherent: bool = True) -> GreensBlock:
    """Long-time limit of :func:`greens_equal_time`, without exponentials."""
    return GreensBlock(equal_time_kernel(ctx, 0.0, 0.0, coherent=coherent), math.inf, math.inf, ctx.t_in)
