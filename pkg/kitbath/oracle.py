# -*- coding: utf-8 -*-
"""Brute-force verifiers: ODE integration of the kernel equations and finite-chain sums.

The Green's oracle integrates the four coupled equations of each source
flavor, one per flavor ``u`` and contour branch ``P``, ordered as
``(0, +), (0, -), (1, +), (1, -)``. Their left operator ``M`` has two
decaying and two growing modes whenever the bath decays. The propagator
``Φ(τ) = e^{Mτ}`` is integrated numerically, forward on the decaying and
backward on the growing subspace, and the kernel is::

    L(t, t') = -i Φ(t - t') P_dec E     for t > t'
    L(t, t') = +i Φ(t - t') P_grow E    for t < t'

plus a boundary term ``Φ(t - t_in) R_dec C ℓ_grow Φ(t_in - t') E``, whose
coefficients ``C`` are fitted by least squares to the initial conditions.
``E`` picks the forward-branch source of each flavor; the jump at
``t = t'`` is therefore exactly ``-i``.

"""

import math
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy
import scipy.integrate
from numpy.typing import ArrayLike

from kitbath.bath import BathSpec, CouplingProfile, dissipation_kernel_markov, rate_for_coupling
from kitbath.covariance import (QuadratureSpec, Rate, covariance_steady, ground_state_covariance, mode_kernel,
                                rotated_summand)
from kitbath.errors import BeforeInitialTime, IntegrationFailure, InvalidRun, ShapeMismatch
from kitbath.greens import GreensBlock, ModeContext, greens_causal, greens_equal_time
from kitbath.model import KitaevParams, build_A_matrix, dispersion, half_zone, momentum_grid
from kitbath.quadratic import block_form, block_spectrum, ground_state_from_spectrum

__all__ = [
    'OdeRun', 'OdeTrajectory', 'ComparisonReport',
    'tetrad_matrix', 'ode_greens', 'ode_equal_time',
    'finite_chain_covariance', 'chain_ground_state_covariance',
    'compare', 'convergence_exponent',
    'greens_gate', 'finite_chain_gate', 'ground_state_gate', 'spectrum_gate', 'schur_suite',
]

#: ``(flavor, branch)`` of each tetrad component; branch 0 is the forward contour.
TETRAD_ORDER = ((0, 0), (0, 1), (1, 0), (1, 1))
#: Forward-branch component of each source flavor.
SOURCE_ROWS = (0, 2)

_FLAVOR_SIGN = (1.0, -1.0)
_BRANCH_SIGN = (1.0, -1.0)
#: Comparisons of the coherence terms, reported without gating.
_INFORMATIONAL = frozenset({'causal/coherent', 'equal-time/coherent'})
_SOURCE = numpy.eye(4)[:, list(SOURCE_ROWS)]

###############################################################################
# Typings


class OdeRun(NamedTuple):
    """Input of the Green's oracle.

    Attributes:
        ctx (ModeContext): mode; ``t_in`` is the initial time
        spec (BathSpec): bath, any ``b`` and ``δE``
        t_grid (Tuple[float, ...]): increasing output times starting at ``t_in``
        tol (float): relative stepper tolerance
        coherent (bool): keep the flavor-mixing kernel entries

    """

    ctx: ModeContext
    spec: BathSpec
    t_grid: Tuple[float, ...]
    tol: float = 1e-10
    coherent: bool = True


class OdeTrajectory(NamedTuple):
    """Kernel ``L(t, tp)`` along the time grid.

    Attributes:
        blocks (List[GreensBlock]): one block per grid time
        tp (float): source time
        shooting_residual (float): largest violation of the initial
            conditions left by the boundary fit
        extension (bool): bath outside the closed-form regime

    """

    blocks: List[GreensBlock]
    tp: float
    shooting_residual: float
    extension: bool


class ComparisonReport(NamedTuple):
    """Maximal deviation of a candidate from a reference.

    Attributes:
        label (str): compared quantity
        max_deviation (float): largest absolute deviation
        location (Optional[str]): where it occurs
        passed (bool): ``max_deviation < threshold``
        threshold (float): acceptance threshold
        gating (bool): whether the result decides the exit status
        extension (bool): numeric-only regime without closed forms

    """

    label: str
    max_deviation: float
    location: Optional[str]
    passed: bool
    threshold: float
    gating: bool = True
    extension: bool = False


class _Propagator(NamedTuple):
    forward: scipy.integrate.OdeSolution
    backward: scipy.integrate.OdeSolution
    decaying: numpy.ndarray
    growing_left: numpy.ndarray
    span: float


###############################################################################
# Green's oracle


def tetrad_matrix(ctx: ModeContext, spec: BathSpec, *, coherent: bool = True) -> numpy.ndarray:
    """Left operator ``M`` of ``∂_t L(t, t') = M L(t, t')`` away from the source.

    ``M[(u, P), (w, P'')] = iε σ_u δ_{uw} δ_{PP''} - s_{P''} K_{uw}(P, P'')``
    with flavor sign ``σ = (+1, -1)``, branch sign ``s = (+1, -1)`` and the
    dissipation kernel ``K`` for the full ``Δ``-elements of ``spec``.

    Keyword Args:
        coherent (bool): keep the flavor-mixing entries ``K₀₁``, ``K₁₀``

    """
    kernel = dissipation_kernel_markov(ctx.disp.phi, ctx.disp, ctx.gtilde, spec, closed_form=False).branches
    matrix = numpy.zeros((4, 4), dtype=complex)
    for row, (u, p) in enumerate(TETRAD_ORDER):
        for col, (w, q) in enumerate(TETRAD_ORDER):
            if coherent or u == w:
                matrix[row, col] = -_BRANCH_SIGN[q] * kernel[u, w, p, q]
        matrix[row, row] += 1j * ctx.disp.epsilon * _FLAVOR_SIGN[u]
    return matrix


def _check_run(run: OdeRun) -> Tuple[float, ...]:
    grid = tuple(float(t) for t in run.t_grid)
    if not run.tol > 0.0:
        raise InvalidRun('stepper tolerance must be positive, got %r' % run.tol)
    if not grid or grid[0] != run.ctx.t_in:
        raise InvalidRun('time grid must start at t_in=%r' % run.ctx.t_in)
    if any(a >= b for a, b in zip(grid, grid[1:])):
        raise InvalidRun('time grid must increase strictly')
    return grid


def _modes(run: OdeRun, matrix: numpy.ndarray) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """Right eigenvectors and left eigenvector rows sorted decaying first."""
    if run.ctx.gtilde * run.spec.gamma == 0.0:
        # vanishing-rate limit: modes of the flavor-diagonal unit-rate operator
        if numpy.any(matrix[:2, 2:]) or numpy.any(matrix[2:, :2]):
            raise IntegrationFailure('flavors mix without dissipation; no decaying modes to select')
        unit = ModeContext(run.ctx.disp, 1.0, 1.0, run.ctx.t_in)
        reference = tetrad_matrix(unit, run.spec._replace(gamma=1.0), coherent=False)
    else:
        reference = matrix

    values, right = numpy.linalg.eig(reference)
    order = numpy.argsort(values.real, kind='stable')
    values, right = values[order], right[:, order]
    scale = max(float(numpy.max(numpy.abs(values))), 1.0)
    decaying = values.real < -1e-12 * scale
    growing = values.real > 1e-12 * scale
    if numpy.count_nonzero(decaying) != 2 or numpy.count_nonzero(growing) != 2:
        raise IntegrationFailure('expected two decaying and two growing modes, got exponents %s' % values)
    return right, numpy.linalg.inv(right)


def _solve(run: OdeRun) -> _Propagator:
    grid = _check_run(run)
    matrix = tetrad_matrix(run.ctx, run.spec, coherent=run.coherent)
    right, left = _modes(run, matrix)
    decaying_projector = right[:, :2] @ left[:2, :]
    growing_projector = right[:, 2:] @ left[2:, :]
    span = max(grid[-1] - run.ctx.t_in, 1.0)

    def rhs(_: float, state: numpy.ndarray) -> numpy.ndarray:
        return (matrix @ state.reshape(4, 4)).ravel()

    def integrate(start: numpy.ndarray, end: float) -> scipy.integrate.OdeSolution:
        result = scipy.integrate.solve_ivp(rhs, (0.0, end), start.ravel().astype(complex), method='DOP853',
                                           rtol=run.tol, atol=run.tol * 1e-2, dense_output=True)
        if not result.success:
            raise IntegrationFailure('stepper failed at phi=%r: %s' % (run.ctx.disp.phi, result.message))
        return result.sol

    return _Propagator(integrate(decaying_projector, span), integrate(growing_projector, -span),
                       right[:, :2], left[2:, :], span)


def _flow(solution: scipy.integrate.OdeSolution, tau: float) -> numpy.ndarray:
    return solution(tau).reshape(4, 4)


def _unbounded(prop: _Propagator, tau: float) -> numpy.ndarray:
    if tau > 0.0:
        return -1j * _flow(prop.forward, tau) @ _SOURCE
    if tau < 0.0:
        return 1j * _flow(prop.backward, tau) @ _SOURCE
    return 0.5 * (-1j * _flow(prop.forward, 0.0) + 1j * _flow(prop.backward, 0.0)) @ _SOURCE


def _boundary_factors(prop: _Propagator, elapsed: float, source_elapsed: float) -> Tuple[numpy.ndarray, numpy.ndarray]:
    after = _flow(prop.forward, elapsed) @ prop.decaying
    before = prop.growing_left @ _flow(prop.backward, -source_elapsed) @ _SOURCE
    return after, before


def _fit_boundary(prop: _Propagator) -> Tuple[numpy.ndarray, float]:
    """Coefficients of the boundary term and the worst residual of the fit.

    Forward-branch rows of flavor 0 vanish at ``t = t_in``, those of flavor 1
    at ``t' = t_in``; both are sampled over the span of the run.

    """
    samples = prop.span * numpy.arange(1, 9) / 8.0
    rows, targets = [], []
    for offset in samples:
        after, before = _boundary_factors(prop, 0.0, offset)
        free = _unbounded(prop, -offset)
        for col in range(2):
            rows.append(numpy.kron(after[SOURCE_ROWS[0], :], before[:, col]))
            targets.append(-free[SOURCE_ROWS[0], col])
        after, before = _boundary_factors(prop, offset, 0.0)
        free = _unbounded(prop, offset)
        for col in range(2):
            rows.append(numpy.kron(after[SOURCE_ROWS[1], :], before[:, col]))
            targets.append(-free[SOURCE_ROWS[1], col])
    system, rhs = numpy.array(rows), numpy.array(targets)
    coefficients = numpy.linalg.lstsq(system, rhs, rcond=None)[0]
    residual = float(numpy.max(numpy.abs(system @ coefficients - rhs)))
    return coefficients.reshape(2, 2), residual


def _trajectory(run: OdeRun, prop: _Propagator, grid: Sequence[float], tp: float, bounded: bool,
                coefficients: Optional[numpy.ndarray] = None) -> List[GreensBlock]:
    t_in = run.ctx.t_in
    blocks = []  # type: List[GreensBlock]
    for t in grid:
        kernel = _unbounded(prop, t - tp)
        if bounded and coefficients is not None:
            after, before = _boundary_factors(prop, t - t_in, tp - t_in)
            kernel = kernel + after @ coefficients @ before
        blocks.append(GreensBlock(kernel[list(SOURCE_ROWS), :], t, tp, t_in))
    return blocks


def ode_greens(run: OdeRun, tp: float, *, bounded: bool = True) -> OdeTrajectory:
    """Integrate the kernel equations for the source time ``tp``.

    Args:
        run (OdeRun): mode, bath, time grid and tolerance
        tp (float): source time within the grid range

    Keyword Args:
        bounded (bool): impose the initial conditions at ``t_in``; ``False``
            returns the particular solution without boundary term

    Returns:
        OdeTrajectory: ``L(t, tp)`` for every ``t`` of the grid

    Raises:
        InvalidRun: on a bad grid or tolerance, or ``tp`` after the grid
        BeforeInitialTime: if ``tp < t_in``
        IntegrationFailure: on stepper failure or without two decaying modes

    """
    grid = _check_run(run)
    if tp < run.ctx.t_in:
        raise BeforeInitialTime('source time %r precedes the initial time %r' % (tp, run.ctx.t_in))
    if tp > grid[-1]:
        raise InvalidRun('source time %r lies after the grid end %r' % (tp, grid[-1]))
    prop = _solve(run)
    coefficients, residual = _fit_boundary(prop) if bounded else (None, 0.0)
    return OdeTrajectory(_trajectory(run, prop, grid, tp, bounded, coefficients), tp, residual,
                         not run.spec.is_closed_form)


def ode_equal_time(run: OdeRun) -> OdeTrajectory:
    """Equal-time kernel ``L(t, t)`` along the grid from the boundary-conditioned solution.

    The returned ``tp`` is ``nan``; each block carries its own ``t == tp``.

    """
    grid = _check_run(run)
    prop = _solve(run)
    coefficients, residual = _fit_boundary(prop)
    blocks = [_trajectory(run, prop, (t,), t, True, coefficients)[0] for t in grid]
    return OdeTrajectory(blocks, math.nan, residual, not run.spec.is_closed_form)


###############################################################################
# Finite chains


def finite_chain_covariance(params: KitaevParams, profile: CouplingProfile, spec: BathSpec, d: int = 0, *,
                            t: Optional[float] = None, t_in: float = 0.0, coherent: bool = True,
                            rate: Rate = 'full') -> numpy.ndarray:
    """Covariance block of a finite ring as a discrete sum over its momenta.

    The summand is the rotated kernel of :func:`kitbath.covariance.rotated_summand`;
    momenta in ``[0, π]`` carry the weights of :func:`kitbath.model.half_zone`.

    Keyword Args:
        t (Optional[float]): time after ``t_in``; ``None`` for the steady state

    """
    if t is None:
        kernel = mode_kernel('steady', profile=profile, spec=spec, coherent=coherent)
    else:
        kernel = mode_kernel('time', profile=profile, spec=spec, t=t, t_in=t_in, coherent=coherent, rate=rate)
    summand = rotated_summand(params.h, d, kernel)
    phis, weights = half_zone(params.n_sites, params.boundary)
    total = numpy.zeros((2, 2), dtype=complex)
    for phi, weight in zip(phis, weights):
        total += weight * summand(float(phi))
    return total.real


def chain_ground_state_covariance(params: KitaevParams, d: int = 0) -> numpy.ndarray:
    """Block ``C_d`` of the exact ground state of the finite ring."""
    full = ground_state_from_spectrum(block_spectrum(build_A_matrix(params)))
    j, k = (d, 0) if d >= 0 else (0, -d)
    return full[2 * j:2 * j + 2, 2 * k:2 * k + 2].copy()


###############################################################################
# Comparisons


def compare(label: str, reference: ArrayLike, candidate: ArrayLike, threshold: float, *,
            locations: Optional[Sequence[str]] = None, gating: bool = True,
            extension: bool = False) -> ComparisonReport:
    """Largest absolute deviation between two equally long value lists.

    Args:
        label (str): compared quantity
        reference (array_like): reference values (scalars or equally shaped blocks)
        candidate (array_like): candidate values
        threshold (float): deviations below it pass

    Keyword Args:
        locations (Optional[Sequence[str]]): description of each list item
        gating (bool): whether the report decides the exit status
        extension (bool): numeric-only regime

    Raises:
        ShapeMismatch: if the lists differ in length or item shape

    """
    ref = numpy.asarray(reference, dtype=complex)
    cand = numpy.asarray(candidate, dtype=complex)
    if ref.shape != cand.shape:
        raise ShapeMismatch('%s: reference has shape %r, candidate %r' % (label, ref.shape, cand.shape))
    if ref.size == 0:
        return ComparisonReport(label, 0.0, None, True, threshold, gating, extension)
    deviation = numpy.abs(ref - cand).ravel()
    index = int(numpy.argmax(deviation))
    worst = float(deviation[index])
    if locations is not None and ref.ndim:
        location = locations[index // (ref.size // ref.shape[0])]
    else:
        location = 'item %d' % index
    return ComparisonReport(label, worst, location, worst < threshold, threshold, gating, extension)


def convergence_exponent(sizes: Sequence[int], deviations: Sequence[float]) -> float:
    """Exponent ``p`` of ``deviation ∝ N^{-p}`` fitted over the positive deviations."""
    grid = numpy.asarray(sizes, dtype=float)
    values = numpy.asarray(deviations, dtype=float)
    keep = values > 0.0
    if numpy.count_nonzero(keep) < 2:
        return math.nan
    slope, _ = numpy.polyfit(numpy.log(grid[keep]), numpy.log(values[keep]), 1)
    return float(-slope)


###############################################################################
# Gates


def _momenta(count: int) -> numpy.ndarray:
    return math.pi * (numpy.arange(count) + 0.5) / count


def greens_gate(h_values: Sequence[float] = (0.5, 1.0, 2.0), couplings: Sequence[float] = (0.05, 0.3),
                n_momenta: int = 32, *, span: float = 10.0, n_times: int = 41,
                source_fractions: Sequence[float] = (0.0, 0.25, 0.5), threshold: float = 1e-6,
                tol: float = 1e-10) -> List[ComparisonReport]:
    """Closed-form Green's kernels against the ODE oracle.

    For every field and coupling ``g̃Γ/2`` the modes of ``n_momenta``
    momenta in ``(0, π)`` are compared over ``t ∈ [0, span / (g̃Γ)]``:

    * ``causal/secular``: :func:`greens_causal` without coherence terms
      against the oracle without flavor mixing, every entry;
    * ``equal-time/secular``: :func:`greens_equal_time` likewise;
    * ``causal/diagonal``: diagonal entries without coherence terms against
      the full-kernel oracle;
    * ``causal/coherent`` and ``equal-time/coherent``: the full closed forms
      against the full-kernel oracle, reported without deciding the exit
      status.

    """
    reports = []  # type: List[ComparisonReport]
    for h in h_values:
        for coupling in couplings:
            spec = BathSpec(2.0 * coupling)
            grid = tuple(numpy.linspace(0.0, span / (2.0 * coupling), n_times))
            sources = [grid[int(round(fraction * (n_times - 1)))] for fraction in source_fractions]
            collected = {}  # type: Dict[str, Tuple[List[Any], List[Any], List[str]]]
            for key in ('causal/secular', 'equal-time/secular', 'causal/diagonal', 'causal/coherent',
                        'equal-time/coherent'):
                collected[key] = ([], [], [])
            worst_residual = 0.0
            for phi in _momenta(n_momenta):
                ctx = ModeContext(dispersion(h, float(phi)), 1.0, spec.gamma)
                secular_run = OdeRun(ctx, spec, grid, tol, coherent=False)
                full_run = secular_run._replace(coherent=True)
                secular, full = _solve(secular_run), _solve(full_run)
                secular_fit, secular_residual = _fit_boundary(secular)
                full_fit, full_residual = _fit_boundary(full)
                worst_residual = max(worst_residual, secular_residual, full_residual)

                for tp in sources:
                    ode_secular = _trajectory(secular_run, secular, grid, tp, True, secular_fit)
                    ode_full = _trajectory(full_run, full, grid, tp, True, full_fit)
                    for t, plain, mixed in zip(grid, ode_secular, ode_full):
                        where = 'phi=%.6g t=%.6g tp=%.6g' % (phi, t, tp)
                        closed = greens_causal(ctx, t, tp, coherent=False).entries
                        coherent = greens_causal(ctx, t, tp, coherent=True).entries
                        for key, ref, cand in (('causal/secular', closed, plain.entries),
                                               ('causal/diagonal', numpy.diag(closed), numpy.diag(mixed.entries)),
                                               ('causal/coherent', coherent, mixed.entries)):
                            collected[key][0].append(ref)
                            collected[key][1].append(cand)
                            collected[key][2].append(where)
                for t in grid:
                    block = _trajectory(secular_run, secular, (t,), t, True, secular_fit)[0]
                    collected['equal-time/secular'][0].append(greens_equal_time(ctx, t, coherent=False).entries)
                    collected['equal-time/secular'][1].append(block.entries)
                    collected['equal-time/secular'][2].append('phi=%.6g t=%.6g' % (phi, t))
                    mixed = _trajectory(full_run, full, (t,), t, True, full_fit)[0]
                    collected['equal-time/coherent'][0].append(greens_equal_time(ctx, t, coherent=True).entries)
                    collected['equal-time/coherent'][1].append(mixed.entries)
                    collected['equal-time/coherent'][2].append('phi=%.6g t=%.6g' % (phi, t))

            for key, (ref, cand, where) in collected.items():
                reports.append(compare('%s h=%g coupling=%g' % (key, h, coupling), ref, cand, threshold,
                                       locations=where, gating=key not in _INFORMATIONAL))
            reports.append(ComparisonReport('shooting h=%g coupling=%g' % (h, coupling), worst_residual, None,
                                            worst_residual < tol * 1e2, tol * 1e2))
    return reports


def finite_chain_gate(h_values: Sequence[float] = (0.5, 1.2), coupling: float = 0.1,
                      displacements: Sequence[int] = tuple(range(21)),
                      sizes: Sequence[Tuple[int, float]] = ((512, 1e-3), (4096, 1e-5)),
                      quad: Optional[QuadratureSpec] = None) -> List[ComparisonReport]:
    """Finite-ring steady sums against the continuum quadrature.

    Local coupling is scaled so that ``g̃Γ/2`` equals ``coupling``. One
    report per field and ring size, plus a non-gating report of the measured
    convergence exponent.

    """
    profile = CouplingProfile.local()
    spec = BathSpec(rate_for_coupling(profile, coupling))
    reports = []  # type: List[ComparisonReport]
    for h in h_values:
        reference = [covariance_steady(h, profile, spec, quad, d) for d in displacements]
        where = ['d=%d' % d for d in displacements]
        deviations = []  # type: List[float]
        for n_sites, threshold in sizes:
            params = KitaevParams(h, n_sites)
            candidate = [finite_chain_covariance(params, profile, spec, d) for d in displacements]
            report = compare('finite-chain h=%g N=%d' % (h, n_sites), reference, candidate, threshold,
                             locations=where)
            deviations.append(report.max_deviation)
            reports.append(report)
        exponent = convergence_exponent([n for n, _ in sizes], deviations)
        reports.append(ComparisonReport('convergence-exponent h=%g' % h, exponent, None, True, math.inf,
                                        gating=False))
    return reports


def ground_state_gate(h: float = 1.5, d: int = 3, n_sites: int = 256, threshold: float = 1e-4,
                      quad: Optional[QuadratureSpec] = None) -> ComparisonReport:
    """Exact finite-ring ground state against the continuum ground-state quadrature."""
    params = KitaevParams(h, n_sites)
    return compare('ground-state h=%g N=%d d=%d' % (h, n_sites, d), ground_state_covariance(h, quad, d),
                   chain_ground_state_covariance(params, d), threshold)


def spectrum_gate(h: float, n_sites: int = 256, threshold: float = 1e-10) -> ComparisonReport:
    """Block energies of the finite ring against ``2 ε_φ`` over its momentum grid."""
    params = KitaevParams(h, n_sites)
    energies = block_spectrum(build_A_matrix(params)).epsilons
    expected = numpy.sort([2.0 * dispersion(h, float(phi)).epsilon for phi in momentum_grid(n_sites)])[::-1]
    return compare('spectrum h=%g N=%d' % (h, n_sites), expected, energies, threshold)


def schur_suite(seed: int = 0, count: int = 200, max_blocks: int = 64,
                threshold: float = 1e-10) -> List[ComparisonReport]:
    """Block spectra of random antisymmetric matrices.

    Draws ``count`` matrices of even dimension up to ``2 * max_blocks``, with
    entries above the diagonal uniform on ``[-1, 1]``, from
    ``numpy.random.default_rng(seed)`` and reports the worst reconstruction
    error ``|Q (⊕ ε) Q^T - A|`` and the worst deviation of the block energies
    from the moduli of the eigenvalues.

    """
    rng = numpy.random.default_rng(seed)
    reconstruction = 0.0
    pairing = 0.0
    worst_size = [0, 0]
    for _ in range(count):
        size = 2 * int(rng.integers(2, max_blocks + 1))
        upper = numpy.triu(rng.uniform(-1.0, 1.0, (size, size)), 1)
        matrix = upper - upper.T
        spectrum = block_spectrum(matrix)
        rebuilt = spectrum.Q @ block_form(spectrum.epsilons) @ spectrum.Q.T
        error = float(numpy.max(numpy.abs(rebuilt - matrix)))
        moduli = numpy.sort(numpy.linalg.eigvals(matrix).imag)[::-1][:size // 2]
        mismatch = float(numpy.max(numpy.abs(moduli - spectrum.epsilons)))
        if error > reconstruction:
            reconstruction, worst_size[0] = error, size
        if mismatch > pairing:
            pairing, worst_size[1] = mismatch, size
    return [
        ComparisonReport('schur-reconstruction seed=%d' % seed, reconstruction, 'size=%d' % worst_size[0],
                         reconstruction < threshold, threshold),
        ComparisonReport('schur-pairing seed=%d' % seed, pairing, 'size=%d' % worst_size[1],
                         pairing < threshold, threshold),
    ]
