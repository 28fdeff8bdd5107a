# -*- coding: utf-8 -*-
"""Covariance matrices of a dissipative Kitaev chain coupled to a Markovian fermionic bath."""

import pathlib

import tbtrim

# version string
__version__ = '0.1.0'

# pylint: disable=wrong-import-position
from kitbath.bath import (BathSpec, CouplingProfile, SpectralDensity, dissipation_kernel_markov, g_tilde,
                          markov_params, rate_for_coupling, spectral_density, validate_positivity)
from kitbath.covariance import (CriticalityReport, QuadratureSpec, asymptotic_offdiag, correlation_length,
                                covariance_steady, covariance_steady_weak, covariance_time, criticality_scan,
                                ground_state_covariance, same_site_closed_form)
from kitbath.errors import KitbathError
from kitbath.greens import greens_causal, greens_equal_time, greens_steady, greens_unbounded, mode_context
from kitbath.model import KitaevParams, build_A_matrix, dispersion, momentum_grid
from kitbath.oracle import compare, finite_chain_covariance, ode_greens
from kitbath.quadratic import assemble_covariance, block_spectrum, physicality_check

__all__ = [
    'KitbathError',
    'block_spectrum', 'assemble_covariance', 'physicality_check',
    'KitaevParams', 'build_A_matrix', 'dispersion', 'momentum_grid',
    'BathSpec', 'CouplingProfile', 'SpectralDensity', 'g_tilde', 'validate_positivity', 'rate_for_coupling',
    'spectral_density', 'markov_params', 'dissipation_kernel_markov',
    'mode_context', 'greens_unbounded', 'greens_causal', 'greens_equal_time', 'greens_steady',
    'QuadratureSpec', 'CriticalityReport', 'covariance_time', 'covariance_steady', 'covariance_steady_weak',
    'ground_state_covariance', 'same_site_closed_form', 'asymptotic_offdiag', 'correlation_length',
    'criticality_scan',
    'ode_greens', 'finite_chain_covariance', 'compare',
]

###############################################################################
# Traceback Trimming (tbtrim)

# root path
ROOT = pathlib.Path(__file__).resolve().parent


def predicate(filename: str) -> bool:
    return pathlib.Path(filename).parent == ROOT


tbtrim.set_trim_rule(predicate, strict=True, target=KitbathError)
