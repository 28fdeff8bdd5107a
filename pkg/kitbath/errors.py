# -*- coding: utf-8 -*-
"""Exception hierarchy of kitbath."""

from typing import Optional

__all__ = [
    'KitbathError',
    'InvalidMatrix', 'InconsistentBlocks', 'InvalidChain', 'AsymmetricCoupling',
    'InvalidBath', 'SingularDensity', 'UnsupportedClosedForm', 'BeforeInitialTime',
    'AtCriticalPoint', 'ShapeMismatch', 'InvalidRun', 'ConfigError',
    'QuadratureFailure', 'UnderflowRange', 'IntegrationFailure',
]


class KitbathError(Exception):
    """Base class of all errors raised by kitbath.

    Every concrete error also derives from the builtin exception it refines,
    i.e. :exc:`ValueError` for rejected input and :exc:`ArithmeticError` for
    numerical failures, so generic handlers keep working.

    """


###############################################################################
# Input errors


class InvalidMatrix(KitbathError, ValueError):
    """Matrix is not real, square, antisymmetric or of even dimension."""


class InconsistentBlocks(KitbathError, ValueError):
    """Displacement blocks violate ``C_d[u][v] == -C_{-d}[v][u]``."""


class InvalidChain(KitbathError, ValueError):
    """Chain parameters out of range (e.g. fewer than two sites)."""


class AsymmetricCoupling(KitbathError, ValueError):
    """Coupling profile with ``g_d != g_{-d}``."""


class InvalidBath(KitbathError, ValueError):
    """Bath parameters or spectral density parameters out of range."""


class SingularDensity(KitbathError, ValueError):
    """Spectral density is not finite at the system energy."""


class UnsupportedClosedForm(KitbathError, ValueError):
    """Closed forms only exist for ``b == 0``, ``deltaE == 0`` and ``g_tilde >= 0``."""


class BeforeInitialTime(KitbathError, ValueError):
    """Time argument earlier than the initial time ``t_in``."""


class AtCriticalPoint(KitbathError, ValueError):
    """Quantity undefined at ``|h| == 1``."""


class ShapeMismatch(KitbathError, ValueError):
    """Reference and candidate value lists differ in length."""


class InvalidRun(KitbathError, ValueError):
    """ODE run with a non-positive tolerance, a bad time grid or a source time off the grid."""


class ConfigError(KitbathError, ValueError):
    """Invalid run configuration.

    Args:
        message (str): error description
        key (Optional[str]): offending configuration key
        line (Optional[int]): 1-based line of the key in the configuration text

    """

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None) -> None:
        if line is not None:
            message = 'line %d: %s' % (line, message)
        super().__init__(message)
        self.key = key
        self.line = line


###############################################################################
# Numerical failures


class QuadratureFailure(KitbathError, ArithmeticError):
    """Quadrature did not reach the requested tolerance.

    Args:
        message (str): error description
        error (float): achieved error estimate

    """

    def __init__(self, message: str, error: float = float('nan')) -> None:
        super().__init__('%s (achieved error %.3g)' % (message, error))
        self.error = error


class UnderflowRange(KitbathError, ArithmeticError):
    """Every sampled entry lies below the noise floor."""


class IntegrationFailure(KitbathError, ArithmeticError):
    """ODE stepper failure or unexpected mode structure."""
