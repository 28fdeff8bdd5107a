# -*- coding: utf-8 -*-
"""Quadratic Majorana forms: block spectrum and covariance matrices."""

from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Tuple, Union

import numpy
import scipy.linalg
from numpy.typing import ArrayLike

from kitbath.errors import InconsistentBlocks, InvalidMatrix

__all__ = [
    'MajoranaIndex', 'BlockSpectrum', 'CovarianceResult',
    'block_spectrum', 'block_form', 'ground_state_from_spectrum',
    'assemble_covariance', 'covariance_blocks', 'physicality_check',
]

#: Tolerance on ``max |A + A^T|`` accepted by :func:`block_spectrum`.
ANTISYMMETRY_TOL = 1e-10
#: Tolerance on ``C_d[u][v] + C_{-d}[v][u]`` accepted by :func:`assemble_covariance`.
BLOCK_TOL = 1e-9

BlockSource = Union[Mapping[int, 'numpy.ndarray'], Callable[[int], 'numpy.ndarray']]

###############################################################################
# Typings


class MajoranaIndex(NamedTuple):
    """Compact Majorana index ``(j, u)`` with flat position ``2j + u``."""

    site: int
    flavor: int

    @property
    def flat(self) -> int:
        return 2 * self.site + self.flavor

    @classmethod
    def from_flat(cls, alpha: int) -> 'MajoranaIndex':
        site, flavor = divmod(alpha, 2)
        return cls(site, flavor)


class BlockSpectrum(NamedTuple):
    """Orthogonal block diagonalization ``Q^T A Q = ⊕ [[0, ε_j], [-ε_j, 0]]``.

    Attributes:
        Q (numpy.ndarray): real orthogonal ``2N x 2N`` matrix, read-only
        epsilons (numpy.ndarray): ``N`` non-negative block energies in
            descending order, read-only

    """

    Q: numpy.ndarray
    epsilons: numpy.ndarray


class CovarianceResult(NamedTuple):
    """Translation-invariant covariance matrix of an ``N``-site chain.

    Attributes:
        blocks (Dict[int, numpy.ndarray]): real ``2 x 2`` block ``C_d`` for
            every displacement ``d = j - k`` with ``|d| <= N - 1``
        n_sites (int): number of sites ``N``
        metadata (Dict[str, object]): free-form provenance (``h``, bath, time)

    """

    blocks: Dict[int, numpy.ndarray]
    n_sites: int
    metadata: Dict[str, object]

    @property
    def matrix(self) -> numpy.ndarray:
        """numpy.ndarray: assembled ``2N x 2N`` matrix ``C[2j+u, 2k+v] = C_{j-k}[u][v]``."""
        size = self.n_sites
        full = numpy.zeros((2 * size, 2 * size))
        for j in range(size):
            for k in range(size):
                full[2 * j:2 * j + 2, 2 * k:2 * k + 2] = self.blocks[j - k]
        return full


###############################################################################
# Block spectrum


def _check_antisymmetric(matrix: object, tol: float) -> numpy.ndarray:
    array = numpy.asarray(matrix)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise InvalidMatrix('matrix must be square, got shape %r' % (array.shape,))
    if numpy.iscomplexobj(array):
        if array.size and numpy.max(numpy.abs(array.imag)) > tol:
            raise InvalidMatrix('matrix must be real')
        array = array.real
    size = array.shape[0]
    if size == 0 or size % 2 != 0:
        raise InvalidMatrix('dimension must be even and positive, got %d' % size)
    array = numpy.asarray(array, dtype=float)
    asymmetry = float(numpy.max(numpy.abs(array + array.T)))
    if asymmetry > tol:
        raise InvalidMatrix('matrix is not antisymmetric (max |A + A^T| = %.3g)' % asymmetry)
    return (array - array.T) / 2


def block_spectrum(matrix: object, *, tol: float = ANTISYMMETRY_TOL) -> BlockSpectrum:
    """Block-diagonalize a real antisymmetric matrix.

    The real Schur form of an antisymmetric matrix is block diagonal.
    Two-by-two blocks are sign-normalised by swapping the two basis columns
    when the upper off-diagonal entry is negative; one-by-one (zero) blocks are
    paired in the order the reduction returns them.

    Args:
        matrix (array_like): real antisymmetric ``2N x 2N`` matrix

    Keyword Args:
        tol (float): accepted asymmetry ``max |A + A^T|``

    Returns:
        BlockSpectrum: orthogonal basis and non-negative block energies

    Raises:
        InvalidMatrix: if the matrix is not square, of odd dimension,
            complex or asymmetric beyond ``tol``

    """
    array = _check_antisymmetric(matrix, tol)
    size = array.shape[0]
    form, basis = scipy.linalg.schur(array, output='real')

    pairs = []  # type: List[Tuple[float, int, int]]
    singles = []  # type: List[int]
    index = 0
    while index < size:
        if index + 1 < size and form[index + 1, index] != 0.0:
            pairs.append((0.5 * (form[index, index + 1] - form[index + 1, index]), index, index + 1))
            index += 2
        else:
            singles.append(index)
            index += 1
    # zero blocks keep the order of the reduction
    for first, second in zip(singles[0::2], singles[1::2]):
        pairs.append((0.5 * (form[first, second] - form[second, first]), first, second))

    blocks = []  # type: List[Tuple[float, int, int]]
    for value, first, second in pairs:
        if value < 0:
            value, first, second = -value, second, first
        blocks.append((value, first, second))
    # stable: equal energies keep their relative order
    blocks.sort(key=lambda block: -block[0])

    order = [column for _, first, second in blocks for column in (first, second)]
    Q = numpy.ascontiguousarray(basis[:, order])
    epsilons = numpy.array([value for value, _, _ in blocks])
    Q.setflags(write=False)
    epsilons.setflags(write=False)
    return BlockSpectrum(Q, epsilons)


def block_form(epsilons: ArrayLike) -> numpy.ndarray:
    """Direct sum ``⊕_j [[0, ε_j], [-ε_j, 0]]``."""
    values = numpy.asarray(epsilons, dtype=float)
    form = numpy.zeros((2 * values.size, 2 * values.size))
    index = numpy.arange(values.size)
    form[2 * index, 2 * index + 1] = values
    form[2 * index + 1, 2 * index] = -values
    return form


def ground_state_from_spectrum(spectrum: BlockSpectrum) -> numpy.ndarray:
    """Ground-state covariance ``Q (⊕ [[0, 1], [-1, 0]]) Q^T`` of a quadratic form.

    This is the orthogonal polar factor of ``A``. Zero-energy blocks are
    degenerate; the pairing fixed by :func:`block_spectrum` selects one of the
    ground states.

    """
    Q = spectrum.Q
    return Q @ block_form(numpy.ones(spectrum.epsilons.size)) @ Q.T


###############################################################################
# Covariance assembly


def assemble_covariance(blocks: BlockSource, n_sites: int, *,
                        metadata: Optional[Mapping[str, object]] = None,
                        tol: float = BLOCK_TOL) -> CovarianceResult:
    """Lay out displacement blocks as the covariance matrix of ``n_sites`` sites.

    Args:
        blocks (Union[Mapping[int, array_like], Callable[[int], array_like]]):
            blocks ``C_d`` by displacement; a mapping may omit ``-d`` when
            ``d`` is given (it is completed by antisymmetry) and omits zero
            blocks, a callable is evaluated for every ``|d| <= N - 1``
        n_sites (int): number of sites ``N``

    Keyword Args:
        metadata (Optional[Mapping[str, object]]): provenance to attach
        tol (float): accepted antisymmetry violation

    Returns:
        CovarianceResult: assembled covariance

    Raises:
        InconsistentBlocks: if ``C_d[u][v] != -C_{-d}[v][u]`` beyond ``tol``

    """
    if n_sites < 1:
        raise InconsistentBlocks('number of sites must be positive, got %d' % n_sites)
    span = range(-(n_sites - 1), n_sites)
    if callable(blocks):
        given = {d: numpy.asarray(blocks(d), dtype=float) for d in span}
    else:
        given = {int(d): numpy.asarray(block, dtype=float) for d, block in blocks.items() if abs(int(d)) < n_sites}

    for d, block in given.items():
        if block.shape != (2, 2):
            raise InconsistentBlocks('block at d=%d has shape %r, expected (2, 2)' % (d, block.shape))
        if -d in given:
            violation = float(numpy.max(numpy.abs(block + given[-d].T)))
            if violation > tol:
                raise InconsistentBlocks('C_%d and C_%d violate antisymmetry by %.3g' % (d, -d, violation))

    full = {}  # type: Dict[int, numpy.ndarray]
    for d in span:
        if d in given:
            block = given[d]
        elif -d in given:
            block = -given[-d].T
        else:
            block = numpy.zeros((2, 2))
        block = block.copy()
        block.setflags(write=False)
        full[d] = block
    return CovarianceResult(full, n_sites, dict(metadata or {}))


def covariance_blocks(matrix: ArrayLike) -> Dict[int, numpy.ndarray]:
    """Read displacement blocks back from an assembled translation-invariant matrix."""
    array = numpy.asarray(matrix, dtype=float)
    n_sites = array.shape[0] // 2
    blocks = {}  # type: Dict[int, numpy.ndarray]
    for d in range(-(n_sites - 1), n_sites):
        j = max(d, 0)
        k = j - d
        blocks[d] = array[2 * j:2 * j + 2, 2 * k:2 * k + 2].copy()
    return blocks


def physicality_check(covariance: Union[CovarianceResult, ArrayLike]) -> float:
    """Largest singular value of the assembled covariance.

    Gaussian states have all singular values ``<= 1``; pure states saturate
    the bound. The comparison against one is left to the caller.

    """
    if isinstance(covariance, CovarianceResult):
        array = covariance.matrix
    else:
        array = numpy.asarray(covariance, dtype=float)
    if array.size == 0:
        return 0.0
    return float(numpy.linalg.norm(array, 2))
