# -*- coding: utf-8 -*-
# pylint: disable=no-member

import math
import os
import sys
import unittest

import numpy

# root path
ROOT = os.path.dirname(os.path.realpath(__file__))
sys.path.insert(0, os.path.abspath(os.path.join(ROOT, '..')))
from kitbath.errors import InvalidChain
from kitbath.model import (KitaevParams, a_phi_matrix, bogoliubov_matrix, build_A_matrix, dispersion, half_zone,
                           momentum_grid)
from kitbath.quadratic import block_spectrum
sys.path.pop(0)


class TestChain(unittest.TestCase):

    def test_matrix_entries(self):
        matrix = build_A_matrix(KitaevParams(0.7, 4))
        self.assertEqual(matrix.shape, (8, 8))
        numpy.testing.assert_array_equal(matrix, -matrix.T)
        self.assertEqual(matrix[0, 1], 1.4)
        self.assertEqual(matrix[2, 1], 2.0)
        self.assertEqual(matrix[0, 7], -2.0)

        periodic = build_A_matrix(KitaevParams(0.7, 4, 'periodic'))
        self.assertEqual(periodic[0, 7], 2.0)

    def test_spectrum_matches_dispersion(self):
        for boundary in ('antiperiodic', 'periodic'):
            for h in (0.3, 1.0, 1.7):
                params = KitaevParams(h, 16, boundary)
                energies = block_spectrum(build_A_matrix(params)).epsilons
                expected = sorted((2.0 * dispersion(h, float(phi)).epsilon
                                   for phi in momentum_grid(16, boundary)), reverse=True)
                numpy.testing.assert_allclose(energies, expected, atol=1e-10,
                                              err_msg='h=%r boundary=%s' % (h, boundary))

    def test_invalid(self):
        with self.assertRaises(InvalidChain):
            build_A_matrix(KitaevParams(0.5, 1))
        with self.assertRaises(InvalidChain):
            build_A_matrix(KitaevParams(0.5, 4, 'twisted'))  # type: ignore[arg-type]
        with self.assertRaises(InvalidChain):
            momentum_grid(1)


class TestMomentum(unittest.TestCase):

    def test_dispersion(self):
        point = dispersion(2.0, 0.0)
        self.assertAlmostEqual(point.epsilon, 3.0)
        self.assertAlmostEqual(point.cos2theta, 1.0)
        self.assertAlmostEqual(point.sin2theta, 0.0)

        point = dispersion(0.5, math.pi / 2)
        self.assertAlmostEqual(point.epsilon, math.sqrt(1.25))
        self.assertAlmostEqual(point.cos_sq + point.sin_sq, 1.0)
        self.assertAlmostEqual(point.cos2theta ** 2 + point.sin2theta ** 2, 1.0)

    def test_gap_closing(self):
        point = dispersion(-1.0, 0.0)
        self.assertEqual(point.epsilon, 0.0)
        self.assertEqual((point.cos2theta, point.sin2theta), (0.0, 1.0))

    def test_grid(self):
        numpy.testing.assert_allclose(numpy.sort(momentum_grid(4)),
                                      [-3 * math.pi / 4, -math.pi / 4, math.pi / 4, 3 * math.pi / 4])
        numpy.testing.assert_allclose(numpy.sort(momentum_grid(4, 'periodic')),
                                      [-math.pi / 2, 0.0, math.pi / 2, math.pi])

    def test_half_zone(self):
        for n_sites in (4, 5, 16, 17):
            for boundary in ('antiperiodic', 'periodic'):
                phis, weights = half_zone(n_sites, boundary)
                self.assertAlmostEqual(float(numpy.sum(weights)), 1.0, places=12)
                self.assertTrue(numpy.all((phis >= 0.0) & (phis <= math.pi)))

        phis, weights = half_zone(4, 'periodic')
        numpy.testing.assert_allclose(phis, [0.0, math.pi / 2, math.pi])
        numpy.testing.assert_allclose(weights, [0.25, 0.5, 0.25])

    def test_bogoliubov(self):
        for h in (0.4, 1.0, 2.5):
            for phi in (0.1, 1.3, 2.9, -0.8):
                point = dispersion(h, phi)
                frame = bogoliubov_matrix(point)
                numpy.testing.assert_allclose(frame @ frame.conj().T, numpy.eye(2), atol=1e-12)
                rebuilt = frame @ numpy.diag([point.epsilon, -point.epsilon]) @ frame.conj().T
                numpy.testing.assert_allclose(rebuilt, -2.0 * a_phi_matrix(h, phi), atol=1e-12)

    def test_momentum_block(self):
        block = a_phi_matrix(0.6, 0.9)
        numpy.testing.assert_allclose(block, block.conj().T)
        numpy.testing.assert_allclose(numpy.linalg.eigvalsh(block),
                                      [-dispersion(0.6, 0.9).epsilon / 2, dispersion(0.6, 0.9).epsilon / 2])


if __name__ == '__main__':
    unittest.main()
