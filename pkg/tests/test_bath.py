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
from kitbath.bath import (BathSpec, CouplingProfile, delta_elements, dissipation_kernel_markov, g_tilde,
                          markov_params, principal_value, rate_for_coupling, spectral_density,
                          validate_positivity)
from kitbath.errors import AsymmetricCoupling, InvalidBath, SingularDensity, UnsupportedClosedForm
from kitbath.model import dispersion
sys.path.pop(0)

NORM = 1.0 / math.sqrt(2.0 * math.pi)


class TestCoupling(unittest.TestCase):

    def test_local(self):
        profile = CouplingProfile.local()
        self.assertEqual(profile.radius, 0)
        for phi in (0.0, 1.0, math.pi):
            self.assertAlmostEqual(g_tilde(profile, phi), NORM)

    def test_nearest_neighbour(self):
        profile = CouplingProfile.nearest_neighbour(0.5, 1.0)
        self.assertEqual(profile.radius, 1)
        self.assertEqual(profile.as_dict(), {-1: 0.5, 0: 1.0, 1: 0.5})
        self.assertAlmostEqual(g_tilde(profile, 0.0), 2.0 * NORM)
        self.assertAlmostEqual(g_tilde(profile, math.pi), 0.0)
        self.assertAlmostEqual(g_tilde(profile, 1.2), g_tilde(profile, -1.2))
        self.assertAlmostEqual(validate_positivity(profile), 0.0, places=12)

        signed = CouplingProfile.nearest_neighbour(1.0, 1.0)
        self.assertAlmostEqual(validate_positivity(signed), -NORM)

    def test_zero_coefficients_dropped(self):
        self.assertEqual(CouplingProfile.from_mapping({0: 1.0, 3: 0.0, -3: 0.0}).coefficients, ((0, 1.0),))

    def test_asymmetric(self):
        with self.assertRaises(AsymmetricCoupling):
            CouplingProfile.from_mapping({0: 1.0, 1: 0.5})
        with self.assertRaises(AsymmetricCoupling):
            g_tilde(CouplingProfile(((0, 1.0), (1, 0.5))), 0.3)

    def test_rate_for_coupling(self):
        profile = CouplingProfile.local()
        gamma = rate_for_coupling(profile, 0.1)
        self.assertAlmostEqual(g_tilde(profile, 0.0) * gamma / 2, 0.1)
        with self.assertRaises(InvalidBath):
            rate_for_coupling(CouplingProfile(()), 0.1)


class TestBath(unittest.TestCase):

    def test_defaults(self):
        spec = BathSpec(0.2)
        self.assertTrue(spec.is_closed_form)
        self.assertEqual(spec.beta, math.inf)
        self.assertIs(spec.check(), spec)
        self.assertFalse(BathSpec(0.2, b=0.5).is_closed_form)
        self.assertFalse(BathSpec(0.2, delta_e=0.1).is_closed_form)

    def test_check(self):
        for spec in (BathSpec(-0.1), BathSpec(0.1, b=1.5), BathSpec(0.1, beta=0.0), BathSpec(0.1, math.nan)):
            with self.assertRaises(InvalidBath, msg=repr(spec)):
                spec.check()

    def test_delta_elements(self):
        self.assertEqual(delta_elements(BathSpec(2.0)), (1.0, 1.0, 0.0, 2.0))
        pp, mm, pm, mp = delta_elements(BathSpec(2.0, delta_e=0.3, b=0.25))
        self.assertAlmostEqual(pp, complex(0.5, -0.3))
        self.assertAlmostEqual(mm, complex(0.5, 0.3))
        self.assertAlmostEqual(pm, -0.5)
        self.assertAlmostEqual(mp, 1.5)


class TestSpectralDensity(unittest.TestCase):

    def test_families(self):
        flat = spectral_density('flat', level=0.5, cutoff=2.0)
        self.assertEqual(flat(1.0), 0.5)
        self.assertEqual(flat(3.0), 0.0)

        peak = spectral_density('lorentzian', center=1.0, width=0.5)
        self.assertAlmostEqual(peak(1.0), 1.0 / (0.5 * math.pi))

        power = spectral_density('power-law', alpha=2.0, exponent=1.0, cutoff=1.0)
        self.assertAlmostEqual(power(1.0), 2.0 / math.e)

    def test_invalid(self):
        with self.assertRaises(InvalidBath):
            spectral_density('ohmic', alpha=1.0)
        with self.assertRaises(InvalidBath):
            spectral_density('flat', level=1.0)
        with self.assertRaises(InvalidBath):
            spectral_density('lorentzian', center=1.0, width=-1.0)

    def test_markov_flat(self):
        density = spectral_density('flat', level=1.0 / (2.0 * math.pi), cutoff=2.0)
        spec = markov_params(density, 1.0)
        self.assertAlmostEqual(spec.gamma, 1.0)
        self.assertAlmostEqual(spec.delta_e, 0.0, places=9)
        self.assertEqual(spec.b, 0.0)

        shifted = markov_params(density, 0.5)
        self.assertAlmostEqual(shifted.delta_e, math.log(3.0) / (2.0 * math.pi), places=9)

        warm = markov_params(density, 1.0, beta=1.0)
        self.assertAlmostEqual(warm.b, 1.0 / (1.0 + math.e))

    def test_principal_value_outside_support(self):
        density = spectral_density('flat', level=1.0, cutoff=1.0)
        self.assertAlmostEqual(principal_value(density, 2.0), math.log(0.5), places=9)

    def test_markov_invalid(self):
        density = spectral_density('flat', level=1.0, cutoff=2.0)
        with self.assertRaises(InvalidBath):
            markov_params(density, 0.0)
        with self.assertRaises(InvalidBath):
            markov_params(density, 1.0, beta=-1.0)
        with self.assertRaises(SingularDensity):
            markov_params(density, 2.0)


class TestKernel(unittest.TestCase):

    def test_coefficients(self):
        disp = dispersion(0.5, 1.0)
        kernel = dissipation_kernel_markov(1.0, disp, 0.4, BathSpec(2.0))
        self.assertAlmostEqual(kernel.A, 0.4 * disp.cos2theta)
        self.assertAlmostEqual(kernel.B, 0.4 * disp.sin2theta)
        self.assertAlmostEqual(kernel.loss, 0.8 * disp.sin_sq)
        self.assertAlmostEqual(kernel.gain, 0.8 * disp.cos_sq)
        numpy.testing.assert_allclose(kernel.branches[0, 1], -kernel.branches[1, 0])
        self.assertEqual(kernel.branches.shape, (2, 2, 2, 2))

    def test_closed_form_regime(self):
        disp = dispersion(0.5, 1.0)
        with self.assertRaises(UnsupportedClosedForm):
            dissipation_kernel_markov(1.0, disp, 0.4, BathSpec(2.0, b=0.5))
        kernel = dissipation_kernel_markov(1.0, disp, 0.4, BathSpec(2.0, b=0.5), closed_form=False)
        # the symmetric contour part cancels at half filling
        numpy.testing.assert_allclose(kernel.branches[0, 1][0, 0], 0.0, atol=1e-15)


if __name__ == '__main__':
    unittest.main()
