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
from kitbath.bath import BathSpec, CouplingProfile, rate_for_coupling
from kitbath.covariance import (MAX_DISPLACEMENT, QuadratureSpec, asymptotic_offdiag, correlation_length,
                                covariance_estimate, covariance_steady, covariance_steady_weak, covariance_time,
                                critical_split_points, criticality_scan, fit_relaxation, fit_tail, integrate,
                                jump_derivatives, same_site_closed_form)
from kitbath.covariance import ground_state_covariance
from kitbath.errors import (AtCriticalPoint, BeforeInitialTime, ConfigError, QuadratureFailure, UnderflowRange,
                            UnsupportedClosedForm)
sys.path.pop(0)

LOCAL = CouplingProfile.local()


class TestQuadrature(unittest.TestCase):

    def test_methods(self):
        for method in ('adaptive', 'gauss'):
            value, error = integrate(lambda phi: numpy.array([math.sin(phi), phi]), QuadratureSpec(method))
            numpy.testing.assert_allclose(value, [2.0, math.pi ** 2 / 2], atol=1e-10, err_msg=method)
            self.assertLess(error, 1e-8)

    def test_gauss_budget(self):
        quad = QuadratureSpec('gauss', abs_tol=1e-14, rel_tol=1e-14, max_subdivisions=2, nodes=2)
        with self.assertRaises(QuadratureFailure) as context:
            integrate(lambda phi: math.exp(math.sin(5 * phi)), quad)
        self.assertGreater(context.exception.error, 0.0)

    def test_check(self):
        with self.assertRaises(ConfigError) as context:
            QuadratureSpec('simpson').check()  # type: ignore[arg-type]
        self.assertEqual(context.exception.key, 'quadrature.method')
        for spec in (QuadratureSpec(abs_tol=0.0), QuadratureSpec(split_points=(2.0, 1.0)),
                     QuadratureSpec(split_points=(4.0,)), QuadratureSpec(nodes=1)):
            with self.assertRaises(ConfigError, msg=repr(spec)):
                spec.check()

    def test_split_points(self):
        self.assertEqual(critical_split_points(2.0), ())
        self.assertEqual(critical_split_points(0.5), ())
        numpy.testing.assert_allclose(critical_split_points(1.05), [math.pi - 0.5, math.pi - 0.05, math.pi - 0.005])
        numpy.testing.assert_allclose(critical_split_points(-0.99), [0.001, 0.01, 0.1])
        numpy.testing.assert_allclose(critical_split_points(1.0), [math.pi - 1e-5, math.pi - 1e-6, math.pi - 1e-7])


class TestClosedForms(unittest.TestCase):

    def test_same_site(self):
        for h in (0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.5, 2.0, 3.0, 4.0):
            value, _ = same_site_closed_form(h)
            self.assertAlmostEqual(covariance_steady_weak(h)[0, 1], value, delta=1e-8, msg='h=%r' % h)
        self.assertEqual(same_site_closed_form(2.0), (0.875, 0.125))
        self.assertEqual(same_site_closed_form(-0.5), (0.5, 0.0))
        with self.assertRaises(AtCriticalPoint):
            same_site_closed_form(-1.0)

    def test_same_site_gauss(self):
        block = covariance_steady_weak(2.0, QuadratureSpec('gauss'))
        self.assertAlmostEqual(block[0, 1], 0.875, delta=1e-8)

    def test_jump(self):
        jump = jump_derivatives()
        self.assertAlmostEqual(jump.below, 0.0, delta=0.02)
        self.assertAlmostEqual(jump.above, 1.0, delta=0.02)
        self.assertAlmostEqual(jump.size, 1.0, delta=0.04)

    def test_asymptotic(self):
        for h in (0.0, 0.5, -0.7, 1.5, -2.0):
            for L in (2, 3, 7):
                numpy.testing.assert_allclose(covariance_steady_weak(h, d=L), asymptotic_offdiag(h, L), atol=1e-9,
                                              err_msg='h=%r L=%r' % (h, L))
        numpy.testing.assert_allclose(asymptotic_offdiag(0.5, -3), -asymptotic_offdiag(0.5, 3).T)
        self.assertAlmostEqual(asymptotic_offdiag(0.8, 1)[0, 1] / -0.8, 0.28125)
        self.assertEqual(asymptotic_offdiag(0.0, 2)[0, 1], 0.5)
        self.assertAlmostEqual(asymptotic_offdiag(0.8, 20)[0, 1], 0.28125 * 0.8 ** 20)

    def test_far_displacement(self):
        far = MAX_DISPLACEMENT + 1
        estimate = covariance_estimate('weak', 1.5, far)
        numpy.testing.assert_array_equal(estimate.block, asymptotic_offdiag(1.5, far))
        self.assertEqual(estimate.error, 0.0)


class TestStates(unittest.TestCase):

    def test_initial_time_is_ground_state(self):
        spec = BathSpec(0.3)
        for h in (0.5, 1.5):
            for d in (0, 1, 3):
                ground = ground_state_covariance(h, d=d)
                numpy.testing.assert_allclose(covariance_time(h, LOCAL, spec, d=d, t=2.0, t_in=2.0), ground,
                                              atol=1e-8)
                numpy.testing.assert_allclose(covariance_time(h, LOCAL, BathSpec(0.0), d=d, t=40.0), ground,
                                              atol=1e-8)

    def test_dimerised_ground_state(self):
        # at zero field every bond pairs neighbouring sites
        numpy.testing.assert_allclose(ground_state_covariance(0.0, d=1), [[0.0, 1.0], [0.0, 0.0]], atol=1e-10)
        numpy.testing.assert_allclose(ground_state_covariance(0.0), numpy.zeros((2, 2)), atol=1e-10)

    def test_closed_form_zeros(self):
        spec = BathSpec(rate_for_coupling(LOCAL, 0.1))
        for d in (0, 1, 4):
            block = covariance_steady(0.5, LOCAL, spec, d=d, coherent=False)
            self.assertLess(abs(block[0, 0]), 1e-9)
            self.assertLess(abs(block[1, 1]), 1e-9)

    def test_secular_steady_is_weak_coupling(self):
        spec = BathSpec(0.3)
        for h in (0.5, 2.0):
            numpy.testing.assert_allclose(covariance_steady(h, LOCAL, spec, d=1, coherent=False),
                                          covariance_steady_weak(h, d=1), atol=1e-8)

    def test_relaxation(self):
        gamma = 0.2 * math.sqrt(2.0 * math.pi)  # g_tilde * gamma = 0.2
        spec = BathSpec(gamma)
        steady = covariance_steady(0.5, LOCAL, spec)
        times = numpy.linspace(0.0, 50.0, 11)
        deviations = [numpy.max(numpy.abs(covariance_time(0.5, LOCAL, spec, t=float(t)) - steady)) for t in times]
        fit = fit_relaxation(times, deviations, floor=1e-8)
        self.assertAlmostEqual(fit.rate, 0.2, delta=0.2 * 0.02)

    def test_errors(self):
        with self.assertRaises(BeforeInitialTime):
            covariance_time(0.5, LOCAL, BathSpec(0.1), t=0.5, t_in=1.0)
        with self.assertRaises(UnsupportedClosedForm):
            covariance_steady(0.5, LOCAL, BathSpec(0.1, b=0.5))
        with self.assertRaises(UnsupportedClosedForm):
            covariance_steady(0.5, CouplingProfile.nearest_neighbour(1.0, 1.0), BathSpec(0.1))


class TestFits(unittest.TestCase):

    def test_fit_tail(self):
        lengths = list(range(5, 30))
        fit = fit_tail(lengths, [0.3 * (-0.7) ** L for L in lengths])
        self.assertAlmostEqual(fit.slope, math.log(0.7))
        self.assertAlmostEqual(fit.prefactor, 0.3)
        self.assertAlmostEqual(fit.xi, -1.0 / math.log(0.7))
        with self.assertRaises(UnderflowRange):
            fit_tail(lengths, [0.0] * len(lengths))
        with self.assertRaises(UnderflowRange):
            fit_tail(lengths, [1.1 ** L for L in lengths])

    def test_tail_of_quadrature(self):
        lengths = list(range(20, 61))
        values = [covariance_steady_weak(0.8, d=L)[0, 1] for L in lengths]
        fit = fit_tail(lengths, values, floor=1e-8)
        self.assertAlmostEqual(fit.slope, math.log(0.8), delta=0.01 * abs(math.log(0.8)))
        self.assertAlmostEqual(fit.prefactor, 0.28125, delta=0.02 * 0.28125)

    def test_correlation_length(self):
        for h in (0.95, 0.98, 0.99):
            xi = correlation_length(h)
            self.assertAlmostEqual(xi, -1.0 / math.log(h), delta=0.02 * xi, msg=h)
            self.assertAlmostEqual(xi, 1.0 / (1.0 - h), delta=0.07 * xi, msg=h)
        with self.assertRaises(AtCriticalPoint):
            correlation_length(1.0)

    def test_fit_relaxation(self):
        times = numpy.linspace(0.0, 10.0, 21)
        fit = fit_relaxation(times, 0.4 * numpy.exp(-0.3 * times))
        self.assertAlmostEqual(fit.rate, 0.3)
        self.assertAlmostEqual(fit.prefactor, 0.4)
        self.assertLess(fit.residual, 1e-10)
        with self.assertRaises(UnderflowRange):
            fit_relaxation(times, numpy.zeros_like(times))


class TestCriticality(unittest.TestCase):

    def test_scan(self):
        fields = numpy.round(numpy.linspace(0.5, 1.5, 21), 10)
        report = criticality_scan(fields)
        numpy.testing.assert_allclose(report.h_scan, fields)
        expected = [0.5 if h <= 1.0 else 1.0 - 0.5 / h ** 2 for h in fields]
        numpy.testing.assert_allclose(report.same_site_value, expected, atol=1e-8)
        self.assertAlmostEqual(report.jump_location, 1.0, delta=0.1)
        self.assertAlmostEqual(report.jump_size, 1.0, delta=0.04)
        self.assertEqual(report.correlation_length[10], math.inf)
        self.assertAlmostEqual(report.correlation_length[0], 1.0 / math.log(2.0))

    def test_scan_zero_field(self):
        report = criticality_scan([0.0, 0.5, 2.0])
        self.assertTrue(math.isnan(report.correlation_length[0]))
        self.assertAlmostEqual(report.correlation_length[1], 1.0 / math.log(2.0))
        self.assertAlmostEqual(report.correlation_length[2], 1.0 / math.log(2.0))
        self.assertTrue(numpy.all(report.correlation_length[1:] > 0.0))
        self.assertAlmostEqual(report.same_site_value[0], 0.5, delta=1e-8)


if __name__ == '__main__':
    unittest.main()
