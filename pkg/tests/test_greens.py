# -*- coding: utf-8 -*-
# pylint: disable=no-member

import os
import sys
import unittest

import numpy

# root path
ROOT = os.path.dirname(os.path.realpath(__file__))
sys.path.insert(0, os.path.abspath(os.path.join(ROOT, '..')))
from kitbath.bath import BathSpec, CouplingProfile
from kitbath.errors import BeforeInitialTime, UnsupportedClosedForm
from kitbath.greens import (ModeContext, coherence_weight, greens_causal, greens_equal_time, greens_steady,
                            greens_unbounded, mode_context)
from kitbath.model import dispersion
sys.path.pop(0)


def context(h=0.5, phi=1.1, gamma=0.4, t_in=0.0):
    return ModeContext(dispersion(h, phi), 1.0, gamma, t_in)


class TestTwoTime(unittest.TestCase):

    def test_jump(self):
        for coherent in (True, False):
            ctx = context()
            after = greens_unbounded(ctx, 2.0 + 1e-12, 2.0, coherent=coherent).entries
            before = greens_unbounded(ctx, 2.0 - 1e-12, 2.0, coherent=coherent).entries
            self.assertAlmostEqual(after[0, 0] - before[0, 0], -1j, places=9)
            self.assertAlmostEqual(after[1, 1] - before[1, 1], -1j, places=9)

    def test_equal_arguments_average(self):
        ctx = context()
        entries = greens_unbounded(ctx, 3.0, 3.0, coherent=False).entries
        self.assertAlmostEqual(entries[0, 0], -0.5j * ctx.disp.cos2theta)
        self.assertAlmostEqual(entries[1, 1], 0.5j * ctx.disp.cos2theta)

    def test_translation_invariance(self):
        ctx = context()
        first = greens_unbounded(ctx, 5.0, 2.0).entries
        second = greens_unbounded(ctx, 13.0, 10.0).entries
        numpy.testing.assert_allclose(first, second, atol=1e-14)

    def test_initial_conditions(self):
        ctx = context(t_in=1.0)
        for coherent in (True, False):
            at_start = greens_causal(ctx, 1.0, 2.5, coherent=coherent).entries
            self.assertAlmostEqual(abs(at_start[0, 0]), 0.0, places=14)
            self.assertAlmostEqual(abs(at_start[0, 1]), 0.0, places=14)
            from_start = greens_causal(ctx, 2.5, 1.0, coherent=coherent).entries
            self.assertAlmostEqual(abs(from_start[1, 0]), 0.0, places=14)
            self.assertAlmostEqual(abs(from_start[1, 1]), 0.0, places=14)

    def test_relaxes_to_unbounded(self):
        ctx = context(gamma=0.6)
        for t, tp in ((301.0, 300.0), (300.0, 301.5)):
            causal = greens_causal(ctx, t, tp, coherent=False).entries
            unbounded = greens_unbounded(ctx, t, tp, coherent=False).entries
            numpy.testing.assert_allclose(causal, unbounded, atol=1e-12)

    def test_secular_is_diagonal(self):
        entries = greens_causal(context(), 3.0, 1.0, coherent=False).entries
        self.assertEqual(entries[0, 1], 0.0)
        self.assertEqual(entries[1, 0], 0.0)

    def test_errors(self):
        ctx = context(t_in=1.0)
        with self.assertRaises(BeforeInitialTime):
            greens_causal(ctx, 0.5, 2.0)
        with self.assertRaises(BeforeInitialTime):
            greens_equal_time(ctx, 0.0)
        with self.assertRaises(UnsupportedClosedForm):
            greens_unbounded(ModeContext(dispersion(0.5, 1.0), -0.2, 0.4), 1.0, 0.0)


class TestEqualTime(unittest.TestCase):

    def test_initial_state(self):
        for coherent in (True, False):
            entries = greens_equal_time(context(t_in=2.0), 2.0, coherent=coherent).entries
            numpy.testing.assert_allclose(entries, numpy.diag([-0.5j, 0.5j]), atol=1e-15)

    def test_isolated_chain(self):
        ctx = context(gamma=0.0)
        self.assertEqual(coherence_weight(ctx), 0.0)
        numpy.testing.assert_allclose(greens_equal_time(ctx, 50.0).entries, numpy.diag([-0.5j, 0.5j]))

    def test_steady_limit(self):
        ctx = context()
        late = greens_equal_time(ctx, 2000.0 / ctx.rate).entries
        numpy.testing.assert_allclose(late, greens_steady(ctx).entries, atol=1e-14)

        secular = greens_steady(ctx, coherent=False).entries
        cos2theta = ctx.disp.cos2theta
        numpy.testing.assert_allclose(secular, numpy.diag([-0.5j * cos2theta, 0.5j * cos2theta]), atol=1e-15)

    def test_anti_hermitian(self):
        ctx = context(h=1.3, phi=2.0, gamma=1.0)
        for t in (0.0, 0.7, 4.0):
            entries = greens_equal_time(ctx, t).entries
            numpy.testing.assert_allclose(entries, -entries.conj().T, atol=1e-15)

    def test_mode_context(self):
        ctx = mode_context(0.5, 0.3, CouplingProfile.local(2.0), BathSpec(0.5), t_in=1.0)
        self.assertAlmostEqual(ctx.gtilde, 2.0 / (2.0 * numpy.pi) ** 0.5)
        self.assertAlmostEqual(ctx.rate, ctx.gtilde * 0.5)
        self.assertAlmostEqual(ctx.half_rate, ctx.rate / 2)
        self.assertEqual(ctx.t_in, 1.0)


if __name__ == '__main__':
    unittest.main()
