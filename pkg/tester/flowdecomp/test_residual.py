# -*- coding: utf-8 -*-

from unittest import TestCase, main

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from evmotion.errors import ShapeMismatchError
from evmotion.flowdecomp.field import FlowField
from evmotion.flowdecomp.ransac import AffineModel
from evmotion.flowdecomp.residual import (
    confidence_gate,
    mad_threshold,
    object_motion_mask,
    residual_flow,
)


class ResidualTestCase(TestCase):
    def test_residual_magnitude(self):
        flow = FlowField(np.full((3, 4), 3.0), np.full((3, 4), 4.0))
        residual = residual_flow(flow, AffineModel.identity_translation())
        np.testing.assert_allclose(np.full((3, 4), 5.0), residual)

    def test_constant_shift_cancels(self):
        rng = np.random.default_rng(0)
        u = rng.integers(-8, 8, (5, 6)) / 4.0
        v = rng.integers(-8, 8, (5, 6)) / 4.0
        a = np.array([[0.25, 0.0, 1.0], [0.0, -0.5, 2.0]])
        shift = np.array([[0, 0, 2.0], [0, 0, -1.0]])
        before = residual_flow(FlowField(u, v), AffineModel(a))
        after = residual_flow(FlowField(u + 2.0, v - 1.0), AffineModel(a + shift))
        np.testing.assert_allclose(before, after, atol=1e-12)


class GateTestCase(TestCase):
    def test_values(self):
        gate = confidence_gate(np.array([1.0, 0.4, 1.0]), np.array([1.0, 1.0, 0.5]))
        np.testing.assert_allclose([1.0, 0.0, 0.25], gate)

    def test_shape_mismatch(self):
        with self.assertRaises(ShapeMismatchError):
            confidence_gate(np.ones(3), np.ones(4))


class MadThresholdTestCase(TestCase):
    def test_worked_case(self):
        threshold = mad_threshold(np.array([0.5, 1.0, 1.5]))
        self.assertEqual(1.0, threshold.median)
        self.assertEqual(0.5, threshold.mad)
        self.assertAlmostEqual(3.9652, threshold.tau, delta=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(
        arrays(
            np.float64,
            st.integers(1, 200),
            elements=st.floats(0, 1e3, allow_nan=False, allow_infinity=False),
        )
    )
    def test_matches_sorted_oracle(self, values):
        ordered = sorted(values.tolist())
        n = len(ordered)

        def median(xs):
            xs = sorted(xs)
            mid = len(xs) // 2
            return xs[mid] if len(xs) % 2 else (xs[mid - 1] + xs[mid]) / 2.0

        m = median(ordered)
        mad = median([abs(x - m) for x in ordered])
        tau = m + 4.0 * 1.4826 * mad
        self.assertEqual(n, values.size)
        self.assertAlmostEqual(tau, mad_threshold(values).tau, delta=1e-9)


class ObjectMotionMaskTestCase(TestCase):
    def test_outliers_masked(self):
        residual = np.zeros(105)
        residual[100:] = 10.0
        mask = object_motion_mask(residual, np.ones(105))
        self.assertEqual(5, int(mask.sum()))
        self.assertTrue(mask[100:].all())

    def test_gate_suppresses(self):
        residual = np.zeros(105)
        residual[100:] = 10.0
        gate = np.ones(105)
        gate[100:] = 0.0
        self.assertFalse(object_motion_mask(residual, gate).any())

    def test_constant_residual_masks_nothing(self):
        self.assertFalse(object_motion_mask(np.full(50, 2.0), np.ones(50)).any())


if __name__ == "__main__":
    main()
