# -*- coding: utf-8 -*-

from unittest import TestCase, main

import numpy as np

from evmotion.distillmath.warp import (
    backward_warp,
    blend_bidirectional,
    resize_flow,
    warp_and_blend,
)
from evmotion.errors import ConfigError, ShapeMismatchError


def constant_flow(height, width, u, v) -> np.ndarray:
    flow = np.zeros((height, width, 2))
    flow[..., 0] = u
    flow[..., 1] = v
    return flow


class BackwardWarpTestCase(TestCase):
    def setUp(self):
        self.image = np.random.default_rng(0).random((5, 7, 3)).astype(np.float32)

    def test_zero_flow_is_identity(self):
        warped = backward_warp(self.image, constant_flow(5, 7, 0, 0))
        np.testing.assert_array_equal(self.image, warped)
        self.assertEqual(np.float32, warped.dtype)

    def test_integer_shift(self):
        warped = backward_warp(self.image, constant_flow(5, 7, 1, 0))
        np.testing.assert_allclose(self.image[:, 1:], warped[:, :-1], atol=1e-6)
        np.testing.assert_allclose(self.image[:, -1], warped[:, -1], atol=1e-6)

    def test_half_pixel_on_ramp(self):
        ramp = np.tile(np.arange(8, dtype=np.float64), (4, 1))
        warped = backward_warp(ramp, constant_flow(4, 8, 0.5, 0))
        np.testing.assert_allclose(ramp[:, :-1] + 0.5, warped[:, :-1], atol=1e-12)

    def test_shape_mismatch(self):
        with self.assertRaises(ShapeMismatchError):
            backward_warp(self.image, constant_flow(4, 7, 0, 0))


class BlendTestCase(TestCase):
    def setUp(self):
        rng = np.random.default_rng(1)
        self.z0 = rng.random((3, 4))
        self.z1 = rng.random((3, 4))

    def test_endpoints(self):
        start = blend_bidirectional(self.z0, self.z1, 0.0)
        end = blend_bidirectional(self.z0, self.z1, 1.0)
        np.testing.assert_array_equal(self.z0, start)
        np.testing.assert_array_equal(self.z1, end)

    def test_midpoint(self):
        blended = blend_bidirectional(self.z0, self.z1, 0.5)
        np.testing.assert_allclose((self.z0 + self.z1) / 2, blended, atol=1e-15)

    def test_invalid(self):
        with self.assertRaises(ConfigError):
            blend_bidirectional(self.z0, self.z1, 1.5)
        with self.assertRaises(ShapeMismatchError):
            blend_bidirectional(self.z0, self.z1[:2], 0.5)

    def test_warp_and_blend(self):
        still = constant_flow(3, 4, 0, 0)
        blended = warp_and_blend(self.z0, self.z1, still, still, 0.25)
        np.testing.assert_allclose(0.75 * self.z0 + 0.25 * self.z1, blended, atol=1e-12)


class ResizeFlowTestCase(TestCase):
    def test_average_and_scale(self):
        flow = constant_flow(4, 6, 8.0, -4.0)
        small = resize_flow(flow, 2)
        self.assertEqual((2, 3, 2), small.shape)
        np.testing.assert_allclose(constant_flow(2, 3, 4.0, -2.0), small)

    def test_invalid(self):
        with self.assertRaises(ShapeMismatchError):
            resize_flow(constant_flow(5, 6, 0, 0), 2)
        with self.assertRaises(ConfigError):
            resize_flow(constant_flow(4, 4, 0, 0), 0)


if __name__ == "__main__":
    main()
