# -*- coding: utf-8 -*-

from unittest import TestCase, main

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from evmotion.errors import ConfigError, NoAdherentQueriesError
from evmotion.tapeval.oats import (
    UNASSIGNED,
    OATSConfig,
    OATSReport,
    aggregate_scenes,
    assign_queries,
    dilate_mask,
    oats_csv,
    oats_delta,
    oats_suite,
    round_half_away,
)
from evmotion.tapeval.trajectory import ObjectMaskSequence, TrajectorySet
from tester.tapeval.scenes import BASELINE, DISTILLED, OVERALL

SIZE = 32
FRAMES = 5


def strip_mask() -> np.ndarray:
    mask = np.zeros((SIZE, SIZE), dtype=bool)
    mask[5:16, 5:11] = True
    return mask


def masks_of(mask: np.ndarray, object_id=1) -> ObjectMaskSequence:
    return ObjectMaskSequence([{object_id: mask} for _ in range(FRAMES)], SIZE, SIZE)


def tracks(points, visibility=None, query_frames=None) -> TrajectorySet:
    positions = np.asarray(points, dtype=np.float64).reshape(-1, FRAMES, 2)
    n = positions.shape[0]
    if visibility is None:
        visibility = np.ones((n, FRAMES))
    if query_frames is None:
        query_frames = np.zeros(n, dtype=np.int64)
    visibility = np.asarray(visibility, dtype=np.float64)
    return TrajectorySet(positions, visibility, np.asarray(query_frames))


def offset_track(dx: float) -> list:
    """Starts on the strip edge, then sits ``dx`` pixels right of it."""
    return [[10, 10]] + [[10 + dx, 10]] * (FRAMES - 1)


class DilationTestCase(TestCase):
    def point(self) -> np.ndarray:
        mask = np.zeros((9, 9), dtype=bool)
        mask[4, 4] = True
        return mask

    def test_radius_zero_is_identity(self):
        np.testing.assert_array_equal(self.point(), dilate_mask(self.point(), 0))

    def test_small_disks(self):
        self.assertEqual(5, int(dilate_mask(self.point(), 1).sum()))
        self.assertEqual(13, int(dilate_mask(self.point(), 2).sum()))

    def test_negative_radius(self):
        with self.assertRaises(ConfigError):
            dilate_mask(self.point(), -1)

    @settings(max_examples=40, deadline=None)
    @given(
        arrays(np.bool_, (10, 11), elements=st.booleans()),
        st.sampled_from([0, 1, 2, 3, 5]),
    )
    def test_matches_distance_oracle(self, mask, delta):
        ys, xs = np.nonzero(mask)
        expected = np.zeros_like(mask)
        for y in range(mask.shape[0]):
            for x in range(mask.shape[1]):
                d2 = (xs - x) ** 2 + (ys - y) ** 2
                expected[y, x] = bool(d2.size) and int(d2.min()) <= delta * delta
        np.testing.assert_array_equal(expected, dilate_mask(mask, delta))

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2**31), st.sampled_from([4, 8, 16]))
    def test_large_disks_match_distance_oracle(self, seed, delta):
        rng = np.random.default_rng(seed)
        mask = rng.random((64, 64)) < 0.01
        ys, xs = np.nonzero(mask)
        grid_y, grid_x = np.mgrid[0:64, 0:64]
        d2 = (grid_x[..., None] - xs) ** 2 + (grid_y[..., None] - ys) ** 2
        if xs.size:
            expected = d2.min(axis=2) <= delta * delta
        else:
            expected = np.zeros_like(mask)
        np.testing.assert_array_equal(expected, dilate_mask(mask, delta))


class RoundingTestCase(TestCase):
    def test_half_away_from_zero(self):
        values = np.array([0.5, 1.5, 2.5, -0.5, -1.5, 2.49])
        self.assertEqual([1, 2, 3, -1, -2, 2], round_half_away(values).tolist())


class AssignQueriesTestCase(TestCase):
    def test_on_and_off_object(self):
        traj = tracks([offset_track(0), [[30, 30]] * FRAMES])
        assignment = assign_queries(traj, masks_of(strip_mask(), 7))
        self.assertEqual([7, UNASSIGNED], assignment.tolist())

    def test_smallest_object_wins(self):
        small = np.zeros((SIZE, SIZE), dtype=bool)
        small[8:13, 5:15] = True
        large = np.zeros((SIZE, SIZE), dtype=bool)
        large[:20, :25] = True
        masks = ObjectMaskSequence([{1: large, 2: small}] * FRAMES, SIZE, SIZE)
        assignment = assign_queries(tracks([offset_track(0)]), masks)
        self.assertEqual([2], assignment.tolist())
        self.assertEqual(50, int(small.sum()))
        self.assertEqual(500, int(large.sum()))

    def test_equal_areas_smallest_id(self):
        frames = [{4: strip_mask(), 3: strip_mask()}] * FRAMES
        masks = ObjectMaskSequence(frames, SIZE, SIZE)
        assignment = assign_queries(tracks([offset_track(0)]), masks)
        self.assertEqual([3], assignment.tolist())

    def test_event_mask_filters(self):
        event_mask = np.zeros((SIZE, SIZE), dtype=bool)
        traj, masks = tracks([offset_track(0)]), masks_of(strip_mask())
        with self.assertRaises(NoAdherentQueriesError):
            assign_queries(traj, masks, event_mask)
        event_mask[10, 10] = True
        assignment = assign_queries(traj, masks, event_mask)
        self.assertEqual([1], assignment.tolist())

    def test_query_frame_is_used(self):
        points = [[30, 30], [30, 30], [10, 10], [30, 30], [30, 30]]
        traj = tracks([points], query_frames=[2])
        self.assertEqual([1], assign_queries(traj, masks_of(strip_mask())).tolist())


class OATSTestCase(TestCase):
    def test_inside_mask_scores_one(self):
        traj = tracks([offset_track(0), offset_track(-3)])
        report = oats_suite(traj, masks_of(strip_mask()))
        self.assertEqual((1.0,) * 6, report.scores)
        self.assertEqual(1.0, report.average)
        self.assertEqual(2, report.queries)
        self.assertEqual(8, report.evaluated_frames)

    def test_three_pixels_off(self):
        report = oats_suite(tracks([offset_track(3)]), masks_of(strip_mask()))
        self.assertEqual((0.0, 0.0, 0.0, 1.0, 1.0, 1.0), report.scores)
        self.assertEqual(0.5, report.average)
        self.assertEqual(0.0, report.score(2))

    def test_out_of_frame_is_not_adherent(self):
        points = [[10, 10], [10, 10], [-40, 10], [10, 10], [10, 90]]
        traj = tracks([points])
        self.assertEqual(0.5, oats_delta(traj, masks_of(strip_mask()), 16))

    def test_never_visible_query_excluded(self):
        visibility = np.ones((2, FRAMES))
        visibility[1, 1:] = 0.2
        traj = tracks([offset_track(0), offset_track(3)], visibility)
        with self.assertLogs("evmotion.tapeval.oats", "WARNING"):
            report = oats_suite(traj, masks_of(strip_mask()))
        self.assertEqual(1.0, report.score(0))
        self.assertEqual(1, report.excluded)
        self.assertEqual(1, report.queries)

    def test_missing_object_mask_counts_as_miss(self):
        frames = [{1: strip_mask()}, {1: strip_mask()}, {}, {}, {}]
        masks = ObjectMaskSequence(frames, SIZE, SIZE)
        self.assertEqual(0.25, oats_delta(tracks([offset_track(0)]), masks, 0))

    def test_full_frame_masks(self):
        rng = np.random.default_rng(0)
        traj = tracks(rng.uniform(0, SIZE - 1, (20, FRAMES, 2)))
        report = oats_suite(traj, masks_of(np.ones((SIZE, SIZE), dtype=bool)))
        self.assertEqual((1.0,) * 6, report.scores)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**31), st.integers(2, 12))
    def test_query_order_does_not_matter(self, seed, count):
        rng = np.random.default_rng(seed)
        points = rng.uniform(0, 20, (count, FRAMES, 2))
        points[:, 0] = [8, 10]
        visibility = rng.random((count, FRAMES))
        traj = tracks(points, visibility)
        order = rng.permutation(count)
        masks = masks_of(strip_mask())
        try:
            expected = oats_suite(traj, masks).scores
        except NoAdherentQueriesError:
            return
        permuted = oats_suite(traj.subset(order), masks).scores
        np.testing.assert_allclose(expected, permuted, atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**31), st.integers(1, 10))
    def test_scores_grow_with_delta(self, seed, count):
        rng = np.random.default_rng(seed)
        points = rng.uniform(-4, SIZE + 4, (count, FRAMES, 2))
        points[:, 0] = [8, 10]
        traj = tracks(points, rng.random((count, FRAMES)))
        try:
            scores = oats_suite(traj, masks_of(strip_mask())).scores
        except NoAdherentQueriesError:
            return
        self.assertTrue(np.all(np.diff(scores) >= -1e-12))

    def test_config(self):
        with self.assertRaises(ConfigError):
            OATSConfig(deltas=()).validate()
        with self.assertRaises(ConfigError):
            OATSConfig(vis_cut=2.0).validate()


class AggregationTestCase(TestCase):
    def test_table_rows(self):
        for values in OVERALL.values():
            report = OATSReport.from_scores(values[:6])
            self.assertAlmostEqual(values[6], report.average, delta=5e-5)

    def test_per_scene_rows(self):
        for table in (BASELINE, DISTILLED):
            for scene, values in table.items():
                report = OATSReport.from_scores(values[:6], scene=scene)
                self.assertAlmostEqual(values[6], report.average, delta=5e-5 + 1e-9)

    def test_scene_mean_reproduces_overall(self):
        for name, table in (("baseline", BASELINE), ("distilled", DISTILLED)):
            reports = [OATSReport.from_scores(v[:6], scene=s) for s, v in table.items()]
            overall = aggregate_scenes(reports)
            self.assertEqual(18, len(overall.scenes))
            np.testing.assert_allclose(OVERALL[name][:6], overall.scores, atol=1e-4)

    def test_empty_aggregation(self):
        with self.assertRaises(NoAdherentQueriesError):
            aggregate_scenes([])

    def test_csv(self):
        report = OATSReport.from_scores((1, 1, 1, 0, 0, 0), scene="ball_05")
        text = oats_csv([report], "distilled")
        header, row = text.splitlines()
        self.assertEqual(
            "scene,model,OATS_0,OATS_1,OATS_2,OATS_4,OATS_8,OATS_16,OATS_avg", header
        )
        self.assertEqual(
            "ball_05,distilled,1.0000,1.0000,1.0000,0.0000,0.0000,0.0000,0.5000", row
        )
        self.assertEqual("", oats_csv([], "distilled"))


if __name__ == "__main__":
    main()
