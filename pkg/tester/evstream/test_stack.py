# -*- coding: utf-8 -*-

from unittest import TestCase, main

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from evmotion.errors import ConfigError
from evmotion.evstream.model import Event, EventStream
from evmotion.evstream.stack import (
    StackConfig,
    accumulate_polarity,
    build_event_stack,
    stack_quotas,
)


def naive_stack(stream: EventStream, t: int, events: int, bins: int) -> np.ndarray:
    past = [e for e in stream if e.t <= t][-events:]
    data = np.zeros((stream.height, stream.width, bins), dtype=np.int64)
    for b in range(bins):
        quota = max(1, events // 2 ** (bins - 1 - b))
        for e in past[max(0, len(past) - quota) :]:
            data[e.y, e.x, b] += e.p
    return data


class StackQuotaTestCase(TestCase):
    def test_small_quotas(self):
        self.assertEqual((2, 4, 8), stack_quotas(8, 3))

    def test_default_first_bin(self):
        self.assertEqual(585, stack_quotas(300000, 10)[0])
        self.assertEqual(300000, stack_quotas(300000, 10)[-1])

    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 10**6), st.integers(1, 12))
    def test_quota_formula(self, events, bins):
        quotas = stack_quotas(events, bins)
        self.assertEqual(bins, len(quotas))
        for b, quota in enumerate(quotas, start=1):
            self.assertEqual(max(1, events // 2 ** (bins - b)), quota)

    def test_invalid_config(self):
        with self.assertRaises(ConfigError):
            StackConfig(events=8, bins=0).validate()
        with self.assertRaises(ConfigError):
            StackConfig(events=0, bins=3).validate()

    def test_small_n_warns(self):
        with self.assertLogs("evmotion.evstream.stack", level="WARNING"):
            StackConfig(events=2, bins=4).validate()

    def test_small_n_warns_once_per_validation(self):
        stream = EventStream.from_arrays(4, 4, [0, 1, 2], [0, 1, 2], [0, 1, 2], [1] * 3)
        with self.assertLogs("evmotion.evstream.stack", level="WARNING") as logs:
            cfg = StackConfig(events=2, bins=4).validate()
            for t in range(3):
                build_event_stack(stream, t, cfg)
        self.assertEqual(1, len(logs.records))


class AccumulateTestCase(TestCase):
    def test_empty(self):
        result = accumulate_polarity(EventStream.empty(5, 4))
        self.assertEqual((4, 5), result.shape)
        self.assertFalse(result.any())

    def test_additive_and_cancelling(self):
        stream = EventStream.from_events(
            8,
            8,
            [
                Event(3, 4, 0, 1),
                Event(3, 4, 1, 1),
                Event(1, 1, 2, 1),
                Event(1, 1, 3, -1),
            ],
        )
        result = accumulate_polarity(stream)
        self.assertEqual(2, result[4, 3])
        self.assertEqual(0, result[1, 1])


class BuildStackTestCase(TestCase):
    def test_availability_clamp(self):
        stream = EventStream.from_arrays(
            4, 4, [0, 1, 2], [0, 0, 0], [1, 2, 3], [1, 1, 1]
        )
        stack = build_event_stack(stream, 10, StackConfig(events=8, bins=3))
        self.assertEqual((2, 3, 3), stack.counts)
        self.assertEqual((4, 4, 3), stack.data.shape)
        self.assertEqual(0, stack.data[0, 0, 0])
        self.assertEqual(1, stack.data[0, 0, 2])

    def test_empty_window(self):
        stream = EventStream.from_arrays(4, 4, [0], [0], [100], [1])
        stack = build_event_stack(stream, 50, StackConfig(events=8, bins=3))
        self.assertEqual((0, 0, 0), stack.counts)
        self.assertFalse(stack.data.any())

    @settings(max_examples=30, deadline=None)
    @given(
        st.integers(0, 400),
        st.integers(1, 64),
        st.integers(1, 6),
        st.integers(0, 2**31),
    )
    def test_matches_naive_rescan(self, count, events, bins, seed):
        rng = np.random.default_rng(seed)
        stream = EventStream.from_arrays(
            6,
            5,
            rng.integers(0, 6, count),
            rng.integers(0, 5, count),
            rng.integers(0, 100, count),
            rng.choice([-1, 1], count),
        )
        t = int(rng.integers(-5, 105))
        stack = build_event_stack(stream, t, StackConfig(events=events, bins=bins))
        np.testing.assert_array_equal(naive_stack(stream, t, events, bins), stack.data)
        available = int(np.count_nonzero(stream.t <= t))
        for quota, used in zip(stack_quotas(events, bins), stack.counts):
            self.assertEqual(min(quota, available, events), used)


if __name__ == "__main__":
    main()
