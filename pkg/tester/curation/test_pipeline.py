# -*- coding: utf-8 -*-

import json
import os
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase, main

import numpy as np

from evmotion.codec.events import save_events
from evmotion.codec.pgm import read_mask
from evmotion.curation.pipeline import (
    CurationContext,
    curate_manifest,
    load_manifest,
    mask_relpath,
)
from evmotion.curation.pool import CurationConfig
from evmotion.evstream.model import EventStream
from evmotion.evstream.stack import StackConfig
from evmotion.flowdecomp.decompose import ObjectMaskConfig
from evmotion.flowdecomp.field import FlowField, write_flow_field
from evmotion.flowdecomp.ransac import RansacConfig


def moving_scene() -> FlowField:
    rng = np.random.default_rng(11)
    u = 1.0 + rng.integers(-6, 7, (48, 64)) / 64.0
    v = 0.5 + rng.integers(-6, 7, (48, 64)) / 64.0
    u[12:36, 20:44] += 8.0
    return FlowField(u, v)


def busy_events() -> EventStream:
    rng = np.random.default_rng(12)
    xs = np.concatenate([rng.integers(16, 32, 300), rng.integers(32, 48, 200)])
    ys = rng.integers(16, 32, 500)
    ts = rng.permutation(500)
    return EventStream.from_arrays(64, 48, xs, ys, ts, np.ones(500))


def write_fixture(base: Path) -> Path:
    save_events(base / "seq.evt", busy_events())
    write_flow_field(base / "moving.flo", moving_scene())
    still = FlowField(np.zeros((48, 64)), np.zeros((48, 64)))
    write_flow_field(base / "still.flo", still)
    manifest = {
        "sequences": [
            {
                "name": "seq",
                "events": "seq.evt",
                "starts": [
                    {"start": 0, "t_us": 1000, "flow": "moving.flo"},
                    {"start": 1, "t_us": 1000, "flow": "still.flo"},
                ],
            }
        ]
    }
    path = base / "manifest.json"
    path.write_text(json.dumps(manifest))
    return path


def context(base: Path, out: str) -> CurationContext:
    return CurationContext(
        curation=CurationConfig(
            crop_width=32, crop_height=24, density_patch=16, density_topk=2
        ),
        stack=StackConfig(events=500, bins=2),
        ransac=RansacConfig(),
        masking=ObjectMaskConfig(min_component=50),
        seed=3,
        out_dir=base / out,
        base_dir=base,
    )


class CurateManifestTestCase(TestCase):
    def setUp(self):
        self.tmpdir = TemporaryDirectory()
        self.base = Path(self.tmpdir.name)
        self.manifest = load_manifest(write_fixture(self.base))

    def tearDown(self):
        self.tmpdir.cleanup()

    def test_pool(self):
        pool = curate_manifest(self.manifest, context(self.base, "out"))
        self.assertEqual(2, len(pool.entries))
        self.assertEqual(0.5, pool.stats[0].motion_ratio)
        self.assertEqual(2, pool.stats[0].starts)
        for rank, entry in enumerate(pool.entries):
            self.assertEqual(0, entry.start)
            self.assertEqual(mask_relpath("seq", 0, rank), entry.mask_path)
            self.assertGreaterEqual(entry.area_ratio, 0.05)
            mask = read_mask(self.base / "out" / entry.mask_path)
            self.assertEqual((24, 32), mask.shape)
        self.assertFalse(os.path.exists(self.base / "out" / mask_relpath("seq", 1, 0)))

    def test_workers_do_not_change_result(self):
        single = curate_manifest(self.manifest, context(self.base, "one"), workers=1)
        many = curate_manifest(self.manifest, context(self.base, "many"), workers=3)
        self.assertEqual(single.entries, many.entries)
        self.assertEqual(single.stats, many.stats)

    def test_manifest(self):
        sequence = self.manifest.sequences[0]
        self.assertEqual("seq", sequence.name)
        self.assertEqual([0, 1], [s.start for s in sequence.starts])
        self.assertIsNone(sequence.starts[0].visibility)


if __name__ == "__main__":
    main()
