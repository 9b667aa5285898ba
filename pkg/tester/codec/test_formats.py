# -*- coding: utf-8 -*-

import os
from tempfile import TemporaryDirectory
from unittest import TestCase, main

import numpy as np

from evmotion.codec.flo import decode_flo, encode_flo, read_flo, write_flo
from evmotion.codec.pgm import decode_pgm, encode_pgm, read_mask, write_mask
from evmotion.codec.raw import read_raw_f32, sidecar_path, write_raw_f32
from evmotion.errors import ParseError


class FloTestCase(TestCase):
    def test_byte_exact_round_trip(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            h, w = rng.integers(1, 12, 2)
            flow = rng.normal(size=(h, w, 2)).astype(np.float32)
            data = encode_flo(flow)
            np.testing.assert_array_equal(flow, decode_flo(data))
            self.assertEqual(data, encode_flo(decode_flo(data)))

    def test_bad_tag(self):
        data = bytearray(encode_flo(np.zeros((2, 2, 2), dtype=np.float32)))
        data[0:4] = b"\x00\x00\x00\x00"
        with self.assertRaises(ParseError):
            decode_flo(bytes(data))

    def test_truncated(self):
        data = encode_flo(np.zeros((2, 2, 2), dtype=np.float32))
        with self.assertRaises(ParseError):
            decode_flo(data[:-1])

    def test_file(self):
        flow = np.ones((3, 4, 2), dtype=np.float32)
        with TemporaryDirectory() as tmpdir:
            path = write_flo(os.path.join(tmpdir, "f.flo"), flow)
            np.testing.assert_array_equal(flow, read_flo(path))


class PgmTestCase(TestCase):
    def test_byte_exact_round_trip(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            h, w = rng.integers(1, 20, 2)
            mask = rng.random((h, w)) < 0.5
            data = encode_pgm(mask)
            self.assertEqual(data, encode_pgm(decode_pgm(data) > 127))

    def test_mask_encoding(self):
        data = encode_pgm(np.array([[True, False]]))
        self.assertEqual(b"P5\n2 1\n255\n\xff\x00", data)

    def test_header_comment(self):
        image = decode_pgm(b"P5\n# made by hand\n2 1\n255\n\x00\xff")
        self.assertEqual([[0, 255]], image.tolist())

    def test_rejects_ascii_pgm(self):
        with self.assertRaises(ParseError):
            decode_pgm(b"P2\n1 1\n255\n0")

    def test_rejects_maxval(self):
        with self.assertRaises(ParseError):
            decode_pgm(b"P5\n1 1\n15\n\x00")

    def test_file(self):
        mask = np.eye(4, dtype=bool)
        with TemporaryDirectory() as tmpdir:
            path = write_mask(os.path.join(tmpdir, "m.pgm"), mask)
            np.testing.assert_array_equal(mask, read_mask(path))


class RawTestCase(TestCase):
    def test_round_trip_with_sidecar(self):
        array = np.arange(24, dtype=np.float32).reshape(2, 3, 4)
        with TemporaryDirectory() as tmpdir:
            path, side = write_raw_f32(os.path.join(tmpdir, "s.bin"), array, {"t": 5})
            self.assertEqual(sidecar_path(path), side)
            loaded, meta = read_raw_f32(path)
            np.testing.assert_array_equal(array, loaded)
            self.assertEqual([2, 3, 4], meta["shape"])
            self.assertEqual(5, meta["t"])

    def test_size_mismatch(self):
        with TemporaryDirectory() as tmpdir:
            path, _ = write_raw_f32(os.path.join(tmpdir, "s.bin"), np.zeros(3))
            with self.assertRaises(ParseError):
                read_raw_f32(path, shape=(4,))


if __name__ == "__main__":
    main()
