# -*- coding: utf-8 -*-

import os
from tempfile import TemporaryDirectory
from unittest import TestCase, main

import numpy as np

from evmotion.codec.events import (
    EVENT_HEADER_DTYPE,
    EVENT_MAGIC,
    EVENT_RECORD_DTYPE,
    EventFormat,
    decode_csv,
    decode_event_binary,
    encode_csv,
    encode_event_binary,
    load_events,
    save_events,
)
from evmotion.errors import ParseError, ValidationError
from evmotion.evstream.model import EventStream


def random_stream(seed: int, count: int) -> EventStream:
    rng = np.random.default_rng(seed)
    return EventStream.from_arrays(
        640,
        480,
        rng.integers(0, 640, count),
        rng.integers(0, 480, count),
        rng.integers(-(2**40), 2**40, count),
        rng.choice([-1, 1], count),
    )


class EventBinaryTestCase(TestCase):
    def test_empty_body(self):
        data = encode_event_binary(EventStream.empty(10, 10))
        self.assertEqual(EVENT_HEADER_DTYPE.itemsize, len(data))
        stream = decode_event_binary(data)
        self.assertEqual(0, len(stream))
        self.assertEqual((10, 10), stream.shape)

    def test_byte_exact_round_trip(self):
        for seed in range(100):
            stream = random_stream(seed, seed * 3)
            data = encode_event_binary(stream)
            self.assertEqual(data, encode_event_binary(decode_event_binary(data)))

    def test_bad_magic(self):
        data = b"NOTMAGIC" + encode_event_binary(EventStream.empty(4, 4))[8:]
        with self.assertRaises(ParseError) as context:
            decode_event_binary(data)
        self.assertEqual(0, context.exception.offset)

    def test_truncated_body_offset(self):
        data = encode_event_binary(random_stream(1, 3))
        with self.assertRaises(ParseError) as context:
            decode_event_binary(data[:-5])
        self.assertEqual(24 + 2 * 13, context.exception.offset)

    def test_out_of_bounds_record(self):
        header = np.zeros(1, dtype=EVENT_HEADER_DTYPE)
        header["magic"] = EVENT_MAGIC
        header["width"] = 10
        header["height"] = 10
        header["count"] = 1
        body = np.array([(12, 0, 5, 1)], dtype=EVENT_RECORD_DTYPE)
        with self.assertRaises(ValidationError) as context:
            decode_event_binary(header.tobytes() + body.tobytes())
        self.assertEqual(0, context.exception.index)


class CsvTestCase(TestCase):
    def test_parse_sorted(self):
        stream = decode_csv(b"x,y,t_us,p\n3,4,105,-1\n3,4,100,1\n", 10, 10)
        self.assertEqual([100, 105], stream.t.tolist())
        self.assertEqual([1, -1], stream.p.tolist())

    def test_parse_without_header(self):
        stream = decode_csv(b"# comment\n3,4,100,1\n\n3,4,105,-1\n", 10, 10)
        self.assertEqual(2, len(stream))

    def test_bad_row_offset(self):
        with self.assertRaises(ParseError) as context:
            decode_csv(b"x,y,t_us,p\n1,2,3\n", 10, 10)
        self.assertEqual(len(b"x,y,t_us,p\n"), context.exception.offset)

    def test_round_trip(self):
        stream = random_stream(7, 50)
        data = encode_csv(stream)
        self.assertEqual(data, encode_csv(decode_csv(data, 640, 480)))


class FileTestCase(TestCase):
    def test_save_and_load_both_formats(self):
        stream = random_stream(3, 20)
        with TemporaryDirectory() as tmpdir:
            binary = save_events(os.path.join(tmpdir, "a.evt"), stream)
            text = save_events(os.path.join(tmpdir, "a.csv"), stream)
            self.assertEqual(EventFormat.CSV, EventFormat.from_path(text))
            loaded = load_events(binary)
            loaded_csv = load_events(text, width=640, height=480)
            np.testing.assert_array_equal(stream.t, loaded.t)
            np.testing.assert_array_equal(stream.x, loaded_csv.x)

    def test_csv_needs_geometry(self):
        with TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, "a.csv")
            with open(path, "wb") as f:
                f.write(b"1,1,1,1\n")
            with self.assertRaises(ValidationError):
                load_events(path)


if __name__ == "__main__":
    main()
