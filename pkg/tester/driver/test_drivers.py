# -*- coding: utf-8 -*-

from unittest import TestCase, main, skipIf

import numpy as np

from evmotion.driver.boolean import string_to_boolean
from evmotion.driver.json import (
    HAS_ORJSON,
    JSON_DRIVERS,
    active_json_driver,
    install_json_driver,
    install_orjson_driver,
    install_python_json_driver,
    json_dumps,
    json_loads,
    orjson_byte_decoder,
    orjson_byte_encoder,
    python_json_byte_decoder,
    python_json_byte_encoder,
)
from evmotion.driver.msgpack import HAS_MSGPACK, msgpack_decoder, msgpack_encoder
from evmotion.driver.yaml import HAS_YAML, yaml_decoder, yaml_encoder
from evmotion.errors import ParseError

SAMPLE = {"scene": "eggs_04", "scores": [0.9794, 0.9842], "ok": True, "none": None}


class BooleanTestCase(TestCase):
    def test_string_to_boolean(self):
        for value in ("y", "Yes", " TRUE ", "on", "1"):
            self.assertTrue(string_to_boolean(value))
        for value in ("n", "No", "false", "OFF", "0"):
            self.assertFalse(string_to_boolean(value))
        with self.assertRaises(ValueError):
            string_to_boolean("maybe")


class JsonDriverTestCase(TestCase):
    def tearDown(self):
        if HAS_ORJSON:
            install_orjson_driver()
        else:
            install_python_json_driver()

    def test_python_driver(self):
        data = python_json_byte_encoder(SAMPLE)
        self.assertIsInstance(data, bytes)
        self.assertNotIn(b" ", data.replace(b"eggs_04", b""))
        self.assertEqual(SAMPLE, python_json_byte_decoder(data))

    @skipIf(not HAS_ORJSON, "orjson module not found")
    def test_orjson_driver(self):
        data = orjson_byte_encoder(SAMPLE)
        self.assertEqual(SAMPLE, orjson_byte_decoder(data))
        encoded = orjson_byte_encoder(np.array([1, 2]))
        self.assertEqual([1, 2], orjson_byte_decoder(encoded))

    def test_python_driver_numpy_values(self):
        data = python_json_byte_encoder({"a": np.arange(3), "m": np.float32(0.5)})
        self.assertEqual({"a": [0, 1, 2], "m": 0.5}, python_json_byte_decoder(data))
        with self.assertRaises(TypeError):
            python_json_byte_encoder({"bad": object()})

    def test_switch_driver(self):
        driver = install_python_json_driver()
        self.assertEqual("python", driver.name)
        self.assertIs(driver, active_json_driver())
        self.assertEqual(SAMPLE, json_loads(json_dumps(SAMPLE)))

    def test_unknown_driver(self):
        with self.assertRaises(KeyError):
            install_json_driver("ujson")
        self.assertIn(active_json_driver().name, JSON_DRIVERS)


class DocumentDriverTestCase(TestCase):
    @skipIf(not HAS_YAML, "Yaml module not found")
    def test_yaml(self):
        data = yaml_encoder(SAMPLE)
        self.assertTrue(data.startswith(b"scene: eggs_04"))
        self.assertEqual(SAMPLE, yaml_decoder(data))

    @skipIf(not HAS_YAML, "Yaml module not found")
    def test_yaml_syntax_error(self):
        with self.assertRaises(ParseError) as context:
            yaml_decoder(b"stack:\n  bins: [1, 2\n")
        self.assertGreater(context.exception.offset, 0)

    @skipIf(not HAS_MSGPACK, "MsgPack module not found")
    def test_msgpack(self):
        data = msgpack_encoder(SAMPLE)
        self.assertEqual(SAMPLE, msgpack_decoder(data))

    @skipIf(not HAS_MSGPACK, "MsgPack module not found")
    def test_msgpack_trailing_bytes(self):
        data = msgpack_encoder({"bins": 5})
        with self.assertRaises(ParseError) as context:
            msgpack_decoder(data + b"\x01")
        self.assertEqual(len(data), context.exception.offset)


if __name__ == "__main__":
    main()
