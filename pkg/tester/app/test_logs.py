# -*- coding: utf-8 -*-

import io
import logging
import os
from unittest import TestCase, main, mock

from evmotion.app.logs import JsonLineFormatter, resolve_log_level, setup_logging
from evmotion.driver.json import json_loads
from evmotion.variables import LOG_LEVEL_ENV_NAME


def make_record(msg="decomposed %d samples", args=(4096,), **extra):
    record = logging.LogRecord(
        "evmotion.flowdecomp", logging.INFO, __file__, 1, msg, args, None
    )
    for key, value in extra.items():
        setattr(record, key, value)
    return record


class JsonLineFormatterTestCase(TestCase):
    def test_basic_fields(self):
        document = json_loads(JsonLineFormatter().format(make_record()))
        self.assertEqual("INFO", document["level"])
        self.assertEqual("evmotion.flowdecomp", document["logger"])
        self.assertEqual("decomposed 4096 samples", document["message"])
        self.assertNotIn("args", document)
        self.assertNotIn("lineno", document)

    def test_extra_fields(self):
        record = make_record(exit_code=3, error="InsufficientSupportError")
        document = json_loads(JsonLineFormatter().format(record))
        self.assertEqual(3, document["exit_code"])
        self.assertEqual("InsufficientSupportError", document["error"])

    def test_unserializable_extra_is_text(self):
        record = make_record(shape=(2, 3))
        document = json_loads(JsonLineFormatter().format(record))
        self.assertEqual("(2, 3)", document["shape"])

    def test_one_line(self):
        text = JsonLineFormatter().format(make_record("a\nb", ()))
        self.assertNotIn("\n", text)


class SetupLoggingTestCase(TestCase):
    def setUp(self):
        self.root = logging.getLogger()
        self.handlers = list(self.root.handlers)
        self.level = self.root.level

    def tearDown(self):
        for handler in list(self.root.handlers):
            if handler not in self.handlers:
                self.root.removeHandler(handler)
        self.root.setLevel(self.level)

    def test_explicit_level(self):
        self.assertEqual("DEBUG", resolve_log_level("debug"))

    def test_environment_level(self):
        with mock.patch.dict(os.environ, {LOG_LEVEL_ENV_NAME: "warning"}):
            self.assertEqual("WARNING", resolve_log_level(None))
        with mock.patch.dict(os.environ, clear=True):
            self.assertEqual("INFO", resolve_log_level(""))

    def test_writes_json_lines(self):
        stream = io.StringIO()
        setup_logging("info", stream)
        logging.getLogger("evmotion.test").info("hello", extra={"scene": "eggs_04"})
        lines = stream.getvalue().splitlines()
        self.assertEqual(1, len(lines))
        self.assertEqual("eggs_04", json_loads(lines[0])["scene"])

    def test_replaces_previous_handler(self):
        first = io.StringIO()
        second = io.StringIO()
        setup_logging("info", first)
        setup_logging("info", second)
        logging.getLogger("evmotion.test").info("once")
        self.assertEqual("", first.getvalue())
        self.assertEqual(1, len(second.getvalue().splitlines()))

    def test_unknown_level_falls_back(self):
        stream = io.StringIO()
        setup_logging("chatty", stream)
        self.assertEqual(logging.INFO, self.root.level)
        self.assertIn("unknown log level", stream.getvalue())


if __name__ == "__main__":
    main()
