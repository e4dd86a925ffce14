import logging
from unittest import TestCase

from colorama import Style

from InteractionBounds.logger import LogFormatter, install_handler

logger = logging.getLogger("InteractionBounds")


class TestLogFormatter(TestCase):
    def test_debug(self):
        with self.assertLogs(logger, logging.DEBUG) as log_helper:
            msg = "this is a test at the DEBUG level"
            logger.debug(msg)
            self.assertEqual(log_helper.records[0].getMessage(), msg)

    def test_warning(self):
        with self.assertLogs(logger, logging.WARNING) as log_helper:
            msg = "this is a test at the WARNING level"
            logger.warning(msg)
            self.assertEqual(log_helper.records[0].getMessage(), msg)

    def test_error(self):
        with self.assertLogs(logger, logging.ERROR) as log_helper:
            msg = "this is a test at the ERROR level"
            logger.error(msg)
            self.assertEqual(log_helper.records[0].getMessage(), msg)

    def test_format(self):
        record = logging.LogRecord("InteractionBounds", logging.WARNING, __file__, 1, "ub=%d", (5,), None)
        line = LogFormatter().format(record)
        self.assertIn("WARNING]", line)
        self.assertIn("MainThread", line)
        self.assertIn(Style.RESET_ALL, line)
        self.assertTrue(line.endswith("  ub=5"))

    def test_install_once(self):
        install_handler("WARNING")
        install_handler("DEBUG")
        formatters = [h for h in logger.handlers if isinstance(h.formatter, LogFormatter)]
        self.assertEqual(len(formatters), 1)
        self.assertEqual(logger.level, logging.DEBUG)
        logger.setLevel(logging.NOTSET)
