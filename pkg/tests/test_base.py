import unittest
import logging

import multiprocess

from fluidprior.base import Base


class TestBase(unittest.TestCase):
    def tearDown(self):
        logging.getLogger("fluidprior.base.Base").setLevel(logging.NOTSET)


    def test_init(self):
        base = Base(seed=4, logger_level="error")

        self.assertEqual(base.seed, 4)
        self.assertIsNone(base.CPUs)
        self.assertEqual(base.logger_level, "error")


    def test_CPUs(self):
        base = Base(CPUs=1, logger_level="error")
        self.assertIsNone(base.CPUs)

        base.CPUs = 3
        self.assertEqual(base.CPUs, 3)

        base.CPUs = "max"
        self.assertEqual(base.CPUs, multiprocess.cpu_count())

        with self.assertRaises(ValueError):
            base.CPUs = 0


    def test_logger(self):
        base = Base(logger_level="error")

        self.assertIsInstance(base.logger, logging.Logger)
        self.assertEqual(base.logger.name, "fluidprior.base.Base")
        self.assertEqual(base.logger.level, logging.ERROR)
        self.assertTrue(base.quiet)


    def test_not_quiet(self):
        base = Base(logger_level="info")
        self.assertFalse(base.quiet)


    def test_invalid_level(self):
        with self.assertRaises(ValueError):
            Base(logger_level="loud")
