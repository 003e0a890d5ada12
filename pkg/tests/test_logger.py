import unittest
import logging
import shutil
import os
import io

from unittest import mock

from fluidprior.base import Base
from fluidprior.utils.logger import has_handlers, add_screen_handler, add_file_handler
from fluidprior.utils.logger import remove_file_handlers, setup_logger, setup_module_logger
from fluidprior.utils.logger import get_logger, logger_name, is_quiet
from fluidprior.utils.logger import LevelFormatter, TqdmLoggingHandler, QueueFileHandler


def reset(name):
    remove_file_handlers(name)
    logger = logging.getLogger(name)
    logger.handlers = []
    logger.setLevel(logging.NOTSET)
    logger.propagate = True


class TestLogger(unittest.TestCase):
    def setUp(self):
        self.output_test_dir = ".tests/"
        self.logfile = os.path.join(self.output_test_dir, "fluidprior.log")

        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)
        os.makedirs(self.output_test_dir)

        for name in ["fluidprior", "screen", "file", "both", "isolated"]:
            reset(name)


    def tearDown(self):
        for name in ["fluidprior", "screen", "file", "both", "isolated"]:
            reset(name)

        if os.path.isdir(self.output_test_dir):
            shutil.rmtree(self.output_test_dir)


    def log_all(self, logger):
        logger.debug("debug message")
        logger.info("info message")
        logger.warning("warning message")
        logger.error("error message")
        logger.critical("critical message")


    def read_lines(self):
        remove_file_handlers()
        with open(self.logfile) as f:
            return f.readlines()


    def test_has_handlers(self):
        add_screen_handler("fluidprior")

        self.assertTrue(has_handlers(logging.getLogger("fluidprior")))
        self.assertTrue(has_handlers(logging.getLogger("fluidprior.lattice.simulation")))


    def test_has_handlers_no_propagate(self):
        add_screen_handler("fluidprior")

        logger = logging.getLogger("fluidprior.isolated")
        logger.propagate = False

        self.assertFalse(has_handlers(logger))
        logger.propagate = True


    def test_has_handlers_none(self):
        logger = logging.getLogger("isolated")
        logger.propagate = False

        self.assertFalse(has_handlers(logger))


    def test_add_screen_handler(self):
        logger = logging.getLogger("screen")

        add_screen_handler("screen")
        self.assertEqual(len(logger.handlers), 1)
        self.assertIsInstance(logger.handlers[0], TqdmLoggingHandler)

        add_screen_handler("screen")
        self.assertEqual(len(logger.handlers), 1)


    def test_add_file_handler(self):
        logger = logging.getLogger("file")

        add_file_handler("file", filename=self.logfile)
        self.assertEqual(len(logger.handlers), 1)
        self.assertTrue(os.path.exists(self.logfile))

        add_file_handler("file", filename=self.logfile)
        self.assertEqual(len(logger.handlers), 1)


    def test_add_file_handler_new_filename(self):
        logger = logging.getLogger("file")

        add_file_handler("file", filename=self.logfile)

        new_logfile = os.path.join(self.output_test_dir, "other.log")
        add_file_handler("file", filename=new_logfile)

        self.assertTrue(os.path.exists(new_logfile))
        self.assertEqual(len(logger.handlers), 1)
        self.assertEqual(logger.handlers[0].filename, os.path.abspath(new_logfile))


    def test_add_file_handler_none(self):
        add_file_handler("file", filename=None)
        self.assertEqual(logging.getLogger("file").handlers, [])


    def test_add_file_and_screen_handlers(self):
        logger = logging.getLogger("both")

        add_screen_handler("both")
        self.assertEqual(len(logger.handlers), 1)

        add_file_handler("both", filename=self.logfile)
        self.assertEqual(len(logger.handlers), 2)

        remove_file_handlers("both")
        self.assertEqual(len(logger.handlers), 1)
        self.assertIsInstance(logger.handlers[0], TqdmLoggingHandler)


    def test_setup_logger(self):
        setup_logger("fluidprior.test1", level="warning")
        logger = logging.getLogger("fluidprior.test1")

        self.assertEqual(logger.getEffectiveLevel(), 30)
        self.assertEqual(len(logger.handlers), 0)

        reset("fluidprior.test1")


    def test_setup_logger_invalid(self):
        with self.assertRaises(ValueError):
            setup_logger("fluidprior", level="loud")


    def test_setup_logger_none(self):
        setup_logger("fluidprior", level=None)
        self.assertEqual(logging.getLogger("fluidprior").level, logging.NOTSET)


    def test_setup_logger_levels(self):
        expected = {"debug": 5, "info": 4, "warning": 3, "error": 2, "critical": 1}

        for level, count in expected.items():
            setup_logger("fluidprior", level=level)
            add_file_handler(filename=self.logfile)

            self.log_all(logging.getLogger("fluidprior"))

            self.assertEqual(len(self.read_lines()), count, level)


    def test_queue_file_handler(self):
        handler = QueueFileHandler(self.logfile)
        handler.setFormatter(LevelFormatter())

        logger = logging.getLogger("file")
        logger.setLevel(logging.INFO)
        logger.addHandler(handler)

        logger.info("lattice step %d of %d", 10, 20)
        logger.removeHandler(handler)
        handler.close()

        with open(self.logfile) as f:
            self.assertEqual(f.read(), "lattice step 10 of 20\n")

        # closing twice is harmless
        handler.close()


    def test_setup_module_logger(self):
        base = Base(logger_level=None)
        setup_module_logger(base, level="info")

        logger = logging.getLogger("fluidprior.base.Base")
        self.assertEqual(logger.level, logging.INFO)
        self.assertTrue(has_handlers(logger))

        add_file_handler(filename=self.logfile)
        self.log_all(logger)

        self.assertEqual(len(self.read_lines()), 4)


    def test_setup_module_logger_external(self):
        setup_module_logger("external.Prior", level="error")

        self.assertEqual(logging.getLogger("fluidprior.external.Prior").level, logging.ERROR)
        self.assertEqual(len(logging.getLogger("fluidprior").handlers), 1)

        reset("fluidprior.external.Prior")


    def test_logger_name(self):
        base = Base(logger_level=None)

        self.assertEqual(logger_name(base), "fluidprior.base.Base")
        self.assertEqual(logger_name("fluidprior.custom"), "fluidprior.custom")
        self.assertEqual(get_logger(base).name, "fluidprior.base.Base")


    def test_is_quiet(self):
        setup_logger("fluidprior", level="warning")
        self.assertTrue(is_quiet(logging.getLogger("fluidprior")))

        setup_logger("fluidprior", level="info")
        self.assertFalse(is_quiet(logging.getLogger("fluidprior")))



class TestLevelFormatter(unittest.TestCase):
    def record(self, level):
        return logging.LogRecord("fluidprior.test", level, "test.py", 10, "message", None, None,
                                 func="train")


    def test_formats(self):
        formatter = LevelFormatter()

        self.assertEqual(formatter.format(self.record(logging.INFO)), "message")
        self.assertEqual(formatter.format(self.record(logging.WARNING)), "WARNING - message")
        self.assertEqual(formatter.format(self.record(logging.ERROR)),
                         "ERROR - fluidprior.test - 10 - message")
        self.assertEqual(formatter.format(self.record(logging.DEBUG)),
                         "DEBUG - fluidprior.test - train - 10 - message")


    def test_tqdm_handler(self):
        handler = TqdmLoggingHandler()
        handler.setFormatter(LevelFormatter())

        with mock.patch("sys.stderr", new_callable=io.StringIO) as stderr:
            handler.emit(self.record(logging.WARNING))

        self.assertEqual(stderr.getvalue(), "WARNING - message\n")


if __name__ == "__main__":
    unittest.main()
