from __future__ import absolute_import, division, print_function, unicode_literals

"""
Logging setup and small helpers used throughout fluidprior.
"""

__all__ = ["LevelFormatter", "TqdmLoggingHandler", "QueueFileHandler",
           "get_logger", "setup_module_logger", "setup_logger", "has_handlers",
           "add_screen_handler", "add_file_handler", "remove_file_handlers",
           "derive_seed", "make_rng", "check_finite", "compensated_sum",
           "parallel_map", "resolve_CPUs"]

from .logger import LevelFormatter, TqdmLoggingHandler, QueueFileHandler
from .logger import get_logger, setup_module_logger, setup_logger, has_handlers
from .logger import add_screen_handler, add_file_handler, remove_file_handlers
from .utility import derive_seed, make_rng, check_finite, compensated_sum
from .utility import parallel_map, resolve_CPUs
