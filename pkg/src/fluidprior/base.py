from __future__ import absolute_import, division, print_function, unicode_literals

from .utils.logger import setup_module_logger, get_logger, is_quiet
from .utils.utility import resolve_CPUs


class Base(object):
    """
    Common constructor for the simulation, the models and the evaluation.

    Parameters
    ----------
    seed : {int, None}, optional
        Seed for the random number generator of the object.
        Default is None.
    CPUs : {int, None, "max"}, optional
        Number of worker processes for the parts that fan out.
        Default is None (serial).
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
        Set the threshold for the logging level. Logging messages less severe
        than this level is ignored. If None, no logger level is set.
        Default logger level is "info".

    Attributes
    ----------
    seed : {int, None}
        Seed for the random number generator.
    CPUs : {int, None}
        Resolved number of worker processes.
    """
    def __init__(self, seed=None, CPUs=None, logger_level="info"):
        setup_module_logger(self, level=logger_level)

        self.seed = seed
        self._CPUs = None
        self.CPUs = CPUs
        self.logger_level = logger_level


    @property
    def CPUs(self):
        """
        Number of worker processes, None runs serially.

        Parameters
        ----------
        new_CPUs : {int, None, "max"}
            Number of worker processes.

        Returns
        -------
        CPUs : {int, None}
        """
        return self._CPUs


    @CPUs.setter
    def CPUs(self, new_CPUs):
        self._CPUs = resolve_CPUs(new_CPUs)


    @property
    def logger(self):
        return get_logger(self)


    @property
    def quiet(self):
        """True if progress bars should be hidden."""
        return is_quiet(self.logger)
