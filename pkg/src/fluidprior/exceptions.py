"""
Exceptions raised by fluidprior.

Every exception derives from :py:class:`FluidPriorError` and from the builtin
exception a caller would naturally catch, so ``except ValueError`` keeps
working for configuration and shape problems. The pipeline maps the three
stage-level failures to process exit codes through ``exit_code``.
"""
from __future__ import absolute_import, division, print_function, unicode_literals


class FluidPriorError(Exception):
    """Base class for all fluidprior errors."""
    exit_code = 1


class ConfigurationError(FluidPriorError, ValueError):
    """
    Invalid configuration value, unknown key or violated physical bound.

    Parameters
    ----------
    message : str
        Description of the problem.
    key : str, optional
        The offending configuration key.
    line : int, optional
        Line number (1-based) in the configuration file.
    """
    exit_code = 2

    def __init__(self, message, key=None, line=None):
        if line is not None:
            message = "line {}: {}".format(line, message)
        super(ConfigurationError, self).__init__(message)
        self.key = key
        self.line = line


class PrerequisiteError(FluidPriorError, RuntimeError):
    """
    A pipeline stage is missing an artifact produced by an upstream stage.

    Parameters
    ----------
    message : str
        Description of the problem.
    stage : str, optional
        Name of the stage that must be run first.
    path : str, optional
        The missing artifact.
    """
    exit_code = 3

    def __init__(self, message, stage=None, path=None):
        super(PrerequisiteError, self).__init__(message)
        self.stage = stage
        self.path = path


class NumericalError(FluidPriorError, ArithmeticError):
    """
    Non-finite values or a physically impossible state during a computation.

    Parameters
    ----------
    message : str
        Description of the problem.
    step : int, optional
        Simulation step or optimizer iteration where the failure occurred.
    epoch : int, optional
        Training epoch.
    batch : int, optional
        Batch index within the epoch.
    """
    exit_code = 4

    def __init__(self, message, step=None, epoch=None, batch=None):
        location = []
        if step is not None:
            location.append("step {}".format(step))
        if epoch is not None:
            location.append("epoch {}".format(epoch))
        if batch is not None:
            location.append("batch {}".format(batch))
        if location:
            message = "{} ({})".format(message, ", ".join(location))

        super(NumericalError, self).__init__(message)
        self.step = step
        self.epoch = epoch
        self.batch = batch


class ShapeError(FluidPriorError, ValueError):
    """Operands of a tensor operation have incompatible shapes."""


class UsageError(FluidPriorError, RuntimeError):
    """An API was used out of order, e.g. backward before forward."""


class FileFormatError(FluidPriorError, ValueError):
    """A binary artifact has a bad header or a truncated payload."""
