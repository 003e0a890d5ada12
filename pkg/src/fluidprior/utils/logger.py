from __future__ import absolute_import, division, print_function, unicode_literals

import logging
import os
import queue
import sys
import threading
import traceback

import multiprocess
import tqdm


ROOT_LOGGER = "fluidprior"


class LevelFormatter(logging.Formatter):
    """
    Formatter that picks the record layout from the record level.

    Info messages are printed bare, since they are the progress narrative of
    a run. Everything else carries the level name, and debug and error
    messages also carry the origin of the call.
    """
    formats = {
        logging.DEBUG: "%(levelname)s - %(name)s - %(funcName)s - %(lineno)d - %(message)s",
        logging.INFO: "%(message)s",
        logging.WARNING: "%(levelname)s - %(message)s",
        logging.ERROR: "%(levelname)s - %(name)s - %(lineno)d - %(message)s",
        logging.CRITICAL: "%(levelname)s - %(name)s - %(funcName)s - %(lineno)d - %(message)s",
    }

    def __init__(self):
        super(LevelFormatter, self).__init__("%(message)s")
        self._formatters = {level: logging.Formatter(fmt) for level, fmt in self.formats.items()}


    def format(self, record):
        formatter = self._formatters.get(record.levelno, self._formatters[logging.WARNING])
        return formatter.format(record)



class TqdmLoggingHandler(logging.StreamHandler):
    """
    Stream handler that writes through ``tqdm.write``, so log lines do not
    break running progress bars.
    """
    def emit(self, record):
        try:
            tqdm.tqdm.write(self.format(record), file=sys.stderr)
        except (KeyboardInterrupt, SystemExit):
            raise
        except Exception:
            self.handleError(record)



class QueueFileHandler(logging.Handler):
    """
    File handler that is safe to use from the worker processes of a
    ``multiprocess.Pool``.

    Records are pushed on a manager queue and a single listener thread in the
    parent process writes them to `filename`.

    Parameters
    ----------
    filename : str
        Name of the log file.
    mode : str, optional
        File mode. Default is "w".
    """
    def __init__(self, filename, mode="w"):
        logging.Handler.__init__(self)

        self.filename = os.path.abspath(filename)
        self.file_handler = logging.FileHandler(self.filename, mode)
        self.queue = multiprocess.Manager().Queue(-1)
        self.closed = False

        self.listener = threading.Thread(target=self._listen)
        self.listener.daemon = True
        self.listener.start()


    def setFormatter(self, fmt):
        logging.Handler.setFormatter(self, fmt)
        self.file_handler.setFormatter(fmt)


    def _listen(self):
        while not (self.closed and self.queue.empty()):
            try:
                record = self.queue.get(timeout=0.2)
                self.file_handler.emit(record)
            except queue.Empty:
                continue
            except (EOFError, BrokenPipeError):
                break
            except (KeyboardInterrupt, SystemExit):
                raise
            except Exception:
                traceback.print_exc(file=sys.stderr)


    def emit(self, record):
        try:
            # Arguments and tracebacks are rendered here, the queue only
            # carries plain strings.
            if record.args:
                record.msg = record.msg % record.args
                record.args = None
            if record.exc_info:
                self.format(record)
                record.exc_info = None

            self.queue.put_nowait(record)
        except (KeyboardInterrupt, SystemExit):
            raise
        except Exception:
            self.handleError(record)


    def close(self):
        if not self.closed:
            self.closed = True
            self.listener.join(5.0)
            self.file_handler.close()
            logging.Handler.close(self)



def has_handlers(logger):
    """
    Check if `logger`, or any of its parents reachable through propagation,
    has a handler attached.

    Parameters
    ----------
    logger : logging.Logger
        The logger to inspect.

    Returns
    -------
    bool
        True if a handler was found.
    """
    current = logger
    while current:
        if current.handlers:
            return True
        if not current.propagate:
            return False
        current = current.parent

    return False


def logger_name(instance):
    """
    Name of the logger belonging to `instance`:
    ``instance.__module__ + "." + instance.__class__.__name__``.
    Strings are returned unchanged.
    """
    if isinstance(instance, str):
        return instance
    return instance.__module__ + "." + instance.__class__.__name__


def get_logger(instance):
    """
    Get the logger belonging to a class instance.

    Parameters
    ----------
    instance : {instance, str}
        Class instance used to create the logger name, or the name itself.

    Returns
    -------
    logger : logging.Logger
        The logger object.
    """
    return logging.getLogger(logger_name(instance))


def setup_module_logger(instance, level="info"):
    """
    Set the level of the logger belonging to `instance` and make sure the
    ``fluidprior`` logger prints to screen.

    The name gets a "fluidprior." prefix when the module lives outside the
    package, so that user subclasses share the package handlers.

    Parameters
    ----------
    instance : {instance, str}
        Class instance used to set the logger name, or the name itself.
    level : {"info", "debug", "warning", "error", "critical", None}, optional
        Threshold for the logging level. If None, the logger is left
        untouched. Default is "info".
    """
    if level is None:
        return

    name = logger_name(instance)
    if not name.startswith(ROOT_LOGGER + ".") and name != ROOT_LOGGER:
        name = ROOT_LOGGER + "." + name

    setup_logger(name, level=level)
    add_screen_handler()


def setup_logger(name, level="info"):
    """
    Set the threshold of the logger called `name`.

    Parameters
    ----------
    name : str
        Name of the logger.
    level : {"info", "debug", "warning", "error", "critical", None}, optional
        Threshold for the logging level. Default is "info".

    Raises
    ------
    ValueError
        If `level` is not a known logging level.
    """
    if level is None:
        return

    numeric_level = getattr(logging, str(level).upper(), None)
    if not isinstance(numeric_level, int):
        raise ValueError("Invalid log level: {}".format(level))

    logging.getLogger(name).setLevel(numeric_level)


def is_quiet(logger):
    """True if `logger` would drop info messages, used to silence progress bars."""
    return not logger.isEnabledFor(logging.INFO)


def add_screen_handler(name=ROOT_LOGGER):
    """
    Attach a tqdm-aware console handler to the logger called `name`, unless
    one is already attached.

    Parameters
    ----------
    name : str, optional
        Name of the logger. Default is "fluidprior".
    """
    logger = logging.getLogger(name)

    if any(isinstance(handler, TqdmLoggingHandler) for handler in logger.handlers):
        return

    console = TqdmLoggingHandler()
    console.setFormatter(LevelFormatter())
    logger.addHandler(console)


def add_file_handler(name=ROOT_LOGGER, filename="fluidprior.log"):
    """
    Attach a multiprocess-safe file handler to the logger called `name`.

    An existing file handler for another file is replaced, one for the same
    file is kept.

    Parameters
    ----------
    name : str, optional
        Name of the logger. Default is "fluidprior".
    filename : {str, None}, optional
        Name of the log file. If None, nothing is done.
        Default is "fluidprior.log".
    """
    if filename is None:
        return

    logger = logging.getLogger(name)
    filename = os.path.abspath(filename)

    for handler in list(logger.handlers):
        if isinstance(handler, QueueFileHandler):
            if handler.filename == filename:
                return
            logger.removeHandler(handler)
            handler.close()

    file_handler = QueueFileHandler(filename=filename, mode="w")
    file_handler.setFormatter(LevelFormatter())
    logger.addHandler(file_handler)


def remove_file_handlers(name=ROOT_LOGGER):
    """Close and detach every file handler of the logger called `name`."""
    logger = logging.getLogger(name)
    for handler in list(logger.handlers):
        if isinstance(handler, QueueFileHandler):
            logger.removeHandler(handler)
            handler.close()
