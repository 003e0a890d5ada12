from __future__ import absolute_import, division, print_function, unicode_literals

import datetime
import os
import time
from collections import OrderedDict

from ruamel.yaml import YAML

from .._version import __version__
from ..utils.logger import get_logger, setup_module_logger


class StageRecord(object):
    """
    Completion record of one stage.

    Attributes
    ----------
    stage : str
    seed : {int, None}
        Seed derived for the stage.
    started : str
        ISO 8601 start time.
    wall_clock : float
        Seconds spent in the stage.
    artifacts : list of str
        Files written, relative to the output folder.
    """
    def __init__(self, stage, seed=None, started=None, wall_clock=0., artifacts=None):
        self.stage = stage
        self.seed = seed
        self.started = started
        self.wall_clock = float(wall_clock)
        self.artifacts = list(artifacts or [])


    def to_dict(self):
        return OrderedDict([("stage", self.stage),
                            ("seed", self.seed),
                            ("started", self.started),
                            ("wall_clock", round(self.wall_clock, 3)),
                            ("artifacts", list(self.artifacts))])


    @classmethod
    def from_dict(cls, values):
        return cls(stage=str(values["stage"]),
                   seed=values.get("seed"),
                   started=values.get("started"),
                   wall_clock=values.get("wall_clock", 0.),
                   artifacts=[str(path) for path in values.get("artifacts") or []])



class RunManifest(object):
    """
    ``manifest.yaml`` of an output folder: the resolved configuration, its
    hash and one record per completed stage in execution order.

    Re-running a stage moves its record to the end.

    Parameters
    ----------
    folder : str
        Output folder of the run.
    config : {PipelineConfig, None}, optional
        Configuration of the current invocation.
    logger_level : {"info", "debug", "warning", "error", "critical", None}, optional
    """
    filename = "manifest.yaml"

    def __init__(self, folder, config=None, logger_level="info"):
        self.folder = folder
        self.config = OrderedDict()
        self.config_hash = None
        self.version = __version__
        self.stages = []

        setup_module_logger(self, level=logger_level)

        if os.path.isfile(self.path):
            self.load()

        if config is not None:
            self.set_config(config)


    @property
    def path(self):
        return os.path.join(self.folder, self.filename)


    def set_config(self, config):
        digest = config.digest()
        if self.config_hash is not None and self.config_hash != digest and self.stages:
            get_logger(self).warning("Configuration changed since the recorded stages ({}), "
                                     "earlier artifacts may not match it".format(", ".join(self.completed())))

        self.config = config.to_dict()
        self.config_hash = digest


    def completed(self):
        return [record.stage for record in self.stages]


    def record(self, stage):
        """The latest record of `stage`, or None."""
        for record in reversed(self.stages):
            if record.stage == stage:
                return record
        return None


    def add(self, record):
        self.stages = [existing for existing in self.stages if existing.stage != record.stage]
        self.stages.append(record)
        self.save()


    def start(self, stage, seed=None):
        """Start timing `stage`, returns a record to pass to :py:meth:`finish`."""
        record = StageRecord(stage, seed=seed,
                             started=datetime.datetime.now().replace(microsecond=0).isoformat())
        record._clock = time.perf_counter()
        return record


    def finish(self, record, artifacts):
        record.wall_clock = time.perf_counter() - record._clock
        record.artifacts = [os.path.relpath(path, self.folder) for path in artifacts]
        self.add(record)
        get_logger(self).info("Stage {} finished in {:.1f} s".format(record.stage, record.wall_clock))
        return record


    def to_dict(self):
        return OrderedDict([("version", self.version),
                            ("config_hash", self.config_hash),
                            ("config", OrderedDict(self.config)),
                            ("stages", [record.to_dict() for record in self.stages])])


    def save(self):
        yaml = YAML(typ="safe", pure=True)
        yaml.default_flow_style = False
        yaml.representer.add_representer(OrderedDict, lambda representer, data: representer.represent_dict(data.items()))

        if not os.path.isdir(self.folder):
            os.makedirs(self.folder)

        with open(self.path, "w") as f:
            yaml.dump(self.to_dict(), f)


    def load(self):
        yaml = YAML(typ="safe", pure=True)
        with open(self.path, "r") as f:
            data = yaml.load(f) or {}

        self.version = data.get("version", __version__)
        self.config_hash = data.get("config_hash")
        self.config = OrderedDict(data.get("config") or {})
        self.stages = [StageRecord.from_dict(values) for values in data.get("stages") or []]
