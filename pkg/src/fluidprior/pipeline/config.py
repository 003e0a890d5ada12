"""
Pipeline configuration: defaults, the YAML file, the environment and CLI
overrides, merged and validated into a :py:class:`PipelineConfig`.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import hashlib
import json
import os
from collections import OrderedDict, namedtuple

try:
    from collections.abc import Mapping
except ImportError:
    from collections import Mapping

from ruamel.yaml import YAML
from ruamel.yaml.error import MarkedYAMLError

from ..exceptions import ConfigurationError
from ..lattice import LatticeConfig, ObstacleMask
from ..lattice.d2q9 import CS


OUTPUT_VARIABLE = "FLUIDPRIOR_OUTPUT"

LOGGER_LEVELS = ["debug", "info", "warning", "error", "critical"]

Option = namedtuple("Option", ["name", "default", "kind", "nullable", "help"])

OPTIONS = [
    # run
    Option("seed", 0, "int", False, "Master seed, every stage seed is derived from it."),
    Option("workers", 1, "int", False, "Worker processes for the parallel parts of a stage."),
    Option("output_dir", "fluidprior_output", "str", False, "Folder for every artifact of the run."),
    Option("logger_level", "info", "str", False, "Threshold for log messages."),
    # lattice
    Option("nx", 256, "int", False, "Lattice nodes along the channel."),
    Option("ny", 64, "int", False, "Lattice nodes across the channel."),
    Option("radius", 16, "int", False, "Cylinder radius in nodes."),
    Option("reynolds", 500.0, "float", False, "Reynolds number based on the cylinder diameter."),
    Option("mach", 0.1, "float", False, "Inlet Mach number, used when u_inlet is null."),
    Option("u_inlet", None, "float", True, "Inlet speed in lattice units."),
    Option("warmup", 5000, "int", False, "Steps before the first snapshot."),
    Option("interval", 10, "int", False, "Steps between snapshots."),
    Option("snapshots", 1999, "int", False, "Number of vorticity snapshots."),
    Option("obstacle_image", None, "str", True, "Image whose dark pixels form the obstacle."),
    # vqvae
    Option("vqvae_channels", [32, 64, 128, 256], "int_list", False, "Encoder channels per block."),
    Option("vqvae_hidden", 2048, "int", False, "Width of the bottleneck layers."),
    Option("latent_dim", 7, "int", False, "Latent and codeword dimension."),
    Option("codebook_size", 128, "int", False, "Number of codewords."),
    Option("vqvae_epochs", 50, "int", False, "VQ-VAE training epochs."),
    Option("vqvae_batch", 32, "int", False, "VQ-VAE batch size."),
    Option("vqvae_lr", 0.0005, "float", False, "VQ-VAE Adam learning rate."),
    Option("beta", 0.2, "float", False, "Commitment loss weight."),
    # qcbm
    Option("qcbm_qubits", 8, "int", False, "Qubits per QCBM circuit."),
    Option("qcbm_layers", 7, "int", False, "Layers per QCBM circuit."),
    Option("qcbm_iters", 100, "int", False, "Adam iterations per QCBM circuit."),
    Option("qcbm_lr", 0.1, "float", False, "QCBM Adam learning rate."),
    Option("mmd_bandwidths", [0.25, 0.5, 1.0], "float_list", False, "Gaussian kernel bandwidths of the MMD."),
    # qgan
    Option("qgan_ancilla", 2, "int", False, "Ancilla qubits of the generator."),
    Option("qgan_layers", 6, "int", False, "Generator layers."),
    Option("qgan_epochs", 2, "int", False, "QGAN training epochs."),
    Option("qgan_batch", 32, "int", False, "QGAN batch size."),
    Option("qgan_lr", 0.01, "float", False, "Learning rate of generator and discriminator."),
    Option("discriminator_hidden", [512, 128], "int_list", False, "Hidden widths of the discriminator."),
    # lstm
    Option("lstm_hidden", 256, "int", False, "LSTM hidden units."),
    Option("lstm_epochs", 100, "int", False, "LSTM training epochs."),
    Option("lstm_lr", 0.001, "float", False, "LSTM Adam learning rate."),
    Option("lstm_batch", 32, "int", False, "LSTM batch size."),
    # evaluation
    Option("sample_count", 1999, "int", False, "Samples drawn from every model."),
    Option("decoded_samples", 16, "int", False, "Samples per model decoded back to vorticity."),
    Option("perplexity", 100.0, "float", False, "t-SNE perplexity."),
    Option("tsne_iters", 1000, "int", False, "t-SNE iterations."),
    Option("tsne_reference", False, "bool", False, "Also embed the encoded dataset with t-SNE."),
    Option("histogram_bins", 64, "int", False, "Bins of the minimum-distance histograms."),
]

DEFAULTS = OrderedDict((option.name, option.default) for option in OPTIONS)

_OPTIONS = OrderedDict((option.name, option) for option in OPTIONS)

POSITIVE = ["workers", "nx", "ny", "radius", "interval", "snapshots", "vqvae_hidden", "latent_dim",
            "codebook_size", "vqvae_epochs", "vqvae_batch", "vqvae_lr", "qcbm_qubits", "qcbm_layers",
            "qcbm_iters", "qcbm_lr", "qgan_layers", "qgan_epochs", "qgan_batch", "qgan_lr",
            "lstm_hidden", "lstm_epochs", "lstm_lr", "lstm_batch", "sample_count", "perplexity",
            "tsne_iters", "histogram_bins", "reynolds", "mach"]


def normalize_key(key):
    """Config keys use underscores; CLI flags may use dashes."""
    return str(key).strip().lstrip("-").replace("-", "_")


def convert_value(key, value, line=None):
    """
    Check `value` against the type of the option `key` and convert it.

    Ints are accepted for floats, a single number for a list.

    Raises
    ------
    ConfigurationError
        If the key is unknown or the value has the wrong type.
    """
    if key not in _OPTIONS:
        raise ConfigurationError("unknown configuration key '{}'".format(key), key=key, line=line)

    option = _OPTIONS[key]

    if value is None:
        if option.nullable:
            return None
        raise ConfigurationError("'{}' must not be null".format(key), key=key, line=line)

    def mismatch(expected):
        return ConfigurationError("'{}' must be {}, got {!r}".format(key, expected, value), key=key, line=line)

    def is_int(item):
        return isinstance(item, int) and not isinstance(item, bool)

    def is_number(item):
        return is_int(item) or isinstance(item, float)

    if option.kind == "int":
        if not is_int(value):
            raise mismatch("an integer")
        return int(value)

    if option.kind == "float":
        if not is_number(value):
            raise mismatch("a number")
        return float(value)

    if option.kind == "bool":
        if not isinstance(value, bool):
            raise mismatch("true or false")
        return bool(value)

    if option.kind == "str":
        if is_number(value):
            return str(value)
        if not isinstance(value, str):
            raise mismatch("a string")
        return str(value)

    if option.kind in ["int_list", "float_list"]:
        items = list(value) if isinstance(value, (list, tuple)) else [value]
        check, convert, expected = ((is_int, int, "a list of integers") if option.kind == "int_list"
                                    else (is_number, float, "a list of numbers"))
        if not items or not all(check(item) for item in items):
            raise mismatch(expected)
        return [convert(item) for item in items]

    raise ConfigurationError("'{}' has an unknown kind {}".format(key, option.kind), key=key)


def parse_override(text):
    """
    Split a ``--key=value`` flag (or ``key=value``) into a key and a typed
    value, parsing the value as a YAML scalar or flow sequence.
    """
    if "=" not in text:
        raise ConfigurationError("override '{}' is not of the form --key=value".format(text))

    key, raw = text.split("=", 1)
    key = normalize_key(key)

    yaml = YAML(typ="safe", pure=True)
    try:
        value = yaml.load(raw) if raw.strip() else None
    except MarkedYAMLError as error:
        raise ConfigurationError("cannot parse value '{}' of '{}': {}".format(raw, key, error.problem), key=key)

    return key, value


def read_config_file(filename):
    """
    Read a flat YAML mapping.

    Returns
    -------
    values : OrderedDict
        Key to raw value.
    lines : dict
        Key to its 1-based line number.

    Raises
    ------
    ConfigurationError
        If the file is not valid YAML or not a flat mapping. The error
        carries the line number of the problem.
    """
    yaml = YAML(typ="rt", pure=True)
    try:
        with open(filename, "r") as f:
            data = yaml.load(f)
    except MarkedYAMLError as error:
        mark = error.problem_mark or error.context_mark
        line = mark.line + 1 if mark is not None else None
        raise ConfigurationError("malformed configuration file {}: {}".format(filename, error.problem), line=line)

    if data is None:
        return OrderedDict(), {}

    if not isinstance(data, Mapping):
        raise ConfigurationError("{} must contain a mapping of key: value lines".format(filename), line=1)

    values = OrderedDict()
    lines = {}
    for key in data:
        name = normalize_key(key)
        value = data[key]
        if isinstance(value, Mapping):
            raise ConfigurationError("'{}' must be a value, nested sections are not supported".format(name),
                                     key=name, line=data.lc.key(key)[0] + 1)
        values[name] = list(value) if isinstance(value, list) else value
        lines[name] = data.lc.key(key)[0] + 1

    return values, lines



class PipelineConfig(Mapping):
    """
    Resolved settings of a pipeline run.

    Values can be read as attributes or items. Unknown keys, wrong types and
    physically invalid combinations are rejected on construction.

    Parameters
    ----------
    values : {mapping, None}, optional
        Settings that differ from the defaults.
    lines : {dict, None}, optional
        Line numbers of the settings, used in error messages.

    Raises
    ------
    ConfigurationError
        If a key is unknown, a value has the wrong type or an invariant is
        violated, e.g. a relaxation time tau <= 0.5.
    """
    def __init__(self, values=None, lines=None):
        lines = lines or {}

        self._values = OrderedDict(DEFAULTS)
        for key, value in (values or {}).items():
            key = normalize_key(key)
            self._values[key] = convert_value(key, value, line=lines.get(key))

        self.validate(lines)


    def __getitem__(self, key):
        return self._values[key]


    def __iter__(self):
        return iter(self._values)


    def __len__(self):
        return len(self._values)


    def __getattr__(self, name):
        if name.startswith("_"):
            raise AttributeError(name)
        try:
            return self._values[name]
        except KeyError:
            raise AttributeError("'{}' is not a configuration key".format(name))


    def __str__(self):
        return "\n".join("{}: {}".format(key, value) for key, value in self._values.items())


    def replace(self, **overrides):
        """A new configuration with `overrides` applied on top of this one."""
        values = OrderedDict(self._values)
        values.update(overrides)
        return PipelineConfig(values)


    def validate(self, lines=None):
        lines = lines or {}

        for key in POSITIVE:
            if self._values[key] <= 0:
                raise ConfigurationError("'{}' must be positive, got {}".format(key, self._values[key]),
                                         key=key, line=lines.get(key))

        for key in ["seed", "warmup", "qgan_ancilla", "decoded_samples"]:
            if self._values[key] < 0:
                raise ConfigurationError("'{}' must be non-negative, got {}".format(key, self._values[key]),
                                         key=key, line=lines.get(key))

        for key in ["vqvae_channels", "discriminator_hidden", "mmd_bandwidths"]:
            if any(item <= 0 for item in self._values[key]):
                raise ConfigurationError("every entry of '{}' must be positive".format(key), key=key, line=lines.get(key))

        if self.logger_level not in LOGGER_LEVELS:
            raise ConfigurationError("logger_level must be one of {}, got '{}'".format(", ".join(LOGGER_LEVELS), self.logger_level),
                                     key="logger_level", line=lines.get("logger_level"))

        # t-SNE runs on the three sample sets together
        if 3*self.sample_count <= 3*self.perplexity:
            raise ConfigurationError("perplexity {} needs more than {} samples per model".format(self.perplexity, int(self.perplexity)),
                                     key="perplexity", line=lines.get("perplexity"))
        if self.tsne_reference and self.snapshots <= 3*self.perplexity:
            raise ConfigurationError("tsne_reference with perplexity {} needs more than {} snapshots".format(self.perplexity, int(3*self.perplexity)),
                                     key="perplexity", line=lines.get("perplexity"))

        factor = 2**len(self.vqvae_channels)
        if self.nx % factor or self.ny % factor:
            raise ConfigurationError("the grid {} × {} must be divisible by 2**len(vqvae_channels) = {}".format(self.nx, self.ny, factor),
                                     key="vqvae_channels", line=lines.get("vqvae_channels"))

        try:
            self.lattice_config()
        except ConfigurationError as error:
            raise ConfigurationError(str(error), key=error.key, line=lines.get(error.key))


    def lattice_config(self):
        """
        The :py:class:`LatticeConfig` of the run. The relaxation time is
        derived from the Reynolds number and validated on every call.
        """
        if self.obstacle_image is None:
            return LatticeConfig.cylinder(nx=self.nx, ny=self.ny, radius=self.radius, reynolds=self.reynolds,
                                          mach=self.mach, u_inlet=self.u_inlet)

        if not os.path.isfile(self.obstacle_image):
            raise ConfigurationError("obstacle image {} does not exist".format(self.obstacle_image), key="obstacle_image")

        u_inlet = self.u_inlet if self.u_inlet is not None else self.mach*CS
        obstacle = ObstacleMask.from_image(self.obstacle_image, self.nx, self.ny)
        return LatticeConfig(nx=self.nx, ny=self.ny, u_inlet=u_inlet, reynolds=self.reynolds,
                             diameter=2*self.radius, obstacle=obstacle)


    @property
    def tau(self):
        return self.lattice_config().tau


    def to_dict(self):
        return OrderedDict(self._values)


    def digest(self):
        """SHA-256 of the resolved settings, independent of their order."""
        text = json.dumps(self._values, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf8")).hexdigest()



def load_config(filename=None, overrides=None, environ=None):
    """
    Resolve the configuration of a run.

    Precedence, lowest first: defaults, the ``FLUIDPRIOR_OUTPUT``
    environment variable (output folder only), the file, the overrides.

    Parameters
    ----------
    filename : {str, None}, optional
        Flat YAML file of ``key: value`` lines.
    overrides : {mapping, list of str, None}, optional
        Key to value, or ``--key=value`` strings as given on the command line.
    environ : {mapping, None}, optional
        Environment, default ``os.environ``.

    Returns
    -------
    config : PipelineConfig

    Raises
    ------
    ConfigurationError
        For malformed files, unknown keys, type mismatches and invalid
        values. File errors carry the line number.
    """
    environ = os.environ if environ is None else environ

    values = OrderedDict()
    lines = {}

    if environ.get(OUTPUT_VARIABLE):
        values["output_dir"] = environ[OUTPUT_VARIABLE]

    if filename is not None:
        if not os.path.isfile(filename):
            raise ConfigurationError("configuration file {} does not exist".format(filename))
        file_values, lines = read_config_file(filename)
        values.update(file_values)

    if overrides:
        if isinstance(overrides, Mapping):
            items = [(normalize_key(key), value) for key, value in overrides.items()]
        else:
            items = [parse_override(text) for text in overrides]

        for key, value in items:
            values[key] = value
            lines.pop(key, None)

    return PipelineConfig(values, lines)
