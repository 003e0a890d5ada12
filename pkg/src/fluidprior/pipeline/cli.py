"""
Command line interface::

    fluidprior simulate --config configs/desk.yaml --reynolds=250
    fluidprior all --config configs/desk.yaml --output-dir=run1

Every configuration key can be given as a ``--key=value`` flag after the
subcommand. Exit codes: 0 success, 2 configuration error, 3 missing upstream
artifact, 4 numerical failure.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import click

from .._version import __version__
from ..exceptions import ConfigurationError, PrerequisiteError, NumericalError
from ..utils.logger import get_logger, add_screen_handler, remove_file_handlers
from .config import load_config, OPTIONS
from .stages import Pipeline, STAGES


CONTEXT_SETTINGS = {"ignore_unknown_options": True, "allow_extra_args": True}

LOGGER_NAME = "fluidprior.pipeline.cli"

STAGE_HELP = {
    "simulate": "Run the lattice Boltzmann simulation and write the vorticity snapshots.",
    "train-vqvae": "Train the VQ-VAE on the snapshots.",
    "encode": "Encode every snapshot into a latent vector.",
    "train-qcbm": "Train the quantum circuit Born machine on the latents.",
    "train-qgan": "Train the quantum GAN on the latents.",
    "train-lstm": "Train the LSTM on the latents.",
    "sample": "Draw latent samples from the three trained models.",
    "evaluate": "Compare the samples against the encoded dataset.",
    "plot": "Plot the report and the training curves.",
}


def collect_overrides(args):
    """
    Turn the extra command line arguments into ``key=value`` strings.
    Both ``--key=value`` and ``--key value`` are accepted.

    Raises
    ------
    ConfigurationError
        For arguments that are not configuration flags.
    """
    overrides = []
    args = list(args)
    while args:
        arg = args.pop(0)
        if not arg.startswith("--"):
            raise ConfigurationError("unexpected argument '{}', use --key=value".format(arg))

        if "=" not in arg:
            if not args or args[0].startswith("--"):
                raise ConfigurationError("flag '{}' needs a value, use --key=value".format(arg),
                                         key=arg.lstrip("-").replace("-", "_"))
            arg = arg + "=" + args.pop(0)

        overrides.append(arg)
    return overrides


def run_stages(ctx, config_file, stages):
    """Resolve the configuration and run `stages`, mapping failures to exit codes."""
    add_screen_handler()
    logger = get_logger(LOGGER_NAME)

    try:
        config = load_config(config_file, overrides=collect_overrides(ctx.args))
        pipeline = Pipeline(config)
        for stage in stages:
            pipeline.run(stage)
    except (ConfigurationError, PrerequisiteError, NumericalError) as error:
        logger.error("{}: {}".format(error.__class__.__name__, error))
        ctx.exit(error.exit_code)
    finally:
        remove_file_handlers()


@click.group()
@click.version_option(__version__, prog_name="fluidprior")
def main():
    """Latent priors for fluid flow snapshots."""


def stage_command(stage):
    @main.command(name=stage, context_settings=CONTEXT_SETTINGS, help=STAGE_HELP[stage])
    @click.option("--config", "-c", "config_file", default=None,
                  type=click.Path(exists=True, dir_okay=False),
                  help="Flat YAML file of key: value settings.")
    @click.pass_context
    def command(ctx, config_file):
        run_stages(ctx, config_file, [stage])

    return command


for _stage in STAGES:
    stage_command(_stage)


@main.command(name="all", context_settings=CONTEXT_SETTINGS)
@click.option("--config", "-c", "config_file", default=None,
              type=click.Path(exists=True, dir_okay=False),
              help="Flat YAML file of key: value settings.")
@click.pass_context
def run_all(ctx, config_file):
    """Run every stage, from the simulation to the plots."""
    run_stages(ctx, config_file, STAGES)


@main.command(name="options")
def options():
    """List the configuration keys with their defaults."""
    for option in OPTIONS:
        click.echo("{:<22}{!s:<22}{}".format(option.name, option.default, option.help))


if __name__ == "__main__":
    main()
