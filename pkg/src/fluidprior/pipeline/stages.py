"""
The stages of a pipeline run. Every stage reads the artifacts of the stages
before it from the output folder and writes its own next to them.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

import os
from collections import OrderedDict

import numpy as np

from ..base import Base
from ..evaluation import build_report, emit_report, MetricsReport, CANONICAL_ORDER
from ..exceptions import PrerequisiteError
from ..lattice import LatticeSimulation, snapshot_array, read_snapshots, write_snapshots, strouhal_number
from ..plotting import PlotReport
from ..priors import PRIORS, QcbmModel, QganModel, LstmPrior, save_samples
from ..utils.logger import add_file_handler
from ..utils.utility import derive_seed, parallel_map, make_folder, write_csv, read_csv, read_matrix_csv
from ..vqvae import VqVaeModel, VqVaeTrainer, LatentTable, encode_dataset, decode_latents
from .manifest import RunManifest


STAGES = ["simulate", "train-vqvae", "encode", "train-qcbm", "train-qgan", "train-lstm",
          "sample", "evaluate", "plot"]

SNAPSHOTS = "snapshots.flq"
PROBE = "probe.csv"
VQVAE = "vqvae.flp"
VQVAE_LOSS = "vqvae_loss.csv"
LATENTS = "latents.csv"
REPORT = "report"
FIGURES = "figures"
LOGFILE = "fluidprior.log"


def prior_file(tag):
    return "{}.flp".format(tag)


def loss_file(tag):
    return "{}_loss.csv".format(tag)


def samples_file(tag):
    return "samples_{}.csv".format(tag)


def decoded_file(tag):
    return "decoded_{}.flq".format(tag)


def stage_index(stage):
    """Position of `stage` in :py:data:`STAGES`, the key of its derived seed."""
    if stage not in STAGES:
        raise ValueError("unknown stage '{}', stages are: {}".format(stage, ", ".join(STAGES)))
    return STAGES.index(stage)


def read_history(filename):
    """Loss curves from a CSV with a leading step or epoch column."""
    header, rows = read_csv(filename)
    history = OrderedDict()
    for column, name in enumerate(header[1:], start=1):
        history[name] = [float(row[column]) for row in rows if row[column] != ""]
    return history



class Pipeline(Base):
    """
    Runs the stages of the study in one output folder.

    Parameters
    ----------
    config : PipelineConfig
        Resolved configuration.

    Attributes
    ----------
    folder : str
        The output folder, ``config.output_dir``.
    manifest : RunManifest
    """
    def __init__(self, config):
        super(Pipeline, self).__init__(seed=config.seed, CPUs=config.workers, logger_level=config.logger_level)

        self.config = config
        self.folder = make_folder(config.output_dir)

        add_file_handler(filename=os.path.join(self.folder, LOGFILE))

        self.manifest = RunManifest(self.folder, config=config, logger_level=config.logger_level)


    def path(self, *names):
        return os.path.join(self.folder, *names)


    def require(self, name, stage):
        """
        Path of an upstream artifact.

        Raises
        ------
        PrerequisiteError
            If the artifact does not exist, naming the stage that writes it.
        """
        path = self.path(name)
        if not os.path.exists(path):
            raise PrerequisiteError("{} is missing, run the '{}' stage first".format(path, stage),
                                    stage=stage, path=path)
        return path


    def stage_seed(self, stage, counter=0):
        return derive_seed(self.config.seed, stage_index(stage), counter)


    def run(self, stage):
        """
        Run one stage and record it in the manifest.

        Returns
        -------
        artifacts : list of str
        """
        method = getattr(self, stage.replace("-", "_"), None)
        if stage not in STAGES or method is None:
            raise ValueError("unknown stage '{}', stages are: {}".format(stage, ", ".join(STAGES)))

        self.logger.info("Running stage {}".format(stage))

        record = self.manifest.start(stage, seed=self.stage_seed(stage))
        artifacts = method()
        self.manifest.finish(record, artifacts)
        return artifacts


    def run_all(self):
        artifacts = []
        for stage in STAGES:
            artifacts.extend(self.run(stage))
        return artifacts


    def simulate(self):
        config = self.config
        lattice = config.lattice_config()

        simulation = LatticeSimulation(lattice, logger_level=config.logger_level)
        snapshots = simulation.collect_snapshots(warmup=config.warmup, interval=config.interval,
                                                 count=config.snapshots)

        artifacts = [self.path(SNAPSHOTS), self.path(PROBE)]
        write_snapshots(artifacts[0], snapshot_array(snapshots))
        write_csv(artifacts[1], ["step", "uy"],
                  ([config.warmup + step, value] for step, value in enumerate(simulation.probe_series)))

        if len(simulation.probe_series) >= 4 and lattice.u_inlet > 0:
            strouhal = strouhal_number(simulation.probe_series, lattice.diameter, lattice.u_inlet)
            self.logger.info("Strouhal number at the probe: {:.4f}".format(strouhal))

            if lattice.channel_height > lattice.diameter:
                blocked = strouhal_number(simulation.probe_series, lattice.diameter, lattice.u_inlet,
                                          height=lattice.channel_height)
                self.logger.info("Strouhal number by gap speed: {:.4f}".format(blocked))

        plotter = PlotReport(folder=self.path(FIGURES), logger_level=config.logger_level)
        artifacts.extend(plotter.plot_fields(simulation.fields(), simulation.vorticity().omega, solid=lattice.solid))

        return artifacts


    def _dataset(self):
        return read_snapshots(self.require(SNAPSHOTS, "simulate")).astype(np.float64)


    def train_vqvae(self):
        config = self.config
        dataset = self._dataset()

        model = VqVaeModel(input_shape=dataset.shape[1:],
                           channels=config.vqvae_channels,
                           hidden=config.vqvae_hidden,
                           latent_dim=config.latent_dim,
                           codebook_size=config.codebook_size,
                           seed=self.stage_seed("train-vqvae"))

        trainer = VqVaeTrainer(model=model,
                               epochs=config.vqvae_epochs,
                               batch_size=config.vqvae_batch,
                               lr=config.vqvae_lr,
                               beta=config.beta,
                               seed=self.stage_seed("train-vqvae", 1),
                               logger_level=config.logger_level)
        model, _ = trainer.train(dataset)

        artifacts = [self.path(VQVAE), self.path(VQVAE_LOSS)]
        model.save(artifacts[0])
        trainer.save_history(artifacts[1])
        return artifacts


    def encode(self):
        model = VqVaeModel.load(self.require(VQVAE, "train-vqvae"))
        dataset = self._dataset()

        table = encode_dataset(model, dataset, CPUs=self.CPUs, disable=self.quiet)
        table.save(self.path(LATENTS))

        self.logger.info("Encoded {} snapshots, {} distinct codewords used".format(
            len(table), len(np.unique(table.codes))))
        return [self.path(LATENTS)]


    def _latents(self):
        return LatentTable.load(self.require(LATENTS, "encode")).latents


    def _train_prior(self, model):
        model.train(self._latents())

        artifacts = [self.path(prior_file(model.tag)), self.path(loss_file(model.tag))]
        model.save(artifacts[0])
        model.save_history(artifacts[1])
        return artifacts


    def train_qcbm(self):
        config = self.config
        return self._train_prior(QcbmModel(n_qubits=config.qcbm_qubits,
                                           n_layers=config.qcbm_layers,
                                           iters=config.qcbm_iters,
                                           lr=config.qcbm_lr,
                                           bandwidths=config.mmd_bandwidths,
                                           seed=self.stage_seed("train-qcbm"),
                                           CPUs=self.CPUs,
                                           logger_level=config.logger_level))


    def train_qgan(self):
        config = self.config
        return self._train_prior(QganModel(n_ancilla=config.qgan_ancilla,
                                           n_layers=config.qgan_layers,
                                           epochs=config.qgan_epochs,
                                           batch_size=config.qgan_batch,
                                           lr=config.qgan_lr,
                                           hidden=config.discriminator_hidden,
                                           seed=self.stage_seed("train-qgan"),
                                           logger_level=config.logger_level))


    def train_lstm(self):
        config = self.config
        return self._train_prior(LstmPrior(hidden=config.lstm_hidden,
                                           epochs=config.lstm_epochs,
                                           lr=config.lstm_lr,
                                           batch_size=config.lstm_batch,
                                           seed=self.stage_seed("train-lstm"),
                                           logger_level=config.logger_level))


    def sample(self):
        config = self.config
        paths = [(tag, self.require(prior_file(tag), "train-" + tag)) for tag in CANONICAL_ORDER]
        vqvae = VqVaeModel.load(self.require(VQVAE, "train-vqvae"))

        seeds = [self.stage_seed("sample", counter) for counter in range(len(paths))]
        count = config.sample_count

        def draw(index):
            tag, path = paths[index]
            model = PRIORS[tag].load(path, logger_level="error")
            return model.sample(count, seed=seeds[index])

        sample_sets = parallel_map(draw, range(len(paths)), CPUs=self.CPUs, desc="Sampling", disable=True)

        artifacts = []
        for (tag, path), samples in zip(paths, sample_sets):
            filename = self.path(samples_file(tag))
            save_samples(filename, samples)
            artifacts.append(filename)

            if config.decoded_samples:
                decoded = decode_latents(vqvae, samples[:config.decoded_samples])
                write_snapshots(self.path(decoded_file(tag)), decoded)
                artifacts.append(self.path(decoded_file(tag)))

        return artifacts


    def _sample_sets(self):
        return OrderedDict((tag, read_matrix_csv(self.require(samples_file(tag), "sample"))[0])
                           for tag in CANONICAL_ORDER)


    def evaluate(self):
        config = self.config
        reference = self._latents()
        sample_sets = self._sample_sets()

        report = build_report(sample_sets, reference,
                              perplexity=config.perplexity,
                              tsne_iters=config.tsne_iters,
                              bins=config.histogram_bins,
                              seed=self.stage_seed("evaluate"),
                              tsne_reference=config.tsne_reference,
                              CPUs=self.CPUs,
                              logger_level=config.logger_level)

        self.logger.info("\n" + str(report))
        return emit_report(report, self.path(REPORT), plot=False, logger_level=config.logger_level)


    def plot(self):
        config = self.config
        report = MetricsReport(self.require(os.path.join(REPORT, "metrics.h5"), "evaluate"),
                               logger_level=config.logger_level)

        plotter = PlotReport(folder=self.path(REPORT), logger_level=config.logger_level)
        artifacts = plotter.plot_report(report)

        plotter.folder = self.path(FIGURES)
        curves = [(VQVAE_LOSS, "vqvae_loss", "VQ-VAE", "Epoch")]
        curves += [(loss_file(tag), "{}_loss".format(tag), tag.upper(), "Epoch" if tag == "lstm" else "Step")
                   for tag in CANONICAL_ORDER]
        for filename, name, title, xlabel in curves:
            if os.path.isfile(self.path(filename)):
                artifacts.append(plotter.loss_curves(read_history(self.path(filename)), name,
                                                     title="{} training".format(title), xlabel=xlabel))

        qcbm = QcbmModel.load(self.require(prior_file("qcbm"), "train-qcbm"), logger_level="error")
        artifacts.append(plotter.qcbm_distributions(qcbm.distributions(), qcbm.targets))
        artifacts.append(plotter.latent_histograms(self._latents()))

        return [artifact for artifact in artifacts if artifact is not None]
