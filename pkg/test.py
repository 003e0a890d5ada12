import unittest
import sys
import os
import click

import matplotlib
matplotlib.use('Agg')

from tests import *


verbose = 1


def to_list(test_cases):
    if isinstance(test_cases, type):
        return [test_cases]
    return list(test_cases)


def create_test_suite(test_classes_to_run=[]):
    loader = unittest.TestLoader()

    suites_list = []
    for test_class in to_list(test_classes_to_run):
        suites_list.append(loader.loadTestsFromTestCase(test_class))

    return unittest.TestSuite(suites_list)


def run(test_cases=[]):
    suite = create_test_suite(test_cases)

    runner = unittest.TextTestRunner(verbosity=verbose)
    results = runner.run(suite)

    errors = len(results.errors)
    failures = len(results.failures)
    run = results.testsRun
    print("------------------------------------------------------")
    print("Test: run={} errors={} failures={}".format(run, errors, failures))

    if not results.wasSuccessful():
        sys.exit(1)



testing_lattice = [TestD2Q9, TestKernels, TestLatticeConfig, TestObstacleMask,
                   TestSimulation, TestSnapshots, TestAnalysis]

testing_autodiff = [TestGraph, TestGradients, TestAdam, TestCheckpoint]

testing_vqvae = [TestQuantize, TestVqVaeModel, TestVqVaeTrainer, TestLatentTable]

testing_quantum = [TestStateVector, TestAnsatz]

testing_priors = [TestGaussianBinner, TestFitBinner, TestMmd, TestTrainQcbm, TestQcbmModel,
                  TestGenerator, TestDiscriminator, TestQganModel, TestLstmNetwork, TestLstmPrior]

testing_evaluation = [TestDistances, TestNearestNeighborCounts, TestHistograms, TestCorrelation,
                      TestPca, TestAffinities, TestTsne, TestModelMetrics, TestBuildReport,
                      TestPlotReport, TestPrettyPlot]

testing_pipeline = [TestLoadConfig, TestPipelineConfig, TestParseOverride,
                    TestPipeline, TestRunManifest, TestCli]

testing_utils = [TestLogger, TestLevelFormatter, TestResolveCPUs, TestParallelMap,
                 TestSeeds, TestNumerics, TestCsv, TestBase]

testing_all = testing_lattice + testing_autodiff + testing_vqvae + testing_quantum\
              + testing_priors + testing_evaluation + testing_pipeline + testing_utils


@click.group()
@click.option('--verbosity', default=1, help="Verbosity of test runner.")
def cli(verbosity):
    global verbose
    verbose = verbosity


@cli.command()
def lattice():
    run(testing_lattice)


@cli.command()
def autodiff():
    run(testing_autodiff)


@cli.command()
def vqvae():
    run(testing_vqvae)


@cli.command()
def quantum():
    run(testing_quantum)


@cli.command()
def priors():
    run(testing_priors)


@cli.command()
def qgan():
    run([TestGenerator, TestDiscriminator, TestQganModel])


@cli.command()
def evaluation():
    run(testing_evaluation)


@cli.command()
def plotting():
    run([TestPlotReport, TestPrettyPlot])


@cli.command()
def pipeline():
    run(testing_pipeline)


@cli.command()
def utils():
    run(testing_utils)


@cli.command()
def all():
    run(testing_all)


@cli.command()
def complete():
    """All tests, including the slow end-to-end runs."""
    os.environ["FLUIDPRIOR_SLOW"] = "1"
    run(testing_all)


if __name__ == '__main__':
    cli()
