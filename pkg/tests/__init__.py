from .test_lattice import TestD2Q9, TestKernels, TestLatticeConfig, TestObstacleMask
from .test_lattice import TestSimulation, TestSnapshots, TestAnalysis
from .test_autodiff import TestGraph, TestGradients, TestAdam, TestCheckpoint
from .test_vqvae import TestQuantize, TestVqVaeModel, TestVqVaeTrainer, TestLatentTable
from .test_quantum import TestStateVector, TestAnsatz

from .test_binner import TestGaussianBinner, TestFitBinner, TestMmd
from .test_qcbm import TestTrainQcbm, TestQcbmModel
from .test_qgan import TestGenerator, TestDiscriminator, TestQganModel
from .test_lstm import TestLstmNetwork, TestLstmPrior

from .test_metrics import TestDistances, TestNearestNeighborCounts, TestHistograms, TestCorrelation
from .test_projection import TestPca, TestAffinities, TestTsne
from .test_report import TestModelMetrics, TestBuildReport
from .test_plot_report import TestPlotReport, TestPrettyPlot

from .test_config import TestLoadConfig, TestPipelineConfig, TestParseOverride
from .test_pipeline import TestPipeline, TestRunManifest, TestCli

from .test_logger import TestLogger, TestLevelFormatter
from .test_utility import TestResolveCPUs, TestParallelMap, TestSeeds, TestNumerics, TestCsv
from .test_base import TestBase
