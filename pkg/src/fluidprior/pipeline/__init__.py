"""
Orchestration of the study: configuration, run manifest, stages and the
``fluidprior`` command line tool.
"""
from __future__ import absolute_import, division, print_function, unicode_literals

__all__ = ["PipelineConfig", "load_config", "DEFAULTS", "OPTIONS",
           "RunManifest", "StageRecord", "Pipeline", "STAGES", "stage_index"]

from .config import PipelineConfig, load_config, DEFAULTS, OPTIONS
from .manifest import RunManifest, StageRecord
from .stages import Pipeline, STAGES, stage_index
