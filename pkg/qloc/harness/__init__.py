from qloc.harness.benchmark import benchmark_preparation
from qloc.harness.figures import FIGURES, PRESETS, anderson_8x7, regenerate_figure_data
from qloc.harness.manifest import (
    ExperimentManifest,
    LabelledWavepacket,
    canonical_json,
    manifest_hash,
)
from qloc.harness.output import OutputWriter, code_commit, run_id
from qloc.harness.pipeline import (
    PipelineRecord,
    PipelineResult,
    preparation_spec,
    run_anderson_pipeline,
)

__all__ = (
    "ExperimentManifest",
    "FIGURES",
    "LabelledWavepacket",
    "OutputWriter",
    "PRESETS",
    "PipelineRecord",
    "PipelineResult",
    "anderson_8x7",
    "benchmark_preparation",
    "canonical_json",
    "code_commit",
    "manifest_hash",
    "preparation_spec",
    "regenerate_figure_data",
    "run_anderson_pipeline",
    "run_id",
)
