"""Style-adaptive routing of literary translation by wavelet packet stylometry.

Text -> word-length signal -> wavelet packet sub-bands -> 81-dim feature
spectrum -> threshold routing -> ordered agent workflow.
"""
from .errors import *  # noqa: F401,F403
from .roles import AgentRole, StyleClass
from .text_signal import TextSegment, WordLengthSignal, prepare_for_wpt, to_signal, tokenize
from .wpt import (
    WaveletFilter,
    WptDecomposition,
    analysis_step,
    get_filter,
    subband_energies,
    wpt_decompose,
    wpt_reconstruct,
)
from .sfs import (
    StylisticFeatureSpectrum,
    compute_sfs,
    global_wavelet_entropy,
    low_frequency_energy,
    relative_wavelet_energy,
    subband_entropy,
    subband_moments,
)
from .router import (
    CalibrationReport,
    RoutingThresholds,
    Workflow,
    WorkflowLibrary,
    allocate_workflow,
    calibrate_thresholds,
    classify,
)
from .config import BackendSettings, RunConfig
from .agents import (
    AgentSpec,
    MockBackend,
    OpenAIChatBackend,
    PipelineTrace,
    TranslationJob,
    default_agent_specs,
    run_workflow,
    translate_corpus,
)
from .metrics import ChrfParams, chrf
from .synth import StyleProfile, generate_corpus, generate_signal

__version__ = "0.1.0"
