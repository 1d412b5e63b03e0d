"""Sampling theory for graph signals.

Perfect recovery of bandlimited graph signals from vertex samples, design
of sampling sets that are robust to noise, graph downsampling, graph filter
banks, and sampling-based semi-supervised classification.
"""

from .graph_core import (
    GraphShift,
    SpectralDecomposition,
    bandlimited_signal,
    build_shift,
    first_order_difference,
    gft,
    igft,
    match_basis_scaling,
    reorder_spectrum,
    spectral_decompose,
    spectral_tail_ratio,
    total_variation,
)
from .sampling import (
    Interpolator,
    SampledGraph,
    SamplingOperator,
    apply_sampling,
    build_interpolator,
    difference_preservation_residual,
    interpolate,
    is_qualified,
    make_sampling_operator,
    sampled_graph_shift,
)
from .sampler_design import (
    DesignResult,
    brute_force_optimal_sampler,
    greedy_optimal_sampler,
    noise_recovery_trial,
    random_sampler,
    sigma_min_of_subset,
)
from .filterbank import (
    BandProjector,
    ChannelCodec,
    analyze,
    band_projectors,
    channel_energy_report,
    make_channel,
    synthesize,
)
from .experiments import (
    ErConfig,
    FrameBoundReport,
    SuccessCurve,
    cyclic_downsample_demo,
    cyclic_shift,
    dft_decomposition,
    dft_sampling_check,
    frame_bound_check,
    gen_erdos_renyi,
    success_curve,
    success_rate,
)
from .ssl import (
    BandFit,
    active_classification_pipeline,
    fit_band_coefficients,
    knn_graph,
    label_targets,
    predict_labels,
)
from .matio import read_matrix, read_signal_csv, write_matrix, write_signal_csv

__version__ = "0.1.0"
