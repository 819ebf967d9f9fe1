"""Statevector toolkit for parameterized quantum circuits.

Build or parse a circuit, then hand it to the analyzers: expressibility,
entangling capability, entanglement spectrum, loss landscapes, training
trajectories, parameter histograms, and reachability. Convention used
throughout: qubit 0 is the most significant bit of basis-state indices.
"""
from .analyzers import (
    EntanglementReport,
    ExpressibilityReport,
    LandscapeGrid,
    MetricSpec,
    ParameterHistogramSeries,
    PathEmbedding,
    ReachabilityReport,
    ScanGrids,
    SpectrumReport,
    barren_plateau_scan,
    entanglement_capability,
    entanglement_spectrum,
    expressibility,
    loss_landscape,
    parameter_histogram,
    reachability,
    training_path,
)
from .baselines import (
    HaarFidelityBaseline,
    Histogram,
    MPBaseline,
    haar_fidelity_baseline,
    haar_fidelity_cdf,
    haar_mean_marginal_purity,
    histogram,
    js_distance,
    kl_divergence,
    mp_reference_spectrum,
    sample_haar_state,
    spectral_xi,
)
from .circuit import (
    BoundCircuit,
    CircuitDescriptor,
    CircuitSpecError,
    Gate,
    ParameterId,
    ParamRef,
    PauliSum,
    PauliTerm,
    bind,
    make_circuit,
    parse_circuit_spec,
    qaoa_builder,
    serialize_circuit_spec,
)
from .library import (
    all_zeros_infidelity_cost,
    append_pairwise_cx,
    bell_circuit,
    cut_size,
    idle_circuit,
    identity_learning_ansatz,
    layered_ansatz,
    max_cut_size,
    mean_cut_scorer,
    mean_excitation_cost,
    paired_blocks_circuit,
    random_gnm_edges,
    rotation_ansatz,
    single_qubit_chain,
)
from .projection import PointCloud, SubspaceBasis, pca, random_basis, tsne
from .simulator import (
    DensityMatrix,
    NoiseModel,
    ShotCounts,
    StateVector,
    expectation,
    reduced_density_matrix,
    sample,
    simulate,
    simulate_noisy,
    subsystem_purity,
)
from .trainer import (
    DivergenceError,
    OptimizerConfig,
    TrainingTrace,
    ensemble_train,
    evaluate_cost,
    gradient,
    train,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCircuit",
    "CircuitDescriptor",
    "CircuitSpecError",
    "DensityMatrix",
    "DivergenceError",
    "EntanglementReport",
    "ExpressibilityReport",
    "Gate",
    "HaarFidelityBaseline",
    "Histogram",
    "LandscapeGrid",
    "MPBaseline",
    "MetricSpec",
    "NoiseModel",
    "OptimizerConfig",
    "ParamRef",
    "ParameterHistogramSeries",
    "ParameterId",
    "PathEmbedding",
    "PauliSum",
    "PauliTerm",
    "PointCloud",
    "ReachabilityReport",
    "ScanGrids",
    "ShotCounts",
    "SpectrumReport",
    "StateVector",
    "SubspaceBasis",
    "TrainingTrace",
    "all_zeros_infidelity_cost",
    "append_pairwise_cx",
    "barren_plateau_scan",
    "bell_circuit",
    "bind",
    "cut_size",
    "ensemble_train",
    "entanglement_capability",
    "entanglement_spectrum",
    "evaluate_cost",
    "expectation",
    "expressibility",
    "gradient",
    "haar_fidelity_baseline",
    "haar_fidelity_cdf",
    "haar_mean_marginal_purity",
    "histogram",
    "idle_circuit",
    "identity_learning_ansatz",
    "js_distance",
    "kl_divergence",
    "layered_ansatz",
    "loss_landscape",
    "make_circuit",
    "max_cut_size",
    "mean_cut_scorer",
    "mean_excitation_cost",
    "mp_reference_spectrum",
    "paired_blocks_circuit",
    "parameter_histogram",
    "parse_circuit_spec",
    "pca",
    "qaoa_builder",
    "random_basis",
    "random_gnm_edges",
    "reachability",
    "reduced_density_matrix",
    "rotation_ansatz",
    "sample",
    "sample_haar_state",
    "serialize_circuit_spec",
    "simulate",
    "simulate_noisy",
    "single_qubit_chain",
    "spectral_xi",
    "subsystem_purity",
    "train",
    "training_path",
    "tsne",
]
