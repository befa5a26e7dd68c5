"""DV-Hop localization with connectivity-consistent hop losses and NSGA-II."""

from ._dvhop import (
    DvhopError,
    GaConfig,
    HopLossKind,
    Network,
    Problem,
    Topology,
    confidence_interval,
    estimate_distances,
    evolve,
    generate_topology,
    hop_loss,
    hop_matrix,
    mles,
    predicted_hops,
    run_checks,
    select_solution,
)

__all__ = [
    "DvhopError",
    "GaConfig",
    "HopLossKind",
    "Network",
    "Problem",
    "Topology",
    "confidence_interval",
    "estimate_distances",
    "evolve",
    "generate_topology",
    "hop_loss",
    "hop_matrix",
    "mles",
    "predicted_hops",
    "run_checks",
    "select_solution",
]
