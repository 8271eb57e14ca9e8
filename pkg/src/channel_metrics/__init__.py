"""Fisher-information bounds for finite-alphabet classical channels.

The library computes the exact lower bound ``g_min`` (largest per-input output
Fisher information) and the upper bound ``g_max`` (cheapest program Fisher
information over extreme-point decompositions) for a channel paired with a
tangent, verifies simulation programs, and ships a property-test harness plus
a command-line front end.
"""

from .channels import (
    BINARY_FLIP,
    BINARY_IDENTITY,
    BINARY_TO_FIRST,
    BINARY_TO_SECOND,
    Channel,
    Distribution,
    LocalData,
    TangentChannel,
    TangentDistribution,
    apply,
    channel_from_dict,
    compose,
    embed_distribution,
    extreme_points,
    identity,
    local_data_from_dict,
    local_data_to_dict,
    tangent_from_dict,
    tensor,
)
from .metrics import (
    Decomposition,
    GmaxResult,
    MetricReport,
    SolverConfig,
    closed_form_binary,
    compute_report,
    decomposition_gradient,
    decomposition_value,
    feasible_weights,
    fisher_information,
    g_max,
    g_min,
    mixing_bound,
)
from .simulation import (
    MixtureProgram,
    ProgramCheck,
    SandwichProgram,
    TangentLineMixture,
    mixture_program_from_decomposition,
    mixture_program_from_dict,
    perfectly_discriminable,
    sandwich_program_from_dict,
    tangent_line_mixture,
    verify_mixture_program,
    verify_sandwich_program,
)
from .harness import (
    AxiomCheck,
    BilinearityProbe,
    binary_flip_gmax_profile,
    brute_force_gmax,
    check_axiom,
    probe_bilinearity,
    random_channel,
    random_instance,
    random_tangent,
    run_axiom_trials,
)

__version__ = "0.1.0"

__all__ = [
    "BINARY_FLIP",
    "BINARY_IDENTITY",
    "BINARY_TO_FIRST",
    "BINARY_TO_SECOND",
    "Channel",
    "Distribution",
    "LocalData",
    "TangentChannel",
    "TangentDistribution",
    "apply",
    "channel_from_dict",
    "compose",
    "embed_distribution",
    "extreme_points",
    "identity",
    "local_data_from_dict",
    "local_data_to_dict",
    "tangent_from_dict",
    "tensor",
    "Decomposition",
    "GmaxResult",
    "MetricReport",
    "SolverConfig",
    "closed_form_binary",
    "compute_report",
    "decomposition_gradient",
    "decomposition_value",
    "feasible_weights",
    "fisher_information",
    "g_max",
    "g_min",
    "mixing_bound",
    "MixtureProgram",
    "ProgramCheck",
    "SandwichProgram",
    "TangentLineMixture",
    "mixture_program_from_decomposition",
    "mixture_program_from_dict",
    "perfectly_discriminable",
    "sandwich_program_from_dict",
    "tangent_line_mixture",
    "verify_mixture_program",
    "verify_sandwich_program",
    "AxiomCheck",
    "BilinearityProbe",
    "binary_flip_gmax_profile",
    "brute_force_gmax",
    "check_axiom",
    "probe_bilinearity",
    "random_channel",
    "random_instance",
    "random_tangent",
    "run_axiom_trials",
]
