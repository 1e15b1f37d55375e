"""Exchange-modified one-photon absorption for two identical atoms.

Bosons in symmetrised states absorb less than the same atoms in a product
state, fermions more, by the factor 1/(1 +/- |<phi|psi>|^2) when the crossed
exchange channel is negligible. The package computes these amplitudes on a
1-D grid, cross-checks them in the dense two-particle space and models the
delay-controlled release experiment.
"""

from .errors import (
    DegenerateBaseline,
    DimensionMismatch,
    FermionEqualState,
    GridMismatch,
    GridTooCoarse,
    IndistinguishableFinals,
    NonpositiveTemperature,
    PacketTruncated,
    PauliViolation,
    TooLarge,
    TwoAtomError,
    WrapAround,
    ZeroAmplitude,
)
from .evolution import (
    ChannelPair,
    PulseModel,
    apply_U,
    default_final_states,
    orthogonalized_final_states,
    single_amplitude,
)
from .exchange import (
    AbsorptionResult,
    Statistics,
    TwoParticleProblem,
    equal_state_probability,
    factorized_equal_state_probability,
    factorized_probability,
    normalization_factor,
    probability_decomposition,
    ratio,
    ratio_law,
    total_absorption_probability,
    transition_amplitude,
)
from .hilbert import (
    AtomState,
    CMWaveFunction,
    GridSpec,
    InternalLabel,
    free_propagate,
    inner,
    make_gaussian,
    momentum_kick,
)

__version__ = "0.1.0"
