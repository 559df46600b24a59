"""Coherence witnesses for block and POVM measurement references.

Construct and certify witnesses that detect block or POVM coherence of
quantum states, apply the matching dephasing maps, and analyze parameter
estimation under degenerate Hamiltonians (estimability, symmetric
logarithmic derivative, quantum Fisher information).

The numerical core runs on a compiled extension when available and falls
back to pure numpy otherwise; see :func:`active_backend`.
"""

from .errors import (
    CohwitError,
    DegeneracyAmbiguous,
    DimensionError,
    FileFormatError,
    InvalidDimension,
    InvalidOperator,
    InvalidParameter,
    InvalidState,
    UncertifiedWitness,
)
from .kernels import active_backend, available_backends, set_backend
from .linalg import (
    as_complex_matrix,
    as_complex_vector,
    eigh,
    fidelity_pure,
    is_psd,
    require_density,
    require_hermitian,
    require_state_vector,
    unitary_exp,
)
from .measurements import (
    IncoherenceReport,
    PovmSet,
    ProjectorSet,
    check_block_incoherent,
    check_povm_incoherent,
    dephase_block,
    dephase_povm,
    standard_basis,
    wstate_projector_family,
)
from .states import (
    maximally_mixed,
    noisy_w_state,
    pure_density,
    random_block_incoherent,
    random_density,
    random_hermitian,
    random_projector_set,
    random_pure,
    random_unitary,
    w_state,
)
from .witness import (
    DetectionResult,
    PovmViolationCertificate,
    Witness,
    certify_witness,
    construct_witness,
    evaluate,
    povm_violation_certificate,
    violating_state,
    witness_from_pure,
)
from .estimation import (
    DegenerateHamiltonian,
    EnergyLevel,
    EstimabilityResult,
    QfiResult,
    SweepPoint,
    evolve,
    group_eigenspaces,
    hamiltonian_blocks,
    is_estimable,
    qfi,
    sld,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "CohwitError",
    "DegeneracyAmbiguous",
    "DimensionError",
    "FileFormatError",
    "InvalidDimension",
    "InvalidOperator",
    "InvalidParameter",
    "InvalidState",
    "UncertifiedWitness",
    "active_backend",
    "available_backends",
    "set_backend",
    "as_complex_matrix",
    "as_complex_vector",
    "eigh",
    "fidelity_pure",
    "is_psd",
    "require_density",
    "require_hermitian",
    "require_state_vector",
    "unitary_exp",
    "IncoherenceReport",
    "PovmSet",
    "ProjectorSet",
    "check_block_incoherent",
    "check_povm_incoherent",
    "dephase_block",
    "dephase_povm",
    "standard_basis",
    "wstate_projector_family",
    "maximally_mixed",
    "noisy_w_state",
    "pure_density",
    "random_block_incoherent",
    "random_density",
    "random_hermitian",
    "random_projector_set",
    "random_pure",
    "random_unitary",
    "w_state",
    "DetectionResult",
    "PovmViolationCertificate",
    "Witness",
    "certify_witness",
    "construct_witness",
    "evaluate",
    "povm_violation_certificate",
    "violating_state",
    "witness_from_pure",
    "DegenerateHamiltonian",
    "EnergyLevel",
    "EstimabilityResult",
    "QfiResult",
    "SweepPoint",
    "evolve",
    "group_eigenspaces",
    "hamiltonian_blocks",
    "is_estimable",
    "qfi",
    "sld",
    "sweep",
]
