"""Entanglement criteria from equiangular-tight-frame measurements."""

from .criteria import (
    Verdict,
    correlation_matrix,
    hypermatrix,
    theorem1,
    theorem4,
    theorem5,
    unfolding_trace_norms,
    unfoldings,
)
from .frames import (
    Frame,
    Povm,
    coincidence_index,
    conjugate_frame,
    get_frame,
    get_povm,
    harmonic_etf,
    povm_from_frame,
    validate_etf,
)
from .maps import (
    PositiveMapSpec,
    apply_map,
    build_witness,
    positivity_probe,
    rotation_householder_family,
    rotation_identity,
    witness_expectation,
)
from .states import (
    DensityMatrix,
    antisymmetric_tripartite,
    horodecki_3x3,
    isotropic,
    product_state,
    random_density,
    random_product,
    random_pure,
    sigma_xp,
)

__version__ = "0.1.0"
