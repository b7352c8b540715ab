"""Computational tools for moduli spaces of gauged vortices on a closed
surface: the exact cohomology ring of symmetric powers, Grassmannian
embedding numerology, Kahler-class comparisons, a concrete genus-zero
realization of the embedding, partition strata of the local moduli space,
and a numerical solver for the vortex equations on a flat torus.
"""

from .symring import (
    RingParams,
    Monomial,
    CohomologyClass,
    eta,
    xi,
    sigma,
    sigma_j,
    multiply,
    normal_form,
    integrate,
    pd_sigma0,
    pairing,
    parse_class,
)
from .tensor_oracle import TensorClass, pullback, oracle_multiply, oracle_integrate
from .moduli_numerics import (
    EmbeddingParams,
    PhysicalParams,
    ParameterError,
    rr_dim,
    grassmann_params,
    moduli_dim,
    tangent_dim_local,
    stability_check,
)
from .kahler_class import (
    KahlerClass2,
    CurveDegrees,
    l2_class,
    curve_degrees,
    fs_coefficients,
    quantization,
    representability,
    symplectic_volume,
)
from .genus0 import (
    BinaryForm,
    BinaryFormPair,
    SubspaceBasis,
    embed_pair,
    plucker,
    reconstruct,
    curve_degree,
)
from .strata import Partition, partitions, fiber_tower, stratum_dim, stratification_report
from .taubes_solver import (
    TorusSpec,
    VortexProblem,
    TorusVortexState,
    StabilityError,
    NonConvergenceError,
    solve,
    bradlow_sweep,
)

__version__ = "0.1.0"
