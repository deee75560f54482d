"""Exact rational toolkit for rigidity, cohomology and algebraicity of Lie algebras."""
from .algebraicity import (
    AlgebraicityVerdict,
    EigenvalueAssignment,
    LinearLieAlgebra,
    ad_algebra,
    algebraicity_verdict,
    jordan_saturation,
    make_linear_algebra,
    relation_lattice,
    split_closure_witness,
    torus_replica_defect,
    unipotent_certificate,
)
from .catalog import Fixture, list_fixtures, load_fixture, run_manifest
from .cohomology import (
    Cochain2,
    CohomReport,
    coboundaries2,
    cohomology_report,
    delta,
    derivation_dim,
    derivations,
    is_coboundary,
    is_cocycle,
    orbit_dimension,
    semisimple_derivation_deformation,
    two_cocycles,
    vn_rigidity_check,
)
from .errors import (
    DimensionError,
    HypothesisError,
    IrrationalSpectrumError,
    NotALieLawError,
    NotClosedError,
    RigidaError,
    SingularMatrixError,
)
from .exactlin import (
    IntLattice,
    QMatrix,
    QPoly,
    char_poly,
    format_rational,
    integer_kernel,
    inverse,
    kernel_basis,
    parse_rational,
    rank,
    rational_roots,
    solve_linear,
)
from .jordan import (
    JordanPair,
    eigenvalue_tuple,
    is_nilpotent_matrix,
    is_semisimple,
    jordan_chevalley,
    minimal_polynomial,
)
from .liecore import (
    CharSeq,
    LieLaw,
    StructureConstants,
    ad_matrix,
    center,
    char_seq,
    diagonal_transport,
    is_nilpotent,
    is_solvable,
    jacobi_defect,
    series_dims,
    structure_from_matrices,
    transport,
    validate_skew,
)
from .structure import (
    RankReport,
    TorusSpec,
    WeightTable,
    build_rank_system,
    rank_theorem_check,
    regular_vector,
    root_decomposition,
    verify_decomposition,
)

__version__ = "0.1.0"
