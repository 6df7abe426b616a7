"""Exact computations around dual complexes of simple normal crossing
configurations: integral and modular homology, Frobenius actions and
scalar-extension quotients, and kernel predictions for the reciprocity
map of the associated doubled surface.

Everything is exact integer arithmetic; no floats, no randomness
outside explicitly seeded test helpers.
"""

from .complexes import ChainMap, DeltaComplex, Simplex, suspend
from .config_io import ConfigBundle, parse_config, serialize_bundle
from .errors import (
    ExtensionError,
    LabelError,
    SnckitError,
    ValidationError,
    WellDefinednessError,
)
from .fixtures import fermat_bundle, fermat_cover_config, generate_example, rulings_bundle
from .galois import (
    Extension,
    NormMapResult,
    connecting_map,
    extension_complex,
    frobenius_chain_map,
    frobenius_on_homology,
    norm_map,
)
from .groups import (
    FgAbelianGroup,
    GaloisModule,
    IsoType,
    ModuleMap,
    coinvariants,
    cokernel,
    image_subgroup,
    torsion_and_primary,
)
from .homology import HomologyResult, homology_group, induced_map, oracle_homology
from .matrices import IntMatrix, SnfDecomposition, kernel_basis, snf, solve
from .reciprocity import (
    AlphaResult,
    ComponentPi1,
    EdgeLabelCochain,
    KernelReport,
    Pi1Input,
    PrimeReport,
    SweepResult,
    alpha_map,
    compute_theta,
    predict_kernel,
    rational_point_flags,
    sweep_extensions,
)
from .snc import (
    Component,
    FrobeniusAction,
    SncConfiguration,
    Stratum,
    build_dual_complex,
    validate_config,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # matrices
    "IntMatrix", "SnfDecomposition", "snf", "solve", "kernel_basis",
    # groups
    "FgAbelianGroup", "IsoType", "ModuleMap", "GaloisModule",
    "cokernel", "image_subgroup", "coinvariants", "torsion_and_primary",
    # complexes
    "Simplex", "DeltaComplex", "ChainMap", "suspend",
    # homology
    "HomologyResult", "homology_group", "induced_map", "oracle_homology",
    # configurations
    "Component", "Stratum", "FrobeniusAction", "SncConfiguration",
    "validate_config", "build_dual_complex",
    # galois
    "Extension", "NormMapResult", "extension_complex", "connecting_map",
    "norm_map", "frobenius_chain_map", "frobenius_on_homology",
    # reciprocity
    "Pi1Input", "ComponentPi1", "EdgeLabelCochain", "AlphaResult",
    "PrimeReport", "KernelReport", "SweepResult",
    "compute_theta", "alpha_map", "rational_point_flags",
    "predict_kernel", "sweep_extensions",
    # io and fixtures
    "ConfigBundle", "parse_config", "serialize_bundle",
    "rulings_bundle", "fermat_bundle", "fermat_cover_config", "generate_example",
    # errors
    "SnckitError", "ValidationError", "WellDefinednessError",
    "ExtensionError", "LabelError",
]
