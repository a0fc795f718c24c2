"""Exact computations with finitely determined multiparameter persistence modules."""

__version__ = "0.1.0"

from .barcode import (
    Bar,
    Endpoint,
    RModule1D,
    barcode_with_map,
    elder_projection,
    functorial_barcode,
    gr_soc_spaces,
    interval_module,
    top_spaces,
)
from .decomposition import (
    PrimaryComponent,
    associated_faces as downset_associated_faces,
    canonical_decomposition,
    global_support_downset,
    irreducible_decomposition,
    localize_downset,
    minimal_decomposition,
    primary_component,
    primary_decomposition_module,
    socle_degrees,
)
from .encoding import Encoding, encode, encoding_is_isomorphism
from .errors import (
    KernelError,
    DimensionMismatch,
    ShapeMismatch,
    NotAnUpset,
    NotComparable,
    TargetMismatch,
    NonCommuting,
    BoxNotDetermining,
    IllegalNonzeroEntry,
    InvalidFringe,
    HullConstructionFailed,
    NotAHomomorphism,
    NotInGenSpace,
    EmptyInterval,
    NotIsomorphic,
)
from .fringe import (
    MonomialMatrix,
    PosetMonomialMatrix,
    fringe_to_module,
    hom_dim,
    meets,
    module_to_fringe,
    pullback_fringe,
    validate_fringe,
)
from .lattice import (
    DownsetZn,
    LatticeBox,
    UpsetZn,
    determining_box,
    downset_contains,
    face,
    upset_contains,
)
from .linalg import RatMatrix, image_basis, kernel_basis, rank, solve
from .posets import FinitePoset, PosetModule, PosetMorphism, isotypic_regions, pullback_module, uptight_poset
from .qr import (
    BirthDegree,
    DeathDegree,
    QRCode,
    birth_poset,
    death_functor,
    death_poset,
    elder_morphism,
    elder_quotient,
    elder_submodule,
    extant_submodule,
    gen_space,
    qr_code,
    recover,
)
from .znmodule import (
    FdModule,
    ModuleHom,
    closed_socle_along,
    direct_sum,
    global_support,
    is_injective_hom,
    is_surjective_hom,
    localize,
    matlis_dual,
    quotient_restriction,
    top_along,
)

__all__ = [
    "Bar",
    "BirthDegree",
    "BoxNotDetermining",
    "DeathDegree",
    "DimensionMismatch",
    "DownsetZn",
    "EmptyInterval",
    "Encoding",
    "Endpoint",
    "FdModule",
    "FinitePoset",
    "HullConstructionFailed",
    "IllegalNonzeroEntry",
    "InvalidFringe",
    "KernelError",
    "LatticeBox",
    "ModuleHom",
    "MonomialMatrix",
    "NonCommuting",
    "NotAHomomorphism",
    "NotAnUpset",
    "NotComparable",
    "NotInGenSpace",
    "NotIsomorphic",
    "PosetModule",
    "PosetMonomialMatrix",
    "PosetMorphism",
    "PrimaryComponent",
    "QRCode",
    "RModule1D",
    "RatMatrix",
    "ShapeMismatch",
    "TargetMismatch",
    "UpsetZn",
    "barcode_with_map",
    "birth_poset",
    "canonical_decomposition",
    "closed_socle_along",
    "death_functor",
    "death_poset",
    "determining_box",
    "direct_sum",
    "downset_associated_faces",
    "downset_contains",
    "elder_morphism",
    "elder_projection",
    "elder_quotient",
    "elder_submodule",
    "encode",
    "encoding_is_isomorphism",
    "extant_submodule",
    "face",
    "fringe_to_module",
    "functorial_barcode",
    "gen_space",
    "global_support",
    "global_support_downset",
    "gr_soc_spaces",
    "hom_dim",
    "image_basis",
    "interval_module",
    "irreducible_decomposition",
    "is_injective_hom",
    "is_surjective_hom",
    "isotypic_regions",
    "kernel_basis",
    "localize",
    "localize_downset",
    "matlis_dual",
    "meets",
    "minimal_decomposition",
    "module_to_fringe",
    "primary_component",
    "primary_decomposition_module",
    "pullback_fringe",
    "pullback_module",
    "qr_code",
    "quotient_restriction",
    "rank",
    "recover",
    "socle_degrees",
    "solve",
    "top_along",
    "top_spaces",
    "upset_contains",
    "uptight_poset",
    "validate_fringe",
]
