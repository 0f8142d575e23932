"""kconj: the equivariant K-theory ring of the conjugation action, exactly.

For a product G of SU(n), Sp(n), U(n) factors and a torus, the package
computes the presentation K*_G(G^Ad) = R(G) (x) Lambda[b-classes] and
machine-verifies every algebraically checkable step: resolution
exactness on exponent windows, the ring and module structure, the
forgetful map as reduction by the augmentation ideal, and the
isomorphism with the ring of Kähler differentials of R(G).
"""

from .characters import (
    NotInImage,
    NotWeylInvariant,
    SymmetricLaurent,
    UnknownGenerator,
    from_character,
    fundamental_character,
    to_character,
)
from .complexes import (
    ExponentWindow,
    FreeComplex,
    HomologyReport,
    WindowTooSmall,
    build_augmentation_resolution,
    build_koszul_resolution,
    differential_squared_is_zero,
    koszul_regular_factorization,
    tensored_down,
    tor_ranks,
    window_homology,
    window_homology_suite,
)
from .differentials import DiffForm, d, phi, wedge
from .exprparse import ParseError
from .groups import (
    Factor,
    GeneratorInfo,
    GroupDescriptor,
    GroupModel,
    InvalidDescriptor,
    build_group,
    generator_inventory,
    parse_descriptor,
)
from .intlinalg import IntMatrix, bareiss_determinant, smith_normal_form
from .ktheory import (
    DuplicateGenerator,
    ExteriorClass,
    GroupMismatch,
    KClass,
    beta_ad,
    forgetful,
    k_generator,
    k_mul,
    k_scalar,
    poincare_ranks,
    presentation,
    structure_isomorphism,
)
from .rings import (
    IndecomposableVector,
    RingElement,
    RingMismatch,
    RingModel,
    augmentation,
    indecomposable_coordinates,
    parse_element,
    partial,
)

__version__ = "0.1.0"
