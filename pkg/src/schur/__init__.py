"""S-rings over finite abelian groups: construction, validation, exhaustive
enumeration, and schurity testing."""

from .errors import BudgetExceeded, CapExceeded, GroupMismatch
from .group import (
    AbelianGroup,
    GroupMap,
    Subgroup,
    automorphisms,
    map_from_generator_images,
    quotient,
    subgroup,
    subgroups,
)
from .groupring import GroupRingElement, multiply, sum_of_set
from .sring import (
    SectionRef,
    SRing,
    SRingViolation,
    canonical_c1,
    cayley_isomorphic,
    generated,
    radical,
    validate,
)
from .constructions import (
    CatalogSizeMismatch,
    cyclotomic,
    gw_sections,
    is_generalized_wreath,
    table1,
    tensor,
    wreath,
)
from .permaction import PermGroup, right_translations, symmetric_group, two_equivalent
from .schurity import (
    cayley_scheme,
    genwr_certificate,
    is_schurian,
    scheme_automorphisms,
)
from .enumeration import (
    classify_up_to_cayley,
    enumerate_srings,
    enumerate_srings_brute,
    filter_rings,
)

__all__ = [
    "AbelianGroup",
    "BudgetExceeded",
    "CapExceeded",
    "CatalogSizeMismatch",
    "GroupMap",
    "GroupMismatch",
    "GroupRingElement",
    "PermGroup",
    "SRing",
    "SRingViolation",
    "SectionRef",
    "Subgroup",
    "automorphisms",
    "canonical_c1",
    "cayley_isomorphic",
    "cayley_scheme",
    "classify_up_to_cayley",
    "cyclotomic",
    "enumerate_srings",
    "enumerate_srings_brute",
    "filter_rings",
    "generated",
    "genwr_certificate",
    "gw_sections",
    "is_generalized_wreath",
    "is_schurian",
    "map_from_generator_images",
    "multiply",
    "quotient",
    "radical",
    "right_translations",
    "scheme_automorphisms",
    "subgroup",
    "subgroups",
    "sum_of_set",
    "symmetric_group",
    "table1",
    "tensor",
    "two_equivalent",
    "validate",
]
