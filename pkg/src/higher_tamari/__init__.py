"""Higher Bruhat orders, higher Stasheff-Tamari orders and the cross-section map between them."""
from .crosssection import g, g_bar, g_bar_with_audit, g_with_audit
from .errors import (
    EnumerationLimitError,
    HigherTamariError,
    InconsistentInversionSetError,
    InvalidObjectError,
    QuotientError,
    WitnessError,
)
from .ground import Subset, interweaves, is_internal_point, is_separated_collection, separated_mask
from .posets import FinitePoset, PosetMap, analyze_map, is_isomorphic, quotient
from .simplicial import (
    Triangulation,
    enumerate_hst,
    increasing_flips,
    lower_triangulation,
    upper_triangulation,
    validate,
)
from .verification import verify_cell
from .witness import build_Q_T, even_fullness_chain, membrane_chain, odd_preimage, schedule_for_flip
from .zonotopal import (
    Cubillage,
    InversionSet,
    cubillage_from_inversion_set,
    enumerate_bruhat,
    exchange_flips,
    inversion_set_of,
    lower_cubillage,
    upper_cubillage,
    validate_cubillage,
)

__version__ = "0.1.0"

__all__ = [
    "Cubillage",
    "EnumerationLimitError",
    "FinitePoset",
    "HigherTamariError",
    "InconsistentInversionSetError",
    "InvalidObjectError",
    "InversionSet",
    "PosetMap",
    "QuotientError",
    "Subset",
    "Triangulation",
    "WitnessError",
    "analyze_map",
    "build_Q_T",
    "cubillage_from_inversion_set",
    "enumerate_bruhat",
    "enumerate_hst",
    "even_fullness_chain",
    "exchange_flips",
    "g",
    "g_bar",
    "g_bar_with_audit",
    "g_with_audit",
    "increasing_flips",
    "interweaves",
    "inversion_set_of",
    "is_internal_point",
    "is_isomorphic",
    "is_separated_collection",
    "lower_cubillage",
    "lower_triangulation",
    "membrane_chain",
    "odd_preimage",
    "quotient",
    "schedule_for_flip",
    "separated_mask",
    "upper_cubillage",
    "upper_triangulation",
    "validate",
    "validate_cubillage",
    "verify_cell",
]
