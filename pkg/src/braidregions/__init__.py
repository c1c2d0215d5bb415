"""Region counts for integer deformations of the braid arrangement."""

from .arrangement import (
    ArrangementSpec,
    classify_family,
    is_almost_transitive,
    is_transitive,
    parse_arrangement,
    preset,
    random_spec,
)
from .boxed import bernardi_sum_brute, contribution_brute, enumerate_s_boxings
from .contribution import bernardi_sum_fast, contribution_fast, explain
from .errors import GuardError, NotApplicableError
from .ish import IshClassification, classify_tree, closed_formula, count_broom_trees, count_zero_class
from .oracle import characteristic_polynomial, region_count_zaslavsky
from .trees import PlaneTree, decode_tree, encode_tree, enumerate_trees

__version__ = "0.1.0"

__all__ = [
    "ArrangementSpec",
    "GuardError",
    "IshClassification",
    "NotApplicableError",
    "PlaneTree",
    "bernardi_sum_brute",
    "bernardi_sum_fast",
    "characteristic_polynomial",
    "classify_family",
    "classify_tree",
    "closed_formula",
    "contribution_brute",
    "contribution_fast",
    "count_broom_trees",
    "count_zero_class",
    "decode_tree",
    "encode_tree",
    "enumerate_s_boxings",
    "enumerate_trees",
    "explain",
    "is_almost_transitive",
    "is_transitive",
    "parse_arrangement",
    "preset",
    "random_spec",
    "region_count_zaslavsky",
]
