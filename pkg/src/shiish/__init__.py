"""Regions, labelings and parking functions of the arrangements interpolating
between the Shi and Ish arrangements."""

from .arrangement import (ArrangementSpec, Hyperplane, LimitExceeded, Region,
                          build_arrangement, enumerate_regions, is_relatively_bounded,
                          label_census, pak_stanley_label)
from .centers import center, reverse_center
from .charpoly import characteristic_polynomial, compute_charpoly
from .exact import IntMatrix, IntPoly, det_fraction_free, feasible_strict
from .graphs import ArcId, augmented_of, dfs_burn, tree_to_parking
from .shi import ValidPair, invert_ell, label_ell, label_lambda

__version__ = "0.1.0"

__all__ = [
    "ArcId", "ArrangementSpec", "Hyperplane", "IntMatrix", "IntPoly", "LimitExceeded",
    "Region", "ValidPair", "augmented_of", "build_arrangement", "center",
    "characteristic_polynomial", "compute_charpoly", "det_fraction_free", "dfs_burn",
    "enumerate_regions", "feasible_strict", "invert_ell", "is_relatively_bounded",
    "label_census", "label_ell", "label_lambda", "pak_stanley_label", "reverse_center",
    "tree_to_parking",
]
