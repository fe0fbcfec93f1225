"""Exact computations on bounded ratios of minors of totally positive matrices."""

__version__ = "0.1.0"

from .pluecker import PluckerIndex, RatioVector, MinorSpec, cyclic_shift, reflect, st0_check
from .network import PlanarNetwork, subtraction_free_check, eval_ratio
from .cone import ConeH, ConeV, dd_rays, dd_facets, member_v, reduce, extremality_test, minimize
from .tropical import build_F, bounded_check, refine_fan, walk_fan, tropical_value, alpha_inequality
from .primitive import (PrimitiveSpec, enumerate_primitives, isolated_primitives, relations,
                        rank_G, basis_B, basis_size_formula, outer_sets, factor_into_primitives)
from .raylab import parse_ratio, bundled_rays, orbit, verify_ray, search_method_1, search_method_2, ws_graph, ws_isomorphic

__all__ = [
    "PluckerIndex", "RatioVector", "MinorSpec", "cyclic_shift", "reflect", "st0_check",
    "PlanarNetwork", "subtraction_free_check", "eval_ratio",
    "ConeH", "ConeV", "dd_rays", "dd_facets", "member_v", "reduce", "extremality_test", "minimize",
    "build_F", "bounded_check", "refine_fan", "walk_fan", "tropical_value", "alpha_inequality",
    "PrimitiveSpec", "enumerate_primitives", "isolated_primitives", "relations", "rank_G",
    "basis_B", "basis_size_formula", "outer_sets", "factor_into_primitives",
    "parse_ratio", "bundled_rays", "orbit", "verify_ray", "search_method_1", "search_method_2", "ws_graph", "ws_isomorphic",
]
