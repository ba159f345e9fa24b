"""Exact models for rank-2 parabolic Higgs bundles on the 4-punctured line."""

from .exact import BinaryForm, ProjPoint, bf_eval, bf_gcd, cross_ratio, nullspace
from .weights import (
    Chamber,
    D4Element,
    MarkSubset,
    OnWalls,
    PartitionSet,
    Wall,
    beta_sum,
    beta_to_su2,
    classify,
    d4_apply,
    neighbor_across_wall,
    parse_chamber,
    partition_set_table,
    semistable_parabolic_exists,
    vertex_of_subset,
    wall_list,
)
from .bundles import (
    AutElement,
    HiggsField,
    LineSubbundle,
    MarkedPoints,
    QuasiParabolicHiggs,
    Splitting,
    apply_automorphism,
    det_scalar,
    ev_blowup,
    flags_subset,
    higgs_divisor,
    interpolate,
    kernel_line,
    orbit_invariant,
    orbit_stratum_of_point,
    qp_locus,
    quasi_parabolic,
    residue,
)
from .stability import (
    ComponentLabel,
    Verdict,
    component_label,
    conditionally_stable,
    destabilizing_search,
    predicted_stability,
    stratum_label,
)
from .assembly import (
    AssemblyKit,
    WallCrossingMap,
    assembly_kit,
    bulk_cover_coords,
    fixed_loci,
    glue,
    hitchin_sections,
    hn_strata,
    s_equivalence,
    wall_cross,
)
from .chambergeom import wall_crossing_graph
from .jumping import jumping_cocycle

__all__ = [name for name in dir() if not name.startswith("_")]
