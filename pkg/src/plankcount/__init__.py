"""Exact cube-vertex counting for planks and tangent half-spaces of the unit ball."""

from .bounds import (
    Verdict,
    antipodal_free_check,
    bound_report,
    centroid_witness,
    lemma1_bound,
    observation2_check,
    pi_map,
    theorem1_bound,
    verify_lemma1,
    verify_theorem1,
    verify_tomaszewski,
)
from .core import (
    BoundReport,
    CentroidWitness,
    HalfSpaceCount,
    IntWeightVector,
    PlankCount,
    SearchResult,
    SignVertex,
    WeightVector,
    antipode,
    normalize,
    vertex_decode,
)
from .engine import (
    EnumConfig,
    count_halfspace,
    count_parallel,
    count_plank_exact,
    count_plank_gray,
    count_plank_naive,
)
from .search import (
    SearchConfig,
    family_count,
    givens_perturb,
    local_search,
    objective,
    sample_unit_vector,
    search_minimum,
)

__version__ = "0.1.0"
