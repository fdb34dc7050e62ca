"""Exact computations for basic graded quiver algebras: resolutions, graded Ext, Cartan data and K0."""

from .algebra import build_algebra, radical_power, validate_grading
from .field import FieldSpec
from .ktheory import (
    AbelianGroup,
    GradedGroupSpec,
    cartan_matrix,
    cone_invariant,
    k0_db,
    k0_perf,
    k0_singularity,
    motive_triviality,
)
from .lemma import fixture_sweep, load_manifest, shipped_manifest, verify_decomposition
from .modules import (
    composition_multiplicities,
    hom_graded,
    projective,
    projective_cover,
    radical,
    simple,
    top,
    twist,
)
from .presentation import load_presentation, parse_presentation
from .resolutions import (
    ext_graded,
    global_dimension_probe,
    minimal_graded_resolution,
    verify_resolution_nonnegativity,
)
from .snf import smith_normal_form
from .ungraded import ext_ungraded

__version__ = "0.1.0"
