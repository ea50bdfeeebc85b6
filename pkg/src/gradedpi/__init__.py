"""Hilbert series and graded codimensions of relatively free G-graded PI algebras."""

__version__ = "0.1.0"

from .errors import DomainError
from .groups import (
    Cocycle,
    FiniteGroup,
    Subgroup,
    abelianization_map,
    check_cocycle,
    commutator_subgroup,
    generated_subgroup,
    make_group,
)
from .product_sets import (
    GradingTuple,
    ProductSet,
    component_dimension,
    is_saturated,
    product_set,
    rich_word,
    total_dimension,
)
from .ratfun import MultivariateRational, SparsePoly, UnivariateRational, expand, rational_fit
from .lattice_gf import (
    UpwardSet,
    binomial_series,
    hilbert_gf_component,
    hilbert_gf_total,
    level_set_minimals,
    specialize_univariate,
    upward_gf,
)
from .codimension import CodimRecord, codim, codim_table, exp_estimate
from .generic_algebra import (
    GradedAlgebraSpec,
    MultilinearGradedPoly,
    alternate,
    component_dimension_generic,
    group_algebra_spec,
    is_graded_identity,
)
