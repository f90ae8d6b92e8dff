"""p-adic torsion invariants of real quadratic fields.

The public names below are the usual entry points; everything else lives in
the submodules.
"""

from .classgroup import (
    ClassGroupStructure,
    IdealRep,
    class_group_structure,
    ideal_class_order,
    is_principal_with_generator,
    prime_power_ideal,
)
from .errors import QuadTorsError
from .invariants import InvariantReport, ambiguous_class_number, analyze, scan
from .normsolver import norm_solutions
from .padic import fermat_quotient, fermat_quotient_counit, split_embeddings
from .qfield import QuadInt, QuadraticField, elem_arith, fundamental_discriminants, is_split, make_field
from .rayclass import ray_class_structure, torsion_structure
from .stats import (
    ScanSpec,
    SurveyHistogram,
    ell_unit_delta_survey,
    expected_distribution,
    order_survey,
    relation_survey,
    split_prime_stream,
)
from .units import fundamental_unit, p_unit

__version__ = "0.1.0"
