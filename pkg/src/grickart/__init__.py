"""Goldie torsion, Rickart and Goldie Rickart predicates over finite rings and modules."""
from .classifier import (
    PropertyReport,
    classify,
    has_c2,
    has_sip_over_z2,
    has_ssip_over_z2,
    is_abelian_module,
    is_duo,
    is_extending,
    is_goldie_rickart,
    is_indecomposable,
    is_relative_c2,
    is_relative_goldie_rickart,
    is_rickart,
    is_t_baer,
    is_t_extending,
    ring_predicates,
)
from .errors import AlgebraError, SizeError, UnsupportedError, ValidationError
from .harness import InstanceFamily, TheoremCheck, generate_family, oracle_crosschecks, run_theorems, search_counterexample
from .hom import (
    EndRing,
    HomMap,
    end_ring,
    hom_set,
    hom_tables,
    image,
    is_injective_module,
    is_projective_module,
    is_quasi_injective,
    is_quasi_projective,
    is_relatively_injective,
    kernel,
    preimage,
)
from .module import (
    ModuleTable,
    Submodule,
    all_submodules,
    complement,
    direct_sum,
    is_direct_summand,
    is_essential_submodule,
    quotient_module,
    regular_module,
    restrict,
    submodule_generated,
    zbackend_module,
)
from .ring import (
    ZZ,
    IntegerRing,
    RightIdeal,
    RingTable,
    idempotents,
    is_essential_right_ideal,
    is_semisimple,
    is_von_neumann_regular,
    make_matrix_ring,
    make_product,
    make_triangular,
    make_zmod,
    opposite_ring,
    right_ideals,
)
from .syntax import ParseError, parse_spec, to_text
from .torsion import (
    TorsionProfile,
    goldie_torsion,
    is_t_essential,
    preimage_z2,
    singular_submodule,
    t_closed_submodules,
    t_operator,
)

__version__ = "0.1.0"
