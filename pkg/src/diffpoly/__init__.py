"""Exact arithmetic and structure checks for differential polynomial rings R[x; d] over finite rings."""

__version__ = "0.1.0"

from .config import Bounds, DEFAULT_BOUNDS
from .errors import (
    BoundExceeded,
    DerivationError,
    DiffPolyError,
    IdealError,
    InvariantError,
    NotQuasiDuo,
    RingAxiomError,
)
from .rings import (
    FiniteRing,
    gf,
    make_ring,
    matrix,
    polymod,
    product,
    quotient,
    table_ring,
    triangular,
    zmod,
)
from .ideals import (
    Ideal,
    Quotient,
    enumerate_ideals,
    enumerate_maximal_ideals,
    ideal_closure,
    jacobson_radical,
    maximal_field_ideals,
    nilradical,
    quotient_ring,
)
from .derivation import (
    Derivation,
    delta_core,
    delta_stable,
    derivation_from_pairs,
    induced_derivation,
    inner_derivation,
    validate_derivation,
    zero_derivation,
)
from .orepoly import (
    FieldPoly,
    OrePoly,
    OreRing,
    PhiMap,
    PolySpan,
    irreducible_monics,
    monic_division,
    phi_map,
    quotient_field,
)
from .analyzer import (
    MaxIdealHandle,
    RadicalReport,
    Verdict,
    decompose_max_ideal,
    enumerate_max_ideals,
    membership,
    quasi_duo,
    quasi_regular_inverse,
    radical_report,
    two_sided_check,
)
from .multivar import (
    MContext,
    MPoly,
    corner_closure_report,
    corner_split,
    m_mul,
    multivar_quasi_duo,
    support,
)
