"""Trace functions over F_q[u]: short-interval sums, Fourier transforms, and
empirical verification of square-root cancellation bounds at desk scale."""

from .base_field import Field, field_create
from .characters import (
    AdditiveChar,
    MultChar,
    all_characters,
    mult_char_create,
    primitive_characters,
    principal_character,
)
from .polyring import (
    Poly,
    ResidueField,
    ResidueRing,
    factor_squarefree,
    factor_squarefree_modulus,
    first_irreducible,
    is_irreducible,
    iter_monic,
    iter_monic_squarefree,
    residue_field_create,
)
from .tracefn import (
    KloostermanSpec,
    MixedCharSpec,
    TraceFunction,
    from_kloosterman,
    from_mixed_char,
    tpoly,
    value_set,
)
from .transforms import (
    Interval,
    autocorrelation,
    complete_sum,
    dft,
    inverse_dft,
    perp_space,
    restriction_sum,
    short_sum,
)
from .experiments import (
    hooley_cor_bound,
    mainres_bound,
    mordell_error_budget,
    square_phase_control,
    variance_error_budget,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
