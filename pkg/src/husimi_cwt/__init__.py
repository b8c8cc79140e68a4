"""Entangled Husimi distributions of two-mode states via complex wavelet transforms."""

from .cwt import CwtQuery, cwt_operator_route, cwt_point, displace_op_fock, squeeze_op_fock, u2_vacuum
from .eta import admissibility_integral, conj_wavefunction_continued, eta_overlap_fock, eta_wavefunction
from .fock import (
    NumericGuardError,
    TruncationError,
    TwoModeState,
    inner_product,
    make_coherent,
    make_fock,
    make_tmsv,
    mode_operator,
    normalize,
)
from .husimi import (
    PhasePoint,
    WignerFunction,
    husimi_coherent_closed_form,
    husimi_route_cwt,
    husimi_route_overlap,
    husimi_route_smoothing,
    map_phase_point,
    normalization_check,
    squeezed_coherent_fock,
    wigner_value,
)
from .quad import QuadratureRule, gauss_hermite, integrate_c2, integrate_plane
from .series import SeriesPoly, hermite2, hermite2_table, poly_exp

__version__ = "0.1.0"
