"""Milnor algebras of projective hypersurfaces: Groebner bases, resolutions,
Hilbert data, local cohomology and free / nearly free classification."""

from .polyring import Ring, Polynomial, parse_polynomial, jacobian
from .groebner import (
    Ideal,
    groebner_basis,
    syzygy_basis,
    intersect,
    ideal_quotient,
    saturate,
    saturate_wrt_irrelevant,
    krull_dim,
)
from .resolution import minimal_resolution, betti, BettiTable
from .hilbert import hilbert_data, hilbert_series, HilbertData
from .algebra import MilnorAlgebra
from .localcoh import local_cohomology_dims, n_module_dims, hilbert_consistency
from .classify import (
    classify_surface,
    classify_curve,
    saito_determinant_check,
    nearly_free_saito,
    free_predict,
    nearly_free_predict,
)
from .zoo import gen, corpus

__version__ = "0.1.0"
