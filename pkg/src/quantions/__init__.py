"""Quantions: the associative non-division algebra of 2x2 complex matrices,
with quantal-algebra identity checks and a verification CLI."""

from .core import (
    E1,
    E2,
    E3,
    OMEGA,
    ZERO,
    FourVector,
    NotHermitian,
    NullDivisor,
    Quantion,
    alg_norm,
    beta_geometric,
    beta_mul,
    from_four_vector,
    from_tetrad_components,
    hamilton_product,
    inverse,
    met_norm,
    minkowski_dot,
    null_tetrad,
    pauli_decompose,
    quaternion_embed,
    sharp,
    star,
    to_four_vector,
)
from .poly import PolyObservable, poisson_bracket
from .quantal import (
    BiAlgebra,
    VerificationReport,
    beta_from,
    centralizer,
    check_jacobi,
    check_leibniz,
    check_petersen,
    compose,
    hermitian_algebra,
    jj_check,
    kahler_decompose,
    poisson_algebra,
    realsym_algebra,
    run_suite,
)
from .representations import CurrentClass, LeftQuantion, act_left, act_right, left_rep, zovko_current
from .tables import BasisTable, basis_table, golden_table

__version__ = "0.1.0"
