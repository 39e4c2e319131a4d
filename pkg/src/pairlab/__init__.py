"""Desk-scale lab for Tate pairings on tiny curves.

Builds small pairing-friendly curve instances, computes the minimal
signed-digit weight D(a) mod q^k - 1, runs the reduced Tate pairing with
brute-force inversion oracles, solves Diffie-Hellman through pairing
inversion, and exhaustively verifies the Frobenius-descent degree bounds on
a corpus of small curves.
"""

from .errors import (
    ConsistencyError,
    DivisibilityError,
    DomainError,
    InconclusiveError,
    IndeterminateError,
    PairlabError,
    PoleError,
    SizeCapError,
)
from .field import (
    ExtFieldElement,
    FieldElement,
    FieldParams,
    base_params,
    build_extension,
    field_arith,
    frobenius,
    mu_r_generator,
)
from .curve import (
    Curve,
    CurvePoint,
    CurveRecord,
    embedding_degree,
    enumerate_points,
    frobenius_point,
    point_add,
    point_neg,
    scalar_mul,
    scan_corpus,
    torsion_subgroup,
)
from .dweight import (
    DigitWitness,
    DParams,
    check_qminus1_lemma,
    d_weight,
    d_weight_bruteforce,
)
from .funcfield import (
    Divisor,
    TrackedFunction,
    evaluate,
    func_inv,
    func_mul,
    func_pow,
    make_const,
    make_coord,
    make_line,
    make_vertical,
    twist,
)
from .pairing import (
    DhInstance,
    PairingContext,
    build_context,
    dh_trace,
    invert_first,
    invert_second,
    make_dh_instance,
    miller,
    solve_dh,
    tate_reduced,
)
from .bounds import (
    BoundReport,
    BoundScan,
    DescentResult,
    check_bounds,
    check_bounds_custom,
    frobenius_descent,
    scan_bounds,
    verify_descent,
)

__version__ = "0.1.0"
