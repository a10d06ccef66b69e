"""Matrix decompositions over the double (split-complex) and tessarine numbers.

A split matrix is a pair (A, B) of base-field matrices read as
[A,B] = A(1+j)/2 + B^T(1-j)/2 with j^2 = +1. Every function here takes the
components as nested lists (complex entries welcome); omit B to embed an
ordinary matrix as [A, A^T].
"""

from ._core import (
    DoubleMatError,
    bkp,
    conj_transpose,
    in_half_plane,
    inversion_matrix,
    jordan_svd,
    ldl,
    ldu,
    lup,
    lup_restricted,
    mul,
    penrose_check,
    pinv,
    polar,
    qr,
    rrqr,
    run_acceptance,
    svd_lr,
    uniqueness_probe,
    yaglom_classify,
)
from ._core import __version__

__all__ = [
    "DoubleMatError",
    "bkp",
    "conj_transpose",
    "in_half_plane",
    "inversion_matrix",
    "jordan_svd",
    "ldl",
    "ldu",
    "lup",
    "lup_restricted",
    "mul",
    "penrose_check",
    "pinv",
    "polar",
    "qr",
    "rrqr",
    "run_acceptance",
    "svd_lr",
    "uniqueness_probe",
    "yaglom_classify",
    "__version__",
]
