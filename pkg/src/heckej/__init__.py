"""Exact computation in the asymptotic ring J of an extended affine Weyl
group of rank at most 2, together with the SL(2) convolution picture that
realizes J inside the Iwahori Hecke algebra of SL(2, F).

The core pipeline: Kazhdan-Lusztig polynomials and canonical bases
(:mod:`heckej.hecke`), structure constants and the a-function with a
certified truncation radius (:mod:`heckej.asymptotic`), and an
independent finite-quotient counting oracle for the SL(2) volumes and
convolutions (:mod:`heckej.sl2`).  All arithmetic is exact: Laurent
polynomials over Z, rationals, and rational functions of q.
"""

from .errors import (
    BudgetExceeded,
    DepthTooSmall,
    DivergentTail,
    GroupMismatch,
    HeckejError,
    NonInvertibleTerm,
    NotInAPlus,
    RadiusExceeded,
    UnsupportedType,
)
from .laurent import ONE, V, VINV, ZERO, Laurent, QuadExt
from .weyl import GroupDescriptor, GroupElement, WeylGroup, bruhat_leq, make_group
from .hecke import (
    BASES,
    HeckeAlgebra,
    HeckeElement,
    KLTable,
    StructureConstants,
    hecke_algebra,
)
from .asymptotic import (
    AValue,
    JElement,
    JRing,
    JTensorAElement,
    certification_bound,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "HeckejError",
    "UnsupportedType",
    "GroupMismatch",
    "RadiusExceeded",
    "NotInAPlus",
    "NonInvertibleTerm",
    "DivergentTail",
    "DepthTooSmall",
    "BudgetExceeded",
    "Laurent",
    "QuadExt",
    "ZERO",
    "ONE",
    "V",
    "VINV",
    "GroupDescriptor",
    "GroupElement",
    "WeylGroup",
    "make_group",
    "bruhat_leq",
    "BASES",
    "HeckeElement",
    "HeckeAlgebra",
    "hecke_algebra",
    "KLTable",
    "StructureConstants",
    "AValue",
    "JElement",
    "JTensorAElement",
    "JRing",
    "certification_bound",
]
