"""Formal knot complexes over F2[U, U^-1] and their concordance-type invariants."""

from .complexes import (
    CheckResult,
    FkcParseError,
    FormalComplex,
    Generator,
    LatticeElement,
    Subcomplex,
    ValidationReport,
    degrees,
    direct_sum,
    dual,
    genus,
    is_stabilizer,
    parse,
    region_slice,
    reverse,
    serialize,
    tensor,
    validate,
)
from .gf2 import BitMatrix, BitVec, EnumerationLimitError
from .invariants import (
    DEFAULT_ENUM_CAP,
    GLevel,
    GTower,
    HomGenerator,
    INFINITY,
    PLFunction,
    compare,
    contains_hom_generator,
    d_surgery_delta,
    g0,
    g_next,
    g_tower,
    hom_generators,
    nu_plus,
    tau,
    upsilon,
    upsilon2,
    upsilon_at,
    v_k,
)
from .region import ClosedRegion, Point, closure, minimalize, subset, transpose

__all__ = [
    "BitMatrix",
    "BitVec",
    "CheckResult",
    "ClosedRegion",
    "DEFAULT_ENUM_CAP",
    "EnumerationLimitError",
    "FkcParseError",
    "FormalComplex",
    "GLevel",
    "GTower",
    "Generator",
    "HomGenerator",
    "INFINITY",
    "LatticeElement",
    "PLFunction",
    "Point",
    "Subcomplex",
    "ValidationReport",
    "closure",
    "compare",
    "contains_hom_generator",
    "d_surgery_delta",
    "degrees",
    "direct_sum",
    "dual",
    "g0",
    "g_next",
    "g_tower",
    "genus",
    "hom_generators",
    "is_stabilizer",
    "minimalize",
    "nu_plus",
    "parse",
    "region_slice",
    "reverse",
    "serialize",
    "subset",
    "tau",
    "tensor",
    "transpose",
    "upsilon",
    "upsilon2",
    "upsilon_at",
    "v_k",
    "validate",
]
