from ._equidist import (
    MoreDegenerate,
    NoSpecialValues,
    classify,
    cusp_locus_p,
    cusp_series,
    degenerate_mesh,
    generic_mesh,
    invariants,
    landscape,
    origin_counts,
    selfint_locus,
    table1,
)

__all__ = [
    "MoreDegenerate",
    "NoSpecialValues",
    "classify",
    "cusp_locus_p",
    "cusp_series",
    "degenerate_mesh",
    "generic_mesh",
    "invariants",
    "landscape",
    "origin_counts",
    "selfint_locus",
    "table1",
]
