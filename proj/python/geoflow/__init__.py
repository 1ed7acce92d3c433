"""Geodesic flows on circle diffeomorphism groups and exact Lie symmetry checks."""

from ._geoflow import (
    GeoflowError,
    ad,
    ad_star,
    bott_thurston,
    closure_check,
    compose,
    equations,
    gelfand_fuchs,
    hopf_blowup_estimate,
    invariance_check,
    pairing,
    run_cli,
    run_suite,
    sample,
    schwarzian,
    simulate,
    symmetry_consistency,
    table_closure,
    table_generators,
    table_invariance,
)

__all__ = [
    "GeoflowError",
    "ad",
    "ad_star",
    "bott_thurston",
    "closure_check",
    "compose",
    "equations",
    "gelfand_fuchs",
    "hopf_blowup_estimate",
    "invariance_check",
    "pairing",
    "run_cli",
    "run_suite",
    "sample",
    "schwarzian",
    "simulate",
    "symmetry_consistency",
    "table_closure",
    "table_generators",
    "table_invariance",
]
