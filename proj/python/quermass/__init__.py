"""Orlicz mixed volumes and affine quermassintegrals of convex bodies in dimensions 2 to 4."""

import json

from ._quermass import (
    REPORT_SCHEMA,
    ComputationError,
    ConfigError,
    ConvexBody,
    InvalidInput,
    OrliczFunction,
    affine_quermassintegral,
    corpus,
    default_eps_schedule,
    dilate,
    first_variation_volume,
    load_body,
    lp_mixed_volume,
    mixed_volume_v1,
    normalized_exp,
    omega,
    orlicz_mixed_affine_quermassintegral,
    orlicz_mixed_volume,
    orlicz_sum,
    orlicz_support,
    outer_polytope,
    parse_phi,
    power,
    volume,
)
from ._quermass import run_suite as _run_suite


def verify(config=None):
    """Run a verification suite and return the parsed report.

    `config` is a dict with the fields of a suite configuration file.
    """
    return json.loads(_run_suite(json.dumps(config or {})))


__all__ = [
    "REPORT_SCHEMA",
    "ComputationError",
    "ConfigError",
    "ConvexBody",
    "InvalidInput",
    "OrliczFunction",
    "affine_quermassintegral",
    "corpus",
    "default_eps_schedule",
    "dilate",
    "first_variation_volume",
    "load_body",
    "lp_mixed_volume",
    "mixed_volume_v1",
    "normalized_exp",
    "omega",
    "orlicz_mixed_affine_quermassintegral",
    "orlicz_mixed_volume",
    "orlicz_sum",
    "orlicz_support",
    "outer_polytope",
    "parse_phi",
    "power",
    "verify",
    "volume",
]
