"""Quasi-isometric embeddings of sampled doubling spaces into products of trees."""

import json

from . import _core
from ._core import (
    DiaryError,
    StageError,
    encode,
    is_cube_free,
    is_member,
    min_kappa,
    mt_prefix,
    presets,
    reconstruct,
    rest_sentence,
    sigma_absorbed,
)

__all__ = [
    "DiaryError",
    "StageError",
    "encode",
    "is_cube_free",
    "is_member",
    "min_kappa",
    "mt_prefix",
    "presets",
    "reconstruct",
    "rest_sentence",
    "run_pipeline",
    "run_suite",
    "sigma_absorbed",
]


def run_pipeline(preset="", out_dir="", **overrides):
    """Build every stage and return the report as a dict; writes artifacts when out_dir is set."""
    return json.loads(_core.run_pipeline(preset, str(out_dir), overrides))


def run_suite(preset="", suite="all", **overrides):
    """Run one invariant suite and return {suite, config, checks, errors, passed}."""
    return json.loads(_core.run_suite(preset, suite, overrides))
