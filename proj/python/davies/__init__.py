"""Exact finite-support sum representations of pair functions."""

from ._core import (
    Representation,
    Run,
    ValidationError,
    ad_enumerate,
    ad_member,
    cantor_pair,
    cantor_unpair,
    certify_exp_matrix_nonsingular,
    check_run_conclusions,
    exact_rank,
    exp_enclosure,
    new_representation,
    representation_from_json,
    representation_from_table,
    theta_new,
)

__all__ = [
    "Representation",
    "Run",
    "ValidationError",
    "ad_enumerate",
    "ad_member",
    "cantor_pair",
    "cantor_unpair",
    "certify_exp_matrix_nonsingular",
    "check_run_conclusions",
    "exact_rank",
    "exp_enclosure",
    "new_representation",
    "representation_from_json",
    "representation_from_table",
    "theta_new",
]
