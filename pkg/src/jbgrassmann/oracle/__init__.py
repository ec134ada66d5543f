"""Independent verification paths and the seeded self-test suite."""

from .checks import (
    OracleReport,
    block_joint_peirce,
    block_peirce,
    box_operator_matrix,
    brute_force_triple,
    commutator_flow,
    eigenspace_peirce,
    operator_flow_series,
    principal_angles,
)
from .suite import CHECKS, format_reports, run_suite

__all__ = [
    "OracleReport",
    "block_joint_peirce",
    "block_peirce",
    "box_operator_matrix",
    "brute_force_triple",
    "commutator_flow",
    "eigenspace_peirce",
    "operator_flow_series",
    "principal_angles",
    "CHECKS",
    "format_reports",
    "run_suite",
]
