"""Shared result types and constants for the kernel backends."""

from __future__ import annotations

from typing import NamedTuple

#: Census label order used by both backends; matches crossover.OUTCOME_LABELS.
OUTCOME_ORDER = ("oopp", "opop", "oppo", "poop", "popo", "ppoo", "tie")


class BitSweepResult(NamedTuple):
    """Violation counts from a batch of bit-chromosome crossover checks."""

    pair_distance_violations: int  # offspring pair distance != parent pair distance
    reference_sum_violations: int  # sum of distances to reference not conserved


class RealSweepResult(NamedTuple):
    """Violation counts and worst deviations from a real-gene sweep.

    Per-p tuples align with the p_values passed in.  The linf sum check is
    expected to fail often; it is reported, not asserted, by callers.
    """

    pair_distance_violations: tuple  # per p: L_p offspring/parent pair distance mismatch
    reference_sum_violations: tuple  # per p: p-th-power sums to reference not conserved
    linf_pair_violations: int  # L_inf offspring/parent pair distance mismatch
    linf_sum_violations: int  # L_inf sums to reference differ (non-conserved metric)
    max_reference_rel_dev: float  # worst relative deviation seen in the p-sum checks
