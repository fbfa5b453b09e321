"""The two-number guessing game: where soft selection earns its keep.

An opponent writes down two distinct numbers; one of them, chosen by a
fair coin, is shown to us, and we must guess whether the hidden number is
higher or lower.  Playing with any strictly increasing sequence {c_k} in
(0, 1) -- upon seeing k, guess "lower" with probability c_k -- wins with
probability

    1/2 + 1/2 * sum over pairs of p(m, n) * (c_m - c_n),   m > n,

which is strictly above one half as soon as the curve is strictly
increasing and the distribution is non-trivial.  A hard 0/1 threshold can
be held to exactly one half by an opponent who keeps both numbers on one
side of it; re-deriving the threshold from the numbers seen restores the
edge.  Supports are finite here: simulation and exact summation both need
finite tables.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .genospace import GenospaceError
from .selection import ExplicitSequence, HardThreshold, select_probability

_SUM_TOL = 1e-12


class DistributionError(GenospaceError):
    """A pair distribution is malformed."""


@dataclass(frozen=True)
class PairDistribution:
    """Finite probability table over ordered number pairs (m, n), m > n."""

    entries: tuple  # of (m, n, probability)

    def __post_init__(self):
        norm = []
        total = 0.0
        positive = 0
        for entry in self.entries:
            m, n, prob = entry
            m = float(m)
            n = float(n)
            prob = float(prob)
            if not (math.isfinite(m) and math.isfinite(n) and math.isfinite(prob)):
                raise DistributionError(f"non-finite entry {entry!r}")
            if m == n:
                raise DistributionError(f"pair numbers must be distinct, got {entry!r}")
            if m < n:
                m, n = n, m
            if prob < 0:
                raise DistributionError(f"negative probability in {entry!r}")
            if prob > 0:
                positive += 1
            total += prob
            norm.append((m, n, prob))
        if not norm:
            raise DistributionError("distribution needs at least one pair")
        if positive == 0:
            raise DistributionError("at least one pair must have positive probability")
        if abs(total - 1.0) > _SUM_TOL:
            raise DistributionError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "entries", tuple(norm))

    @classmethod
    def from_table(cls, table) -> "PairDistribution":
        """Build from a [[m, n, p], ...] table (e.g. parsed from JSON)."""
        return cls(tuple((row[0], row[1], row[2]) for row in table))

    @classmethod
    def from_json(cls, doc: str) -> "PairDistribution":
        return cls.from_table(json.loads(doc))

    def to_table(self) -> list:
        return [[m, n, p] for m, n, p in self.entries]

    def support_values(self) -> tuple:
        """Distinct numbers appearing in any pair, ascending."""
        return tuple(sorted({v for m, n, _ in self.entries for v in (m, n)}))


@dataclass(frozen=True)
class Strategy:
    """Guessing strategy: upon seeing k, guess "lower" with probability curve(k)."""

    curve: object

    def guess_lower_probability(self, k) -> float:
        return select_probability(self.curve, k)


def unit_arctan_sequence() -> ExplicitSequence:
    """The classic strictly increasing sequence c_k = 1/2 + arctan(k)/pi."""
    return ExplicitSequence(lambda k: 0.5 + math.atan(k) / math.pi)


def unit_tanh_sequence() -> ExplicitSequence:
    """Steeper sibling of :func:`unit_arctan_sequence`: c_k = 1/2 + tanh(k)/2."""
    return ExplicitSequence(lambda k: 0.5 + math.tanh(k) / 2.0)


def adaptive_game_threshold(d: PairDistribution) -> HardThreshold:
    """Hard threshold at the expected revealed number.

    Each pair shows either of its numbers with probability 1/2, so the
    threshold is the probability-weighted mean of (m + n) / 2.  On a
    two-valued support this lands exactly midway between the two values.
    """
    n0 = sum(p * (m + n) / 2.0 for m, n, p in d.entries)
    return HardThreshold(n0)


def build_game_curve(name: str, d: PairDistribution, n0: float = 0.0):
    """Named curves for game experiments: arctan | tanh | hard | adaptive-hard."""
    if name == "arctan":
        return unit_arctan_sequence()
    if name == "tanh":
        return unit_tanh_sequence()
    if name == "hard":
        return HardThreshold(n0)
    if name == "adaptive-hard":
        return adaptive_game_threshold(d)
    raise DistributionError(f"unknown game curve {name!r}")


def analytic_win_probability(d: PairDistribution, s: Strategy) -> float:
    """Exact win probability of the strategy against the distribution."""
    edge = sum(
        prob * (s.guess_lower_probability(m) - s.guess_lower_probability(n))
        for m, n, prob in d.entries
    )
    return 0.5 + 0.5 * edge


def simulate_game(d: PairDistribution, s: Strategy, rounds: int, seed) -> float:
    """Play the game for a number of rounds; returns the observed win rate.

    Each round draws a pair, reveals one number by a fair coin, applies
    the strategy and scores the guess.  Deterministic for a fixed seed.
    """
    if rounds < 1:
        raise DistributionError(f"rounds must be >= 1, got {rounds}")
    rng = np.random.default_rng(seed)
    m_vals = np.array([m for m, _, _ in d.entries])
    n_vals = np.array([n for _, n, _ in d.entries])
    probs = np.array([p for _, _, p in d.entries])
    probs = probs / probs.sum()  # exact renormalization for the sampler
    c_m = np.array([s.guess_lower_probability(v) for v in m_vals])
    c_n = np.array([s.guess_lower_probability(v) for v in n_vals])

    idx = rng.choice(len(m_vals), size=rounds, p=probs)
    shown_larger = rng.random(rounds) < 0.5
    c_shown = np.where(shown_larger, c_m[idx], c_n[idx])
    guess_lower = rng.random(rounds) < c_shown
    # shown the larger number -> the hidden one is lower, and conversely
    wins = np.where(shown_larger, guess_lower, ~guess_lower)
    return float(np.count_nonzero(wins)) / rounds
