"""Selection curves: monotone maps from fitness to selection probability.

Soft curves keep every probability strictly inside (0, 1): the poorest
individuals are never written off completely, and the best never get a
guarantee.  The two built-in soft shapes are centered on the population
median and scaled by the interquartile range, recomputed from each new
generation; the arctan shape is the softer of the two (its tails approach
0 and 1 more slowly than tanh's).  Hard threshold selection is the step
function that is 0 below the threshold and 1 at or above it; its adaptive
variant re-derives the threshold from an average of the previous
generation's fitnesses.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Callable

from .genospace import GenospaceError

MAXIMIZE = "maximize"
MINIMIZE = "minimize"

#: Curve names addressable from engine/harness configuration.
CURVE_NAMES = ("arctan", "tanh", "hard", "adaptive-hard")

# open-interval clamp: soft curves must not emit exactly 0 or 1 even where
# double precision saturates
_P_LOW = math.nextafter(0.0, 1.0)
_P_HIGH = math.nextafter(1.0, 0.0)


class SelectionError(GenospaceError):
    """Invalid selection curve parameters or inputs."""


def _require_direction(direction: str) -> None:
    if direction not in (MAXIMIZE, MINIMIZE):
        raise SelectionError(f"direction must be {MAXIMIZE!r} or {MINIMIZE!r}, got {direction!r}")


def _require_finite(k) -> float:
    k = float(k)
    if not math.isfinite(k):
        raise SelectionError(f"fitness must be finite, got {k!r}")
    return k


def _clamp_open(p: float) -> float:
    return min(max(p, _P_LOW), _P_HIGH)


@dataclass(frozen=True)
class QuartileSummary:
    """Fitness quartiles of one generation plus the scaling denominator.

    The denominator is the interquartile range, replaced by 1 when the
    range collapses to zero so the curves stay defined on degenerate
    populations.
    """

    f_quarter: float
    f_half: float
    f_threequarter: float

    def __post_init__(self):
        if not (self.f_quarter <= self.f_half <= self.f_threequarter):
            raise SelectionError(
                f"quartiles out of order: {self.f_quarter}, {self.f_half}, {self.f_threequarter}"
            )

    @property
    def denom(self) -> float:
        spread = self.f_threequarter - self.f_quarter
        return spread if spread > 0 else 1.0


def quartiles(fitnesses) -> QuartileSummary:
    """Quartiles by linear interpolation between order statistics.

    Quartile precision barely matters for selection; one method is fixed
    for reproducibility.  A single-element population yields all three
    quartiles equal to that element.
    """
    values = sorted(_require_finite(f) for f in fitnesses)
    if not values:
        raise SelectionError("cannot take quartiles of an empty population")

    def at(alpha: float) -> float:
        h = alpha * (len(values) - 1)
        lo = math.floor(h)
        hi = math.ceil(h)
        if lo == hi:
            return values[lo]
        return values[lo] + (h - lo) * (values[hi] - values[lo])

    return QuartileSummary(at(0.25), at(0.5), at(0.75))


@dataclass(frozen=True)
class ArctanQuartile:
    """c(k) = 1/2 + arctan(2 (k - median) / IQR) / pi, mirrored for minimization."""

    summary: QuartileSummary
    direction: str = MAXIMIZE

    def __post_init__(self):
        _require_direction(self.direction)

    def probability(self, k) -> float:
        z = 2.0 * (_require_finite(k) - self.summary.f_half) / self.summary.denom
        if self.direction == MINIMIZE:
            z = -z
        return _clamp_open(0.5 + math.atan(z) / math.pi)


@dataclass(frozen=True)
class TanhQuartile:
    """c(k) = 1/2 + tanh(2 (k - median) / IQR) / 2, mirrored for minimization."""

    summary: QuartileSummary
    direction: str = MAXIMIZE

    def __post_init__(self):
        _require_direction(self.direction)

    def probability(self, k) -> float:
        z = 2.0 * (_require_finite(k) - self.summary.f_half) / self.summary.denom
        if self.direction == MINIMIZE:
            z = -z
        return _clamp_open(0.5 + math.tanh(z) / 2.0)


@dataclass(frozen=True)
class HardThreshold:
    """Step selection: probability 0 strictly below the threshold, 1 at or above.

    Under minimization the step is mirrored: 1 at or below the threshold.
    """

    n0: float
    direction: str = MAXIMIZE

    def __post_init__(self):
        _require_direction(self.direction)
        object.__setattr__(self, "n0", _require_finite(self.n0))

    def probability(self, k) -> float:
        k = _require_finite(k)
        if self.direction == MINIMIZE:
            return 1.0 if k <= self.n0 else 0.0
        return 1.0 if k >= self.n0 else 0.0


@dataclass(frozen=True)
class ExplicitSequence:
    """User-supplied strictly increasing map from fitness into (0, 1).

    Monotonicity cannot be checked globally for a callable; outputs are
    validated and clamped into the open interval at evaluation time.
    """

    fn: Callable[[float], float]

    def probability(self, k) -> float:
        p = float(self.fn(_require_finite(k)))
        if not 0.0 <= p <= 1.0 or not math.isfinite(p):
            raise SelectionError(f"sequence value {p!r} outside [0, 1]")
        return _clamp_open(p)


def select_probability(curve, k) -> float:
    """Evaluate any selection curve at fitness k."""
    return curve.probability(k)


def adaptive_threshold(fitnesses, average: str = "mean", direction: str = MAXIMIZE) -> HardThreshold:
    """Hard threshold re-derived from the current population's fitnesses.

    Any average works in principle; the arithmetic mean is the default and
    the median is available for populations with tightly clustered values.
    """
    values = [_require_finite(f) for f in fitnesses]
    if not values:
        raise SelectionError("cannot derive a threshold from an empty population")
    if average == "mean":
        n0 = sum(values) / len(values)
    elif average == "median":
        n0 = statistics.median(values)
    else:
        raise SelectionError(f"unknown average {average!r} (use 'mean' or 'median')")
    return HardThreshold(n0, direction)


def build_curve(
    name: str,
    fitnesses,
    direction: str = MAXIMIZE,
    n0: float | None = None,
    average: str = "mean",
):
    """Construct this generation's curve from its fitness distribution.

    The quartile curves are refit to the generation at hand; "hard" uses
    the fixed threshold n0; "adaptive-hard" re-derives it from the
    fitnesses.
    """
    if name == "arctan":
        return ArctanQuartile(quartiles(fitnesses), direction)
    if name == "tanh":
        return TanhQuartile(quartiles(fitnesses), direction)
    if name == "hard":
        if n0 is None:
            raise SelectionError("hard selection needs an explicit threshold n0")
        return HardThreshold(n0, direction)
    if name == "adaptive-hard":
        return adaptive_threshold(fitnesses, average, direction)
    raise SelectionError(f"unknown curve {name!r}; expected one of {CURVE_NAMES}")
