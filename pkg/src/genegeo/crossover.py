"""Point crossover and its geometry.

Crossover here is strictly segment exchange: offspring genes are copies of
parent genes, never blends.  That is what makes the conservation laws hold:
the offspring pair differs on exactly the same loci, by exactly the same
amounts, as the parent pair, so any distance built from per-locus
differences is preserved between the pair; and for every finite p the sum
of p-th-power distances of the pair to an arbitrary reference chromosome
is invariant as well.  The max-coordinate (L_inf) distance preserves the
pair distance but not the sums to a reference.

Uniform per-locus crossover would preserve the same identities but is out
of scope; only k-point masks are provided.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .genospace import (
    Chromosome,
    GenospaceError,
    MetricSpec,
    _require_shared_schema,
    distance,
    distance_pow,
)


class MaskError(GenospaceError):
    """A crossover mask is malformed or does not fit the schema."""


class GeometryError(GenospaceError):
    """A requested distance configuration is geometrically impossible."""


@dataclass(frozen=True)
class CrossoverMask:
    """k-point crossover mask: strictly increasing interior cut positions.

    A cut at position c splits the chromosome between loci c-1 and c
    (0-based).  The derived exchange pattern starts at "keep" and toggles
    at every cut, so the segment before the first cut always comes from
    the chromosome's own parent.
    """

    n_loci: int
    cut_points: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cut_points", tuple(self.cut_points))
        if self.n_loci < 2:
            raise MaskError("crossover needs at least 2 loci")
        if not self.cut_points:
            raise MaskError("mask needs at least one cut point")
        prev = 0
        for c in self.cut_points:
            if int(c) != c or c <= prev or c > self.n_loci - 1:
                raise MaskError(
                    f"cut points must be strictly increasing within 1..{self.n_loci - 1}, "
                    f"got {self.cut_points}"
                )
            prev = c

    @classmethod
    def single_point(cls, n_loci: int, cut: int) -> "CrossoverMask":
        return cls(n_loci, (cut,))

    @classmethod
    def k_point(cls, n_loci: int, cuts) -> "CrossoverMask":
        return cls(n_loci, tuple(sorted(int(c) for c in cuts)))

    @classmethod
    def random(cls, n_loci: int, rng, points: int = 1) -> "CrossoverMask":
        """Draw `points` distinct interior cut positions uniformly."""
        if points < 1 or points > n_loci - 1:
            raise MaskError(f"cannot place {points} cut points in {n_loci} loci")
        cuts = rng.choice(n_loci - 1, size=points, replace=False) + 1
        return cls(n_loci, tuple(sorted(int(c) for c in cuts)))

    def exchange_pattern(self) -> tuple[bool, ...]:
        """Per-locus flags: True where genes come from the other parent."""
        pattern = []
        exchanged = False
        cuts = set(self.cut_points)
        for i in range(self.n_loci):
            if i in cuts:
                exchanged = not exchanged
            pattern.append(exchanged)
        return tuple(pattern)


def crossover(p_a: Chromosome, p_b: Chromosome, mask: CrossoverMask):
    """Apply the mask to a parent pair, returning the offspring pair.

    Offspring o_a keeps parent-a genes outside the exchanged segments and
    takes parent-b genes inside them; o_b is the complement.  The multiset
    of values at every locus is preserved across the pair.
    """
    schema = _require_shared_schema(p_a, p_b)
    if mask.n_loci != schema.length:
        raise MaskError(f"mask built for {mask.n_loci} loci, schema has {schema.length}")
    pattern = mask.exchange_pattern()
    genes_a = tuple(b if x else a for a, b, x in zip(p_a.genes, p_b.genes, pattern))
    genes_b = tuple(a if x else b for a, b, x in zip(p_a.genes, p_b.genes, pattern))
    return Chromosome(schema, genes_a), Chromosome(schema, genes_b)


@dataclass(frozen=True)
class TriangleDecomposition:
    """Per-segment p-th-power distance contributions of a parent pair
    against a reference chromosome.

    a1/b1 accumulate over kept loci, a2/b2 over exchanged loci, so that

        a1 + a2 = |p_a - r|_p^p      a1 + b2 = |o_a - r|_p^p
        b1 + b2 = |p_b - r|_p^p      b1 + a2 = |o_b - r|_p^p
    """

    a1: float
    a2: float
    b1: float
    b2: float


def decompose(
    p_a: Chromosome, p_b: Chromosome, r: Chromosome, mask: CrossoverMask, p: int
) -> TriangleDecomposition:
    """Split both parents' distance-to-reference along the mask's segments."""
    schema = _require_shared_schema(p_a, p_b, r)
    if mask.n_loci != schema.length:
        raise MaskError(f"mask built for {mask.n_loci} loci, schema has {schema.length}")
    if int(p) != p or p < 1:
        raise GeometryError(f"p must be a finite integer >= 1, got {p!r}")
    a1 = a2 = b1 = b2 = 0
    for ga, gb, gr, exchanged in zip(p_a.genes, p_b.genes, r.genes, mask.exchange_pattern()):
        da = abs(ga - gr) ** p
        db = abs(gb - gr) ** p
        if exchanged:
            a2 += da
            b2 += db
        else:
            a1 += da
            b1 += db
    return TriangleDecomposition(a1, a2, b1, b2)


def generalized_circumference(x: Chromosome, y: Chromosome, z: Chromosome, p: int):
    """Sum of the three pairwise p-th-power distances of a chromosome triangle.

    Symmetric in its arguments and invariant when any two of the three are
    replaced by their crossover offspring.
    """
    return distance_pow(x, y, p) + distance_pow(x, z, p) + distance_pow(y, z, p)


class OutcomeConfig(enum.Enum):
    """Ordering of a crossover quartet by distance to a reference point.

    Each label lists parents (p) and offspring (o) from nearest to
    farthest.  OOPP and PPOO exist as values but can never be produced by
    :func:`classify_outcome` on genuine crossover results; coincident
    distances map to TIE.
    """

    OOPP = "oopp"
    OPOP = "opop"
    OPPO = "oppo"
    POOP = "poop"
    POPO = "popo"
    PPOO = "ppoo"
    TIE = "tie"


#: Labels in canonical order; kernels report census counts in this order.
OUTCOME_LABELS = tuple(o.value for o in OutcomeConfig)


def classify_outcome(
    p_a: Chromosome,
    p_b: Chromosome,
    o_a: Chromosome,
    o_b: Chromosome,
    r: Chromosome,
    metric: MetricSpec,
) -> OutcomeConfig:
    """Order the four chromosomes by distance to r and emit the p/o pattern.

    Comparisons are exact (no epsilon): the invariants under test are
    identities on the same computed values, and an epsilon would create
    false ties.  Any coincidence among the four distances yields TIE.
    """
    _require_shared_schema(p_a, p_b, o_a, o_b, r)
    tagged = [
        (distance(p_a, r, metric), "p"),
        (distance(p_b, r, metric), "p"),
        (distance(o_a, r, metric), "o"),
        (distance(o_b, r, metric), "o"),
    ]
    values = [d for d, _ in tagged]
    if len(set(values)) < 4:
        return OutcomeConfig.TIE
    tagged.sort(key=lambda t: t[0])
    return OutcomeConfig("".join(tag for _, tag in tagged))


def offspring_distance_tradeoff(d1: float, d2: float, da: float, p: int) -> float:
    """Distance of the second offspring given both parents' and the first
    offspring's distances to a common reference.

    Solves d1^p + d2^p = da^p + db^p for db.  If one offspring moves away
    from the reference, the other moves closer (and vice versa); da == d1
    leaves db == d2 exactly (rigid movement).
    """
    if int(p) != p or p < 1:
        raise GeometryError(f"p must be a finite integer >= 1, got {p!r}")
    if d1 <= 0 or d2 <= 0 or da <= 0:
        raise GeometryError("distances must be strictly positive")
    # grouping the difference first makes da == d1 yield bracket == 1.0 and
    # thus db == d2 bit-exactly (rigid movement)
    bracket = 1.0 + ((d1 / d2) ** p - (da / d2) ** p)
    if bracket < 0:
        raise GeometryError(
            f"impossible configuration: da={da} exceeds the conserved total for d1={d1}, d2={d2}"
        )
    return d2 * bracket ** (1.0 / p)


def outcome_census(max_bits: int = 6, min_bits: int = 2) -> dict:
    """Exhaustively classify every crossover outcome on small bit spaces.

    Enumerates all ordered parent pairs, all reference chromosomes and all
    k-point masks for every chromosome length in [min_bits, max_bits]
    (length 1 admits no interior cut, hence the lower bound), classifying
    each quartet against the reference under Hamming distance.  Returns a
    mapping from :class:`OutcomeConfig` to occurrence count.

    Delegates to the compiled kernel when available; the enumeration is
    ~8.6 million quartets at max_bits=6.
    """
    from . import _core

    if min_bits < 2:
        raise MaskError("census needs at least 2 loci for a cut point")
    if max_bits < min_bits:
        raise GenospaceError(f"max_bits {max_bits} < min_bits {min_bits}")
    totals = [0] * len(OUTCOME_LABELS)
    for n in range(min_bits, max_bits + 1):
        counts = _core.census_bits(n)
        for i, c in enumerate(counts):
            totals[i] += int(c)
    return {OutcomeConfig(label): totals[i] for i, label in enumerate(OUTCOME_LABELS)}
