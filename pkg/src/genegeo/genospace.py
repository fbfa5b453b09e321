"""Genotype space: schemas, chromosomes and the distance functions on them.

A chromosome is a fixed-length sequence of genes.  Every gene position
(locus) has a declared kind -- bit, bounded integer, or finite real -- and
all chromosomes conform to an explicit, shared :class:`Schema`.  Distances
between chromosomes come in three flavours: Hamming (count of differing
loci), the L_p family for finite integer p, and L_inf (max coordinate
difference).

Integer and bit genes use exact integer arithmetic throughout so that the
conservation identities checked elsewhere in the package hold bit-exactly;
real genes use double precision with a documented 1e-9 relative tolerance.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence


class GenospaceError(ValueError):
    """Base class for all genotype-space errors."""


class SchemaMismatchError(GenospaceError):
    """Chromosomes from different schemas were combined."""


class MetricError(GenospaceError):
    """A metric was paired with a schema it is not defined for."""


class InvalidGeneError(GenospaceError):
    """A gene value violates its locus kind or bounds."""


class GeneKind(enum.Enum):
    BIT = "bit"
    INT = "int"
    REAL = "real"


@dataclass(frozen=True)
class Locus:
    """One gene position: its kind and, where applicable, its bounds.

    Bit loci are fixed to bounds (0, 1).  Integer loci require explicit
    inclusive bounds, which are enforced on every gene value.  Real loci
    may carry bounds for initialization and mutation, but gene values are
    only required to be finite.
    """

    kind: GeneKind
    low: float | int | None = None
    high: float | int | None = None

    def __post_init__(self):
        if self.kind is GeneKind.BIT:
            object.__setattr__(self, "low", 0)
            object.__setattr__(self, "high", 1)
            return
        if self.kind is GeneKind.INT:
            if self.low is None or self.high is None:
                raise GenospaceError("integer loci require explicit bounds")
            if int(self.low) != self.low or int(self.high) != self.high:
                raise GenospaceError("integer locus bounds must be integers")
            object.__setattr__(self, "low", int(self.low))
            object.__setattr__(self, "high", int(self.high))
        elif self.kind is GeneKind.REAL:
            if (self.low is None) != (self.high is None):
                raise GenospaceError("real locus bounds must be given together")
            if self.low is not None:
                object.__setattr__(self, "low", float(self.low))
                object.__setattr__(self, "high", float(self.high))
                if not (math.isfinite(self.low) and math.isfinite(self.high)):
                    raise GenospaceError("real locus bounds must be finite")
        if self.low is not None and self.low > self.high:
            raise GenospaceError(f"locus bounds reversed: {self.low} > {self.high}")


@dataclass(frozen=True)
class Schema:
    """Shared locus layout that every conforming chromosome references.

    The schema is an explicit object (not implied by gene values) so that
    crossover and metric validity can be checked up front.
    """

    id: str
    loci: tuple[Locus, ...]

    def __post_init__(self):
        object.__setattr__(self, "loci", tuple(self.loci))
        if len(self.loci) < 1:
            raise GenospaceError("schema needs at least one locus")

    @classmethod
    def bits(cls, schema_id: str, length: int) -> "Schema":
        return cls(schema_id, tuple(Locus(GeneKind.BIT) for _ in range(length)))

    @classmethod
    def integers(cls, schema_id: str, length: int, low: int, high: int) -> "Schema":
        return cls(schema_id, tuple(Locus(GeneKind.INT, low, high) for _ in range(length)))

    @classmethod
    def reals(cls, schema_id: str, length: int, low: float, high: float) -> "Schema":
        return cls(schema_id, tuple(Locus(GeneKind.REAL, low, high) for _ in range(length)))

    @property
    def length(self) -> int:
        return len(self.loci)

    @property
    def is_discrete(self) -> bool:
        """True when no locus is real-valued."""
        return all(l.kind is not GeneKind.REAL for l in self.loci)

    @property
    def is_continuous(self) -> bool:
        """True when every locus is real-valued."""
        return all(l.kind is GeneKind.REAL for l in self.loci)

    def bit_length(self) -> int:
        """Total number of bits needed to encode one chromosome.

        Bit loci contribute 1, integer loci the width of their range.
        Undefined for real loci.
        """
        total = 0
        for locus in self.loci:
            if locus.kind is GeneKind.BIT:
                total += 1
            elif locus.kind is GeneKind.INT:
                total += max(1, math.ceil(math.log2(locus.high - locus.low + 1)))
            else:
                raise MetricError("bit_length is undefined for real loci")
        return total


def _normalize_gene(value, locus: Locus):
    if locus.kind is GeneKind.REAL:
        try:
            v = float(value)
        except (TypeError, ValueError):
            raise InvalidGeneError(f"real gene must be a number, got {value!r}") from None
        if not math.isfinite(v):
            raise InvalidGeneError(f"real gene must be finite, got {value!r}")
        return v
    if isinstance(value, float):
        if not value.is_integer():
            raise InvalidGeneError(f"non-integer value {value!r} for {locus.kind.value} locus")
        value = int(value)
    try:
        v = int(value)
    except (TypeError, ValueError):
        raise InvalidGeneError(f"{locus.kind.value} gene must be an integer, got {value!r}") from None
    if locus.kind is GeneKind.BIT:
        if v not in (0, 1):
            raise InvalidGeneError(f"bit gene must be 0 or 1, got {value!r}")
        return v
    if not (locus.low <= v <= locus.high):
        raise InvalidGeneError(f"integer gene {v} outside bounds [{locus.low}, {locus.high}]")
    return v


@dataclass(frozen=True)
class Chromosome:
    """Immutable point in genotype space: a gene tuple plus its schema."""

    schema: Schema
    genes: tuple

    def __post_init__(self):
        genes = tuple(self.genes)
        if len(genes) != self.schema.length:
            raise InvalidGeneError(
                f"chromosome length {len(genes)} != schema length {self.schema.length}"
            )
        object.__setattr__(
            self, "genes", tuple(_normalize_gene(g, l) for g, l in zip(genes, self.schema.loci))
        )

    @property
    def schema_id(self) -> str:
        return self.schema.id

    def __len__(self) -> int:
        return len(self.genes)

    def replace_genes(self, genes: Iterable) -> "Chromosome":
        return Chromosome(self.schema, tuple(genes))


class MetricKind(enum.Enum):
    HAMMING = "hamming"
    LP = "lp"
    LINF = "linf"


@dataclass(frozen=True)
class MetricSpec:
    """Which distance is in force: Hamming, L_p (finite integer p), or L_inf."""

    kind: MetricKind
    p: int | None = None

    def __post_init__(self):
        if not isinstance(self.kind, MetricKind):
            raise MetricError(f"kind must be a MetricKind, got {self.kind!r}")
        if self.kind is MetricKind.LP:
            if self.p is None or int(self.p) != self.p or self.p < 1:
                raise MetricError(f"L_p metric needs finite integer p >= 1, got {self.p!r}")
            object.__setattr__(self, "p", int(self.p))
        elif self.p is not None:
            raise MetricError(f"{self.kind.value} metric takes no p parameter")

    @classmethod
    def hamming(cls) -> "MetricSpec":
        return cls(MetricKind.HAMMING)

    @classmethod
    def lp(cls, p: int) -> "MetricSpec":
        return cls(MetricKind.LP, p)

    @classmethod
    def linf(cls) -> "MetricSpec":
        return cls(MetricKind.LINF)

    def require_valid_for(self, schema: Schema) -> None:
        """Hamming needs equality-comparable loci, so real loci are rejected."""
        if self.kind is MetricKind.HAMMING and not schema.is_discrete:
            raise MetricError("Hamming distance is only defined for bit/integer loci")


HAMMING = MetricSpec.hamming()
L1 = MetricSpec.lp(1)
L2 = MetricSpec.lp(2)
LINF = MetricSpec.linf()


def _require_shared_schema(*chromosomes: Chromosome) -> Schema:
    schema = chromosomes[0].schema
    for c in chromosomes[1:]:
        if c.schema != schema:
            raise SchemaMismatchError(
                f"chromosomes belong to different schemas: {schema.id!r} vs {c.schema_id!r}"
            )
    return schema


def distance(a: Chromosome, b: Chromosome, metric: MetricSpec):
    """Distance between two chromosomes under the given metric.

    Returns an exact int for Hamming (and for L_inf on discrete schemas),
    otherwise a float.  Symmetric, and zero iff the chromosomes coincide.
    """
    schema = _require_shared_schema(a, b)
    metric.require_valid_for(schema)
    if metric.kind is MetricKind.HAMMING:
        return sum(1 for x, y in zip(a.genes, b.genes) if x != y)
    if metric.kind is MetricKind.LINF:
        return max(abs(x - y) for x, y in zip(a.genes, b.genes))
    total = distance_pow(a, b, metric.p)
    if metric.p == 1:
        return float(total)
    return float(total) ** (1.0 / metric.p)


def distance_pow(a: Chromosome, b: Chromosome, p: int):
    """Sum of |a_k - b_k|^p over loci: the p-th power of the L_p distance.

    This is the quantity that crossover conserves, so it is kept exact
    (Python integer arithmetic) whenever both chromosomes are discrete.
    """
    if int(p) != p or p < 1:
        raise MetricError(f"p must be a finite integer >= 1, got {p!r}")
    _require_shared_schema(a, b)
    return sum(abs(x - y) ** p for x, y in zip(a.genes, b.genes))


def chromosome_to_json(c: Chromosome) -> str:
    """Serialize to a JSON document: gene array plus schema reference."""
    return json.dumps({"schema": c.schema_id, "genes": list(c.genes)})


def chromosome_from_json(doc: str, schema: Schema) -> Chromosome:
    """Parse a chromosome serialized by :func:`chromosome_to_json`.

    Integer and bit genes round-trip exactly; the schema reference in the
    document must name the supplied schema.
    """
    obj = json.loads(doc)
    if obj.get("schema") != schema.id:
        raise SchemaMismatchError(
            f"document references schema {obj.get('schema')!r}, expected {schema.id!r}"
        )
    genes = obj["genes"]
    if not isinstance(genes, Sequence):
        raise InvalidGeneError("'genes' must be an array")
    return Chromosome(schema, tuple(genes))
