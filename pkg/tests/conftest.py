import itertools

import hypothesis
import pytest
from hypothesis import strategies as st

from genegeo.crossover import CrossoverMask, classify_outcome, crossover
from genegeo.genospace import HAMMING, Chromosome, Schema

hypothesis.settings.register_profile(
    "suite", deadline=None, max_examples=100, derandomize=True
)
hypothesis.settings.load_profile("suite")

BIT_SCHEMAS = {n: Schema.bits(f"bits-{n}", n) for n in range(1, 9)}
INT_SCHEMAS = {n: Schema.integers(f"ints-{n}", n, -8, 8) for n in range(1, 9)}
REAL_SCHEMAS = {n: Schema.reals(f"reals-{n}", n, -100.0, 100.0) for n in range(1, 9)}


def bit_chromosome(n):
    return st.lists(st.integers(0, 1), min_size=n, max_size=n).map(
        lambda g: Chromosome(BIT_SCHEMAS[n], tuple(g))
    )


def int_chromosome(n):
    return st.lists(st.integers(-8, 8), min_size=n, max_size=n).map(
        lambda g: Chromosome(INT_SCHEMAS[n], tuple(g))
    )


def real_chromosome(n):
    finite = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False)
    return st.lists(finite, min_size=n, max_size=n).map(
        lambda g: Chromosome(REAL_SCHEMAS[n], tuple(g))
    )


CHROMOSOME_FACTORIES = {
    "bit": bit_chromosome,
    "int": int_chromosome,
    "real": real_chromosome,
}


@st.composite
def chromosome_triple(draw, kinds=("bit", "int", "real"), min_n=1, max_n=8):
    """Three chromosomes sharing one schema of a random kind and length."""
    kind = draw(st.sampled_from(kinds))
    n = draw(st.integers(min_n, max_n))
    factory = CHROMOSOME_FACTORIES[kind]
    return draw(factory(n)), draw(factory(n)), draw(factory(n))


@st.composite
def mask_for(draw, n):
    k = draw(st.integers(1, n - 1))
    cuts = draw(
        st.lists(st.integers(1, n - 1), min_size=k, max_size=k, unique=True)
    )
    return CrossoverMask(n, tuple(sorted(cuts)))


@st.composite
def crossover_case(draw, kinds=("bit", "int", "real"), min_n=2, max_n=8):
    """(p_a, p_b, r, mask) with a shared schema, any gene kind."""
    p_a, p_b, r = draw(chromosome_triple(kinds=kinds, min_n=min_n, max_n=max_n))
    mask = draw(mask_for(len(p_a)))
    return p_a, p_b, r, mask


def all_masks(n):
    """Every k-point mask on n loci."""
    masks = []
    for k in range(1, n):
        for cuts in itertools.combinations(range(1, n), k):
            masks.append(CrossoverMask(n, cuts))
    return masks


def brute_force_census(n):
    """Classify every quartet of one bit length through the object API.

    Independent oracle for the enumeration kernels: no integer encodings,
    no popcounts, just the public crossover and classification calls.
    """
    schema = BIT_SCHEMAS[n]
    chroms = [Chromosome(schema, bits) for bits in itertools.product((0, 1), repeat=n)]
    counts = {}
    for p_a, p_b in itertools.product(chroms, repeat=2):
        for mask in all_masks(n):
            o_a, o_b = crossover(p_a, p_b, mask)
            for r in chroms:
                label = classify_outcome(p_a, p_b, o_a, o_b, r, HAMMING).value
                counts[label] = counts.get(label, 0) + 1
    return counts


@pytest.fixture(scope="session")
def kernel_backends():
    from genegeo._core import available_backends

    return available_backends()
