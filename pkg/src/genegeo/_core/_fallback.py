"""NumPy implementations of the hot kernels.

Semantically identical to the compiled extension in ``_speedups.pyx``;
used whenever the extension was not built.  Bit chromosomes travel as
uint64 words (one locus per bit), exchange masks as uint64 words with the
same layout and bit 0 always clear (the segment before the first cut is
never exchanged).
"""

from __future__ import annotations

import numpy as np

from .common import BitSweepResult, RealSweepResult

BACKEND = "python"

# rank-pair code (lo * 4 + hi) of the two offspring -> census label index
_PAIR_CODE = np.full(16, -1, dtype=np.int64)
for _i, (_lo, _hi) in enumerate([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]):
    _PAIR_CODE[_lo * 4 + _hi] = _i


def census_bits(n_bits: int) -> np.ndarray:
    """Classify every (parent pair, reference, mask) quartet of one length.

    Enumerates all 2^(3n) ordered chromosome triples and all
    2^(n-1) - 1 exchange masks, classifying the quartet by Hamming
    distance to the reference.  Returns int64 counts in OUTCOME_ORDER.
    """
    if not 2 <= n_bits <= 12:
        raise ValueError(f"census supports 2..12 bits, got {n_bits}")
    size = 1 << n_bits
    words = np.arange(size, dtype=np.uint64)
    pa = words[:, None, None]
    pb = words[None, :, None]
    rr = words[None, None, :]
    d_pa = np.bitwise_count(pa ^ rr).astype(np.int64)
    d_pb = np.bitwise_count(pb ^ rr).astype(np.int64)
    counts = np.zeros(7, dtype=np.int64)
    for half in range(1, 1 << (n_bits - 1)):
        exch = np.uint64(half << 1)
        keep = np.uint64(~exch & np.uint64(size - 1))
        oa = (pa & keep) | (pb & exch)
        ob = (pb & keep) | (pa & exch)
        d_oa = np.bitwise_count(oa ^ rr).astype(np.int64)
        d_ob = np.bitwise_count(ob ^ rr).astype(np.int64)
        tie = (
            (d_oa == d_ob)
            | (d_oa == d_pa)
            | (d_oa == d_pb)
            | (d_ob == d_pa)
            | (d_ob == d_pb)
            | (d_pa == d_pb)
        )
        r_oa = (
            (d_oa > d_pa).astype(np.int64) + (d_oa > d_pb) + (d_oa > d_ob)
        )
        r_ob = (
            (d_ob > d_pa).astype(np.int64) + (d_ob > d_pb) + (d_ob > d_oa)
        )
        code = np.minimum(r_oa, r_ob) * 4 + np.maximum(r_oa, r_ob)
        label = np.where(tie, 6, _PAIR_CODE[code])
        counts += np.bincount(label.ravel(), minlength=7)
    return counts


def bit_sweep(pa, pb, rr, masks) -> BitSweepResult:
    """Check the crossover conservation identities on bit chromosomes.

    For every triple (pa, pb, rr) with its exchange mask: the offspring
    pair must be at the same Hamming distance as the parent pair, and the
    two Hamming distances to the reference must have a conserved sum.
    Both identities are exact on bits, and cover every finite p (per-locus
    differences are 0 or 1, so |d|^p == |d|).
    """
    pa = np.asarray(pa, dtype=np.uint64)
    pb = np.asarray(pb, dtype=np.uint64)
    rr = np.asarray(rr, dtype=np.uint64)
    masks = np.asarray(masks, dtype=np.uint64)
    keep = ~masks
    oa = (pa & keep) | (pb & masks)
    ob = (pb & keep) | (pa & masks)
    pc = lambda x: np.bitwise_count(x).astype(np.int64)
    pair_bad = np.count_nonzero(pc(pa ^ pb) != pc(oa ^ ob))
    sum_bad = np.count_nonzero(pc(pa ^ rr) + pc(pb ^ rr) != pc(oa ^ rr) + pc(ob ^ rr))
    return BitSweepResult(int(pair_bad), int(sum_bad))


def _pow_sums(diff: np.ndarray, p: int) -> np.ndarray:
    if p == 1:
        return diff.sum(axis=1)
    if p == 2:
        return (diff * diff).sum(axis=1)
    if p == 3:
        return (diff * diff * diff).sum(axis=1)
    return (diff**p).sum(axis=1)


def _rel_dev(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    scale = np.maximum(np.abs(lhs), np.abs(rhs))
    with np.errstate(invalid="ignore", divide="ignore"):
        dev = np.abs(lhs - rhs) / scale
    return np.where(scale > 0, dev, 0.0)


def real_sweep(pa, pb, rr, exchange, p_values, rtol) -> RealSweepResult:
    """Check the conservation identities on batches of real chromosomes.

    pa/pb/rr are (T, N) float64 gene arrays, exchange a (T, N) boolean
    pattern (column 0 all False).  For each p the offspring pair L_p
    distance must match the parents' and the p-th-power sums to the
    reference must agree within rtol; the L_inf pair distance must match
    exactly, while the L_inf sums are merely counted (they are genuinely
    not conserved).
    """
    p_values = tuple(int(p) for p in p_values)
    if len(p_values) > 16:
        raise ValueError("at most 16 p values per sweep")
    if any(p < 1 for p in p_values):
        raise ValueError("p values must be >= 1")
    pa = np.asarray(pa, dtype=np.float64)
    pb = np.asarray(pb, dtype=np.float64)
    rr = np.asarray(rr, dtype=np.float64)
    exchange = np.asarray(exchange, dtype=bool)
    if not (pa.shape == pb.shape == rr.shape == exchange.shape):
        raise ValueError("pa, pb, rr and exchange must share one (T, N) shape")
    oa = np.where(exchange, pb, pa)
    ob = np.where(exchange, pa, pb)

    d_pp = np.abs(pa - pb)
    d_oo = np.abs(oa - ob)
    d_par = np.abs(pa - rr)
    d_pbr = np.abs(pb - rr)
    d_oar = np.abs(oa - rr)
    d_obr = np.abs(ob - rr)

    pair_viol = []
    sum_viol = []
    worst = 0.0
    for p in p_values:
        pair_dist_parents = _pow_sums(d_pp, p) ** (1.0 / p)
        pair_dist_children = _pow_sums(d_oo, p) ** (1.0 / p)
        pair_viol.append(int(np.count_nonzero(_rel_dev(pair_dist_parents, pair_dist_children) > rtol)))
        lhs = _pow_sums(d_par, p) + _pow_sums(d_pbr, p)
        rhs = _pow_sums(d_oar, p) + _pow_sums(d_obr, p)
        dev = _rel_dev(lhs, rhs)
        sum_viol.append(int(np.count_nonzero(dev > rtol)))
        worst = max(worst, float(dev.max()) if dev.size else 0.0)

    linf_pair = int(np.count_nonzero(_rel_dev(d_pp.max(axis=1), d_oo.max(axis=1)) > rtol))
    linf_lhs = d_par.max(axis=1) + d_pbr.max(axis=1)
    linf_rhs = d_oar.max(axis=1) + d_obr.max(axis=1)
    linf_sum = int(np.count_nonzero(_rel_dev(linf_lhs, linf_rhs) > rtol))
    return RealSweepResult(tuple(pair_viol), tuple(sum_viol), linf_pair, linf_sum, worst)
