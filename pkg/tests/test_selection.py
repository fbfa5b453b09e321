import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genegeo.selection import (
    MAXIMIZE,
    MINIMIZE,
    ArctanQuartile,
    ExplicitSequence,
    HardThreshold,
    QuartileSummary,
    SelectionError,
    TanhQuartile,
    adaptive_threshold,
    build_curve,
    quartiles,
    select_probability,
)

FITS = [0.0, 1.0, 2.0, 3.0, 4.0]


class TestQuartiles:
    def test_interpolated_order_statistics(self):
        q = quartiles(FITS)
        assert (q.f_quarter, q.f_half, q.f_threequarter) == (1.0, 2.0, 3.0)
        assert q.denom == 2.0

    def test_degenerate_population(self):
        q = quartiles([7.5, 7.5, 7.5])
        assert (q.f_quarter, q.f_half, q.f_threequarter) == (7.5, 7.5, 7.5)
        assert q.denom == 1.0

    def test_single_element(self):
        q = quartiles([5.0])
        assert (q.f_quarter, q.f_half, q.f_threequarter) == (5.0, 5.0, 5.0)
        assert q.denom == 1.0

    def test_two_elements(self):
        q = quartiles([0.0, 1.0])
        assert (q.f_quarter, q.f_half, q.f_threequarter) == (0.25, 0.5, 0.75)

    def test_empty_rejected(self):
        with pytest.raises(SelectionError):
            quartiles([])

    def test_non_finite_rejected(self):
        with pytest.raises(SelectionError):
            quartiles([1.0, float("nan")])

    def test_summary_ordering_enforced(self):
        with pytest.raises(SelectionError):
            QuartileSummary(3.0, 2.0, 1.0)


class TestArctanCurve:
    def test_median_maps_to_half(self):
        curve = ArctanQuartile(quartiles(FITS))
        assert curve.probability(2.0) == 0.5

    def test_hand_value(self):
        curve = ArctanQuartile(quartiles(FITS))
        assert curve.probability(3.0) == pytest.approx(0.75, abs=1e-15)

    def test_minimize_mirrors(self):
        curve = ArctanQuartile(quartiles(FITS), MINIMIZE)
        assert curve.probability(3.0) == pytest.approx(0.25, abs=1e-15)
        assert curve.probability(2.0) == 0.5


class TestTanhCurve:
    def test_median_maps_to_half(self):
        assert TanhQuartile(quartiles(FITS)).probability(2.0) == 0.5

    def test_hand_value(self):
        expected = 0.5 + math.tanh(1.0) / 2.0
        assert TanhQuartile(quartiles(FITS)).probability(3.0) == pytest.approx(expected, abs=1e-15)
        assert expected == pytest.approx(0.8808, abs=5e-5)

    def test_arctan_is_softer_above_median(self):
        # the arctan shape stays closer to 1/2 at every fitness above the
        # median, hence applies gentler pressure
        arctan = ArctanQuartile(quartiles(FITS))
        tanh = TanhQuartile(quartiles(FITS))
        for k in [2.01, 2.5, 3.0, 4.0, 6.0, 10.0, 25.0]:
            assert tanh.probability(k) > arctan.probability(k)

    def test_tanh_softer_below_median_reversed(self):
        arctan = ArctanQuartile(quartiles(FITS))
        tanh = TanhQuartile(quartiles(FITS))
        for k in [-5.0, 0.0, 1.0, 1.99]:
            assert tanh.probability(k) < arctan.probability(k)


class TestHardThreshold:
    def test_step_values(self):
        curve = HardThreshold(0.0)
        assert curve.probability(-1.0) == 0.0
        assert curve.probability(1.0) == 1.0
        assert curve.probability(0.0) == 1.0  # threshold itself is admitted

    def test_minimize_mirrors(self):
        curve = HardThreshold(0.0, MINIMIZE)
        assert curve.probability(-1.0) == 1.0
        assert curve.probability(1.0) == 0.0
        assert curve.probability(0.0) == 1.0


class TestExplicitSequence:
    def test_unit_arctan_value(self):
        curve = ExplicitSequence(lambda k: 0.5 + math.atan(k) / math.pi)
        assert curve.probability(1.0) == pytest.approx(0.75, abs=1e-15)

    def test_rejects_out_of_range(self):
        curve = ExplicitSequence(lambda k: 1.5)
        with pytest.raises(SelectionError):
            curve.probability(0.0)

    def test_clamps_into_open_interval(self):
        curve = ExplicitSequence(lambda k: 1.0)
        assert 0.0 < curve.probability(0.0) < 1.0 or curve.probability(0.0) == pytest.approx(1.0)
        assert curve.probability(0.0) < 1.0


class TestAdaptiveThreshold:
    def test_mean_examples(self):
        assert adaptive_threshold([0.0, 10.0]).n0 == 5.0
        assert adaptive_threshold(FITS).n0 == 2.0

    def test_flat_population_admits_everyone(self):
        curve = adaptive_threshold([1.0, 1.0, 1.0])
        assert curve.n0 == 1.0
        assert all(curve.probability(1.0) == 1.0 for _ in range(3))

    def test_median_option(self):
        assert adaptive_threshold([0.0, 1.0, 100.0], average="median").n0 == 1.0

    def test_unknown_average(self):
        with pytest.raises(SelectionError):
            adaptive_threshold([1.0], average="mode")

    def test_empty_rejected(self):
        with pytest.raises(SelectionError):
            adaptive_threshold([])


class TestSelectProbability:
    def test_dispatch(self):
        assert select_probability(HardThreshold(0.0), 1.0) == 1.0
        assert select_probability(ArctanQuartile(quartiles(FITS)), 2.0) == 0.5

    def test_non_finite_fitness_rejected(self):
        for curve in (ArctanQuartile(quartiles(FITS)), HardThreshold(0.0)):
            with pytest.raises(SelectionError):
                select_probability(curve, float("nan"))


class TestBuildCurve:
    def test_names(self):
        assert isinstance(build_curve("arctan", FITS), ArctanQuartile)
        assert isinstance(build_curve("tanh", FITS), TanhQuartile)
        assert isinstance(build_curve("hard", FITS, n0=2.0), HardThreshold)
        adaptive = build_curve("adaptive-hard", FITS)
        assert isinstance(adaptive, HardThreshold)
        assert adaptive.n0 == 2.0

    def test_hard_needs_threshold(self):
        with pytest.raises(SelectionError):
            build_curve("hard", FITS)

    def test_unknown_name(self):
        with pytest.raises(SelectionError):
            build_curve("boltzmann", FITS)


population = st.lists(
    st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False), min_size=1, max_size=40
)


class TestCurveProperties:
    # probe points are scaled to the curve's own spread and kept within a
    # few interquartile ranges of the median: in the far tails tanh
    # saturates to 1.0 in double precision and no finite gap is resolvable
    @given(population, st.sampled_from(["arctan", "tanh"]), st.floats(-4.0, 4.0), st.floats(1e-5, 4.0))
    def test_strict_monotonicity(self, fits, name, z1, gap):
        curve = build_curve(name, fits)
        denom = curve.summary.denom
        k1 = curve.summary.f_half + z1 * denom
        k2 = k1 + gap * denom
        assert curve.probability(k1) < curve.probability(k2)

    @given(population, st.sampled_from(["arctan", "tanh"]), st.floats(-4.0, 4.0), st.floats(1e-5, 4.0))
    def test_minimize_reverses(self, fits, name, z1, gap):
        curve = build_curve(name, fits, direction=MINIMIZE)
        denom = curve.summary.denom
        k1 = curve.summary.f_half + z1 * denom
        k2 = k1 + gap * denom
        assert curve.probability(k1) > curve.probability(k2)

    @given(population, st.sampled_from(["arctan", "tanh"]), st.floats(-1e12, 1e12))
    def test_open_interval_range(self, fits, name, k):
        p = build_curve(name, fits).probability(k)
        assert 0.0 < p < 1.0

    @given(population, st.sampled_from(["arctan", "tanh"]))
    def test_median_fixed_point(self, fits, name):
        curve = build_curve(name, fits)
        assert curve.probability(curve.summary.f_half) == 0.5

    @given(st.floats(-1e6, 1e6, allow_nan=False), st.integers(1, 30), st.sampled_from(["arctan", "tanh"]))
    def test_flat_population_gives_half(self, value, size, name):
        curve = build_curve(name, [value] * size)
        assert curve.probability(value) == 0.5
