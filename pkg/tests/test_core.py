from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wsweights import (
    ConfigError,
    DegenerateSampleError,
    DimensionError,
    SamplerConfig,
    Subinterval,
    WeightVector,
    grid,
    midpoint,
    normalise,
    pair_intervals,
)

positive = st.floats(min_value=1e-6, max_value=1e6, allow_nan=False, allow_infinity=False)


class TestWeightVector:
    def test_valid(self):
        w = WeightVector((0.25, 0.75))
        assert w.p == 2 and tuple(w) == (0.25, 0.75) and w[1] == 0.75
        assert w.is_positive

    def test_boundary_weight_allowed(self):
        w = WeightVector((0.0, 1.0))
        assert not w.is_positive

    @pytest.mark.parametrize("bad", [(1.0,), ()])
    def test_too_short(self, bad):
        with pytest.raises(DimensionError):
            WeightVector(bad)

    @pytest.mark.parametrize("bad", [(-0.1, 1.1), (0.5, 0.6), (float("nan"), 1.0)])
    def test_off_simplex(self, bad):
        with pytest.raises(DegenerateSampleError):
            WeightVector(bad)

    def test_sum_tolerance(self):
        WeightVector((0.5, 0.5 + 5e-13))
        with pytest.raises(DegenerateSampleError):
            WeightVector((0.5, 0.5 + 5e-12))

    def test_immutable(self):
        w = WeightVector((0.5, 0.5))
        with pytest.raises(AttributeError):
            w.weights = (1.0, 0.0)


class TestNormalise:
    def test_first_pair(self):
        w = normalise((0.06637717, 0.843031))
        assert tuple(round(v, 3) for v in w) == (0.073, 0.927)

    def test_second_pair(self):
        w = normalise((0.3932133, 0.7270519))
        assert tuple(round(v, 4) for v in w) == (0.3510, 0.6490)

    def test_already_normalised(self):
        assert normalise((0.5, 0.5)).weights == (0.5, 0.5)

    @pytest.mark.parametrize("bad", [(0.0, 1.0), (-1.0, 2.0)])
    def test_nonpositive(self, bad):
        with pytest.raises(DegenerateSampleError):
            normalise(bad)

    @pytest.mark.parametrize("bad", [(), (1.0,)])
    def test_too_short(self, bad):
        with pytest.raises(DimensionError):
            normalise(bad)

    @given(st.lists(positive, min_size=2, max_size=64))
    def test_sums_to_one_and_keeps_order(self, values):
        w = normalise(values).weights
        assert abs(sum(w) - 1.0) <= 1e-12
        assert int(np.argmax(w)) == int(np.argmax(values))
        for i in range(len(values)):
            for j in range(len(values)):
                if values[i] < values[j]:
                    assert w[i] <= w[j]


class TestGrid:
    def test_four(self):
        cells = grid(4)
        assert [(c.lo, c.hi) for c in cells] == [(0, 0.25), (0.25, 0.5), (0.5, 0.75), (0.75, 1)]

    def test_one(self):
        assert [(c.lo, c.hi) for c in grid(1)] == [(0.0, 1.0)]

    def test_three(self):
        assert [(c.lo, c.hi) for c in grid(3)] == [(0, 1 / 3), (1 / 3, 2 / 3), (2 / 3, 1)]

    def test_zero(self):
        with pytest.raises(DimensionError):
            grid(0)

    @given(st.integers(1, 500))
    def test_contiguous_and_equal_width(self, d):
        cells = grid(d)
        assert len(cells) == d and cells[0].lo == 0.0 and cells[-1].hi == 1.0
        for a, b in zip(cells, cells[1:]):
            assert a.hi == b.lo
        for c in cells:
            assert abs(c.width - 1 / d) <= 1e-15


class TestPairing:
    def test_four(self):
        pairing = pair_intervals(4)
        got = [((a.lo, a.hi), (b.lo, b.hi)) for a, b in pairing.pairs]
        assert got == [((0, 0.25), (0.75, 1)), ((0.25, 0.5), (0.5, 0.75))]
        assert pairing.odd_center is None

    def test_two(self):
        (pair,) = pair_intervals(2).pairs
        assert (pair[0].lo, pair[0].hi, pair[1].lo, pair[1].hi) == (0, 0.5, 0.5, 1)

    def test_five(self):
        pairing = pair_intervals(5)
        assert len(pairing.pairs) == 2
        assert (pairing.odd_center.lo, pairing.odd_center.hi) == (0.4, 0.6)
        assert pairing.center_index == 2

    @pytest.mark.parametrize("d", [0, 1])
    def test_too_small(self, d):
        with pytest.raises(DimensionError):
            pair_intervals(d)

    @given(st.integers(2, 400))
    def test_invariants(self, d):
        pairing = pair_intervals(d)
        assert len(pairing.pairs) == d // 2
        assert (pairing.odd_center is not None) == (d % 2 == 1)
        used = []
        for (a, b), (i, j) in zip(pairing.pairs, pairing.index_pairs):
            assert j == d - 1 - i
            assert abs(a.lo + b.hi - 1) <= 1e-15 and abs(a.hi + b.lo - 1) <= 1e-15
            assert abs(midpoint(a) + midpoint(b) - 1) <= 1e-15
            used += [i, j]
        if pairing.center_index is not None:
            used.append(pairing.center_index)
        assert sorted(used) == list(range(d))


def test_midpoint():
    assert midpoint(Subinterval(0, 0.25)) == 0.125
    assert midpoint(Subinterval(0.75, 1)) == 0.875
    assert midpoint(Subinterval(1 / 3, 2 / 3)) == pytest.approx(0.5, abs=1e-16)


@pytest.mark.parametrize("lo,hi", [(0.5, 0.5), (-0.1, 0.2), (0.2, 1.1)])
def test_subinterval_rejects(lo, hi):
    with pytest.raises(DimensionError):
        Subinterval(lo, hi)


def test_subinterval_contains():
    assert Fraction(1, 3) in Subinterval(0.25, 0.5)
    assert 0.6 not in Subinterval(0.25, 0.5)


class TestSamplerConfig:
    def test_defaults(self):
        cfg = SamplerConfig()
        assert (cfg.p, cfg.seed, cfg.max_depth) == (2, 0, 12)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"p": 1},
            {"d": 0},
            {"s": 0},
            {"delta": -0.1},
            {"tau": -1.0},
            {"rho": 1.5},
            {"p": 3, "alpha": (1, 1)},
            {"p": 2, "alpha": (1, 0)},
            {"beta": (1,)},
            {"seed": -1},
            {"budget": 0},
            {"max_depth": 0},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ConfigError):
            SamplerConfig(**kwargs)
