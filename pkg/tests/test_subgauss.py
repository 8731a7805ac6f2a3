import math

import numpy as np
import pytest

from hanson_wright import subgauss
from hanson_wright.exceptions import ValidationError
from hanson_wright.subgauss import (
    RngStream,
    exact_central_square_moment,
    exact_even_moment,
    gaussian,
    parse_dist,
    rademacher,
    sample,
    uniform,
)

from _oracles import dist_expect

ALL_FAMILIES = (gaussian(1.0), gaussian(0.5), rademacher(), uniform(1.0), uniform(2.0))


class TestRngStream:
    def test_same_stream_is_bitwise_identical(self):
        a = sample(gaussian(1.0), RngStream(123, 7), 10_000)
        b = sample(gaussian(1.0), RngStream(123, 7), 10_000)
        assert np.array_equal(a, b)

    def test_distinct_stream_ids_differ(self):
        a = sample(gaussian(1.0), RngStream(123, 1), 1000)
        b = sample(gaussian(1.0), RngStream(123, 2), 1000)
        assert not np.array_equal(a, b)

    def test_substream_derivation_is_deterministic(self):
        s = RngStream(5, 0)
        assert s.substream(3) == RngStream(5, 0).substream(3)
        assert s.substream(3) != s.substream(4)

    def test_seed_range_validated(self):
        with pytest.raises(ValidationError):
            RngStream(-1, 0)
        with pytest.raises(ValidationError):
            RngStream(0, 2 ** 64)

    def test_prefix_consistency(self):
        # shorter requests are prefixes of longer ones from the same stream
        long = sample(uniform(1.0), RngStream(9, 9), 1000)
        short = sample(uniform(1.0), RngStream(9, 9), 500)
        assert np.array_equal(long[:500], short)


class TestSampling:
    def test_rademacher_support(self):
        x = sample(rademacher(), RngStream(1, 0), 5000)
        assert set(np.unique(x).tolist()) == {-1.0, 1.0}

    def test_uniform_support(self):
        x = sample(uniform(2.0), RngStream(2, 0), 5000)
        assert x.min() >= -2.0 and x.max() <= 2.0

    def test_gaussian_first_two_moments(self):
        x = sample(gaussian(1.0), RngStream(3, 0), 1_000_000)
        # 4 sigma CLT tolerances: sd(mean) = 1e-3, sd(m2-hat) = sqrt(2)e-3
        assert abs(x.mean()) <= 0.005
        assert 0.99 <= (x * x).mean() <= 1.01

    def test_second_moment_consistency_every_family(self):
        n = 1_000_000
        for i, d in enumerate(ALL_FAMILIES):
            x = sample(d, RngStream(4, i), n)
            tol = 5.0 * math.sqrt(exact_central_square_moment(d, 2) / n)
            assert abs((x * x).mean() - d.second_moment) <= tol, d.label()

    def test_odd_count(self):
        x = sample(gaussian(2.0), RngStream(5, 0), 7)
        assert x.shape == (7,)

    def test_count_must_be_positive(self):
        with pytest.raises(ValidationError):
            sample(gaussian(1.0), RngStream(6, 0), 0)


class TestDescriptors:
    def test_catalog_values(self):
        g = gaussian(2.0)
        assert (g.proxy_sigma2, g.second_moment) == (4.0, 4.0)
        r = rademacher()
        assert (r.proxy_sigma2, r.second_moment) == (1.0, 1.0)
        u = uniform(3.0)
        assert u.proxy_sigma2 == 9.0
        assert u.second_moment == pytest.approx(3.0, abs=1e-15)

    def test_second_moment_never_exceeds_proxy(self):
        for d in ALL_FAMILIES:
            assert d.second_moment <= d.proxy_sigma2

    def test_invalid_descriptor_rejected(self):
        with pytest.raises(ValidationError):
            subgauss.SubGaussianDist("gaussian", 1.0, 1.0, 2.0)  # m2 > proxy
        with pytest.raises(ValidationError):
            subgauss.SubGaussianDist("cauchy", 1.0, 1.0, 1.0)
        with pytest.raises(ValidationError):
            gaussian(0.0)

    def test_parse_dist(self):
        assert parse_dist("gaussian:1.5") == gaussian(1.5)
        assert parse_dist("rademacher") == rademacher()
        assert parse_dist("uniform:2") == uniform(2.0)
        for bad in ("gaussian", "uniform", "rademacher:1", "gaussian:abc", "poisson:3"):
            with pytest.raises(ValidationError):
                parse_dist(bad)


class TestEvenMoments:
    def test_gaussian_fourth_moment(self):
        assert exact_even_moment(gaussian(1.0), 2) == pytest.approx(3.0, abs=1e-14)

    def test_rademacher_every_moment_is_one(self):
        assert exact_even_moment(rademacher(), 7) == 1.0

    def test_uniform_second_moment(self):
        assert exact_even_moment(uniform(1.0), 1) == pytest.approx(1.0 / 3.0, abs=1e-16)

    @pytest.mark.parametrize("d", ALL_FAMILIES, ids=lambda d: d.label())
    @pytest.mark.parametrize("j", [1, 2, 3, 5, 8])
    def test_matches_quadrature(self, d, j):
        want = dist_expect(d, lambda x: x ** (2 * j))
        assert exact_even_moment(d, j) == pytest.approx(want, rel=1e-12)

    def test_sub_gaussian_moment_cap(self):
        for d in ALL_FAMILIES:
            for j in range(1, 21):
                cap = 2.0 ** j * math.factorial(j) * d.proxy_sigma2 ** j
                assert exact_even_moment(d, j) <= cap * (1.0 + 1e-12), (d.label(), j)

    def test_overflow_raises_range_error(self):
        with pytest.raises(OverflowError):
            exact_even_moment(gaussian(10.0), 200)

    def test_rejects_nonpositive_order(self):
        with pytest.raises(ValidationError):
            exact_even_moment(gaussian(1.0), 0)


class TestCentralSquareMoments:
    def test_rademacher_is_degenerate(self):
        for k in (1, 2, 5, 11, 20):
            assert exact_central_square_moment(rademacher(), k) == 0.0

    def test_gaussian_variance_and_skew_of_square(self):
        assert exact_central_square_moment(gaussian(1.0), 2) == pytest.approx(2.0, abs=1e-12)
        assert exact_central_square_moment(gaussian(1.0), 3) == pytest.approx(8.0, abs=1e-12)

    def test_first_central_moment_vanishes(self):
        for d in ALL_FAMILIES:
            assert abs(exact_central_square_moment(d, 1)) <= 1e-12

    @pytest.mark.parametrize("d", ALL_FAMILIES, ids=lambda d: d.label())
    @pytest.mark.parametrize("k", [2, 3, 4, 6])
    def test_matches_quadrature(self, d, k):
        m2 = d.second_moment
        want = dist_expect(d, lambda x: (x * x - m2) ** k)
        assert exact_central_square_moment(d, k) == pytest.approx(want, rel=1e-10, abs=1e-13)
