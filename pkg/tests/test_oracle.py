import math

import numpy as np
import pytest

from hanson_wright import linalg, oracle
from hanson_wright.bounds import chi2_mgf_bound, square_mgf_bound
from hanson_wright.exceptions import DomainError
from hanson_wright.subgauss import rademacher, uniform

from _oracles import eigh_spectrum, gaussian_expect


class TestGaussianQuadraticMgf:
    def test_unit_at_zero(self):
        assert oracle.exact_gaussian_quadratic_mgf([[0, 1], [1, 0]], 1.0, 0.0) == 1.0

    def test_symmetric_spectrum_hand_value(self):
        got = oracle.exact_gaussian_quadratic_mgf([[0, 1], [1, 0]], 1.0, 0.1)
        assert got == pytest.approx(0.96 ** -0.5, rel=1e-14)
        assert got == pytest.approx(1.0206207, abs=1e-7)

    def test_scalar_matrix_hand_value(self):
        got = oracle.exact_gaussian_quadratic_mgf([[1.0]], 1.0, 0.25)
        assert got == pytest.approx(math.sqrt(2.0), rel=1e-14)

    def test_matches_quadrature_scalar(self):
        for lam, c, s2 in ((0.2, 0.8, 1.0), (-0.7, 1.3, 0.5), (0.05, -2.0, 4.0)):
            want = gaussian_expect(lambda x: np.exp(lam * c * x * x), s2)
            got = oracle.exact_gaussian_quadratic_mgf([[c]], s2, lam)
            assert got == pytest.approx(want, rel=1e-10)

    def test_matches_quadrature_via_independent_diagonalization(self):
        gen = np.random.Generator(np.random.Philox(key=31))
        for _ in range(20):
            n = int(gen.integers(2, 8))
            a = linalg.symmetrize(gen.standard_normal((n, n)))
            s2 = float(gen.uniform(0.3, 2.0))
            mus = s2 * eigh_spectrum(a)
            lam = 0.4 / (2.0 * np.abs(mus).max())
            want = 1.0
            for mu in mus:
                want *= gaussian_expect(lambda x, mu=mu: np.exp(lam * mu * x * x), 1.0)
            assert oracle.exact_gaussian_quadratic_mgf(a, s2, float(lam)) == pytest.approx(want, rel=1e-9)

    def test_negative_lambda_accepted(self):
        got = oracle.exact_gaussian_quadratic_mgf([[1.0]], 1.0, -5.0)
        assert got == pytest.approx(math.exp(0.0) * (1 + 10.0) ** -0.5, rel=1e-12)

    def test_divergence_raises(self):
        with pytest.raises(DomainError):
            oracle.exact_gaussian_quadratic_mgf([[1.0]], 1.0, 0.5)
        with pytest.raises(DomainError):
            oracle.exact_gaussian_quadratic_mgf([[-1.0]], 1.0, -0.5)


class TestGaussianCenteredSquareMgf:
    def test_unit_at_zero(self):
        assert oracle.exact_gaussian_centered_square_mgf(1.0, 0.0) == 1.0

    def test_hand_values(self):
        got = oracle.exact_gaussian_centered_square_mgf(1.0, 0.1)
        assert got == pytest.approx(math.exp(-0.1) * 0.8 ** -0.5, rel=1e-14)
        assert got == pytest.approx(1.0116390, abs=1e-7)
        got = oracle.exact_gaussian_centered_square_mgf(1.0, 0.25)
        assert got == pytest.approx(math.exp(-0.25) * math.sqrt(2.0), rel=1e-14)

    @pytest.mark.parametrize("s2,lam", [(1.0, 0.3), (0.25, 0.9), (4.0, 0.1), (1.0, -2.0)])
    def test_matches_quadrature(self, s2, lam):
        want = gaussian_expect(lambda x: np.exp(lam * (x * x - s2)), s2)
        assert oracle.exact_gaussian_centered_square_mgf(s2, lam) == pytest.approx(want, rel=1e-9)

    def test_divergence_raises(self):
        with pytest.raises(DomainError) as err:
            oracle.exact_gaussian_centered_square_mgf(2.0, 0.25)
        assert err.value.limit == pytest.approx(0.25)


class TestQuadraticMean:
    def test_identity_rademacher(self):
        assert oracle.exact_quadratic_mean(np.eye(3), rademacher()) == 3.0

    def test_hollow_matrix_has_zero_mean(self):
        ring = linalg.hollow(linalg.symmetrize([[3.0, 1.0], [2.0, -4.0]]))
        assert oracle.exact_quadratic_mean(ring, uniform(1.5)) == 0.0

    def test_identity_uniform(self):
        assert oracle.exact_quadratic_mean(np.eye(2), uniform(1.0)) == pytest.approx(2.0 / 3.0, abs=1e-15)


class TestDominanceAgainstBounds:
    def test_chi2_bound_dominates_exact_product(self):
        gen = np.random.Generator(np.random.Philox(key=32))
        for i in range(30):
            n = int(gen.integers(1, 11))
            mu = 2.0 * gen.random(n) - 1.0
            hi = 1.0 / (3.0 * np.abs(mu).max())
            for lam in np.linspace(0.0, hi, 12):
                exact = oracle.exact_gaussian_quadratic_mgf(np.diag(mu), 1.0, float(lam))
                assert exact <= chi2_mgf_bound(mu, float(lam)) * (1 + 1e-12)

    def test_square_bound_dominates_exact_value(self):
        for s2 in (0.25, 1.0, 4.0):
            for lam in np.linspace(0.0, 1.0 / (4.0 * s2), 25):
                exact = oracle.exact_gaussian_centered_square_mgf(s2, float(lam))
                assert exact <= square_mgf_bound(s2, float(lam)) * (1 + 1e-12)

    def test_hollow_spectrum_kills_linear_term(self):
        gen = np.random.Generator(np.random.Philox(key=33))
        for _ in range(20):
            n = int(gen.integers(2, 15))
            ring = linalg.hollow(linalg.symmetrize(2.0 * gen.random((n, n)) - 1.0))
            mu = linalg.eigen_decompose(ring).eigenvalues
            lam = 1.0 / (3.0 * np.abs(mu).max())
            assert abs(lam * math.fsum(mu.tolist())) <= 1e-12
            reduced = math.exp(2.0 * lam * lam * float(np.sum(mu * mu)))
            assert chi2_mgf_bound(mu, lam) == pytest.approx(reduced, rel=1e-12)
            exact = oracle.exact_gaussian_quadratic_mgf(ring, 1.0, lam)
            assert exact <= reduced * (1 + 1e-9)
