import numpy as np
import pytest

from mrabeam import (
    PrecodingMatrix,
    SingularGram,
    sinr,
    sum_rate,
    zf_precoder,
    zf_sum_rate,
)

from conftest import random_complex


class TestZfPrecoder:
    def test_single_user_scaled_basis(self):
        H = np.array([[1.0, 0.0, 0.0]], dtype=complex)
        precoder = zf_precoder(H, power=4.0)
        assert np.allclose(precoder.F[:, 0], [2.0, 0.0, 0.0])

    def test_orthonormal_rows_identity_gram(self):
        H = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], dtype=complex)
        precoder = zf_precoder(H, power=2.0)
        assert np.allclose(precoder.F, H.conj().T)

    def test_zero_forcing_cross_terms(self):
        rng = np.random.default_rng(10)
        H = random_complex(rng, 2, 3)
        F = zf_precoder(H, power=3.0).F
        cross = H @ F
        for i in range(2):
            for k in range(2):
                if i != k:
                    assert abs(cross[i, k]) <= 1e-9 * np.linalg.norm(H[i]) * np.linalg.norm(F[:, k])

    def test_column_power(self):
        rng = np.random.default_rng(11)
        H = random_complex(rng, 3, 5)
        power = 7.0
        F = zf_precoder(H, power).F
        norms2 = np.sum(np.abs(F) ** 2, axis=0)
        assert np.allclose(norms2, power / 3, rtol=1e-12)

    def test_rejects_wide_k(self):
        rng = np.random.default_rng(12)
        with pytest.raises(ValueError):
            zf_precoder(random_complex(rng, 4, 3), power=1.0)

    def test_singular_gram_duplicate_rows(self):
        rng = np.random.default_rng(13)
        h = random_complex(rng, 1, 4)
        H = np.vstack([h, h])
        with pytest.raises(SingularGram):
            zf_precoder(H, power=1.0)

    def test_singular_gram_ill_conditioned(self):
        rng = np.random.default_rng(14)
        h = random_complex(rng, 1, 4)
        H = np.vstack([h, h * (1 + 1e-9)])  # condition far above 1e12
        with pytest.raises(SingularGram):
            zf_sum_rate(H, 1.0, 1.0)


class TestSinr:
    def test_single_user_no_interference(self):
        H = np.array([[1.0, 0.0]], dtype=complex)
        power = 5.0
        F = np.array([[np.sqrt(power)], [0.0]], dtype=complex)
        assert sinr(H, F, noise_var=1.0, k=0) == pytest.approx(power)

    def test_zero_precoder(self):
        H = np.array([[1.0, 0.5], [0.2, 0.9]], dtype=complex)
        F = np.zeros((2, 2), dtype=complex)
        assert sinr(H, F, noise_var=1.0, k=0) == 0.0
        assert sinr(H, F, noise_var=1.0, k=1) == 0.0

    def test_matches_scalar_loop(self):
        rng = np.random.default_rng(15)
        H = random_complex(rng, 2, 3)
        F = random_complex(rng, 3, 2)
        noise = 0.7
        for k in range(2):
            signal = abs(sum(H[k, n] * F[n, k] for n in range(3))) ** 2
            interference = 0.0
            for i in range(2):
                if i == k:
                    continue
                interference += abs(sum(H[k, n] * F[n, i] for n in range(3))) ** 2
            expected = signal / (interference + noise)
            assert sinr(H, F, noise, k) == pytest.approx(expected, rel=1e-12)

    def test_index_out_of_range(self):
        H = np.eye(2, dtype=complex)
        with pytest.raises(IndexError):
            sinr(H, np.eye(2, dtype=complex), 1.0, 2)


class TestSumRate:
    def test_unit_sinr(self):
        H = np.array([[1.0]], dtype=complex)
        F = np.array([[1.0]], dtype=complex)
        assert sum_rate(H, F, noise_var=1.0) == pytest.approx(1.0)

    def test_zero_precoder(self):
        H = np.array([[1.0, 0.2], [0.3, 1.0]], dtype=complex)
        assert sum_rate(H, np.zeros((2, 2)), 1.0) == 0.0

    def test_sum_of_user_rates(self):
        rng = np.random.default_rng(16)
        H = random_complex(rng, 2, 4)
        F = random_complex(rng, 4, 2)
        expected = sum(np.log2(1 + sinr(H, F, 0.9, k)) for k in range(2))
        assert sum_rate(H, F, 0.9) == pytest.approx(expected, rel=1e-12)


class TestZfSumRate:
    def test_single_unit_norm_user(self):
        H = np.array([[1.0, 0.0]], dtype=complex)
        assert zf_sum_rate(H, power=1.0, noise_var=1.0) == pytest.approx(1.0)

    def test_orthonormal_two_users(self):
        H = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], dtype=complex)
        assert zf_sum_rate(H, power=2.0, noise_var=1.0) == pytest.approx(2.0)

    def test_matches_precoding_pipeline(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            H = random_complex(rng, 3, 4)
            power = float(rng.uniform(0.5, 10.0))
            noise = float(rng.uniform(0.5, 2.0))
            closed = zf_sum_rate(H, power, noise)
            piped = sum_rate(H, zf_precoder(H, power), noise)
            assert closed == pytest.approx(piped, rel=1e-9)

    def test_monotone_in_power(self):
        rng = np.random.default_rng(18)
        H = random_complex(rng, 3, 4)
        rates = [zf_sum_rate(H, p, 1.0) for p in (0.5, 1.0, 2.0, 4.0, 8.0)]
        assert all(b > a for a, b in zip(rates, rates[1:]))

    def test_row_phase_invariance(self):
        rng = np.random.default_rng(19)
        H = random_complex(rng, 3, 4)
        phased = H.copy()
        phased[1] *= np.exp(1j * 0.83)
        assert zf_sum_rate(phased, 2.0, 1.0) == pytest.approx(
            zf_sum_rate(H, 2.0, 1.0), rel=1e-9
        )

    def test_user_permutation_invariance(self):
        rng = np.random.default_rng(20)
        H = random_complex(rng, 3, 4)
        perm = H[[2, 0, 1]]
        assert zf_sum_rate(perm, 2.0, 1.0) == pytest.approx(
            zf_sum_rate(H, 2.0, 1.0), rel=1e-12
        )


class TestPrecodingMatrix:
    def test_rejects_uneven_columns(self):
        F = np.array([[1.0, 0.0], [0.0, 2.0]], dtype=complex)
        with pytest.raises(ValueError):
            PrecodingMatrix(F=F, power=2.0)

    def test_accepts_balanced_columns(self):
        F = np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex)
        pm = PrecodingMatrix(F=F, power=2.0)
        assert pm.power == 2.0
