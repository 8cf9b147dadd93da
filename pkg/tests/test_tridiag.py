"""Tests for the symmetric tridiagonal kernel.

Expected values are either closed forms (2x2 matrices, harmonic numbers,
geometric series) or come from the dense LAPACK oracle in conftest, which
shares no code with the library's Sturm/bisection path.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rabi_spectra import (
    IntensityDependent,
    SectorLabel,
    SymTridiag,
    TwoPhoton,
    carleman_partial_sums,
    eigenvalues_bisect,
    jacobi_params,
    sturm_count,
)

from conftest import dense_eigenvalues, random_sym_tridiag


class TestSymTridiag:
    def test_requires_positive_offdiag(self):
        with pytest.raises(ValueError, match="strictly positive"):
            SymTridiag(diag=[1.0, 2.0], offdiag=[0.0])
        with pytest.raises(ValueError, match="strictly positive"):
            SymTridiag(diag=[1.0, 2.0], offdiag=[-0.5])

    def test_requires_matching_lengths(self):
        with pytest.raises(ValueError, match="length"):
            SymTridiag(diag=[1.0, 2.0, 3.0], offdiag=[1.0])

    def test_requires_finite_entries(self):
        with pytest.raises(ValueError):
            SymTridiag(diag=[np.nan], offdiag=[])

    def test_gershgorin_contains_spectrum(self, rng):
        m = random_sym_tridiag(rng, 9)
        lo, hi = m.gershgorin()
        ev = dense_eigenvalues(m)
        assert lo <= ev[0] and ev[-1] <= hi

    def test_immutable(self):
        m = SymTridiag(diag=[1.0, 2.0], offdiag=[0.5])
        with pytest.raises(ValueError):
            m.diag[0] = 7.0


class TestSturmCount:
    def test_near_diagonal_matrix(self):
        # offdiag 1e-3 barely perturbs eigenvalues {1, 2, 3}
        m = SymTridiag(diag=[1.0, 2.0, 3.0], offdiag=[1e-3, 1e-3])
        assert sturm_count(m, 2.5) == 2

    def test_below_gershgorin_is_zero(self, rng):
        m = random_sym_tridiag(rng, 7)
        lo, hi = m.gershgorin()
        assert sturm_count(m, lo - 1.0) == 0
        assert sturm_count(m, hi + 1.0) == m.n_max

    def test_model_truncation_median(self):
        # [DERIVED] dense-oracle median of the 50x50 two-photon section splits
        # the spectrum in half
        params = jacobi_params(TwoPhoton(g=0.1, delta=1.0), SectorLabel(1, 0))
        m = params.truncation(50)
        median = float(np.median(dense_eigenvalues(m)))
        assert sturm_count(m, median) == 25

    def test_rejects_non_finite(self):
        m = SymTridiag(diag=[0.0], offdiag=[])
        with pytest.raises(ValueError, match="finite"):
            sturm_count(m, np.inf)
        with pytest.raises(ValueError, match="finite"):
            sturm_count(m, np.nan)

    @given(st.integers(2, 12), st.integers(0, 10**6))
    @settings(max_examples=50, deadline=None)
    def test_monotone_in_lambda(self, n, seed):
        rng = np.random.default_rng(seed)
        m = random_sym_tridiag(rng, n)
        lams = np.sort(rng.uniform(*m.gershgorin(), size=4))
        counts = [sturm_count(m, lam) for lam in lams]
        assert counts == sorted(counts)

    def test_matches_sorted_list_counts(self, rng):
        m = random_sym_tridiag(rng, 11)
        ev = dense_eigenvalues(m)
        for lam in rng.uniform(*m.gershgorin(), size=20):
            assert sturm_count(m, lam) == int(np.sum(ev < lam))


class TestEigenvaluesBisect:
    def test_two_by_two_sigma_x(self):
        m = SymTridiag(diag=[0.0, 0.0], offdiag=[1.0])
        spec = eigenvalues_bisect(m, tol=1e-14)
        np.testing.assert_allclose(spec.eigenvalues, [-1.0, 1.0], atol=1e-13)

    def test_one_by_one(self):
        m = SymTridiag(diag=[5.0], offdiag=[])
        spec = eigenvalues_bisect(m)
        np.testing.assert_allclose(spec.eigenvalues, [5.0], atol=1e-12)

    def test_model_truncation_vs_oracle(self):
        # 200x200 intensity-dependent section over the full window
        params = jacobi_params(
            IntensityDependent(g=0.25, delta=2.0, kappa=1.0), SectorLabel(1)
        )
        m = params.truncation(200)
        spec = eigenvalues_bisect(m, tol=1e-12)
        assert len(spec) == 200
        np.testing.assert_allclose(spec.eigenvalues, dense_eigenvalues(m), atol=1e-10)

    def test_empty_window_is_not_an_error(self):
        m = SymTridiag(diag=[0.0, 0.0], offdiag=[1.0])
        assert len(eigenvalues_bisect(m, window=(3.0, 2.0))) == 0
        assert len(eigenvalues_bisect(m, window=(5.0, 6.0))) == 0

    def test_rejects_bad_tol_and_window(self):
        m = SymTridiag(diag=[0.0, 0.0], offdiag=[1.0])
        with pytest.raises(ValueError, match="tol"):
            eigenvalues_bisect(m, tol=0.0)
        with pytest.raises(ValueError, match="tol"):
            eigenvalues_bisect(m, tol=-1e-3)
        with pytest.raises(ValueError, match="finite"):
            eigenvalues_bisect(m, window=(-np.inf, 0.0))

    def test_count_matches_sturm_difference(self, rng):
        m = random_sym_tridiag(rng, 10)
        lo, hi = m.gershgorin()
        for _ in range(10):
            a, b = np.sort(rng.uniform(lo - 1, hi + 1, size=2))
            spec = eigenvalues_bisect(m, window=(a, b), tol=1e-12)
            assert len(spec) == sturm_count(m, b) - sturm_count(m, a)

    @given(st.integers(2, 12), st.integers(0, 10**6))
    @settings(max_examples=50, deadline=None)
    def test_oracle_equivalence_small(self, n, seed):
        rng = np.random.default_rng(seed)
        m = random_sym_tridiag(rng, n)
        spec = eigenvalues_bisect(m, tol=1e-13)
        assert len(spec) == n
        np.testing.assert_allclose(spec.eigenvalues, dense_eigenvalues(m), atol=1e-10)

    @given(st.integers(3, 12), st.integers(0, 10**6))
    @settings(max_examples=30, deadline=None)
    def test_leading_principal_interlacing(self, n, seed):
        rng = np.random.default_rng(seed)
        m = random_sym_tridiag(rng, n)
        sub = SymTridiag(diag=m.diag[:-1], offdiag=m.offdiag[:-1])
        big = eigenvalues_bisect(m, tol=1e-13).eigenvalues
        small = eigenvalues_bisect(sub, tol=1e-13).eigenvalues
        # positive off-diagonal makes the interlacing strict
        assert np.all(big[:-1] < small + 1e-11)
        assert np.all(small < big[1:] + 1e-11)


class TestCarlemanPartialSums:
    def test_harmonic(self):
        sums = carleman_partial_sums(lambda n: n + 1.0, 10)
        h10 = float(np.sum(1.0 / np.arange(1, 11)))
        assert sums[-1] == pytest.approx(h10, abs=1e-14)
        assert sums[-1] == pytest.approx(2.928968, abs=1e-6)

    def test_geometric_is_bounded(self):
        sums = carleman_partial_sums(lambda n: 2.0**n, 60)
        assert np.all(sums <= 2.0)
        assert sums[-1] == pytest.approx(2.0, abs=1e-12)

    def test_model_rule_dominated_by_harmonic(self):
        # [DERIVED by direct summation] a_n = sqrt((n+1)(n+2)) <= n+2, so the
        # sums dominate the shifted harmonic series
        params = jacobi_params(
            IntensityDependent(g=1.0, delta=0.0, kappa=1.0), SectorLabel(1)
        )
        k = 100_000
        sums = carleman_partial_sums(params.a, k)
        harmonic = np.cumsum(1.0 / np.arange(1, k + 2))  # H_1 .. H_(k+1)
        assert np.all(sums >= harmonic[1:] - 1.0)

    def test_rejects_non_positive_naming_index(self):
        with pytest.raises(ValueError, match=r"a\(3\)"):
            carleman_partial_sums(lambda n: 3.0 - np.asarray(n, dtype=float), 10)

    def test_scalar_only_rule_supported(self):
        def rule(n):
            if not isinstance(n, int):
                raise TypeError("scalar only")
            return float(n + 1)

        sums = carleman_partial_sums(rule, 5)
        assert sums[-1] == pytest.approx(1 + 1 / 2 + 1 / 3 + 1 / 4 + 1 / 5)
