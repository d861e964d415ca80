"""Domain types, multiset conversions, and the matrix reduction."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcroots import (
    CoefficientVector,
    CountReport,
    DCMatrix,
    DMultiset,
    DomainError,
    classify,
    from_multiset,
    geometric_mean,
    reduce_matrix,
    solve_all_roots,
    to_multiset,
)
from dcroots.core import shift_cycle
from dcroots.sampling import random_matrix, spawn_rng

positive = st.floats(min_value=1e-3, max_value=1e3)


class TestGeometricMean:
    def test_all_equal(self):
        assert geometric_mean([0.7] * 5) == pytest.approx(0.7, rel=1e-14)

    def test_quarter_one(self):
        # oracle: direct product then square root
        assert geometric_mean([0.25, 1.0]) == pytest.approx(
            (0.25 * 1.0) ** 0.5, rel=1e-14
        )

    def test_one_two_four(self):
        assert geometric_mean([1.0, 2.0, 4.0]) == pytest.approx(
            8.0 ** (1.0 / 3.0), rel=1e-14
        )

    def test_nonpositive_rejected(self):
        with pytest.raises(DomainError):
            geometric_mean([1.0, -2.0])
        with pytest.raises(DomainError):
            geometric_mean([])

    @given(st.lists(positive, min_size=1, max_size=20))
    def test_matches_direct_product(self, xs):
        direct = np.prod(xs) ** (1.0 / len(xs))
        assert geometric_mean(xs) == pytest.approx(direct, rel=1e-13)


class TestCoefficientVector:
    def test_sorted_on_construction(self):
        c = CoefficientVector((3.0, 1.0, 2.0))
        assert c.entries == (1.0, 2.0, 3.0)
        assert c.d_lower == 1.0 and c.d_upper == 3.0

    def test_gamma_cached(self):
        c = CoefficientVector((0.25, 1.0))
        assert c.gamma == pytest.approx(0.5, rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            CoefficientVector((1.0, 0.0))

    @given(st.lists(positive, min_size=2, max_size=12))
    @settings(max_examples=200)
    def test_gamma_invariant(self, xs):
        c = CoefficientVector(tuple(xs))
        assert c.gamma == pytest.approx(np.prod(xs) ** (1.0 / len(xs)), rel=1e-12)

    def test_json_round_trip(self):
        c = CoefficientVector((0.25, 1.0, 2.0))
        assert CoefficientVector.from_json_dict(c.to_json_dict()) == c


class TestMultiset:
    def test_all_equal(self):
        d = to_multiset(CoefficientVector((0.7,) * 3))
        assert d.values == (0.7,) and d.mults == (3,) and d.q == 0

    def test_grouping_by_hand(self):
        d = to_multiset(CoefficientVector((1.0, 1.0, 2.0, 4.0, 4.0)))
        assert d.values == (1.0, 2.0, 4.0)
        assert d.mults == (2, 1, 2)
        assert d.q == 2

    def test_singletons(self):
        d = to_multiset(CoefficientVector((0.25, 1.0)))
        assert d.values == (0.25, 1.0) and d.mults == (1, 1) and d.q == 1

    def test_expansion_by_hand(self):
        c = from_multiset(DMultiset((1.0, 2.0, 4.0), (2, 1, 2)))
        assert c.entries == (1.0, 1.0, 2.0, 4.0, 4.0)

    @given(st.lists(positive, min_size=2, max_size=12))
    @settings(max_examples=200)
    def test_round_trip(self, xs):
        c = CoefficientVector(tuple(xs))
        assert from_multiset(to_multiset(c)) == c

    def test_invariants_enforced(self):
        with pytest.raises(DomainError):
            DMultiset((2.0, 1.0), (1, 1))
        with pytest.raises(DomainError):
            DMultiset((1.0, 2.0), (1, 0))


class TestDCMatrix:
    def test_det_is_alpha_n_minus_beta_n(self):
        rng = spawn_rng(20, 0)
        for i in range(200):
            n = int(rng.integers(2, 13))
            m = random_matrix(rng, n, alpha=float(rng.uniform(0.5, 2.0)), beta=1.3)
            det = np.linalg.det(m.matrix())
            expected = m.alpha**n - m.beta**n
            assert det == pytest.approx(expected, rel=1e-9, abs=1e-12)

    def test_char_poly_invariant_under_cycle_choice(self):
        rng = spawn_rng(21, 0)
        for i in range(100):
            n = int(rng.integers(3, 9))
            m = random_matrix(rng, n, 1.0, 1.5)
            # random n-cycle built from a random vertex ordering
            order = rng.permutation(n)
            perm = [0] * n
            for j in range(n):
                perm[order[j]] = int(order[(j + 1) % n])
            m2 = DCMatrix(m.a, m.b, tuple(perm))
            for _ in range(20):
                lam = complex(rng.normal(), rng.normal())
                v1 = np.linalg.det(m.matrix() - lam * np.eye(n))
                v2 = np.linalg.det(m2.matrix() - lam * np.eye(n))
                assert v1 == pytest.approx(v2, rel=1e-9, abs=1e-9)

    def test_perm_must_be_single_cycle(self):
        with pytest.raises(DomainError):
            DCMatrix((1.0, 1.0, 1.0), (1.0, 1.0, 1.0), (1, 0, 2))


class TestReduceMatrix:
    def test_ideal_matrix(self):
        m = DCMatrix((2.0,) * 4, (0.5,) * 4)
        c, beta = reduce_matrix(m)
        assert beta == pytest.approx(0.5)
        assert c.entries == (4.0,) * 4

    def test_divide_and_sort(self):
        m = DCMatrix((1.0, 2.0, 4.0), (2.0, 2.0, 2.0))
        c, beta = reduce_matrix(m)
        assert beta == pytest.approx(2.0)
        assert c.entries == (0.5, 1.0, 2.0)

    def test_nonconstant_b(self):
        m = DCMatrix((1.0, 1.0), (0.5, 2.0))
        c, beta = reduce_matrix(m)
        assert beta == pytest.approx(1.0, rel=1e-14)
        assert c.entries == pytest.approx((1.0, 1.0))

    def test_gamma_equals_alpha_over_beta(self):
        rng = spawn_rng(22, 0)
        for i in range(100):
            n = int(rng.integers(2, 11))
            m = random_matrix(rng, n, float(rng.uniform(0.3, 3.0)), 1.7)
            c, _ = reduce_matrix(m)
            assert c.gamma == pytest.approx(m.alpha / m.beta, rel=1e-12)

    def test_eigencount_matches_root_count(self):
        # left-half eigenvalues of X equal nu_plus of the reduced vector
        rng = spawn_rng(23, 0)
        for i in range(1000):
            n = int(rng.integers(2, 11))
            m = random_matrix(rng, n, float(rng.uniform(0.3, 1.2)), 1.0)
            c, _ = reduce_matrix(m)
            eig = np.linalg.eigvals(m.matrix())
            if np.min(np.abs(eig.real)) < 1e-8:
                continue
            left = int(np.sum(eig.real < 0.0))
            assert left == classify(solve_all_roots(c)).nu_plus


class TestCountReport:
    def test_invariants(self):
        rep = CountReport(2, 1, 3, "eigensolver", 1e-9, 0.0)
        assert rep.nu_bar == 4
        assert rep.n == 6

    def test_json_round_trip(self):
        rep = CountReport(2, 0, 1, "contour", 1e-9, 1e-12)
        back = CountReport.from_json_dict(rep.to_json_dict())
        assert back.nu_minus == 2 and back.nu_plus == 1 and back.nu_bar == 1

    def test_negative_counts_rejected(self):
        with pytest.raises(DomainError):
            CountReport(-1, 0, 1, "eigensolver", 1e-9, 0.0)


def test_shift_cycle():
    assert shift_cycle(4) == (1, 2, 3, 0)
