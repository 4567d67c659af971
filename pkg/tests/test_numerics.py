import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import block_diag

from etfent import numerics as nu
from etfent import states
from etfent.errors import NoConvergence, NotHermitian, ShapeMismatch

from .conftest import random_hermitian
from .oracles import faddeev_leverrier, kron_elementwise, power_sums

SIC_PHI1 = np.array([0, 1, -1]) / np.sqrt(2)


def test_kron_identity():
    assert np.array_equal(nu.kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_basis_projectors():
    e0 = np.diag([1.0, 0.0])
    e1 = np.diag([0.0, 1.0])
    expected = np.zeros((4, 4))
    expected[1, 1] = 1.0
    assert np.array_equal(nu.kron(e0, e1), expected)


def test_kron_matches_elementwise_on_sic_projectors():
    w = np.exp(2j * np.pi / 3)
    phi = np.array([0, w, -w * w]) / np.sqrt(2)
    a = np.outer(phi, phi.conj())
    b = np.outer(phi.conj(), phi)
    assert np.abs(nu.kron(a, b) - kron_elementwise(a, b)).max() <= 1e-15


def test_kron_rejects_vectors():
    with pytest.raises(ShapeMismatch):
        nu.kron(np.ones(3), np.eye(2))


def test_eigenvalues_simple_cases():
    assert np.allclose(nu.hermitian_eigenvalues(np.eye(3)), [1, 1, 1], atol=0)
    assert np.array_equal(nu.hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0])), [-1.0, 2.0, 3.0])


def test_eigenvalues_horodecki_state_against_char_poly():
    rho = states._horodecki_matrix(0.5)
    w = nu.hermitian_eigenvalues(rho)
    assert w.min() >= -1e-12
    assert abs(w.sum() - 1) < 1e-12
    # power sums fix the spectrum of a 9x9 matrix
    assert np.allclose([np.sum(w**k) for k in range(1, 10)], power_sums(rho, 9), atol=1e-13)
    # all roots real; alternating coefficient signs <=> all roots >= 0
    coeffs = faddeev_leverrier(rho.astype(complex)).real
    signs = coeffs * (-1.0) ** np.arange(len(coeffs))
    assert np.all(signs >= -1e-14)


def test_eigh_reconstruction(rng):
    for n in (2, 5, 9, 27):
        h = random_hermitian(rng, n)
        w, v = nu.hermitian_eigh(h)
        resid = np.linalg.norm(h - v @ np.diag(w) @ v.conj().T)
        assert resid <= nu.EIG_RESID * np.linalg.norm(h)
        assert np.allclose(v.conj().T @ v, np.eye(n), atol=1e-12)
        assert np.all(np.diff(w) >= 0)


def test_not_hermitian():
    m = np.array([[1.0, 1.0], [0.0, 1.0]])
    with pytest.raises(NotHermitian):
        nu.hermitian_eigenvalues(m)
    with pytest.raises(NotHermitian):
        nu.hermitian_eigh(m)


def test_no_convergence_when_sweep_cap_hit(monkeypatch):
    monkeypatch.setattr(nu, "MAX_SWEEPS", 0)
    h = np.array([[1.0, 0.5], [0.5, 2.0]])
    with pytest.raises(NoConvergence):
        nu.hermitian_eigenvalues(h)
    with pytest.raises(NoConvergence):
        nu.singular_values(h)


def test_singular_values_simple():
    assert np.allclose(nu.singular_values(np.eye(4)), np.ones(4), atol=1e-15)
    u = np.array([0.6, 0.8, 0.0])
    v = np.array([0.0, 1.0])
    sv = nu.singular_values(np.outer(u, v))
    assert sv[0] == pytest.approx(1.0, abs=1e-15)
    assert np.all(sv[1:] <= 1e-15)


def test_singular_values_descending_and_match_gram_spectrum(rng):
    for shape in ((9, 9), (7, 9), (9, 4), (81, 81)):
        m = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
        sv = nu.singular_values(m)
        assert np.all(sv >= 0) and np.all(np.diff(sv) <= 0)
        gram = np.sort(np.linalg.eigvalsh(m.conj().T @ m))[::-1][: len(sv)]
        assert np.allclose(sv**2, gram, rtol=1e-9, atol=1e-12)


def test_isotropic_correlation_singular_values_sum(sic3, sic3_conj):
    from etfent.criteria import correlation_matrix

    m = correlation_matrix(states.isotropic(3, 0.5), sic3, sic3_conj).matrix
    assert nu.singular_values(m).sum() == pytest.approx(2 / 9, abs=1e-12)


def test_trace_norm_examples(rng):
    n = 9
    assert nu.trace_norm(np.full((n, n), 1 / n**2)) == pytest.approx(1 / n, abs=1e-15)
    a = rng.standard_normal((3, 4))
    b = rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))
    assert nu.trace_norm(block_diag(a, b)) == pytest.approx(nu.trace_norm(a) + nu.trace_norm(b), abs=1e-13)


def test_trace_norm_maximally_mixed_correlation(sic3, sic3_conj):
    from etfent.criteria import correlation_matrix

    m = correlation_matrix(states.maximally_mixed((3, 3)), sic3, sic3_conj).matrix
    assert np.allclose(m, 1 / 81, atol=1e-15)
    assert nu.trace_norm(m) == pytest.approx(1 / 9, abs=1e-14)


def test_frobenius_trace_dagger(sic3):
    assert nu.frobenius_norm(np.eye(3)) == pytest.approx(np.sqrt(3))
    p = np.outer(SIC_PHI1, SIC_PHI1.conj())
    assert nu.trace(p) == pytest.approx(1.0)
    m = np.array([[1, 2j], [3, 4]])
    assert np.array_equal(nu.dagger(m), np.array([[1, 3], [-2j, 4]]))
    assert nu.frobenius_norm(np.full((9, 9, 9), 1 / 729)) == pytest.approx(1 / 27, abs=1e-16)
    with pytest.raises(ShapeMismatch):
        nu.trace(np.ones((2, 3)))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 12))
def test_eigenvalue_sum_equals_trace(seed, n):
    h = random_hermitian(np.random.default_rng(seed), n)
    w = nu.hermitian_eigenvalues(h)
    assert abs(w.sum() - np.trace(h).real) <= 1e-9 * max(1.0, np.linalg.norm(h))
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-12 * max(1.0, np.linalg.norm(h)))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8))
def test_psd_eigenvalues_equal_singular_values(seed, n):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = g @ g.conj().T
    assert np.allclose(nu.hermitian_eigenvalues(h)[::-1], nu.singular_values(h), rtol=1e-9, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), r1=st.integers(1, 6), c1=st.integers(1, 6), r2=st.integers(1, 6), c2=st.integers(1, 6))
def test_trace_norm_additive_on_direct_sums(seed, r1, c1, r2, c2):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((r1, c1)) + 1j * rng.standard_normal((r1, c1))
    b = rng.standard_normal((r2, c2))
    lhs = nu.trace_norm(block_diag(a, b))
    assert lhs == pytest.approx(nu.trace_norm(a) + nu.trace_norm(b), rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 10), n=st.integers(1, 10))
def test_trace_norm_of_outer_product(seed, m, n):
    rng = np.random.default_rng(seed)
    u, v = rng.standard_normal(m), rng.standard_normal(n)
    expected = np.linalg.norm(u) * np.linalg.norm(v)
    assert nu.trace_norm(np.outer(u, v)) == pytest.approx(expected, rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_kron_associative(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3)) for _ in range(3))
    assert np.allclose(nu.kron(nu.kron(a, b), c), nu.kron(a, nu.kron(b, c)), rtol=0, atol=1e-14)
