"""Dense complex linear algebra for the small operators used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` (or ``float64``).
Hermitian spectra come from a cyclic complex Jacobi eigensolver and singular
values from one-sided (Hestenes) Jacobi; both kernels are compiled with numba.
Dimensions stay below ~100, where Jacobi is fast and accurate to working
precision.
"""

from dataclasses import dataclass

import numba
import numpy as np

from .errors import NoConvergence, NotHermitian, ShapeMismatch


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-10
    psd: float = 1e-10
    eig_resid: float = 1e-9
    verdict: float = 1e-9
    max_sweeps: int = 100


TOL = Tolerances()
HERM_TOL = TOL.herm
PSD_TOL = TOL.psd
EIG_RESID = TOL.eig_resid
VERDICT_TOL = TOL.verdict
MAX_SWEEPS = TOL.max_sweeps


@numba.njit(cache=True)
def _jacobi_hermitian(a, want_vectors, max_sweeps):
    """Cyclic Jacobi on a Hermitian matrix, in place.

    Returns (eigenvalues, eigenvectors, sweeps_used); sweeps_used < 0 signals
    the sweep cap was reached.
    """
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    norm2 = 0.0
    for i in range(n):
        for j in range(n):
            norm2 += a[i, j].real ** 2 + a[i, j].imag ** 2
    # rounding floor: n^2 off-diagonal entries of size ~eps*||a||
    stop = (4.0 * 2.220446049250313e-16 * n) ** 2 * norm2
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += 2.0 * (a[p, q].real ** 2 + a[p, q].imag ** 2)
        if off <= stop or off == 0.0:
            w = np.empty(n)
            for i in range(n):
                w[i] = a[i, i].real
            return w, v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * r)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # J = [[c, s*phase], [-s*conj(phase), c]] on (p, q)
                sp = s * phase
                spc = s * np.conj(phase)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - spc * akq
                    a[k, q] = sp * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - sp * aqk
                    a[q, k] = spc * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                if want_vectors:
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - spc * vkq
                        v[k, q] = sp * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i].real
    return w, v, -1


@numba.njit(cache=True)
def _hestenes_singular_values(a, max_sweeps):
    """One-sided Jacobi: orthogonalize the columns of ``a`` (rows >= cols).

    Returns (singular values unsorted, sweeps_used); negative sweeps signals
    the cap was reached.
    """
    m, n = a.shape
    eps = 2.220446049250313e-16
    tol = m * eps
    norm2 = 0.0
    for i in range(m):
        for j in range(n):
            norm2 += a[i, j].real ** 2 + a[i, j].imag ** 2
    negligible = eps * eps * norm2
    for sweep in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = 0.0
                beta = 0.0
                gamma = 0.0 + 0.0j
                for k in range(m):
                    alpha += a[k, p].real ** 2 + a[k, p].imag ** 2
                    beta += a[k, q].real ** 2 + a[k, q].imag ** 2
                    gamma += np.conj(a[k, p]) * a[k, q]
                r = abs(gamma)
                if r == 0.0 or r <= tol * np.sqrt(alpha * beta):
                    continue
                if alpha <= negligible or beta <= negligible:
                    continue
                rotated = True
                phase = gamma / r
                theta = (beta - alpha) / (2.0 * r)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                sp = s * phase
                spc = s * np.conj(phase)
                for k in range(m):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - spc * akq
                    a[k, q] = sp * akp + c * akq
        if not rotated:
            sv = np.empty(n)
            for j in range(n):
                acc = 0.0
                for k in range(m):
                    acc += a[k, j].real ** 2 + a[k, j].imag ** 2
                sv[j] = np.sqrt(acc)
            return sv, sweep
    sv = np.zeros(n)
    return sv, -1


def as_matrix(m):
    """Return ``m`` as a 2-D complex128 array, validating finiteness."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ShapeMismatch("matrix has non-finite entries")
    return arr


def _require_square(arr):
    if arr.shape[0] != arr.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {arr.shape}")


def hermiticity_defect(m):
    """Largest entry of ``|m - m^dagger|``."""
    arr = as_matrix(m)
    _require_square(arr)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr - arr.conj().T)))


def kron(a, b):
    """Kronecker product; ``(a (x) b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeMismatch("kron expects two 2-D matrices")
    return np.kron(a, b)


def dagger(m):
    return np.conj(np.asarray(m)).T


def trace(m):
    arr = np.asarray(m)
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D matrix, got shape {arr.shape}")
    _require_square(arr)
    return complex(np.trace(arr))


def frobenius_norm(m):
    """Frobenius norm of an array of any rank (hypermatrices are flattened)."""
    arr = np.asarray(m)
    return float(np.sqrt(np.sum(np.abs(arr) ** 2)))


def hermitian_eigh(m, herm_tol=HERM_TOL):
    """Eigen-decomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like
        Square matrix with ``max |m - m^dagger| <= herm_tol``.

    Returns
    -------
    w : ndarray
        Eigenvalues in ascending order.
    v : ndarray
        Unitary matrix whose columns are the matching eigenvectors.

    Raises
    ------
    NotHermitian
        If the Hermiticity defect exceeds ``herm_tol``.
    NoConvergence
        If the Jacobi iteration hits the sweep cap.
    """
    arr = as_matrix(m)
    _require_square(arr)
    defect = hermiticity_defect(arr)
    if defect > herm_tol:
        raise NotHermitian(f"max |m - m^dagger| = {defect:.3e} exceeds {herm_tol:.1e}")
    work = 0.5 * (arr + arr.conj().T)
    w, v, sweeps = _jacobi_hermitian(work, True, MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m, herm_tol=HERM_TOL):
    """Ascending eigenvalues of a Hermitian matrix (see :func:`hermitian_eigh`)."""
    arr = as_matrix(m)
    _require_square(arr)
    defect = hermiticity_defect(arr)
    if defect > herm_tol:
        raise NotHermitian(f"max |m - m^dagger| = {defect:.3e} exceeds {herm_tol:.1e}")
    work = 0.5 * (arr + arr.conj().T)
    w, _, sweeps = _jacobi_hermitian(work, False, MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")
    return np.sort(w)


def singular_values(m):
    """Singular values in descending order, all non-negative."""
    arr = as_matrix(m)
    rows, cols = arr.shape
    if rows == 0 or cols == 0:
        return np.zeros(0)
    work = arr.copy() if rows >= cols else arr.conj().T.copy()
    sv, sweeps = _hestenes_singular_values(work, MAX_SWEEPS)
    if sweeps < 0:
        raise NoConvergence(f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")
    return np.sort(sv)[::-1]


def trace_norm(m):
    """Sum of singular values (nuclear norm)."""
    return float(np.sum(singular_values(m)))
