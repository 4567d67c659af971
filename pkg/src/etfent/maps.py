"""Positive maps and entanglement witnesses generated by an ETF POVM.

For a POVM ``{P_l}`` with ``n`` elements on ``C^d`` and a real orthogonal
``O`` whose columns each sum to one, the map is

    Phi(X) = k [ (I/d) tr X - h sum_{k,l} O_kl tr[(X - (I/d) tr X) P_l] P_k ]

with ``k = sqrt(d(d-1) / (n(n-1)))`` and ``h = sqrt(n^3 (n-1) / (d^3 (d-1)^3))``.
Note that ``tr Phi(X) = k tr X``: the map is trace preserving only up to the
constant ``k`` (exactly when ``n = d``).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .numerics import hermitian_eigenvalues, kron
from .states import random_pure_vector

ROTATION_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class RotationO:
    matrix: np.ndarray

    def __post_init__(self):
        o = np.array(self.matrix, dtype=np.float64)
        if o.ndim != 2 or o.shape[0] != o.shape[1]:
            raise ValueError(f"rotation must be square, got shape {o.shape}")
        col_resid, orth_resid = rotation_residuals(o)
        if col_resid > ROTATION_TOL:
            raise ValueError(f"column sums deviate from 1 by {col_resid:.3e}")
        if orth_resid > ROTATION_TOL:
            raise ValueError(f"O^T O deviates from I by {orth_resid:.3e}")
        o.setflags(write=False)
        object.__setattr__(self, "matrix", o)

    @property
    def n(self):
        return self.matrix.shape[0]


def rotation_residuals(o):
    """Max deviations of the column sums from 1 and of ``O^T O`` from ``I``."""
    o = np.asarray(o, dtype=np.float64)
    col = float(np.max(np.abs(o.sum(axis=0) - 1.0)))
    orth = float(np.max(np.abs(o.T @ o - np.eye(o.shape[0]))))
    return col, orth


def rotation_identity(n):
    if n < 2:
        raise ValueError("rotation size must be at least 2")
    return RotationO(np.eye(n))


def _ones_householder(n):
    """Symmetric orthogonal H with H e_0 = u/|u| for the all-ones u."""
    u = np.ones(n) / np.sqrt(n)
    v = np.zeros(n)
    v[0] = 1.0
    v -= u
    if np.allclose(v, 0.0):
        return np.eye(n)
    return np.eye(n) - 2.0 * np.outer(v, v) / (v @ v)


def rotation_householder_family(n, angles):
    """Orthogonal ``O`` that fixes the all-ones direction and rotates its complement.

    The complement is spanned by columns ``1..n-1`` of a Householder reflection
    ``H`` sending ``e_0`` to ``u/|u|``; ``angles[k]`` is a Givens rotation in the
    plane of complement vectors ``k`` and ``k+1`` (``n - 2`` angles at most).
    Because ``u^T O = u^T``, every column sums to one.
    """
    if n < 2:
        raise ValueError("rotation size must be at least 2")
    angles = list(angles)
    if len(angles) > n - 2:
        raise ValueError(f"at most {n - 2} angles for n={n}, got {len(angles)}")
    g = np.eye(n - 1)
    for k, theta in enumerate(angles):
        r = np.eye(n - 1)
        c, s = np.cos(theta), np.sin(theta)
        r[k, k] = r[k + 1, k + 1] = c
        r[k, k + 1] = -s
        r[k + 1, k] = s
        g = r @ g
    h = _ones_householder(n)
    inner = np.eye(n)
    inner[1:, 1:] = g
    return RotationO(h @ inner @ h)


@dataclass(frozen=True, eq=False)
class PositiveMapSpec:
    povm: object
    rotation: RotationO

    def __post_init__(self):
        if self.rotation.n != self.povm.n:
            raise DimensionMismatch(
                f"rotation of size {self.rotation.n} does not match POVM with {self.povm.n} outcomes"
            )

    @property
    def d(self):
        return self.povm.d

    @property
    def n(self):
        return self.povm.n

    @property
    def h(self):
        n, d = self.n, self.d
        return float(np.sqrt(n**3 * (n - 1) / (d**3 * (d - 1) ** 3)))

    @property
    def prefactor(self):
        n, d = self.n, self.d
        return float(np.sqrt(d * (d - 1) / (n * (n - 1))))


def traceless_part(x):
    """``X - (I/d) tr X``."""
    x = np.asarray(x)
    d = x.shape[0]
    return x - np.trace(x) / d * np.eye(d)


def _unscaled(spec, x):
    """``Psi(X) = Phi(X) / prefactor``."""
    d = spec.d
    effects = spec.povm.effects
    a = np.einsum("lab,ba->l", effects, traceless_part(x))
    coeffs = spec.rotation.matrix @ a
    return np.trace(x) / d * np.eye(d) - spec.h * np.einsum("k,kab->ab", coeffs, effects)


def apply_map(spec, x):
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (spec.d, spec.d):
        raise DimensionMismatch(f"map acts on {spec.d}x{spec.d} matrices, got shape {x.shape}")
    return spec.prefactor * _unscaled(spec, x)


@dataclass(frozen=True)
class ProbeReport:
    num_samples: int
    max_purity: float
    ceiling: float
    min_eigenvalue: float

    @property
    def passed(self):
        return self.max_purity <= self.ceiling + 1e-9 and self.min_eigenvalue >= -1e-9


def positivity_probe(spec, num_samples, seed):
    """Sample Haar-random pure ``P`` and check ``tr[Psi(P)^2] <= 1/(d-1)`` and ``Phi(P) >= 0``.

    ``Psi = Phi / prefactor`` has unit trace on states, and a unit-trace
    Hermitian operator with purity at most ``1/(d-1)`` is positive.
    """
    if num_samples < 1:
        raise ValueError("num_samples must be positive")
    rng = np.random.default_rng(seed)
    d = spec.d
    max_purity = -np.inf
    min_eig = np.inf
    for _ in range(num_samples):
        psi = random_pure_vector(d, rng)
        out = _unscaled(spec, np.outer(psi, psi.conj()))
        max_purity = max(max_purity, float(np.real(np.vdot(out, out))))
        min_eig = min(min_eig, float(hermitian_eigenvalues(spec.prefactor * out)[0]))
    return ProbeReport(num_samples, max_purity, 1.0 / (d - 1), min_eig)


@dataclass(frozen=True, eq=False)
class Witness:
    matrix: np.ndarray
    spec: PositiveMapSpec
    spectrum: np.ndarray

    @property
    def min_eigenvalue(self):
        return float(self.spectrum[0])

    @property
    def nontrivial(self):
        """True when W has a negative eigenvalue, i.e. it can detect something."""
        return self.min_eigenvalue < -1e-10

    def to_json(self):
        return {
            "d": self.spec.d,
            "n": self.spec.n,
            "povm": self.spec.povm.name,
            "rotation": self.spec.rotation.matrix.tolist(),
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix],
        }


def witness_matrix(spec):
    """``k [ (1/d) I (x) I - h sum_{k,l} O_kl (P_l - (I/d) tr P_l)^T (x) P_k ]``."""
    d = spec.d
    effects = spec.povm.effects
    o = spec.rotation.matrix
    total = np.zeros((d * d, d * d), dtype=np.complex128)
    for l, pl in enumerate(effects):
        left = traceless_part(pl).T
        mixed = np.einsum("k,kab->ab", o[:, l], effects)
        total += kron(left, mixed)
    return spec.prefactor * (np.eye(d * d) / d - spec.h * total)


def witness_from_map(spec):
    """Choi-type construction ``sum_{ij} |i><j| (x) Phi(|i><j|)``."""
    d = spec.d
    w = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            unit = np.zeros((d, d), dtype=np.complex128)
            unit[i, j] = 1.0
            w += kron(unit, apply_map(spec, unit))
    return w


def build_witness(spec):
    mat = witness_matrix(spec)
    mat.setflags(write=False)
    return Witness(mat, spec, hermitian_eigenvalues(mat))


def witness_expectation(w, rho):
    """``tr(W rho)``; negative values certify entanglement."""
    mat = np.asarray(getattr(rho, "matrix", rho))
    if mat.shape != w.matrix.shape:
        raise DimensionMismatch(
            f"witness acts on dimension {w.matrix.shape[0]}, state has dimension {mat.shape[0]}"
        )
    value = np.sum(w.matrix.T * mat)
    if abs(value.imag) > 1e-10:
        raise ValueError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)
