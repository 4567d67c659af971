"""Density matrices, the named state families, and seeded random sampling.

Random states use numpy's ``Generator`` with the PCG64 bit generator
(``numpy.random.default_rng(seed)``), so a given seed yields the same matrix
on every platform.
"""

import json
from dataclasses import dataclass
from functools import reduce
from itertools import permutations

import numpy as np

from .errors import DomainError, NotDensityMatrix, ShapeMismatch
from .numerics import HERM_TOL, PSD_TOL, hermiticity_defect, hermitian_eigenvalues


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated density matrix on a composite space with ``factor_dims``.

    Construction checks Hermiticity, unit trace and positivity to 1e-10.
    """

    matrix: np.ndarray
    factor_dims: tuple

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=np.complex128)
        dims = tuple(int(x) for x in self.factor_dims)
        total = int(np.prod(dims)) if dims else 0
        if mat.shape != (total, total):
            raise ShapeMismatch(f"matrix of shape {mat.shape} does not match factor dims {dims}")
        defect = hermiticity_defect(mat)
        if defect > HERM_TOL:
            raise NotDensityMatrix(f"not Hermitian: defect {defect:.3e}")
        tr = np.trace(mat)
        if abs(tr - 1.0) > HERM_TOL:
            raise NotDensityMatrix(f"trace is {tr}, expected 1")
        w = hermitian_eigenvalues(mat)
        if w[0] < -PSD_TOL:
            raise NotDensityMatrix(f"minimum eigenvalue {w[0]:.3e} is negative")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "factor_dims", dims)
        # eigenvalues in [-PSD_TOL, 0) are rounding of exact zeros
        object.__setattr__(self, "_spectrum", np.where(w < 0, 0.0, w))

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def spectrum(self):
        return self._spectrum.copy()

    @property
    def purity(self):
        return float(np.real(np.vdot(self.matrix, self.matrix)))

    def to_json(self):
        return {
            "factor_dims": list(self.factor_dims),
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix],
        }


def state_from_json(data):
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    try:
        mat = np.array(
            [[complex(re, im) for re, im in row] for row in data["matrix"]], dtype=np.complex128
        )
        dims = data["factor_dims"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeMismatch(f"malformed state JSON: {exc}") from exc
    return DensityMatrix(mat, dims)


def load_state(path):
    with open(path) as fh:
        return state_from_json(json.load(fh))


def max_entangled_vector(d):
    """``|psi_d^+> = (1/sqrt d) sum_i |ii>``."""
    return np.eye(d, dtype=np.complex128).reshape(d * d) / np.sqrt(d)


def isotropic(d, p):
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"isotropic weight p={p} outside [0, 1]")
    psi = max_entangled_vector(d)
    mat = (1 - p) / d**2 * np.eye(d * d) + p * np.outer(psi, psi.conj())
    return DensityMatrix(mat, (d, d))


def _horodecki_matrix(x):
    mat = np.zeros((9, 9))
    ghz = [0, 4, 8]
    for i in ghz:
        for j in ghz:
            mat[i, j] = x
    for i in (1, 2, 3, 5, 7):
        mat[i, i] = x
    mat[6, 6] = mat[8, 8] = (1 + x) / 2
    mat[6, 8] = mat[8, 6] = np.sqrt(1 - x * x) / 2
    return mat / (1 + 8 * x)


def horodecki_3x3(x):
    """Horodecki's 3x3 bound entangled state, defined for ``0 < x < 1``."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"Horodecki parameter x={x} outside (0, 1)")
    return DensityMatrix(_horodecki_matrix(x), (3, 3))


def sigma_xp(x, p):
    """``p rho_x + (1 - p) I/9``."""
    if not 0.0 < x < 1.0:
        raise DomainError(f"Horodecki parameter x={x} outside (0, 1)")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"mixing weight p={p} outside [0, 1]")
    return DensityMatrix(p * _horodecki_matrix(x) + (1 - p) * np.eye(9) / 9, (3, 3))


def antisymmetric_vector():
    """Totally antisymmetric state of three qutrits, labels 1,2,3 mapped to 0,1,2."""
    phi = np.zeros(27, dtype=np.complex128)
    for perm in permutations(range(3)):
        inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
        phi[perm[0] * 9 + perm[1] * 3 + perm[2]] = (-1) ** inversions / np.sqrt(6)
    return phi


def antisymmetric_tripartite(x):
    """``(x/27) I + (1 - x)|phi><phi|`` on three qutrits, ``x`` in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"mixing weight x={x} outside [0, 1]")
    phi = antisymmetric_vector()
    mat = x / 27 * np.eye(27) + (1 - x) * np.outer(phi, phi.conj())
    return DensityMatrix(mat, (3, 3, 3))


def maximally_mixed(dims):
    dims = tuple(dims)
    total = int(np.prod(dims))
    return DensityMatrix(np.eye(total) / total, dims)


def product_state(factors):
    mats = [f.matrix for f in factors]
    dims = tuple(dim for f in factors for dim in f.factor_dims)
    return DensityMatrix(reduce(np.kron, mats), dims)


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_pure_vector(d, seed):
    rng = _rng(seed)
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def random_pure(d, seed):
    """Haar-random pure state (normalized complex Gaussian vector)."""
    psi = random_pure_vector(d, seed)
    return DensityMatrix(np.outer(psi, psi.conj()), (d,))


def random_density(d, seed):
    """Hilbert-Schmidt random state ``GG^dagger / tr(GG^dagger)``."""
    rng = _rng(seed)
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    mat = g @ g.conj().T
    return DensityMatrix(mat / np.trace(mat).real, (d,))


def random_product(dims, seed):
    rng = _rng(seed)
    return product_state([random_density(d, rng) for d in dims])


def random_separable(dims, terms, seed):
    """Convex mixture of ``terms`` random product states with Dirichlet weights."""
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    mat = sum(w * random_product(dims, rng).matrix for w in weights)
    return DensityMatrix(mat, tuple(dims))


FAMILIES = {
    "isotropic": (isotropic, ("d", "p")),
    "horodecki": (horodecki_3x3, ("x",)),
    "sigma": (sigma_xp, ("x", "p")),
    "antisym3": (antisymmetric_tripartite, ("x",)),
}


def make_state(family, **params):
    """Build a named family member, e.g. ``make_state("isotropic", d=3, p=0.5)``."""
    try:
        ctor, names = FAMILIES[family]
    except KeyError:
        raise KeyError(f"unknown state family {family!r}; known: {sorted(FAMILIES)}") from None
    missing = [n for n in names if n not in params]
    extra = [n for n in params if n not in names]
    if missing or extra:
        raise TypeError(f"family {family!r} takes parameters {names}, got {sorted(params)}")
    args = [int(params[n]) if n == "d" else float(params[n]) for n in names]
    return ctor(*args)
