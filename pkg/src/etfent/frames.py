"""Equiangular tight frames, the POVMs they generate, and a small catalog.

A frame is stored as an ``(n, d)`` complex array whose rows are the unit
vectors. Global phases are never normalized: two frames are compared through
their matrices of squared overlaps.
"""

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import (
    DimensionMismatch,
    FrameError,
    NotEquiangular,
    NotTight,
    NotUnit,
    TooManyVectors,
)
from .numerics import hermitian_eigenvalues

UNIT_TOL = 1e-10
TIGHT_TOL = 1e-9
ANGLE_TOL = 1e-9


def nominal_b(n, d):
    return n / d


def nominal_c(n, d):
    if n == 1:
        return 0.0
    return (n - d) / ((n - 1) * d)


@dataclass(frozen=True, eq=False)
class Frame:
    """A certified equiangular tight frame.

    ``b`` and ``c`` are the measured tightness and equiangularity constants;
    ``tight_residual`` is ``||S - bI||_F`` for the frame operator ``S`` and
    ``angle_deviation`` the largest ``| |<phi_i|phi_j>|^2 - c |``.
    """

    vectors: np.ndarray
    b: float
    c: float
    s_bounds: tuple
    tight_residual: float
    angle_deviation: float
    name: str = ""

    @property
    def n(self):
        return self.vectors.shape[0]

    @property
    def d(self):
        return self.vectors.shape[1]

    def frame_operator(self):
        return self.vectors.T @ self.vectors.conj()

    def overlaps(self):
        """Matrix of squared overlaps ``|<phi_i|phi_j>|^2`` (phase invariant)."""
        return np.abs(self.vectors.conj() @ self.vectors.T) ** 2

    def max_index_of_coincidence(self):
        """Largest ``sum_i p_i^2`` over states, ``(bc + 1 - c) / b^2``."""
        b, c = nominal_b(self.n, self.d), nominal_c(self.n, self.d)
        return (b * c + 1 - c) / b**2

    def to_json(self):
        return {
            "d": self.d,
            "n": self.n,
            "vectors": [[[float(z.real), float(z.imag)] for z in row] for row in self.vectors],
        }


@dataclass(frozen=True, eq=False)
class Povm:
    """Rank-one POVM ``E_i = (d/n)|phi_i><phi_i|`` built from a frame."""

    frame: Frame
    effects: np.ndarray = field(repr=False)

    @property
    def n(self):
        return self.frame.n

    @property
    def d(self):
        return self.frame.d

    @property
    def weight(self):
        return self.frame.d / self.frame.n

    @property
    def name(self):
        return self.frame.name

    def probabilities(self, rho):
        """Outcome probabilities ``p_i = (d/n) <phi_i|rho|phi_i>``."""
        rho = np.asarray(getattr(rho, "matrix", rho))
        if rho.shape != (self.d, self.d):
            raise DimensionMismatch(
                f"state of shape {rho.shape} does not act on C^{self.d} ({self.name or 'povm'})"
            )
        vecs = self.frame.vectors
        return self.weight * np.einsum("ia,ab,ib->i", vecs.conj(), rho, vecs).real


def validate_etf(vectors, name=""):
    """Certify a list of vectors as an equiangular tight frame.

    Parameters
    ----------
    vectors : array_like
        ``n`` vectors of length ``d`` (one per row).
    name : str, optional
        Label carried by the resulting :class:`Frame`.

    Returns
    -------
    Frame
        Frame with measured constants ``b`` and ``c`` and the frame bounds.

    Raises
    ------
    NotUnit, NotTight, NotEquiangular, TooManyVectors
        On the first invariant that fails.
    """
    vecs = np.array(vectors, dtype=np.complex128)
    if vecs.ndim != 2 or vecs.shape[0] == 0:
        raise FrameError(f"expected an (n, d) array of vectors, got shape {vecs.shape}")
    n, d = vecs.shape
    if n < d:
        raise FrameError(f"{n} vectors cannot span C^{d}")
    if n > d * d:
        raise TooManyVectors(n, d)

    norms = np.linalg.norm(vecs, axis=1)
    for i, nrm in enumerate(norms):
        if abs(nrm - 1.0) > UNIT_TOL:
            raise NotUnit(i, float(nrm))

    b = nominal_b(n, d)
    s = vecs.T @ vecs.conj()
    residual = float(np.linalg.norm(s - b * np.eye(d)))
    if residual > TIGHT_TOL:
        raise NotTight(residual)
    spectrum = hermitian_eigenvalues(s)

    c = nominal_c(n, d)
    gram = np.abs(vecs.conj() @ vecs.T) ** 2
    deviation = 0.0
    measured = []
    for i, j in combinations(range(n), 2):
        dev = abs(gram[i, j] - c)
        if dev > ANGLE_TOL:
            raise NotEquiangular(i, j, float(gram[i, j]), c)
        deviation = max(deviation, dev)
        measured.append(gram[i, j])
    c_measured = float(np.mean(measured)) if measured else c
    vecs.setflags(write=False)
    return Frame(
        vectors=vecs,
        b=float(np.mean(spectrum)),
        c=c_measured,
        s_bounds=(float(spectrum[0]), float(spectrum[-1])),
        tight_residual=residual,
        angle_deviation=float(deviation),
        name=name,
    )


def conjugate_frame(f):
    """Entrywise complex conjugate of a frame, re-certified."""
    if f.name.startswith("conj:"):
        name = f.name[len("conj:"):]
    else:
        name = f"conj:{f.name}" if f.name else ""
    return validate_etf(f.vectors.conj(), name=name)


def harmonic_etf(d, diff_set, n, name=""):
    """Harmonic frame from a difference set: ``phi_k[s] = w^(k*s) / sqrt(d)``, ``w = e^(2 pi i/n)``.

    The rows of the n-point DFT restricted to the columns in ``diff_set`` form an
    ETF exactly when ``diff_set`` is a difference set modulo ``n``; anything else
    fails certification with :class:`NotEquiangular`.
    """
    cols = np.asarray(diff_set, dtype=int)
    if cols.shape != (d,):
        raise FrameError(f"difference set must have {d} elements, got {len(cols)}")
    k = np.arange(n)[:, None]
    vecs = np.exp(2j * np.pi * ((k * cols[None, :]) % n) / n) / np.sqrt(d)
    return validate_etf(vecs, name=name or f"harmonic-{n}-{d}")


def povm_from_frame(f):
    w = f.d / f.n
    effects = w * np.einsum("ia,ib->iab", f.vectors, f.vectors.conj())
    effects.setflags(write=False)
    return Povm(frame=f, effects=effects)


def coincidence_index(p, rho):
    """Index of coincidence ``sum_i p_i^2`` together with its upper bound.

    The bound is ``(bc + (1 - c) tr rho^2) / b^2`` with the frame's nominal
    constants.

    Returns
    -------
    tuple of float
        ``(index, bound)``.
    """
    mat = np.asarray(getattr(rho, "matrix", rho))
    probs = p.probabilities(mat)
    purity = float(np.real(np.trace(mat @ mat)))
    b, c = nominal_b(p.n, p.d), nominal_c(p.n, p.d)
    return float(np.sum(probs**2)), (b * c + (1 - c) * purity) / b**2


# ---------------------------------------------------------------------------
# catalog


def basis_frame(d):
    return validate_etf(np.eye(d), name=f"basis-{d}")


def sic_d2():
    """Qubit SIC: |0> and sqrt(1/3)|0> + sqrt(2/3) w^k |1>, w = e^(2 pi i/3)."""
    w = np.exp(2j * np.pi / 3)
    vecs = [[1.0, 0.0]]
    vecs += [[np.sqrt(1 / 3), np.sqrt(2 / 3) * w**k] for k in range(3)]
    return validate_etf(vecs, name="sic-d2")


def sic_d3():
    """The nine-vector qutrit SIC built from differences of basis vectors."""
    w = np.exp(2j * np.pi / 3)
    w2 = w * w
    vecs = np.array(
        [
            [0, 1, -1],
            [-1, 0, 1],
            [1, -1, 0],
            [0, w, -w2],
            [-1, 0, w2],
            [1, -w, 0],
            [0, w2, -w],
            [-1, 0, w],
            [1, -w2, 0],
        ],
        dtype=np.complex128,
    ) / np.sqrt(2)
    return validate_etf(vecs, name="sic-d3")


def harmonic_7_3():
    return harmonic_etf(3, [0, 1, 3], 7, name="harmonic-7-3")


_BUILDERS = {
    "sic-d2": sic_d2,
    "sic-d3": sic_d3,
    "harmonic-7-3": harmonic_7_3,
}


def catalog_names():
    base = ["basis-2", "basis-3", "sic-d2", "sic-d3", "harmonic-7-3"]
    return base + [f"conj:{b}" for b in base]


def get_frame(name):
    """Look up a catalog frame by name (``basis-<d>``, ``sic-d2``, ``conj:<name>``...)."""
    if name.startswith("conj:"):
        return conjugate_frame(get_frame(name[len("conj:"):]))
    if name.startswith("basis-"):
        try:
            d = int(name[len("basis-"):])
        except ValueError:
            raise KeyError(name) from None
        if d < 1:
            raise KeyError(name)
        return basis_frame(d)
    if name not in _BUILDERS:
        raise KeyError(name)
    return _BUILDERS[name]()


def get_povm(name):
    return povm_from_frame(get_frame(name))


def frame_from_json(data, name=""):
    """Parse ``{"d": int, "n": int, "vectors": [[[re, im], ...], ...]}`` and certify it."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    try:
        d, n, rows = int(data["d"]), int(data["n"]), data["vectors"]
        vecs = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        raise FrameError(f"malformed frame JSON: {exc}") from exc
    if vecs.shape != (n, d):
        raise FrameError(f"declared n={n}, d={d} but vectors have shape {vecs.shape}")
    return validate_etf(vecs, name=name)


def load_frame(path):
    with open(path) as fh:
        return frame_from_json(json.load(fh), name=str(path))
