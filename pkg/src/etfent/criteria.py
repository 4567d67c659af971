"""Separability tests built on ETF measurement statistics.

* :func:`theorem1`: trace norm of the bipartite correlation matrix.
* :func:`theorem4`: Frobenius norm of the tripartite correlation hypermatrix.
* :func:`theorem5`: trace norms of the three block-diagonal unfoldings.

Every test is one-sided. A statistic above its bound certifies entanglement
(or, for the tripartite tests, that the state is not fully separable); a
statistic at or below the bound is inconclusive.
"""

from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np
from scipy.linalg import block_diag

from .errors import DimensionMismatch
from .frames import conjugate_frame, nominal_b, nominal_c, povm_from_frame
from .numerics import VERDICT_TOL, frobenius_norm, trace_norm


@dataclass(frozen=True)
class Verdict:
    criterion: str
    statistic: float
    bound: float
    tolerance: float = VERDICT_TOL

    @property
    def margin(self):
        return self.statistic - self.bound

    @property
    def entangled(self):
        return self.margin > self.tolerance

    def to_dict(self):
        return {
            "criterion": self.criterion,
            "statistic": self.statistic,
            "bound": self.bound,
            "margin": self.margin,
            "entangled": self.entangled,
        }


@dataclass(frozen=True, eq=False)
class BipartiteCorrelation:
    matrix: np.ndarray
    povm_a: object
    povm_b: object


@dataclass(eq=False)
class TripartiteCorrelation:
    hyper: np.ndarray
    povms: tuple

    @cached_property
    def unfoldings(self):
        return unfoldings(self)

    def blocks(self, party):
        """Slices of the hypermatrix along ``party`` (0, 1 or 2), one per outcome."""
        return [np.take(self.hyper, i, axis=party) for i in range(self.hyper.shape[party])]


def _check_dims(rho, povms):
    dims = tuple(p.d for p in povms)
    if tuple(rho.factor_dims) != dims:
        names = ", ".join(p.name or "povm" for p in povms)
        raise DimensionMismatch(f"state factor dims {rho.factor_dims} do not match POVMs ({names}) of dims {dims}")


def _outcome_weights(rho, povms):
    """``m[i, j, ...] = w <phi_i (x) psi_j ...| rho |phi_i (x) psi_j ...>`` as quadratic forms.

    The joint outcome vectors are the rows of the Kronecker product of the
    frame matrices, so no ``d^k x d^k`` effect is ever formed.
    """
    _check_dims(rho, povms)
    joint = reduce(np.kron, [p.frame.vectors for p in povms])
    amp = np.einsum("xa,xa->x", joint.conj(), joint @ np.asarray(rho.matrix).T)
    weight = np.prod([p.weight for p in povms])
    return weight * amp.real.reshape(tuple(p.n for p in povms))


def correlation_matrix(rho, pa, pb=None):
    """``M[i, j] = tr[(E_i^A (x) E_j^B) rho]``.

    ``pb`` defaults to the POVM of the conjugate of ``pa``'s frame.
    """
    if pb is None:
        pb = povm_from_frame(conjugate_frame(pa.frame))
    m = _outcome_weights(rho, (pa, pb))
    return BipartiteCorrelation(m, pa, pb)


def theorem1_bound(pa, pb):
    ba, ca = nominal_b(pa.n, pa.d), nominal_c(pa.n, pa.d)
    bb, cb = nominal_b(pb.n, pb.d), nominal_c(pb.n, pb.d)
    return float(np.sqrt((ba * ca + (1 - ca)) * (bb * cb + (1 - cb)) / (ba**2 * bb**2)))


def theorem1(rho, pa, pb=None, tolerance=VERDICT_TOL):
    corr = correlation_matrix(rho, pa, pb)
    return Verdict("thm1", trace_norm(corr.matrix), theorem1_bound(corr.povm_a, corr.povm_b), tolerance)


def hypermatrix(rho, pa, pb=None, pc=None):
    """``m[i, j, k] = tr[rho (P_i^A (x) P_j^B (x) P_k^C)]``; ``pb``, ``pc`` default to ``pa``."""
    pb = pa if pb is None else pb
    pc = pa if pc is None else pc
    return TripartiteCorrelation(_outcome_weights(rho, (pa, pb, pc)), (pa, pb, pc))


def theorem4_bound(pa, pb, pc):
    num = 1.0
    den = 1.0
    for p in (pa, pb, pc):
        b, c = nominal_b(p.n, p.d), nominal_c(p.n, p.d)
        num *= b * c + 1 - c
        den *= b
    return float(np.sqrt(num) / den)


def theorem4(rho, pa, pb=None, pc=None, tolerance=VERDICT_TOL):
    tc = hypermatrix(rho, pa, pb, pc)
    return Verdict("thm4", frobenius_norm(tc.hyper), theorem4_bound(*tc.povms), tolerance)


UNFOLDING_TAGS = ("abc", "bac", "cab")


def unfoldings(tc):
    """The three block-diagonal unfoldings, grouped by the outcome of A, B and C."""
    return tuple(block_diag(*tc.blocks(party)) for party in range(3))


def unfolding_trace_norms(tc):
    """Trace norms of the unfoldings, summed block by block."""
    return tuple(sum(trace_norm(blk) for blk in tc.blocks(party)) for party in range(3))


def _unfolding_factor(n, d):
    return (n - 2 * d + d * d) / (n * (n - 1))


def theorem5_bounds(pa, pb, pc):
    d = pa.d
    if pb.d != d or pc.d != d:
        raise DimensionMismatch("the unfolding criterion needs equal local dimensions")
    fa, fb, fc = (_unfolding_factor(p.n, d) for p in (pa, pb, pc))
    return (float(np.sqrt(fb * fc)), float(np.sqrt(fa * fc)), float(np.sqrt(fa * fb)))


def theorem5(rho, pa, pb=None, pc=None, tolerance=VERDICT_TOL):
    """Three verdicts, one per unfolding; any violation rules out full separability."""
    tc = hypermatrix(rho, pa, pb, pc)
    stats = unfolding_trace_norms(tc)
    bounds = theorem5_bounds(*tc.povms)
    return tuple(
        Verdict(f"thm5-{tag}", s, b, tolerance) for tag, s, b in zip(UNFOLDING_TAGS, stats, bounds)
    )
