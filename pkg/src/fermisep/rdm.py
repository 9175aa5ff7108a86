"""Single-particle reduced density matrix and its diagonal decomposition.

The matrix element <i|rho_r|j> is (1/N) <Psi| a_j^dag a_i |Psi>, which makes
rho_r Hermitian, positive semidefinite, and normalized to unit trace. For a
state of Slater rank one the nonzero eigenvalues all equal 1/N; every
eigenvalue is bounded by 1/N in general.

The diagonal of rho_r admits a convex decomposition F_i = sum_k d_k f_ik with
weights d_k = |c_k|^2 and flat occupation distributions f_ik equal to 1/N on
the orbitals of tuple k and zero elsewhere. That structure drives the purity
bound sum_i F_i^2 <= 1/N used by the separability criteria.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .basis import OrbitalBasisIndex
from .errors import DimensionError
from .states import FermionState

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """D x D single-particle marginal of an N-fermion pure state, trace 1."""

    dim: int
    n: int
    entries: np.ndarray

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.complex128)
        if m.shape != (self.dim, self.dim):
            raise DimensionError(f"expected a {self.dim} x {self.dim} matrix, got {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def matrix(self) -> np.ndarray:
        return self.entries

    def hermiticity_defect(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def trace_defect(self) -> float:
        return abs(float(np.trace(self.entries).real) - 1.0)


@dataclass(frozen=True)
class ConvexDecomposition:
    """Diagonal of rho_r as a convex mixture of flat occupation distributions.

    weights: d_k = |c_k|^2, one per basis tuple, summing to 1.
    distributions: M x D matrix of f_ik, each row 1/N on tuple k's orbitals.
    diagonal: F_i = sum_k d_k f_ik, equal to <i|rho_r|i>.
    """

    weights: np.ndarray
    distributions: np.ndarray
    diagonal: np.ndarray = field(init=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64)
        f = np.array(self.distributions, dtype=np.float64)
        if f.shape[0] != w.shape[0]:
            raise DimensionError(f"{w.shape[0]} weights but {f.shape[0]} distributions")
        diag = w @ f
        for arr in (w, f, diag):
            arr.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "distributions", f)
        object.__setattr__(self, "diagonal", diag)

    def pairwise_identity_gap(self) -> float:
        """Difference between the two sides of the purity identity.

        sum_i F_i^2 = 1/N - sum_{k<k'} d_k d_k' sum_i (f_ik - f_ik')^2
        holds exactly; the return value is lhs - rhs and should vanish to
        rounding. Evaluated by direct double summation, independently of
        any density-matrix code.
        """
        f = self.distributions
        w = self.weights
        n_inv = float(f.max())  # rows sum to 1 with entries 0 or 1/N
        lhs = float(self.diagonal @ self.diagonal)
        m = f.shape[0]
        rhs = n_inv
        for k in range(m):
            if w[k] == 0.0:
                continue
            diff = f[k + 1:] - f[k]
            rhs -= float(w[k] * (w[k + 1:] * (diff * diff).sum(axis=1)).sum())
        return lhs - rhs


@lru_cache(maxsize=64)
def _transition_table(d: int, n: int):
    """Index arrays for the a_j^dag a_i contraction over all basis tuples.

    For every tuple S, occupied orbital i in S, and orbital j not in
    S minus i, the matrix element <i|rho|j> picks up
    sign * c_S * conj(c_S') / N with S' = (S minus i) + j. Rows of the
    table: source rank, destination rank, i, j, sign.
    """
    basis = OrbitalBasisIndex(d, n)
    all_tuples = basis.tuples()
    rank_of = {t: k for k, t in enumerate(all_tuples)}
    src, dst, ii, jj, sign = [], [], [], [], []
    for k, t in enumerate(all_tuples):
        for m, i in enumerate(t):
            rest = t[:m] + t[m + 1:]
            si = -1 if m % 2 else 1
            for j in range(d):
                created = basis.create(rest, j)
                if created is None:
                    continue
                t2, sj = created
                src.append(k)
                dst.append(rank_of[t2])
                ii.append(i)
                jj.append(j)
                sign.append(si * sj)
    return (
        np.array(src, dtype=np.intp),
        np.array(dst, dtype=np.intp),
        np.array(ii, dtype=np.intp),
        np.array(jj, dtype=np.intp),
        np.array(sign, dtype=np.float64),
    )


def compute_rdm(state: FermionState) -> ReducedDensityMatrix:
    """Single-particle reduced density matrix of a pure N-fermion state.

    Built by combinatorial enumeration over (tuple, orbital pair) moves,
    O(C(D,N) N D) work, never touching the D^N tensor. The result is exactly
    Hermitian by construction of the double sum.
    """
    d, n = state.d, state.n
    src, dst, ii, jj, sign = _transition_table(d, n)
    c = state.amplitudes
    terms = sign * (c[src] * np.conj(c[dst]))
    rho = np.zeros((d, d), dtype=np.complex128)
    np.add.at(rho, (ii, jj), terms)
    return ReducedDensityMatrix(d, n, rho / n)


def diagonal_decomposition(state: FermionState) -> ConvexDecomposition:
    """Convex decomposition of diag(rho_r) into flat occupation distributions."""
    basis = state.basis
    weights = np.abs(state.amplitudes) ** 2
    f = np.zeros((basis.size, basis.d), dtype=np.float64)
    for k, t in enumerate(basis.tuples()):
        f[k, list(t)] = 1.0 / basis.n
    return ConvexDecomposition(weights, f)
