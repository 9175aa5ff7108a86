"""Dense first-quantized cross-check for the compact amplitude representation.

Everything here works on the full D^N tensor of antisymmetric coefficients,
the representation the rest of the package deliberately avoids. It exists
only to verify the fast path on small instances and is never part of the
analysis pipeline. A hard cap on D^N (default 10^6, overridable through the
FERMISEP_ORACLE_CAP environment variable) guards against accidental
exponential blow-up.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations
from math import factorial

import numpy as np

from .basis import OrbitalBasisIndex
from .errors import DimensionError, ResourceLimitError
from .rdm import ReducedDensityMatrix
from .states import FermionState

DEFAULT_CAP = 10**6
CAP_ENV_VAR = "FERMISEP_ORACLE_CAP"


def oracle_cap() -> int:
    """Current D^N cap, from the environment when set."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ResourceLimitError(f"{CAP_ENV_VAR} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ResourceLimitError(f"{CAP_ENV_VAR} must be positive, got {cap}")
    return cap


def _permutation_signs(n: int) -> list[tuple[tuple[int, ...], int]]:
    out = []
    for perm in permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        out.append((perm, -1 if inversions % 2 else 1))
    return out


@dataclass(frozen=True)
class DenseWavefunction:
    """Fully antisymmetric coefficient tensor w over all D^N ordered tuples.

    Mirrors a compact state: at a permutation of a sorted tuple t the entry
    is sign(permutation) * c_t / N!, zero on repeated indices, so the total
    squared norm of a normalized state is 1/N!.
    """

    d: int
    n: int
    tensor: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.tensor, dtype=np.complex128).reshape(-1)
        if w.shape[0] != self.d**self.n:
            raise DimensionError(f"expected {self.d ** self.n} entries, got {w.shape[0]}")
        w.flags.writeable = False
        object.__setattr__(self, "tensor", w)

    def as_ndarray(self) -> np.ndarray:
        return self.tensor.reshape((self.d,) * self.n)

    def antisymmetry_defect(self) -> float:
        """Max violation of w -> -w under adjacent index swaps, checked exhaustively."""
        a = self.as_ndarray()
        worst = 0.0
        for axis in range(self.n - 1):
            worst = max(worst, float(np.max(np.abs(a + np.swapaxes(a, axis, axis + 1)))))
        return worst

    def norm_defect(self) -> float:
        """Deviation of the total squared norm from 1/N!."""
        return abs(float(np.vdot(self.tensor, self.tensor).real) - 1.0 / factorial(self.n))


def densify(state: FermionState) -> DenseWavefunction:
    """Expand a compact state into the full D^N antisymmetric tensor."""
    d, n = state.d, state.n
    if d**n > oracle_cap():
        raise ResourceLimitError(
            f"dense tensor needs {d ** n} entries, above the cap {oracle_cap()} "
            f"(override with {CAP_ENV_VAR})"
        )
    strides = np.array([d ** (n - 1 - p) for p in range(n)], dtype=np.intp)
    scale = 1.0 / factorial(n)
    w = np.zeros(d**n, dtype=np.complex128)
    signs = _permutation_signs(n)
    for k, t in enumerate(state.basis.tuples()):
        value = state.amplitudes[k] * scale
        base = np.array(t, dtype=np.intp)
        for perm, sign in signs:
            w[int(strides @ base[list(perm)])] = sign * value
    return DenseWavefunction(d, n, w)


def sparsify(dense: DenseWavefunction) -> FermionState:
    """Inverse of densify: read N! times the entries at sorted tuples."""
    basis = OrbitalBasisIndex(dense.d, dense.n)
    strides = np.array([dense.d ** (dense.n - 1 - p) for p in range(dense.n)], dtype=np.intp)
    scale = float(factorial(dense.n))
    c = np.empty(basis.size, dtype=np.complex128)
    for k, t in enumerate(basis.tuples()):
        c[k] = dense.tensor[int(strides @ np.array(t, dtype=np.intp))] * scale
    return FermionState(basis, c)


def oracle_rdm(dense: DenseWavefunction) -> ReducedDensityMatrix:
    """Single-particle marginal by explicit partial trace over N-1 indices.

    rho(i, j) is proportional to sum over the remaining indices of
    w(i, rest) * conj(w(j, rest)); the result is normalized to unit trace at
    the end instead of tracking the 1/N prefactor, so this path shares no
    normalization code with the fast combinatorial construction.
    """
    w = dense.tensor.reshape(dense.d, -1)
    g = w @ w.conj().T
    trace = float(np.trace(g).real)
    if trace <= 0.0:
        raise DimensionError("cannot normalize the marginal of a zero tensor")
    return ReducedDensityMatrix(dense.d, dense.n, g / trace)
