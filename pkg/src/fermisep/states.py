"""Pure states of N identical fermions in a D-orbital single-particle space.

A state is stored as one complex amplitude per strictly increasing orbital
N-tuple, ordered by the lexicographic ranking of :class:`~fermisep.basis.OrbitalBasisIndex`.
With respect to the full antisymmetric expansion over ordered index tuples,
the stored amplitude c_t is N! times the tensor coefficient of the sorted
representative, so that the unit-norm condition reads sum |c_t|^2 = 1.

The module covers construction (explicit coefficients, Slater determinants
from orbitals, seeded random ensembles), the single-particle basis change
(exterior power of a unitary), and the JSON state-file format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .basis import OrbitalBasisIndex, OrbitalTuple
from .errors import (
    DegenerateOrbitalsError,
    DimensionError,
    DuplicateEntryError,
    InvalidTupleError,
    NonUnitaryError,
    StateFormatError,
    ZeroStateError,
)

NORM_TOL = 1e-12
UNITARY_TOL = 1e-10
ORTHO_TOL = 1e-12
DEPENDENCE_TOL = 1e-10


@dataclass(frozen=True)
class FermionState:
    """Normalized pure state of ``basis.n`` fermions in ``basis.d`` orbitals.

    Parameters
    ----------
    basis:
        Index mapping between sorted orbital tuples and amplitude positions.
    amplitudes:
        Complex vector of length ``basis.size``; entry ``basis.rank(t)``
        holds the coefficient of the basis determinant on tuple ``t``.
        Input of any nonzero norm is accepted and normalized silently.
    """

    basis: OrbitalBasisIndex
    amplitudes: np.ndarray

    def __post_init__(self):
        # Copy so the stored vector is never a view of caller-owned memory.
        c = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if c.shape != (self.basis.size,):
            raise DimensionError(
                f"expected {self.basis.size} amplitudes for d={self.d}, n={self.n}, got {c.shape[0]}"
            )
        norm = float(np.linalg.norm(c))
        if norm == 0.0 or not np.isfinite(norm):
            raise ZeroStateError("amplitudes have zero or non-finite norm")
        if abs(norm - 1.0) > NORM_TOL:
            c = c / norm
        c.flags.writeable = False
        object.__setattr__(self, "amplitudes", c)

    @property
    def d(self) -> int:
        return self.basis.d

    @property
    def n(self) -> int:
        return self.basis.n

    def amplitude(self, orbitals: OrbitalTuple) -> complex:
        """Coefficient of the basis determinant on the given sorted tuple."""
        return complex(self.amplitudes[self.basis.rank(orbitals)])


@dataclass(frozen=True)
class LocalUnitary:
    """Single-particle basis rotation, a D x D unitary matrix.

    The same rotation is applied to every particle at once; this is the
    symmetry group under which fermionic entanglement is invariant. Any
    unitary is accepted, the overall determinant phase plays no role in
    the quantities computed downstream.
    """

    matrix: np.ndarray
    tolerance: float = UNITARY_TOL

    def __post_init__(self):
        u = np.asarray(self.matrix, dtype=np.complex128)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise DimensionError(f"unitary must be square, got shape {u.shape}")
        defect = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
        if defect > self.tolerance:
            raise NonUnitaryError(f"U^dag U deviates from identity by {defect:.3e}")
        u.flags.writeable = False
        object.__setattr__(self, "matrix", u)

    @property
    def d(self) -> int:
        return self.matrix.shape[0]


def from_coefficients(
    d: int, n: int, entries: list[tuple[OrbitalTuple, complex]]
) -> FermionState:
    """Build a state from (sorted tuple, coefficient) pairs.

    Tuples must be valid and distinct; missing tuples get amplitude zero.
    The result is normalized, so the coefficients only need a nonzero norm.
    """
    basis = OrbitalBasisIndex(d, n)
    c = np.zeros(basis.size, dtype=np.complex128)
    seen: set[OrbitalTuple] = set()
    for orbitals, value in entries:
        t = basis.validate(orbitals)
        if t in seen:
            raise DuplicateEntryError(f"tuple {t} listed twice")
        seen.add(t)
        c[basis.rank(t)] = value
    if not np.any(c):
        raise ZeroStateError("all coefficients are zero")
    return FermionState(basis, c)


def _orthonormalize(columns: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Raises DegenerateOrbitalsError when a column is (numerically) in the
    span of its predecessors. The result is orthonormal to about 1e-12 or
    better even for poorly conditioned input.
    """
    m = np.array(columns, dtype=np.complex128)
    d, n = m.shape
    for j in range(n):
        original = np.linalg.norm(m[:, j])
        for _ in range(2):
            for i in range(j):
                m[:, j] -= (m[:, i].conj() @ m[:, j]) * m[:, i]
        norm = np.linalg.norm(m[:, j])
        if original == 0.0 or norm <= DEPENDENCE_TOL * original:
            raise DegenerateOrbitalsError(f"orbital {j} is linearly dependent on the previous ones")
        m[:, j] /= norm
    return m


def slater_from_orbitals(orbitals: list[np.ndarray] | np.ndarray) -> FermionState:
    """Antisymmetrized product state of N single-particle orbitals.

    The orbitals (columns of a D x N matrix or a list of D-vectors) are
    orthonormalized first; the state depends only on their span, up to a
    global phase. The amplitude on a sorted tuple t is the determinant of
    the t-rows of the orthonormalized matrix, which by the Cauchy-Binet
    identity already gives a unit-norm vector. States built this way have
    Slater rank one by construction.
    """
    if isinstance(orbitals, (list, tuple)):
        # A sequence of N vectors, each of length D; stack them as columns.
        m = np.asarray(orbitals, dtype=np.complex128).T
    else:
        m = np.asarray(orbitals, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"expected a stack of vectors, got ndim={m.ndim}")
    d, n = m.shape
    basis = OrbitalBasisIndex(d, n)
    q = _orthonormalize(m)
    rows = np.array(basis.tuples(), dtype=np.intp)
    c = np.linalg.det(q[rows, :])
    return FermionState(basis, c)


def apply_local_unitary(state: FermionState, u: LocalUnitary) -> FermionState:
    """Rotate every orbital of `state` by the same single-particle unitary.

    The amplitude vector transforms by the N-th exterior power of U: the
    output coefficient on tuple T is sum over S of det(U[T, S]) times the
    input coefficient on S, where U[T, S] is the N x N minor with rows T
    and columns S. Cost O(C(D,N)^2 N^3), fine at desk scale.
    """
    if u.d != state.d:
        raise DimensionError(f"unitary is {u.d}-dimensional, state has d={state.d}")
    basis = state.basis
    tuples = np.array(basis.tuples(), dtype=np.intp)
    out = np.empty(basis.size, dtype=np.complex128)
    for a in range(basis.size):
        # minors[b] = U[T_a, S_b]; one stacked determinant call per row T_a
        # keeps peak memory at O(C(D,N) N^2) instead of O(C(D,N)^2 N^2).
        minors = u.matrix[tuples[a]][:, tuples].transpose(1, 0, 2)
        out[a] = np.linalg.det(minors) @ state.amplitudes
    return FermionState(basis, out)


def random_state(d: int, n: int, seed: int | np.random.SeedSequence) -> FermionState:
    """Haar-like random state: i.i.d. complex Gaussian amplitudes, normalized."""
    rng = np.random.default_rng(seed)
    basis = OrbitalBasisIndex(d, n)
    c = rng.standard_normal(basis.size) + 1j * rng.standard_normal(basis.size)
    return FermionState(basis, c)


def random_slater(d: int, n: int, seed: int | np.random.SeedSequence) -> FermionState:
    """Random Slater-rank-one state from N Gaussian orbitals, orthonormalized."""
    if n > d:
        raise DimensionError(f"need n <= d, got n={n} > d={d}")
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
    return slater_from_orbitals(m)


def haar_unitary(d: int, rng: np.random.Generator) -> LocalUnitary:
    """Haar-distributed d x d unitary via QR with the R-diagonal phase fix."""
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    q = q * (np.diag(r) / np.abs(np.diag(r)))
    return LocalUnitary(q)


def _entry_line(text: str, index: int) -> int | None:
    """1-based line of the index-th amplitude entry in a state file."""
    pos = -1
    for _ in range(index + 1):
        pos = text.find('"orbitals"', pos + 1)
        if pos < 0:
            return None
    return text.count("\n", 0, pos) + 1


def parse_state(text: str) -> tuple[FermionState, float]:
    """Parse a JSON state document; returns (state, pre-normalization norm).

    Format: {"d": int, "n": int, "amplitudes": [{"orbitals": [ints],
    "re": float, "im": float}, ...]}. Tuples not listed are zero. The
    state is normalized on load; the reported norm is the input's.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc
    if not isinstance(doc, dict):
        raise StateFormatError("top-level value must be an object")
    for key in ("d", "n", "amplitudes"):
        if key not in doc:
            raise StateFormatError(f"missing required key {key!r}")
    if not isinstance(doc["d"], int) or not isinstance(doc["n"], int):
        raise StateFormatError("d and n must be integers")
    if not isinstance(doc["amplitudes"], list) or not doc["amplitudes"]:
        raise StateFormatError("amplitudes must be a non-empty array")
    try:
        basis = OrbitalBasisIndex(doc["d"], doc["n"])
    except DimensionError as exc:
        raise StateFormatError(str(exc)) from exc

    c = np.zeros(basis.size, dtype=np.complex128)
    seen: set[OrbitalTuple] = set()
    for idx, item in enumerate(doc["amplitudes"]):
        line = _entry_line(text, idx)
        if not isinstance(item, dict) or "orbitals" not in item:
            raise StateFormatError(f"amplitude entry {idx} must be an object with orbitals", line=line)
        try:
            t = basis.validate(item["orbitals"])
        except (InvalidTupleError, TypeError) as exc:
            raise StateFormatError(str(exc), line=line) from exc
        if t in seen:
            raise StateFormatError(f"tuple {t} listed twice", line=line)
        seen.add(t)
        re = item.get("re", 0.0)
        im = item.get("im", 0.0)
        if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
            raise StateFormatError("re and im must be numbers", line=line)
        c[basis.rank(t)] = complex(re, im)

    norm = float(np.linalg.norm(c))
    if norm == 0.0:
        raise StateFormatError("all amplitudes are zero")
    return FermionState(basis, c), norm


def load_state(path: str | Path) -> tuple[FermionState, float]:
    """Read a state file; returns (state, pre-normalization norm)."""
    return parse_state(Path(path).read_text())


def state_document(state: FermionState) -> dict:
    """JSON-ready document for a state, omitting exactly-zero amplitudes."""
    entries = []
    for k in range(state.basis.size):
        value = state.amplitudes[k]
        if value == 0:
            continue
        entries.append(
            {
                "orbitals": list(state.basis.unrank(k)),
                "re": float(value.real),
                "im": float(value.imag),
            }
        )
    return {"d": state.d, "n": state.n, "amplitudes": entries}


def save_state(state: FermionState, path: str | Path) -> None:
    """Write a state file that load_state round-trips exactly."""
    from .reporting import render_json

    Path(path).write_text(render_json(state_document(state)) + "\n")
