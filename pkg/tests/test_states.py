"""Construction, normalization, transformation, and file round-trips of states."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_unitary
from fermisep.errors import (
    DegenerateOrbitalsError,
    DimensionError,
    DuplicateEntryError,
    NonUnitaryError,
    StateFormatError,
    ZeroStateError,
)
from fermisep.rdm import compute_rdm
from fermisep.spectral import purity
from fermisep.states import (
    FermionState,
    LocalUnitary,
    apply_local_unitary,
    from_coefficients,
    load_state,
    parse_state,
    random_slater,
    random_state,
    save_state,
    slater_from_orbitals,
)


def test_from_coefficients_single_tuple():
    state = from_coefficients(2, 2, [((0, 1), 1.0)])
    assert state.amplitudes.shape == (1,)
    assert state.amplitude((0, 1)) == pytest.approx(1.0)


def test_from_coefficients_normalizes_symmetric_pair():
    state = from_coefficients(4, 2, [((0, 1), 1.0), ((2, 3), 1.0)])
    expected = np.array([1, 0, 0, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(state.amplitudes, expected, atol=1e-12)


def test_from_coefficients_rejects_duplicates_and_zero():
    with pytest.raises(DuplicateEntryError):
        from_coefficients(4, 2, [((0, 1), 1.0), ((0, 1), 2.0)])
    with pytest.raises(ZeroStateError):
        from_coefficients(4, 2, [((0, 1), 0.0)])


def test_random_entries_come_out_normalized():
    rng = np.random.default_rng(1)
    basis_size = 20
    entries = []
    from fermisep.basis import OrbitalBasisIndex

    b = OrbitalBasisIndex(6, 3)
    for k in range(basis_size):
        entries.append((b.unrank(k), complex(rng.standard_normal(), rng.standard_normal())))
    state = from_coefficients(6, 3, entries)
    assert abs(np.linalg.norm(state.amplitudes) - 1.0) <= 1e-12


def test_slater_standard_basis():
    state = slater_from_orbitals([np.array([1, 0]), np.array([0, 1])])
    assert state.amplitude((0, 1)) == pytest.approx(1.0)


def test_slater_depends_only_on_span():
    e0 = np.array([1, 0, 0, 0], dtype=complex)
    oblique = (e0 + np.array([0, 1, 0, 0])) / np.sqrt(2)
    state = slater_from_orbitals([e0, oblique])
    assert abs(abs(state.amplitude((0, 1))) - 1.0) <= 1e-12

    rng = np.random.default_rng(5)
    m = rng.standard_normal((6, 3)) + 1j * rng.standard_normal((6, 3))
    q, _ = np.linalg.qr(m)
    r = random_unitary(3, rng)
    s1 = slater_from_orbitals(q)
    s2 = slater_from_orbitals(q @ r)
    overlap = abs(np.vdot(s1.amplitudes, s2.amplitudes))
    assert abs(overlap - 1.0) <= 1e-10


def test_slater_rejects_dependent_orbitals():
    v = np.array([1, 1, 0, 0], dtype=complex)
    with pytest.raises(DegenerateOrbitalsError):
        slater_from_orbitals([v, 2 * v])


def test_slater_purity_is_inverse_particle_number():
    state = random_slater(6, 3, 99)
    assert abs(purity(compute_rdm(state)) - 1 / 3) <= 1e-10


def test_identity_unitary_fixes_state():
    state = random_state(5, 2, 0)
    u = LocalUnitary(np.eye(5))
    assert np.allclose(apply_local_unitary(state, u).amplitudes, state.amplitudes, atol=1e-12)


def test_diagonal_phases_multiply():
    alphas = np.array([0.3, -1.1, 0.7, 2.0])
    u = LocalUnitary(np.diag(np.exp(1j * alphas)))
    state = from_coefficients(4, 2, [((0, 1), 1.0)])
    rotated = apply_local_unitary(state, u)
    expected = np.exp(1j * (alphas[0] + alphas[1]))
    assert rotated.amplitude((0, 1)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("d, n, seed", [(4, 2, 0), (5, 2, 1), (6, 3, 2)])
def test_exterior_power_is_a_homomorphism(d, n, seed):
    rng = np.random.default_rng(seed)
    state = random_state(d, n, seed)
    u = LocalUnitary(random_unitary(d, rng))
    v = LocalUnitary(random_unitary(d, rng))
    via_two_steps = apply_local_unitary(apply_local_unitary(state, u), v)
    combined = apply_local_unitary(state, LocalUnitary(v.matrix @ u.matrix))
    assert np.max(np.abs(via_two_steps.amplitudes - combined.amplitudes)) <= 1e-9


def test_unitary_application_preserves_norm():
    rng = np.random.default_rng(7)
    state = random_state(6, 3, 7)
    u = LocalUnitary(random_unitary(6, rng))
    rotated = apply_local_unitary(state, u)
    assert abs(np.linalg.norm(rotated.amplitudes) - 1.0) <= 1e-10


def test_unitary_validation():
    with pytest.raises(NonUnitaryError):
        LocalUnitary(np.ones((3, 3)))
    with pytest.raises(DimensionError):
        LocalUnitary(np.ones((2, 3)))
    state = random_state(4, 2, 0)
    with pytest.raises(DimensionError):
        apply_local_unitary(state, LocalUnitary(np.eye(5)))


def test_random_generation_is_seed_deterministic():
    a = random_state(6, 3, 123)
    b = random_state(6, 3, 123)
    c = random_state(6, 3, 124)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert not np.array_equal(a.amplitudes, c.amplitudes)
    s1 = random_slater(6, 3, 123)
    s2 = random_slater(6, 3, 123)
    assert np.array_equal(s1.amplitudes, s2.amplitudes)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_random_states_are_normalized(seed):
    state = random_state(6, 3, seed)
    assert abs(np.linalg.norm(state.amplitudes) - 1.0) <= 1e-10


def test_state_file_round_trip(tmp_path):
    state = random_state(6, 3, 42)
    path = tmp_path / "state.json"
    save_state(state, path)
    loaded, norm = load_state(path)
    assert np.max(np.abs(loaded.amplitudes - state.amplitudes)) == 0.0
    assert norm == pytest.approx(1.0, abs=1e-12)


def test_loader_reports_pre_normalization_norm():
    text = """{
      "d": 4, "n": 2,
      "amplitudes": [
        {"orbitals": [0, 1], "re": 2.0, "im": 0.0}
      ]
    }"""
    state, norm = parse_state(text)
    assert norm == pytest.approx(2.0)
    assert state.amplitude((0, 1)) == pytest.approx(1.0)


def test_loader_defaults_missing_parts_to_zero():
    text = '{"d": 4, "n": 2, "amplitudes": [{"orbitals": [0, 1], "im": 1.0}]}'
    state, _ = parse_state(text)
    assert state.amplitude((0, 1)) == pytest.approx(1j)


def test_loader_diagnoses_bad_tuple_with_line():
    text = '{"d": 4, "n": 2,\n "amplitudes": [\n  {"orbitals": [0, 1], "re": 1.0, "im": 0.0},\n  {"orbitals": [3, 2], "re": 1.0, "im": 0.0}\n ]}'
    with pytest.raises(StateFormatError) as err:
        parse_state(text)
    assert err.value.line == 4
    assert "strictly increasing" in str(err.value)


def test_loader_diagnoses_duplicates_and_syntax():
    dup = '{"d": 4, "n": 2, "amplitudes": [\n {"orbitals": [0, 1], "re": 1.0},\n {"orbitals": [0, 1], "re": 2.0}\n]}'
    with pytest.raises(StateFormatError) as err:
        parse_state(dup)
    assert err.value.line == 3

    with pytest.raises(StateFormatError):
        parse_state("{not json")
    with pytest.raises(StateFormatError):
        parse_state('{"d": 4, "n": 2}')
    with pytest.raises(StateFormatError):
        parse_state('{"d": 4, "n": 2, "amplitudes": [{"orbitals": [0, 1], "re": 0.0}]}')
