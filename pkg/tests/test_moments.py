"""Moment system structure, steady-state solve, and the cross-correlator."""

import numpy as np
import pytest

from mollowpair.errors import NumericalError, UndefinedCorrelatorError
from mollowpair.hamiltonian import build_pair_hamiltonian
from mollowpair.moments import (
    build_moment_system,
    g2_cross,
    populations,
    solve_populations,
    steady_state,
)
from mollowpair.operators import EYE4, MOMENT_OPERATORS, SIGMA1, SIGMA2
from mollowpair.params import (
    SystemParams,
    coherent_pair,
    dissipative_pair,
    generalized_couplings,
    unidirectional_pair,
)

from conftest import random_params


def adjoint_moment_system(p):
    """Independent derivation of M and P from the master-equation adjoint.

    For each moment operator O the adjoint generator i[H, O] plus the
    dissipator adjoints is expanded over the complete operator basis
    {identity} + MOMENT_OPERATORS; the identity coefficient is the drive and
    the rest give -M row by row.
    """
    h = build_pair_hamiltonian(p).matrix
    channels = [
        (SIGMA1, SIGMA1, complex(p.gamma0)),
        (SIGMA2, SIGMA2, complex(p.gamma0)),
        (SIGMA2, SIGMA1, p.gamma * np.exp(1j * p.phi)),
        (SIGMA1, SIGMA2, p.gamma * np.exp(-1j * p.phi)),
    ]
    basis = np.column_stack([b.reshape(16) for b in (EYE4, *MOMENT_OPERATORS)])

    def adjoint(op):
        out = 1j * (h @ op - op @ h)
        for a, b, rate in channels:
            bda = b.conj().T @ a
            out = out + 0.5 * rate * (2.0 * b.conj().T @ op @ a - op @ bda - bda @ op)
        return out

    m = np.zeros((15, 15), dtype=complex)
    drive = np.zeros(15, dtype=complex)
    for i, op in enumerate(MOMENT_OPERATORS):
        coeffs = np.linalg.solve(basis, adjoint(op).reshape(16))
        drive[i] = coeffs[0]
        m[i, :] = -coeffs[1:]
    return m, drive


def test_matrix_matches_independent_derivation(rng):
    # Entry-for-entry check of all 225 coefficients against the adjoint
    # expansion, over generic parameters including detuning and two drives.
    for _ in range(30):
        p = random_params(rng, with_detuning=True, with_second_drive=True)
        system = build_moment_system(p)
        m_ref, p_ref = adjoint_moment_system(p)
        np.testing.assert_allclose(system.matrix, m_ref, atol=1e-13)
        np.testing.assert_allclose(system.drive, p_ref, atol=1e-13)


def test_decoupled_matrix_is_diagonal():
    system = build_moment_system(SystemParams())
    m = system.matrix
    assert np.max(np.abs(m - np.diag(np.diag(m)))) == 0.0
    diag = np.real(np.diag(m))
    expected = [0.5] * 4 + [1.0] * 6 + [1.5] * 4 + [2.0]
    np.testing.assert_allclose(diag, expected)


def test_cross_decay_block_entries():
    p = SystemParams(gamma=0.8, phi=0.7)
    m = build_moment_system(p).matrix
    assert m[8, 14] == pytest.approx(-2 * 0.8 * np.exp(-0.7j))
    assert m[9, 14] == pytest.approx(-2 * 0.8 * np.exp(0.7j))


def test_unidirectional_fingerprint():
    # At the forward one-way point every g+ occurrence in M vanishes.
    p = unidirectional_pair(1.0, 0.7)
    gp, gm = generalized_couplings(p)
    assert abs(gp) < 1e-15
    m = build_moment_system(p).matrix
    for idx in ((0, 1), (0, 10), (4, 8), (9, 5), (10, 11), (12, 13)):
        assert abs(m[idx]) < 1e-15
    # while the counter-rotating combination survives
    assert abs(gm) == pytest.approx(1.0)


def test_undriven_steady_state_is_ground():
    st = steady_state(build_moment_system(SystemParams(g=0.5, gamma=0.5, theta=1.0)))
    assert np.max(np.abs(st.u)) == 0.0
    pops = populations(st)
    np.testing.assert_allclose(pops.as_array(), [1, 0, 0, 0])


def test_strong_drive_coherent_limit():
    pops = solve_populations(coherent_pair(1.0, 1e3))
    np.testing.assert_allclose(pops.as_array(), [3 / 8, 3 / 8, 1 / 8, 1 / 8], atol=1e-5)


def test_weak_drive_trapping():
    pops = solve_populations(dissipative_pair(1.0, 1e-4))
    np.testing.assert_allclose(pops.as_array(), [0.5, 0.25, 0.25, 0.0], atol=1e-3)


def test_populations_sum_and_bounds(rng):
    for _ in range(50):
        p = random_params(rng, with_detuning=True, with_second_drive=True)
        pops = solve_populations(p)
        assert pops.total == pytest.approx(1.0, abs=1e-12)
        assert np.all(pops.as_array() > -1e-12)
        assert np.all(pops.as_array() < 1.0 + 1e-12)


def test_moment_conjugate_pairing(rng):
    # <s1d> = conj(<s1>), <s1d s2d> = conj(<s1 s2>), <s1 s2d> = conj(<s1d s2>)
    pairs = [(0, 2), (1, 3), (6, 7), (8, 9), (10, 12), (11, 13)]
    for _ in range(30):
        p = random_params(rng, with_detuning=True, with_second_drive=True)
        st = steady_state(build_moment_system(p))
        for a, b in pairs:
            assert st.u[b] == pytest.approx(np.conj(st.u[a]), abs=1e-12)


def test_joint_excitation_bounds(rng):
    for _ in range(30):
        p = random_params(rng)
        st = steady_state(build_moment_system(p))
        assert -1e-12 <= st.nX <= min(st.n1, st.n2) + 1e-12


def test_g2_weak_drive_values():
    st = steady_state(build_moment_system(dissipative_pair(1.0, 1e-3)))
    assert g2_cross(st) < 1e-3
    st = steady_state(build_moment_system(coherent_pair(1.0, 1e-3)))
    assert g2_cross(st) == pytest.approx(25.0 / 4.0, abs=1e-3)


def test_g2_washes_out_at_strong_drive():
    for p in (coherent_pair(0.6, 100.0), dissipative_pair(0.9, 100.0),
              unidirectional_pair(1.0, 100.0)):
        st = steady_state(build_moment_system(p))
        assert g2_cross(st) == pytest.approx(1.0, abs=1e-3)


def test_g2_undefined_at_zero_drive():
    st = steady_state(build_moment_system(SystemParams(g=1.0)))
    with pytest.raises(UndefinedCorrelatorError):
        g2_cross(st)


def test_backward_coupling_shields_emitter2():
    # Backward (2 -> 1) one-way coupling with only emitter 1 driven: no
    # excitation reaches emitter 2, and emitter 1 keeps exactly the solitary
    # population since nothing flows back either.
    from mollowpair.single_emitter import single_population

    pops = solve_populations(unidirectional_pair(1.0, 1.0, forward=False))
    assert pops.rho01 == pytest.approx(0.0, abs=1e-12)
    assert pops.rho11 == pytest.approx(0.0, abs=1e-12)
    assert pops.rho10 == pytest.approx(single_population(1.0, 1.0), abs=1e-12)


def test_unidirectional_population_identity():
    # rho10 + rho11 equals the solitary-emitter population across a sweep.
    from mollowpair.single_emitter import single_population

    for omega in np.geomspace(0.01, 100.0, 50):
        pops = solve_populations(unidirectional_pair(1.0, omega))
        n0 = single_population(omega, 1.0)
        assert abs(pops.rho10 + pops.rho11 - n0) < 1e-12


def test_singular_system_raises():
    from mollowpair.errors import SingularSystemError
    from mollowpair.moments import MomentSystem

    m = np.zeros((15, 15), dtype=complex)
    m[0, 0] = 1.0
    with pytest.raises(SingularSystemError):
        steady_state(MomentSystem(matrix=m, drive=np.zeros(15, dtype=complex)))


def test_condition_warning():
    from mollowpair.errors import ConditionWarning
    from mollowpair.moments import MomentSystem

    m = np.diag(np.array([1.0] * 14 + [1e-13], dtype=complex))
    with pytest.warns(ConditionWarning):
        steady_state(MomentSystem(matrix=m, drive=np.zeros(15, dtype=complex)))


def test_imaginary_residue_guard():
    # Corrupting M must surface as a residue error, not a silent real cast.
    system = build_moment_system(coherent_pair(1.0, 1.0))
    bad = system.matrix.copy()
    bad[4, 4] += 0.3j
    with pytest.raises(NumericalError, match="residue"):
        steady_state(type(system)(matrix=bad, drive=system.drive))
