import numpy as np
import pytest
from hypothesis import given, settings

from rsp_coherence import qmat
from rsp_coherence.noise import NoiseParams, rho_p
from rsp_coherence.protocol import rsp_output_closed_form
from rsp_coherence.qmat import I2, I4, X, Z, InvalidStateError

from conftest import phases, qubit_states, two_qubit_states


def test_tensor_identity():
    assert np.array_equal(qmat.tensor(I2, I2), I4)


def test_tensor_basis_order():
    ket0, ket1 = qmat.projector([1, 0]), qmat.projector([0, 1])
    out = qmat.tensor(ket0, ket1)
    assert np.array_equal(np.diag(out).real, [0, 1, 0, 0])


def test_tensor_zz():
    assert np.array_equal(np.diag(qmat.tensor(Z, Z)).real, [1, -1, -1, 1])


def test_tensor_rejects_large():
    with pytest.raises(ValueError):
        qmat.tensor(I4, I2)


@given(qubit_states(), qubit_states())
def test_tensor_of_states_is_state(a, b):
    out = qmat.tensor(a, b)
    assert qmat.is_density(out)
    assert np.allclose(qmat.partial_trace_B(out), a, atol=1e-12)


def test_partial_trace_singlet(psi):
    assert np.allclose(qmat.partial_trace_A(psi), I2 / 2, atol=1e-15)


def test_partial_trace_noisy_entries(noisy):
    # r11 + r33 = 0.1 + 0.35, r22 + r44 = 0.35 + 0.2
    out = qmat.partial_trace_A(noisy)
    assert np.allclose(out, np.diag([0.45, 0.55]), atol=1e-15)


@given(qubit_states(), qubit_states())
def test_partial_trace_product(a, b):
    assert qmat.frobenius_distance(qmat.partial_trace_A(np.kron(a, b)), b) < 1e-12


@given(two_qubit_states())
def test_partial_trace_output_is_state(rho):
    assert qmat.is_density(qmat.partial_trace_A(rho), 2)


def test_partial_trace_rejects_invalid():
    with pytest.raises(InvalidStateError):
        qmat.partial_trace_A(2 * I4)


@pytest.mark.parametrize("phi", [0.0, 0.4, np.pi, 5.5])
def test_fidelity_self_and_mixed(phi):
    assert qmat.fidelity_with_target(qmat.target_state(phi), phi) == pytest.approx(1, abs=1e-15)
    assert qmat.fidelity_with_target(I2 / 2, phi) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("phi", [0.0, 1.0, 2.5, 4.0])
def test_fidelity_noisy_conditional(noisy, phi):
    assert qmat.fidelity_with_target(rsp_output_closed_form(noisy, phi), phi) == pytest.approx(0.85, abs=1e-14)


@given(qubit_states(), phases)
def test_fidelity_range(rho, phi):
    f = qmat.fidelity_with_target(rho, phi)
    assert -1e-12 <= f <= 1 + 1e-10


def test_decompose_incoherent():
    d, c = qmat.decompose_diag_coh(np.diag([0.3, 0.7]))
    assert np.array_equal(d, np.diag([0.3, 0.7]))
    assert not c.any()


def test_decompose_plus():
    plus = qmat.projector(np.array([1, 1]) / np.sqrt(2))
    d, c = qmat.decompose_diag_coh(plus)
    assert np.allclose(d, I2 / 2, atol=1e-15)
    assert np.allclose(c, [[0, 0.5], [0.5, 0]], atol=1e-15)


def test_decompose_noisy_conditional(noisy):
    phi = 0.9
    d, c = qmat.decompose_diag_coh(rsp_output_closed_form(noisy, phi))
    assert np.allclose(np.diag(d), [0.45, 0.55], atol=1e-15)
    assert c[0, 1] == pytest.approx(0.35 * np.exp(-1j * phi), abs=1e-15)
    assert c[1, 0] == pytest.approx(0.35 * np.exp(1j * phi), abs=1e-15)


@given(two_qubit_states())
def test_decompose_reconstructs_exactly(rho):
    d, c = qmat.decompose_diag_coh(rho)
    assert np.array_equal(d + c, rho)
    assert np.all(np.diag(c) == 0)


def test_bloch_examples(noisy):
    assert qmat.bloch_vector(I2 / 2) == (0, 0, 0)
    assert qmat.bloch_vector(qmat.projector([1, 0])) == (0, 0, 1)
    b = qmat.bloch_vector(rsp_output_closed_form(noisy, 0.0))
    assert np.allclose(b, (0.7, 0, -0.1), atol=1e-15)


@given(qubit_states())
@settings(max_examples=200)
def test_bloch_norm_and_purity(rho):
    b = qmat.bloch_vector(rho)
    assert b.norm <= 1 + 1e-9
    # |r|^2 = 2 tr(rho^2) - 1
    assert b.norm**2 == pytest.approx(2 * qmat.purity(rho) - 1, abs=1e-12)


def test_bloch_pure_states_have_unit_norm(rng):
    for _ in range(50):
        rho = qmat.projector(qmat.random_pure_ket(rng, 2))
        assert abs(qmat.bloch_vector(rho).norm - 1) < 1e-9


def test_frobenius_examples(psi):
    assert qmat.frobenius_distance(X, X) == 0
    assert qmat.frobenius_distance(I2, Z) == 2
    other = rho_p(NoiseParams(0.1, 0.2))
    total = 0.0
    for i in range(4):
        for j in range(4):
            total += abs(psi[i, j] - other[i, j]) ** 2
    assert qmat.frobenius_distance(psi, other) == pytest.approx(np.sqrt(total), rel=1e-15)
    assert qmat.frobenius_distance(psi, other) == pytest.approx(np.sqrt(0.14), abs=1e-15)


def test_frobenius_shape_mismatch():
    with pytest.raises(ValueError):
        qmat.frobenius_distance(I2, I4)


@pytest.mark.parametrize(
    "bad",
    [
        np.array([[0.5, 0.1], [0.2, 0.5]]),  # not Hermitian
        np.diag([0.6, 0.6]),  # trace 1.2
        np.diag([1.5, -0.5]),  # negative eigenvalue
        np.array([[np.nan, 0], [0, 1]]),
        np.eye(3) / 3,
    ],
)
def test_check_density_rejects(bad):
    with pytest.raises(InvalidStateError):
        qmat.check_density(bad)


def test_min_eigenvalue_dim2_matches_lapack(rng):
    for _ in range(100):
        rho = qmat.random_density(rng, dim=2, max_rank=2)
        assert qmat.min_eigenvalue(rho) == pytest.approx(np.linalg.eigvalsh(rho)[0], abs=1e-14)


def test_random_density_is_valid(rng):
    for _ in range(200):
        assert qmat.is_density(qmat.random_density(rng))


def test_constants_are_read_only():
    with pytest.raises(ValueError):
        Z[0, 0] = 2
