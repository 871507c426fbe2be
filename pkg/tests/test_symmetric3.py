import itertools

import numpy as np
import pytest

from slocc_steering import (
    Kind,
    SloccClass,
    Spinor,
    canonicalize,
    concurrence,
    is_lorentz,
    lambda_from_rho,
    majorana_roots,
    majorana_state,
    monogamy_check,
    omega_from_lambda,
    psi_32,
    psi_33,
    reduced_two_qubit,
)
from slocc_steering.errors import (
    ClassMismatchError,
    DegenerateStateError,
    DomainError,
    SeparableStateError,
    SymmetryViolationError,
)
from slocc_steering.symmetric3 import (
    CANONICAL_LAMBDA32,
    GHZ,
    W,
    canonical_lambda33,
    closed_form_concurrence,
    closed_form_lambda32,
    closed_form_lambda33,
    closed_form_obesity,
    closed_form_omega32,
    closed_form_omega33,
    closed_form_rho32,
    closed_form_rho33,
    coefficients_32,
    coefficients_33,
    dicke,
    explicit_lorentz_33,
    fidelity,
    from_amplitudes,
    is_symmetric,
    monogamy_closed_form,
    partial_trace,
    preset,
    printed_lorentz_33,
)
from slocc_steering.twoqubit import G, gomega_spectrum

from conftest import BETAS, D33_GRID

KET0 = Spinor(0.0, 0.0)
KET1 = Spinor(0.0, np.pi)


def _permute(psi, perm):
    return np.transpose(psi.reshape(2, 2, 2), perm).reshape(8)


def _random_spinor(rng):
    return Spinor(rng.uniform(0, 2 * np.pi), np.arccos(rng.uniform(-1, 1)))


# ---------------------------------------------------------------------------
# Majorana representation


def test_majorana_product_state():
    st = majorana_state([KET0] * 3)
    assert fidelity(st.amplitudes, dicke(0)) > 1 - 1e-14
    assert st.slocc_class is SloccClass.D31


def test_majorana_w():
    st = majorana_state([KET0, KET0, KET1])
    assert fidelity(st.amplitudes, W) > 1 - 1e-14
    assert st.slocc_class is SloccClass.D32


def test_majorana_ghz():
    sp = [Spinor(2 * np.pi * p / 3, np.pi / 2) for p in (1, 2, 3)]
    st = majorana_state(sp)
    assert fidelity(st.amplitudes, GHZ) > 1 - 1e-14
    assert st.slocc_class is SloccClass.D33


def test_roots_of_w():
    roots = majorana_roots(W)
    betas = sorted(round(s.beta, 10) for s in roots)
    assert np.allclose(betas, [0, 0, np.pi])


def test_roots_of_ghz():
    roots = majorana_roots(GHZ)
    assert all(abs(s.beta - np.pi / 2) < 1e-10 for s in roots)
    phases = np.sort(np.mod([s.alpha for s in roots], 2 * np.pi))
    gaps = np.diff(np.append(phases, phases[0] + 2 * np.pi))
    assert np.allclose(gaps, 2 * np.pi / 3)


def test_roots_of_product():
    roots = majorana_roots(dicke(0))
    assert all(s.overlap(KET0) > 1 - 1e-12 for s in roots)


def test_roots_reject_non_symmetric():
    psi = np.zeros(8)
    psi[1] = 1.0
    with pytest.raises(SymmetryViolationError):
        majorana_roots(psi)


def test_majorana_round_trip(rng):
    for _ in range(100):
        st = majorana_state([_random_spinor(rng) for _ in range(3)])
        back = majorana_state(majorana_roots(st))
        assert fidelity(back.amplitudes, st.amplitudes) >= 1 - 1e-8


def test_majorana_round_trip_random_amplitudes(rng):
    for _ in range(50):
        d = rng.normal(size=4) + 1j * rng.normal(size=4)
        psi = sum(d[k] * dicke(k) for k in range(4))
        psi /= np.linalg.norm(psi)
        back = majorana_state(majorana_roots(psi))
        assert fidelity(back.amplitudes, psi) >= 1 - 1e-8


def test_class_margin_reported():
    st = majorana_state([KET0, KET0, Spinor(0, 1e-3)])
    assert st.slocc_class is SloccClass.D32
    assert np.isfinite(st.margin)


# ---------------------------------------------------------------------------
# family constructors


def test_psi32_at_pi_is_w():
    assert fidelity(psi_32(np.pi).amplitudes, W) > 1 - 1e-14


def test_psi32_at_half_pi():
    expect = (np.sqrt(1.5) * dicke(0) + W / np.sqrt(2)) / np.sqrt(2)
    assert np.allclose(psi_32(np.pi / 2).amplitudes, expect, atol=1e-14)
    assert np.isclose(psi_32(np.pi / 2).norm_factor, 1 / np.sqrt(2))


def test_psi32_equals_symmetrisation():
    for beta in BETAS:
        ref = majorana_state([KET0, KET0, Spinor(0.0, beta)])
        assert fidelity(ref.amplitudes, psi_32(beta).amplitudes) > 1 - 1e-12


def test_psi32_domain():
    for bad in (0.0, -0.1, 3.2):
        with pytest.raises(DomainError):
            psi_32(bad)


def test_psi33_ghz_endpoint():
    assert fidelity(psi_33(1, 0, np.pi).amplitudes, GHZ) > 1 - 1e-14


def test_psi33_normalisation():
    st = psi_33(1, 0, np.pi / 2)
    assert np.isclose(st.norm_factor, 1 / np.sqrt(2 + 2 * np.cos(np.pi / 4) ** 3))


def test_psi33_equals_definition():
    for y, a, b in D33_GRID[::7]:
        beta_state = Spinor(0.0, b).vector
        ket0 = np.array([1, 0])
        raw = np.kron(np.kron(ket0, ket0), ket0) + y * np.exp(1j * a) * np.kron(
            np.kron(beta_state, beta_state), beta_state)
        raw /= np.linalg.norm(raw)
        assert fidelity(raw, psi_33(y, a, b).amplitudes) > 1 - 1e-12


def test_psi33_class_mismatch():
    # y e^{i alpha} cos^3(b/2) = -1 would collapse the state; near it the roots still differ,
    # but beta -> 0 merges |b> into |0>
    with pytest.raises((ClassMismatchError, DomainError)):
        psi_33(1.0, 0.0, 1e-7)
    with pytest.raises(DomainError):
        psi_33(0.0, 0.0, 1.0)


def test_presets():
    assert preset("w").slocc_class is SloccClass.D32
    assert preset("wbar").slocc_class is SloccClass.D32
    assert preset("ghz").slocc_class is SloccClass.D33
    with pytest.raises(ValueError):
        preset("bell")


def test_permutation_symmetry_of_constructors(rng):
    states = [psi_32(b) for b in BETAS]
    states += [psi_33(y, a, b) for y, a, b in D33_GRID]
    states += [majorana_state([_random_spinor(rng) for _ in range(3)]) for _ in range(20)]
    for st in states:
        assert abs(np.linalg.norm(st.amplitudes) - 1) <= 1e-12
        for perm in itertools.permutations(range(3)):
            assert np.abs(_permute(st.amplitudes, perm) - st.amplitudes).max() <= 1e-10


def test_is_symmetric():
    assert is_symmetric(W)
    assert not is_symmetric(np.eye(8)[1])


def test_from_amplitudes():
    st = from_amplitudes(GHZ)
    assert st.slocc_class is SloccClass.D33


# ---------------------------------------------------------------------------
# reduced states and closed forms


def test_partial_trace_product():
    rho = reduced_two_qubit(dicke(0))
    expect = np.zeros((4, 4))
    expect[0, 0] = 1
    assert np.allclose(rho, expect)
    assert np.isclose(np.trace(partial_trace(W, (0,))).real, 1)


def test_reduced_state_symmetry_violation():
    psi = np.zeros(8)
    psi[[0, 3]] = 1 / np.sqrt(2)  # |000> + |011>: qubit 0 is not like the others
    with pytest.raises(SymmetryViolationError):
        reduced_two_qubit(psi)


def test_d32_reduced_matrix_entries():
    for beta in BETAS:
        rho = reduced_two_qubit(psi_32(beta))
        k = coefficients_32(beta)
        assert np.isclose(rho[0, 0], 1 - 2 * k.a32)
        assert np.isclose(rho[0, 1], k.b32)
        assert np.isclose(rho[1, 1], k.a32)
        assert abs(rho[3, 3]) < 1e-15
        assert np.abs(rho - closed_form_rho32(beta)).max() <= 1e-12


def test_d32_coefficients():
    for beta in BETAS:
        k = coefficients_32(beta)
        # A32 grows monotonically from 0 to 1/3 at beta = pi
        assert 0 <= k.a32 <= 1 / 3 + 1e-15
        assert abs(k.u - (2 * k.a32) ** 2) <= 1e-12


def test_d33_reduced_matrix_entries():
    for y, a, b in D33_GRID:
        rho = reduced_two_qubit(psi_33(y, a, b))
        assert np.abs(rho - closed_form_rho33(y, a, b)).max() <= 1e-12


def test_d33_coefficients():
    for y, a, b in D33_GRID:
        k = coefficients_33(y, a, b)
        assert abs(k.amp_f - (1 - k.amp_a - 2 * k.amp_d)) <= 1e-12
        assert k.lambda0 >= k.lambda1 >= 0


def test_closed_form_lambda32():
    lam = closed_form_lambda32(np.pi)
    assert np.isclose(lam[0, 1], 0, atol=1e-15) and np.isclose(lam[0, 3], 1 / 3)
    assert np.isclose(lam[1, 1], 2 / 3) and np.isclose(lam[3, 3], -1 / 3)
    lam = closed_form_lambda32(np.pi / 2)
    assert np.allclose([lam[0, 1], lam[0, 3], lam[1, 1], lam[3, 3]], [0.5, 5 / 6, 1 / 6, 2 / 3])
    for beta in BETAS:
        lam = closed_form_lambda32(beta)
        assert np.array_equal(lam, lam.T)
        num = lambda_from_rho(reduced_two_qubit(psi_32(beta)))
        assert np.abs(lam - num).max() <= 1e-10


def test_closed_form_lambda33():
    lam = closed_form_lambda33(1, 0, np.pi)
    assert np.isclose(lam[0, 3], 0, atol=1e-15) and np.isclose(lam[3, 3], 1)
    lam = closed_form_lambda33(0.5, 0, 1.0)
    assert lam[0, 2] == lam[1, 2] == lam[2, 3] == 0
    for y, a, b in D33_GRID:
        lam = closed_form_lambda33(y, a, b)
        assert lam[0, 2] == lam[2, 0] and lam[2, 3] == lam[3, 2]
        num = lambda_from_rho(reduced_two_qubit(psi_33(y, a, b)))
        assert np.abs(lam - num).max() <= 1e-10


def test_closed_form_omega():
    for beta in BETAS:
        om = omega_from_lambda(closed_form_lambda32(beta))
        assert np.abs(om - closed_form_omega32(beta)).max() <= 1e-12
    for y, a, b in D33_GRID:
        om = omega_from_lambda(closed_form_lambda33(y, a, b))
        assert np.abs(om - closed_form_omega33(y, a, b)).max() <= 1e-12


def test_gomega_spectra():
    for beta in BETAS:
        u = coefficients_32(beta).u
        ev = gomega_spectrum(omega_from_lambda(closed_form_lambda32(beta)))
        assert np.abs(ev - u).max() <= 1e-9 * u
    for y, a, b in D33_GRID:
        k = coefficients_33(y, a, b)
        ev = gomega_spectrum(omega_from_lambda(closed_form_lambda33(y, a, b)))
        expect = [k.lambda0, k.lambda0, k.lambda1, k.lambda1]
        assert np.abs(ev - expect).max() <= 1e-9 * k.lambda0


# ---------------------------------------------------------------------------
# canonical forms


def test_d32_canonical_universal():
    for beta in BETAS:
        dec = canonicalize(closed_form_lambda32(beta))
        assert dec.kind is Kind.TYPE_II
        assert np.abs(dec.canonical_lambda - CANONICAL_LAMBDA32).max() <= 1e-8


def test_d33_canonical_diagonal():
    for y, a, b in D33_GRID:
        dec = canonicalize(closed_form_lambda33(y, a, b))
        assert np.abs(dec.canonical_lambda - canonical_lambda33(b)).max() <= 1e-8
        if b < np.pi:
            assert dec.kind is Kind.TYPE_II and np.isclose(dec.a0, 1)
        else:
            assert dec.kind is Kind.DEGENERATE


def test_explicit_lorentz_33():
    for beta in (np.pi / 6, np.pi / 3, np.pi / 2, 2 * np.pi / 3):
        lor = explicit_lorentz_33(beta)
        assert is_lorentz(lor)
        for y, a in ((1.0, 0.0), (0.5, 1.0)):
            k = coefficients_33(y, a, beta)
            out = lor @ closed_form_omega33(y, a, beta) @ lor.T
            c2 = np.cos(beta / 2) ** 2
            assert np.abs(out - k.lambda0 * np.diag([1, -c2, -c2, -1])).max() <= 1e-12


def test_explicit_lorentz_33_matches_canonicalize():
    beta = 1.2
    lor = explicit_lorentz_33(beta)
    lam = closed_form_lambda33(0.75, np.pi / 3, beta)
    dec = canonicalize(lam)
    k = dec.phi0
    om_c = lor @ omega_from_lambda(lam) @ lor.T / k
    assert np.allclose(om_c, omega_from_lambda(dec.canonical_lambda), atol=1e-10)


def test_explicit_lorentz_33_ghz_branch():
    with pytest.raises(DegenerateStateError):
        explicit_lorentz_33(np.pi)


def test_printed_matrix_first_row():
    # the literature matrix is kept for reference only; it is not a Lorentz matrix
    lor = printed_lorentz_33(np.pi / 2)
    assert np.allclose(lor[0], [1.5, 1, 0, 0.5])
    assert np.abs(lor.T @ G @ lor - G).max() > 1e-3


# ---------------------------------------------------------------------------
# monogamy and concurrence


def test_monogamy_d32_saturated():
    for beta in BETAS:
        m = monogamy_check(psi_32(beta))
        assert m.saturated and abs(m.lhs - 2 * np.sqrt(np.pi / 3)) <= 1e-9
        assert np.isclose(m.v_ab, m.v_cb)


def test_monogamy_d33():
    m = monogamy_check(psi_33(0.5, 1.0, np.pi / 2))
    assert abs(m.normalized - 2 * np.sqrt(2) / 3) <= 1e-9
    for y, a, b in D33_GRID:
        m = monogamy_check(psi_33(y, a, b))
        assert m.lhs <= m.bound + 1e-9
        assert abs(m.normalized - monogamy_closed_form(b)) <= 1e-8
    ghz = monogamy_check(preset("ghz"))
    assert ghz.lhs < 1e-12


def test_monogamy_rejects_product():
    with pytest.raises(SeparableStateError):
        monogamy_check(majorana_state([KET0] * 3))


def test_closed_form_concurrence():
    for beta in BETAS:
        st = psi_32(beta)
        assert abs(closed_form_concurrence(st) - concurrence(reduced_two_qubit(st)).value) <= 1e-9
    for y, a, b in D33_GRID:
        st = psi_33(y, a, b)
        assert abs(closed_form_concurrence(st) - concurrence(reduced_two_qubit(st)).value) <= 1e-9
    assert np.isclose(closed_form_concurrence(psi_32(np.pi)), 2 / 3)
    assert closed_form_concurrence(majorana_state([KET0] * 3)) == 0.0
    assert abs(closed_form_concurrence(psi_33(1, 0, np.pi))) < 1e-15


def test_obesity_identities():
    for beta in BETAS:
        st = psi_32(beta)
        det = np.linalg.det(closed_form_lambda32(beta))
        assert abs(closed_form_obesity(st) - abs(det) ** 0.25) <= 1e-10
    for y, a, b in D33_GRID:
        k = coefficients_33(y, a, b)
        det = np.linalg.det(closed_form_lambda33(y, a, b))
        assert abs(abs(det) - k.lambda0**2 * np.cos(b / 2) ** 2) <= 1e-12
        st = psi_33(y, a, b)
        assert abs(closed_form_obesity(st) - abs(det) ** 0.25) <= 1e-10
        # the bound C <= O reads sqrt(cos(b/2)) >= cos(b/2)
        assert closed_form_concurrence(st) <= closed_form_obesity(st) + 1e-12
