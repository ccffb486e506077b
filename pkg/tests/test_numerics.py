import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from statecurv.numerics import (
    AdmissibleFunction,
    ConvergenceError,
    Field,
    SelfAdjointMatrix,
    Spectrum,
    degeneracy_threshold,
    divided_difference,
    eigh,
    rho,
)

PRESETS = {
    "alpha(-0.5)": AdmissibleFunction.alpha_power(-0.5),
    "alpha(0.5)": AdmissibleFunction.alpha_power(0.5),
    "alpha(2)": AdmissibleFunction.alpha_power(2.0),
    "log": AdmissibleFunction.log(),
    "wy": AdmissibleFunction.wigner_yanase(),
    "id": AdmissibleFunction.identity(),
}

interior = st.floats(min_value=0.05, max_value=0.95)


# --- divided_difference -----------------------------------------------------


def test_divided_difference_identity_is_one():
    assert divided_difference(AdmissibleFunction.identity(), 0.3, 0.7) == 1.0


def test_divided_difference_degenerate_branch_uses_derivative():
    # f = 2 sqrt(x): f'(0.25) = 2 exactly
    assert divided_difference(AdmissibleFunction.alpha_power(0.0), 0.25, 0.25) == 2.0


def test_divided_difference_log_matches_high_precision():
    mp.mp.dps = 50
    expected = float(
        (mp.log(mp.mpf("0.75")) - mp.log(mp.mpf("0.25"))) / (mp.mpf("0.75") - mp.mpf("0.25"))
    )
    got = divided_difference(AdmissibleFunction.log(), 0.25, 0.75)
    assert abs(got - expected) <= 1e-14 * abs(expected)
    assert abs(got - 2.1972245773362196) <= 1e-14


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.2, 1.3])
def test_divided_difference_domain_error(bad):
    with pytest.raises(ValueError):
        divided_difference(AdmissibleFunction.log(), bad, 0.5)
    with pytest.raises(ValueError):
        divided_difference(AdmissibleFunction.log(), 0.5, bad)


@given(interior, interior)
def test_divided_difference_symmetric(li, lj):
    f = AdmissibleFunction.log()
    assert divided_difference(f, li, lj) == divided_difference(f, lj, li)


@pytest.mark.parametrize("name", ["alpha(-0.5)", "alpha(0.5)", "alpha(2)", "log", "wy"])
def test_divided_difference_continuous_across_switch(name):
    f = PRESETS[name]
    for lam in np.linspace(0.1, 0.9, 17):
        gap = 1.01 * degeneracy_threshold(lam, lam)
        got = divided_difference(f, float(lam), float(lam + gap))
        want = float(f.deriv1(lam))
        assert abs(got - want) <= 1e-6 * abs(want)


# --- rho ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "pair", [(0.3, 0.7), (0.12, 0.9), (0.4, 0.4), (0.25, 0.25000000001)]
)
def test_rho_wigner_yanase_is_half(pair):
    assert rho(AdmissibleFunction.wigner_yanase(), *pair) == pytest.approx(0.5, rel=1e-12)


def test_rho_identity_is_zero():
    assert rho(AdmissibleFunction.identity(), 0.2, 0.6) == 0.0


def test_rho_log_degenerate_value():
    # -f''(1/2) / f'(1/2)^3 = 4 / 8
    assert rho(AdmissibleFunction.log(), 0.5, 0.5) == pytest.approx(0.5, rel=1e-14)
    # the non-degenerate branch approaches the same value
    near = rho(AdmissibleFunction.log(), 0.5, 0.5 + 1e-5)
    assert abs(near - 0.5) <= 1e-4


@given(interior, interior)
def test_rho_symmetric(li, lj):
    f = AdmissibleFunction.alpha_power(0.5)
    assert rho(f, li, lj) == rho(f, lj, li)


def test_rho_domain_error():
    with pytest.raises(ValueError):
        rho(AdmissibleFunction.log(), 0.5, 1.0)


# --- admissible function presets ----------------------------------------------


@pytest.mark.parametrize("alpha", [-2.0, -0.5, 0.0, 0.5, 2.0, 3.0])
def test_alpha_power_derivative_square(alpha):
    # f'(x)^2 = x^(-1-alpha), the diagonal weight of the pull-back metric
    f = AdmissibleFunction.alpha_power(alpha)
    x = np.linspace(0.05, 0.95, 19)
    assert np.allclose(f.deriv1(x) ** 2, x ** (-1.0 - alpha), rtol=1e-12, atol=0.0)


def test_alpha_power_rejects_alpha_one():
    with pytest.raises(ValueError):
        AdmissibleFunction.alpha_power(1.0)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_derivatives_match_finite_differences(name):
    f = PRESETS[name]
    h1, h2 = 1e-6, 1e-4
    for x in np.linspace(0.15, 0.9, 16):
        fd1 = (float(f.eval(x + h1)) - float(f.eval(x - h1))) / (2.0 * h1)
        d1 = float(f.deriv1(x))
        assert abs(fd1 - d1) <= 1e-6 * max(1.0, abs(d1))
        fd2 = (float(f.eval(x + h2)) - 2.0 * float(f.eval(x)) + float(f.eval(x - h2))) / h2 ** 2
        d2 = float(f.deriv2(x))
        assert abs(fd2 - d2) <= 1e-6 * max(1.0, abs(d2))


def test_custom_triple_is_used_verbatim():
    f = AdmissibleFunction.custom(
        eval=lambda x: 3.0 * x, deriv1=lambda x: 3.0, deriv2=lambda x: 0.0
    )
    assert divided_difference(f, 0.2, 0.6) == pytest.approx(3.0, rel=1e-15)
    assert rho(f, 0.2, 0.6) == 0.0


# --- eigh ---------------------------------------------------------------------


def test_eigh_diagonal_matrix():
    w, v = eigh(np.diag([0.5, 0.3, 0.2]))
    assert np.allclose(w, [0.5, 0.3, 0.2], atol=0.0)
    # eigenvector matrix is a permutation of the identity
    assert np.allclose(np.abs(v), np.eye(3), atol=1e-14)


def test_eigh_two_by_two_hand_value():
    # characteristic polynomial of [[.5,.1],[.1,.5]]: roots .5 +/- .1
    w, _ = eigh(np.array([[0.5, 0.1], [0.1, 0.5]]))
    assert np.allclose(w, [0.6, 0.4], atol=1e-14)


@pytest.mark.parametrize("field", [Field.REAL, Field.COMPLEX])
@pytest.mark.parametrize("n", [2, 4, 7])
def test_eigh_reconstruction(field, n):
    rng = np.random.default_rng(1234 + n)
    a = rng.normal(size=(n, n))
    if field == Field.COMPLEX:
        a = a + 1j * rng.normal(size=(n, n))
    a = a + a.conj().T
    w, v = eigh(SelfAdjointMatrix(a, field))
    assert np.all(np.diff(w) <= 0.0)  # descending
    assert np.max(np.abs((v * w) @ v.conj().T - a)) <= 1e-10
    assert np.max(np.abs(v.conj().T @ v - np.eye(n))) <= 1e-10
    assert abs(w.sum() - np.trace(a).real) <= 1e-10


def test_eigh_rejects_non_selfadjoint():
    with pytest.raises(ValueError):
        eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_convergence_error_is_runtime_error():
    assert issubclass(ConvergenceError, RuntimeError)


# --- container validation --------------------------------------------------


def test_spectrum_validation():
    Spectrum([0.6, 0.4], Field.REAL)
    with pytest.raises(ValueError):
        Spectrum([0.6, -0.1, 0.5])
    with pytest.raises(ValueError):
        Spectrum([0.6, 0.3])
    with pytest.raises(ValueError):
        Spectrum([1.0])


def test_selfadjoint_matrix_validation():
    SelfAdjointMatrix(np.array([[1.0, 2.0], [2.0, 3.0]]))
    m = SelfAdjointMatrix(np.array([[1.0, 1j], [-1j, 0.5]]))
    assert m.field == Field.COMPLEX and m.n == 2
    with pytest.raises(ValueError):
        SelfAdjointMatrix(np.array([[1.0, 2.0], [2.1, 3.0]]))
    with pytest.raises(ValueError):
        SelfAdjointMatrix(np.ones((2, 3)))
