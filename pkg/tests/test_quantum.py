import mpmath as mp
import numpy as np
import pytest

from statecurv.numerics import AdmissibleFunction, Field, Spectrum
from statecurv.quantum import (
    StateDimensions,
    scal_m2,
    scal_quantum,
    state_dimensions,
)

WY = AdmissibleFunction.wigner_yanase()
LOG = AdmissibleFunction.log()
IDENT = AdmissibleFunction.identity()


def random_spectrum(rng, n, field, margin=0.02):
    while True:
        p = rng.dirichlet(np.ones(n))
        if p.min() >= margin:
            return Spectrum(p, field)


def test_state_dimensions():
    assert state_dimensions(2, Field.REAL) == 2
    assert state_dimensions(2, Field.COMPLEX) == 3
    assert state_dimensions(3, Field.COMPLEX) == 8
    assert state_dimensions(3, Field.REAL) == 5
    dims = StateDimensions.of(4)
    assert (dims.d_real, dims.d_complex) == (9, 15)
    with pytest.raises(ValueError):
        state_dimensions(1, Field.REAL)


def test_wigner_yanase_sphere_values():
    # constant curvature d(d-1)/4 of a radius-2 sphere in each dimension
    rng = np.random.default_rng(21)
    for n in (2, 3, 4):
        for field in (Field.REAL, Field.COMPLEX):
            d = state_dimensions(n, field)
            want = d * (d - 1) / 4.0
            for _ in range(10):
                got = scal_quantum(WY, random_spectrum(rng, n, field)).scal
                assert abs(got - want) <= 1e-10 * want


def test_wigner_yanase_named_cases():
    assert scal_quantum(WY, Spectrum([0.7, 0.3], Field.COMPLEX)).scal == pytest.approx(1.5, rel=1e-12)
    assert scal_quantum(WY, Spectrum([0.7, 0.3], Field.REAL)).scal == pytest.approx(0.5, rel=1e-12)
    assert scal_quantum(WY, Spectrum([0.5, 0.3, 0.2], Field.COMPLEX)).scal == pytest.approx(14.0, rel=1e-12)


def test_identity_is_flat():
    rng = np.random.default_rng(22)
    for n in (2, 3, 4):
        for field in (Field.REAL, Field.COMPLEX):
            rep = scal_quantum(IDENT, random_spectrum(rng, n, field))
            assert rep.scal == 0.0
            assert (rep.x1, rep.x2, rep.x3, rep.x4) == (0.0, 0.0, 0.0, 0.0)


def test_report_assembly_identities():
    rng = np.random.default_rng(23)
    for field in (Field.REAL, Field.COMPLEX):
        rep = scal_quantum(LOG, random_spectrum(rng, 3, field))
        if field == Field.REAL:
            assert rep.scal == rep.x1 + 2.0 * rep.x2 + rep.x3
        else:
            assert rep.scal == rep.x1 + 4.0 * rep.x2 + 2.0 * rep.x3 + 2.0 * rep.x4


def test_report_normalization_constant():
    spec = Spectrum([0.5, 0.3, 0.2], Field.COMPLEX)
    rep = scal_quantum(LOG, spec)
    want = np.sqrt(np.sum(1.0 / np.asarray(LOG.deriv1(spec.values)) ** 2))
    assert rep.c == pytest.approx(want, rel=1e-12)
    assert rep.field == Field.COMPLEX


def test_spectral_permutation_invariance():
    vals = [0.5, 0.3, 0.2]
    base = scal_quantum(LOG, Spectrum(vals, Field.COMPLEX)).scal
    for perm in ([0.3, 0.5, 0.2], [0.2, 0.3, 0.5]):
        assert scal_quantum(LOG, Spectrum(perm, Field.COMPLEX)).scal == pytest.approx(base, rel=1e-13)


def test_m2_named_cases():
    assert scal_m2(WY, 0.7, 0.3, Field.COMPLEX) == pytest.approx(1.5, rel=1e-12)
    assert scal_m2(IDENT, 0.6, 0.4, Field.REAL) == 0.0


def test_m2_log_matches_high_precision_evaluation():
    mp.mp.dps = 50
    l1, l2 = mp.mpf("0.75"), mp.mpf("0.25")
    p, q = 1 / l1, 1 / l2
    cap_p, cap_q = -1 / l1 ** 2, -1 / l2 ** 2
    s = p ** 2 + q ** 2
    ratio = (p - q) / (mp.log(l1) - mp.log(l2))
    x2 = p * q / s ** 2 * (cap_p / p + cap_q / q) * ratio
    x4 = ratio ** 2 / s
    want_c = float(4 * x2 + 2 * x4)
    want_r = float(2 * x2)
    assert want_c == pytest.approx(1.5366580173139424, rel=1e-15)
    assert scal_m2(LOG, 0.75, 0.25, Field.COMPLEX) == pytest.approx(want_c, rel=1e-13)
    assert scal_m2(LOG, 0.75, 0.25, Field.REAL) == pytest.approx(want_r, rel=1e-13)


def test_m2_agrees_with_general_formula():
    rng = np.random.default_rng(24)
    for _ in range(50):
        alpha = float(rng.uniform(-2.0, 0.95))
        f = AdmissibleFunction.alpha_power(alpha)
        l1 = float(rng.uniform(0.55, 0.9))
        for field in (Field.REAL, Field.COMPLEX):
            compact = scal_m2(f, l1, 1.0 - l1, field)
            general = scal_quantum(f, Spectrum([l1, 1.0 - l1], field)).scal
            assert abs(compact - general) <= 1e-12 * (1.0 + abs(general))


def test_m2_degenerate_pair_uses_limit():
    got = scal_m2(LOG, 0.5, 0.5, Field.COMPLEX)
    near = scal_m2(LOG, 0.5 + 1e-5, 0.5 - 1e-5, Field.COMPLEX)
    assert abs(got - near) <= 1e-3 * (1.0 + abs(got))
    assert np.isfinite(got)


def test_m2_input_validation():
    with pytest.raises(ValueError):
        scal_m2(LOG, 0.7, 0.2, Field.REAL)
    with pytest.raises(ValueError):
        scal_m2(LOG, 1.2, -0.2, Field.REAL)


def test_degenerate_spectrum_continuity():
    for f in (LOG, AdmissibleFunction.alpha_power(0.5)):
        at_zero = scal_quantum(f, Spectrum([0.5, 0.5], Field.COMPLEX)).scal
        eps = 1e-5
        near = scal_quantum(f, Spectrum([0.5 + eps, 0.5 - eps], Field.COMPLEX)).scal
        assert abs(near - at_zero) <= 1e-3 * (1.0 + abs(at_zero))
