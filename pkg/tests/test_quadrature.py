import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlcoherent import (
    DomainError, QuadratureError, Singularities, ToleranceError, Transform, integrate_density,
    integrate_moment, log_rho_n, make_family, measure_for,
)

ORACLE_FAMILIES = [
    ("glauber", {}),
    ("su11", {"j": 1.0}), ("su11", {"j": 1.5}), ("su11", {"j": 2.0}), ("su11", {"j": 3.0}),
    ("barut-girardello", {"j": 0.5}), ("barut-girardello", {"j": 1.0}),
    ("barut-girardello", {"j": 2.0}),
]


def _true_rel(res, expected_log):
    return abs(math.expm1(res.log_value - expected_log))


def test_glauber_third_moment():
    res = integrate_moment(measure_for(make_family("glauber")), 3, 1e-10)
    assert abs(res.log_value - math.log(6.0)) <= 1e-10
    assert res.transform_used is Transform.PLAIN
    assert res.evaluations > 0 and res.rel_error_estimate >= 0.0


def test_su11_beta_endpoint():
    res = integrate_moment(measure_for(make_family("su11", {"j": 1.0})), 4, 1e-10)
    assert abs(res.log_value - math.log(0.2)) <= 1e-10
    assert res.transform_used is Transform.BETA_ENDPOINT


def test_barut_girardello_sqrt_bessel():
    res = integrate_moment(measure_for(make_family("barut-girardello", {"j": 1.0})), 2, 1e-8)
    assert abs(math.expm1(res.log_value - math.log(12.0))) <= 1e-8
    assert res.transform_used is Transform.SQRT_BESSEL


def test_density_examples():
    assert integrate_density(lambda t: 0.0, (0.0, 1.0)).log_value == pytest.approx(0.0, abs=1e-14)
    assert integrate_density(lambda t: -t, (0.0, math.inf)).log_value == pytest.approx(0.0, abs=1e-14)
    pt = measure_for(make_family("nc-poschl-teller", {"tau": 0.2, "gamma": 0.2, "epsilon": 0.2}))
    sing = Singularities(pt.left_exponent, True, center=3.0, width=1.0)
    assert abs(integrate_density(pt.log_density, pt.support, sing).log_value) <= 1e-10


def test_density_endpoint_singularities():
    # int_0^1 t^(-1/2) dt = 2, int_0^1 -ln t dt = 1, int_2^5 dt = 3
    assert integrate_density(lambda t: -0.5 * math.log(t), (0.0, 1.0),
                             Singularities(-0.5)).value == pytest.approx(2.0, rel=1e-12)
    assert integrate_density(lambda t: math.log(-math.log(t)), (0.0, 1.0),
                             Singularities(0.0, True)).value == pytest.approx(1.0, rel=1e-12)
    assert integrate_density(lambda t: 0.0, (2.0, 5.0)).value == pytest.approx(3.0, rel=1e-13)


@pytest.mark.parametrize("fid, params", ORACLE_FAMILIES)
def test_oracle_agreement(fid, params):
    m = measure_for(make_family(fid, params))
    fam = make_family(fid, params)
    for n in range(21):
        assert _true_rel(integrate_moment(m, n, 1e-11), log_rho_n(fam, n)) <= 1e-10


def test_error_estimate_honesty():
    cases = 0
    honest = 0
    for fid, params in ORACLE_FAMILIES:
        fam = make_family(fid, params)
        m = measure_for(fam)
        for n in range(21):
            for tol in (1e-6, 1e-8, 1e-10, 1e-12):
                res = integrate_moment(m, n, tol)
                cases += 1
                honest += _true_rel(res, log_rho_n(fam, n)) <= 10.0 * res.rel_error_estimate
    assert honest >= 0.99 * cases


def test_transform_invariance():
    m = measure_for(make_family("barut-girardello", {"j": 2.0}))
    for n in range(11):
        a = integrate_moment(m, n, 1e-10, Transform.SQRT_BESSEL)
        b = integrate_moment(m, n, 1e-10, "plain")
        assert a.transform_used is Transform.SQRT_BESSEL and b.transform_used is Transform.PLAIN
        assert abs(math.expm1(a.log_value - b.log_value)) <= 1e-8


def test_su11_plain_agrees_with_beta_endpoint():
    m = measure_for(make_family("su11", {"j": 3.0}))
    for n in (0, 5, 20):
        a = integrate_moment(m, n, 1e-10)
        b = integrate_moment(m, n, 1e-10, Transform.PLAIN)
        assert abs(math.expm1(a.log_value - b.log_value)) <= 1e-9


def test_determinism():
    m = measure_for(make_family("nc-oscillator", {"tau": 0.1}))
    first = [integrate_moment(m, n, 1e-10) for n in range(0, 21, 5)]
    second = [integrate_moment(m, n, 1e-10) for n in range(0, 21, 5)]
    assert first == second


def test_evaluations_flat_in_n():
    m = measure_for(make_family("nc-oscillator", {"tau": 0.05}))
    evals = [integrate_moment(m, n, 1e-10).evaluations for n in (0, 10, 20, 40, 80)]
    assert max(evals) <= 200
    assert evals[-1] <= evals[1]


@pytest.mark.parametrize("tol", [1e-14, 0.0, -1.0, 1e-2, math.nan])
def test_tolerance_errors(tol):
    m = measure_for(make_family("glauber"))
    with pytest.raises(ToleranceError):
        integrate_moment(m, 1, tol)


def test_bad_arguments():
    glauber = measure_for(make_family("glauber"))
    with pytest.raises(DomainError):
        integrate_moment(glauber, -1)
    with pytest.raises(DomainError):
        integrate_moment(glauber, 1, 1e-10, Transform.BETA_ENDPOINT)
    with pytest.raises(DomainError):
        integrate_moment(glauber, 1, 1e-10, Transform.SQRT_BESSEL)
    with pytest.raises(DomainError):
        integrate_density(lambda t: 0.0, (1.0, 0.0))
    with pytest.raises(DomainError):
        integrate_density(lambda t: -1.5 * math.log(t), (0.0, 1.0), Singularities(-1.5))


def test_non_convergence_carries_estimate():
    # int_0^inf dt / (1 + t) diverges
    with pytest.raises(QuadratureError) as info:
        integrate_density(lambda t: -math.log1p(t), (0.0, math.inf))
    err = info.value
    assert math.isfinite(err.log_estimate) and err.rel_error_estimate > 1e-10
    assert err.evaluations > 0


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-0.9, max_value=30.0), st.floats(min_value=0.1, max_value=50.0))
def test_gamma_integrals(p, rate):
    # int_0^inf t^p e^(-rate t) dt = Gamma(p+1) / rate^(p+1)
    res = integrate_density(lambda t: p * math.log(t) - rate * t, (0.0, math.inf),
                            Singularities(p, center=(p + 1.0) / rate, width=1.0), 1e-10)
    expected = math.lgamma(p + 1.0) - (p + 1.0) * math.log(rate)
    assert abs(math.expm1(res.log_value - expected)) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-0.9, max_value=20.0), st.floats(min_value=-0.9, max_value=20.0))
def test_beta_integrals(p, q):
    res = integrate_density(lambda t: p * math.log(t) + q * math.log1p(-t), (0.0, 1.0),
                            Singularities(p), 1e-10)
    expected = math.lgamma(p + 1) + math.lgamma(q + 1) - math.lgamma(p + q + 2)
    assert abs(math.expm1(res.log_value - expected)) <= 1e-9
