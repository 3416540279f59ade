import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlcoherent import (
    DivergenceError, DomainError, FamilyId, ParameterError, eigenvalue, log_normalization,
    log_rho, log_rho_n, make_family, normalization, radius_of_convergence,
)

FAMILIES = [
    ("glauber", {}),
    ("su11", {"j": 1.0}),
    ("su11", {"j": 1.5}),
    ("su11", {"j": 3.0}),
    ("barut-girardello", {"j": 0.5}),
    ("barut-girardello", {"j": 2.0}),
    ("nc-oscillator", {"tau": 0.05}),
    ("nc-oscillator", {"tau": 0.5}),
    ("nc-poschl-teller", {"tau": 0.2, "gamma": 0.2, "epsilon": 0.2}),
    ("nc-poschl-teller", {"tau": 0.1, "gamma": 0.3, "epsilon": 0.05}),
    ("nc-poschl-teller", {"tau": 0.5, "gamma": 0.0, "epsilon": 0.0}),
]
IDS = [f"{f}-{'-'.join(f'{k}{v}' for k, v in p.items())}" for f, p in FAMILIES]


def test_make_family_derived_quantities():
    nco = make_family("nc-oscillator", {"tau": 0.1})
    assert nco.beta_exp == pytest.approx(21.0, rel=1e-15) and nco.alpha_exp == 0.0
    pt = make_family("nc-poschl-teller", {"tau": 0.2, "gamma": 0.2, "epsilon": 0.2})
    assert pt.a == pytest.approx(0.5 * math.sqrt(5.0), rel=1e-15)
    assert pt.b == pt.a
    assert pt.eta == pytest.approx((3.0 + math.sqrt(5.0)) / 2.0, rel=1e-15)
    assert pt.eta == pytest.approx(2.6180340, abs=1e-7)


@pytest.mark.parametrize("fid, params, constraint", [
    ("su11", {"j": 0.5}, "2j > 1"),
    ("su11", {"j": 0.2}, "2j > 1"),
    ("barut-girardello", {"j": 0.4}, "2j >= 1"),
    ("nc-oscillator", {"tau": 0.0}, "tau > 0"),
    ("nc-oscillator", {"tau": -1.0}, "tau > 0"),
    ("nc-poschl-teller", {"tau": 0.2, "gamma": -0.1, "epsilon": 0.0}, "1 + 4 gamma / tau >= 0"),
    ("nc-poschl-teller", {"tau": 0.2, "gamma": 0.0, "epsilon": -0.06}, "1 + 4 epsilon / tau >= 0"),
    ("nc-oscillator", {}, "tau present"),
    ("glauber", {"tau": 1.0}, "no extra parameters"),
    ("nc-oscillator", {"tau": math.nan}, "tau finite"),
])
def test_make_family_rejects(fid, params, constraint):
    with pytest.raises(ParameterError) as info:
        make_family(fid, params)
    assert info.value.constraint == constraint


def test_unknown_family_and_aliases():
    with pytest.raises(ParameterError):
        make_family("hydrogen", {})
    assert make_family("bg", {"j": 1}).id is FamilyId.BARUT_GIRARDELLO
    assert make_family(FamilyId.GLAUBER).id is FamilyId.GLAUBER


def test_barut_girardello_allows_half():
    assert make_family("barut-girardello", {"j": 0.5}).param("j") == 0.5


def test_eigenvalue_examples():
    assert eigenvalue(make_family("glauber"), 7) == 7.0
    assert eigenvalue(make_family("nc-oscillator", {"tau": 0.1}), 2) == pytest.approx(2.3, rel=1e-15)
    pt = make_family("nc-poschl-teller", {"tau": 0.2, "gamma": 0.2, "epsilon": 0.2})
    assert eigenvalue(pt, 1) == pytest.approx(0.4 * ((3 + math.sqrt(5)) / 2) ** 2, rel=1e-14)
    assert eigenvalue(pt, 1) == pytest.approx(2.7416408, abs=1e-7)
    with pytest.raises(DomainError):
        eigenvalue(pt, 0)


def test_log_rho_examples():
    assert log_rho_n(make_family("glauber"), 3) == pytest.approx(math.log(6.0), rel=1e-15)
    assert log_rho_n(make_family("nc-oscillator", {"tau": 0.1}), 2) == pytest.approx(
        math.log(2.53), rel=1e-14)
    assert log_rho_n(make_family("su11", {"j": 1.0}), 4) == pytest.approx(math.log(0.2), rel=1e-14)


@pytest.mark.parametrize("fid, params", FAMILIES, ids=IDS)
def test_closed_form_matches_running_product(fid, params):
    fam = make_family(fid, params)
    seq = log_rho(fam, 50)
    assert seq.log_rho[0] == 0.0
    running = 0.0
    for n in range(1, 51):
        le = math.log(eigenvalue(fam, n))
        assert le == pytest.approx(seq[n] - seq[n - 1], abs=1e-10)
        running += le
        assert abs(seq[n] - running) <= 1e-10


def test_small_tau_moments_against_mpmath():
    import mpmath as mp

    fam = make_family("nc-oscillator", {"tau": 0.05})
    mp.mp.dps = 40
    rho = mp.mpf(1)
    for k in range(1, 21):
        rho *= k * (1 + mp.mpf("0.05") * (1 + k) / 2)
    assert log_rho_n(fam, 20) == pytest.approx(float(mp.log(rho)), rel=1e-14)
    # the Gamma ratio inside the closed form spans more than 30 decades
    gamma_part = math.lgamma(20 + fam.beta_exp + 1) - math.lgamma(1 + fam.beta_exp)
    assert gamma_part / math.log(10.0) > 30.0


@pytest.mark.parametrize("fid, params, expected", [
    ("glauber", {}, math.inf),
    ("su11", {"j": 1.0}, 1.0),
    ("su11", {"j": 3.5}, 1.0),
    ("barut-girardello", {"j": 1.0}, math.inf),
    ("nc-oscillator", {"tau": 0.5}, math.inf),
    ("nc-poschl-teller", {"tau": 0.2, "gamma": 0.2, "epsilon": 0.2}, math.inf),
])
def test_radius(fid, params, expected):
    assert radius_of_convergence(make_family(fid, params)) == expected


def test_normalization_examples():
    assert normalization(make_family("glauber"), 1.0) == pytest.approx(math.e, rel=1e-15)
    assert normalization(make_family("su11", {"j": 1.0}), 0.5) == pytest.approx(4.0, rel=1e-14)
    for fid, params in FAMILIES:
        assert normalization(make_family(fid, params), 0.0) == 1.0


def test_normalization_against_brute_force():
    # direct summation of far more terms than the certified truncation keeps
    for fid, params in FAMILIES:
        fam = make_family(fid, params)
        x = 0.7 if fid == "su11" else 3.0
        terms = [n * math.log(x) - log_rho_n(fam, n) for n in range(400)]
        peak = max(terms)
        brute = peak + math.log(math.fsum(math.exp(t - peak) for t in terms))
        assert log_normalization(fam, x) == pytest.approx(brute, abs=1e-14)


@pytest.mark.parametrize("fid, params", FAMILIES, ids=IDS)
def test_normalization_increasing(fid, params):
    fam = make_family(fid, params)
    top = 0.99 if fid == "su11" else 40.0
    xs = [top * k / 40 for k in range(41)]
    values = [log_normalization(fam, x) for x in xs]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_su11_diverges_towards_one():
    fam = make_family("su11", {"j": 1.0})
    n9, n99, n999 = (normalization(fam, x) for x in (0.9, 0.99, 0.999))
    assert n999 > n99 > n9
    assert n999 == pytest.approx(1.0 / 0.001 ** 2, rel=1e-12)
    for x in (1.0, 1.5):
        with pytest.raises(DivergenceError):
            normalization(fam, x)


def test_glauber_normalization_large_argument_in_log_space():
    assert log_normalization(make_family("glauber"), 900.0) == pytest.approx(900.0, rel=1e-14)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.01, max_value=5.0), st.integers(min_value=1, max_value=60))
def test_nc_oscillator_product_property(tau, n):
    fam = make_family("nc-oscillator", {"tau": tau})
    direct = math.fsum(math.log(k * (1 + tau * (1 + k) / 2)) for k in range(1, n + 1))
    assert log_rho_n(fam, n) == pytest.approx(direct, abs=1e-10, rel=1e-13)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=0.05, max_value=2.0), st.floats(min_value=-0.0125, max_value=3.0),
       st.floats(min_value=-0.0125, max_value=3.0))
def test_poschl_teller_eta_bound(tau, gamma, epsilon):
    fam = make_family("nc-poschl-teller", {"tau": tau, "gamma": gamma, "epsilon": epsilon})
    assert math.isfinite(fam.eta)
    if gamma >= 0 and epsilon >= 0:
        assert fam.eta > 1.5
