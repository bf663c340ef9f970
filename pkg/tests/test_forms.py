import mpmath
import pytest
from mpmath import mp, mpf, workdps

from gammaforms import (
    LengthMismatch,
    NonConvergence,
    PrecisionBudgetExceeded,
    budget,
    budget_digits,
    eval_form,
    eval_range,
    fit_constant,
    generate_all,
    normalizer,
    target_constant,
)
from gammaforms.constants import bundle
from gammaforms.forms import FORM_NAMES, geometric_ladder


@pytest.fixture(scope="module")
def tables_400():
    return generate_all(401)


@pytest.fixture(scope="module")
def bundle_400():
    return bundle(budget_digits(400))


# independent reference constants for expected values (mpmath built-ins)
def _reference():
    with workdps(50):
        gam = +mp.euler
        dlt = +(mp.e * mpmath.e1(1))
        return gam, dlt, +mp.e


# ---------------------------------------------------------------------------
# budget


def test_budget_values():
    assert budget_digits(0) == 41
    assert budget_digits(1000) == 7000
    assert budget_digits(100) == 542
    for n in range(0, 50):
        assert budget_digits(n + 1) > budget_digits(n)


def test_budget_record():
    b = budget("g", 100)
    assert (b.n, b.form_name, b.digits) == (100, "g", 542)
    with pytest.raises(KeyError):
        budget("nope", 3)


# ---------------------------------------------------------------------------
# normalizer


def test_normalizer_g_exact_power():
    assert normalizer("g", 5) == mpf(16) ** (-5) == mpf(1) / 1048576


def test_normalizer_l_at_2():
    # 2^{5/4} e^{-2} / 16 = 0.0201177102...
    value = normalizer("l", 2)
    with workdps(40):
        expected = mpf(2) ** mpf("1.25") * mpmath.exp(-2) / 16
        assert abs(value - expected) < mpf("1e-25")
    assert float(value) == pytest.approx(0.020117710217, rel=1e-9)


def test_normalizer_f_at_1():
    value = normalizer("f", 1)
    assert float(value) == pytest.approx(0.486233468868, rel=1e-9)


def test_normalizer_domain():
    with pytest.raises(ValueError):
        normalizer("f", 0)
    with pytest.raises(KeyError):
        normalizer("x", 3)


def test_target_constants():
    with workdps(40):
        gam, dlt, e = _reference()
        c_f = 2 * mpmath.sqrt(mp.pi) / (4 * e) ** mpf("0.375")
        c_l = 2 * mpf(2) ** mpf("0.25") / mpmath.exp(mpf("0.375"))
        assert abs(target_constant("f") - c_f) < mpf("1e-25")
        assert abs(target_constant("l") - c_l) < mpf("1e-25")
    assert target_constant("g") == mpf(1) / 8
    assert float(target_constant("f")) == pytest.approx(1.44867846596, rel=1e-10)
    assert float(target_constant("l")) == pytest.approx(1.63465860081, rel=1e-10)
    assert target_constant("vE") is None
    assert target_constant("wE") is None


# ---------------------------------------------------------------------------
# eval_form


def test_eval_form_seed_values(tables_400, bundle_400):
    gam, dlt, e = _reference()
    digits = bundle_400.digits
    l0 = eval_form(tables_400, "l", 0, constants=bundle_400, digits=digits)
    with workdps(45):
        assert abs(l0.value - (gam - 2 * dlt)) < mpf("1e-40")
    f1 = eval_form(tables_400, "f", 1, constants=bundle_400, digits=digits)
    with workdps(45):
        assert abs(f1.value - (2 - 3 * gam)) < mpf("1e-40")
    l2 = eval_form(tables_400, "l", 2, constants=bundle_400, digits=digits)
    with workdps(45):
        assert abs(l2.value - (558 * dlt + 1518 * gam - 1209)) < mpf("1e-38")
    assert float(l0.value) == pytest.approx(-0.615479059745, rel=1e-10)
    assert float(f1.value) == pytest.approx(0.268353005295, rel=1e-10)
    assert float(l2.value) == pytest.approx(-0.0247925031308, rel=1e-9)


def test_eval_form_seed_values_second_regime(tables_400, bundle_400):
    gam, dlt, e = _reference()
    w0 = eval_form(tables_400, "wE", 0, constants=bundle_400, digits=bundle_400.digits)
    v0 = eval_form(tables_400, "vE", 0, constants=bundle_400, digits=bundle_400.digits)
    with workdps(45):
        egd_ref = e * gam + dlt
        assert abs(w0.value - (-2 * egd_ref)) < mpf("1e-38")
        assert abs(v0.value - (-1 - 2 * e)) < mpf("1e-38")
    assert w0.normalized is None and w0.normalizer is None
    assert v0.sign == -1


def test_eval_form_requires_tables(tables_400, bundle_400):
    with pytest.raises(LengthMismatch):
        eval_form({"p": tables_400["p"]}, "f", 3, constants=bundle_400)
    with pytest.raises(LengthMismatch):
        eval_form(tables_400, "f", 402, constants=bundle_400)


def test_eval_form_requires_budget(tables_400):
    weak = bundle(60)
    with pytest.raises(PrecisionBudgetExceeded):
        eval_form(tables_400, "g", 100, constants=weak)


def test_stability_check_passes_at_budget(tables_400):
    rec = eval_form(tables_400, "g", 40, check_stability=True)
    assert rec.budget_digits == budget_digits(40)


def test_stability_check_detects_starved_precision(tables_400):
    # 60 digits is hopeless for the g form at n = 30 (budget is 162)
    with pytest.raises(PrecisionBudgetExceeded):
        eval_form(tables_400, "g", 30, digits=60, check_stability=True)


# characterization: measured normalized values, frozen as regression anchors
MEASURED = {
    ("f", 100): "1.34513007199",
    ("f", 400): "1.39688758435",
    ("g", 100): "-0.0165081431838",
    ("g", 400): "-0.00414926277964",
    ("l", 100): "-0.0472436901817",
    ("l", 400): "-0.0126622987706",
    ("vE", 100): "-0.00998088041538",
    ("wE", 400): "-0.00134075651539",
}


@pytest.mark.parametrize("key", sorted(MEASURED))
def test_normalized_characterization(key, tables_400, bundle_400):
    form_name, n = key
    rec = eval_form(tables_400, form_name, n, constants=bundle_400, digits=bundle_400.digits)
    assert float(rec.normalized) == pytest.approx(float(MEASURED[key]), rel=1e-9)


def test_form_sign_record(tables_400, bundle_400):
    # f starts negative (f0 = -gamma) then stays positive; the others are
    # negative throughout the measured range
    records = eval_range(tables_400, "f", range(0, 41), constants=bundle_400)
    assert records[0].sign == -1
    assert all(r.sign == 1 for r in records[1:])
    for name in ("g", "l", "vE", "wE"):
        records = eval_range(tables_400, name, range(0, 41), constants=bundle_400)
        assert all(r.sign == -1 for r in records)


def test_smallness_relative_to_coefficients(tables_400, bundle_400):
    # |f_n| / q_n and |l_n| / max(|u|,|v|,|w|) collapse as n grows
    with workdps(60):
        previous_f = previous_l = None
        for n in (10, 50, 100, 200, 400):
            f = eval_form(tables_400, "f", n, constants=bundle_400, digits=bundle_400.digits)
            ratio_f = abs(f.value) / tables_400["q"][n]
            l = eval_form(tables_400, "l", n, constants=bundle_400, digits=bundle_400.digits)
            coeff = max(abs(tables_400[k][n]) for k in ("u", "v", "w"))
            ratio_l = abs(l.value) / coeff
            if previous_f is not None:
                assert ratio_f < previous_f
                assert ratio_l < previous_l
            previous_f, previous_l = ratio_f, ratio_l
        # f collapses like e^{-2 sqrt(2n)} relative to q; l collapses much
        # faster (its coefficients grow like (2n)! 4^n while l itself decays)
        assert previous_f < mpf("1e-20")
        assert previous_l < mpf("1e-1000")


# ---------------------------------------------------------------------------
# fit


def test_fit_f_converges_to_target(tables_400, bundle_400):
    ladder = geometric_ladder(25, 400, 10)
    result = fit_constant(tables_400, "f", ladder, constants=bundle_400)
    assert result.converged
    assert result.c_estimate == pytest.approx(float(target_constant("f")), abs=0.02)
    assert abs(result.decay_exponent) < 0.1
    assert result.correction_power == 0.5


def test_fit_g_measures_vanishing_constant(tables_400, bundle_400):
    ladder = geometric_ladder(25, 400, 10)
    result = fit_constant(tables_400, "g", ladder, constants=bundle_400)
    assert result.converged  # a + b/n fits the measured kappa/n law well
    assert abs(result.c_estimate) < 0.01  # far from the claimed 1/8
    assert result.decay_exponent == pytest.approx(1.0, abs=0.2)


def test_fit_l_flags_model_mismatch(tables_400, bundle_400):
    # |l| normalized decays ~ 1/n, which a + b n^{-1/2} cannot absorb
    ladder = geometric_ladder(25, 400, 10)
    with pytest.warns(NonConvergence):
        result = fit_constant(tables_400, "l", ladder, constants=bundle_400)
    assert not result.converged


def test_fit_requires_eight_points(tables_400, bundle_400):
    with pytest.raises(ValueError):
        fit_constant(tables_400, "f", [10, 20, 30], constants=bundle_400)


def test_geometric_ladder():
    ladder = geometric_ladder(25, 400, 9)
    assert ladder[0] == 25 and ladder[-1] == 400
    assert ladder == sorted(set(ladder))
    with pytest.raises(ValueError):
        geometric_ladder(0, 10)
    with pytest.raises(ValueError):
        geometric_ladder(10, 5)


def test_eval_range_shares_precision(tables_400, bundle_400):
    records = eval_range(tables_400, "g", (5, 10, 20), constants=bundle_400)
    assert [r.n for r in records] == [5, 10, 20]
    assert len({r.budget_digits for r in records}) == 1


def test_form_names_exported():
    assert FORM_NAMES == ("f", "g", "l", "vE", "wE")
