import json
import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import workdps

from gammaforms import (
    FAMILY_NAMES,
    SEEDS,
    IntegralityViolation,
    LengthMismatch,
    RecurrenceSpec,
    family,
    generate,
    generate_all,
    growth_profile,
    laguerre_recurrence,
    pqr_recurrence,
    uvw_recurrence,
)
from gammaforms.recurrences import (
    families_to_csv,
    family_from_json,
    family_to_json,
    log10_abs_int,
    step_exact,
)

# hand-stepped reference tables (verified independently of the generator)
LAGUERRE_Q4 = (1, 2, 7, 34)
LAGUERRE_P4 = (0, 1, 4, 20)
PQR5 = {
    "q": (1, 3, 50, 2022, 148824),
    "p": (0, 2, 31, 1209, 87510),
    "r": (0, 1, 24, 1092, 84384),
}
UVW4 = {
    "u": (-2, 7, 558, 82861),
    "v": (-1, -22, -1518, -225240),
    "w": (0, -17, -1209, -179426),
}


def test_laguerre_tables():
    assert family("qtilde", 3).values == LAGUERRE_Q4
    assert family("ptilde", 3).values == LAGUERRE_P4


def test_pqr_tables():
    for name, expected in PQR5.items():
        assert family(name, 4).values == expected


def test_uvw_tables():
    for name, expected in UVW4.items():
        assert family(name, 3).values == expected


def test_seed_only_generation_is_identity():
    fam = family("u", 2)
    assert fam.values == SEEDS["u"]


def test_generate_all_covers_every_family(tables_60):
    assert set(tables_60) == set(FAMILY_NAMES)
    for name, fam in tables_60.items():
        assert fam.max_n == 61
        assert fam.values[: len(SEEDS[name])] == SEEDS[name]


def test_integrality_to_300(tables_300):
    # generation itself asserts denominator 1 at every step; 8 * 302 values
    total = sum(len(fam) for fam in tables_300.values())
    assert total == 8 * 302
    assert all(isinstance(v, int) for fam in tables_300.values() for v in fam.values)


def test_integrality_violation_reported():
    spec = RecurrenceSpec(order=3, coeff=lambda n, j: Fraction(1, 3), label="bad")
    with pytest.raises(IntegralityViolation) as exc:
        generate(spec, [1, 1], 5, name="bad")
    assert exc.value.n == 2
    assert exc.value.family == "bad"
    assert exc.value.value == Fraction(2, 3)


def test_seed_count_validation():
    with pytest.raises(ValueError):
        generate(pqr_recurrence(), [1, 2], 10)
    with pytest.raises(ValueError):
        generate(laguerre_recurrence(), [1, 2], 0)


def test_determinism(tables_60):
    again = generate_all(61)
    for name in FAMILY_NAMES:
        assert again[name].values == tables_60[name].values


@pytest.mark.parametrize("name", FAMILY_NAMES)
def test_single_step_exactness(name, tables_60):
    # re-stepping any interior window reproduces the stored value exactly
    fam = tables_60[name]
    values = [Fraction(v) for v in fam.values]
    for n in (len(fam.initial) - 1, 7, 23, 60):
        assert fam.spec.step(values, n) == values[n + 1]


def test_coefficient_denominators():
    pqr = pqr_recurrence()
    uvw = uvw_recurrence()
    for n in range(2, 80):
        for j in range(3):
            assert (16 * n - 15) % pqr.coeff(n, j).denominator == 0
            assert ((16 * n + 1) * (16 * n - 15)) % uvw.coeff(n, j).denominator == 0


def test_sign_patterns_stable(tables_60):
    expected = {
        "ptilde": "0" + "+" * 40,
        "qtilde": "+" * 41,
        "p": "0" + "+" * 40,
        "q": "+" * 41,
        "r": "0" + "+" * 40,
        "u": "-" + "+" * 40,
        "v": "-" * 41,
        "w": "0" + "-" * 40,
    }
    for name, pattern in expected.items():
        assert tables_60[name].sign_pattern(40) == pattern


@given(st.integers(min_value=2, max_value=40))
@settings(max_examples=25, deadline=None)
def test_step_exact_agrees_with_generate(max_n):
    spec = pqr_recurrence()
    exact = step_exact(spec, SEEDS["q"], max_n)
    fam = generate(spec, SEEDS["q"], max_n, name="q")
    assert [int(x) for x in exact] == list(fam.values)


# ---------------------------------------------------------------------------
# growth profile


def test_growth_profile_known_values(tables_60):
    prof = {pt.n: pt for pt in growth_profile(tables_60["q"])}
    assert prof[2].log10_abs == pytest.approx(math.log10(50), abs=1e-12)
    u_prof = {pt.n: pt for pt in growth_profile(tables_60["u"])}
    assert u_prof[0].log10_abs == pytest.approx(math.log10(2), abs=1e-12)
    assert u_prof[0].sign == -1
    w_prof = {pt.n: pt for pt in growth_profile(tables_60["w"])}
    assert w_prof[0].log10_abs == float("-inf")
    assert w_prof[0].sign == 0


def test_log10_abs_int_large():
    x = 7 ** 4000
    assert log10_abs_int(x) == pytest.approx(4000 * math.log10(7), rel=1e-14)
    assert log10_abs_int(-x) == log10_abs_int(x)
    assert log10_abs_int(0) == float("-inf")


def test_growth_envelope_for_q():
    # q grows like (2n)! e^{sqrt(2n)} / n^{1/4} up to a slowly varying offset
    tabs = generate_all(201)
    offsets = {}
    for n in (50, 100, 200):
        with workdps(40):
            env = (
                mpmath.factorial(2 * n)
                * mpmath.exp(mpmath.sqrt(2 * n))
                / mpmath.mpf(n) ** mpmath.mpf("0.25")
            )
            offsets[n] = log10_abs_int(tabs["q"][n]) - float(mpmath.log10(env))
    # measured offsets: -0.5957, -0.6074, -0.6159
    for value in offsets.values():
        assert -1.0 < value < -0.3
    assert abs(offsets[200] - offsets[100]) < 0.05
    assert abs(offsets[100] - offsets[50]) < 0.05


# ---------------------------------------------------------------------------
# exports


def test_csv_export(tables_60):
    csv = families_to_csv([tables_60[k] for k in ("u", "v", "w")])
    lines = csv.strip().split("\n")
    assert lines[0] == "n,u,v,w"
    assert lines[4] == "3,82861,-225240,-179426"
    assert len(lines) == 63


def test_csv_length_mismatch():
    a = family("u", 5)
    b = family("v", 6)
    with pytest.raises(LengthMismatch):
        families_to_csv([a, b])


def test_json_roundtrip(tables_60):
    fam = tables_60["q"]
    payload = json.loads(family_to_json(fam))
    assert payload["version"] == 1
    assert payload["family"] == "q"
    assert payload["max_n"] == 61
    assert payload["values"][2] == "50"
    back = family_from_json(family_to_json(fam))
    assert back.values == fam.values
    assert back.spec is not None


def test_json_version_rejected(tables_60):
    payload = json.loads(family_to_json(tables_60["q"]))
    payload["version"] = 2
    with pytest.raises(ValueError):
        family_from_json(json.dumps(payload))
