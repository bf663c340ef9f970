"""Evaluation of the small linear forms and their decay laws.

Five forms are evaluated from the integer tables and budgeted-precision
constants (gamma, delta, e, egd = e*gamma + delta)::

    f[n]  = p[n] - gamma q[n]
    g[n]  = e p[n] - egd q[n] + r[n]
    l[n]  = delta u[n] - gamma v[n] + w[n]
    vE[n] = v[n] + e u[n]
    wE[n] = w[n] + egd u[n]

Each form exhibits massive cancellation: the coefficients reach the
(2n)!-scale while the value is exponentially small.  The decimal budget

    digits(n) = log10((2n)!) + n log10 16 + sqrt(2n)/ln 10 + 40

covers the worst cancellation (the g form) for every n, with ~40 digits
surviving after cancellation.  Normalized values divide by the asymptotic
envelopes::

    f:  (2n)! e^{-sqrt(2n)} / n^{1/4}
    g:  16^{-n}
    l:  n^{5/4} e^{-sqrt(2n)} / 4^n
    vE, wE:  e^{sqrt(2n)} n^{5/4} / 4^n

target_constant() returns the claimed limiting constants of the
normalized forms (2 sqrt(pi)/(4e)^{3/8} for f, 1/8 for g,
2*2^{1/4}/e^{3/8} for l).  Note: numerical verification in this package
confirms the f constant but contradicts the g and l claims; the measured
behavior is |g[n]| 16^n ~ kappa/n with kappa ~= 1.66 and
|l[n]| e^{sqrt(2n)} 4^n ~ (4 c_f kappa/sqrt(pi)) n^{1/4}, both one power
of n below the claims.  fit_constant() reports what is actually measured.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np
from mpmath import mpf, workdps

from . import constants as constants_mod
from .errors import LengthMismatch, NonConvergence, PrecisionBudgetExceeded

FORM_NAMES = ("f", "g", "l", "vE", "wE")

REQUIRED_FAMILIES = {
    "f": ("p", "q"),
    "g": ("p", "q", "r"),
    "l": ("u", "v", "w"),
    "vE": ("u", "v"),
    "wE": ("u", "w"),
}

# correction power fitted against the normalized values: a + b * n^{-power}
CORRECTION_POWER = {"f": 0.5, "l": 0.5, "g": 1.0, "vE": 0.5, "wE": 0.5}


def budget_digits(n: int) -> int:
    """Decimal working precision sufficient for any of the five forms."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return (
        int(
            math.lgamma(2 * n + 1) / math.log(10)
            + n * math.log10(16)
            + math.sqrt(2 * n) / math.log(10)
        )
        + 41
    )


@dataclass(frozen=True)
class PrecisionBudget:
    n: int
    form_name: str
    digits: int


def budget(form_name: str, n: int) -> PrecisionBudget:
    _check_form(form_name)
    return PrecisionBudget(n=n, form_name=form_name, digits=budget_digits(n))


def _check_form(form_name: str) -> None:
    if form_name not in FORM_NAMES:
        raise KeyError(f"unknown form {form_name!r}; expected one of {FORM_NAMES}")


def normalizer(form_name: str, n: int, digits: int = 30) -> mpf:
    """Asymptotic envelope value at n (n >= 1), to `digits` digits."""
    _check_form(form_name)
    if n < 1:
        raise ValueError("normalizer requires n >= 1")
    with workdps(digits + 10):
        root = mpmath.sqrt(2 * n)
        if form_name == "f":
            value = mpmath.factorial(2 * n) * mpmath.exp(-root) / mpf(n) ** mpf("0.25")
        elif form_name == "g":
            value = mpf(16) ** (-n)
        elif form_name == "l":
            value = mpf(n) ** mpf("1.25") * mpmath.exp(-root) / mpf(4) ** n
        else:  # vE, wE
            value = mpmath.exp(root) * mpf(n) ** mpf("1.25") / mpf(4) ** n
        return +value


def target_constant(form_name: str):
    """Claimed limit of |normalized form|, or None where only O(.) is claimed."""
    _check_form(form_name)
    with workdps(40):
        if form_name == "f":
            return +(2 * mpmath.sqrt(mpmath.pi) / (4 * mpmath.e) ** mpf("0.375"))
        if form_name == "g":
            return mpf(1) / 8
        if form_name == "l":
            return +(2 * mpf(2) ** mpf("0.25") / mpmath.exp(mpf("0.375")))
    return None


@dataclass(frozen=True)
class FormRecord:
    """One evaluated form value with its envelope normalization."""

    n: int
    form_name: str
    value: mpf
    normalizer: mpf | None
    normalized: mpf | None
    budget_digits: int

    @property
    def sign(self) -> int:
        return 0 if self.value == 0 else (1 if self.value > 0 else -1)


def _form_value(tables, form_name: str, n: int, bundle) -> mpf:
    gam = bundle.gamma.value
    dlt = bundle.delta.value
    e = bundle.e.value
    egd = bundle.egd.value
    if form_name == "f":
        return tables["p"][n] - gam * tables["q"][n]
    if form_name == "g":
        return e * tables["p"][n] - egd * tables["q"][n] + tables["r"][n]
    if form_name == "l":
        return dlt * tables["u"][n] - gam * tables["v"][n] + tables["w"][n]
    if form_name == "vE":
        return tables["v"][n] + e * tables["u"][n]
    return tables["w"][n] + egd * tables["u"][n]


def eval_form(
    tables,
    form_name: str,
    n: int,
    constants=None,
    digits: int | None = None,
    check_stability: bool = False,
) -> FormRecord:
    """Evaluate one form at index n with budgeted precision.

    ``digits`` defaults to budget_digits(n).  With check_stability the
    evaluation is repeated at +20 digits and the normalized value must
    move by less than 1e-10 (PrecisionBudgetExceeded otherwise).
    """
    _check_form(form_name)
    for key in REQUIRED_FAMILIES[form_name]:
        if key not in tables:
            raise LengthMismatch(f"table {key!r} required for form {form_name!r}")
        if tables[key].max_n < n:
            raise LengthMismatch(f"family {key!r} reaches {tables[key].max_n} < {n}")
    digits = budget_digits(n) if digits is None else digits
    if constants is None:
        constants = constants_mod.bundle(digits)
    if constants.digits < digits:
        raise PrecisionBudgetExceeded(
            f"constants carry {constants.digits} digits; need {digits}"
        )
    with workdps(digits):
        value = +_form_value(tables, form_name, n, constants)
    if n >= 1:
        env = normalizer(form_name, n)
        with workdps(50):
            normalized = +(value / env)
    else:
        env = None
        normalized = None
    if check_stability:
        wide = digits + 20
        if constants.digits >= wide:
            wide_bundle = constants
        else:
            wide_bundle = constants_mod.bundle(wide)
        with workdps(wide):
            wide_value = +_form_value(tables, form_name, n, wide_bundle)
        with workdps(50):
            reference = env if env is not None else max(abs(wide_value), mpf(1))
            drift = abs(value - wide_value) / reference
            if drift >= mpf("1e-10"):
                raise PrecisionBudgetExceeded(
                    f"form {form_name!r} at n={n} moved by {mpmath.nstr(drift, 3)} "
                    f"between {digits} and {wide} digits"
                )
    return FormRecord(
        n=n,
        form_name=form_name,
        value=value,
        normalizer=env,
        normalized=normalized,
        budget_digits=digits,
    )


def eval_range(tables, form_name: str, ns, constants=None, digits: int | None = None):
    """Evaluate a form over several indices at one shared working precision."""
    ns = sorted(set(int(n) for n in ns))
    if not ns:
        return []
    digits = budget_digits(max(ns)) if digits is None else digits
    if constants is None:
        constants = constants_mod.bundle(digits)
    return [
        eval_form(tables, form_name, n, constants=constants, digits=digits) for n in ns
    ]


# ---------------------------------------------------------------------------
# asymptotic fit


@dataclass(frozen=True)
class FitResult:
    """Least-squares extrapolation of |normalized| against a + b n^{-power}."""

    form_name: str
    c_estimate: float
    decay_exponent: float
    converged: bool
    n_values: tuple[int, ...]
    residual: float
    correction_power: float


def fit_constant(tables, form_name: str, ns, constants=None, records=None) -> FitResult:
    """Extrapolate the normalized form magnitude over the sample indices.

    Fits |normalized(n)| = a + b n^{-power} (power 1/2 for f, l; 1 for g)
    and returns a as the constant estimate.  The decay exponent is the
    median log-log slope between consecutive samples (0 for a form that
    truly settles at a constant).  If the model leaves a large residual a
    NonConvergence warning is emitted and converged is False.
    """
    _check_form(form_name)
    if records is not None:
        ns = [rec.n for rec in records]
    ns = sorted(set(int(n) for n in ns))
    if len(ns) < 8:
        raise ValueError(f"need at least 8 sample points, got {len(ns)}")
    if min(ns) < 1:
        raise ValueError("sample indices must be >= 1")
    if records is None:
        records = eval_range(tables, form_name, ns, constants=constants)
    y = np.array([float(abs(rec.normalized)) for rec in records])
    n_arr = np.array([rec.n for rec in records], dtype=float)
    power = CORRECTION_POWER[form_name]
    t = n_arr ** (-power)
    slope, intercept = np.polyfit(t, y, 1)
    model = intercept + slope * t
    residual = float(np.max(np.abs(y - model)))

    with np.errstate(divide="ignore"):
        logs = np.log(y)
    slopes = -(np.diff(logs) / np.diff(np.log(n_arr)))
    decay_exponent = float(np.median(slopes))

    spread = max(float(np.max(y)), abs(float(intercept)), 1e-300)
    converged = bool(residual <= 0.02 * spread)
    if not converged:
        warnings.warn(
            f"normalized {form_name!r} values do not stabilize against "
            f"a + b n^(-{power}) (residual {residual:.3g} vs scale {spread:.3g})",
            NonConvergence,
        )
    return FitResult(
        form_name=form_name,
        c_estimate=float(intercept),
        decay_exponent=decay_exponent,
        converged=converged,
        n_values=tuple(ns),
        residual=residual,
        correction_power=power,
    )


def geometric_ladder(lo: int, hi: int, points: int = 9) -> list[int]:
    """About `points` roughly geometrically spaced integers in [lo, hi]."""
    if lo < 1 or hi < lo:
        raise ValueError("need 1 <= lo <= hi")
    if points < 2:
        raise ValueError("need at least two points")
    ratio = (hi / lo) ** (1.0 / (points - 1))
    out = sorted({int(round(lo * ratio**i)) for i in range(points)})
    out[0], out[-1] = lo, hi
    return sorted(set(out))
