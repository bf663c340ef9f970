"""Casorati determinants of sequence pairs and the determinant recurrence.

For two sequences a, b the Casoratian (discrete Wronskian) is fixed here,
once and for all, as::

    delta[n] = a[n+1] b[n] - a[n] b[n+1]

If a and b both solve  x[n+1] = A[n] x[n] + B[n] x[n-1] + C[n] x[n-2],
substituting the recurrence into the determinant twice gives the
transformed four-term recurrence::

    delta[n] = -B[n] delta[n-1] - C[n] A[n-1] delta[n-2]
               + C[n] C[n-1] delta[n-3]

The families u, v, w are the Casoratians of (q,p), (q,r), (p,r) divided by
(n!)^2; building them here from the p, q, r tables provides an oracle that
is independent of stepping their own order-4 recurrence directly.

bilinear_identity_check() evaluates the transcendental-valued bilinear
identities linking the integer Casoratians with the numeric sequences
f[n] = p[n] - gamma*q[n] and g[n] = e*p[n] - (e*gamma+delta)*q[n] + r[n];
residuals are reported relative to the largest term entering each identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mpf, workdps

from .errors import IntegralityViolation, LengthMismatch, PrecisionBudgetExceeded
from .recurrences import (
    RecurrenceSpec,
    SequenceFamily,
    generate_all,
    pqr_recurrence,
)


@dataclass(frozen=True)
class CasoratiPair:
    """delta[n] = a[n+1] b[n] - a[n] b[n+1] for two integer families."""

    a_name: str
    b_name: str
    delta: tuple[int, ...]

    @property
    def max_n(self) -> int:
        return len(self.delta) - 1

    def __getitem__(self, n: int) -> int:
        return self.delta[n]

    def __len__(self) -> int:
        return len(self.delta)


def casoratian(a: SequenceFamily, b: SequenceFamily) -> CasoratiPair:
    """Exact Casoratian table; defined for 0 <= n <= max_n - 1."""
    if len(a) != len(b):
        raise LengthMismatch(
            f"{a.name!r} has {len(a)} values but {b.name!r} has {len(b)}"
        )
    if len(a) < 2:
        raise LengthMismatch("need at least two values per family")
    delta = tuple(
        a[n + 1] * b[n] - a[n] * b[n + 1] for n in range(len(a) - 1)
    )
    return CasoratiPair(a_name=a.name, b_name=b.name, delta=delta)


def delta_to_csv(pair: CasoratiPair) -> str:
    lines = [f"n,delta_{pair.a_name}{pair.b_name}"]
    lines.extend(f"{n},{pair.delta[n]}" for n in range(len(pair.delta)))
    return "\n".join(lines) + "\n"


def scaled_uvw(max_n: int, tables=None):
    """u, v, w built as Casoratians of (q,p), (q,r), (p,r) over (n!)^2.

    Requires (or generates) p, q, r up to max_n + 1.  Raises
    IntegralityViolation if (n!)^2 fails to divide a determinant.
    """
    if tables is None or any(k not in tables for k in ("p", "q", "r")):
        tables = generate_all(max_n + 1)
    p, q, r = tables["p"], tables["q"], tables["r"]
    if min(len(p), len(q), len(r)) < max_n + 2:
        raise LengthMismatch(f"p, q, r must reach index {max_n + 1}")

    out = {}
    for name, (a, b) in {"u": (q, p), "v": (q, r), "w": (p, r)}.items():
        values = []
        fact2 = 1
        for n in range(max_n + 1):
            if n > 0:
                fact2 *= n * n
            det = a[n + 1] * b[n] - a[n] * b[n + 1]
            quotient, remainder = divmod(det, fact2)
            if remainder != 0:
                raise IntegralityViolation(n, name, Fraction(det, fact2))
            values.append(quotient)
        out[name] = SequenceFamily(
            name=name,
            values=tuple(values),
            spec=None,
            initial=tuple(values[:3]),
            provenance="casoratian/(n!)^2",
        )
    return out["u"], out["v"], out["w"]


# ---------------------------------------------------------------------------
# the determinant recurrence transform

CoefficientFunction = Callable[[int], Fraction]


@dataclass(frozen=True)
class TransformedRecurrence:
    """Four-term recurrence satisfied by the Casoratian of two solutions.

    Built from the coefficient functions A, B, C of the underlying
    order-4 recurrence; delta obeys

        delta[n] = -B[n] delta[n-1] - C[n] A[n-1] delta[n-2]
                   + C[n] C[n-1] delta[n-3]
    """

    a: CoefficientFunction
    b: CoefficientFunction
    c: CoefficientFunction

    def delta_coeff(self, n: int, back: int) -> Fraction:
        """Coefficient of delta[n-back] in delta[n], back in {1, 2, 3}."""
        if back == 1:
            return -self.b(n)
        if back == 2:
            return -self.c(n) * self.a(n - 1)
        if back == 3:
            return self.c(n) * self.c(n - 1)
        raise IndexError(back)

    @property
    def spec(self) -> RecurrenceSpec:
        """The same relation in stepped form (delta[n+1] from delta[n-j])."""

        def coeff(n: int, j: int) -> Fraction:
            return self.delta_coeff(n + 1, j + 1)

        return RecurrenceSpec(order=4, coeff=coeff, label="casoratian-transform")


def transform_recurrence(
    a: CoefficientFunction, b: CoefficientFunction, c: CoefficientFunction
) -> TransformedRecurrence:
    return TransformedRecurrence(a=a, b=b, c=c)


def pqr_coefficient_functions():
    """The (A, B, C) coefficient triple of the p/q/r recurrence."""
    spec = pqr_recurrence()
    return (
        lambda n: spec.coeff(n, 0),
        lambda n: spec.coeff(n, 1),
        lambda n: spec.coeff(n, 2),
    )


# ---------------------------------------------------------------------------
# bilinear identities


@dataclass(frozen=True)
class IdentityResiduals:
    """Relative residuals of the bilinear Casoratian identities at one index.

    Keys of ``residuals``:

    * ``"pg"``: Caso(p,g) = Delta_pr - (e*gamma+delta) Delta_pq
    * ``"qg"``: Caso(q,g) = -e Delta_pq + Delta_qr
    * ``"fg"``: Caso(f,g) = -delta Delta_pq + Delta_pr - gamma Delta_qr
    * ``"l_vs_casoratian"``: direct l[n] against Caso(f,g)/(n!)^2

    Residuals are |lhs - rhs| divided by the largest term magnitude
    entering the identity.
    """

    n: int
    residuals: dict
    log10_scale: float
    digits: int


def _required_digits(n: int) -> int:
    # same coarse cancellation budget used by the form evaluator
    from .forms import budget_digits

    return budget_digits(n)


def bilinear_identity_check(n: int, tables, constants) -> IdentityResiduals:
    """Check the bilinear determinant identities numerically at index n.

    ``tables`` must contain p, q, r (to n+1) and u, v, w (to n);
    ``constants`` is a ConstantsBundle whose certified digits must meet
    the cancellation budget for n.
    """
    needed = _required_digits(n)
    if constants.digits < needed:
        raise PrecisionBudgetExceeded(
            f"constants carry {constants.digits} digits; index {n} needs {needed}"
        )
    for k in ("p", "q", "r"):
        if tables[k].max_n < n + 1:
            raise LengthMismatch(f"family {k!r} must reach index {n + 1}")
    for k in ("u", "v", "w"):
        if tables[k].max_n < n:
            raise LengthMismatch(f"family {k!r} must reach index {n}")

    p, q, r = tables["p"], tables["q"], tables["r"]
    dpq = p[n + 1] * q[n] - p[n] * q[n + 1]
    dpr = p[n + 1] * r[n] - p[n] * r[n + 1]
    dqr = q[n + 1] * r[n] - q[n] * r[n + 1]

    with workdps(constants.digits):
        gam = constants.gamma.value
        dlt = constants.delta.value
        e = constants.e.value
        egd = constants.egd.value

        def f_at(k: int) -> mpf:
            return p[k] - gam * q[k]

        def g_at(k: int) -> mpf:
            return e * p[k] - egd * q[k] + r[k]

        fn, fn1 = f_at(n), f_at(n + 1)
        gn, gn1 = g_at(n), g_at(n + 1)

        checks = {
            "pg": (p[n + 1] * gn - p[n] * gn1, dpr - egd * dpq),
            "qg": (q[n + 1] * gn - q[n] * gn1, -e * dpq + dqr),
            "fg": (fn1 * gn - fn * gn1, -dlt * dpq + dpr - gam * dqr),
        }

        residuals = {}
        scale = mpf(0)
        for key, (lhs, rhs) in checks.items():
            magnitude = max(abs(lhs), abs(rhs), mpf(1))
            scale = max(scale, magnitude)
            residuals[key] = abs(lhs - rhs) / magnitude

        # dual route for the smallest form: exact integer u,v,w against the
        # numeric Casoratian of (f, g)
        fact2 = mpf(math.factorial(n)) ** 2
        l_direct = dlt * tables["u"][n] - gam * tables["v"][n] + tables["w"][n]
        l_caso = (fn1 * gn - fn * gn1) / fact2
        residuals["l_vs_casoratian"] = abs(l_direct - l_caso) / max(abs(l_direct), abs(l_caso))

        return IdentityResiduals(
            n=n,
            residuals={k: +v for k, v in residuals.items()},
            log10_scale=float(mpmath.log10(scale)) if scale > 0 else 0.0,
            digits=constants.digits,
        )
