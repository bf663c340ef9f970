"""High-precision values of gamma, delta, e and e*gamma + delta.

Every constant is obtainable by two independent routes so that no
downstream verification is circular:

* gamma (Euler-Mascheroni): Brent-McMillan style Bessel-series
  acceleration  A(m)/B(m) - ln m  with A = sum H_k (m^k/k!)^2 and
  B = sum (m^k/k!)^2 (error O(e^{-4m})), cross-checked against the
  Euler-Maclaurin corrected harmonic sum
  H_N - ln N - 1/(2N) + sum B_{2k}/(2k N^{2k}) with exact Bernoulli
  numbers obtained from tangent numbers.

* delta (Euler-Gompertz): the exponential-integral series
  delta = e (sum_{k>=1} (-1)^{k+1}/(k k!) - gamma), whose alternating
  remainder is rigorously below the first omitted term; corroborated by
  the Laguerre-pair convergents ptilde[n]/qtilde[n] (error envelope
  ~ 2 sqrt(pi e) e^{-4 sqrt(n)}) and, as an independent implementation,
  by mpmath's exponential integral e*E1(1).

* e: Taylor series of exp at 1 with factorial remainder bound.

All routines carry GUARD_DIGITS extra digits internally and return a
PrecisionReal whose ``digits`` field is the requested certified count.
Results are cached by (constant, digits); cache access is locked.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf, workdps

from .errors import GammaFormsError, InsufficientGammaPrecision
from . import recurrences

GUARD_DIGITS = 15

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


@dataclass(frozen=True)
class PrecisionReal:
    """A multiprecision float with a certified decimal-digit count."""

    value: mpmath.mpf
    digits: int
    provenance: str

    def decimal(self, digits: int | None = None) -> str:
        """Decimal expansion rounded to ``digits`` significant digits."""
        digits = self.digits if digits is None else digits
        if digits < 1:
            raise ValueError("digits must be >= 1")
        if digits > self.digits:
            raise ValueError(f"only {self.digits} digits are certified")
        with workdps(self.digits + 10):
            s = mpmath.nstr(self.value, digits)
        if s.endswith(".0"):
            s = s[:-2]
        return s

    def __float__(self) -> float:
        return float(self.value)


def _cached(key, builder):
    with _CACHE_LOCK:
        if key in _CACHE:
            return _CACHE[key]
    result = builder()
    with _CACHE_LOCK:
        _CACHE.setdefault(key, result)
    return result


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


# ---------------------------------------------------------------------------
# gamma


def _gamma_bessel_series(work: int) -> mpf:
    """A(m)/B(m) - ln m at `work` decimal digits; truncation error < 1e-work."""
    with workdps(work):
        m = int(work * math.log(10) / 4) + 3
        m2 = m * m
        t = mpf(1)
        a = mpf(0)
        b = mpf(1)
        harmonic = mpf(0)
        eps = mpf(10) ** (-work)
        k = 0
        while True:
            k += 1
            t = t * m2 / (k * k)
            harmonic += mpf(1) / k
            a += t * harmonic
            b += t
            if k > m and t < eps * b:
                break
        return +(a / b - mpmath.ln(m))


def tangent_numbers(count: int) -> list[int]:
    """The first `count` tangent numbers 1, 2, 16, 272, 7936, ...

    Triangle recurrence; exact integers.  |B_{2k}| relates by
    |B_{2k}| = 2k T_k / (2^{2k} (2^{2k} - 1)).
    """
    t = [0] * (count + 1)
    t[1] = 1
    for k in range(2, count + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, count + 1):
        for j in range(k, count + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t[1:]


def _gamma_euler_maclaurin(work: int) -> mpf:
    """H_N - ln N - 1/(2N) + Bernoulli tail, N a power of two."""
    with workdps(work):
        m = max(6, int(math.log2(work)) + 3)
        big_n = 1 << m
        one = mpf(1)
        harmonic = mpf(0)
        for i in range(1, big_n + 1):
            harmonic += one / i
        acc = harmonic - mpmath.ln(big_n) - one / (2 * big_n)

        # smallest k with  2k (ln(2 pi N) - ln(2k) + 1) > work ln 10 + margin
        target = work * math.log(10) + 25

        def small_enough(k: int) -> bool:
            return 2 * k * (math.log(2 * math.pi * big_n) - math.log(2 * k) + 1) > target

        kmax = 8
        while not small_enough(kmax):
            kmax *= 2
        kmax += kmax // 8 + 8

        tangents = tangent_numbers(kmax)
        eps = mpf(10) ** (-work)
        previous = None
        for k in range(1, kmax + 1):
            twok = 2 * k
            # |B_2k| / (2k N^2k) = T_k / (2^{2k} (2^{2k} - 1) N^{2k})
            term = mpmath.ldexp(mpf(tangents[k - 1]) / (mpf(2) ** twok - 1), -twok * (m + 1))
            if previous is not None and term > previous:
                raise GammaFormsError("asymptotic tail diverged before target accuracy")
            previous = term
            acc += term if k % 2 == 1 else -term
            if term < eps:
                return +acc
        raise GammaFormsError("tangent number table exhausted")


def gamma(digits: int, cross_check: bool = True) -> PrecisionReal:
    """Euler-Mascheroni constant, certified to `digits` decimals.

    Computed by the Bessel-series acceleration; with cross_check (the
    default) the Euler-Maclaurin route is evaluated as well and the two
    must agree beyond the requested precision.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")

    def build() -> PrecisionReal:
        work = digits + GUARD_DIGITS + 10
        primary = _gamma_bessel_series(work)
        provenance = "bessel-series"
        if cross_check:
            secondary = _gamma_euler_maclaurin(work)
            with workdps(work):
                disagreement = abs(primary - secondary)
                if disagreement > mpf(10) ** (-(digits + 5)):
                    raise GammaFormsError(
                        f"gamma routes disagree at {mpmath.nstr(disagreement, 3)} "
                        f"for {digits} requested digits"
                    )
            provenance += "+euler-maclaurin"
        return PrecisionReal(value=primary, digits=digits, provenance=provenance)

    return _cached(("gamma", digits, cross_check), build)


def gamma_euler_maclaurin(digits: int) -> PrecisionReal:
    """The Euler-Maclaurin route alone (exposed for cross-validation)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    return _cached(
        ("gamma-em", digits),
        lambda: PrecisionReal(
            value=_gamma_euler_maclaurin(digits + GUARD_DIGITS + 10),
            digits=digits,
            provenance="euler-maclaurin",
        ),
    )


def gamma_bessel(digits: int) -> PrecisionReal:
    """The Bessel-series route alone (exposed for cross-validation)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    return _cached(
        ("gamma-bessel", digits),
        lambda: PrecisionReal(
            value=_gamma_bessel_series(digits + GUARD_DIGITS + 10),
            digits=digits,
            provenance="bessel-series",
        ),
    )


# ---------------------------------------------------------------------------
# e


def e_const(digits: int) -> PrecisionReal:
    """e by its Taylor series; remainder below the first omitted term."""
    if digits < 1:
        raise ValueError("digits must be >= 1")

    def build() -> PrecisionReal:
        work = digits + GUARD_DIGITS
        with workdps(work):
            total = mpf(2)
            term = mpf(1)
            eps = mpf(10) ** (-work)
            k = 1
            while term >= eps:
                k += 1
                term /= k
                total += term
            return PrecisionReal(value=+total, digits=digits, provenance="taylor-series")

    return _cached(("e", digits), build)


# ---------------------------------------------------------------------------
# delta


def delta_series(digits: int, gamma_value: PrecisionReal | None = None) -> PrecisionReal:
    """Euler-Gompertz constant via  e (sum (-1)^{k+1}/(k k!) - gamma).

    The supplied gamma must carry at least digits + GUARD_DIGITS certified
    digits (InsufficientGammaPrecision otherwise).  The alternating series
    is truncated once the next term falls below the working epsilon, which
    rigorously bounds the remainder.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if gamma_value is None:
        gamma_value = gamma(digits + GUARD_DIGITS)
    if gamma_value.digits < digits + GUARD_DIGITS:
        raise InsufficientGammaPrecision(
            f"need gamma to {digits + GUARD_DIGITS} digits, got {gamma_value.digits}"
        )

    def build() -> PrecisionReal:
        work = digits + GUARD_DIGITS
        e = e_const(digits + GUARD_DIGITS)
        with workdps(work):
            total = mpf(0)
            factorial_term = mpf(1)
            eps = mpf(10) ** (-work)
            k = 0
            while True:
                k += 1
                factorial_term /= k  # now 1/k!
                piece = factorial_term / k  # 1/(k k!)
                total += piece if k % 2 == 1 else -piece
                if piece < eps:
                    break
            value = +(e.value * (total - gamma_value.value))
        return PrecisionReal(value=value, digits=digits, provenance="exp-integral-series")

    return _cached(("delta", digits), build)


def delta_partial_sums(count: int, digits: int = 30) -> list[mpf]:
    """Partial sums e (sum_{k<=m} (-1)^{k+1}/(k k!) - gamma), m = 1..count.

    Odd partial sums over*, even under*shoot the limit; handy for testing
    the alternating-series bracketing.
    """
    g = gamma(digits + GUARD_DIGITS)
    e = e_const(digits + GUARD_DIGITS)
    out = []
    with workdps(digits + GUARD_DIGITS):
        total = mpf(0)
        factorial_term = mpf(1)
        for k in range(1, count + 1):
            factorial_term /= k
            piece = factorial_term / k
            total += piece if k % 2 == 1 else -piece
            out.append(+(e.value * (total - g.value)))
    return out


def delta_laguerre(n: int, tables=None):
    """Convergent ptilde[n]/qtilde[n] with an order-of-magnitude error bar.

    Returns (approximant as an exact Fraction, error estimate).  The
    estimate is the asymptotic envelope 2 sqrt(pi e) e^{-4 sqrt(n)} of
    |ptilde[n]/qtilde[n] - delta|, reported as order of magnitude only.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if tables is None or "ptilde" not in tables or tables["ptilde"].max_n < n:
        ptilde = recurrences.family("ptilde", n)
        qtilde = recurrences.family("qtilde", n)
    else:
        ptilde, qtilde = tables["ptilde"], tables["qtilde"]
    approximant = Fraction(ptilde[n], qtilde[n])
    with workdps(30):
        envelope = 2 * mpmath.sqrt(mp.pi * mp.e) * mpmath.exp(-4 * mpmath.sqrt(n))
    estimate = PrecisionReal(
        value=envelope, digits=1, provenance="perron-envelope-order-of-magnitude"
    )
    return approximant, estimate


def delta_expint_reference(digits: int) -> PrecisionReal:
    """delta = e E1(1) via mpmath's exponential integral.

    Independent implementation used purely as a cross-validation
    reference for the series route.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")

    def build() -> PrecisionReal:
        with workdps(digits + GUARD_DIGITS):
            value = +(mp.e * mpmath.e1(1))
        return PrecisionReal(value=value, digits=digits, provenance="mpmath-e1-reference")

    return _cached(("delta-e1", digits), build)


# ---------------------------------------------------------------------------
# bundles


def egd(digits: int) -> PrecisionReal:
    """e*gamma + delta at the requested precision."""
    if digits < 1:
        raise ValueError("digits must be >= 1")

    def build() -> PrecisionReal:
        inner = digits + GUARD_DIGITS
        g = gamma(inner + GUARD_DIGITS)
        d = delta_series(inner, gamma_value=g)
        e = e_const(inner)
        with workdps(inner):
            value = +(e.value * g.value + d.value)
        return PrecisionReal(value=value, digits=digits, provenance="e*gamma+delta")

    return _cached(("egd", digits), build)


@dataclass(frozen=True)
class ConstantsBundle:
    """gamma, delta, e and e*gamma+delta certified to a common digit count."""

    gamma: PrecisionReal
    delta: PrecisionReal
    e: PrecisionReal
    egd: PrecisionReal

    @property
    def digits(self) -> int:
        return min(self.gamma.digits, self.delta.digits, self.e.digits, self.egd.digits)


def bundle(digits: int) -> ConstantsBundle:
    """All four constants at `digits` certified decimals."""
    g = gamma(digits + 2 * GUARD_DIGITS)
    d = delta_series(digits + GUARD_DIGITS, gamma_value=g)
    e = e_const(digits + GUARD_DIGITS)
    with workdps(digits + GUARD_DIGITS):
        egd_value = +(e.value * g.value + d.value)
    return ConstantsBundle(
        gamma=PrecisionReal(g.value, digits, g.provenance),
        delta=PrecisionReal(d.value, digits, d.provenance),
        e=PrecisionReal(e.value, digits, e.provenance),
        egd=PrecisionReal(egd_value, digits, "e*gamma+delta"),
    )
