"""Symbolic construction of the shared denominator polynomials Q_n.

The polynomials are built by an iterated weighted-derivative (Rodrigues
type) pipeline over the weight  w(z) = (1 - z) e^{-z}::

    Q_n(z) = 1/(n!)^2 * w^{-1} d^n/dz^n [ w z^n w^{-1} d^n/dz^n
                                          [ w z^n (1-z)^{2n} ] ]

carried out exactly on (polynomial) * e^{s z} pairs, s in {-1, 0, +1}.
Every division (by (1-z) when stripping a weight factor, and by (n!)^2 at
the end) is asserted exact; a nonzero remainder aborts with
NonExactDivision, which doubles as the probe for a wrong weight
convention.  The sign choice w(z) = (1-z) e^{-z} is fixed empirically: it
is the unique reading that reproduces the known small tables (see the
dual-oracle tests against the recurrence route).

From Q_n the integer pair (p_n, q_n) is recovered through the moment
identity  integral_0^inf x^k ln x e^{-x} dx = k! (H_k - gamma):

    q_n = sum_k c_k k!          p_n = sum_k c_k k! H_k

where c_k are the coefficients of Q_n (rational, denominators dividing
(n!)^2) and H_k the harmonic numbers, so that
integral Q_n(x) ln x e^{-x} dx = p_n - gamma q_n; both weighted sums are
asserted to land on integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonExactDivision, NonIntegerP


@dataclass(frozen=True)
class RationalPolynomial:
    """Dense polynomial with exact rational coefficients, ascending order.

    The zero polynomial is the empty tuple; otherwise the trailing
    coefficient is nonzero.
    """

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def from_coeffs(seq) -> "RationalPolynomial":
        coeffs = [Fraction(x) for x in seq]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return RationalPolynomial(tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial.from_coeffs(
            [self[k] + other[k] for k in range(size)]
        )

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        size = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial.from_coeffs(
            [self[k] - other[k] for k in range(size)]
        )

    def __mul__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if self.is_zero() or other.is_zero():
            return RationalPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial.from_coeffs(out)

    def scale(self, factor) -> "RationalPolynomial":
        factor = Fraction(factor)
        if factor == 0:
            return RationalPolynomial(())
        return RationalPolynomial(tuple(c * factor for c in self.coeffs))

    def shift_up(self, k: int) -> "RationalPolynomial":
        """Multiply by z^k."""
        if self.is_zero():
            return self
        return RationalPolynomial((Fraction(0),) * k + self.coeffs)

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial.from_coeffs(
            [k * c for k, c in enumerate(self.coeffs)][1:]
        )

    def evaluate(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deflate_one(self, step: str = "deflate") -> "RationalPolynomial":
        """Exact division by (1 - z); NonExactDivision on remainder."""
        if self.is_zero():
            return self
        # with C = (1-z) M: m_k = c_k + m_{k-1}; exact iff c_d + m_{d-1} = 0
        quotient = []
        running = Fraction(0)
        for c in self.coeffs[:-1]:
            running = c + running
            quotient.append(running)
        if self.coeffs[-1] + running != 0:
            raise NonExactDivision(step, f"remainder {self.coeffs[-1] + running}")
        return RationalPolynomial.from_coeffs(quotient)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


def one_minus_z_power(m: int) -> RationalPolynomial:
    """(1 - z)^m with exact binomial coefficients."""
    return RationalPolynomial.from_coeffs(
        [(-1) ** i * math.comb(m, i) for i in range(m + 1)]
    )


WEIGHT_POLY = RationalPolynomial.from_coeffs([1, -1])  # (1 - z)
WEIGHT_EXP_SIGN = -1  # w(z) = (1 - z) e^{-z}


@dataclass(frozen=True)
class ExpPolynomial:
    """P(z) e^{s z} with polynomial P and s in {-1, 0, +1}.

    Closed under differentiation: d/dz (P e^{s z}) = (P' + s P) e^{s z}.
    """

    poly: RationalPolynomial
    exp_sign: int

    def __post_init__(self):
        if self.exp_sign not in (-1, 0, 1):
            raise ValueError(f"exp_sign must be -1, 0 or +1, got {self.exp_sign}")

    def derivative(self) -> "ExpPolynomial":
        p = self.poly.derivative()
        if self.exp_sign:
            p = p + self.poly.scale(self.exp_sign)
        return ExpPolynomial(poly=p, exp_sign=self.exp_sign)

    def nth_derivative(self, n: int) -> "ExpPolynomial":
        out = self
        for _ in range(n):
            out = out.derivative()
        return out

    def times_poly(self, other: RationalPolynomial) -> "ExpPolynomial":
        return ExpPolynomial(poly=self.poly * other, exp_sign=self.exp_sign)

    def times_weight(self) -> "ExpPolynomial":
        return ExpPolynomial(
            poly=self.poly * WEIGHT_POLY, exp_sign=self.exp_sign + WEIGHT_EXP_SIGN
        )

    def divide_weight(self, step: str) -> "ExpPolynomial":
        """Divide by w(z) = (1-z) e^{-z}: deflate by (1-z), cancel e^{-z}."""
        return ExpPolynomial(
            poly=self.poly.deflate_one(step=step),
            exp_sign=self.exp_sign - WEIGHT_EXP_SIGN,
        )


def _pipeline(n: int):
    """All stages of the weighted-derivative construction for index n."""
    start = ExpPolynomial(
        poly=one_minus_z_power(2 * n + 1).shift_up(n),  # w * z^n (1-z)^{2n}
        exp_sign=WEIGHT_EXP_SIGN,
    )
    inner = start.nth_derivative(n)
    middle = inner.divide_weight(step="inner-weight-division")
    outer_seed = middle.times_poly(
        RationalPolynomial.from_coeffs([1]).shift_up(n)
    ).times_weight()
    outer = outer_seed.nth_derivative(n)
    final = outer.divide_weight(step="outer-weight-division")
    return start, inner, middle, outer, final


def rodrigues_Q(n: int) -> RationalPolynomial:
    """The degree-4n polynomial Q_n.

    Coefficients are rational with denominators dividing (n!)^2: the
    pipeline produces an integer-coefficient polynomial which the final
    normalization divides by (n!)^2 (at n = 2 the result already carries
    denominators 2 and 4, so integer coefficients must not be assumed).
    Raises NonExactDivision if a weight division leaves a remainder, if
    the exponential factors fail to cancel, or if the pre-normalization
    coefficients are not integers.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    *_, final = _pipeline(n)
    if final.exp_sign != 0:
        raise NonExactDivision("exponential-cancellation", f"sign {final.exp_sign}")
    if not final.poly.is_integral():
        raise NonExactDivision("pre-normalization-integrality", "weight stages left fractions")
    q = final.poly.scale(Fraction(1, math.factorial(n) ** 2))
    if q.degree != 4 * n:
        raise NonExactDivision("degree-check", f"degree {q.degree}, expected {4 * n}")
    return q


_HARMONIC: list[Fraction] = [Fraction(0)]


def harmonic(k: int) -> Fraction:
    """H_k = sum_{j<=k} 1/j as an exact rational (H_0 = 0)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    while len(_HARMONIC) <= k:
        j = len(_HARMONIC)
        _HARMONIC.append(_HARMONIC[-1] + Fraction(1, j))
    return _HARMONIC[k]


def extract_pq(q_poly: RationalPolynomial) -> tuple[int, int]:
    """Integer pair (p, q) from Q via the log-moment identity.

    q = sum c_k k!  and  p = sum c_k k! H_k.  The coefficients c_k may be
    rational (denominators dividing (n!)^2); the factorial weights must
    clear every denominator and the harmonic sum must land on an integer,
    otherwise NonIntegerP signals a wrong Q.
    """
    q_sum = Fraction(0)
    p_sum = Fraction(0)
    fact = 1
    for k, c in enumerate(q_poly.coeffs):
        if k > 0:
            fact *= k
        q_sum += c * fact
        p_sum += c * fact * harmonic(k)
    if q_sum.denominator != 1:
        raise NonIntegerP(f"factorial sum left denominator {q_sum.denominator}")
    if p_sum.denominator != 1:
        raise NonIntegerP(f"harmonic sum left denominator {p_sum.denominator}")
    return int(p_sum), int(q_sum)
