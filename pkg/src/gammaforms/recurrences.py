"""Exact generation of the integer sequence families.

Eight sequences are produced by three fixed recurrences:

* order 3 (Laguerre pair, families ``ptilde``/``qtilde``)::

      x[n+1] = 2(n+1) x[n] - n^2 x[n-1]

  The convergents ptilde[n]/qtilde[n] approach the Euler-Gompertz
  constant.

* order 4 (families ``p``, ``q``, ``r``, the coefficient sequences of
  rational approximants to the Euler-Mascheroni constant)::

      (16n-15) x[n+1] = (128n^3 + 40n^2 - 82n - 45) x[n]
                        - n^2 (256n^3 - 240n^2 + 64n - 7) x[n-1]
                        + n^2 (n-1)^2 (16n+1) x[n-2]

* order 4 (families ``u``, ``v``, ``w``; these equal the 2x2 Casorati
  determinants of (q,p), (q,r), (p,r) divided by (n!)^2, see
  :mod:`gammaforms.casoratians`)::

      (16n+1)(16n-15) x[n+1] = (16n-15)(256n^3 + 528n^2 + 352n + 73) x[n]
                               - (16n+17)(128n^3 + 40n^2 - 82n - 45) x[n-1]
                               + n^2 (16n+17)(16n+1) x[n-2]

Stepping is carried out in exact rational arithmetic.  Every generated
value is asserted to have reduced denominator 1; any failure raises
IntegralityViolation instead of silently rounding, since a single missed
divisibility would corrupt everything downstream.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from .errors import IntegralityViolation, LengthMismatch

# Decimal exports routinely exceed CPython's default 4300-digit int/str limit.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), 50_000_000))

FAMILY_NAMES = ("ptilde", "qtilde", "p", "q", "r", "u", "v", "w")

SEEDS = {
    "ptilde": (0, 1),
    "qtilde": (1, 2),
    "p": (0, 2, 31),
    "q": (1, 3, 50),
    "r": (0, 1, 24),
    "u": (-2, 7, 558),
    "v": (-1, -22, -1518),
    "w": (0, -17, -1209),
}


@dataclass(frozen=True)
class RecurrenceSpec:
    """A linear recurrence in stepped form.

    ``coeff(n, j)`` is the exact rational coefficient of ``x[n-j]`` in the
    expression for ``x[n+1]``; the leading divisor is already folded in::

        x[n+1] = sum_{j=0}^{order-2} coeff(n, j) * x[n-j]

    ``coeff`` must be defined for all n >= order - 2 (the first index
    stepped from ``order - 1`` seed values).
    """

    order: int
    coeff: Callable[[int, int], Fraction]
    label: str = ""

    def step(self, values, n):
        """Exact value of x[n+1] from the trailing window of ``values``."""
        return sum(
            (self.coeff(n, j) * values[n - j] for j in range(self.order - 1)),
            start=Fraction(0),
        )


def laguerre_recurrence() -> RecurrenceSpec:
    def coeff(n: int, j: int) -> Fraction:
        if j == 0:
            return Fraction(2 * (n + 1))
        if j == 1:
            return Fraction(-n * n)
        raise IndexError(j)

    return RecurrenceSpec(order=3, coeff=coeff, label="laguerre-pair")


def pqr_recurrence() -> RecurrenceSpec:
    def coeff(n: int, j: int) -> Fraction:
        d = 16 * n - 15
        if j == 0:
            return Fraction(128 * n**3 + 40 * n**2 - 82 * n - 45, d)
        if j == 1:
            return Fraction(-(n**2) * (256 * n**3 - 240 * n**2 + 64 * n - 7), d)
        if j == 2:
            return Fraction(n**2 * (n - 1) ** 2 * (16 * n + 1), d)
        raise IndexError(j)

    return RecurrenceSpec(order=4, coeff=coeff, label="pqr")


def uvw_recurrence() -> RecurrenceSpec:
    def coeff(n: int, j: int) -> Fraction:
        d = (16 * n + 1) * (16 * n - 15)
        if j == 0:
            return Fraction((16 * n - 15) * (256 * n**3 + 528 * n**2 + 352 * n + 73), d)
        if j == 1:
            return Fraction(-(16 * n + 17) * (128 * n**3 + 40 * n**2 - 82 * n - 45), d)
        if j == 2:
            return Fraction(n**2 * (16 * n + 17) * (16 * n + 1), d)
        raise IndexError(j)

    return RecurrenceSpec(order=4, coeff=coeff, label="uvw")


FAMILY_RECURRENCES = {
    "ptilde": laguerre_recurrence,
    "qtilde": laguerre_recurrence,
    "p": pqr_recurrence,
    "q": pqr_recurrence,
    "r": pqr_recurrence,
    "u": uvw_recurrence,
    "v": uvw_recurrence,
    "w": uvw_recurrence,
}


@dataclass(frozen=True)
class SequenceFamily:
    """A certified-integer table n -> value for 0 <= n <= max_n.

    ``provenance`` records how the table was built ("recurrence" for
    direct stepping, "casoratian/(n!)^2" for the determinant route).
    """

    name: str
    values: tuple[int, ...]
    spec: RecurrenceSpec | None
    initial: tuple[int, ...]
    provenance: str = "recurrence"

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def sign_pattern(self, upto: int | None = None) -> str:
        """'+', '-' or '0' per index; a compact regression fingerprint."""
        stop = len(self.values) if upto is None else min(upto + 1, len(self.values))
        return "".join("+" if x > 0 else ("-" if x < 0 else "0") for x in self.values[:stop])


def step_exact(spec: RecurrenceSpec, initial, max_n: int) -> list[Fraction]:
    """Step a recurrence in exact rational arithmetic, no integrality check.

    Returns the table x[0..max_n] as Fractions.  Shared by generate() and
    by the brute-force oracles in the test-suite.
    """
    if len(initial) != spec.order - 1:
        raise ValueError(
            f"expected {spec.order - 1} seed values for an order-{spec.order} recurrence, "
            f"got {len(initial)}"
        )
    if max_n < len(initial) - 1:
        raise ValueError(f"max_n={max_n} smaller than seed range {len(initial) - 1}")
    values = [Fraction(x) for x in initial]
    for target in range(len(initial), max_n + 1):
        values.append(spec.step(values, target - 1))
    return values


def generate(spec: RecurrenceSpec, initial, max_n: int, name: str = "x") -> SequenceFamily:
    """Generate a certified-integer family by exact stepping.

    Raises IntegralityViolation at the first index whose reduced value has
    denominator != 1.
    """
    table = step_exact(spec, initial, max_n)
    ints = []
    for n, value in enumerate(table):
        if value.denominator != 1:
            raise IntegralityViolation(n, name, value)
        ints.append(int(value))
    return SequenceFamily(
        name=name,
        values=tuple(ints),
        spec=spec,
        initial=tuple(int(x) for x in initial),
    )


def family(name: str, max_n: int) -> SequenceFamily:
    """Generate one of the eight named families up to max_n."""
    if name not in FAMILY_NAMES:
        raise KeyError(f"unknown family {name!r}; expected one of {FAMILY_NAMES}")
    return generate(FAMILY_RECURRENCES[name](), SEEDS[name], max_n, name=name)


def generate_all(max_n: int) -> dict[str, SequenceFamily]:
    """All eight families, keyed by name, each up to max_n."""
    return {name: family(name, max_n) for name in FAMILY_NAMES}


# ---------------------------------------------------------------------------
# growth profile


class GrowthPoint(NamedTuple):
    n: int
    log10_abs: float  # -inf for zero entries
    sign: int


def log10_abs_int(x: int) -> float:
    """log10(|x|) for arbitrarily large ints, accurate to double rounding."""
    if x == 0:
        return float("-inf")
    x = abs(x)
    bits = x.bit_length()
    if bits <= 900:
        return math.log10(x)
    shift = bits - 64
    return math.log10(x >> shift) + shift * math.log10(2)


def growth_profile(fam: SequenceFamily) -> list[GrowthPoint]:
    """Decimal log-magnitude (and sign, recorded separately) per index."""
    out = []
    for n, x in enumerate(fam.values):
        sign = 0 if x == 0 else (1 if x > 0 else -1)
        out.append(GrowthPoint(n, log10_abs_int(x), sign))
    return out


# ---------------------------------------------------------------------------
# export formats


def families_to_csv(families) -> str:
    """CSV with header ``n,<name>[,<name>...]``; values as decimal strings."""
    families = list(families)
    if not families:
        raise ValueError("no families given")
    length = len(families[0])
    if any(len(f) != length for f in families):
        raise LengthMismatch("families cover different index ranges")
    lines = ["n," + ",".join(f.name for f in families)]
    for n in range(length):
        lines.append(f"{n}," + ",".join(str(f[n]) for f in families))
    return "\n".join(lines) + "\n"


def family_to_json(fam: SequenceFamily) -> str:
    payload = {
        "version": 1,
        "family": fam.name,
        "max_n": fam.max_n,
        "values": [str(x) for x in fam.values],
    }
    return json.dumps(payload, sort_keys=True)


def family_from_json(text: str) -> SequenceFamily:
    payload = json.loads(text)
    if payload.get("version") != 1:
        raise ValueError(f"unsupported table version {payload.get('version')!r}")
    name = payload["family"]
    values = tuple(int(s) for s in payload["values"])
    if len(values) != payload["max_n"] + 1:
        raise ValueError("value count disagrees with max_n")
    spec = FAMILY_RECURRENCES[name]() if name in FAMILY_RECURRENCES else None
    initial = tuple(SEEDS[name]) if name in SEEDS else values[: (spec.order - 1 if spec else 0)]
    return SequenceFamily(name=name, values=values, spec=spec, initial=initial)
