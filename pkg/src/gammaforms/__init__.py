"""Exact integer recurrences and linear forms in gamma and delta.

Certified-integer sequence generation, Casoratian determinant oracles, a
symbolic weighted-derivative (Rodrigues) oracle, dual-route high-precision
constants, and numerical verification of the forms' decay laws.
"""

from .errors import (
    GammaFormsError,
    InsufficientGammaPrecision,
    IntegralityViolation,
    LengthMismatch,
    NonConvergence,
    NonExactDivision,
    NonIntegerP,
    PrecisionBudgetExceeded,
)
from .recurrences import (
    FAMILY_NAMES,
    SEEDS,
    RecurrenceSpec,
    SequenceFamily,
    family,
    generate,
    generate_all,
    growth_profile,
    laguerre_recurrence,
    pqr_recurrence,
    uvw_recurrence,
)
from .casoratians import (
    CasoratiPair,
    TransformedRecurrence,
    bilinear_identity_check,
    casoratian,
    scaled_uvw,
    transform_recurrence,
)
from .constants import (
    ConstantsBundle,
    PrecisionReal,
    bundle,
    delta_laguerre,
    delta_series,
    e_const,
    egd,
    gamma,
)
from .forms import (
    FORM_NAMES,
    FitResult,
    FormRecord,
    PrecisionBudget,
    budget,
    budget_digits,
    eval_form,
    eval_range,
    fit_constant,
    normalizer,
    target_constant,
)
from .rodrigues import (
    ExpPolynomial,
    RationalPolynomial,
    extract_pq,
    harmonic,
    rodrigues_Q,
)

__version__ = "0.1.0"
