"""Residue matrices of the Fuchsian system and the characteristic-polynomial
recurrence, for both variants of the evolution.

Matrices are stored as bands, never dense (dense conversion exists for tests
and fallbacks). The first row of each matrix follows the displayed form
verbatim: its off-diagonal entry differs from the generic band formula by a
factor of 2, absorbed by folding the negative mode (theta_{-1} = xi^{+/-1}
theta_1).
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    CapacityError,
    SizeError,
    TruncationNearMissWarning,
    ValidationError,
)
from .levy_driver import EtaSequence

__all__ = [
    "Variant",
    "LoewnerMatrices",
    "CharPolyRecurrence",
    "CharPolyValue",
    "build_matrices",
    "recurrence_coefficients",
    "charpoly_eval",
    "charpoly_coefficients",
    "truncation_order",
]

# lazy rescaling thresholds for the charpoly recurrence pair
_RESCALE_HI = 1e150
_RESCALE_LO = 1e-150

COEFFICIENT_LIMIT = 512


class Variant(enum.Enum):
    """Growth convention: from the origin outward or from infinity inward."""

    UNBOUNDED = "unbounded"
    BOUNDED = "bounded"

    @classmethod
    def parse(cls, name: str) -> "Variant":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValidationError(
                f"variant must be 'unbounded' or 'bounded', got {name!r}"
            ) from None


@dataclass(frozen=True)
class LoewnerMatrices:
    """Bands of the residue matrices A (bidiagonal) and B (tridiagonal).

    A is lower bidiagonal for UNBOUNDED (a_off = subdiagonal) and upper
    bidiagonal for BOUNDED (a_off = superdiagonal). Band lengths: diagonals N,
    off-diagonals N-1.
    """

    variant: Variant
    n: int
    a_diag: np.ndarray
    a_off: np.ndarray
    b_sub: np.ndarray
    b_diag: np.ndarray
    b_super: np.ndarray

    def b_dense(self) -> np.ndarray:
        m = np.diag(self.b_diag)
        if self.n > 1:
            m += np.diag(self.b_super, 1) + np.diag(self.b_sub, -1)
        return m

    def a_dense(self) -> np.ndarray:
        m = np.diag(self.a_diag)
        if self.n > 1:
            off = 1 if self.variant is Variant.BOUNDED else -1
            m += np.diag(self.a_off, off)
        return m

    def a_minus_b_bands(self) -> tuple[np.ndarray, np.ndarray]:
        """(diag, super) of A - B for UNBOUNDED, where the subdiagonals of A
        and B coincide and cancel exactly."""
        if self.variant is not Variant.UNBOUNDED:
            raise ValidationError("a_minus_b_bands applies to the unbounded variant")
        return self.a_diag - self.b_diag, -self.b_super

    def b_minus_a_bands(self) -> tuple[np.ndarray, np.ndarray]:
        """(diag, sub) of B - A for BOUNDED, where the superdiagonals of B and
        A coincide and cancel exactly."""
        if self.variant is not Variant.BOUNDED:
            raise ValidationError("b_minus_a_bands applies to the bounded variant")
        return self.b_diag - self.a_diag, self.b_sub.copy()


def _eta_at(eta: EtaSequence, i: int) -> float:
    return 0.0 if i == 0 else eta.values[i - 1]


def build_matrices(eta: EtaSequence, n: int, variant: Variant) -> LoewnerMatrices:
    """Assemble the A and B bands of the N-dimensional system.

    eta must cover indices 1..n-1; index n itself is not needed.
    """
    if n < 1:
        raise SizeError(f"matrix dimension must be >= 1, got {n}")
    if eta.n_max < n - 1:
        raise SizeError(f"eta covers n_max={eta.n_max}, need {n - 1} for dimension {n}")
    e = [_eta_at(eta, i) for i in range(n)]
    if variant is Variant.UNBOUNDED:
        b_diag = np.array([3.0 - e[i] for i in range(n)])
        # first-row entry -2 verbatim; generic (e+i-2)/2 from i >= 1
        b_super = np.array(
            [-2.0 if i == 0 else (e[i] + i - 2) / 2 for i in range(n - 1)]
        )
        b_sub = np.array([(e[i] - i - 2) / 2 for i in range(1, n)])
        a_diag = np.array([-(e[i] + i) / 2 for i in range(n)])
        a_off = np.array([(e[i] - i - 2) / 2 for i in range(1, n)])  # subdiagonal
    else:
        b_diag = np.array([-e[i] - 1.0 for i in range(n)])
        # first-row entry 2 verbatim; generic (e+i+2)/2 from i >= 1
        b_super = np.array(
            [2.0 if i == 0 else (e[i] + i + 2) / 2 for i in range(n - 1)]
        )
        b_sub = np.array([(e[i] + 2 - i) / 2 for i in range(1, n)])
        a_diag = np.array([-(e[i] + 2 - i) / 2 for i in range(n)])
        a_off = np.array(
            [2.0 if i == 0 else (e[i] + i + 2) / 2 for i in range(n - 1)]
        )  # superdiagonal
    return LoewnerMatrices(
        variant=variant,
        n=n,
        a_diag=a_diag,
        a_off=a_off,
        b_sub=b_sub,
        b_diag=b_diag,
        b_super=b_super,
    )


@dataclass(frozen=True)
class CharPolyRecurrence:
    """Coefficients of P_{n+1} = (beta - b_n) P_n - a_n P_{n-1}.

    a covers a_1..a_{N-1}, b covers b_0..b_{N-1}; N = len(b). N = 0 (both
    empty) is allowed and makes P_N identically 1.
    """

    variant: Variant
    a: tuple[float, ...]
    b: tuple[float, ...]

    def __post_init__(self):
        if self.b and len(self.a) != len(self.b) - 1:
            raise SizeError(
                f"need len(a) = len(b) - 1, got {len(self.a)} and {len(self.b)}"
            )
        if not self.b and self.a:
            raise SizeError("a must be empty when b is empty")

    @property
    def n(self) -> int:
        return len(self.b)


def recurrence_coefficients(
    eta: EtaSequence, n: int, variant: Variant
) -> CharPolyRecurrence:
    """Recurrence coefficients for the degree-n characteristic polynomial.

    a_k is the product of B's sub and super entries across the k-th
    off-diagonal position, evaluated on the same expressions as
    build_matrices so the identity holds bitwise.
    """
    if n < 0:
        raise SizeError(f"degree must be >= 0, got {n}")
    if n == 0:
        return CharPolyRecurrence(variant=variant, a=(), b=())
    if eta.n_max < n - 1:
        raise SizeError(f"eta covers n_max={eta.n_max}, need {n - 1} for degree {n}")
    m = build_matrices(eta, n, variant)
    a = tuple(float(s * t) for s, t in zip(m.b_sub, m.b_super))
    b = tuple(float(v) for v in m.b_diag)
    return CharPolyRecurrence(variant=variant, a=a, b=b)


@dataclass(frozen=True)
class CharPolyValue:
    """P_N(beta) as mantissa * exp(log_scale), sign carried by the mantissa.

    log_scale stays 0.0 until the recurrence pair leaves [1e-150, 1e150], so
    small-N values are exact floats.
    """

    mantissa: complex
    log_scale: float = 0.0

    @property
    def sign(self) -> int:
        re = self.mantissa.real
        return 0 if re == 0 else (1 if re > 0 else -1)

    @property
    def value(self):
        """Plain number; overflows to inf for extreme log_scale."""
        if self.log_scale == 0.0:
            out = self.mantissa
        else:
            try:
                out = self.mantissa * math.exp(self.log_scale)
            except OverflowError:
                out = self.mantissa * math.inf
        if isinstance(out, complex) and out.imag == 0:
            return out.real
        return out

    def __float__(self) -> float:
        v = self.value
        if isinstance(v, complex):
            raise TypeError("complex characteristic-polynomial value")
        return float(v)

    @property
    def log_abs(self) -> float:
        """log |P_N(beta)|; -inf for an exact zero."""
        m = abs(self.mantissa)
        return -math.inf if m == 0 else math.log(m) + self.log_scale


def charpoly_eval(rec: CharPolyRecurrence, beta) -> CharPolyValue:
    """Evaluate P_N at beta (real or complex) by the forward recurrence."""
    is_complex = isinstance(beta, complex)
    p_prev = 0.0 + 0.0j if is_complex else 0.0
    p_cur = 1.0 + 0.0j if is_complex else 1.0
    log_scale = 0.0
    for k in range(rec.n):
        a_k = rec.a[k - 1] if k >= 1 else 0.0
        p_next = (beta - rec.b[k]) * p_cur - a_k * p_prev
        p_prev, p_cur = p_cur, p_next
        m = max(abs(p_prev), abs(p_cur))
        if m > _RESCALE_HI or (0.0 < m < _RESCALE_LO):
            p_prev /= m
            p_cur /= m
            log_scale += math.log(m)
    if is_complex:
        return CharPolyValue(complex(p_cur), log_scale)
    return CharPolyValue(complex(p_cur, 0.0), log_scale)


def _as_fraction(x: float) -> Fraction | None:
    """Exact small-denominator rational behind x, or None.

    The denominator cap keeps the detector honest: with a bound this size a
    continued-fraction convergent of a generic float misses it by ~1e-12,
    far more than a half ulp, so only genuine small rationals round-trip.
    """
    f = Fraction(x).limit_denominator(10**6)
    return f if float(f) == x else None


def charpoly_coefficients(rec: CharPolyRecurrence, limit: int = COEFFICIENT_LIMIT):
    """Monomial coefficients of P_N, ascending (beta^0 .. beta^N).

    Exact Fractions when every a_n, b_n hides a small-denominator rational,
    floats otherwise.
    """
    if rec.n > limit:
        raise CapacityError(
            f"degree {rec.n} exceeds the coefficient limit {limit}"
        )
    a_fr = [_as_fraction(x) for x in rec.a]
    b_fr = [_as_fraction(x) for x in rec.b]
    exact = all(f is not None for f in a_fr) and all(f is not None for f in b_fr)
    if exact:
        a_list, b_list = a_fr, b_fr
        zero, one = Fraction(0), Fraction(1)
    else:
        a_list, b_list = list(rec.a), list(rec.b)
        zero, one = 0.0, 1.0
    p_prev = [zero]  # P_{-1} = 0
    p_cur = [one]  # P_0 = 1
    for k in range(rec.n):
        a_k = a_list[k - 1] if k >= 1 else zero
        b_k = b_list[k]
        nxt = [zero] * (k + 2)
        for j, c in enumerate(p_cur):  # beta * P_k
            nxt[j + 1] += c
        for j, c in enumerate(p_cur):
            nxt[j] -= b_k * c
        for j, c in enumerate(p_prev):
            nxt[j] -= a_k * c
        p_prev, p_cur = p_cur, nxt
    return p_cur


def truncation_order(eta: EtaSequence, variant: Variant) -> int | None:
    """Smallest N with eta_N = N+2 (unbounded) or eta_N = N-2 (bounded), at
    1e-12 absolute; None when no index in range matches.

    A miss within 1e-6 emits a diagnostic: the closure identities are exact,
    so an almost-hit usually means the input should be exact.
    """
    shift = 2 if variant is Variant.UNBOUNDED else -2
    near = None
    for n in range(1, eta.n_max + 1):
        gap = abs(eta.values[n - 1] - (n + shift))
        if gap < 1e-12:
            return n
        if gap < 1e-6 and near is None:
            near = (n, gap)
    if near is not None:
        warnings.warn(
            f"eta_{near[0]} misses the truncation identity by {near[1]:.3e}; "
            "supply the exact value if truncation is intended",
            TruncationNearMissWarning,
            stacklevel=2,
        )
    return None
