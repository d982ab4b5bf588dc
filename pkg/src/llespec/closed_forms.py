"""Closed-form reference values: the hypergeometric solution of the N=2
unbounded system and its beta(2) formula, truncated-SLE spectra for both
variants, and the perturbed-N=6 complex-pair asymptotics.

Everything here is an oracle for the matrix/series machinery, so the special
functions (Gauss 2F1, Gamma) are implemented locally and unit-tested against
independent references.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .errors import (
    DomainError,
    NumericalError,
    PoleError,
    PrecisionError,
    RealizabilityWarning,
    SizeError,
)
from .levy_driver import LevyDriver, eta_sequence
from .loewner_system import Variant, build_matrices
from .spectral_solver import eigen_spectrum

__all__ = [
    "HypergeometricParams",
    "Theorem1Values",
    "BETA_SUP",
    "beta2_unbounded_n2",
    "eta1_from_beta",
    "gamma",
    "gauss_2f1",
    "gauss_at_one",
    "theorem1_solution",
    "truncated_sle_spectrum",
    "perturbed_n6_pairs",
    "perturbed_n6_driver",
]

BETA_SUP = 3.0 + math.sqrt(3.0)

# Lanczos g=7, 9 coefficients; relative accuracy ~1e-13 on the positive axis
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SERIES_TOL = 1e-14
_MAX_TERMS = 50_000
_MAX_TERMS_EXTENDED = 400_000
_NEAR_INT = 0.05


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == round(x)


def gamma(x: float) -> float:
    """Gamma function by the fixed-coefficient Lanczos approximation, with
    reflection for x < 0.5."""
    if not math.isfinite(x):
        raise DomainError(f"gamma needs a finite argument, got {x}")
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def beta2_unbounded_n2(eta1: float) -> float:
    """beta(2) of the unbounded N=2 system, (6 - eta_1 + sqrt(eta_1^2 -
    4 eta_1 + 12)) / 2; the caller guarantees eta_2 = 4.

    Output lies in (2, 3 + sqrt(3)] for eta_1 >= 0. eta_1 = 0 is a formal
    endpoint: no driver realizes it (eta_2 = 4 > 4 eta_1).
    """
    if not math.isfinite(eta1) or eta1 < 0:
        raise DomainError(f"eta_1 must be finite and >= 0, got {eta1}")
    if eta1 == 0:
        warnings.warn(
            "eta_1 = 0 with eta_2 = 4 violates eta_2 <= 4 eta_1; formal only",
            RealizabilityWarning,
            stacklevel=2,
        )
    return (6.0 - eta1 + math.sqrt(eta1 * eta1 - 4.0 * eta1 + 12.0)) / 2.0


def eta1_from_beta(beta: float) -> float:
    """Inverse reparametrization eta_1 = (beta^2 - 6 beta + 6) / (2 - beta)
    on 2 < beta <= 3 + sqrt(3)."""
    if not 2.0 < beta <= BETA_SUP:
        raise DomainError(f"beta must lie in (2, 3+sqrt(3)], got {beta}")
    eta1 = (beta * beta - 6.0 * beta + 6.0) / (2.0 - beta)
    if eta1 < 0.0:
        eta1 = 0.0  # roundoff at the beta = 3+sqrt(3) endpoint
    return eta1


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameters of the second-order reduction of the N=2 unbounded system:
    a = (beta^2 - 5 beta + 8) / (2 (2 - beta)), b = 3 - beta,
    c = (beta^2 - 7 beta + 8) / (2 (2 - beta))."""

    a: float
    b: float
    c: float
    beta: float

    @classmethod
    def from_beta(cls, beta: float) -> "HypergeometricParams":
        if not 2.0 < beta <= BETA_SUP:
            raise DomainError(f"beta must lie in (2, 3+sqrt(3)], got {beta}")
        den = 2.0 * (2.0 - beta)
        return cls(
            a=(beta * beta - 5.0 * beta + 8.0) / den,
            b=3.0 - beta,
            c=(beta * beta - 7.0 * beta + 8.0) / den,
            beta=beta,
        )

    @classmethod
    def from_eta1(cls, eta1: float) -> "HypergeometricParams":
        return cls.from_beta(beta2_unbounded_n2(eta1))


def _gauss_series(a: float, b: float, c: float, x: float, max_terms: int) -> float:
    """Raw power-series summation with term recurrence; stops when the
    geometric tail bound drops below 1e-14 of the partial sum. Terminates
    exactly when a or b is a nonpositive integer."""
    term = 1.0
    total = 1.0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        if term == 0.0:
            return total
        ratio = abs((a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2)) * x)
        if ratio < 1.0:
            tail = abs(term) * ratio / (1.0 - ratio)
            if tail < _SERIES_TOL * max(abs(total), 1e-300):
                return total
    raise PrecisionError(
        f"2F1 series did not converge within {max_terms} terms at x={x}"
    )


def gauss_2f1(a: float, b: float, c: float, xi: float) -> float:
    """Gauss hypergeometric function on 0 <= xi < 1.

    For xi > 0.75 a linear transformation toward argument 1 - xi is applied
    when c - a - b stays away from an integer (and no Gamma factor sits on a
    pole); otherwise raw summation continues with an extended term budget.
    """
    if _is_nonpositive_integer(c):
        raise PoleError(f"2F1 undefined at nonpositive integer c={c}")
    if not 0.0 <= xi < 1.0:
        raise DomainError(f"2F1 evaluation needs 0 <= xi < 1, got {xi}")
    if xi == 0.0:
        return 1.0
    if xi <= 0.75:
        return _gauss_series(a, b, c, xi, _MAX_TERMS)
    s = c - a - b
    transform_ok = (
        abs(s - round(s)) > _NEAR_INT
        and not _is_nonpositive_integer(a)
        and not _is_nonpositive_integer(b)
        and not _is_nonpositive_integer(c - a)
        and not _is_nonpositive_integer(c - b)
    )
    if not transform_ok:
        return _gauss_series(a, b, c, xi, _MAX_TERMS_EXTENDED)
    y = 1.0 - xi
    first = (
        gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b))
    ) * _gauss_series(a, b, a + b - c + 1.0, y, _MAX_TERMS)
    second = (
        y**s
        * gamma(c)
        * gamma(-s)
        / (gamma(a) * gamma(b))
    ) * _gauss_series(c - a, c - b, s + 1.0, y, _MAX_TERMS)
    return first + second


def gauss_at_one(a: float, b: float, c: float) -> float:
    """2F1(a, b; c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)),
    valid for c - a - b > 0."""
    s = c - a - b
    if s <= 0:
        raise DomainError(f"gauss_at_one needs c - a - b > 0, got {s}")
    for name, val in (("c", c), ("c-a-b", s), ("c-a", c - a), ("c-b", c - b)):
        if _is_nonpositive_integer(val):
            raise PoleError(f"gamma pole in gauss_at_one: {name} = {val}")
    return gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b))


@dataclass(frozen=True)
class Theorem1Values:
    f0: float
    f1: float
    theta0: float
    theta1: float


def theorem1_solution(eta1: float, xi: float) -> Theorem1Values:
    """Closed-form solution of the unbounded N=2 system:
    f_0 = 2F1(a, b; c; xi), f_1 = ((xi - 1)/2) f_0' + ((3 - beta)/2) f_0 with
    f_0' = (a b / c) 2F1(a+1, b+1; c+1; xi), and theta_i = (1 - xi)^{-beta}
    f_i. The normalization matches the series solution (theta_0(0) = 1)."""
    if not 0.0 <= xi < 1.0:
        raise DomainError(f"theorem1_solution needs 0 <= xi < 1, got {xi}")
    p = HypergeometricParams.from_eta1(eta1)
    f0 = gauss_2f1(p.a, p.b, p.c, xi)
    f0p = p.a * p.b / p.c * gauss_2f1(p.a + 1.0, p.b + 1.0, p.c + 1.0, xi)
    f1 = (xi - 1.0) / 2.0 * f0p + (3.0 - p.beta) / 2.0 * f0
    blow = (1.0 - xi) ** (-p.beta)
    return Theorem1Values(f0=f0, f1=f1, theta0=blow * f0, theta1=blow * f1)


def truncated_sle_spectrum(n: int, variant: Variant) -> list[float]:
    """Spectrum of the truncating Brownian driver kappa = 2(N+2)/N^2
    (unbounded) or kappa_N = 2(N-2)/N^2 (bounded) at truncation order N.

    Unbounded: the closed form (N+2 - (2N^2-3N-6) l + 2(N+2) l^2) / N^2 for
    l = 0..N-1, returned in l order. Bounded: matrix eigenvalues in
    descending real order; no quadratic-in-l closed form matches this family
    past the top value (the trace identity rules it out), so only
    kappa_N / 2 is asserted, as a cross-check on the computed list.
    """
    if variant is Variant.UNBOUNDED:
        if n < 1:
            raise SizeError(f"unbounded truncation order must be >= 1, got {n}")
        return [
            (n + 2 - (2 * n * n - 3 * n - 6) * l + 2 * (n + 2) * l * l) / (n * n)
            for l in range(n)
        ]
    if n < 3:
        raise SizeError(f"bounded truncation order must be >= 3, got {n}")
    kappa_n = 2.0 * (n - 2) / (n * n)
    eta = eta_sequence(LevyDriver(kappa=kappa_n), max(n - 1, 1))
    spec = eigen_spectrum(build_matrices(eta, n, Variant.BOUNDED))
    max_im = max(abs(z.imag) for z in spec.eigenvalues)
    if max_im > 1e-6:
        raise NumericalError(
            f"bounded truncated spectrum not real to tolerance (|Im| = {max_im:.2e})"
        )
    vals = [z.real for z in spec.eigenvalues]
    if abs(vals[0] - kappa_n / 2.0) > 1e-8:
        raise NumericalError(
            f"top eigenvalue {vals[0]} disagrees with kappa_N/2 = {kappa_n / 2.0}"
        )
    return vals


def perturbed_n6_driver(delta_kappa: float) -> LevyDriver:
    """Driver kappa = 4/9 - dk with uniform rate 18 dk: eta_6 = 8 stays exact,
    so truncation at N = 6 survives the perturbation."""
    if not 0.0 < delta_kappa <= 1e-3:
        raise DomainError(f"delta_kappa must lie in (0, 1e-3], got {delta_kappa}")
    return LevyDriver(kappa=4.0 / 9.0 - delta_kappa, uniform_rate=18.0 * delta_kappa)


def perturbed_n6_pairs(delta_kappa: float) -> list[complex]:
    """Leading-order complex eigenvalue pairs of the perturbed N=6 unbounded
    system: 2/9 +/- i (21/128) sqrt(30 dk) and -2/3 +/- i (5/128)
    sqrt(70 dk); real parts are unshifted at this order."""
    if not 0.0 < delta_kappa <= 1e-3:
        raise DomainError(f"delta_kappa must lie in (0, 1e-3], got {delta_kappa}")
    im1 = 21.0 / 128.0 * math.sqrt(30.0 * delta_kappa)
    im2 = 5.0 / 128.0 * math.sqrt(70.0 * delta_kappa)
    return [
        complex(2.0 / 9.0, im1),
        complex(2.0 / 9.0, -im1),
        complex(-2.0 / 3.0, im2),
        complex(-2.0 / 3.0, -im2),
    ]
