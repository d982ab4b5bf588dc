"""Power-series solution of the Fuchsian system at its analytic point and the
blowup-exponent fit at xi = 1.

The system theta'(xi) = A theta / xi - B theta / (xi - 1) has residues A, -B,
B - A at xi = 0, 1, infinity. The analytic solution is a power series in xi
(unbounded variant, centered at 0) or in 1/xi (bounded variant, centered at
infinity), normalized so the first component of c_0 equals 1. Approaching
xi = 1 along a geometric ladder, the angular mean of rho grows like
|1 - xi|^(-beta), which gives the third, spectrum-independent route to
beta(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.integrate

from .errors import (
    DegeneracyError,
    DomainError,
    NumericalError,
    PrecisionError,
    ValidationError,
)
from .loewner_system import LoewnerMatrices, Variant

__all__ = [
    "FuchsianSystem",
    "ThetaSeries",
    "GeometricLadder",
    "BlowupFit",
    "analytic_null_vector",
    "series_solution",
    "evaluate_theta",
    "evaluate_theta_with_tail",
    "evaluate_theta_derivative",
    "angular_mean_rho",
    "blowup_exponent",
    "integrate_system",
]

_PIVOT_TINY = 1e-300
_TAIL_GATE = 1e-6


@dataclass(frozen=True)
class FuchsianSystem:
    """The linear system theta' = A theta / xi - B theta / (xi - 1)."""

    matrices: LoewnerMatrices
    n: int = field(default=0)

    def __post_init__(self):
        if self.n == 0:
            object.__setattr__(self, "n", self.matrices.n)
        elif self.n != self.matrices.n:
            raise ValidationError(
                f"dimension {self.n} does not match matrices of size {self.matrices.n}"
            )

    @property
    def variant(self) -> Variant:
        return self.matrices.variant


@dataclass(frozen=True)
class ThetaSeries:
    """Truncated series about the analytic point.

    coefficients[k] is the N-vector multiplying xi^k (unbounded) or xi^{-k}
    (bounded). Normalization: coefficients[0][0] == 1.
    """

    variant: Variant
    coefficients: np.ndarray
    order: int

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float)
        if c.ndim != 2 or c.shape[0] != self.order + 1:
            raise ValidationError("coefficients must have shape (order+1, N)")
        if c[0, 0] != 1.0:
            raise ValidationError("series normalization requires c_0[0] = 1")
        object.__setattr__(self, "coefficients", c)

    @property
    def n(self) -> int:
        return self.coefficients.shape[1]


def analytic_null_vector(m: LoewnerMatrices) -> np.ndarray:
    """Null vector of the residue matrix at the analytic point, v_0 = 1.

    Unbounded: solves A v = 0 down the lower-bidiagonal bands,
    v_i = ((eta_i - i - 2) / (eta_i + i)) v_{i-1}. Bounded: solves
    (B - A) v = 0 by the same forward substitution on its lower bands.
    """
    n = m.n
    v = np.zeros(n)
    v[0] = 1.0
    if m.variant is Variant.UNBOUNDED:
        diag, sub = m.a_diag, m.a_off
    else:
        diag, sub = m.b_minus_a_bands()
    for i in range(1, n):
        if abs(diag[i]) < _PIVOT_TINY:
            raise DegeneracyError(f"vanishing pivot at row {i} of the residue matrix")
        v[i] = -sub[i - 1] * v[i - 1] / diag[i]
    return v


def series_solution(sys: FuchsianSystem, k_terms: int) -> ThetaSeries:
    """Series coefficients c_0..c_{k_terms} of the analytic solution.

    Unbounded: c_{n+1} = (A - (n+1) I)^{-1} (A - B - n I) c_n, each solve a
    bidiagonal forward substitution (A's eigenvalues are <= 0, so the shifted
    matrix is invertible). Bounded: c_n = (n I - (B - A))^{-1} B s_n with the
    running prefix sum s_n = sum_{k<n} c_k kept incrementally.
    """
    if k_terms < 1:
        raise ValidationError(f"k_terms must be >= 1, got {k_terms}")
    m = sys.matrices
    n_dim = m.n
    c = analytic_null_vector(m)
    out = np.zeros((k_terms + 1, n_dim))
    out[0] = c
    if m.variant is Variant.UNBOUNDED:
        ab_diag, ab_super = m.a_minus_b_bands()
        a_diag, a_sub = m.a_diag, m.a_off
        for k in range(k_terms):
            r = (ab_diag - k) * c
            if n_dim > 1:
                r[:-1] += ab_super * c[1:]
            x = np.empty(n_dim)
            piv = a_diag[0] - (k + 1)
            if abs(piv) < _PIVOT_TINY:
                raise DegeneracyError(f"singular solve at series index {k + 1}")
            x[0] = r[0] / piv
            for i in range(1, n_dim):
                piv = a_diag[i] - (k + 1)
                if abs(piv) < _PIVOT_TINY:
                    raise DegeneracyError(f"singular solve at series index {k + 1}")
                x[i] = (r[i] - a_sub[i - 1] * x[i - 1]) / piv
            c = x
            out[k + 1] = c
    else:
        bma_diag, bma_sub = m.b_minus_a_bands()
        b_sub, b_diag, b_super = m.b_sub, m.b_diag, m.b_super
        s = c.copy()
        for k in range(1, k_terms + 1):
            rhs = b_diag * s
            if n_dim > 1:
                rhs[:-1] += b_super * s[1:]
                rhs[1:] += b_sub * s[:-1]
            x = np.empty(n_dim)
            piv = k - bma_diag[0]
            if abs(piv) < _PIVOT_TINY:
                raise DegeneracyError(f"singular solve at series index {k}")
            x[0] = rhs[0] / piv
            for i in range(1, n_dim):
                piv = k - bma_diag[i]
                if abs(piv) < _PIVOT_TINY:
                    raise DegeneracyError(f"singular solve at series index {k}")
                x[i] = (rhs[i] + bma_sub[i - 1] * x[i - 1]) / piv
            s += x
            out[k] = x
    return ThetaSeries(variant=m.variant, coefficients=out, order=k_terms)


def _series_argument(series: ThetaSeries, xi: float) -> float:
    if series.variant is Variant.UNBOUNDED:
        if not 0.0 <= xi < 1.0:
            raise DomainError(f"unbounded evaluation needs 0 <= xi < 1, got {xi}")
        return xi
    if xi == math.inf:
        return 0.0
    if not xi > 1.0:
        raise DomainError(f"bounded evaluation needs xi > 1, got {xi}")
    return 1.0 / xi


def evaluate_theta_with_tail(
    series: ThetaSeries, xi: float
) -> tuple[np.ndarray, float]:
    """theta(xi) plus a geometric truncation-tail estimate continued from the
    last retained term."""
    x = _series_argument(series, xi)
    c = series.coefficients
    powers = x ** np.arange(series.order + 1)
    theta = c.T @ powers
    last = float(np.max(np.abs(c[-1]))) * powers[-1]
    tail = last * x / (1.0 - x) if x < 1.0 else math.inf
    return theta, tail


def evaluate_theta(series: ThetaSeries, xi: float) -> np.ndarray:
    return evaluate_theta_with_tail(series, xi)[0]


def evaluate_theta_derivative(series: ThetaSeries, xi: float) -> np.ndarray:
    """d theta / d xi at xi, from the term-by-term derivative."""
    x = _series_argument(series, xi)
    c = series.coefficients
    k = np.arange(series.order + 1)
    inner = c.T @ (k * x ** np.maximum(k - 1, 0) * (k > 0))
    if series.variant is Variant.UNBOUNDED:
        return inner
    # theta = sum c_k xi^{-k}: d/dxi = -(1/xi^2) * sum k c_k x^{k-1}
    return -inner / (xi * xi)


def angular_mean_rho(series: ThetaSeries, xi: float) -> float:
    """Zero Fourier mode of rho at radius-squared xi.

    Unbounded: (1 + xi) theta_0 - 2 xi theta_1, from averaging
    (1 - w)(1 - conj(w)) Theta over the circle; bounded analog
    (1 + 1/xi) theta_0 - 2 theta_1 / xi from rho = (1 - 1/w)(1 - 1/conj(w))
    Theta. For N = 1 the theta_1 term is absent.
    """
    theta = evaluate_theta(series, xi)
    if series.variant is Variant.UNBOUNDED:
        mean = (1.0 + xi) * theta[0]
        if series.n > 1:
            mean -= 2.0 * xi * theta[1]
        return float(mean)
    inv = 0.0 if xi == math.inf else 1.0 / xi
    mean = (1.0 + inv) * theta[0]
    if series.n > 1:
        mean -= 2.0 * inv * theta[1]
    return float(mean)


@dataclass(frozen=True)
class GeometricLadder:
    """Evaluation points xi_j = 1 -/+ 2^{-j}, j = j_min..j_max, approaching
    xi = 1 from inside the evaluation domain."""

    j_min: int = 6
    j_max: int = 14

    def __post_init__(self):
        if not (0 < self.j_min < self.j_max):
            raise ValidationError("need 0 < j_min < j_max")

    def points(self, variant: Variant) -> list[float]:
        sign = -1.0 if variant is Variant.UNBOUNDED else 1.0
        return [1.0 + sign * 2.0 ** (-j) for j in range(self.j_min, self.j_max + 1)]

    def distances(self) -> list[float]:
        return [2.0 ** (-j) for j in range(self.j_min, self.j_max + 1)]


@dataclass(frozen=True)
class BlowupFit:
    """Fitted blowup exponent of the angular mean at xi = 1.

    window is (xi_near, xi_far), the nearest and farthest ladder points.
    residual is the maximum deviation of the local slopes from beta_est;
    slow slope drift (rather than noise) signals logarithmic corrections from
    degenerate or resonant exponents. oscillation_detected marks a sign
    change of the mean along the ladder (complex dominant exponents), which
    makes beta_est unreliable.
    """

    beta_est: float
    window: tuple[float, float]
    residual: float
    oscillation_detected: bool
    slopes: tuple[float, ...]


def blowup_exponent(
    sys: FuchsianSystem,
    ladder: GeometricLadder | None = None,
    k_terms: int | None = None,
) -> BlowupFit:
    """Fit the growth exponent of |angular mean| along the ladder.

    The local slope between consecutive points is
    log(g_{j+1}/g_j) / log(d_j/d_{j+1}) with d_j = |1 - xi_j|, oriented so a
    mean growing toward xi = 1 yields a positive exponent; beta_est is the
    Aitken limit of the last three slopes.
    """
    ladder = ladder or GeometricLadder()
    if k_terms is None:
        k_terms = int(24 * 2**ladder.j_max)
    series = series_solution(sys, k_terms)
    points = ladder.points(sys.variant)
    means = []
    worst_rel_tail = 0.0
    for xi in points:
        theta, tail = evaluate_theta_with_tail(series, xi)
        scale = float(np.max(np.abs(theta)))
        if scale == 0.0 or not math.isfinite(scale):
            raise NumericalError(f"series evaluation degenerate at xi={xi}")
        worst_rel_tail = max(worst_rel_tail, tail / scale)
        mean = angular_mean_rho(series, xi)
        means.append(mean)
    if worst_rel_tail > _TAIL_GATE:
        raise PrecisionError(
            f"series tail {worst_rel_tail:.2e} exceeds {_TAIL_GATE:.0e} on the "
            "ladder; raise k_terms or switch to integrate_system"
        )
    g = np.array(means)
    oscillation = bool(np.any(g[:-1] * g[1:] < 0))
    if np.any(g == 0):
        raise NumericalError("angular mean vanishes on the ladder")
    s = np.log2(np.abs(g[1:] / g[:-1]))
    if len(s) >= 3:
        d1 = s[-1] - s[-2]
        d2 = s[-2] - s[-3]
        if d1 != d2 and math.isfinite(d1) and math.isfinite(d2):
            beta_est = float(s[-1] - d1 * d1 / (d1 - d2))
        else:
            beta_est = float(s[-1])
    else:
        beta_est = float(s[-1])
    residual = float(np.max(np.abs(s - beta_est)))
    return BlowupFit(
        beta_est=beta_est,
        window=(points[-1], points[0]),
        residual=residual,
        oscillation_detected=oscillation,
        slopes=tuple(float(v) for v in s),
    )


def integrate_system(
    sys: FuchsianSystem,
    xi0: float,
    theta0: np.ndarray,
    xi1: float,
    rtol: float = 1e-10,
) -> np.ndarray:
    """Adaptive integration of theta' = A theta / xi - B theta / (xi - 1)
    from xi0 to xi1; the fallback route when series evaluation near xi = 1 is
    impractical."""
    if xi0 <= 0 or xi1 <= 0:
        raise DomainError("integration requires positive xi")
    for x in (xi0, xi1):
        if x == 1.0:
            raise DomainError("xi = 1 is a singular point")
    if (xi0 - 1.0) * (xi1 - 1.0) < 0:
        raise DomainError("integration path must not cross xi = 1")
    a = sys.matrices.a_dense()
    b = sys.matrices.b_dense()

    def rhs(x, th):
        return a @ th / x - b @ th / (x - 1.0)

    theta0 = np.asarray(theta0, dtype=float)
    scale = float(np.max(np.abs(theta0))) or 1.0
    sol = scipy.integrate.solve_ivp(
        rhs,
        (xi0, xi1),
        theta0,
        method="DOP853",
        rtol=rtol,
        atol=1e-13 * scale,
    )
    if not sol.success:
        raise NumericalError(f"integration failed: {sol.message}")
    return sol.y[:, -1]
