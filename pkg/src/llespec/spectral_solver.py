"""Eigenvalue spectra of the B matrices, their classification, and the
maximal real eigenvalue beta(2) by two of the three routes (eigensolver and
characteristic-polynomial root scan).

Solver choice: when every off-diagonal product a_n is positive, B is
diagonally similar to the symmetric tridiagonal matrix with off-diagonals
sqrt(a_n) and an implicit-shift symmetric solver applies (real output
guaranteed). Otherwise B, already Hessenberg, goes through a real
double-shift QR reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalError, SizeError, ValidationError
from .levy_driver import EtaSequence
from .loewner_system import (
    CharPolyRecurrence,
    LoewnerMatrices,
    Variant,
    build_matrices,
    charpoly_eval,
    truncation_order,
)

__all__ = [
    "SpectrumResult",
    "Beta2Report",
    "CLUSTER_TOL",
    "eigen_spectrum",
    "max_real_root",
    "max_real_root_detailed",
    "MaxRealRoot",
    "descartes_positive_count",
    "classify_regime",
    "beta2",
]

CLUSTER_TOL = 1e-7

_SCAN_POINTS = 2048
_BISECT_REL = 1e-12


@dataclass(frozen=True)
class SpectrumResult:
    """Classified eigenvalue set of one B matrix.

    eigenvalues are sorted by (real part descending, imaginary part
    ascending). clusters groups eigenvalues lying in a ball of radius
    cluster_tol around a common center (pairwise distance <= 2*cluster_tol),
    reported as (mean, multiplicity). resonant means two cluster centers on
    the real axis differ by a nonzero integer within tolerance.
    """

    eigenvalues: tuple[complex, ...]
    max_real: float
    n_nonneg_real: int
    clusters: tuple[tuple[complex, int], ...]
    resonant: bool
    all_real: bool


def _cluster(eigs: list[complex], tol: float) -> list[tuple[complex, int]]:
    # union-find on pairwise distance <= 2*tol (ball of radius tol around
    # the common center)
    n = len(eigs)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(eigs[i] - eigs[j]) <= 2 * tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(eigs[i])
    out = []
    for members in groups.values():
        mean = sum(members) / len(members)
        if abs(mean.imag) <= tol:
            mean = complex(mean.real, 0.0)
        out.append((mean, len(members)))
    out.sort(key=lambda c: (-c[0].real, c[0].imag))
    return out


def eigen_spectrum(
    m: LoewnerMatrices, cluster_tol: float = CLUSTER_TOL
) -> SpectrumResult:
    """All eigenvalues of B with deterministic ordering and classification."""
    if m.n < 1:
        raise SizeError("eigen_spectrum needs dimension >= 1")
    if m.n == 1:
        eigs = np.array([m.b_diag[0] + 0.0j])
    else:
        prod = m.b_sub * m.b_super
        if np.all(prod > 0):
            eigs = scipy.linalg.eigvalsh_tridiagonal(
                m.b_diag, np.sqrt(prod)
            ).astype(complex)
        else:
            try:
                eigs = np.linalg.eigvals(m.b_dense())
            except np.linalg.LinAlgError as exc:
                raise NumericalError(
                    f"eigensolver did not converge for N={m.n}; "
                    f"diag={m.b_diag.tolist()} sub={m.b_sub.tolist()} "
                    f"super={m.b_super.tolist()}"
                ) from exc
    order = sorted(range(len(eigs)), key=lambda i: (-eigs[i].real, eigs[i].imag))
    eigs = [complex(eigs[i]) for i in order]
    real_parts = [z.real for z in eigs if abs(z.imag) <= cluster_tol]
    if not real_parts:
        raise NumericalError("spectrum contains no eigenvalue on the real axis")
    clusters = _cluster(eigs, cluster_tol)
    centers = [c for c, _ in clusters]
    resonant = False
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            d = centers[i] - centers[j]
            k = round(d.real)
            if abs(d.imag) <= cluster_tol and k != 0 and abs(d.real - k) < cluster_tol:
                resonant = True
    return SpectrumResult(
        eigenvalues=tuple(eigs),
        max_real=max(real_parts),
        n_nonneg_real=sum(
            1
            for z in eigs
            if abs(z.imag) <= cluster_tol and z.real >= -cluster_tol
        ),
        clusters=tuple(clusters),
        resonant=resonant,
        all_real=all(abs(z.imag) <= cluster_tol for z in eigs),
    )


@dataclass(frozen=True)
class MaxRealRoot:
    value: float
    used_fallback: bool


def _gershgorin_bounds(rec: CharPolyRecurrence) -> tuple[float, float]:
    # bounds via the modulus-symmetrized tridiagonal matrix with the same
    # characteristic polynomial (off-diagonals sqrt|a_n|)
    n = rec.n
    r = [0.0] * n
    for k, a_k in enumerate(rec.a, start=1):
        s = math.sqrt(abs(a_k))
        r[k - 1] += s
        r[k] += s
    hi = max(b + rr for b, rr in zip(rec.b, r))
    lo = min(b - rr for b, rr in zip(rec.b, r))
    return lo, hi


def _eig_fallback(rec: CharPolyRecurrence) -> float:
    # synthesized tridiagonal with sub = a_n, super = 1 shares the charpoly
    n = rec.n
    m = np.diag(np.array(rec.b, dtype=float))
    if n > 1:
        m += np.diag(np.ones(n - 1), 1) + np.diag(np.array(rec.a, dtype=float), -1)
    eigs = np.linalg.eigvals(m)
    real = [z.real for z in eigs if abs(z.imag) <= CLUSTER_TOL]
    if not real:
        raise NumericalError("no real root found by the eigenvalue fallback")
    return max(real)


def max_real_root_detailed(rec: CharPolyRecurrence) -> MaxRealRoot:
    """Maximal real root of P_N with a flag for the eigenvalue fallback.

    Descending scan from the Gershgorin upper bound with sign-change
    bracketing, then bisection to 1e-12 relative. A polynomial that never
    changes sign on the scan (even-multiplicity top root) falls back to the
    eigenvalue route.
    """
    if rec.n == 0:
        raise SizeError("P_0 = 1 has no roots")
    if rec.n == 1:
        return MaxRealRoot(value=rec.b[0], used_fallback=False)
    lo, hi = _gershgorin_bounds(rec)
    pad = 1e-6 * max(1.0, abs(lo), abs(hi))
    lo -= pad
    hi += pad
    xs = np.linspace(hi, lo, _SCAN_POINTS)
    s_prev = charpoly_eval(rec, float(xs[0])).sign
    if s_prev == 0:
        return MaxRealRoot(value=float(xs[0]), used_fallback=False)
    x_prev = float(xs[0])
    bracket = None
    for x in xs[1:]:
        x = float(x)
        s = charpoly_eval(rec, x).sign
        if s == 0:
            return MaxRealRoot(value=x, used_fallback=False)
        if s != s_prev:
            bracket = (x, x_prev, s)
            break
        x_prev = x
    if bracket is None:
        return MaxRealRoot(value=_eig_fallback(rec), used_fallback=True)
    lo_b, hi_b, s_lo = bracket
    for _ in range(200):
        mid = 0.5 * (lo_b + hi_b)
        if hi_b - lo_b <= _BISECT_REL * max(1.0, abs(mid)):
            break
        s_mid = charpoly_eval(rec, mid).sign
        if s_mid == 0:
            return MaxRealRoot(value=mid, used_fallback=False)
        if s_mid == s_lo:
            lo_b = mid
        else:
            hi_b = mid
    return MaxRealRoot(value=0.5 * (lo_b + hi_b), used_fallback=False)


def max_real_root(rec: CharPolyRecurrence) -> float:
    return max_real_root_detailed(rec).value


def descartes_positive_count(coeffs) -> int:
    """Sign changes in the coefficient sequence, zeros skipped.

    Expects a monic polynomial given in ascending order (leading coefficient,
    the last nonzero entry, equal to 1).
    """
    nz = [c for c in coeffs if c != 0]
    if not nz or nz[-1] != 1:
        raise ValidationError("descartes_positive_count expects a monic polynomial")
    changes = 0
    for prev, cur in zip(nz, nz[1:]):
        if (prev > 0) != (cur > 0):
            changes += 1
    return changes


def classify_regime(rec: CharPolyRecurrence) -> bool:
    """True iff every a_n is positive (orthogonal regime: the recurrence has
    a nonnegative orthogonality measure and the spectrum is real)."""
    return all(a > 0 for a in rec.a)


@dataclass(frozen=True)
class Beta2Report:
    """beta(2) for one eta sequence.

    mode 'truncated' uses the exact N-dimensional system at the truncation
    order; mode 'sequence' reports the maximal real eigenvalue beta_max(M)
    for M = 2..m_max and its successive gaps.
    """

    variant: Variant
    mode: str
    n: int | None
    sequence: tuple[tuple[int, float], ...] | None
    beta2: float
    converged: bool
    convergence_gap: float


def beta2(eta: EtaSequence, variant: Variant, m_max: int) -> Beta2Report:
    """beta(2) via truncation when available, else the convergence sequence."""
    if m_max < 2:
        raise SizeError(f"m_max must be >= 2, got {m_max}")
    n_tr = truncation_order(eta, variant)
    if n_tr is not None and n_tr <= m_max:
        # exact mode needs eta only up to the truncation order, so a short
        # formal sequence that closes is accepted regardless of m_max
        spec = eigen_spectrum(build_matrices(eta, n_tr, variant))
        return Beta2Report(
            variant=variant,
            mode="truncated",
            n=n_tr,
            sequence=None,
            beta2=spec.max_real,
            converged=True,
            convergence_gap=0.0,
        )
    if eta.n_max < m_max:
        raise SizeError(f"eta covers n_max={eta.n_max}, need m_max={m_max}")
    seq = []
    for m in range(2, m_max + 1):
        spec = eigen_spectrum(build_matrices(eta, m, variant))
        seq.append((m, spec.max_real))
    gaps = [abs(b - a) for (_, a), (_, b) in zip(seq, seq[1:])]
    gap = gaps[-1] if gaps else math.inf
    return Beta2Report(
        variant=variant,
        mode="sequence",
        n=None,
        sequence=tuple(seq),
        beta2=seq[-1][1],
        converged=gap < 1e-9,
        convergence_gap=gap,
    )
