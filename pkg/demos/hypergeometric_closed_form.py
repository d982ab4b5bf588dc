#!/usr/bin/env python3
"""The N=2 unbounded system in closed form.

When the sequence closes at N = 2 the system reduces to a Gauss
hypergeometric equation, giving beta(2) explicitly:

    beta(2) = (6 - eta_1 + sqrt(eta_1^2 - 4 eta_1 + 12)) / 2

Checks the formula against the eigenvalue route, compares the
hypergeometric solution with the power series near xi = 1, and verifies
the value of 2F1 at 1 against the Gamma-function product.
"""

import numpy as np

from llespec import (
    FuchsianSystem,
    LevyDriver,
    Variant,
    beta2_unbounded_n2,
    build_matrices,
    eigen_spectrum,
    eta_sequence,
    evaluate_theta,
    gauss_at_one,
    series_solution,
    theorem1_solution,
)
from llespec.closed_forms import HypergeometricParams


def main():
    print("closed form vs eigenvalue route")
    for eta1 in (0.5, 1.0, 2.0, 4.0):
        eta = eta_sequence(LevyDriver(kappa=2.0 * eta1), 2)
        eig = eigen_spectrum(build_matrices(eta, 2, Variant.UNBOUNDED)).max_real
        cf = beta2_unbounded_n2(eta1)
        print(f"  eta_1 = {eta1:<4}  closed {cf:.15g}   eigen {eig:.15g}")

    eta1 = 1.0  # beta = 4, parameters (a, b, c) = (-1, -1, 1)
    p = HypergeometricParams.from_eta1(eta1)
    print(f"\neta_1 = 1: hypergeometric parameters a={p.a:g} b={p.b:g} c={p.c:g}, "
          f"beta={p.beta:g}")

    eta = eta_sequence(LevyDriver(kappa=2.0), 2)
    series = series_solution(FuchsianSystem(build_matrices(eta, 2, Variant.UNBOUNDED)), 2000)
    print(f"{'xi':>6} {'theta_0 closed':>18} {'theta_0 series':>18} {'diff':>10}")
    for xi in (0.0, 0.3, 0.6, 0.9):
        cf = theorem1_solution(eta1, xi)
        th = evaluate_theta(series, xi)
        print(f"{xi:>6} {cf.theta0:>18.12g} {th[0]:>18.12g} {abs(cf.theta0 - th[0]):>10.2e}")

    # 2F1(a,b;c;1) = Gamma(c)Gamma(c-a-b) / (Gamma(c-a)Gamma(c-b))
    val = gauss_at_one(p.a, p.b, p.c)
    print(f"\n2F1(-1,-1;1;1) = {val:.15g}  (series 1 + x gives 2 at x = 1)")

    grid = np.linspace(0.0, 0.9, 10)
    worst = max(
        abs(evaluate_theta(series, float(x))[1] - theorem1_solution(eta1, float(x)).theta1)
        for x in grid
    )
    print(f"theta_1 closed-vs-series sup difference on [0, 0.9]: {worst:.2e}")


if __name__ == "__main__":
    main()
