#!/usr/bin/env python3
"""Spectra of truncated SLE systems against their closed forms.

For kappa = 2(N+2)/N^2 the unbounded evolution matrix closes at size N and
its eigenvalues are known exactly; same for the bounded variant with
kappa = 2(N-2)/N^2. Prints both routes side by side, including the double
eigenvalues that appear at N = 6.
"""

from llespec import (
    LevyDriver,
    Variant,
    build_matrices,
    eigen_spectrum,
    eta_sequence,
    truncated_sle_spectrum,
)


def show(variant, n, kappa):
    eta = eta_sequence(LevyDriver(kappa=kappa), n)
    spec = eigen_spectrum(build_matrices(eta, n, variant))
    closed = truncated_sle_spectrum(n, variant)
    print(f"\n{variant.value} N={n}  kappa={kappa:.6g}")
    print(f"  closed form : {[round(v, 12) for v in sorted(closed, reverse=True)]}")
    eig = sorted((e.real for e in spec.eigenvalues), reverse=True)
    print(f"  eigenvalues : {[round(v, 12) for v in eig]}")
    print(f"  beta(2) = max = {spec.max_real:.12g}")
    degenerate = [(m, round(c.real, 9)) for c, m in spec.clusters if m > 1]
    if degenerate:
        print(f"  repeated eigenvalues (multiplicity, value): {degenerate}")


def main():
    print("unbounded closed form: beta_l = (N+2 - (2N^2-3N-6)l + 2(N+2)l^2)/N^2")
    for n in (2, 4, 6, 8):
        show(Variant.UNBOUNDED, n, 2.0 * (n + 2) / n**2)

    print("\nbounded variant: single nonnegative eigenvalue kappa_N/2 = (N-2)/N^2")
    for n in (3, 5, 8):
        show(Variant.BOUNDED, n, 2.0 * (n - 2) / n**2)


if __name__ == "__main__":
    main()
