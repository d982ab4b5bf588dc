"""Command-line front end: spectra, beta(2), blowup fits, and the reference
curves, with deterministic CSV/JSON emitters.

Exit codes: 0 success, 2 input validation, 3 numerical failure, 4 capacity.
Grid commands fan out one task per parameter point; LLESPEC_THREADS caps the
thread pool, and results keep parameter order regardless of scheduling.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .closed_forms import (
    beta2_unbounded_n2,
    perturbed_n6_driver,
    perturbed_n6_pairs,
    theorem1_solution,
)
from .errors import LLESpecError, ValidationError
from .fuchsian_series import FuchsianSystem, GeometricLadder, blowup_exponent
from .levy_driver import (
    LevyDriver,
    eta_from_json_file,
    eta_sequence,
    validate_eta,
)
from .loewner_system import Variant, build_matrices, truncation_order
from .spectral_solver import beta2, eigen_spectrum

__all__ = ["main"]

_DEFAULT_LAMBDAS = "1,3,8,18,38,98"


# ---------------------------------------------------------------- output


def _fmt_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if rows:
        writer.writerow(list(rows[0].keys()))
        for row in rows:
            writer.writerow([_fmt_cell(v) for v in row.values()])
    return buf.getvalue()


def _render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _render_human(payload: dict, rows: list[dict]) -> str:
    lines = []
    for key, val in payload.items():
        if isinstance(val, (list, dict)):
            continue
        lines.append(f"{key} = {_fmt_cell(val)}")
    if rows:
        headers = list(rows[0].keys())
        table = [[_fmt_cell(v) for v in row.values()] for row in rows]
        widths = [
            max(len(h), *(len(r[i]) for r in table)) for i, h in enumerate(headers)
        ]
        lines.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
        for r in table:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def _emit(args, payload: dict, rows: list[dict]) -> None:
    if args.json and args.csv:
        raise ValidationError("choose one output format, --json or --csv")
    if args.out and not (args.json or args.csv):
        raise ValidationError("--out requires --json or --csv")
    if args.json:
        text = _render_json(payload)
    elif args.csv:
        text = _render_csv(rows)
    else:
        text = _render_human(payload, rows)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(text.encode("utf-8"))
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- inputs


def _parse_atom(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValidationError(f"--atom expects ANGLE:RATE, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise ValidationError(f"--atom expects numbers, got {text!r}") from exc


def _resolve_eta(args, n_needed: int, formal_min: int | None = None):
    has_driver = (
        args.kappa is not None or args.uniform_rate is not None or bool(args.atom)
    )
    if args.eta_file and has_driver:
        raise ValidationError("pass either driver flags or --eta-file, not both")
    if args.eta_file:
        return eta_from_json_file(args.eta_file, n_needed, formal_min)
    if not has_driver:
        raise ValidationError(
            "missing eta source: pass --kappa/--uniform-rate/--atom or --eta-file"
        )
    driver = LevyDriver(
        kappa=args.kappa or 0.0,
        uniform_rate=args.uniform_rate or 0.0,
        atoms=tuple(_parse_atom(t) for t in (args.atom or ())),
    )
    return eta_sequence(driver, n_needed)


def _resolve_system_size(args) -> tuple[int, object]:
    """(N, eta) from --n or from the truncation order of the eta source."""
    if args.n is not None:
        if args.n < 1:
            raise ValidationError(f"--n must be >= 1, got {args.n}")
        return args.n, _resolve_eta(args, max(args.n - 1, 1))
    # a formal file that closes early is fine at its own coverage
    eta = _resolve_eta(args, args.m_max, formal_min=1)
    order = truncation_order(eta, Variant.parse(args.variant))
    if order is None:
        bound = min(args.m_max, eta.n_max)
        raise ValidationError(
            f"no truncation order within n_max={bound}; pass --n explicitly"
        )
    return order, eta


def _max_workers(n_items: int) -> int:
    cap = os.environ.get("LLESPEC_THREADS")
    limit = min(n_items, os.cpu_count() or 1)
    if cap is not None:
        try:
            cap_n = int(cap)
        except ValueError:
            raise ValidationError(
                f"LLESPEC_THREADS must be an integer, got {cap!r}"
            ) from None
        if cap_n < 1:
            raise ValidationError(f"LLESPEC_THREADS must be >= 1, got {cap_n}")
        limit = min(limit, cap_n)
    return max(limit, 1)


def _fanout(fn, items: list):
    workers = _max_workers(len(items))
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------- commands


def _cmd_eta(args) -> None:
    eta = _resolve_eta(args, args.n_max)
    rows = [
        {"n": i + 1, "eta_n": v} for i, v in enumerate(eta.values[: args.n_max])
    ]
    # exactly the formal-eta schema, so --json output re-enters via --eta-file
    payload = {"eta": list(eta.values[: args.n_max])}
    _emit(args, payload, rows)


def _eigenvalue_rows(spec) -> list[dict]:
    rows = []
    for i, z in enumerate(spec.eigenvalues):
        mult = 1
        best = math.inf
        for center, m in spec.clusters:
            d = abs(z - center)
            if d < best:
                best, mult = d, m
        rows.append(
            {"index": i, "re": z.real, "im": z.imag, "multiplicity": mult}
        )
    return rows


def _cmd_spectrum(args) -> None:
    variant = Variant.parse(args.variant)
    n, eta = _resolve_system_size(args)
    spec = eigen_spectrum(build_matrices(eta, n, variant))
    rows = _eigenvalue_rows(spec)
    payload = {
        "variant": variant.value,
        "n": n,
        "max_real": spec.max_real,
        "n_nonneg_real": spec.n_nonneg_real,
        "resonant": spec.resonant,
        "all_real": spec.all_real,
        "eigenvalues": [{"re": z.real, "im": z.imag} for z in spec.eigenvalues],
        "clusters": [
            {"re": c.real, "im": c.imag, "multiplicity": m} for c, m in spec.clusters
        ],
    }
    _emit(args, payload, rows)


def _cmd_beta2(args) -> None:
    variant = Variant.parse(args.variant)
    # short formal files are accepted here; beta2 itself rejects them unless
    # a truncation order closes the system within their coverage
    eta = _resolve_eta(args, args.m_max, formal_min=1)
    rep = beta2(eta, variant, args.m_max)
    if rep.mode == "truncated":
        payload = {
            "variant": variant.value,
            "mode": "truncated",
            "N": rep.n,
            "beta2": rep.beta2,
            "converged": rep.converged,
            "convergence_gap": rep.convergence_gap,
        }
        rows = [{"M": rep.n, "beta_max": rep.beta2, "gap": 0.0}]
    else:
        gaps = [abs(b - a) for (_, a), (_, b) in zip(rep.sequence, rep.sequence[1:])]
        payload = {
            "variant": variant.value,
            "mode": "sequence",
            "beta2": rep.beta2,
            "converged": rep.converged,
            "convergence_gap": rep.convergence_gap,
            "sequence": [[m, v] for m, v in rep.sequence],
            "gaps": gaps,
        }
        rows = [
            {
                "M": m,
                "beta_max": v,
                "gap": None if i == 0 else gaps[i - 1],
            }
            for i, (m, v) in enumerate(rep.sequence)
        ]
    _emit(args, payload, rows)


def _cmd_fuchs(args) -> None:
    variant = Variant.parse(args.variant)
    n, eta = _resolve_system_size(args)
    system = FuchsianSystem(build_matrices(eta, n, variant))
    ladder = GeometricLadder(j_min=args.j_min, j_max=args.j_max)
    fit = blowup_exponent(system, ladder=ladder, k_terms=args.k_terms)
    payload = {
        "variant": variant.value,
        "n": n,
        "beta_est": fit.beta_est,
        "residual": fit.residual,
        "oscillation_detected": fit.oscillation_detected,
        "window_near": fit.window[0],
        "window_far": fit.window[1],
        "slopes": list(fit.slopes),
    }
    rows = [
        {
            "beta_est": fit.beta_est,
            "residual": fit.residual,
            "oscillation_detected": fit.oscillation_detected,
            "window_near": fit.window[0],
            "window_far": fit.window[1],
        }
    ]
    _emit(args, payload, rows)


def _cmd_theorem1(args) -> None:
    xi_grid = _parse_grid(args.xi_grid, "xi")
    beta_closed = beta2_unbounded_n2(args.eta1)
    spec = eigen_spectrum(
        build_matrices(validate_eta((args.eta1,)), 2, Variant.UNBOUNDED)
    )
    rows = []
    for xi in xi_grid:
        t = theorem1_solution(args.eta1, xi)
        rows.append(
            {"xi": xi, "f0": t.f0, "f1": t.f1, "theta0": t.theta0, "theta1": t.theta1}
        )
    payload = {
        "eta1": args.eta1,
        "beta2_closed": beta_closed,
        "beta2_eigen": spec.max_real,
        "abs_diff": abs(beta_closed - spec.max_real),
        "values": rows,
    }
    _emit(args, payload, rows)


def _parse_grid(text: str, name: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise ValidationError(f"--{name}-grid expects comma-separated numbers") from exc
    if not vals:
        raise ValidationError(f"--{name}-grid is empty")
    return vals


def _cmd_ple_curve(args) -> None:
    lambdas = _parse_grid(args.lambdas, "lambdas")
    if any(lam <= 0 or not math.isfinite(lam) for lam in lambdas):
        raise ValidationError("lambda grid entries must be positive and finite")

    def point(lam: float) -> dict:
        # integer lambda truncates exactly at N = lambda + 2
        m_max = max(args.m_max, int(math.ceil(lam)) + 2)
        eta = eta_sequence(LevyDriver(uniform_rate=lam), m_max)
        rep = beta2(eta, Variant.BOUNDED, m_max)
        return {
            "lambda": lam,
            "beta2": rep.beta2,
            "mode": rep.mode,
            "N": rep.n if rep.n is not None else rep.sequence[-1][0],
        }

    rows = _fanout(point, lambdas)
    _emit(args, {"points": rows}, rows)


def _cmd_sle_converge(args) -> None:
    if args.kappa is None:
        raise ValidationError("sle-converge requires --kappa")
    if args.m_max < 2:
        raise ValidationError(f"--m-max must be >= 2, got {args.m_max}")
    variant = Variant.parse(args.variant)
    eta = eta_sequence(LevyDriver(kappa=args.kappa), args.m_max)

    def point(m: int) -> float:
        return eigen_spectrum(build_matrices(eta, m, variant)).max_real

    ms = list(range(2, args.m_max + 1))
    betas = _fanout(point, ms)
    rows = []
    for i, (m, v) in enumerate(zip(ms, betas)):
        rows.append(
            {
                "M": m,
                "beta_max": v,
                "gap": None if i == 0 else abs(v - betas[i - 1]),
            }
        )
    payload = {
        "kappa": args.kappa,
        "variant": variant.value,
        "beta2": betas[-1],
        "last_gap": None if len(betas) < 2 else abs(betas[-1] - betas[-2]),
        "rows": [[r["M"], r["beta_max"], r["gap"]] for r in rows],
    }
    _emit(args, payload, rows)


def _cmd_perturbation(args) -> None:
    dks = args.delta_kappa or [1e-6, 1e-5, 1e-4]

    def point(dk: float) -> list[dict]:
        driver = perturbed_n6_driver(dk)
        eta = eta_sequence(driver, 5)
        spec = eigen_spectrum(build_matrices(eta, 6, Variant.UNBOUNDED))
        out = []
        for pred in perturbed_n6_pairs(dk):
            comp = min(spec.eigenvalues, key=lambda z: abs(z - pred))
            out.append(
                {
                    "delta_kappa": dk,
                    "predicted_re": pred.real,
                    "predicted_im": pred.imag,
                    "computed_re": comp.real,
                    "computed_im": comp.imag,
                    "abs_err_re": abs(comp.real - pred.real),
                    "rel_err_im": abs(comp.imag - pred.imag) / abs(pred.imag),
                }
            )
        return out

    rows = [row for group in _fanout(point, dks) for row in group]
    _emit(args, {"pairs": rows}, rows)


# ---------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--kappa", type=float, default=None, help="Brownian temperature")
    source.add_argument(
        "--uniform-rate", type=float, default=None, help="uniform jump intensity"
    )
    source.add_argument(
        "--atom",
        action="append",
        metavar="ANGLE:RATE",
        help="symmetric jump atom, repeatable",
    )
    source.add_argument(
        "--eta-file", default=None, help="JSON driver or formal eta file"
    )

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", action="store_true", help="emit JSON")
    output.add_argument("--csv", action="store_true", help="emit CSV")
    output.add_argument("--out", default=None, help="output file (needs --json/--csv)")

    variant = argparse.ArgumentParser(add_help=False)
    variant.add_argument(
        "--variant",
        choices=["unbounded", "bounded"],
        default="unbounded",
        help="growth convention",
    )

    parser = argparse.ArgumentParser(
        prog="llespec",
        description="beta(2) of Levy-Loewner evolutions by eigenvalues, "
        "characteristic-polynomial roots, and blowup fits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eta", parents=[source, output], help="exponent sequence")
    p.add_argument("--n-max", type=int, default=8)
    p.set_defaults(func=_cmd_eta)

    p = sub.add_parser(
        "spectrum", parents=[source, output, variant], help="eigenvalue table"
    )
    p.add_argument("--n", type=int, default=None, help="matrix dimension")
    p.add_argument(
        "--m-max", type=int, default=64, help="truncation scan range when --n absent"
    )
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser(
        "beta2", parents=[source, output, variant], help="beta(2) report"
    )
    p.add_argument("--m-max", type=int, default=64)
    p.set_defaults(func=_cmd_beta2)

    p = sub.add_parser(
        "fuchs", parents=[source, output, variant], help="blowup-exponent fit"
    )
    p.add_argument("--n", type=int, default=None, help="matrix dimension")
    p.add_argument("--m-max", type=int, default=64)
    p.add_argument("--j-min", type=int, default=6)
    p.add_argument("--j-max", type=int, default=14)
    p.add_argument("--k-terms", type=int, default=None, help="series order override")
    p.set_defaults(func=_cmd_fuchs)

    p = sub.add_parser(
        "theorem1", parents=[output], help="closed-form N=2 solution and beta(2)"
    )
    p.add_argument("--eta1", type=float, required=True)
    p.add_argument(
        "--xi-grid",
        default="0.0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
        help="comma-separated xi values in [0, 1)",
    )
    p.set_defaults(func=_cmd_theorem1)

    p = sub.add_parser(
        "ple-curve", parents=[output], help="beta(2) versus uniform jump rate"
    )
    p.add_argument("--lambdas", default=_DEFAULT_LAMBDAS)
    p.add_argument("--m-max", type=int, default=40)
    p.set_defaults(func=_cmd_ple_curve)

    p = sub.add_parser(
        "sle-converge",
        parents=[output, variant],
        help="maximal real eigenvalue versus matrix size",
    )
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--m-max", type=int, default=60)
    p.set_defaults(func=_cmd_sle_converge)

    p = sub.add_parser(
        "perturbation",
        parents=[output],
        help="perturbed N=6 spectrum against the complex-pair asymptotics",
    )
    p.add_argument(
        "--delta-kappa", type=float, action="append", default=None, metavar="DK"
    )
    p.set_defaults(func=_cmd_perturbation)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except LLESpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
