"""Symmetric drift-free Levy drivers on the circle and their exponents eta_n.

A driver is Brownian temperature kappa plus a jump measure restricted to
uniform-on-circle intensity and finitely many symmetric atom pairs. The
characteristic exponents are

    eta_n = kappa n^2 / 2 + uniform_rate + sum_atoms rate * (1 - cos(n*angle))

for n >= 1 (the uniform part contributes its full rate because cos(n phi)
averages to zero over the circle), with eta_0 = 0 implicit.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ValidationError

__all__ = [
    "LevyDriver",
    "EtaSequence",
    "eta_sequence",
    "validate_eta",
    "driver_from_dict",
    "eta_from_json_file",
]


@dataclass(frozen=True)
class LevyDriver:
    """Parameters of a drift-free symmetric Levy driver.

    atoms are (angle, rate) pairs with angle in (0, pi]; each atom stands for
    the symmetric pair +/-angle with the given total rate split evenly, so an
    atom at exactly pi is a single point (its own mirror).
    """

    kappa: float = 0.0
    uniform_rate: float = 0.0
    atoms: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        if not math.isfinite(self.kappa) or self.kappa < 0:
            raise ValidationError(f"kappa must be finite and >= 0, got {self.kappa}")
        if not math.isfinite(self.uniform_rate) or self.uniform_rate < 0:
            raise ValidationError(
                f"uniform_rate must be finite and >= 0, got {self.uniform_rate}"
            )
        norm = []
        for k, (angle, rate) in enumerate(self.atoms):
            if not math.isfinite(angle) or not (0.0 < angle <= math.pi):
                raise ValidationError(
                    f"atoms[{k}].angle must lie in (0, pi], got {angle}"
                )
            if not math.isfinite(rate) or rate <= 0:
                raise ValidationError(f"atoms[{k}].rate must be > 0, got {rate}")
            norm.append((float(angle), float(rate)))
        object.__setattr__(self, "atoms", tuple(norm))


@dataclass(frozen=True)
class EtaSequence:
    """Exponents eta_1..eta_{n_max}; eta_0 = 0 is implicit.

    formal=True marks sequences supplied directly by the user, with no claim
    that some driver realizes them.
    """

    values: tuple[float, ...]
    formal: bool = field(default=False, compare=False)

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValidationError("eta sequence must have at least one entry")
        for i, v in enumerate(vals):
            if not math.isfinite(v) or v < 0:
                raise ValidationError(
                    f"eta[{i + 1}] must be finite and >= 0, got {v}"
                )
        object.__setattr__(self, "values", vals)

    @property
    def n_max(self) -> int:
        return len(self.values)

    def value(self, n: int) -> float:
        """eta_n for 0 <= n <= n_max (eta_0 = 0)."""
        if n == 0:
            return 0.0
        if not 1 <= n <= len(self.values):
            raise ValidationError(f"eta_{n} not covered (n_max={len(self.values)})")
        return self.values[n - 1]


def eta_sequence(driver: LevyDriver, n_max: int) -> EtaSequence:
    """Exponent sequence eta_1..eta_{n_max} of a driver."""
    if n_max < 1:
        raise ValidationError(f"n_max must be >= 1, got {n_max}")
    vals = []
    for n in range(1, n_max + 1):
        v = driver.kappa * n * n / 2.0 + driver.uniform_rate
        for angle, rate in driver.atoms:
            v += rate * (1.0 - math.cos(n * angle))
        vals.append(v)
    return EtaSequence(tuple(vals))


def validate_eta(values) -> EtaSequence:
    """Wrap user-supplied exponents; accepts any nonnegative finite values."""
    return EtaSequence(tuple(float(v) for v in values), formal=True)


def driver_from_dict(d: dict) -> LevyDriver:
    """Build a driver from the JSON schema
    {"kappa": r, "uniform_rate": r, "atoms": [{"angle": r, "rate": r}]}.
    """
    known = {"kappa", "uniform_rate", "atoms"}
    unknown = set(d) - known
    if unknown:
        raise ValidationError(f"unknown driver fields: {sorted(unknown)}")
    atoms = []
    for k, a in enumerate(d.get("atoms", ())):
        if not isinstance(a, dict) or set(a) - {"angle", "rate"}:
            raise ValidationError(f"atoms[{k}] must be an object with angle and rate")
        try:
            atoms.append((float(a["angle"]), float(a["rate"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"atoms[{k}] malformed: {exc}") from exc
    try:
        kappa = float(d.get("kappa", 0.0))
        uniform_rate = float(d.get("uniform_rate", 0.0))
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"driver field malformed: {exc}") from exc
    return LevyDriver(kappa=kappa, uniform_rate=uniform_rate, atoms=tuple(atoms))


def eta_from_json_file(path: str, n_max: int, formal_min: int | None = None) -> EtaSequence:
    """Load eta from a JSON file holding either a driver object or a formal
    sequence {"eta": [eta_1, eta_2, ...]}.

    Driver files are evaluated out to n_max; formal files must already cover
    n_max entries (extra entries are kept). Callers that can work with
    shorter sequences, e.g. when a truncation order may close the system
    early, pass formal_min to lower the requirement on formal files only.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read eta file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"eta file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"eta file {path} must hold a JSON object")
    if "eta" in data:
        if set(data) != {"eta"}:
            raise ValidationError("formal eta file must hold exactly the key 'eta'")
        seq = validate_eta(data["eta"])
        need = n_max if formal_min is None else formal_min
        if seq.n_max < need:
            raise ValidationError(
                f"formal eta file covers n_max={seq.n_max}, need {need}"
            )
        return seq
    return eta_sequence(driver_from_dict(data), n_max)
