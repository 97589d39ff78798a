"""Constants, particles, launch scenarios and the quantum scales of free fall.

A particle of mass ``m`` launched upward from ``z_i`` in a uniform field
``g`` turns around classically at ``z_cap``. Quantum mechanics adds the
length and time scales

    L_q = (hbar**2 / (2 m**2 g))**(1/3)
    T_q = (hbar / (4 m g**2))**(1/3)

and the dimensionless flight parameters ``beta_q = (cst / (4 T_q))**2`` and
``alpha_q = (4/3) beta_q**1.5``. One finds ``beta_q = (z_cap - z_i) / L_q``.
"""
from dataclasses import dataclass, field
from importlib import resources
import json
import math
from pathlib import Path

import numpy as np

HBAR = 1.054571817e-34
G_STANDARD = 9.80665

__all__ = [
    "HBAR",
    "G_STANDARD",
    "ValidationError",
    "PhysicalConstants",
    "Particle",
    "Scenario",
    "CharacteristicScales",
    "DimensionlessParams",
    "load_catalog",
    "get_particle",
    "cst",
    "scales",
    "dimensionless",
    "zeta",
]


class ValidationError(ValueError):
    """An input violates a documented precondition."""


def _positive(name, value):
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise ValidationError(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = HBAR
    g_default: float = G_STANDARD

    def __post_init__(self):
        _positive("hbar", self.hbar)
        _positive("g_default", self.g_default)


@dataclass(frozen=True)
class Particle:
    name: str
    mass: float
    mass_text: str = field(default="", compare=False)

    def __post_init__(self):
        _positive(f"mass of {self.name!r}", self.mass)

    def scaled(self, factor, name=None):
        """Same particle with mass multiplied by ``factor``."""
        return Particle(name or f"{self.name}x{factor:g}", self.mass * factor)


def load_catalog(path=None):
    """Read a particle catalog (JSON list of ``{"name", "mass_kg"}``).

    Masses are stored in the file as decimal strings and kept verbatim in
    ``Particle.mass_text``. Without ``path`` the bundled catalog is used.
    """
    if path is None:
        text = resources.files("gravtime").joinpath("data/particles.json").read_text()
    else:
        text = Path(path).read_text()
    records = json.loads(text)
    catalog = {}
    for rec in records:
        mass_text = str(rec["mass_kg"])
        catalog[rec["name"]] = Particle(rec["name"], float(mass_text), mass_text)
    return catalog


def get_particle(name, path=None):
    catalog = load_catalog(path)
    try:
        return catalog[name]
    except KeyError:
        known = ", ".join(sorted(catalog))
        raise ValidationError(f"unknown particle {name!r}; known: {known}") from None


@dataclass(frozen=True)
class CharacteristicScales:
    L_q: float
    T_q: float


@dataclass(frozen=True)
class DimensionlessParams:
    beta_q: float
    alpha_q: float


@dataclass(frozen=True)
class Scenario:
    """Launch configuration, canonical in the two heights.

    Launch speed and energy are derived (``v_i``, ``energy``), never stored.
    ``hbar`` is carried so that classical limits and ``(m, hbar)`` scaling
    can be exercised; it defaults to the CODATA value.
    """

    particle: Particle
    g: float
    z_i: float
    z_cap: float
    hbar: float = HBAR

    def __post_init__(self):
        _positive("g", self.g)
        if not (math.isfinite(self.z_i) and math.isfinite(self.z_cap)):
            raise ValidationError("heights must be finite")
        if self.z_cap < self.z_i:
            raise ValidationError(
                f"turning height z_cap={self.z_cap!r} lies below launch height z_i={self.z_i!r}"
            )
        if not (math.isfinite(self.hbar) and self.hbar >= 0.0):
            raise ValidationError("hbar must be finite and non-negative")

    @classmethod
    def from_speed(cls, particle, v_i, g=G_STANDARD, z_i=0.0, hbar=HBAR):
        if v_i < 0.0:
            raise ValidationError("launch speed must be non-negative")
        return cls(particle, g, z_i, z_i + v_i * v_i / (2.0 * g), hbar)

    @classmethod
    def from_energy(cls, particle, energy, g=G_STANDARD, z_i=0.0, hbar=HBAR):
        """Energy measured from V = 0 at z = 0, so ``E = m g z_cap``."""
        return cls(particle, g, z_i, energy / (particle.mass * g), hbar)

    @classmethod
    def from_beta(cls, particle, beta_q, g=G_STANDARD, z_cap=0.0, hbar=HBAR):
        """Scenario whose launch point sits ``beta_q`` quantum lengths below ``z_cap``."""
        if beta_q < 0.0:
            raise ValidationError("beta_q must be non-negative")
        L_q = scales(particle, g, hbar).L_q
        return cls(particle, g, z_cap - beta_q * L_q, z_cap, hbar)

    @property
    def height(self):
        return self.z_cap - self.z_i

    @property
    def v_i(self):
        return math.sqrt(2.0 * self.g * self.height)

    @property
    def energy(self):
        return self.particle.mass * self.g * self.z_cap

    def with_mass_and_hbar_scaled(self, kappa):
        """Scenario with ``(m, hbar) -> (kappa m, kappa hbar)``."""
        return Scenario(self.particle.scaled(kappa), self.g, self.z_i, self.z_cap, self.hbar * kappa)


def cst(scenario):
    """Classical scattering time ``2 sqrt(2 (z_cap - z_i) / g)``, mass independent."""
    return 2.0 * math.sqrt(2.0 * scenario.height / scenario.g)


def scales(particle, g=G_STANDARD, hbar=HBAR):
    """Quantum length and time scales of a particle under gravity."""
    m = particle.mass if isinstance(particle, Particle) else _positive("mass", particle)
    g = _positive("g", g)
    hbar = _positive("hbar", hbar)
    L_q = (hbar * hbar / (2.0 * m * m * g)) ** (1.0 / 3.0)
    T_q = (hbar / (4.0 * m * g * g)) ** (1.0 / 3.0)
    return CharacteristicScales(L_q, T_q)


def dimensionless(scenario):
    sc = scales(scenario.particle, scenario.g, scenario.hbar)
    beta = (cst(scenario) / (4.0 * sc.T_q)) ** 2
    return DimensionlessParams(beta, 4.0 / 3.0 * beta ** 1.5)


def zeta(z, scenario):
    """Bessel argument ``(2/3) (|z - z_cap| / L_q)**1.5``; vectorised in ``z``."""
    L_q = scales(scenario.particle, scenario.g, scenario.hbar).L_q
    u = np.abs(np.asarray(z, dtype=float) - scenario.z_cap) / L_q
    out = 2.0 / 3.0 * u * np.sqrt(u)
    return float(out) if out.ndim == 0 else out
