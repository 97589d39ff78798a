"""Gaussian wavepacket tossed upward in a uniform gravitational field.

The packet has width function ``D^2 = d^2 + i hbar t / m`` and its center
follows the classical trajectory ``z_c(t)``. Its Bohmian velocity field is

    J / R = t (z - z_c) / (m^2 d^4 / hbar^2 + t^2) + v_i - g t

and the trajectory launched from ``z_i + d`` is
``z(t) = z_c(t) + d sqrt(1 + hbar^2 t^2 / (m^2 d^4))``. Setting ``hbar = 0``
is allowed everywhere and reproduces Newtonian results.
"""
from dataclasses import dataclass
import math

import numpy as np

from gravtime.core_model import HBAR, G_STANDARD, ValidationError
from gravtime.quadrature import find_root

__all__ = [
    "WavepacketParams",
    "FlowPoint",
    "classical_trajectory",
    "wavefunction",
    "density",
    "current",
    "flow_ratio",
    "flow_point",
    "packet_width",
    "bohmian_trajectory",
    "return_time_numeric",
    "qst_wp_bohmian",
    "qst_wp_copenhagen",
    "copenhagen_crossover_width",
    "continuity_terms",
    "continuity_residual",
    "WIDTH_RATIO_LIMIT",
]

# d must stay below this fraction of the rise height for the small-width
# expansions to be trusted
WIDTH_RATIO_LIMIT = 0.1
RETURN_SEARCH_FACTOR = 10.0


@dataclass(frozen=True)
class WavepacketParams:
    """Mass ``m``, field ``g``, initial width ``d``, launch height and speed."""

    m: float
    g: float
    d: float
    z_i: float
    v_i: float
    hbar: float = HBAR

    def __post_init__(self):
        for name in ("m", "g", "d", "v_i"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValidationError(f"{name} must be positive and finite, got {v!r}")
        if not math.isfinite(self.z_i):
            raise ValidationError("z_i must be finite")
        if not (math.isfinite(self.hbar) and self.hbar >= 0.0):
            raise ValidationError("hbar must be finite and non-negative")

    @classmethod
    def for_particle(cls, particle, d, v_i, g=G_STANDARD, z_i=0.0, hbar=HBAR):
        return cls(particle.mass, g, d, z_i, v_i, hbar)

    @property
    def rise_height(self):
        return self.v_i * self.v_i / (2.0 * self.g)

    @property
    def z_cap(self):
        return self.z_i + self.rise_height

    @property
    def cst(self):
        return 2.0 * self.v_i / self.g

    @property
    def width_ok(self):
        """True when ``d`` is small against the rise height (validity flag)."""
        return self.d <= WIDTH_RATIO_LIMIT * self.rise_height

    @property
    def spread_rate(self):
        """``hbar / (m d^2)``, the inverse dispersion time."""
        return self.hbar / (self.m * self.d * self.d)

    def scaled(self, kappa):
        """Same packet with ``(m, hbar) -> (kappa m, kappa hbar)``."""
        return WavepacketParams(self.m * kappa, self.g, self.d, self.z_i, self.v_i, self.hbar * kappa)


@dataclass(frozen=True)
class FlowPoint:
    t: float
    z: float
    R: float
    J: float


def _check_time(t):
    if np.any(np.asarray(t) < 0.0):
        raise ValidationError("time must be non-negative")


def _out(x):
    if np.ndim(x) != 0:
        return x
    return complex(x) if np.iscomplexobj(x) else float(x)


def classical_trajectory(t, p):
    """Packet center ``z_i + v_i t - g t^2 / 2``."""
    _check_time(t)
    t = np.asarray(t, dtype=float)
    return _out(p.z_i + p.v_i * t - 0.5 * p.g * t * t)


def _width_sq(t, p):
    """``|D^2|^2 = d^4 + (hbar t / m)^2``."""
    s = p.hbar * t / p.m
    return p.d ** 4 + s * s


def packet_width(t, p):
    """Width ``w = |D^2| / d`` of the density, ``R ~ exp(-(z - z_c)^2 / w^2)``."""
    return _out(np.sqrt(_width_sq(np.asarray(t, dtype=float), p)) / p.d)


def wavefunction(t, z, p):
    """Packet amplitude and its z-derivative, ``(Psi, dPsi/dz)``.

    The global phase is kept as written in the closed-form solution. Large
    ``m / hbar`` makes the phase itself inaccurate, but density and
    current depend only on the modulus and on ``d log Psi / dz``, which
    are evaluated without that loss.
    """
    if p.hbar == 0.0:
        raise ValidationError("the wavefunction needs hbar > 0")
    _check_time(t)
    t = np.asarray(t, dtype=float)
    z = np.asarray(z, dtype=float)
    D2 = p.d * p.d + 1j * p.hbar * t / p.m
    x = z - (p.z_i + p.v_i * t - 0.5 * p.g * t * t)
    k = p.m / p.hbar
    phase = k * (p.z_i * p.v_i - (z - 0.5 * p.v_i * t) * (p.v_i - p.g * t) + p.g * p.g * t ** 3)
    amp = np.sqrt(p.d / (math.sqrt(math.pi) * D2))
    psi = amp * np.exp(-x * x / (2.0 * D2) - 1j * phase)
    dlog = -x / D2 + 1j * k * (p.v_i - p.g * t)
    return _out(psi), _out(psi * dlog)


def density(t, z, p):
    """``R = d / (sqrt(pi) |D^2|) exp(-(z - z_c)^2 d^2 / |D^2|^2)``."""
    _check_time(t)
    t = np.asarray(t, dtype=float)
    z = np.asarray(z, dtype=float)
    w2 = _width_sq(t, p)
    x = z - (p.z_i + p.v_i * t - 0.5 * p.g * t * t)
    return _out(p.d / (math.sqrt(math.pi) * np.sqrt(w2)) * np.exp(-x * x * p.d * p.d / w2))


def flow_ratio(t, z, p):
    """Bohmian velocity ``J / R`` at ``(t, z)``."""
    _check_time(t)
    t = np.asarray(t, dtype=float)
    z = np.asarray(z, dtype=float)
    x = z - (p.z_i + p.v_i * t - 0.5 * p.g * t * t)
    h2 = p.hbar * p.hbar
    # t x / (m^2 d^4 / hbar^2 + t^2), written to allow hbar = 0
    spread = t * x * h2 / (p.m * p.m * p.d ** 4 + h2 * t * t)
    return _out(spread + p.v_i - p.g * t)


def current(t, z, p):
    """Probability current ``J = R * (J / R)``."""
    return _out(np.asarray(density(t, z, p)) * np.asarray(flow_ratio(t, z, p)))


def flow_point(t, z, p):
    return FlowPoint(float(t), float(z), float(density(t, z, p)), float(current(t, z, p)))


def bohmian_trajectory(t, p):
    """Trajectory through ``z_i + d`` at ``t = 0``."""
    _check_time(t)
    t = np.asarray(t, dtype=float)
    s = p.spread_rate * t
    return _out(p.z_i + p.v_i * t - 0.5 * p.g * t * t + p.d * np.sqrt(1.0 + s * s))


def _return_gap(p, target):
    eps = p.spread_rate
    if target == "start":
        # (z(t) - z(0)) / t with sqrt(1 + x^2) - 1 = x^2 / (sqrt(1 + x^2) + 1)
        def gap(t):
            s = eps * t
            return p.v_i - 0.5 * p.g * t + p.d * eps * s / (math.sqrt(1.0 + s * s) + 1.0)
    else:
        def gap(t):
            s = eps * t
            return p.v_i * t - 0.5 * p.g * t * t + p.d * math.sqrt(1.0 + s * s)
    return gap


def return_time_numeric(p, return_to="start", tol=None):
    """First time after the apex at which the Bohmian trajectory comes back down.

    Parameters
    ----------
    p : WavepacketParams
    return_to : {"start", "launch"}
        ``"start"`` (default) means recrossing the trajectory's own initial
        height ``z_i + d``; ``"launch"`` means reaching ``z_i``.
    tol : float, optional
        Absolute time tolerance; defaults to ``4 eps`` of the classical time.

    Raises
    ------
    ValidationError
        If no return happens within ten classical scattering times.
    """
    if return_to not in ("start", "launch"):
        raise ValueError("return_to must be 'start' or 'launch'")
    gap = _return_gap(p, return_to)
    t_apex = p.v_i / p.g
    t_max = RETURN_SEARCH_FACTOR * p.cst
    if tol is None:
        tol = 4.0 * np.finfo(float).eps * p.cst
    # scan forward from the apex for the first sign change
    grid = np.linspace(t_apex, t_max, 401)
    prev_t = grid[0]
    prev_v = gap(prev_t)
    for t in grid[1:]:
        v = gap(t)
        if v == 0.0:
            return float(t)
        if (v < 0.0) != (prev_v < 0.0):
            return find_root(gap, prev_t, t, tol=tol)
        prev_t, prev_v = t, v
    raise ValidationError(
        f"no return within {RETURN_SEARCH_FACTOR:g} classical scattering times "
        "(dispersion-dominated escape regime)"
    )


def qst_wp_bohmian(p):
    """First-order Bohmian estimate ``(2 v_i / g) (1 + hbar / (m sqrt(2 g d^3)))``."""
    return p.cst * (1.0 + p.hbar / (p.m * math.sqrt(2.0 * p.g * p.d ** 3)))


def qst_wp_copenhagen(p):
    """Copenhagen estimate ``(2 v_i / g) (1 + hbar^2 / (4 m^2 d^2 v_i^2))``."""
    return p.cst * (1.0 + (p.hbar / (2.0 * p.m * p.d * p.v_i)) ** 2)


def copenhagen_crossover_width(m, g, v_i, hbar=HBAR):
    """Width at which the Bohmian and Copenhagen deviations coincide.

    Equating the two relative deviations gives ``d* = g hbar^2 / (8 m^2 v_i^4)``;
    for ``d > d*`` the Bohmian (order hbar) deviation is the larger one.
    """
    return g * hbar * hbar / (8.0 * m * m * v_i ** 4)


def _default_steps(t, z, p, rel=1e-4):
    # space step relative to the current packet width; time step relative
    # to the time the density takes to change appreciably at (t, z)
    width = packet_width(t, p)
    speed = abs(p.v_i - p.g * t) + abs(float(flow_ratio(t, z, p)) - (p.v_i - p.g * t)) + width / t
    hz = rel * width
    return hz / speed, hz


def continuity_terms(t, z, p, dt=None, dz=None):
    """Central-difference ``(dR/dt, dJ/dz)`` at ``(t, z)``."""
    if t <= 0.0:
        raise ValidationError("continuity check needs t > 0")
    ht, hz = _default_steps(t, z, p)
    ht = dt if dt is not None else ht
    hz = dz if dz is not None else hz
    if ht >= t:
        raise ValidationError("time step must be smaller than t")
    dR = (density(t + ht, z, p) - density(t - ht, z, p)) / (2.0 * ht)
    dJ = (current(t, z + hz, p) - current(t, z - hz, p)) / (2.0 * hz)
    return float(dR), float(dJ)


def continuity_residual(t, z, p, dt=None, dz=None):
    """``dR/dt + dJ/dz`` by central differences; zero up to discretisation."""
    dR, dJ = continuity_terms(t, z, p, dt, dz)
    return dR + dJ
