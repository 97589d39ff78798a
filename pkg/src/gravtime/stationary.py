"""Mono-energetic stationary states in the linear gravitational potential.

With ``zeta = (2/3) (|z - z_cap| / L_q)**1.5`` the stationary solution is

    psi_a = N zeta**(1/3) [J_{1/3}(zeta) + J_{-1/3}(zeta)]     z <= z_cap
    psi_f = N zeta**(1/3) [I_{-1/3}(zeta) - I_{1/3}(zeta)]     z >= z_cap

Both are real and carry no current. Each is split into two complex pieces
carrying equal and opposite currents ("undercurrents"): incident and
reflected waves below the turning point, penetrating and withdrawing waves
above it. Flight times are ``int rho / (2 j) dz`` with ``j`` the relevant
undercurrent; closed forms in Airy functions are provided next to the
quadrature evaluation of the same integrals.

Wavefunctions are evaluated on the signed offset ``t = z - z_cap`` so that
heights far above the origin do not cost precision near the turning point.
"""
from dataclasses import dataclass
import math

import numpy as np

from gravtime import specfun
from gravtime.core_model import (
    Particle,
    Scenario,
    ValidationError,
    G_STANDARD,
    HBAR,
    cst,
    dimensionless,
    scales,
)
from gravtime.quadrature import integrate, integrate_semi_infinite
from gravtime.specfun import _kernels as _k

__all__ = [
    "WaveValue",
    "CurrentSet",
    "TimeBreakdown",
    "HighFlightValidity",
    "psi_allowed",
    "psi_forbidden",
    "psi_allowed_airy",
    "psi_forbidden_airy",
    "split_allowed",
    "split_forbidden",
    "probability_current",
    "undercurrents",
    "rise_time",
    "fall_time",
    "penetrate_time",
    "withdraw_time",
    "dwell_time",
    "qst_total",
    "qst_cst_ratio",
    "zero_flight_time",
    "high_flight_ratio",
    "high_flight_validity",
    "PAPER_HIGH_FLIGHT_FM",
    "total_over_tq",
    "figure_series",
]

_SQRT3 = math.sqrt(3.0)
_CBRT_3_2 = 1.5 ** (1.0 / 3.0)
_K_TO_IDIFF = _SQRT3 / math.pi
_G13 = specfun.gamma_thirds("1/3")
_G23 = specfun.gamma_thirds("2/3")
# zeta -> 0 limits of zeta**(1/3) J_{-1/3}(zeta) and of the z-derivative of
# zeta**(1/3) J_{1/3}(zeta) in units of 1/L_q (same limits for I)
_B0 = 2.0 ** (1.0 / 3.0) / _G23
_DA0 = _CBRT_3_2 * 2.0 ** (2.0 / 3.0) / _G13
# psi_a = N * 3 (2/3)**(1/3) * Ai(-u)
_AIRY_FACTOR = 3.0 * (2.0 / 3.0) ** (1.0 / 3.0)
# (3^(1/3) Gamma(1/3))**2 = 1 / Ai'(0)**2
_GAMMA_PRODUCT = (3.0 ** (1.0 / 3.0) * _G13) ** 2

# exact phase constants: e^{+-i pi/3} and i e^{+-i pi/6}
_E3 = complex(0.5, _SQRT3 / 2.0)
_E3C = complex(0.5, -_SQRT3 / 2.0)
_I_E6 = complex(-0.5, _SQRT3 / 2.0)
_I_E6C = complex(0.5, _SQRT3 / 2.0)

# (coefficient on the order +1/3 function, coefficient on the order -1/3 one)
_INCIDENT = (_E3C, _E3)
_REFLECTED = (1.0 - _E3C, 1.0 - _E3)
_PENETRATING = (_I_E6, _I_E6C)
_WITHDRAWING = (-(1.0 - _E3C), 1.0 - _E3)

PAPER_HIGH_FLIGHT_FM = {"electron": 0.274, "neutron": 0.183}


@dataclass(frozen=True)
class WaveValue:
    """Wavefunction value and its z-derivative (scalars or arrays)."""

    psi: complex
    dpsi_dz: complex

    def __add__(self, other):
        return WaveValue(self.psi + other.psi, self.dpsi_dz + other.dpsi_dz)

    @property
    def density(self):
        return np.abs(self.psi) ** 2


@dataclass(frozen=True)
class CurrentSet:
    j_i: float
    j_r: float
    j_p: float
    j_w: float


@dataclass(frozen=True)
class TimeBreakdown:
    rise: float
    penetrate: float
    withdraw: float
    fall: float
    total: float
    cst: float
    ratio: float  # nan when cst == 0

    @property
    def ratio_defined(self):
        return not math.isnan(self.ratio)


@dataclass(frozen=True)
class HighFlightValidity:
    height: float
    beta_q: float
    alpha_q: float
    paper_height: float  # nan when the paper quotes nothing for this particle


# --- basis functions on the offset t = z - z_cap -------------------------

def _allowed_basis(t, L_q):
    """zeta^(1/3) J_{+-1/3}(zeta) and their z-derivatives for t <= 0."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    u = -t / L_q
    zeta = 2.0 / 3.0 * u * np.sqrt(u)
    A = np.zeros_like(zeta)
    B = np.full_like(zeta, _B0)
    dA = np.full_like(zeta, -_DA0 / L_q)
    dB = np.zeros_like(zeta)
    pos = zeta > 0.0
    if np.any(pos):
        zp = np.ascontiguousarray(zeta[pos])
        j, y, jp, yp = (np.empty_like(zp) for _ in range(4))
        _k.jy13_array(zp, j, y, jp, yp)
        jm = 0.5 * j - _SQRT3 / 2.0 * y
        jmp = 0.5 * jp - _SQRT3 / 2.0 * yp
        z13 = np.cbrt(zp)
        z23 = z13 * z13
        inv13 = 1.0 / z13
        # d zeta / dz = -(3/2)^(1/3) zeta^(1/3) / L_q below the turning point
        c = -_CBRT_3_2 / L_q
        A[pos] = z13 * j
        B[pos] = z13 * jm
        dA[pos] = c * (j * inv13 / 3.0 + z23 * jp)
        dB[pos] = c * (jm * inv13 / 3.0 + z23 * jmp)
    return A, dA, B, dB


def _forbidden_basis(t, L_q, need_growing=True):
    """zeta^(1/3) I_{1/3} and zeta^(1/3) (I_{-1/3} - I_{1/3}) with derivatives, t >= 0.

    The difference is carried separately (through K_{1/3}) because forming
    it from two growing functions would cancel catastrophically.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    u = t / L_q
    zeta = 2.0 / 3.0 * u * np.sqrt(u)
    P = np.zeros_like(zeta)
    dP = np.full_like(zeta, _DA0 / L_q)
    D = np.full_like(zeta, _B0)
    dD = np.full_like(zeta, -_DA0 / L_q)
    pos = zeta > 0.0
    if np.any(pos):
        zp = np.ascontiguousarray(zeta[pos])
        i_s, k_s, ip_s, kp_s = (np.empty_like(zp) for _ in range(4))
        _k.ik13_array(zp, i_s, k_s, ip_s, kp_s)
        z13 = np.cbrt(zp)
        z23 = z13 * z13
        inv13 = 1.0 / z13
        c = _CBRT_3_2 / L_q
        with np.errstate(over="ignore", under="ignore"):
            em = np.exp(-zp)
            D[pos] = _K_TO_IDIFF * z13 * k_s * em
            dD[pos] = _K_TO_IDIFF * c * (k_s * inv13 / 3.0 + z23 * kp_s) * em
            if need_growing:
                ep = np.exp(zp)
                P[pos] = z13 * i_s * ep
                dP[pos] = c * (i_s * inv13 / 3.0 + z23 * ip_s) * ep
    return P, dP, D, dD


def _wave(psi, dpsi, shape):
    psi = np.asarray(psi, dtype=complex)
    dpsi = np.asarray(dpsi, dtype=complex)
    if shape == ():
        return WaveValue(complex(psi[0]), complex(dpsi[0]))
    return WaveValue(psi.reshape(shape), dpsi.reshape(shape))


def _allowed_combo(t, L_q, coeffs, norm):
    A, dA, B, dB = _allowed_basis(t, L_q)
    cp, cm = coeffs
    return norm * (cp * A + cm * B), norm * (cp * dA + cm * dB)


def _forbidden_combo(t, L_q, coeffs, norm):
    P, dP, D, dD = _forbidden_basis(t, L_q)
    cp, cm = coeffs
    # cp zeta^(1/3) I_{1/3} + cm zeta^(1/3) I_{-1/3} = (cp + cm) P + cm D
    s = cp + cm
    with np.errstate(invalid="ignore"):
        psi = norm * (s * P + cm * D) if s != 0 else norm * cm * D
        dpsi = norm * (s * dP + cm * dD) if s != 0 else norm * cm * dD
    return psi, dpsi


def _length(scenario):
    return scales(scenario.particle, scenario.g, scenario.hbar).L_q


def _offsets(z, scenario, region):
    z = np.asarray(z, dtype=float)
    t = z - scenario.z_cap
    if region == "allowed" and np.any(t > 0.0):
        raise ValidationError("allowed-region wavefunction needs z <= z_cap")
    if region == "forbidden" and np.any(t < 0.0):
        raise ValidationError("forbidden-region wavefunction needs z >= z_cap")
    return t, z.shape


# --- wavefunctions ------------------------------------------------------

def psi_allowed(z, scenario, norm=1.0):
    """Real standing wave below the turning point, Bessel-function route."""
    t, shape = _offsets(z, scenario, "allowed")
    return _wave(*_allowed_combo(t, _length(scenario), (1.0, 1.0), norm), shape)


def psi_forbidden(z, scenario, norm=1.0):
    """Real evanescent wave above the turning point, Bessel-function route."""
    t, shape = _offsets(z, scenario, "forbidden")
    L_q = _length(scenario)
    _, _, D, dD = _forbidden_basis(t, L_q, need_growing=False)
    return _wave(norm * D, norm * dD, shape)


def psi_allowed_airy(z, scenario, norm=1.0):
    """Cross-check route: ``psi_a = N 3 (2/3)^(1/3) Ai(-(z_cap - z)/L_q)``."""
    t, shape = _offsets(z, scenario, "allowed")
    L_q = _length(scenario)
    ai, aip = specfun.airy(np.atleast_1d(t / L_q))
    c = norm * _AIRY_FACTOR
    return _wave(c * ai, c * aip / L_q, shape)


def psi_forbidden_airy(z, scenario, norm=1.0):
    t, shape = _offsets(z, scenario, "forbidden")
    L_q = _length(scenario)
    ai, aip = specfun.airy(np.atleast_1d(t / L_q))
    c = norm * _AIRY_FACTOR
    return _wave(c * ai, c * aip / L_q, shape)


def split_allowed(z, scenario, norm=1.0):
    """Incident and reflected pieces ``(psi_i, psi_r)`` with ``psi_i + psi_r = psi_a``."""
    t, shape = _offsets(z, scenario, "allowed")
    L_q = _length(scenario)
    inc = _wave(*_allowed_combo(t, L_q, _INCIDENT, norm), shape)
    ref = _wave(*_allowed_combo(t, L_q, _REFLECTED, norm), shape)
    return inc, ref


def split_forbidden(z, scenario, norm=1.0):
    """Penetrating and withdrawing pieces ``(psi_p, psi_w)`` summing to ``psi_f``."""
    t, shape = _offsets(z, scenario, "forbidden")
    L_q = _length(scenario)
    pen = _wave(*_forbidden_combo(t, L_q, _PENETRATING, norm), shape)
    wd = _wave(*_forbidden_combo(t, L_q, _WITHDRAWING, norm), shape)
    return pen, wd


def probability_current(wave, scenario):
    """``(hbar / m) Im(conj(psi) dpsi/dz)`` evaluated from the wave values."""
    val = scenario.hbar / scenario.particle.mass * np.imag(np.conj(wave.psi) * wave.dpsi_dz)
    return float(val) if np.ndim(val) == 0 else val


def undercurrents(scenario, norm=1.0):
    """Closed-form undercurrents ``+-(hbar / (pi m L_q)) (3/2)^(4/3) |N|^2``."""
    j0 = (
        scenario.hbar / (math.pi * scenario.particle.mass * _length(scenario))
        * 1.5 ** (4.0 / 3.0) * abs(norm) ** 2
    )
    return CurrentSet(j0, -j0, j0, -j0)


# --- times ----------------------------------------------------------------

_METHODS = ("closed", "quadrature")


def _check_method(method):
    if method not in _METHODS:
        raise ValueError(f"method must be one of {_METHODS}, got {method!r}")


def _tq(scenario):
    return scales(scenario.particle, scenario.g, scenario.hbar).T_q


def _rise_closed(scenario):
    beta = dimensionless(scenario).beta_q
    ai, aip = specfun.airy(-beta)
    aip0 = specfun.airy_ai_prime(0.0)
    return 2.0 * math.pi * _tq(scenario) * (beta * ai * ai + (aip * aip - aip0 * aip0))


def _reference_offset(L_q):
    # any point works since the undercurrents are constant; u = 1 is well
    # conditioned for both the J and the I representations
    return L_q


def _numeric_current(scenario, coeffs, region, norm):
    L_q = _length(scenario)
    t0 = _reference_offset(L_q)
    if region == "allowed":
        psi, dpsi = _allowed_combo(np.array([-t0]), L_q, coeffs, norm)
    else:
        psi, dpsi = _forbidden_combo(np.array([t0]), L_q, coeffs, norm)
    return probability_current(WaveValue(psi[0], dpsi[0]), scenario)


def _allowed_density(scenario, norm):
    L_q = _length(scenario)

    def rho(t):
        A, _, B, _ = _allowed_basis(t, L_q)
        return abs(norm) ** 2 * (A + B) ** 2

    return rho


def _forbidden_density(scenario, norm):
    L_q = _length(scenario)

    def rho(t):
        _, _, D, _ = _forbidden_basis(t, L_q, need_growing=False)
        return abs(norm) ** 2 * D * D

    return rho


def rise_time(scenario, method="closed", rel_tol=1e-11, norm=1.0):
    """Time to rise from ``z_i`` to ``z_cap`` along the incident undercurrent.

    ``closed``:
        ``2 pi T_q [beta Ai(-beta)^2 + Ai'(-beta)^2 - Ai'(0)^2]``.
    ``quadrature``:
        ``int_{z_i}^{z_cap} |psi_a|^2 / (2 j_i) dz`` with ``j_i`` evaluated
        numerically from the incident wave.
    """
    _check_method(method)
    if method == "closed":
        return _rise_closed(scenario)
    if scenario.height == 0.0:
        return 0.0
    j_i = _numeric_current(scenario, _INCIDENT, "allowed", norm)
    rho = _allowed_density(scenario, norm)
    res = integrate(lambda t: rho(t) / (2.0 * j_i), -scenario.height, 0.0, rel_tol=rel_tol)
    return res.value


def fall_time(scenario, method="closed", rel_tol=1e-11, norm=1.0):
    """Time to fall back from ``z_cap`` to ``z_i`` along the reflected undercurrent."""
    _check_method(method)
    if method == "closed":
        return _rise_closed(scenario)
    if scenario.height == 0.0:
        return 0.0
    j_r = _numeric_current(scenario, _REFLECTED, "allowed", norm)
    rho = _allowed_density(scenario, norm)
    # limits run downward, from z_cap to z_i, against a negative current
    res = integrate(lambda t: rho(t) / (2.0 * j_r), 0.0, -scenario.height, rel_tol=rel_tol)
    return res.value


def _penetrate_closed(scenario):
    return 2.0 * math.pi * _tq(scenario) / _GAMMA_PRODUCT


def penetrate_time(scenario, method="closed", rel_tol=1e-11, norm=1.0):
    """Time spent penetrating above the turning point, ``2 pi T_q Ai'(0)^2``.

    The quadrature route integrates ``|psi_f|^2 / (2 j_p)`` over the whole
    half-line; ``|psi_f|^2`` falls off like ``exp(-2 zeta)``, so panels of
    width ``L_q`` with an exponential tail bound are used.
    """
    _check_method(method)
    if method == "closed":
        return _penetrate_closed(scenario)
    L_q = _length(scenario)
    j_p = _numeric_current(scenario, _PENETRATING, "forbidden", norm)
    rho = _forbidden_density(scenario, norm)
    res = integrate_semi_infinite(lambda t: rho(t) / (2.0 * j_p), 0.0, L_q, rel_tol=rel_tol)
    return res.value


def withdraw_time(scenario, method="closed", rel_tol=1e-11, norm=1.0):
    """Time to withdraw from the forbidden region back to the turning point."""
    _check_method(method)
    if method == "closed":
        return _penetrate_closed(scenario)
    L_q = _length(scenario)
    j_w = _numeric_current(scenario, _WITHDRAWING, "forbidden", norm)
    rho = _forbidden_density(scenario, norm)
    # int_inf^{z_cap} rho / (2 j_w) dz = -int_{z_cap}^inf rho / (2 j_w) dz
    res = integrate_semi_infinite(lambda t: rho(t) / (2.0 * j_w), 0.0, L_q, rel_tol=rel_tol)
    return -res.value


def dwell_time(scenario, rel_tol=1e-11, norm=1.0):
    """Dwell time above the turning point referred to the incident current.

    ``(1 / j_i) int_{z_cap}^inf |psi_f|^2 dz``; it equals the sum of the
    penetrate and withdraw times.
    """
    L_q = _length(scenario)
    j_i = _numeric_current(scenario, _INCIDENT, "allowed", norm)
    rho = _forbidden_density(scenario, norm)
    res = integrate_semi_infinite(rho, 0.0, L_q, rel_tol=rel_tol)
    return res.value / j_i


def qst_cst_ratio(beta_q):
    """Exact QST/CST, ``pi sqrt(b) Ai(-b)^2 + (pi / sqrt(b)) Ai'(-b)^2``; vectorised."""
    b = np.asarray(beta_q, dtype=float)
    if np.any(b <= 0.0):
        raise ValidationError("QST/CST is undefined for beta_q <= 0 (zero classical flight)")
    ai, aip = specfun.airy(-b)
    sb = np.sqrt(b)
    out = math.pi * sb * ai * ai + math.pi / sb * aip * aip
    return float(out) if out.ndim == 0 else out


def qst_total(scenario):
    """All four closed-form segments, their sum, the CST and QST/CST.

    For ``z_i == z_cap`` the ratio is undefined and reported as ``nan``; the
    total then equals :func:`zero_flight_time`.
    """
    rise = _rise_closed(scenario)
    pen = _penetrate_closed(scenario)
    total = rise + pen + pen + rise
    c = cst(scenario)
    beta = dimensionless(scenario).beta_q
    ratio = qst_cst_ratio(beta) if beta > 0.0 else math.nan
    return TimeBreakdown(rise, pen, pen, rise, total, c, ratio)


def total_over_tq(beta_q):
    """QST in units of ``T_q``, ``4 pi [b Ai(-b)^2 + Ai'(-b)^2]``; vectorised, defined at 0."""
    b = np.asarray(beta_q, dtype=float)
    if np.any(b < 0.0):
        raise ValidationError("beta_q must be non-negative")
    ai, aip = specfun.airy(-b)
    out = 4.0 * math.pi * (b * ai * ai + aip * aip)
    return float(out) if out.ndim == 0 else out


def figure_series(cst_over_tq, mass_factor=1.0):
    """QST against CST for a particle of mass ``mass_factor * m``.

    Times are measured in ``T_q`` of the reference mass ``m``; the variant's
    own scale is ``T_q' = T_q mass_factor**(-1/3)``, so its flight
    parameter is ``beta' = (cst / (4 T_q'))**2``. Returns
    ``(qst / T_q, qst / cst)``; the ratio is ``nan`` where ``cst = 0``.
    """
    x = np.asarray(cst_over_tq, dtype=float)
    if np.any(x < 0.0):
        raise ValidationError("cst must be non-negative")
    if not mass_factor > 0.0:
        raise ValidationError("mass_factor must be positive")
    shrink = mass_factor ** (-1.0 / 3.0)
    beta = (x / (4.0 * shrink)) ** 2
    qst = shrink * np.asarray(total_over_tq(beta))
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(x > 0.0, qst / np.where(x > 0.0, x, 1.0), np.nan)
    if x.ndim == 0:
        return float(qst), float(ratio)
    return qst, ratio


def zero_flight_time(particle, g=G_STANDARD, hbar=HBAR):
    """Collision time at the turning point, ``4 pi T_q / (3^(1/3) Gamma(1/3))^2``."""
    T_q = scales(particle, g, hbar).T_q
    return 4.0 * math.pi * T_q / _GAMMA_PRODUCT


def high_flight_ratio(alpha_q):
    """First-order high-flight asymptote ``1 - cos(alpha) / (3 alpha)``; vectorised."""
    a = np.asarray(alpha_q, dtype=float)
    if np.any(a <= 0.0):
        raise ValidationError("alpha_q must be positive")
    out = 1.0 - np.cos(a) / (3.0 * a)
    return float(out) if out.ndim == 0 else out


def _beta_from_alpha(alpha):
    return (0.75 * np.asarray(alpha, dtype=float)) ** (2.0 / 3.0)


# envelope of the second-order term of the high-flight expansion,
# (1/18 - (17/54) sin(alpha)) / alpha**2, from the Airy asymptotic series
_SECOND_ORDER_ENVELOPE = 1.0 / 18.0 + 17.0 / 54.0


def high_flight_validity(particle, g=G_STANDARD, hbar=HBAR, beta_max=400.0, points=40000):
    """Launch height above which the high-flight asymptote is trustworthy.

    Criterion: the smallest ``beta_q`` such that at every larger ``beta_q``
    (up to ``beta_max``) the expansion is ordered, i.e. the second-order
    envelope ``(10/27) / alpha**2`` is below the first-order one
    ``1 / (3 alpha)``, and the asymptote's actual error
    ``|exact - (1 - cos(alpha)/(3 alpha))|`` is below that second-order
    envelope. The answer is converted to a height ``beta_q L_q`` and
    returned next to the value the literature quotes for the electron and
    the neutron (``nan`` for other particles).
    """
    if isinstance(particle, str):
        from gravtime.core_model import get_particle

        particle = get_particle(particle)
    beta = np.geomspace(1e-3, beta_max, points)
    alpha = 4.0 / 3.0 * beta ** 1.5
    err = np.abs(qst_cst_ratio(beta) - high_flight_ratio(alpha))
    second = _SECOND_ORDER_ENVELOPE / alpha ** 2
    bad = np.nonzero((err > second) | (second > 1.0 / (3.0 * alpha)))[0]
    idx = 0 if bad.size == 0 else min(bad[-1] + 1, beta.size - 1)
    b = float(beta[idx])
    L_q = scales(particle, g, hbar).L_q
    paper_fm = PAPER_HIGH_FLIGHT_FM.get(particle.name, math.nan)
    return HighFlightValidity(b * L_q, b, 4.0 / 3.0 * b ** 1.5, paper_fm * 1e-15)
