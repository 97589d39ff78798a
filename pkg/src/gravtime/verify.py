"""Cross-module consistency checks.

Each check compares two independent routes to the same quantity (closed
form against quadrature, Bessel against Airy, analytic against finite
differences) and records the measured and the allowed error.
"""
from dataclasses import dataclass, asdict
import math
import time

import numpy as np

from gravtime import specfun, stationary, wavepacket
from gravtime.core_model import G_STANDARD, Scenario, get_particle, scales
from gravtime.specfun import _kernels as _k

__all__ = ["CheckResult", "run_checks", "DEFAULT_TOLERANCES"]

DEFAULT_TOLERANCES = {
    "wronskian": 1e-9,
    "connection": 1e-9,
    "airy_origin": 1e-12,
    "closed_vs_quadrature": 1e-8,
    "dwell_identity": 1e-8,
    "undercurrent": 1e-9,
    "total_current": 1e-12,
    "normalization": 1e-12,
    "zero_flight": 1e-6,
    "high_flight": 0.05,
    "classical_limit": 1e-12,
    "continuity": 1e-6,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    allowed: float
    passed: bool
    seconds: float

    def as_dict(self):
        return asdict(self)


def _rel(a, b):
    return abs(a - b) / abs(b)


def _wronskian(tol):
    x = np.geomspace(1e-3, 1e3, 200)
    j, y, jp, yp = (np.empty_like(x) for _ in range(4))
    _k.jy13_array(x, j, y, jp, yp)
    e1 = np.max(np.abs((j * yp - jp * y) * (math.pi * x / 2.0) - 1.0))
    i_s, k_s, ip_s, kp_s = (np.empty_like(x) for _ in range(4))
    _k.ik13_array(x, i_s, k_s, ip_s, kp_s)
    e2 = np.max(np.abs((i_s * kp_s - ip_s * k_s) * x + 1.0))
    return max(e1, e2)


def _connection(tol):
    # Ai(x) = (1/pi) sqrt(x/3) K_{1/3}(zeta) and
    # Ai(-x) = (sqrt(x)/3) [J_{1/3}(zeta) + J_{-1/3}(zeta)]
    x = np.geomspace(1e-2, 30.0, 120)
    zeta = 2.0 / 3.0 * x ** 1.5
    k = specfun.bessel_k_third(zeta)
    e1 = np.max(np.abs(specfun.airy_ai(x) / (np.sqrt(x / 3.0) * k / math.pi) - 1.0))
    jsum = specfun.bessel_j_third(1, zeta) + specfun.bessel_j_third(-1, zeta)
    envelope = x ** -0.25 / math.sqrt(math.pi)
    e2 = np.max(np.abs(specfun.airy_ai(-x) - np.sqrt(x) / 3.0 * jsum) / envelope)
    return max(e1, e2)


def _airy_origin(tol):
    g13 = specfun.gamma_thirds("1/3")
    g23 = specfun.gamma_thirds("2/3")
    ai0 = 1.0 / (3.0 ** (2.0 / 3.0) * g23)
    aip0 = -1.0 / (3.0 ** (1.0 / 3.0) * g13)
    return max(_rel(specfun.airy_ai(0.0), ai0), _rel(specfun.airy_ai_prime(0.0), aip0))


_SEGMENTS = (
    stationary.rise_time,
    stationary.fall_time,
    stationary.penetrate_time,
    stationary.withdraw_time,
)


def _closed_vs_quadrature(tol):
    n = get_particle("neutron")
    worst = 0.0
    for beta in (1e-4, 1e-2, 1.0, 10.0, 100.0):
        sc = Scenario.from_beta(n, beta)
        for fn in _SEGMENTS:
            worst = max(worst, _rel(fn(sc, method="quadrature"), fn(sc)))
    return worst


def _dwell_identity(tol):
    worst = 0.0
    for name in ("electron", "neutron", "rubidium-87"):
        sc = Scenario.from_beta(get_particle(name), 2.0)
        ref = stationary.penetrate_time(sc) + stationary.withdraw_time(sc)
        worst = max(worst, _rel(stationary.dwell_time(sc), ref))
    return worst


def _undercurrent(tol):
    n = get_particle("neutron")
    sc = Scenario.from_beta(n, 7.5)
    L_q = scales(n).L_q
    closed = stationary.undercurrents(sc)
    za = np.linspace(sc.z_i, sc.z_cap, 50)
    zf = sc.z_cap + np.linspace(0.0, 10.0 * L_q, 50)
    inc, ref = stationary.split_allowed(za, sc)
    pen, wd = stationary.split_forbidden(zf, sc)
    worst = 0.0
    for wave, target in ((inc, closed.j_i), (ref, closed.j_r), (pen, closed.j_p), (wd, closed.j_w)):
        j = stationary.probability_current(wave, sc)
        worst = max(worst, float(np.max(np.abs(j / target - 1.0))))
    return worst


def _total_current(tol):
    n = get_particle("neutron")
    sc = Scenario.from_beta(n, 7.5)
    L_q = scales(n).L_q
    za = np.linspace(sc.z_i, sc.z_cap, 50)
    zf = sc.z_cap + np.linspace(0.0, 10.0 * L_q, 50)
    worst = 0.0
    for wave in (stationary.psi_allowed(za, sc), stationary.psi_forbidden(zf, sc)):
        scale = np.max(np.abs(wave.psi) * np.abs(wave.dpsi_dz))
        worst = max(worst, float(np.max(np.abs(np.imag(np.conj(wave.psi) * wave.dpsi_dz))) / scale))
    return worst


def _normalization(tol):
    sc = Scenario.from_beta(get_particle("neutron"), 3.0)
    worst = 0.0
    for fn in _SEGMENTS:
        a = fn(sc, method="quadrature")
        b = fn(sc, method="quadrature", norm=7.0)
        worst = max(worst, _rel(b, a))
    return worst


def _zero_flight(tol):
    e = get_particle("electron")
    sc = Scenario.from_beta(e, 1e-10)
    return _rel(stationary.qst_total(sc).total, stationary.zero_flight_time(e))


def _high_flight(tol):
    # growth of alpha * |exact - asymptote| across [20, 200]: the maximum
    # over the upper half must not exceed the maximum over the lower half
    alpha = np.linspace(20.0, 200.0, 2000)
    beta = (0.75 * alpha) ** (2.0 / 3.0)
    scaled = alpha * np.abs(stationary.qst_cst_ratio(beta) - stationary.high_flight_ratio(alpha))
    half = alpha.size // 2
    return float(np.max(scaled[half:]) / np.max(scaled[:half]) - 1.0)


def _classical_limit(tol):
    p = wavepacket.WavepacketParams(1.674e-27, G_STANDARD, 1e-6, 0.0, 1.0, hbar=0.0)
    return _rel(wavepacket.return_time_numeric(p), p.cst)


def _continuity(tol):
    p = wavepacket.WavepacketParams(1.674e-27, G_STANDARD, 1e-6, 0.0, 1.0)
    worst = 0.0
    for t in (1e-5, 1e-3, 0.05):
        zc = wavepacket.classical_trajectory(t, p)
        w = wavepacket.packet_width(t, p)
        for off in (-1.5, 0.0, 0.7):
            dR, dJ = wavepacket.continuity_terms(t, zc + off * w, p)
            worst = max(worst, abs(dR + dJ) / max(abs(dR), abs(dJ)))
    return worst


_CHECKS = {
    "wronskian": _wronskian,
    "connection": _connection,
    "airy_origin": _airy_origin,
    "closed_vs_quadrature": _closed_vs_quadrature,
    "dwell_identity": _dwell_identity,
    "undercurrent": _undercurrent,
    "total_current": _total_current,
    "normalization": _normalization,
    "zero_flight": _zero_flight,
    "high_flight": _high_flight,
    "classical_limit": _classical_limit,
    "continuity": _continuity,
}


def run_checks(tolerances=None, only=None):
    """Run every check and return a list of :class:`CheckResult`.

    ``tolerances`` overrides entries of :data:`DEFAULT_TOLERANCES`;
    ``only`` restricts the run to the named checks.
    """
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")
        tol.update(tolerances)
    results = []
    for name, fn in _CHECKS.items():
        if only is not None and name not in only:
            continue
        start = time.perf_counter()
        measured = float(fn(tol[name]))
        elapsed = time.perf_counter() - start
        passed = math.isfinite(measured) and measured <= tol[name]
        results.append(CheckResult(name, measured, tol[name], passed, elapsed))
    return results
