"""Acceptance criteria, one test each, at the stated tolerances.

Every test records a PASS/FAIL line (with the measured quantity) that is
printed in the pytest terminal summary. Run stand-alone with
``python tests/test_acceptance.py`` to get the lines without pytest.
"""
import csv
import io
import math
import time

import mpmath as mp
import numpy as np
import pytest

from gravtime import cli, specfun, stationary as S, wavepacket as W
from gravtime.core_model import G_STANDARD, HBAR, Scenario, get_particle, scales
from gravtime.specfun import _kernels as K

REPORT = []  # (criterion, passed, detail), read by conftest


def record(name, passed, detail):
    REPORT.append((name, bool(passed), detail))
    print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
    assert passed, f"{name}: {detail}"


SEGMENTS = (S.rise_time, S.fall_time, S.penetrate_time, S.withdraw_time)


def test_c01_closed_form_vs_quadrature():
    start = time.perf_counter()
    n = get_particle("neutron")
    worst = 0.0
    for beta in (1e-4, 1e-2, 1.0, 10.0, 100.0):
        sc = Scenario.from_beta(n, beta)
        for fn in SEGMENTS:
            c, q = fn(sc), fn(sc, method="quadrature")
            worst = max(worst, abs(q - c) / c)
    elapsed = time.perf_counter() - start
    record("C1 closed form vs quadrature", worst <= 1e-8 and elapsed < 10.0,
           f"max rel err {worst:.2e} (<= 1e-8), {elapsed:.2f} s (< 10 s)")


def test_c02_dwell_identity():
    worst = 0.0
    for name in ("electron", "neutron", "cesium-133"):
        sc = Scenario.from_beta(get_particle(name), 2.0)
        ref = S.penetrate_time(sc) + S.withdraw_time(sc)
        worst = max(worst, abs(S.dwell_time(sc) - ref) / ref)
    record("C2 dwell identity", worst <= 1e-8, f"max rel err {worst:.2e} over 3 masses (<= 1e-8)")


def test_c03_zero_flight_constant():
    e = get_particle("electron")
    T_q = scales(e).T_q
    total = S.qst_total(Scenario.from_beta(e, 1e-10)).total
    g13 = float(mp.gamma(mp.mpf(1) / 3))
    closed = 4 * math.pi * T_q / (3 ** (1 / 3) * g13) ** 2
    rel = abs(total - closed) / closed
    ratio = S.zero_flight_time(e) / T_q
    printed = {"electron": 1.259e-8 / 1.496e-8, "neutron": 1.028e-9 / 1.221e-9}
    dev = max(abs(ratio - v) for v in printed.values())
    ok = rel <= 1e-6 and dev <= 5e-4 and abs(ratio - 0.84183) <= 5e-4
    record("C3 zero-flight constant", ok,
           f"rel err {rel:.2e} (<= 1e-6); collision/T_q = {ratio:.7f}, "
           f"max |diff| to printed ratios {dev:.1e} (<= 5e-4)")


def test_c04_table_ii_scaling():
    e, n = get_particle("electron"), get_particle("neutron")
    ratio = scales(e).T_q / scales(n).T_q
    printed = 1.496e-8 / 1.221e-9
    rel = abs(ratio - printed) / printed
    factor = scales(e).T_q / 1.496e-8
    record("C4 T_q mass scaling", rel <= 1e-3,
           f"T_q(e)/T_q(n) = {ratio:.4f} vs printed {printed:.4f} (rel {rel:.1e} <= 1e-3); "
           f"absolute T_q mismatch documented: SI/printed = {factor:.3e}")


def test_c05_high_flight_asymptote():
    start = time.perf_counter()
    alpha = np.linspace(20.0, 200.0, 2000)
    beta = (0.75 * alpha) ** (2.0 / 3.0)
    scaled = alpha * np.abs(S.qst_cst_ratio(beta) - S.high_flight_ratio(alpha))
    half = alpha.size // 2
    lo, hi = float(np.max(scaled[:half])), float(np.max(scaled[half:]))
    elapsed = time.perf_counter() - start
    record("C5 high-flight asymptote", hi <= lo and elapsed < 5.0,
           f"max alpha*err on [20,110] = {lo:.3e}, on [110,200] = {hi:.3e} (no growth), {elapsed:.3f} s")


def test_c06_undercurrents():
    n = get_particle("neutron")
    L_q = scales(n).L_q
    sc = Scenario.from_beta(n, 7.5)
    za = np.linspace(sc.z_i, sc.z_cap, 50)
    zf = sc.z_cap + np.linspace(0.0, 10.0 * L_q, 50)
    inc, ref = S.split_allowed(za, sc)
    pen, wd = S.split_forbidden(zf, sc)
    j0 = sc.hbar / (math.pi * n.mass * L_q) * 1.5 ** (4 / 3)
    spread = match = 0.0
    for wave, sign in ((inc, 1), (ref, -1), (pen, 1), (wd, -1)):
        j = S.probability_current(wave, sc)
        spread = max(spread, float((j.max() - j.min()) / abs(j.mean())))
        match = max(match, float(np.max(np.abs(j / (sign * j0) - 1))))
    total = 0.0
    for wave in (S.psi_allowed(za, sc), S.psi_forbidden(zf, sc)):
        scale = np.max(np.abs(wave.psi) * np.abs(wave.dpsi_dz))
        total = max(total, float(np.max(np.abs(np.imag(np.conj(wave.psi) * wave.dpsi_dz))) / scale))
    record("C6 undercurrent structure", spread <= 1e-9 and match <= 1e-9 and total <= 1e-12,
           f"z-spread {spread:.1e}, closed-form mismatch {match:.1e} (<= 1e-9); total current {total:.1e} (<= 1e-12)")


def test_c07_special_function_identities():
    x = np.geomspace(1e-3, 1e3, 300)
    j, y, jp, yp = (np.empty_like(x) for _ in range(4))
    K.jy13_array(x, j, y, jp, yp)
    jm = 0.5 * j - math.sqrt(3) / 2 * y
    jmp = 0.5 * jp - math.sqrt(3) / 2 * yp
    w_j = np.max(np.abs((j * jmp - jm * jp) * math.pi * x / (-2 * math.sin(math.pi / 3)) - 1))
    i_s, k_s, ip_s, kp_s = (np.empty_like(x) for _ in range(4))
    K.ik13_array(x, i_s, k_s, ip_s, kp_s)
    w_i = np.max(np.abs((i_s * kp_s - ip_s * k_s) * x + 1))
    u = np.geomspace(1e-3, 30.0, 300)
    zeta = 2 / 3 * u ** 1.5
    conn_a = np.max(np.abs(np.sqrt(u) / 3 * (specfun.bessel_j_third(1, zeta) + specfun.bessel_j_third(-1, zeta))
                           - specfun.airy_ai(-u)) / (np.maximum(u, 1) ** -0.25 / math.sqrt(math.pi)))
    conn_f = np.max(np.abs(np.sqrt(u) / 3 * specfun.bessel_i_third_difference(zeta) / specfun.airy_ai(u) - 1))
    ai0 = 1 / (3 ** (2 / 3) * float(mp.gamma(mp.mpf(2) / 3)))
    aip0 = -1 / (3 ** (1 / 3) * float(mp.gamma(mp.mpf(1) / 3)))
    origin = max(abs(specfun.airy_ai(0.0) / ai0 - 1), abs(specfun.airy_ai_prime(0.0) / aip0 - 1))
    worst = max(w_j, w_i, conn_a, conn_f)
    record("C7 special-function identities", worst <= 1e-9 and origin <= 1e-12,
           f"Wronskians/connections max {worst:.1e} (<= 1e-9); Ai(0), Ai'(0) {origin:.1e} (<= 1e-12)")


def test_c08_wavepacket():
    p0 = W.WavepacketParams(1.674e-27, G_STANDARD, 1e-6, 0.0, 1.3, hbar=0.0)
    classical = abs(W.return_time_numeric(p0) - p0.cst) / p0.cst
    rng = np.random.default_rng(20240611)
    names = ["electron", "neutron", "rubidium-87", "cesium-133"]
    early = 0
    tested = 0
    while tested < 100:
        part = get_particle(names[rng.integers(len(names))])
        d = 10 ** rng.uniform(-7, -3)
        v = 10 ** rng.uniform(-1, 1)
        p = W.WavepacketParams.for_particle(part, d, v)
        try:
            t = W.return_time_numeric(p)
        except ValueError:
            continue
        tested += 1
        early += t < p.cst
    p = W.WavepacketParams.for_particle(get_particle("neutron"), 1e-6, 1.0)
    t = 0.05
    z = W.classical_trajectory(t, p) + 0.6 * W.packet_width(t, p)
    hz = 2e-2 * W.packet_width(t, p)
    ht = hz / abs(p.v_i - p.g * t)
    r1 = W.continuity_residual(t, z, p, dt=ht, dz=hz)
    r2 = W.continuity_residual(t, z, p, dt=ht / 2, dz=hz / 2)
    order = math.log2(abs(r1 / r2))
    ok = classical <= 1e-12 and early == 0 and abs(order - 2) < 0.1
    record("C8 wavepacket", ok,
           f"hbar=0 return rel err {classical:.1e} (<= 1e-12); {early}/100 early returns; "
           f"continuity convergence order {order:.3f}")


def _exponent(fn, base):
    full = fn(base) / base.cst - 1
    half = fn(W.WavepacketParams(base.m, base.g, base.d, base.z_i, base.v_i, base.hbar / 2)) / base.cst - 1
    return math.log2(full / half)


def test_c09_interpretation_gap():
    base = W.WavepacketParams.for_particle(get_particle("neutron"), 1e-6, 1.0)
    e_b = _exponent(W.qst_wp_bohmian, base)
    e_c = _exponent(W.qst_wp_copenhagen, base)
    # numeric Bohmian return, for the record: order 1 when dispersion
    # dominates, order 2 for slowly spreading packets
    e_num_fast = _exponent(W.return_time_numeric, base)
    slow = W.WavepacketParams.for_particle(get_particle("rubidium-87"), 1e-4, 1.0)
    e_num_slow = _exponent(W.return_time_numeric, slow)
    record("C9 hbar scaling", abs(e_b - 1) <= 0.05 and abs(e_c - 2) <= 0.05,
           f"Bohmian exponent {e_b:.4f}, Copenhagen {e_c:.4f}; "
           f"numeric return: {e_num_fast:.3f} (fast spreading), {e_num_slow:.3f} (slow spreading)")


def _sweep(figure, beta_max, points):
    cfg = dict(cli.DEFAULTS)
    cfg.update(figure=figure, beta_min=0.0, beta_max=beta_max, points=points)
    rows, _ = cli.cmd_sweep(cfg)
    text = cli.render(rows, {}, "csv")
    return list(csv.DictReader(io.StringIO(text)))


def test_c10_figure_data():
    rows3 = _sweep(3, 400.0, 801)
    series = {}
    for r in rows3:
        series.setdefault(float(r["mass_factor"]), []).append((float(r["cst_over_Tq"]), float(r["qst_over_cst"])))
    tail = [abs(v - 1) for x, v in series[1.0] if x > 50]
    relaxed = max(tail)
    # relaxation envelope on a common window: lighter is slower
    env = {k: max(abs(v - 1) for x, v in s if 20 <= x <= 80) for k, s in series.items()}
    ordered = env[0.1] > env[1.0] > env[10.0]
    rows2 = _sweep(2, 100.0, 11)
    T_q = scales(get_particle("neutron")).T_q
    zf = S.zero_flight_time(get_particle("neutron")) / T_q
    intercept_err = 0.0
    for r in rows2:
        if float(r["cst_over_Tq"]) == 0.0:
            k = float(r["mass_factor"])
            intercept_err = max(intercept_err, abs(float(r["qst_over_Tq"]) / (zf * k ** (-1 / 3)) - 1))
    ok = relaxed < 0.02 and ordered and intercept_err < 1e-12
    record("C10 figure data", ok,
           f"max |ratio-1| for cst/T_q > 50: {relaxed:.2e} (< 0.02); envelopes m/10, m, 10m = "
           f"{env[0.1]:.2e}, {env[1.0]:.2e}, {env[10.0]:.2e}; intercept rel err {intercept_err:.1e}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    raise SystemExit(1 if failed else 0)
