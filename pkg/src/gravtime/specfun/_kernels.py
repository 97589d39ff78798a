"""Scalar kernels for Airy functions and Bessel functions of order 1/3.

Every routine here is written in the numba-compatible subset of Python and
passed through :func:`gravtime._jit.njit`. Only real, non-negative Bessel
arguments are handled; the order is fixed at 1/3 so the Temme series needs
no general gamma-function evaluation.

Branches
--------
Bessel J, Y (order 1/3):
    x < 2          Temme series for Y plus CF1 for J'/J
    2 <= x < 25    Steed's complex continued fraction (CF2) plus CF1
    x >= 25        Hankel asymptotic expansion
Bessel I, K (order 1/3), exponentially scaled:
    x < 2          Temme series for K plus CF1 for I'/I
    2 <= x < 30    Temme/Steed continued fraction for K plus CF1
    x >= 30        large-argument asymptotic expansion
Airy Ai, Ai':
    |x| <= 2       Maclaurin series from the Airy ODE recursion
    2 < |x| <= 9   via K_{1/3} (x > 0) or J_{1/3}, Y_{1/3} (x < 0)
    |x| > 9        asymptotic expansions; oscillatory phase reduced in
                   double-double arithmetic
"""
import math

from gravtime._jit import njit

PI = math.pi
SQRT3 = math.sqrt(3.0)
GAMMA_1_3 = 2.6789385347077476337
GAMMA_2_3 = 1.3541179394264004169
NU = 1.0 / 3.0

AI0 = 1.0 / (3.0 ** (2.0 / 3.0) * GAMMA_2_3)
AIP0 = -1.0 / (3.0 ** (1.0 / 3.0) * GAMMA_1_3)

# Temme-series gamma combinations for mu = 1/3
_GAMPL = 3.0 / GAMMA_1_3  # 1/Gamma(1 + mu)
_GAMMI = 1.0 / GAMMA_2_3  # 1/Gamma(1 - mu)
_GAM1 = (_GAMMI - _GAMPL) / (2.0 * NU)
_GAM2 = 0.5 * (_GAMMI + _GAMPL)

EPS = 1.0e-16
FPMIN = 1.0e-300
MAXIT = 100000

X_TEMME = 2.0
X_HANKEL_J = 25.0
X_ASYM_I = 30.0
X_AIRY_SERIES = 2.0
X_AIRY_ASYM = 9.0

# 2/3 and 2*pi split for double-double phase reduction
_TWO_THIRDS_HI = 0.6666666666666666
_TWO_THIRDS_LO = 3.700743415417188e-17
_TWOPI_1 = 6.283185243606567
_TWOPI_2 = 6.357301884918343e-08
_TWOPI_3 = 2.4492935982947064e-16
_PI_4_HI = 0.7853981633974483
_PI_4_LO = 3.061616997868383e-17
_SPLITTER = 134217729.0  # 2**27 + 1


@njit
def _cf1_j(x):
    """Continued fraction for J'_nu/J_nu; returns (ratio, sign of J)."""
    xi = 1.0 / x
    xi2 = 2.0 * xi
    isign = 1.0
    h = NU * xi
    if h < FPMIN:
        h = FPMIN
    b = xi2 * NU
    d = 0.0
    c = h
    for _ in range(MAXIT):
        b += xi2
        d = b - d
        if abs(d) < FPMIN:
            d = FPMIN
        c = b - 1.0 / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        dl = c * d
        h = dl * h
        if d < 0.0:
            isign = -isign
        if abs(dl - 1.0) < EPS:
            break
    return h, isign


@njit
def _hankel_pq(nu, x):
    mu4 = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    t = 1.0
    last = 1.0e300
    for k in range(1, 200):
        t = t * (mu4 - (2.0 * k - 1.0) ** 2) / (k * 8.0 * x)
        at = abs(t)
        if at > last:
            break
        last = at
        r = k % 4
        if r == 1:
            q += t
        elif r == 2:
            p -= t
        elif r == 3:
            q -= t
        else:
            p += t
        if at < 1.0e-17:
            break
    return p, q


@njit
def _hankel_jy(nu, x):
    p, q = _hankel_pq(nu, x)
    phi = (0.5 * nu + 0.25) * PI
    cx = math.cos(x)
    sx = math.sin(x)
    cp = math.cos(phi)
    sp = math.sin(phi)
    cchi = cx * cp + sx * sp
    schi = sx * cp - cx * sp
    amp = math.sqrt(2.0 / (PI * x))
    return amp * (p * cchi - q * schi), amp * (p * schi + q * cchi)


@njit
def jy13(x):
    """J, Y, J', Y' of order 1/3 at x > 0."""
    if x >= X_HANKEL_J:
        j, y = _hankel_jy(NU, x)
        jm, ym = _hankel_jy(NU - 1.0, x)
        return j, y, jm - NU / x * j, ym - NU / x * y
    xi = 1.0 / x
    xi2 = 2.0 * xi
    w = xi2 / PI
    f, isign = _cf1_j(x)
    xmu = NU
    xmu2 = xmu * xmu
    if x < X_TEMME:
        x2 = 0.5 * x
        pimu = PI * xmu
        fact = pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = math.sinh(e) / e if abs(e) > EPS else 1.0
        ff = 2.0 / PI * fact * (_GAM1 * math.cosh(e) + _GAM2 * fact2 * d)
        e = math.exp(e)
        p = e / (_GAMPL * PI)
        q = 1.0 / (e * PI * _GAMMI)
        pimu2 = 0.5 * pimu
        fact3 = math.sin(pimu2) / pimu2
        r = PI * pimu2 * fact3 * fact3
        c = 1.0
        d = -x2 * x2
        s = ff + r * q
        s1 = p
        for i in range(1, MAXIT):
            ff = (i * ff + p + q) / (i * i - xmu2)
            c *= d / i
            p /= i - xmu
            q /= i + xmu
            dl = c * (ff + r * q)
            s += dl
            dl1 = c * p - i * dl
            s1 += dl1
            if abs(dl) < (1.0 + abs(s)) * EPS:
                break
        rymu = -s
        ry1 = -s1 * xi2
        rymup = xmu * xi * rymu - ry1
        rjmu = w / (rymup - f * rymu)
    else:
        a = 0.25 - xmu2
        p = -0.5 * xi
        q = 1.0
        br = 2.0 * x
        bi = 2.0
        fact = a * xi / (p * p + q * q)
        cr = br + q * fact
        ci = bi + p * fact
        den = br * br + bi * bi
        dr = br / den
        di = -bi / den
        dlr = cr * dr - ci * di
        dli = cr * di + ci * dr
        temp = p * dlr - q * dli
        q = p * dli + q * dlr
        p = temp
        for i in range(2, MAXIT):
            a += 2.0 * (i - 1)
            bi += 2.0
            dr = a * dr + br
            di = a * di + bi
            if abs(dr) + abs(di) < FPMIN:
                dr = FPMIN
            fact = a / (cr * cr + ci * ci)
            cr = br + cr * fact
            ci = bi - ci * fact
            if abs(cr) + abs(ci) < FPMIN:
                cr = FPMIN
            den = dr * dr + di * di
            dr /= den
            di /= -den
            dlr = cr * dr - ci * di
            dli = cr * di + ci * dr
            temp = p * dlr - q * dli
            q = p * dli + q * dlr
            p = temp
            if abs(dlr - 1.0) + abs(dli) < EPS:
                break
        gam = (p - f) / q
        rjmu = math.sqrt(w / ((p - f) * gam + q))
        if isign < 0.0:
            rjmu = -rjmu
        rymu = rjmu * gam
        rymup = rymu * (p + q / gam)
        ry1 = xmu * xi * rymu - rymup
    return rjmu, rymu, f * rjmu, xmu * xi * rymu - ry1


@njit
def _asym_ik_sums(nu, x):
    mu4 = 4.0 * nu * nu
    si = 1.0
    sk = 1.0
    t = 1.0
    last = 1.0e300
    for k in range(1, 200):
        t = t * (mu4 - (2.0 * k - 1.0) ** 2) / (k * 8.0 * x)
        at = abs(t)
        if at > last:
            break
        last = at
        sk += t
        if k % 2 == 1:
            si -= t
        else:
            si += t
        if at < 1.0e-17:
            break
    return si, sk


@njit
def k13_scaled(x):
    """exp(x)*K_{1/3}(x) and exp(x)*K'_{1/3}(x) at x > 0."""
    xi = 1.0 / x
    xmu = NU
    xmu2 = xmu * xmu
    if x >= X_ASYM_I:
        _, sk = _asym_ik_sums(NU, x)
        _, skm = _asym_ik_sums(NU - 1.0, x)
        amp = math.sqrt(PI / (2.0 * x))
        k = amp * sk
        km = amp * skm
        return k, -km - NU * xi * k
    if x < X_TEMME:
        x2 = 0.5 * x
        pimu = PI * xmu
        fact = pimu / math.sin(pimu)
        d = -math.log(x2)
        e = xmu * d
        fact2 = math.sinh(e) / e if abs(e) > EPS else 1.0
        ff = fact * (_GAM1 * math.cosh(e) + _GAM2 * fact2 * d)
        s = ff
        e = math.exp(e)
        p = 0.5 * e / _GAMPL
        q = 0.5 / (e * _GAMMI)
        c = 1.0
        d = x2 * x2
        s1 = p
        for i in range(1, MAXIT):
            ff = (i * ff + p + q) / (i * i - xmu2)
            c *= d / i
            p /= i - xmu
            q /= i + xmu
            dl = c * ff
            s += dl
            dl1 = c * (p - i * ff)
            s1 += dl1
            if abs(dl) < abs(s) * EPS:
                break
        ex = math.exp(x)
        rkmu = s * ex
        rk1 = s1 * 2.0 * xi * ex
    else:
        b = 2.0 * (1.0 + x)
        d = 1.0 / b
        h = d
        delh = d
        q1 = 0.0
        q2 = 1.0
        a1 = 0.25 - xmu2
        q = a1
        c = a1
        a = -a1
        s = 1.0 + q * delh
        for i in range(2, MAXIT):
            a -= 2.0 * (i - 1)
            c = -a * c / i
            qnew = (q1 - b * q2) / a
            q1 = q2
            q2 = qnew
            q += c * qnew
            b += 2.0
            d = 1.0 / (b + a * d)
            delh = (b * d - 1.0) * delh
            h += delh
            dels = q * delh
            s += dels
            if abs(dels / s) < EPS:
                break
        h = a1 * h
        rkmu = math.sqrt(PI / (2.0 * x)) / s
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi
    return rkmu, xmu * xi * rkmu - rk1


@njit
def ik13_scaled(x):
    """exp(-x)*I, exp(x)*K, exp(-x)*I', exp(x)*K' of order 1/3 at x > 0."""
    if x >= X_ASYM_I:
        si, sk = _asym_ik_sums(NU, x)
        sim, skm = _asym_ik_sums(NU - 1.0, x)
        ai = 1.0 / math.sqrt(2.0 * PI * x)
        ak = math.sqrt(PI / (2.0 * x))
        i_s = ai * si
        k_s = ak * sk
        return i_s, k_s, ai * sim - NU / x * i_s, -ak * skm - NU / x * k_s
    xi = 1.0 / x
    # CF1 for I'_nu/I_nu
    h = NU * xi
    b = 2.0 * xi * NU
    d = 0.0
    c = h
    for _ in range(MAXIT):
        b += 2.0 * xi
        d = 1.0 / (b + d)
        c = b + 1.0 / c
        dl = c * d
        h = dl * h
        if abs(dl - 1.0) < EPS:
            break
    f = h
    k_s, kp_s = k13_scaled(x)
    # Wronskian I K' - I' K = -1/x fixes the normalisation of I
    i_s = xi / (f * k_s - kp_s)
    return i_s, k_s, f * i_s, kp_s


@njit
def _two_prod(a, b):
    p = a * b
    t = _SPLITTER * a
    ahi = t - (t - a)
    alo = a - ahi
    t = _SPLITTER * b
    bhi = t - (t - b)
    blo = b - bhi
    err = ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo
    return p, err


@njit
def _zeta_and_phase(u):
    """zeta = (2/3) u**1.5 and (zeta - pi/4) reduced mod 2*pi, accurately."""
    s = math.sqrt(u)
    pp, pe = _two_prod(s, s)
    s_lo = ((u - pp) - pe) / (2.0 * s)
    q, qe = _two_prod(u, s)
    q_lo = qe + u * s_lo
    z, ze = _two_prod(_TWO_THIRDS_HI, q)
    z_lo = ze + _TWO_THIRDS_HI * q_lo + _TWO_THIRDS_LO * q
    k = math.floor(z / (_TWOPI_1 + _TWOPI_2) + 0.5)
    r = z - k * _TWOPI_1
    r = r - k * _TWOPI_2
    r = r - k * _TWOPI_3
    r = (r - _PI_4_HI) + (z_lo - _PI_4_LO)
    return z + z_lo, r


@njit
def _airy_series(x):
    # Airy ODE y'' = x y gives a_n = a_{n-3} / (n (n - 1)), a_2 = 0
    am3 = AI0
    am2 = AIP0
    am1 = 0.0
    ai = AI0 + AIP0 * x
    aip = AIP0
    xp = x  # x**(n-2) at the top of the loop
    for n in range(3, 600):
        an = am3 / (n * (n - 1.0))
        xp1 = xp * x  # x**(n-1)
        term_p = n * an * xp1
        ai += an * xp1 * x
        aip += term_p
        am3 = am2
        am2 = am1
        am1 = an
        xp = xp1
        # a_n vanishes for n = 2 mod 3; test only after the n = 1 mod 3 term
        if n % 3 == 1:
            tail = (abs(term_p) + abs(n * am2 * xp / x if x != 0.0 else 0.0)) * (1.0 + abs(x))
            if tail < 1.0e-18 * (abs(ai) + abs(aip)):
                break
    return ai, aip


@njit
def _airy_asym_pos(x):
    zeta = 2.0 / 3.0 * x * math.sqrt(x)
    su = 1.0
    sv = 1.0
    u = 1.0
    last = 1.0e300
    zk = 1.0
    for k in range(1, 80):
        u *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k)
        v = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u
        zk *= zeta
        t = u / zk
        if t > last:
            break
        last = t
        sgn = -1.0 if k % 2 == 1 else 1.0
        su += sgn * t
        sv += sgn * v / zk
        if t < 1.0e-17:
            break
    ez = math.exp(-zeta)
    x4 = x ** 0.25
    c = 0.5 / math.sqrt(PI)
    return c * ez / x4 * su, -c * x4 * ez * sv


@njit
def _airy_asym_neg(u):
    """Ai(-u), Ai'(-u) for large u > 0."""
    zeta, theta = _zeta_and_phase(u)
    ue = 1.0
    uo = 0.0
    ve = 1.0
    vo = 0.0
    uk = 1.0
    zk = 1.0
    last = 1.0e300
    for k in range(1, 80):
        uk *= (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k)
        vk = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * uk
        zk *= zeta
        t = uk / zk
        if t > last:
            break
        last = t
        r = k % 4
        if r == 1:
            uo += t
            vo += vk / zk
        elif r == 2:
            ue -= t
            ve -= vk / zk
        elif r == 3:
            uo -= t
            vo -= vk / zk
        else:
            ue += t
            ve += vk / zk
        if t < 1.0e-17:
            break
    ct = math.cos(theta)
    st = math.sin(theta)
    u4 = u ** 0.25
    rp = 1.0 / math.sqrt(PI)
    return rp / u4 * (ct * ue + st * uo), rp * u4 * (st * ve - ct * vo)


@njit
def airy(x):
    """Ai(x), Ai'(x) for real x."""
    ax = abs(x)
    if ax <= X_AIRY_SERIES:
        return _airy_series(x)
    if x > 0.0:
        if x > X_AIRY_ASYM:
            return _airy_asym_pos(x)
        zeta = 2.0 / 3.0 * x * math.sqrt(x)
        k_s, kp_s = k13_scaled(zeta)
        ez = math.exp(-zeta)
        k = k_s * ez
        kp = kp_s * ez
        ai = math.sqrt(x / 3.0) * k / PI
        aip = (k / (2.0 * math.sqrt(3.0 * x)) + x / SQRT3 * kp) / PI
        return ai, aip
    if ax > X_AIRY_ASYM:
        return _airy_asym_neg(ax)
    u = ax
    zeta = 2.0 / 3.0 * u * math.sqrt(u)
    j, y, jp, yp = jy13(zeta)
    f = j - y / SQRT3
    fp = jp - yp / SQRT3
    su = math.sqrt(u)
    return 0.5 * su * f, -(f / (4.0 * su) + 0.5 * u * fp)


@njit
def airy_array(x, ai, aip):
    for i in range(x.size):
        a, b = airy(x[i])
        ai[i] = a
        aip[i] = b


@njit
def jy13_array(x, j, y, jp, yp):
    for i in range(x.size):
        a, b, c, d = jy13(x[i])
        j[i] = a
        y[i] = b
        jp[i] = c
        yp[i] = d


@njit
def ik13_array(x, i_s, k_s, ip_s, kp_s):
    for n in range(x.size):
        a, b, c, d = ik13_scaled(x[n])
        i_s[n] = a
        k_s[n] = b
        ip_s[n] = c
        kp_s[n] = d
