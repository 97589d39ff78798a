"""Airy functions, Bessel functions of order +-1/3, and Gamma at thirds.

All functions accept scalars or array-likes and return ``float`` for scalar
input and ``numpy.ndarray`` otherwise. Evaluation is done by the kernels in
:mod:`gravtime.specfun._kernels`.
"""
from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from gravtime.specfun import _kernels as _k

__all__ = [
    "SpecFunResult",
    "airy",
    "airy_ai",
    "airy_ai_prime",
    "airy_ai_result",
    "bessel_j_third",
    "bessel_y_third",
    "bessel_i_third",
    "bessel_i_third_difference",
    "bessel_k_third",
    "gamma_thirds",
    "AIRY_MAX_ARG",
    "BESSEL_J_MAX_ARG",
]

AIRY_MAX_ARG = 1.0e6
BESSEL_J_MAX_ARG = 1.0e8
BESSEL_I_MAX_UNSCALED = 700.0
BESSEL_I_MAX_SCALED = 1.0e6

_SIN_PI_3 = math.sqrt(3.0) / 2.0
_K_TO_IDIFF = math.sqrt(3.0) / math.pi  # (2/pi) sin(pi/3)


@dataclass(frozen=True)
class SpecFunResult:
    value: float
    est_error: float


def _prepare(x, lo, hi, name):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name}: argument must be finite")
    if np.any(arr < lo) or np.any(arr > hi):
        raise ValueError(f"{name}: argument outside [{lo}, {hi}]")
    return arr


def _finish(arr, *outs):
    if arr.ndim == 0:
        res = tuple(float(o) for o in outs)
    else:
        res = outs
    return res if len(res) > 1 else res[0]


def airy(x):
    """Return ``(Ai(x), Ai'(x))``. Valid for ``|x| <= 1e6``."""
    arr = _prepare(x, -AIRY_MAX_ARG, AIRY_MAX_ARG, "airy")
    flat = np.ascontiguousarray(arr.ravel())
    ai = np.empty_like(flat)
    aip = np.empty_like(flat)
    _k.airy_array(flat, ai, aip)
    return _finish(arr, ai.reshape(arr.shape), aip.reshape(arr.shape))


def airy_ai(x):
    """Airy function of the first kind, Ai(x).

    Examples
    --------
    >>> round(airy_ai(0.0), 10)
    0.3550280539
    """
    return airy(x)[0]


def airy_ai_prime(x):
    """Derivative Ai'(x)."""
    return airy(x)[1]


def _airy_error_budget(x):
    # Envelope-relative budgets confirmed by the test suite.
    ax = abs(x)
    return 1e-13 if ax <= 50.0 else 1e-11


def airy_ai_result(x):
    """Ai(x) bundled with an absolute error estimate.

    On the oscillatory side the estimate is relative to the modulus
    envelope ``|x|**-0.25 / sqrt(pi)`` rather than to the (possibly zero)
    function value.
    """
    x = float(x)
    val = airy_ai(x)
    if x < -1.0:
        scale = abs(x) ** -0.25 / math.sqrt(math.pi)
    else:
        scale = abs(val)
    return SpecFunResult(val, scale * _airy_error_budget(x))


def _jy(x):
    arr = _prepare(x, 0.0, BESSEL_J_MAX_ARG, "bessel_j_third")
    flat = np.ascontiguousarray(arr.ravel())
    pos = flat > 0.0
    outs = [np.empty_like(flat) for _ in range(4)]
    xp = np.ascontiguousarray(flat[pos])
    tmp = [np.empty_like(xp) for _ in range(4)]
    _k.jy13_array(xp, *tmp)
    # x = 0 limits: J_{1/3} = 0, Y_{1/3} = -inf, derivatives infinite
    zero_vals = (0.0, -np.inf, np.inf, np.inf)
    for o, t, z in zip(outs, tmp, zero_vals):
        o[pos] = t
        o[~pos] = z
    return arr, [o.reshape(arr.shape) for o in outs]


def bessel_j_third(sign, x, derivative=False):
    """Bessel function J_{sign/3}(x) for ``x >= 0``, or its derivative.

    ``sign`` must be +1 or -1. The negative order is formed from the order
    +1/3 pair as ``J_{-1/3} = cos(pi/3) J_{1/3} - sin(pi/3) Y_{1/3}``;
    derivatives come from the same evaluation, not from differencing.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    arr, (j, y, jp, yp) = _jy(x)
    if sign == 1:
        out = jp if derivative else j
    else:
        with np.errstate(invalid="ignore"):
            out = 0.5 * jp - _SIN_PI_3 * yp if derivative else 0.5 * j - _SIN_PI_3 * y
        out = np.where(arr == 0.0, -np.inf if derivative else np.inf, out)
    return _finish(arr, out)


def bessel_y_third(x, derivative=False):
    """Bessel function of the second kind Y_{1/3}(x) (or its derivative)."""
    arr, (_, y, _, yp) = _jy(x)
    return _finish(arr, yp if derivative else y)


def _ik(x, scaled, name):
    hi = BESSEL_I_MAX_SCALED if scaled else BESSEL_I_MAX_UNSCALED
    arr = _prepare(x, 0.0, hi, name)
    flat = np.ascontiguousarray(arr.ravel())
    pos = flat > 0.0
    xp = np.ascontiguousarray(flat[pos])
    tmp = [np.empty_like(xp) for _ in range(4)]
    _k.ik13_array(xp, *tmp)
    i_s, k_s, ip_s, kp_s = tmp
    if not scaled:
        e = np.exp(xp)
        i_s, ip_s = i_s * e, ip_s * e
        k_s, kp_s = k_s / e, kp_s / e
    outs = []
    for t, z in zip((i_s, k_s, ip_s, kp_s), (0.0, np.inf, np.inf, -np.inf)):
        o = np.empty_like(flat)
        o[pos] = t
        o[~pos] = z
        outs.append(o.reshape(arr.shape))
    return arr, flat, outs


def bessel_i_third(sign, x, scaled=False, derivative=False):
    """Modified Bessel function I_{sign/3}(x) for ``x >= 0``.

    With ``scaled=True`` the result is multiplied by ``exp(-x)``, which
    keeps it finite up to ``x = 1e6``; unscaled input is limited to
    ``x <= 700``. The negative order uses
    ``I_{-1/3} = I_{1/3} + (2/pi) sin(pi/3) K_{1/3}``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    arr, _, (i, k, ip, kp) = _ik(x, scaled, "bessel_i_third")
    if sign == 1:
        return _finish(arr, ip if derivative else i)
    if scaled:
        e2 = np.exp(-2.0 * np.asarray(arr, dtype=float))
        k = k * e2
        kp = kp * e2
    with np.errstate(invalid="ignore"):
        out = ip + _K_TO_IDIFF * kp if derivative else i + _K_TO_IDIFF * k
    out = np.where(arr == 0.0, -np.inf if derivative else np.inf, out)
    return _finish(arr, out)


def bessel_i_third_difference(x, scaled=False, derivative=False):
    """``I_{-1/3}(x) - I_{1/3}(x)`` evaluated without cancellation.

    The difference equals ``(2/pi) sin(pi/3) K_{1/3}(x)`` and decays like
    ``exp(-x)``; subtracting two separately computed I values would lose
    every significant digit once ``x`` exceeds about 20. ``scaled`` here
    multiplies by ``exp(+x)`` (the natural scaling of a decaying function).
    """
    arr, _, (_, k, _, kp) = _ik(x, scaled, "bessel_i_third_difference")
    return _finish(arr, _K_TO_IDIFF * (kp if derivative else k))


def bessel_k_third(x, scaled=False, derivative=False):
    """Macdonald function K_{1/3}(x); ``scaled`` multiplies by ``exp(x)``."""
    arr, _, (_, k, _, kp) = _ik(x, scaled, "bessel_k_third")
    return _finish(arr, kp if derivative else k)


_GAMMA_TABLE = {
    Fraction(1, 3): _k.GAMMA_1_3,
    Fraction(2, 3): _k.GAMMA_2_3,
    Fraction(4, 3): _k.GAMMA_1_3 / 3.0,
}


def gamma_thirds(which):
    """Gamma function at 1/3, 2/3 or 4/3.

    ``which`` may be a :class:`fractions.Fraction`, a string such as
    ``"1/3"``, or the float nearest to one of the three values.
    """
    if isinstance(which, float):
        for key in _GAMMA_TABLE:
            if which == float(key):
                return _GAMMA_TABLE[key]
        raise ValueError(f"gamma_thirds: unsupported argument {which!r}")
    try:
        key = Fraction(which)
    except (TypeError, ValueError):
        raise ValueError(f"gamma_thirds: unsupported argument {which!r}") from None
    if key not in _GAMMA_TABLE:
        raise ValueError(f"gamma_thirds: unsupported argument {which!r}")
    return _GAMMA_TABLE[key]
