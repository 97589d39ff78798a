"""The compiled kernels and the pure-Python fallback give the same numbers."""
import json
import os
import subprocess
import sys

import numpy as np
import pytest

from gravtime import _jit

_SCRIPT = r"""
import json
import numpy as np
from gravtime import _jit, stationary
from gravtime.specfun import _kernels as k
from gravtime.core_model import Scenario, get_particle
x = np.concatenate([np.linspace(-60, 20, 97), [-1e5, 0.0, 35.0]])
ai = np.empty_like(x); aip = np.empty_like(x)
k.airy_array(x, ai, aip)
b = np.geomspace(1e-3, 1e3, 41)
out = [np.empty_like(b) for _ in range(8)]
k.jy13_array(b, *out[:4]); k.ik13_array(b, *out[4:])
sc = Scenario.from_beta(get_particle("neutron"), 3.0)
t = stationary.rise_time(sc, method="quadrature")
print(json.dumps({"jit": _jit.JIT_ENABLED, "ai": ai.tolist(), "aip": aip.tolist(),
                  "bessel": [o.tolist() for o in out], "rise": t}))
"""


def _run(disable):
    env = dict(os.environ)
    env.pop("GRAVTIME_DISABLE_JIT", None)
    if disable:
        env["GRAVTIME_DISABLE_JIT"] = "1"
    res = subprocess.run([sys.executable, "-c", _SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def test_flag_parsing(monkeypatch):
    assert isinstance(_jit.DISABLED, bool)
    fn = lambda a: a + 1
    if not _jit.JIT_ENABLED:
        assert _jit.njit(fn) is fn


def test_paths_agree():
    fast = _run(False)
    slow = _run(True)
    assert slow["jit"] is False
    # identical IEEE operations (fastmath off) should agree to the last bits
    np.testing.assert_allclose(fast["ai"], slow["ai"], rtol=1e-14, atol=1e-300)
    np.testing.assert_allclose(fast["aip"], slow["aip"], rtol=1e-14, atol=1e-300)
    for a, b in zip(fast["bessel"], slow["bessel"]):
        np.testing.assert_allclose(a, b, rtol=1e-14)
    assert fast["rise"] == pytest.approx(slow["rise"], rel=1e-14)
