"""Classical and quantum scattering times of particles under uniform gravity.

Submodules
----------
core_model   constants, particles, scenarios, quantum scales
specfun      Airy and order-1/3 Bessel functions
quadrature   adaptive Gauss-Kronrod integration and root bracketing
wavepacket   Gaussian packet, Bohmian trajectory and return times
stationary   stationary states, undercurrents and flight-time segments
tables       published table reproductions
verify       cross-route consistency checks
cli          command-line front end
"""
__version__ = "0.1.0"

from gravtime.core_model import (  # noqa: E402
    HBAR,
    G_STANDARD,
    Particle,
    Scenario,
    ValidationError,
    cst,
    dimensionless,
    get_particle,
    scales,
)

__all__ = [
    "__version__",
    "HBAR",
    "G_STANDARD",
    "Particle",
    "Scenario",
    "ValidationError",
    "cst",
    "dimensionless",
    "get_particle",
    "scales",
]
