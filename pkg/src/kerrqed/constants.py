"""Physical constants (CODATA 2018) and unit helpers."""

import math

# Planck constant, J s
PLANCK_H = 6.62607015e-34
# Boltzmann constant, J / K
BOLTZMANN_K = 1.380649e-23

TWO_PI = 2.0 * math.pi


def to_angular(nu_hz):
    """Linear frequency (Hz) -> angular frequency (rad/s)."""
    return TWO_PI * nu_hz


def to_linear(omega):
    """Angular frequency (rad/s) -> linear frequency (Hz)."""
    return omega / TWO_PI
