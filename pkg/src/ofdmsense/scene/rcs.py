"""Monostatic radar cross section of an ellipsoid."""

import numpy as np


def ellipsoid_rcs(a, b, c, theta, phi):
    """RCS (m^2) of an ellipsoid with semi-axes `a`, `b`, `c` along local x, y, z.

    `theta` is the zenith angle of the line of sight from the local z-axis and
    `phi` its aspect angle in the local x-y plane. Broadcasts over array inputs.

        sigma = pi a^2 b^2 c^2 / (a^2 sin^2(t) cos^2(p) + b^2 sin^2(t) sin^2(p) + c^2 cos^2(t))^2
    """
    a, b, c = (np.asarray(x, dtype=float) for x in (a, b, c))
    if np.any(a <= 0) or np.any(b <= 0) or np.any(c <= 0):
        raise ValueError("ellipsoid radii must be positive")
    st2 = np.sin(theta) ** 2
    den = a**2 * st2 * np.cos(phi) ** 2 + b**2 * st2 * np.sin(phi) ** 2 + c**2 * np.cos(theta) ** 2
    return np.pi * a**2 * b**2 * c**2 / den**2
