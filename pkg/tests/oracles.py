"""Independent reference computations used by the test-suite.

Nothing here imports the package under test.
"""

import numpy as np


def dirac_velocity_hessian(p, m):
    e = np.sqrt(p * p + m * m)
    return p / e, m * m / e**3, e


def packet_x(x, c, p, s2, t, m):
    v, h, _ = dirac_velocity_hessian(p, m)
    z = s2 + 1j * t * h
    return np.exp(-((x - c - v * t) ** 2) / (2 * z) + 1j * p * x)


def packet_k(k, c, p, s2, t, m):
    v, h, w0 = dirac_velocity_hessian(p, m)
    q = k - p
    return np.exp(-0.5 * s2 * q * q - 1j * q * c - 1j * t * (w0 + v * q + 0.5 * h * q * q))


def _entropy_2d(u, v, sign, step):
    # three-term density: |u1 v2|^2 + |u2 v1|^2 + sign 2 Re(u1* v2* u2 v1)
    a = np.abs(u) ** 2
    b = np.abs(v) ** 2
    cross = np.conj(u) * v
    rho = np.outer(a, b) + np.outer(b, a) + sign * 2 * np.real(np.outer(cross, np.conj(cross)))
    rho = np.clip(rho, 0, None)
    rho /= rho.sum() * step**2
    nz = rho[rho > 0]
    return -np.sum(nz * np.log(nz)) * step**2


def _entropy_1d(f, step):
    rho = np.abs(f) ** 2
    rho /= rho.sum() * step
    nz = rho[rho > 0]
    return -np.sum(nz * np.log(nz)) * step


def collision_entropy_oracle(c1, c2, p1, s2, hbar_over_m, fermion, t, n=2000, half_width=400.0):
    """Brute-force joint and single-particle entropies on a fine grid.

    Returns ``(joint_total, single1_total, single2_total)``.
    """
    m = 1.0 / hbar_over_m
    x = np.linspace(-half_width, half_width, n, endpoint=False)
    dx = x[1] - x[0]
    kw = 12.0 / np.sqrt(s2) + abs(p1)
    k = np.linspace(-kw, kw, n, endpoint=False)
    dk = k[1] - k[0]
    sign = -1.0 if fermion else 1.0
    u, v = packet_x(x, c1, p1, s2, t, m), packet_x(x, c2, -p1, s2, t, m)
    uk, vk = packet_k(k, c1, p1, s2, t, m), packet_k(k, c2, -p1, s2, t, m)
    joint = _entropy_2d(u, v, sign, dx) + _entropy_2d(uk, vk, sign, dk)
    s1 = _entropy_1d(u, dx) + _entropy_1d(uk, dk)
    s2_ = _entropy_1d(v, dx) + _entropy_1d(vk, dk)
    return joint, s1, s2_
