"""Independent reference computations used to freeze expected values.

None of these touch the theta-sweep or the congruence reduction used by the
package; they work directly from the definitions.
"""

import numpy as np
from scipy.optimize import minimize


def quadratic_form(t, x):
    """<T x, x> for each row of x."""
    return np.einsum("ij,ij->i", x @ np.asarray(t).T, x.conj())


def grid_radius_c2(t, n_t=1001, n_phi=1000):
    """max |<Tx, x>| over x = (cos s, e^{i phi} sin s), s in [0, pi/2], phi in [0, 2 pi).

    Every unit vector of C^2 equals one of these up to a global phase, which
    does not change |<Tx, x>|.  With ``n_t`` odd the grid contains s = pi/4.
    """
    s = np.linspace(0.0, np.pi / 2, n_t)
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    best = 0.0
    for chunk in np.array_split(s, max(1, n_t // 100)):
        S, P = np.meshgrid(chunk, phi, indexing="ij")
        x = np.stack([np.cos(S).ravel(), (np.exp(1j * P) * np.sin(S)).ravel()], axis=1)
        best = max(best, float(np.max(np.abs(quadratic_form(t, x)))))
    return best


def sampled_radius(t, n_samples=10**6, seed=0, polish=5):
    """Random search over unit vectors, then local polishing of the best hits."""
    t = np.asarray(t, dtype=complex)
    n = t.shape[0]
    rng = np.random.default_rng(seed)
    best_vals, best_x = [], []
    for chunk in np.array_split(np.arange(n_samples), max(1, n_samples // 100_000)):
        x = rng.standard_normal((chunk.size, n)) + 1j * rng.standard_normal((chunk.size, n))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        v = np.abs(quadratic_form(t, x))
        top = np.argsort(v)[-polish:]
        best_vals.extend(v[top])
        best_x.extend(x[top])
    order = np.argsort(best_vals)[-polish:]
    raw = float(np.max(best_vals))

    def neg(z):
        x = z[:n] + 1j * z[n:]
        x = x / np.linalg.norm(x)
        return -abs(np.vdot(x, t @ x))

    polished = raw
    for k in order:
        x0 = best_x[k]
        res = minimize(neg, np.concatenate([x0.real, x0.imag]), method="BFGS", options={"gtol": 1e-12})
        polished = max(polished, -res.fun)
    return raw, polished


def brute_loewner_infimum(p, q, grid):
    """Smallest mu on ``grid`` with mu q - p >= 0 (eigenvalue test)."""
    for mu in grid:
        if np.linalg.eigvalsh(mu * q - p)[0] >= -1e-12 * max(1.0, mu):
            return mu
    return np.inf
