"""Independent reference computations used only by the tests.

None of these call into the code paths they check: the RK4 integrator
works from the weight ODE right-hand side, finite differences only see
function values, and the brute-force minimizer only sees J.
"""

import numpy as np


def rk4_weight(rate, w0, t_final, max_step=1.0):
    """Integrate dW/dt = rate(W) from 0 to ``t_final`` with fixed RK4 steps <= ``max_step``.

    ``w0`` and ``t_final`` may be arrays (one leg per entry); all legs use
    the same number of steps, so each step is at most ``max_step``.
    """
    w = np.array(w0, dtype=float)
    t_final = np.asarray(t_final, dtype=float)
    n = int(np.ceil(np.max(t_final) / max_step))
    h = t_final / n
    for _ in range(n):
        k1 = rate(w)
        k2 = rate(w + 0.5 * h * k1)
        k3 = rate(w + 0.5 * h * k2)
        k4 = rate(w + h * k3)
        w = w + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return w


def central_difference(f, x, rel_step=1e-5):
    """Fourth-order central difference of ``f`` at ``x``."""
    x = np.asarray(x, dtype=float)
    h = rel_step * x
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h)


def brute_force_argmin(f, lo, hi, n=200_001):
    grid = np.linspace(lo, hi, n)
    return grid[int(np.argmin(f(grid)))]
