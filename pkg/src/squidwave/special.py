"""Generalized Laguerre polynomials L_n^alpha(x) for integer alpha.

Non-negative alpha uses the ascending three-term recurrence in n.
Negative alpha is supported only where n + alpha >= 0, through

    L_n^{-k}(x) = (-x)^k (n-k)!/n! L_{n-k}^{k}(x).
"""

from math import lgamma
from typing import NamedTuple

import numpy as np

from .errors import DomainError

#: Largest degree whose recurrence error has been validated.
MAX_DEGREE = 64


class LaguerreOrder(NamedTuple):
    n: int
    alpha: int = 0


def _check_order(n, alpha):
    if int(n) != n or int(alpha) != alpha:
        raise DomainError(f"Laguerre order must be integral, got n={n}, alpha={alpha}")
    if n < 0:
        raise DomainError(f"Laguerre degree must be non-negative, got n={n}")
    if n > MAX_DEGREE:
        raise DomainError(f"Laguerre degree {n} exceeds the validated cap {MAX_DEGREE}")
    if alpha < 0 and n + alpha < 0:
        raise DomainError(f"L_{n}^{alpha} needs n + alpha >= 0")


def _recurrence(n, alpha, x):
    # (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre(n, alpha, x):
    """Evaluate the generalized Laguerre polynomial L_n^alpha at ``x``.

    Parameters
    ----------
    n : int
        Degree, ``0 <= n <= MAX_DEGREE``.
    alpha : int
        Superscript. May be negative provided ``n + alpha >= 0``.
    x : float or array_like
        Evaluation points.

    Returns
    -------
    float or numpy.ndarray
        Same shape as ``x``.

    Raises
    ------
    DomainError
        For a negative degree, a degree above the cap, or
        ``alpha < 0`` with ``n + alpha < 0``.
    """
    _check_order(n, alpha)
    x_arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x_arr)):
        raise DomainError("Laguerre argument must be finite")
    if alpha >= 0:
        out = _recurrence(n, alpha, x_arr)
    else:
        k = -alpha
        scale = np.exp(lgamma(n - k + 1) - lgamma(n + 1))
        out = (-x_arr) ** k * scale * _recurrence(n - k, k, x_arr)
    return out if out.ndim else float(out)


def laguerre_table(x, n_max, alpha_max):
    """Tabulate L_n^alpha(x) for all ``0 <= n <= n_max``, ``0 <= alpha <= alpha_max``.

    The recurrence runs in n with every alpha advanced at once, so the
    cost is O(n_max * alpha_max). Entry ``[n, alpha]`` of the result
    holds L_n^alpha(x).
    """
    _check_order(n_max, 0)
    x = float(x)
    alpha = np.arange(alpha_max + 1, dtype=float)
    table = np.empty((n_max + 1, alpha_max + 1))
    table[0] = 1.0
    if n_max >= 1:
        table[1] = 1.0 + alpha - x
    for k in range(1, n_max):
        table[k + 1] = ((2 * k + 1 + alpha - x) * table[k] - (k + alpha) * table[k - 1]) / (k + 1)
    return table
