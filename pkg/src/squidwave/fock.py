"""Truncated Fock-space linear algebra for one and two field modes.

Operators are plain ``numpy`` arrays. States are small frozen wrappers
that validate hermiticity, trace and positivity when built and keep a
read-only copy of the density matrix.

Two-mode matrices use the composite index ``i = n_A * d + n_B``: mode A
is the slow index, mode B the fast one.
"""

from dataclasses import dataclass, field
from math import lgamma
from typing import Any, Optional

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, DomainError, TruncationError
from .special import MAX_DEGREE, laguerre_table

DEFAULT_DIM = 40
TAIL_TOLERANCE = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = -1e-10

FACTORIZABLE = "factorizable"
SEPARABLE = "separable"
ENTANGLED = "entangled"
CORRELATION_CLASSES = (FACTORIZABLE, SEPARABLE, ENTANGLED)


def _frozen(rho):
    rho = np.array(rho, dtype=complex)
    rho.flags.writeable = False
    return rho


def _check_density(rho):
    if not np.all(np.isfinite(rho)):
        raise DomainError("density matrix has non-finite entries")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > HERMITIAN_TOL:
        raise DomainError(f"density matrix is not hermitian (deviation {herm:.3g})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise DomainError(f"density matrix trace is {tr!r}, expected 1")
    lowest = np.linalg.eigvalsh(rho).min()
    if lowest < PSD_TOL:
        raise DomainError(f"density matrix has negative eigenvalue {lowest:.3g}")


@dataclass(frozen=True)
class SingleModeState:
    """Density matrix of one truncated mode.

    ``provenance`` records how the state was built, e.g. ``("number", 3)``
    or ``("coherent", 1+0j)``. It is ``None`` for arbitrary matrices.
    """

    rho: np.ndarray
    provenance: Optional[Any] = field(default=None, compare=False)

    def __post_init__(self):
        rho = _frozen(self.rho)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 2:
            raise DomainError(f"expected a square matrix of size >= 2, got {rho.shape}")
        _check_density(rho)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self):
        return self.rho.shape[0]

    def purity(self):
        return float(np.real(np.vdot(self.rho, self.rho)))


@dataclass(frozen=True)
class TwoModeState:
    """Density matrix on the product of two truncated modes of dimension ``dim``.

    ``correlation_class`` is declared by whoever builds the state and is
    never recomputed.
    """

    rho: np.ndarray
    correlation_class: str
    provenance: Optional[Any] = field(default=None, compare=False)

    def __post_init__(self):
        rho = _frozen(self.rho)
        size = rho.shape[0] if rho.ndim == 2 else -1
        d = int(round(np.sqrt(size))) if size > 0 else 0
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or d * d != size or d < 2:
            raise DomainError(f"expected a (d*d, d*d) matrix, got {rho.shape}")
        if self.correlation_class not in CORRELATION_CLASSES:
            raise DomainError(f"unknown correlation class {self.correlation_class!r}")
        _check_density(rho)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self):
        return int(round(np.sqrt(self.rho.shape[0])))

    def purity(self):
        return float(np.real(np.vdot(self.rho, self.rho)))


def _check_dim(dim):
    if int(dim) != dim or dim < 2:
        raise DomainError(f"Fock dimension must be an integer >= 2, got {dim}")


def annihilation(dim):
    """Truncated annihilation operator, ``<m|a|n> = sqrt(n) delta_{m, n-1}``."""
    _check_dim(dim)
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def creation(dim):
    return annihilation(dim).conj().T


def number_operator(dim):
    _check_dim(dim)
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def number_state(n, dim=DEFAULT_DIM):
    """Projector ``|n><n|``."""
    _check_dim(dim)
    if int(n) != n or not 0 <= n < dim:
        raise DomainError(f"photon number {n} is outside [0, {dim})")
    rho = np.zeros((dim, dim), dtype=complex)
    rho[n, n] = 1.0
    return SingleModeState(rho, provenance=("number", int(n)))


def coherent_tail_weight(amplitude, dim):
    """Poisson weight lost when a coherent state is cut at ``dim`` levels."""
    mean = abs(amplitude) ** 2
    n = np.arange(dim)
    kept = np.exp(-mean + n * np.log(mean) - [lgamma(k + 1) for k in n]) if mean > 0 else (n == 0)
    return max(0.0, 1.0 - float(np.sum(kept)))


def coherent_vector(amplitude, dim=DEFAULT_DIM):
    """Normalized truncated ket ``|A>``.

    Raises
    ------
    TruncationError
        If more than ``TAIL_TOLERANCE`` of the photon-number weight lies
        at or above ``dim``.
    """
    _check_dim(dim)
    amplitude = complex(amplitude)
    if not np.isfinite(amplitude):
        raise DomainError("coherent amplitude must be finite")
    tail = coherent_tail_weight(amplitude, dim)
    if tail >= TAIL_TOLERANCE:
        raise TruncationError(
            f"|A|={abs(amplitude):.4g} loses weight {tail:.3g} at dim={dim}; raise dim"
        )
    n = np.arange(dim)
    # A^n / sqrt(n!) built by cumulative product to avoid overflow and 0**0
    ratios = np.ones(dim, dtype=complex)
    ratios[1:] = amplitude / np.sqrt(n[1:])
    ket = np.exp(-abs(amplitude) ** 2 / 2) * np.cumprod(ratios)
    return ket / np.linalg.norm(ket)


def coherent_state(amplitude, dim=DEFAULT_DIM):
    ket = coherent_vector(amplitude, dim)
    return SingleModeState(np.outer(ket, ket.conj()), provenance=("coherent", complex(amplitude)))


def displacement_exact(x, dim=DEFAULT_DIM):
    """Displacement operator ``D(x)`` from its closed-form matrix elements.

    For ``m >= n``::

        <m|D(x)|n> = sqrt(n!/m!) x^(m-n) exp(-|x|^2/2) L_n^(m-n)(|x|^2)

    and ``<n|D(x)|m> = (-1)^(m-n) conj(<m|D(x)|n>)``. Every entry is the
    untruncated value, so the matrix is the exact operator restricted to
    the first ``dim`` levels rather than the exponential of a truncated
    generator.
    """
    _check_dim(dim)
    if dim - 1 > MAX_DEGREE:
        raise DomainError(f"dim={dim} needs Laguerre degrees above {MAX_DEGREE}")
    x = complex(x)
    r2 = abs(x) ** 2
    table = laguerre_table(r2, dim - 1, dim - 1)
    m, n = np.indices((dim, dim))
    # elem[m, n] holds <max(m,n)| D(x) |min(m,n)>
    kk = np.abs(m - n)
    nn = np.minimum(m, n)
    lg = np.array([lgamma(j + 1) for j in range(dim)])
    powers = np.cumprod(np.r_[1.0 + 0j, np.full(dim - 1, x)])
    elem = np.exp(0.5 * (lg[nn] - lg[nn + kk]) - r2 / 2) * powers[kk] * table[nn, kk]
    sign = np.where(kk % 2 == 0, 1.0, -1.0)
    return np.where(m >= n, elem, sign * np.conj(elem))


def displacement_expm(x, dim=DEFAULT_DIM):
    """``exp(x a^dag - x* a)`` of the truncated generator (scipy Pade expm)."""
    a = annihilation(dim)
    x = complex(x)
    return scipy.linalg.expm(x * a.conj().T - np.conj(x) * a)


def tensor(a, b):
    """Product state ``a (x) b`` with mode A as the slow index."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"mode dimensions differ: {a.dim} vs {b.dim}")
    prov = None
    if a.provenance is not None and b.provenance is not None:
        prov = ("factorized", (a.provenance, b.provenance))
    return TwoModeState(np.kron(a.rho, b.rho), FACTORIZABLE, provenance=prov)


def partial_trace(state, mode):
    """Reduced state of the mode that is kept.

    Parameters
    ----------
    state : TwoModeState
    mode : {"A", "B"}
        The mode to trace out. ``partial_trace(rho, "B")`` is rho_A.
    """
    d = state.dim
    r = state.rho.reshape(d, d, d, d)  # [nA, nB, mA, mB]
    if mode == "B":
        red = np.einsum("ikjk->ij", r)
    elif mode == "A":
        red = np.einsum("kikj->ij", r)
    else:
        raise DomainError(f"mode must be 'A' or 'B', got {mode!r}")
    return SingleModeState(red)


def expect(state, op):
    """``Tr(rho op)`` for a single- or two-mode state."""
    op = np.asarray(op)
    rho = state.rho
    if op.shape != rho.shape:
        raise DimensionMismatch(f"operator shape {op.shape} does not match state {rho.shape}")
    return complex(np.sum(rho * op.T))


def expect_product(state, op_a, op_b):
    """``Tr[rho (op_a (x) op_b)]`` without forming the Kronecker product."""
    d = state.dim
    if np.shape(op_a) != (d, d) or np.shape(op_b) != (d, d):
        raise DimensionMismatch(f"operators must be {d}x{d}")
    r = state.rho.reshape(d, d, d, d)
    return complex(np.einsum("ikjl,ji,lk->", r, op_a, op_b, optimize=True))
