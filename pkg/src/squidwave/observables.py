"""Josephson-current observables of two rings driven by correlated modes.

Each ring's phase operator is::

    theta(t) = omega_ring t + q (a^dag e^{i omega_mode t} + a e^{-i omega_mode t})

so ``exp(i theta) = exp(i omega_ring t) D(lam)`` with
``lam = i q exp(i omega_mode t)``. Every expectation value of the current
``I sin(theta)`` therefore reduces to displacement expectations (Weyl
functions).

Two independent routes are provided:

* closed forms (``*_analytic``, ``*_sep``, ``*_ent``, :func:`i_cross`),
* a truncated-matrix route (``*_numeric``) built from
  :func:`squidwave.fock.displacement_exact`.

:func:`spectral_observables` is a third route that diagonalizes the
truncated phase operator and takes its matrix sine directly.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import fock
from .errors import DomainError, NoAnalyticForm
from .special import laguerre
from .states import EntangledNormalization

IMAG_TOL = 1e-10
COLUMNS = ("i_a", "i_b", "i_a2", "i_b2", "i_ab")


@dataclass(frozen=True)
class RingConfig:
    """One SQUID ring and the mode that irradiates it.

    All quantities are dimensionless (natural units, currents in units of
    the critical current scale).
    """

    omega_ring: float
    omega_mode: float
    critical_current: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        if not self.critical_current > 0:
            raise DomainError(f"critical current must be positive, got {self.critical_current}")
        if not self.q >= 0:
            raise DomainError(f"coupling q must be non-negative, got {self.q}")
        if not (np.isfinite(self.omega_ring) and np.isfinite(self.omega_mode)):
            raise DomainError("ring frequencies must be finite")


@dataclass(frozen=True)
class ObservableSample:
    t: float
    i_a: float
    i_b: float
    i_a2: float
    i_b2: float
    i_ab: float
    ratio_r: float  # nan when undefined

    @property
    def ratio_defined(self):
        return not np.isnan(self.ratio_r)


# -- single ring ----------------------------------------------------------


def classical_current(ring, amplitude_2eA, t):
    """Current of a ring in a classical field, ``I sin(w_A t + 2eA sin(w_1 t))``."""
    t = np.asarray(t, dtype=float)
    return ring.critical_current * np.sin(
        ring.omega_ring * t + amplitude_2eA * np.sin(ring.omega_mode * t)
    )


def lambda_arg(ring, t):
    """Displacement argument ``i q exp(i omega_mode t)``."""
    return 1j * ring.q * np.exp(1j * ring.omega_mode * np.asarray(t, dtype=float))


def weyl(state, x):
    """Weyl function ``Tr[rho D(x)]`` of a single-mode state."""
    return fock.expect(state, fock.displacement_exact(x, state.dim))


def weyl_two_mode(state, xa, xb):
    """``Tr[rho D(xa) (x) D(xb)]``."""
    d = state.dim
    return fock.expect_product(state, fock.displacement_exact(xa, d), fock.displacement_exact(xb, d))


def _real(value, what):
    if abs(value.imag) > IMAG_TOL * max(1.0, abs(value.real)):
        raise ArithmeticError(f"{what} has imaginary residue {value.imag:.3g}")
    return float(value.real)


def mean_current_numeric(state, ring, t):
    lam = complex(lambda_arg(ring, t))
    w = weyl(state, lam)
    return ring.critical_current * float(np.imag(np.exp(1j * ring.omega_ring * t) * w))


def second_moment_numeric(state, ring, t):
    """``I^2 <sin^2 theta> = I^2/2 (1 - Re[e^{2 i w t} W(2 lam)])``."""
    lam = complex(lambda_arg(ring, t))
    w2 = weyl(state, 2 * lam)
    return 0.5 * ring.critical_current**2 * (1.0 - float(np.real(np.exp(2j * ring.omega_ring * t) * w2)))


def current_product_numeric(state, ring_a, ring_b, t):
    """``I1 I2 Tr[rho sin(theta_A) sin(theta_B)]`` via four two-mode Weyl values."""
    lam_a = complex(lambda_arg(ring_a, t))
    lam_b = complex(lambda_arg(ring_b, t))
    total = 0j
    for s in (1, -1):
        for s2 in (1, -1):
            phase = np.exp(1j * (s * ring_a.omega_ring + s2 * ring_b.omega_ring) * t)
            total += s * s2 * phase * weyl_two_mode(state, s * lam_a, s2 * lam_b)
    value = -0.25 * ring_a.critical_current * ring_b.critical_current * total
    return _real(value, "current product")


def ratio_r(i_ab, i_a, i_b, epsilon_r=None):
    """Correlation ratio ``i_ab / (i_a i_b)``, nan where ``|i_a i_b| < epsilon_r``.

    ``epsilon_r`` defaults to ``1e-9``, i.e. ``1e-9 I1 I2`` for unit
    critical currents. Callers with other currents should pass their own.
    """
    if epsilon_r is None:
        epsilon_r = 1e-9
    i_ab, i_a, i_b = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (i_ab, i_a, i_b)))
    den = i_a * i_b
    ok = np.abs(den) >= epsilon_r
    out = np.full(den.shape, np.nan)
    np.divide(i_ab, den, out=out, where=ok)
    return out if out.ndim else float(out)


# -- closed forms: number states -----------------------------------------


def _number_pair_laguerre(spec, x):
    return laguerre(spec.n1, 0, x) + laguerre(spec.n2, 0, x)


def mean_current_number_analytic(spec, ring, t):
    """``(I/2) e^{-q^2/2} [L_N1(q^2) + L_N2(q^2)] sin(w_ring t)``.

    Holds for both the separable and the entangled number-state pair,
    whose reduced states coincide. Independent of the mode frequency.
    """
    q2 = ring.q**2
    t = np.asarray(t, dtype=float)
    return (
        0.5
        * ring.critical_current
        * np.exp(-q2 / 2)
        * _number_pair_laguerre(spec, q2)
        * np.sin(ring.omega_ring * t)
    )


def second_moment_number_analytic(spec, ring, t):
    q2 = ring.q**2
    t = np.asarray(t, dtype=float)
    envelope = 0.5 * np.exp(-2 * q2) * _number_pair_laguerre(spec, 4 * q2)
    return 0.5 * ring.critical_current**2 * (1.0 - envelope * np.cos(2 * ring.omega_ring * t))


def current_product_number_sep(spec, ring_a, ring_b, t):
    """Separable number-state product, proportional to sin(w_A t) sin(w_B t)."""
    qa2, qb2 = ring_a.q**2, ring_b.q**2
    n1, n2 = spec.n1, spec.n2
    lag = 0.5 * (
        laguerre(n1, 0, qa2) * laguerre(n2, 0, qb2) + laguerre(n2, 0, qa2) * laguerre(n1, 0, qb2)
    )
    t = np.asarray(t, dtype=float)
    return (
        ring_a.critical_current
        * ring_b.critical_current
        * np.exp(-(qa2 + qb2) / 2)
        * lag
        * np.sin(ring_a.omega_ring * t)
        * np.sin(ring_b.omega_ring * t)
    )


def beat_frequency(spec, ring_a, ring_b):
    """``(N1 - N2)(omega_1 - omega_2)``, the slow envelope of :func:`i_cross`."""
    return (spec.n1 - spec.n2) * (ring_a.omega_mode - ring_b.omega_mode)


def i_cross(spec, ring_a, ring_b, t):
    """Correction to the current product from the off-diagonal entangled terms.

    ::

        -(I1 I2 / 2) e^{-q^2} L_N1^{N2-N1}(q^2) L_N2^{N1-N2}(q^2)
            [cos(w_A t + w_B t) - (-1)^{N1-N2} cos(w_A t - w_B t)] cos(Omega t)

    One of the two Laguerre factors has a negative superscript. For rings
    with different couplings the Laguerre arguments are ``q_A^2`` and
    ``q_B^2`` and the product is rescaled by ``(q_A / q_B)^(N2 - N1)``,
    which restores the symmetric ``(q_A q_B)^|N1-N2|`` dependence.
    """
    n1, n2 = spec.n1, spec.n2
    qa, qb = ring_a.q, ring_b.q
    k = n2 - n1
    if qa == qb:
        lag = laguerre(n1, k, qa**2) * laguerre(n2, -k, qb**2)
    elif qa == 0 or qb == 0:
        lag = 0.0
    else:
        lag = laguerre(n1, k, qa**2) * laguerre(n2, -k, qb**2) * (qa / qb) ** k
    t = np.asarray(t, dtype=float)
    wa, wb = ring_a.omega_ring * t, ring_b.omega_ring * t
    parity = -1.0 if (n1 - n2) % 2 else 1.0
    bracket = np.cos(wa + wb) - parity * np.cos(wa - wb)
    omega = beat_frequency(spec, ring_a, ring_b)
    return (
        -0.5
        * ring_a.critical_current
        * ring_b.critical_current
        * np.exp(-(qa**2 + qb**2) / 2)
        * lag
        * bracket
        * np.cos(omega * t)
    )


def current_product_number_ent(spec, ring_a, ring_b, t):
    return current_product_number_sep(spec, ring_a, ring_b, t) + i_cross(spec, ring_a, ring_b, t)


def ratio_number_sep(spec, q):
    """Time-independent ``4 L_N1 L_N2 / (L_N1 + L_N2)^2`` at argument ``q^2``."""
    l1, l2 = laguerre(spec.n1, 0, q**2), laguerre(spec.n2, 0, q**2)
    return 4 * l1 * l2 / (l1 + l2) ** 2


# -- closed forms: coherent states ---------------------------------------


def _coherent_term(amplitude, ring, t, q_scale=1, part=np.sin):
    # part(s w t + 2 s q |A| cos(w_mode t - theta)) e^{-(s q)^2/2}, s = q_scale
    q = q_scale * ring.q
    return np.exp(-(q**2) / 2) * part(
        q_scale * ring.omega_ring * t
        + 2 * q * abs(amplitude) * np.cos(ring.omega_mode * t - np.angle(amplitude))
    )


def _coherent_cross_term(spec, ring, t, q_scale=1, part=np.sin):
    # E F e^{-q^2/2}; q_scale=2 with part=cos gives the second-moment analogue
    q = q_scale * ring.q
    r1, r2 = abs(spec.a1), abs(spec.a2)
    th1, th2 = spec.theta1, spec.theta2
    phase = ring.omega_mode * t
    s1, s2 = np.sin(phase - th1), np.sin(phase - th2)
    c1, c2 = np.cos(phase - th1), np.cos(phase - th2)
    e = np.exp(-(r1**2) - r2**2 + 2 * r1 * r2 * np.cos(th1 - th2))
    hyper = np.exp(q * r1 * s1 - q * r2 * s2) + np.exp(-q * r1 * s1 + q * r2 * s2)
    return e * hyper * part(q_scale * ring.omega_ring * t + q * r1 * c1 + q * r2 * c2) * np.exp(-(q**2) / 2)


def mean_current_coherent_sep(spec, ring, t):
    """Mean current of either ring for the separable coherent pair.

    ::

        (I/2) e^{-q^2/2} { sin[w t + 2 q |A1| cos(w_mode t - th1)]
                         + sin[w t + 2 q |A2| cos(w_mode t - th2)] }
    """
    t = np.asarray(t, dtype=float)
    return 0.5 * ring.critical_current * (
        _coherent_term(spec.a1, ring, t) + _coherent_term(spec.a2, ring, t)
    )


def mean_current_coherent_ent(spec, ring, t):
    """Mean current of either ring for the entangled coherent pair.

    ``2 N^2 <I>_sep + N^2 E F_1 e^{-q^2/2} I`` where
    ``E = exp(-|A1|^2 - |A2|^2 + 2|A1 A2| cos(th1 - th2))`` and::

        F_1 = [exp(q|A1| S1 - q|A2| S2) + exp(-q|A1| S1 + q|A2| S2)]
              * sin(w t + q|A1| C1 + q|A2| C2)

    with ``S_i = sin(w_mode t - th_i)`` and ``C_i = cos(w_mode t - th_i)``.
    """
    t = np.asarray(t, dtype=float)
    n2 = EntangledNormalization.for_pair(spec).value ** 2
    return 2 * n2 * mean_current_coherent_sep(spec, ring, t) + n2 * ring.critical_current * (
        _coherent_cross_term(spec, ring, t)
    )


def second_moment_coherent_sep(spec, ring, t):
    t = np.asarray(t, dtype=float)
    re_w2 = 0.5 * (
        _coherent_term(spec.a1, ring, t, 2, np.cos) + _coherent_term(spec.a2, ring, t, 2, np.cos)
    )
    return 0.5 * ring.critical_current**2 * (1.0 - re_w2)


def second_moment_coherent_ent(spec, ring, t):
    t = np.asarray(t, dtype=float)
    n2 = EntangledNormalization.for_pair(spec).value ** 2
    re_w2 = n2 * (
        _coherent_term(spec.a1, ring, t, 2, np.cos)
        + _coherent_term(spec.a2, ring, t, 2, np.cos)
        + _coherent_cross_term(spec, ring, t, 2, np.cos)
    )
    return 0.5 * ring.critical_current**2 * (1.0 - re_w2)


def coherent_displacement_element(beta, alpha, x):
    """``<beta| D(x) |alpha>`` between coherent states, in closed form.

    ``exp(-|alpha|^2/2 - |beta|^2/2 + beta* alpha - |x|^2/2 + beta* x - x* alpha)``
    """
    beta, alpha = complex(beta), complex(alpha)
    x = np.asarray(x, dtype=complex)
    return np.exp(
        -abs(alpha) ** 2 / 2
        - abs(beta) ** 2 / 2
        + np.conj(beta) * alpha
        - np.abs(x) ** 2 / 2
        + np.conj(beta) * x
        - np.conj(x) * alpha
    )


def _coherent_sin_element(beta, alpha, ring, t):
    # <beta| sin(theta) |alpha>
    lam = lambda_arg(ring, t)
    ph = np.exp(1j * ring.omega_ring * t)
    return (
        ph * coherent_displacement_element(beta, alpha, lam)
        - np.conj(ph) * coherent_displacement_element(beta, alpha, -lam)
    ) / 2j


def current_product_coherent_sep(spec, ring_a, ring_b, t):
    t = np.asarray(t, dtype=float)
    a1, a2 = spec.a1, spec.a2
    sa = {a: _coherent_sin_element(a, a, ring_a, t) for a in (a1, a2)}
    sb = {a: _coherent_sin_element(a, a, ring_b, t) for a in (a1, a2)}
    value = 0.5 * (sa[a1] * sb[a2] + sa[a2] * sb[a1])
    return ring_a.critical_current * ring_b.critical_current * np.real(value)


def current_product_coherent_ent(spec, ring_a, ring_b, t):
    """Product for the entangled coherent pair, including the off-diagonal terms.

    With ``s(b, a) = <b| sin theta |a>`` the diagonal part is
    ``s_A(A1,A1) s_B(A2,A2) + s_A(A2,A2) s_B(A1,A1)`` and the cross part is
    ``s_A(A2,A1) s_B(A1,A2) + s_A(A1,A2) s_B(A2,A1)``, all times ``N^2``.
    """
    t = np.asarray(t, dtype=float)
    a1, a2 = spec.a1, spec.a2
    n2 = EntangledNormalization.for_pair(spec).value ** 2

    def sa(b, a):
        return _coherent_sin_element(b, a, ring_a, t)

    def sb(b, a):
        return _coherent_sin_element(b, a, ring_b, t)

    value = n2 * (
        sa(a1, a1) * sb(a2, a2)
        + sa(a2, a2) * sb(a1, a1)
        + sa(a2, a1) * sb(a1, a2)
        + sa(a1, a2) * sb(a2, a1)
    )
    return ring_a.critical_current * ring_b.critical_current * np.real(value)


# -- closed forms: single-mode provenance (factorized states) -------------


def weyl_analytic(provenance, x):
    """Closed-form Weyl function of a number or coherent state."""
    kind, value = provenance
    x = np.asarray(x, dtype=complex)
    if kind == "number":
        r2 = np.abs(x) ** 2
        return np.exp(-r2 / 2) * laguerre(value, 0, r2)
    if kind == "coherent":
        return coherent_displacement_element(value, value, x)
    raise NoAnalyticForm(f"no closed-form Weyl function for {kind!r}")


def _mean_from_weyl(provenance, ring, t):
    w = weyl_analytic(provenance, lambda_arg(ring, t))
    return ring.critical_current * np.imag(np.exp(1j * ring.omega_ring * t) * w)


def _second_from_weyl(provenance, ring, t):
    w2 = weyl_analytic(provenance, 2 * lambda_arg(ring, t))
    return 0.5 * ring.critical_current**2 * (1.0 - np.real(np.exp(2j * ring.omega_ring * t) * w2))


# -- third route: spectral matrix sine -----------------------------------


def phase_operator(ring, t, dim):
    """Truncated ``theta(t)`` as a hermitian matrix."""
    a = fock.annihilation(dim)
    ph = np.exp(1j * ring.omega_mode * t)
    return ring.omega_ring * t * np.eye(dim) + ring.q * (ph * a.conj().T + np.conj(ph) * a)


def _sin_spectral(ring, t, dim):
    vals, vecs = np.linalg.eigh(phase_operator(ring, t, dim))
    sin = (vecs * np.sin(vals)) @ vecs.conj().T
    sin2 = (vecs * np.sin(vals) ** 2) @ vecs.conj().T
    return sin, sin2


def spectral_observables(state, ring_a, ring_b, t):
    """``(i_a, i_b, i_a2, i_b2, i_ab)`` from eigendecompositions of the phase operators.

    Entirely independent of the displacement matrix elements; meant for
    spot checks at a handful of times.
    """
    d = state.dim
    sa, sa2 = _sin_spectral(ring_a, t, d)
    sb, sb2 = _sin_spectral(ring_b, t, d)
    rho_a = fock.partial_trace(state, "B")
    rho_b = fock.partial_trace(state, "A")
    ia, ib = ring_a.critical_current, ring_b.critical_current
    return (
        ia * _real(fock.expect(rho_a, sa), "i_a"),
        ib * _real(fock.expect(rho_b, sb), "i_b"),
        ia**2 * _real(fock.expect(rho_a, sa2), "i_a2"),
        ib**2 * _real(fock.expect(rho_b, sb2), "i_b2"),
        ia * ib * _real(fock.expect_product(state, sa, sb), "i_ab"),
    )


# -- series ---------------------------------------------------------------


@dataclass
class ObservableSeries:
    """Observables on a time grid, one array per column.

    ``discrepancy`` maps each current column to ``max |analytic - numeric|``
    when both routes ran, and is ``None`` otherwise.
    """

    t: np.ndarray
    i_a: np.ndarray
    i_b: np.ndarray
    i_a2: np.ndarray
    i_b2: np.ndarray
    i_ab: np.ndarray
    ratio_r: np.ndarray
    method: str
    discrepancy: Optional[dict] = field(default=None)

    def __len__(self):
        return len(self.t)

    def column(self, name):
        return getattr(self, name)

    def samples(self):
        cols = [self.t, self.i_a, self.i_b, self.i_a2, self.i_b2, self.i_ab, self.ratio_r]
        return [ObservableSample(*map(float, row)) for row in zip(*cols)]


def analytic_columns(state, ring_a, ring_b, t):
    """Closed-form ``(i_a, i_b, i_a2, i_b2, i_ab)`` for a builder-made state.

    Raises
    ------
    NoAnalyticForm
        If the state has no provenance with a known closed form.
    """
    t = np.asarray(t, dtype=float)
    prov = state.provenance
    if prov is None:
        raise NoAnalyticForm("state was not made by a builder with a closed form")
    kind, spec = prov
    rings = (ring_a, ring_b)
    if kind in ("number-sep", "number-ent"):
        means = [mean_current_number_analytic(spec, r, t) for r in rings]
        seconds = [second_moment_number_analytic(spec, r, t) for r in rings]
        prod = (current_product_number_sep if kind == "number-sep" else current_product_number_ent)(
            spec, ring_a, ring_b, t
        )
    elif kind == "coherent-sep":
        means = [mean_current_coherent_sep(spec, r, t) for r in rings]
        seconds = [second_moment_coherent_sep(spec, r, t) for r in rings]
        prod = current_product_coherent_sep(spec, ring_a, ring_b, t)
    elif kind == "coherent-ent":
        means = [mean_current_coherent_ent(spec, r, t) for r in rings]
        seconds = [second_moment_coherent_ent(spec, r, t) for r in rings]
        prod = current_product_coherent_ent(spec, ring_a, ring_b, t)
    elif kind == "factorized":
        pa, pb = spec
        means = [_mean_from_weyl(pa, ring_a, t), _mean_from_weyl(pb, ring_b, t)]
        seconds = [_second_from_weyl(pa, ring_a, t), _second_from_weyl(pb, ring_b, t)]
        prod = means[0] * means[1]
    else:
        raise NoAnalyticForm(f"no closed form for state kind {kind!r}")
    shape = t.shape
    return tuple(np.broadcast_to(np.asarray(c, dtype=float), shape).copy() for c in (*means, *seconds, prod))


def _sin_from_displacement(ring, t, dim):
    d1 = fock.displacement_exact(complex(lambda_arg(ring, t)), dim)
    ph = np.exp(1j * ring.omega_ring * t)
    # D(-x) == D(x)^dagger holds exactly for the closed-form elements
    return (ph * d1 - np.conj(ph) * d1.conj().T) / 2j


def numeric_columns(state, ring_a, ring_b, t, chunk=256):
    """Truncated-matrix ``(i_a, i_b, i_a2, i_b2, i_ab)`` on a time grid."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    d = state.dim
    rho_a = fock.partial_trace(state, "B")
    rho_b = fock.partial_trace(state, "A")
    ia, ib = ring_a.critical_current, ring_b.critical_current
    means_a = np.array([mean_current_numeric(rho_a, ring_a, tt) for tt in t])
    means_b = np.array([mean_current_numeric(rho_b, ring_b, tt) for tt in t])
    second_a = np.array([second_moment_numeric(rho_a, ring_a, tt) for tt in t])
    second_b = np.array([second_moment_numeric(rho_b, ring_b, tt) for tt in t])

    # Tr[rho (S_A (x) S_B)] = sum r[i,k,j,l] S_A[j,i] S_B[l,k], batched over t
    r = state.rho.reshape(d, d, d, d)
    kernel = r.transpose(2, 0, 3, 1).reshape(d * d, d * d)
    prod = np.empty(len(t))
    for start in range(0, len(t), chunk):
        block = t[start : start + chunk]
        sa = np.stack([_sin_from_displacement(ring_a, tt, d).ravel() for tt in block])
        sb = np.stack([_sin_from_displacement(ring_b, tt, d).ravel() for tt in block])
        values = np.einsum("tk,tk->t", sa @ kernel, sb)
        if np.max(np.abs(values.imag), initial=0.0) > IMAG_TOL:
            raise ArithmeticError("current product has a non-negligible imaginary part")
        prod[start : start + len(block)] = ia * ib * values.real
    return means_a, means_b, second_a, second_b, prod


def observable_series(state, ring_a, ring_b, t, method="both", epsilon_r=None):
    """Evaluate every observable on the grid ``t``.

    Parameters
    ----------
    method : {"analytic", "numeric", "both"}
        With ``"both"`` the returned values are the closed forms and the
        numeric route only feeds ``discrepancy``.
    epsilon_r : float, optional
        Guard for the ratio; defaults to ``1e-9 I1 I2``.
    """
    if method not in ("analytic", "numeric", "both"):
        raise DomainError(f"unknown method {method!r}")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if epsilon_r is None:
        epsilon_r = 1e-9 * ring_a.critical_current * ring_b.critical_current
    analytic = numeric = None
    if method in ("analytic", "both"):
        analytic = analytic_columns(state, ring_a, ring_b, t)
    if method in ("numeric", "both"):
        numeric = numeric_columns(state, ring_a, ring_b, t)
    cols = analytic if analytic is not None else numeric
    discrepancy = None
    if method == "both":
        discrepancy = {
            name: float(np.max(np.abs(a - n), initial=0.0))
            for name, a, n in zip(COLUMNS, analytic, numeric)
        }
    ratio = np.atleast_1d(ratio_r(cols[4], cols[0], cols[1], epsilon_r))
    return ObservableSeries(t, *cols, ratio_r=ratio, method=method, discrepancy=discrepancy)
