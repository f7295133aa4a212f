"""Builders for the correlated two-mode microwave states.

Number-state pair (N1 != N2)::

    separable  1/2 (|N1 N2><N1 N2| + |N2 N1><N2 N1|)
    entangled  |s><s|,  |s> = (|N1 N2> + |N2 N1>) / sqrt(2)

Coherent-state pair::

    separable  1/2 (|A1 A2><A1 A2| + |A2 A1><A2 A1|)
    entangled  |u><u|,  |u> = norm * (|A1 A2> + |A2 A1>)

Each builder records its correlation class and a provenance tag that the
analytic observables dispatch on.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .fock import (
    DEFAULT_DIM,
    ENTANGLED,
    SEPARABLE,
    TwoModeState,
    coherent_vector,
    tensor,
)


@dataclass(frozen=True)
class NumberPairSpec:
    n1: int
    n2: int

    def __post_init__(self):
        for n in (self.n1, self.n2):
            if int(n) != n or n < 0:
                raise DomainError(f"photon numbers must be non-negative integers, got {n}")
        if self.n1 == self.n2:
            raise DomainError(f"number-state pair needs n1 != n2, got {self.n1} twice")

    def check_dim(self, dim):
        if max(self.n1, self.n2) >= dim:
            raise DomainError(f"photon number {max(self.n1, self.n2)} does not fit in dim={dim}")


@dataclass(frozen=True)
class CoherentPairSpec:
    a1: complex
    a2: complex

    def __post_init__(self):
        a1, a2 = complex(self.a1), complex(self.a2)
        if not (np.isfinite(a1) and np.isfinite(a2)):
            raise DomainError("coherent amplitudes must be finite")
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)

    @property
    def theta1(self):
        return float(np.angle(self.a1))

    @property
    def theta2(self):
        return float(np.angle(self.a2))

    @property
    def overlap(self):
        """``<A1|A2> = exp(-|A1|^2/2 - |A2|^2/2 + conj(A1) A2)``."""
        a1, a2 = self.a1, self.a2
        return complex(np.exp(-abs(a1) ** 2 / 2 - abs(a2) ** 2 / 2 + np.conj(a1) * a2))


@dataclass(frozen=True)
class EntangledNormalization:
    value: float

    @classmethod
    def for_pair(cls, spec):
        return cls(float((2.0 + 2.0 * np.exp(-abs(spec.a1 - spec.a2) ** 2)) ** -0.5))


def _basis_ket(n_a, n_b, dim):
    ket = np.zeros(dim * dim, dtype=complex)
    ket[n_a * dim + n_b] = 1.0
    return ket


def _projector(ket):
    return np.outer(ket, ket.conj())


def number_separable(spec, dim=DEFAULT_DIM):
    spec.check_dim(dim)
    k12 = _basis_ket(spec.n1, spec.n2, dim)
    k21 = _basis_ket(spec.n2, spec.n1, dim)
    rho = 0.5 * (_projector(k12) + _projector(k21))
    return TwoModeState(rho, SEPARABLE, provenance=("number-sep", spec))


def number_entangled(spec, dim=DEFAULT_DIM):
    spec.check_dim(dim)
    k12 = _basis_ket(spec.n1, spec.n2, dim)
    k21 = _basis_ket(spec.n2, spec.n1, dim)
    cross = 0.5 * (np.outer(k12, k21.conj()) + np.outer(k21, k12.conj()))
    rho = number_separable(spec, dim).rho + cross
    return TwoModeState(rho, ENTANGLED, provenance=("number-ent", spec))


def _coherent_pair_kets(spec, dim):
    v1 = coherent_vector(spec.a1, dim)
    v2 = coherent_vector(spec.a2, dim)
    return np.kron(v1, v2), np.kron(v2, v1)


def coherent_separable(spec, dim=DEFAULT_DIM):
    k12, k21 = _coherent_pair_kets(spec, dim)
    rho = 0.5 * (_projector(k12) + _projector(k21))
    return TwoModeState(rho, SEPARABLE, provenance=("coherent-sep", spec))


def coherent_entangled_expansion(spec, dim=DEFAULT_DIM):
    """Entangled coherent density matrix assembled term by term.

    ``2 norm^2 rho_sep + norm^2 (|A1 A2><A2 A1| + h.c.)`` with the analytic
    normalization. Used to cross-check :func:`coherent_entangled`.
    """
    norm = EntangledNormalization.for_pair(spec).value
    k12, k21 = _coherent_pair_kets(spec, dim)
    sep = 0.5 * (_projector(k12) + _projector(k21))
    cross = np.outer(k12, k21.conj()) + np.outer(k21, k12.conj())
    return 2 * norm**2 * sep + norm**2 * cross


def coherent_entangled(spec, dim=DEFAULT_DIM):
    """Projector onto the normalized ``|A1 A2> + |A2 A1>``.

    Returns
    -------
    state : TwoModeState
    normalization : EntangledNormalization
        The analytic constant ``[2 + 2 exp(-|A1 - A2|^2)]^(-1/2)``.
    """
    k12, k21 = _coherent_pair_kets(spec, dim)
    ket = k12 + k21
    ket /= np.linalg.norm(ket)
    return (
        TwoModeState(_projector(ket), ENTANGLED, provenance=("coherent-ent", spec)),
        EntangledNormalization.for_pair(spec),
    )


def factorized(a, b):
    """``a (x) b``; same as :func:`squidwave.fock.tensor`."""
    return tensor(a, b)
