"""Josephson currents of two distant SQUID rings irradiated by correlated microwaves."""

__version__ = "0.1.0"

from .errors import DimensionMismatch, DomainError, NoAnalyticForm, TruncationError
from .fock import (
    SingleModeState,
    TwoModeState,
    annihilation,
    coherent_state,
    displacement_exact,
    displacement_expm,
    expect,
    number_state,
    partial_trace,
    tensor,
)
from .observables import ObservableSample, ObservableSeries, RingConfig, observable_series
from .special import laguerre
from .states import (
    CoherentPairSpec,
    NumberPairSpec,
    coherent_entangled,
    coherent_separable,
    factorized,
    number_entangled,
    number_separable,
)
