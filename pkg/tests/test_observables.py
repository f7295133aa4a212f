import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import jv

from oracles import coherent_ket, laguerre_series
from squidwave import fock
from squidwave import observables as obs
from squidwave.errors import NoAnalyticForm
from squidwave.observables import RingConfig
from squidwave.states import (
    CoherentPairSpec,
    NumberPairSpec,
    coherent_entangled,
    coherent_separable,
    number_entangled,
    number_separable,
)

SPEC14 = NumberPairSpec(1, 4)


def test_ring_config_validation():
    with pytest.raises(ValueError):
        RingConfig(1.0, 1.0, critical_current=0)
    with pytest.raises(ValueError):
        RingConfig(1.0, 1.0, q=-1)
    with pytest.raises(ValueError):
        RingConfig(np.inf, 1.0)


# -- classical drive ------------------------------------------------------


def test_classical_current_basics():
    ring = RingConfig(0.3, 0.05, critical_current=2.0)
    assert obs.classical_current(ring, 1.5, 0.0) == 0.0
    t = np.linspace(0, 50, 11)
    np.testing.assert_allclose(obs.classical_current(ring, 0.0, t), 2.0 * np.sin(0.3 * t))


def test_classical_current_sidebands_follow_bessel_weights():
    n, period = 512, 512.0
    t = np.arange(n) * period / n
    base = 2 * np.pi / period
    ring = RingConfig(40 * base, 3 * base)
    beta = 1.2
    spectrum = np.fft.rfft(obs.classical_current(ring, beta, t)) / (n / 2)
    for k in range(-8, 9):
        # sin((w_A + k w_1) t) lands on bin 40 + 3k with coefficient -i J_k(beta)
        assert abs(spectrum[40 + 3 * k] - (-1j) * jv(k, beta)) < 1e-10


# -- Weyl functions -------------------------------------------------------


def test_weyl_at_origin_is_one():
    for state in (fock.number_state(3, 20), fock.coherent_state(1 + 1j, 30)):
        assert obs.weyl(state, 0) == pytest.approx(1.0, abs=1e-12)


def test_weyl_number_state_zero():
    # e^{-1/2} L_1(1) = 0
    assert abs(obs.weyl(fock.number_state(1, 20), 1.0)) < 1e-15
    for n in range(6):
        x = 0.9 * np.exp(0.4j)
        want = np.exp(-0.81 / 2) * laguerre_series(n, 0, 0.81)
        got = np.trace(fock.number_state(n, 40).rho @ fock.displacement_expm(x, 40))
        assert abs(obs.weyl(fock.number_state(n, 40), x) - want) < 1e-12
        assert abs(got - want) < 1e-10


@pytest.mark.parametrize("a, x", [(1.3, 0.7), (2.0, -1.1), (0.5, 1.9)])
def test_weyl_coherent_real(a, x):
    ket = coherent_ket(a, 40)
    oracle = np.vdot(ket, fock.displacement_expm(x, 40) @ ket)
    got = obs.weyl(fock.coherent_state(a, 40), x)
    assert abs(got - np.exp(-(x**2) / 2)) < 1e-10
    assert abs(oracle - np.exp(-(x**2) / 2)) < 1e-10


def test_weyl_two_mode(rings):
    a, b = fock.coherent_state(0.6j, 20), fock.number_state(2, 20)
    state = fock.tensor(a, b)
    assert obs.weyl_two_mode(state, 0, 0) == pytest.approx(1.0, abs=1e-12)
    xa, xb = 0.4 - 0.2j, 0.9j
    assert obs.weyl_two_mode(state, xa, xb) == pytest.approx(obs.weyl(a, xa) * obs.weyl(b, xb), abs=1e-13)
    sep = number_separable(SPEC14, 20)
    assert obs.weyl_two_mode(sep, xa, xb) == pytest.approx(obs.weyl_two_mode(sep, xb, xa), abs=1e-14)


def test_lambda_arg():
    ring = RingConfig(1.0, 0.37, q=0.8)
    assert obs.lambda_arg(ring, 0.0) == pytest.approx(0.8j)
    t = np.linspace(0, 100, 33)
    np.testing.assert_allclose(np.abs(obs.lambda_arg(ring, t)), 0.8)
    np.testing.assert_allclose(obs.lambda_arg(ring, t + 2 * np.pi / 0.37), obs.lambda_arg(ring, t), atol=1e-12)


def test_coherent_displacement_element_matches_vectors():
    b, a, x = 0.3 - 1j, 1.2 + 0.4j, -0.5 + 0.8j
    want = np.vdot(fock.coherent_vector(b, 40), fock.displacement_exact(x, 40) @ fock.coherent_vector(a, 40))
    assert abs(obs.coherent_displacement_element(b, a, x) - want) < 1e-12


# -- mean currents --------------------------------------------------------


def test_vacuum_mean_current():
    ring = RingConfig(0.5, 0.2, q=0.9)
    t = np.pi / 2 / 0.5
    assert obs.mean_current_numeric(fock.number_state(0, 20), ring, t) == pytest.approx(np.exp(-0.81 / 2), abs=1e-14)


def test_mean_current_zero_at_origin_for_number_mixture(rings):
    ring_a, _ = rings
    state = fock.partial_trace(number_separable(SPEC14, 20), "B")
    assert abs(obs.mean_current_numeric(state, ring_a, 0.0)) < 1e-15


def test_number_mean_current_closed_form(rings):
    ring_a, _ = rings
    t = np.linspace(0, 3e5, 100)
    mixture = fock.partial_trace(number_separable(SPEC14, 40), "B")
    numeric = np.array([obs.mean_current_numeric(mixture, ring_a, tt) for tt in t])
    assert np.max(np.abs(numeric - obs.mean_current_number_analytic(SPEC14, ring_a, t))) < 1e-9
    assert obs.mean_current_number_analytic(SPEC14, ring_a, 0.0) == 0.0
    # explicit value: (1/2) e^{-1/2} (0 - 0.625) sin(w t)
    np.testing.assert_allclose(
        obs.mean_current_number_analytic(SPEC14, ring_a, t),
        0.5 * np.exp(-0.5) * (-0.625) * np.sin(ring_a.omega_ring * t),
        atol=1e-15,
    )


def test_number_mean_current_ignores_mode_frequency():
    t = np.linspace(0, 1e5, 20)
    a = obs.mean_current_number_analytic(SPEC14, RingConfig(1e-4, 1e-4), t)
    b = obs.mean_current_number_analytic(SPEC14, RingConfig(1e-4, 7.7), t)
    np.testing.assert_array_equal(a, b)


def test_coherent_sep_mean_special_cases():
    ring = RingConfig(0.3, 0.11, q=0.7)
    t = np.linspace(0, 60, 25)
    vac = obs.mean_current_coherent_sep(CoherentPairSpec(0, 0), ring, t)
    np.testing.assert_allclose(vac, np.exp(-0.49 / 2) * np.sin(0.3 * t), atol=1e-15)
    same = obs.mean_current_coherent_sep(CoherentPairSpec(1.4, 1.4), ring, t)
    want = np.exp(-0.49 / 2) * np.sin(0.3 * t + 2 * 0.7 * 1.4 * np.cos(0.11 * t))
    np.testing.assert_allclose(same, want, atol=1e-15)


@pytest.mark.parametrize("a1, a2", [(1, 2), (np.exp(0.4j), 2 * np.exp(-1.1j))])
def test_coherent_means_match_numeric(rings, grid, a1, a2):
    ring_a, ring_b = rings
    spec = CoherentPairSpec(a1, a2)
    t = grid[::2]
    sep = coherent_separable(spec, 40)
    ent, _ = coherent_entangled(spec, 40)
    for state, closed in ((sep, obs.mean_current_coherent_sep), (ent, obs.mean_current_coherent_ent)):
        for ring, traced in ((ring_a, "B"), (ring_b, "A")):
            reduced = fock.partial_trace(state, traced)
            numeric = np.array([obs.mean_current_numeric(reduced, ring, tt) for tt in t])
            assert np.max(np.abs(numeric - closed(spec, ring, t))) < 1e-9


def test_coherent_ent_degenerate_equals_sep(rings, grid):
    ring_a, _ = rings
    spec = CoherentPairSpec(1.3, 1.3)
    np.testing.assert_allclose(
        obs.mean_current_coherent_ent(spec, ring_a, grid), obs.mean_current_coherent_sep(spec, ring_a, grid), atol=1e-15
    )


def test_coherent_sep_and_ent_differ(rings, grid):
    ring_a, _ = rings
    spec = CoherentPairSpec(1, 2)
    diff = obs.mean_current_coherent_sep(spec, ring_a, grid) - obs.mean_current_coherent_ent(spec, ring_a, grid)
    assert np.max(np.abs(diff)) > 1e-3


# -- second moments -------------------------------------------------------


def test_second_moment_special_values():
    ring = RingConfig(0.4, 0.1, q=0.0)
    assert obs.second_moment_numeric(fock.number_state(0, 10), ring, 0.0) == pytest.approx(0.0, abs=1e-15)
    ring = RingConfig(0.4, 0.1, q=0.6)
    t = np.linspace(0, 30, 13)
    got = [obs.second_moment_numeric(fock.number_state(0, 30), ring, tt) for tt in t]
    np.testing.assert_allclose(got, 0.5 * (1 - np.exp(-2 * 0.36) * np.cos(0.8 * t)), atol=1e-14)


def test_second_moment_number_closed_form():
    ring = RingConfig(1.2e-4, 1.2e-4, q=0.5)
    t = np.linspace(0, 3e5, 60)
    values = obs.second_moment_number_analytic(SPEC14, ring, t)
    assert np.all((values >= 0) & (values <= 1))
    mixture = fock.partial_trace(number_separable(SPEC14, 40), "B")
    numeric = np.array([obs.second_moment_numeric(mixture, ring, tt) for tt in t])
    assert np.max(np.abs(values - numeric)) < 1e-9
    quarter = np.pi / 4 / ring.omega_ring
    assert obs.second_moment_number_analytic(SPEC14, ring, quarter) == pytest.approx(0.5, abs=1e-15)


# -- products and I_cross -------------------------------------------------


def test_product_factorizes_for_product_states(rings):
    ring_a, ring_b = rings
    a, b = fock.coherent_state(0.5 + 0.5j, 30), fock.number_state(3, 30)
    state = fock.tensor(a, b)
    for t in (0.0, 1234.0, 7.1e4):
        want = obs.mean_current_numeric(a, ring_a, t) * obs.mean_current_numeric(b, ring_b, t)
        assert obs.current_product_numeric(state, ring_a, ring_b, t) == pytest.approx(want, abs=1e-13)


def test_number_products_match_numeric(rings, grid):
    ring_a, ring_b = rings
    t = grid[::4]
    sep, ent = number_separable(SPEC14, 40), number_entangled(SPEC14, 40)
    num_sep = np.array([obs.current_product_numeric(sep, ring_a, ring_b, tt) for tt in t])
    num_ent = np.array([obs.current_product_numeric(ent, ring_a, ring_b, tt) for tt in t])
    assert np.max(np.abs(num_sep - obs.current_product_number_sep(SPEC14, ring_a, ring_b, t))) < 1e-9
    assert np.max(np.abs(num_ent - obs.current_product_number_ent(SPEC14, ring_a, ring_b, t))) < 1e-9


def test_i_cross_at_origin():
    # -(1/2) e^{-1} L_1^3(1) L_4^{-3}(1) [1 - (-1)^{-3}] with L_1^3(1)=3, L_4^{-3}(1)=-1/8
    ring_a, ring_b = RingConfig(1.2e-4, 1.2e-4), RingConfig(1e-4, 1e-4)
    want = -0.5 * np.exp(-1) * laguerre_series(1, 3, 1) * laguerre_series(4, -3, 1) * 2
    assert want == pytest.approx(0.13795479043929088, abs=1e-16)
    assert obs.i_cross(SPEC14, ring_a, ring_b, 0.0) == pytest.approx(want, abs=1e-15)
    ent = number_entangled(SPEC14, 40)
    sep = number_separable(SPEC14, 40)
    numeric = obs.current_product_numeric(ent, ring_a, ring_b, 0.0) - obs.current_product_numeric(
        sep, ring_a, ring_b, 0.0
    )
    assert numeric == pytest.approx(want, abs=1e-12)


def test_i_cross_envelope_and_separable_shape(rings):
    ring_a, ring_b = rings
    omega = obs.beat_frequency(SPEC14, ring_a, ring_b)
    assert abs(omega) == pytest.approx(6e-5)
    # zeros of the slow envelope are zeros of I_cross
    t0 = np.pi / 2 / abs(omega)
    assert abs(obs.i_cross(SPEC14, ring_a, ring_b, t0)) < 1e-15
    t = np.linspace(1, 5e5, 50)
    sep = obs.current_product_number_sep(SPEC14, ring_a, ring_b, t)
    shape = np.sin(ring_a.omega_ring * t) * np.sin(ring_b.omega_ring * t)
    ratio = sep[np.abs(shape) > 1e-3] / shape[np.abs(shape) > 1e-3]
    assert np.ptp(ratio) < 1e-15


@pytest.mark.parametrize("n1, n2", [(0, 2), (3, 1), (2, 5), (0, 1)])
@pytest.mark.parametrize("qa, qb", [(1.0, 1.0), (0.7, 1.3), (0.0, 0.9)])
def test_i_cross_general_pairs(n1, n2, qa, qb):
    spec = NumberPairSpec(n1, n2)
    ring_a, ring_b = RingConfig(1.2e-4, 1.2e-4, q=qa), RingConfig(1e-4, 1e-4, q=qb)
    sep, ent = number_separable(spec, 30), number_entangled(spec, 30)
    for t in (0.0, 3.3e3, 4.1e4, 2.2e5):
        numeric = obs.current_product_numeric(ent, ring_a, ring_b, t) - obs.current_product_numeric(
            sep, ring_a, ring_b, t
        )
        assert obs.i_cross(spec, ring_a, ring_b, t) == pytest.approx(numeric, abs=1e-12)


# -- ratio ----------------------------------------------------------------


def test_ratio_r():
    assert obs.ratio_r(0.06, 0.2, 0.3) == pytest.approx(1.0)
    assert np.isnan(obs.ratio_r(1.0, 1e-5, 1e-5))
    out = obs.ratio_r([0.5, 0.0], [1.0, 0.0], [0.5, 0.0], 1e-9)
    assert out[0] == 1.0 and np.isnan(out[1])


def test_ratio_number_sep_closed_form():
    assert obs.ratio_number_sep(SPEC14, 1.0) == 0.0
    l1, l4 = laguerre_series(1, 0, 0.49), laguerre_series(4, 0, 0.49)
    assert obs.ratio_number_sep(SPEC14, 0.7) == pytest.approx(4 * l1 * l4 / (l1 + l4) ** 2, rel=1e-12)


@given(
    n1=st.integers(0, 6),
    n2=st.integers(0, 6),
    q=st.floats(0.1, 1.5),
)
@settings(max_examples=40, deadline=None)
def test_number_ratio_is_constant(n1, n2, q):
    if n1 == n2:
        n2 = n1 + 1
    spec = NumberPairSpec(n1, n2)
    ring_a, ring_b = RingConfig(1.2e-4, 1.2e-4, q=q), RingConfig(1e-4, 1e-4, q=q)
    t = np.linspace(1e3, 6e5, 40)
    r = obs.ratio_r(
        obs.current_product_number_sep(spec, ring_a, ring_b, t),
        obs.mean_current_number_analytic(spec, ring_a, t),
        obs.mean_current_number_analytic(spec, ring_b, t),
    )
    r = r[~np.isnan(r)]
    if r.size:
        assert np.max(np.abs(r - obs.ratio_number_sep(spec, q))) < 1e-9 * max(1.0, abs(obs.ratio_number_sep(spec, q)))


# -- spectral cross-check and series -------------------------------------


@pytest.mark.parametrize(
    "state",
    [
        number_entangled(SPEC14, 40),
        coherent_entangled(CoherentPairSpec(1, 2), 40)[0],
        coherent_separable(CoherentPairSpec(1j, 2), 40),
    ],
    ids=["number-ent", "coherent-ent", "coherent-sep"],
)
def test_spectral_route_matches_closed_forms(rings, state):
    ring_a, ring_b = rings
    t = np.array([0.0, 1.7e3, 5.0e4, 2.1e5, 5.9e5])
    closed = np.array(obs.analytic_columns(state, ring_a, ring_b, t))
    for j, tt in enumerate(t):
        assert np.max(np.abs(np.array(obs.spectral_observables(state, ring_a, ring_b, tt)) - closed[:, j])) < 1e-8


def test_series_product_route_matches_four_weyl_expansion(rings):
    ring_a, ring_b = rings
    state, _ = coherent_entangled(CoherentPairSpec(1, 2 * np.exp(0.3j)), 40)
    t = np.array([0.0, 2.5e3, 8e4])
    batched = obs.numeric_columns(state, ring_a, ring_b, t)[4]
    literal = [obs.current_product_numeric(state, ring_a, ring_b, tt) for tt in t]
    np.testing.assert_allclose(batched, literal, atol=1e-14)


def test_series_requires_provenance_for_analytic(rings):
    ring_a, ring_b = rings
    bare = fock.TwoModeState(number_separable(SPEC14, 8).rho, "separable")
    with pytest.raises(NoAnalyticForm):
        obs.observable_series(bare, ring_a, ring_b, [0.0, 1.0], method="analytic")
    series = obs.observable_series(bare, ring_a, ring_b, [0.0, 1.0], method="numeric")
    assert series.discrepancy is None and len(series) == 2


def test_series_samples(rings, grid):
    ring_a, ring_b = rings
    # L_1(1) = 0 would make <I_A> vanish identically, so use N = 2 and 3
    state = fock.tensor(fock.number_state(2, 20), fock.number_state(3, 20))
    series = obs.observable_series(state, ring_a, ring_b, grid, method="both")
    defined = series.ratio_r[~np.isnan(series.ratio_r)]
    assert defined.size > 150
    np.testing.assert_allclose(defined, 1.0, atol=1e-10)
    samples = series.samples()
    assert len(samples) == 200 and samples[0].t == 0.0 and not samples[0].ratio_defined
    for s in samples:
        assert 0 <= s.i_a2 <= 1 + 1e-15 and abs(s.i_a) <= 1


def test_series_number_sep_ratio_constant(rings, grid):
    ring_a, ring_b = rings
    series = obs.observable_series(number_separable(SPEC14, 40), ring_a, ring_b, grid, method="numeric")
    r = series.ratio_r[~np.isnan(series.ratio_r)]
    assert np.std(r) < 1e-10


def test_series_coherent_ent_both_routes(rings, grid):
    ring_a, ring_b = rings
    state, _ = coherent_entangled(CoherentPairSpec(1, 2), 40)
    series = obs.observable_series(state, ring_a, ring_b, grid, method="both")
    assert max(series.discrepancy.values()) < 1e-8


def test_global_phase_of_kets_does_not_matter(rings):
    ring_a, ring_b = rings
    d = 20
    base = number_entangled(SPEC14, d)
    ket = np.zeros(d * d, dtype=complex)
    ket[1 * d + 4] = ket[4 * d + 1] = np.exp(1.234j) / np.sqrt(2)
    rotated = fock.TwoModeState(np.outer(ket, ket.conj()), "entangled")
    t = np.array([0.0, 3e3, 4e4])
    np.testing.assert_allclose(
        obs.numeric_columns(rotated, ring_a, ring_b, t), obs.numeric_columns(base, ring_a, ring_b, t), atol=1e-15
    )
