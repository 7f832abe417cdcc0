import itertools
import math

import numpy as np
import pytest

from zmlab.core import Seq, alphabet
from zmlab.errors import AlphabetMismatch, GridMissing, TooLarge
from zmlab.infotheory import (NUMERIC, NdVerdict, cross_entropy_rate,
                              entropy_rate, nd_diagnostic, pressure_curve,
                              pressure_curves, se_diagnostic,
                              sided_derivatives_at_zero, smb_series)
from zmlab.sources import (Bernoulli, RngSpec, countable_hmm_build,
                           hmm_from_parts, log_marginal,
                           markov_from_transition, pmp_from_hmm)

A01 = alphabet("01")

BERN_P = Bernoulli(A01, np.array([0.3, 0.7]))
BERN_Q = Bernoulli(A01, np.array([0.6, 0.4]))
MARKOV_P = markov_from_transition(A01, np.array([[0.2, 0.8], [0.5, 0.5]]))
MARKOV_Q = markov_from_transition(A01, np.array([[0.6, 0.4], [0.3, 0.7]]))
CYCLE = markov_from_transition(A01, np.array([[0.0, 1.0], [1.0, 0.0]]))


def all_words(n):
    for tup in itertools.product((0, 1), repeat=n):
        yield Seq(A01, np.array(tup, dtype=np.int64))


# ---------------------------------------------------------------------------
# closed-form rates

def test_entropy_rate_bernoulli():
    expect = -(0.3 * math.log(0.3) + 0.7 * math.log(0.7))
    assert entropy_rate(BERN_P) == pytest.approx(expect, abs=1e-14)


def test_cross_entropy_rate_bernoulli_hand_value():
    expect = -(0.6 * math.log(0.3) + 0.4 * math.log(0.7))
    assert cross_entropy_rate(BERN_Q, BERN_P) == pytest.approx(expect,
                                                              abs=1e-14)
    assert cross_entropy_rate(BERN_P, BERN_P) == \
        pytest.approx(entropy_rate(BERN_P), abs=1e-14)


def expected_score(sampler, inside, n):
    """E over length-n words of -ln inside[w], weighted by sampler."""
    total = 0.0
    for w in all_words(n):
        lw = log_marginal(sampler, w)
        if lw == -math.inf:
            continue
        total += math.exp(lw) * -log_marginal(inside, w)
    return total


@pytest.mark.parametrize("pair", [(BERN_Q, BERN_P), (MARKOV_P, MARKOV_Q),
                                  (MARKOV_Q, MARKOV_Q), (CYCLE, CYCLE)])
def test_rates_match_telescoped_enumeration(pair):
    sampler, inside = pair
    # with a stationary start the expected score grows by exactly the rate
    rate = cross_entropy_rate(sampler, inside)
    gap = expected_score(sampler, inside, 9) - expected_score(sampler,
                                                              inside, 8)
    assert gap == pytest.approx(rate, abs=1e-9)


def test_cross_entropy_rate_support_violation():
    lopsided = Bernoulli(A01, np.array([1.0, 0.0]))
    assert cross_entropy_rate(BERN_P, lopsided) == math.inf
    # the other direction stays finite: the sampler never leaves supp P
    assert cross_entropy_rate(lopsided, BERN_P) == \
        pytest.approx(-math.log(0.3), abs=1e-14)
    mq = markov_from_transition(A01, np.array([[0.0, 1.0], [0.5, 0.5]]))
    assert cross_entropy_rate(MARKOV_P, mq) == math.inf
    assert cross_entropy_rate(mq, MARKOV_P) != math.inf


def test_rates_numeric_marker():
    h = hmm_from_parts(A01, np.array([[0.9, 0.1], [0.3, 0.7]]),
                       np.array([[0.8, 0.2], [0.1, 0.9]]))
    assert entropy_rate(h) is NUMERIC
    assert cross_entropy_rate(h, BERN_P) is NUMERIC
    assert cross_entropy_rate(BERN_P, pmp_from_hmm(h)) is NUMERIC
    assert repr(NUMERIC) == "NUMERIC"


def test_rate_alphabet_mismatch():
    other = Bernoulli(alphabet("ab"), np.array([0.5, 0.5]))
    with pytest.raises(AlphabetMismatch):
        cross_entropy_rate(BERN_P, other)


# ---------------------------------------------------------------------------
# sampled series

def test_smb_series_deterministic_and_convergent():
    series = smb_series(BERN_P, BERN_Q, [100, 2000], trials=50,
                        rng=RngSpec(5))
    again = smb_series(BERN_P, BERN_Q, [100, 2000], trials=50, rng=5)
    assert np.array_equal(series.values, again.values)
    assert series.values.shape == (50, 2)
    assert series.n_grid.tolist() == [100, 2000]
    target = cross_entropy_rate(BERN_Q, BERN_P)
    assert abs(series.mean()[-1] - target) < 0.01
    q1, q3 = series.quartiles()
    assert np.all(q1 <= series.median()) and np.all(series.median() <= q3)


def test_smb_series_records_support_misses_as_inf():
    lopsided = Bernoulli(A01, np.array([1.0, 0.0]))
    fair = Bernoulli(A01, np.array([0.5, 0.5]))
    series = smb_series(lopsided, fair, [10], trials=20, rng=RngSpec(0))
    assert np.isinf(series.values).any()
    assert np.isinf(series.values).mean() >= 0.9


def test_smb_series_bad_grid():
    with pytest.raises(ValueError):
        smb_series(BERN_P, BERN_Q, [], trials=2, rng=0)
    with pytest.raises(ValueError):
        smb_series(BERN_P, BERN_Q, [0, 5], trials=2, rng=0)


# ---------------------------------------------------------------------------
# pressure curves

ALPHAS = np.linspace(-1.5, 1.5, 13)


def brute_pressure(model_p, model_q, n, alpha):
    terms = []
    for w in all_words(n):
        lp = log_marginal(model_p, w)
        lq = log_marginal(model_q, w)
        if lp == -math.inf or lq == -math.inf:
            continue
        terms.append(lq - alpha * lp)
    if not terms:
        return -math.inf
    m = max(terms)
    return (m + math.log(sum(math.exp(t - m) for t in terms))) / n


@pytest.mark.parametrize("pair", [
    (BERN_P, BERN_Q),
    (hmm_from_parts(A01, np.array([[0.9, 0.1], [0.3, 0.7]]),
                    np.array([[0.8, 0.2], [0.1, 0.9]])), MARKOV_Q),
    (countable_hmm_build("n_squared", 20, 1e-12, labels="01"), BERN_Q),
    (markov_from_transition(A01, np.array([[0.0, 1.0], [0.5, 0.5]])),
     MARKOV_P),
])
def test_pressure_matches_word_enumeration(pair):
    model_p, model_q = pair
    for n in (1, 3, 6):
        curve = pressure_curve(model_p, model_q, n, ALPHAS)
        for a, v in zip(curve.alphas, curve.values):
            assert v == pytest.approx(brute_pressure(model_p, model_q, n, a),
                                      abs=1e-10)


def test_pressure_zero_alpha_and_shape():
    for pair in [(BERN_P, BERN_Q), (MARKOV_P, MARKOV_Q),
                 (Bernoulli(A01, np.array([0.5, 0.5])), CYCLE)]:
        curve = pressure_curve(*pair, 8, ALPHAS)
        assert abs(curve.value_at(0.0)) <= 1e-12
        assert curve.is_nondecreasing()
        assert curve.is_convex()
    # supp Q wider than supp P: mass escapes and q_n(0) goes negative
    curve = pressure_curve(CYCLE, Bernoulli(A01, np.array([0.5, 0.5])),
                           8, ALPHAS)
    assert curve.value_at(0.0) == pytest.approx((1 - 8) * math.log(2) / 8,
                                                abs=1e-12)
    assert curve.support_size == 2


def test_pressure_iid_depth_independence():
    curves = pressure_curves(BERN_P, BERN_Q, [2, 6, 10], ALPHAS)
    base = curves[0].values
    for c in curves[1:]:
        assert np.max(np.abs(c.values - base)) <= 1e-12


def test_pressure_iid_additivity_exact():
    def q_at(n, alpha):
        return pressure_curve(BERN_P, BERN_Q, n, [alpha]).values[0] * n
    for n, m in [(2, 3), (4, 4), (6, 8)]:
        for a in (-1.0, -0.5, 0.5, 1.0):
            assert q_at(n + m, a) == pytest.approx(q_at(n, a) + q_at(m, a),
                                                   abs=1e-10)


def test_pressure_markov_additivity_within_mixing_bound():
    tp, pp = MARKOV_P.transition, MARKOV_P.pi
    tq, pq = MARKOV_Q.transition, MARKOV_Q.pi
    log_rp = np.log(tp / pp[None, :])
    log_rq = np.log(tq / pq[None, :])

    def q_at(n, alpha):
        return pressure_curve(MARKOV_P, MARKOV_Q, n, [alpha]).values[0] * n

    for n, m in [(2, 3), (4, 4), (8, 8)]:
        for a in (-1.0, -0.5, 0.5, 1.0):
            bound = float(np.max(np.abs(-a * log_rp + log_rq)))
            gap = abs(q_at(n + m, a) - q_at(n, a) - q_at(m, a))
            assert gap <= bound + 1e-9


def test_pressure_empty_joint_support():
    only0 = Bernoulli(A01, np.array([1.0, 0.0]))
    only1 = Bernoulli(A01, np.array([0.0, 1.0]))
    curve = pressure_curve(only0, only1, 4, ALPHAS)
    assert curve.support_size == 0
    assert np.all(np.isneginf(curve.values))


def test_pressure_node_budget():
    with pytest.raises(TooLarge):
        pressure_curve(BERN_P, BERN_Q, 30, [0.0], node_budget=100)
    with pytest.raises(TooLarge):
        se_diagnostic(BERN_P, [30], node_budget=100)


def test_pressure_bad_depths():
    with pytest.raises(ValueError):
        pressure_curves(BERN_P, BERN_Q, [], ALPHAS)
    with pytest.raises(ValueError):
        pressure_curve(BERN_P, BERN_Q, 0, ALPHAS)


def test_value_at_off_grid():
    curve = pressure_curve(BERN_P, BERN_Q, 4, [-1.0, 0.0, 1.0])
    with pytest.raises(GridMissing):
        curve.value_at(0.25)


def test_sided_derivatives_recover_cross_entropy():
    step = 1e-5
    curve = pressure_curve(BERN_P, BERN_Q, 10, [-step, 0.0, step])
    d_minus, d_plus = sided_derivatives_at_zero(curve, step)
    target = cross_entropy_rate(BERN_Q, BERN_P)
    assert d_minus <= d_plus + 1e-12
    assert d_plus == pytest.approx(target, abs=1e-6)
    assert d_minus == pytest.approx(target, abs=1e-6)
    with pytest.raises(GridMissing):
        sided_derivatives_at_zero(curve, 2e-5)


# ---------------------------------------------------------------------------
# diagnostics

def test_nd_negative_for_iid_pair():
    fair = Bernoulli(A01, np.array([0.5, 0.5]))
    report = nd_diagnostic(fair, fair, [2, 4, 6, 8, 10, 12])
    assert report.verdict is NdVerdict.NEGATIVE
    # iid level: q_n(-1)/n = ln sum_a p_a q_a at every depth
    assert np.allclose(report.values, math.log(0.5), atol=1e-12)


def test_nd_negative_for_markov_pair():
    report = nd_diagnostic(MARKOV_P, MARKOV_Q, [2, 4, 6, 8, 10, 12])
    assert report.verdict is NdVerdict.NEGATIVE
    assert np.all(report.values < -report.eta)


def test_nd_inconclusive_for_thin_support():
    report = nd_diagnostic(CYCLE, CYCLE, [2, 4, 6, 8, 10, 12])
    assert report.verdict is NdVerdict.INCONCLUSIVE
    # the level is -ln2/n, which rises toward zero instead of settling
    assert np.allclose(report.values, -math.log(2) / report.n_grid,
                       atol=1e-12)


def test_se_bernoulli_exact_linear_decay():
    report = se_diagnostic(BERN_P, [2, 4, 6, 8, 10])
    assert report.beta == 1.0
    assert report.gamma_minus == pytest.approx(math.log(0.3), abs=1e-12)
    assert np.all(report.residuals >= 0)
    assert report.worst_residual < 1e-9


def test_se_superlinear_decay_detected():
    model = countable_hmm_build("n_squared", 20, 1e-12, labels="01")
    report = se_diagnostic(model, [2, 4, 6, 8, 10, 12])
    assert report.beta > 1.5
    assert np.all(report.residuals >= -1e-12)
    assert np.all(report.values == np.sort(report.values)[::-1])
