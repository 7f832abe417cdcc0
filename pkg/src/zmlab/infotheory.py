"""Entropy rates, pressure curves, and support diagnostics.

Closed forms exist only for Bernoulli and Markov sources; everything else
returns the NUMERIC marker, which directs callers to the sampling route
(smb_series with P = Q for entropy, or against a second model for cross
entropy).

The pressure of order alpha at depth n is

    q_n(alpha) = ln  sum  P[a]^(-alpha) Q[a]
                     a in supp P_n  cap  supp Q_n

computed by enumerating the joint support level by level, pruning
zero-probability prefixes under either model as soon as they appear, and
accumulating in log domain.  One pass serves every depth up to n, which is
what the diagnostics exploit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np
from scipy.special import logsumexp

from .errors import AlphabetMismatch, GridMissing, TooLarge
from .sources import (Bernoulli, CountableHmm, Hmm, Markov, Pmp, RngSpec,
                      SourceModel, log_marginal_prefixes, pmp_from_hmm,
                      sample)

DEFAULT_NODE_BUDGET = 1 << 22


class _Numeric:
    """Marker: no closed form; compute numerically via smb_series."""

    def __repr__(self) -> str:
        return "NUMERIC"


NUMERIC = _Numeric()

Rate = Union[float, _Numeric]


def _xlogx(v: np.ndarray) -> np.ndarray:
    out = np.zeros_like(v)
    pos = v > 0
    out[pos] = v[pos] * np.log(v[pos])
    return out


def entropy_rate(model: SourceModel) -> Rate:
    """Entropy rate in nats, or NUMERIC when no closed form exists."""
    if isinstance(model, Bernoulli):
        return float(-_xlogx(model.p).sum())
    if isinstance(model, Markov):
        rows = -_xlogx(model.transition).sum(axis=1)
        return float(model.pi @ rows)
    return NUMERIC


def cross_entropy_rate(model_q: SourceModel, model_p: SourceModel) -> Rate:
    """Cross entropy rate of Q relative to P in nats.

    +inf when Q puts mass where P has none; NUMERIC outside the two
    closed-form cases (a Bernoulli pair or a Markov pair).
    """
    if model_q.alphabet != model_p.alphabet:
        raise AlphabetMismatch("models use different alphabets")
    if isinstance(model_q, Bernoulli) and isinstance(model_p, Bernoulli):
        q, p = model_q.p, model_p.p
        if np.any((q > 0) & (p == 0)):
            return math.inf
        mask = q > 0
        return float(-(q[mask] * np.log(p[mask])).sum())
    if isinstance(model_q, Markov) and isinstance(model_p, Markov):
        pi_q, tq, tp = model_q.pi, model_q.transition, model_p.transition
        if np.any((pi_q > 0) & (model_p.pi == 0)):
            return math.inf
        weight = pi_q[:, None] * tq
        if np.any((weight > 0) & (tp == 0)):
            return math.inf
        mask = weight > 0
        return float(-(weight[mask] * np.log(tp[mask])).sum())
    return NUMERIC


# ---------------------------------------------------------------------------
# sampled -ln P / n series

@dataclass
class SmbSeries:
    """Per-trial values of -ln P[y(1..n)] / n for y drawn from Q."""

    n_grid: np.ndarray
    values: np.ndarray  # shape (trials, len(n_grid)); +inf on support misses

    def mean(self) -> np.ndarray:
        return self.values.mean(axis=0)

    def median(self) -> np.ndarray:
        return np.median(self.values, axis=0)

    def quartiles(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.percentile(self.values, 25, axis=0),
                np.percentile(self.values, 75, axis=0))


def smb_series(model_p: SourceModel, model_q: SourceModel,
               n_grid: Sequence[int], trials: int,
               rng: RngSpec | int) -> SmbSeries:
    """Sample trials paths from Q and score each prefix under P.

    Trials use independent substreams of the RngSpec (role "smb"), so the
    result does not depend on evaluation order.  A prefix outside the
    support of P scores +inf; that is recorded, not raised.
    """
    if model_p.alphabet != model_q.alphabet:
        raise AlphabetMismatch("models use different alphabets")
    if isinstance(rng, int):
        rng = RngSpec(rng)
    ns = np.asarray(sorted(n_grid), dtype=np.int64)
    if ns.size == 0 or ns[0] < 1:
        raise ValueError("n_grid must hold positive lengths")
    n_max = int(ns[-1])
    vals = np.empty((trials, ns.size))
    for t in range(trials):
        y = sample(model_q, n_max, rng.stream(t, "smb"))
        logs = log_marginal_prefixes(model_p, y, ns.tolist())
        vals[t] = -logs / ns
    return SmbSeries(ns, vals)


# ---------------------------------------------------------------------------
# joint support enumeration

class _BernoulliEnum:
    def __init__(self, model: Bernoulli):
        with np.errstate(divide="ignore"):
            self._logp = np.log(model.p)

    def start(self):
        return np.zeros(1), None

    def extend(self, logw, state, depth):
        return (logw[:, None] + self._logp[None, :]).ravel(), None

    def take(self, state, keep):
        return None


class _MarkovEnum:
    def __init__(self, model: Markov):
        with np.errstate(divide="ignore"):
            self._logpi = np.log(model.pi)
            self._logt = np.log(model.transition)
        self._a = model.alphabet.size

    def start(self):
        return np.zeros(1), None

    def extend(self, logw, state, depth):
        a = self._a
        if depth == 0:
            return logw[0] + self._logpi, np.arange(a)
        out = (logw[:, None] + self._logt[state]).ravel()
        return out, np.tile(np.arange(a), logw.size)

    def take(self, state, keep):
        return None if state is None else state[keep]


class _MatrixEnum:
    """Forward rows for matrix-product sources (covers Hmm via conversion)."""

    def __init__(self, model: Pmp):
        self._mats = model.matrices
        self._pi = model.pi

    def start(self):
        return np.zeros(1), self._pi[None, :].copy()

    def extend(self, logw, state, depth):
        pieces_w = []
        pieces_f = []
        for m in self._mats:
            g = state @ m
            c = g.sum(axis=1)
            with np.errstate(divide="ignore", invalid="ignore"):
                pieces_w.append(logw + np.log(c))
                f = g / c[:, None]
            f[~np.isfinite(f)] = 0.0
            pieces_f.append(f)
        logw2 = np.stack(pieces_w, axis=1).ravel()
        f2 = np.stack(pieces_f, axis=1).reshape(logw2.size, -1)
        return logw2, f2

    def take(self, state, keep):
        return state[keep]


class _CountableEnum:
    def __init__(self, model: CountableHmm):
        self._model = model
        self._smax = model.s_max

    def start(self):
        return np.zeros(1), self._model.pi[None, :].copy()

    def extend(self, logw, state, depth):
        width = state.shape[1]
        ups = self._model.up_probs(width)
        # label 0 forces the chain into state 0; label 1 shifts it up
        w_a = (state * (1.0 - ups)).sum(axis=1)
        f_a = np.zeros((logw.size, width + 1))
        f_a[:, 0] = 1.0
        g = state * ups
        w_b = g.sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            la = logw + np.log(w_a)
            lb = logw + np.log(w_b)
            f_b = np.zeros((logw.size, width + 1))
            f_b[:, 1:] = g / w_b[:, None]
        f_b[~np.isfinite(f_b)] = 0.0
        logw2 = np.stack([la, lb], axis=1).ravel()
        f2 = np.stack([f_a, f_b], axis=1).reshape(logw2.size, -1)
        return logw2, f2

    def take(self, state, keep):
        return state[keep]


def _enumerator_for(model: SourceModel):
    if isinstance(model, Bernoulli):
        return _BernoulliEnum(model)
    if isinstance(model, Markov):
        return _MarkovEnum(model)
    if isinstance(model, Hmm):
        return _MatrixEnum(pmp_from_hmm(model))
    if isinstance(model, Pmp):
        return _MatrixEnum(model)
    if isinstance(model, CountableHmm):
        return _CountableEnum(model)
    raise TypeError(f"not a source model: {model!r}")


def _joint_scan(model_p: SourceModel, model_q: SourceModel, n_max: int,
                node_budget: int):
    """Yield (depth, logP, logQ) over supp P_d intersect supp Q_d."""
    if model_p.alphabet != model_q.alphabet:
        raise AlphabetMismatch("models use different alphabets")
    a = model_p.alphabet.size
    ep, eq = _enumerator_for(model_p), _enumerator_for(model_q)
    lp, sp = ep.start()
    lq, sq = eq.start()
    visited = 0
    for depth in range(n_max):
        visited += lp.size * a
        if visited > node_budget:
            raise TooLarge(
                f"support enumeration needs > {node_budget} nodes at "
                f"depth {depth + 1}; raise node_budget or lower n")
        lp, sp = ep.extend(lp, sp, depth)
        lq, sq = eq.extend(lq, sq, depth)
        keep = np.nonzero(np.isfinite(lp) & np.isfinite(lq))[0]
        lp, lq = lp[keep], lq[keep]
        sp, sq = ep.take(sp, keep), eq.take(sq, keep)
        yield depth + 1, lp, lq


def _single_scan(model: SourceModel, n_max: int, node_budget: int):
    """Yield (depth, logP) over supp P_d for one model."""
    a = model.alphabet.size
    en = _enumerator_for(model)
    lp, sp = en.start()
    visited = 0
    for depth in range(n_max):
        visited += lp.size * a
        if visited > node_budget:
            raise TooLarge(
                f"support enumeration needs > {node_budget} nodes at "
                f"depth {depth + 1}; raise node_budget or lower n")
        lp, sp = en.extend(lp, sp, depth)
        keep = np.nonzero(np.isfinite(lp))[0]
        lp = lp[keep]
        sp = en.take(sp, keep)
        yield depth + 1, lp


# ---------------------------------------------------------------------------
# pressure

@dataclass
class PressureCurve:
    """q_n(alpha)/n on a fixed alpha grid, plus the joint support size."""

    n: int
    alphas: np.ndarray
    values: np.ndarray
    support_size: int

    def is_nondecreasing(self, tol: float = 1e-10) -> bool:
        return bool(np.all(np.diff(self.values) >= -tol))

    def is_convex(self, tol: float = 1e-9) -> bool:
        return bool(np.all(self.second_differences() >= -tol))

    def second_differences(self) -> np.ndarray:
        """Divided second differences; nonnegative for a convex curve."""
        a, v = self.alphas, self.values
        left = (v[1:-1] - v[:-2]) / (a[1:-1] - a[:-2])
        right = (v[2:] - v[1:-1]) / (a[2:] - a[1:-1])
        return right - left

    def value_at(self, alpha: float) -> float:
        idx = np.nonzero(np.isclose(self.alphas, alpha,
                                    rtol=1e-9, atol=1e-12))[0]
        if idx.size == 0:
            raise GridMissing(f"alpha={alpha} not on the grid")
        return float(self.values[idx[0]])


def pressure_curve(model_p: SourceModel, model_q: SourceModel, n: int,
                   alphas: Sequence[float],
                   node_budget: int = DEFAULT_NODE_BUDGET) -> PressureCurve:
    """Pressure of Q against P at depth n across an alpha grid."""
    curves = pressure_curves(model_p, model_q, [n], alphas, node_budget)
    return curves[0]


def pressure_curves(model_p: SourceModel, model_q: SourceModel,
                    ns: Sequence[int], alphas: Sequence[float],
                    node_budget: int = DEFAULT_NODE_BUDGET
                    ) -> list[PressureCurve]:
    """PressureCurve at several depths from a single enumeration pass."""
    ns = sorted(set(int(k) for k in ns))
    if not ns or ns[0] < 1:
        raise ValueError("depths must be positive")
    alphas = np.asarray(list(alphas), dtype=np.float64)
    want = set(ns)
    out = []
    for depth, lp, lq in _joint_scan(model_p, model_q, ns[-1], node_budget):
        if depth not in want:
            continue
        if lp.size == 0:
            vals = np.full(alphas.size, -math.inf)
        else:
            vals = np.array([logsumexp(lq - a * lp) for a in alphas]) / depth
        out.append(PressureCurve(depth, alphas, vals, int(lp.size)))
    return out


def sided_derivatives_at_zero(curve: PressureCurve,
                              step: float) -> tuple[float, float]:
    """Slopes through the origin from alpha = -step and +step.

    Finite-(n, step) proxies for the one-sided derivatives at zero; the
    grid must contain -step, 0, and +step or GridMissing is raised.
    """
    curve.value_at(0.0)
    v_minus = curve.value_at(-step)
    v_plus = curve.value_at(step)
    return (v_minus - 0.0) / (-step), (v_plus - 0.0) / step


# ---------------------------------------------------------------------------
# diagnostics

class NdVerdict(Enum):
    NEGATIVE = "negative"
    INCONCLUSIVE = "inconclusive"


@dataclass
class NdReport:
    """Sign check of the pressure at alpha = -1 along a depth grid."""

    n_grid: np.ndarray
    values: np.ndarray  # q_n(-1)/n
    eta: float
    verdict: NdVerdict


def nd_diagnostic(model_p: SourceModel, model_q: SourceModel,
                  n_grid: Sequence[int], eta: float = 1e-3,
                  node_budget: int = DEFAULT_NODE_BUDGET) -> NdReport:
    """NEGATIVE when q_n(-1)/n stays below -eta and is non-increasing
    over the last half of the grid; INCONCLUSIVE otherwise."""
    ns = sorted(set(int(k) for k in n_grid))
    if not ns or ns[0] < 1:
        raise ValueError("n_grid must hold positive depths")
    vals = {}
    for depth, lp, lq in _joint_scan(model_p, model_q, ns[-1], node_budget):
        if depth in set(ns):
            vals[depth] = (float(logsumexp(lq + lp)) / depth
                           if lp.size else -math.inf)
    series = np.array([vals[k] for k in ns])
    tail = series[len(ns) // 2:]
    below = bool(np.all(tail < -eta))
    falling = bool(np.all(np.diff(tail) <= 1e-12))
    verdict = NdVerdict.NEGATIVE if (below and falling) \
        else NdVerdict.INCONCLUSIVE
    return NdReport(np.asarray(ns), series, eta, verdict)


@dataclass
class SeReport:
    """Fit of the worst-case decay m_n = ln min supp-probability."""

    n_grid: np.ndarray
    values: np.ndarray  # m_n
    beta: float
    gamma_minus: float
    residuals: np.ndarray  # m_n - gamma_minus * n^beta, always >= 0

    @property
    def worst_residual(self) -> float:
        return float(self.residuals.max())


def se_diagnostic(model_p: SourceModel, n_grid: Sequence[int],
                  node_budget: int = DEFAULT_NODE_BUDGET) -> SeReport:
    """Bound m_n >= gamma_minus * n^beta from exact minimum probabilities.

    Tries beta = 1 first and keeps it unless the log-log slope of -m_n
    clearly exceeds 1, in which case the fitted slope is used.  With the
    reported gamma_minus the bound holds exactly on the grid.
    """
    ns = sorted(set(int(k) for k in n_grid))
    if not ns or ns[0] < 1:
        raise ValueError("n_grid must hold positive depths")
    vals = {}
    for depth, lp in _single_scan(model_p, ns[-1], node_budget):
        if depth in set(ns):
            vals[depth] = float(lp.min()) if lp.size else 0.0
    narr = np.asarray(ns, dtype=np.float64)
    m = np.array([vals[k] for k in ns])
    neg = m < 0
    beta = 1.0
    if neg.sum() >= 2:
        slope = np.polyfit(np.log(narr[neg]), np.log(-m[neg]), 1)[0]
        if slope > 1.15:
            beta = float(slope)
    gamma_minus = float((m / narr ** beta).min()) if m.size else 0.0
    residuals = m - gamma_minus * narr ** beta
    return SeReport(np.asarray(ns), m, beta, gamma_minus, residuals)
