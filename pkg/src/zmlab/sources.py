"""Stationary source models: construction, sampling, exact log-probabilities.

Five families share one small protocol (validate on construction, sample,
log_marginal):

  Bernoulli     independent draws from a fixed distribution
  Markov        first-order chain on the visible alphabet
  Hmm           hidden finite chain with per-state emission rows
  Pmp           matrix-product form: P[a_1..a_n] = pi M_{a_1} ... M_{a_n} 1
                with nonnegative letter matrices summing to a stochastic M
  CountableHmm  increment-or-reset chain on the nonnegative integers with
                stationary weights exp(-gamma(n)); state 0 emits the first
                label, every other state emits the second

Probabilities of long strings underflow linearly, so every marginal is
computed in log domain with per-step renormalization.  The CountableHmm
keeps an adaptive window of reachable states, which stays small because
observing the first label pins the hidden state to 0.

Sampling is deterministic given an RngSpec: each (trial, role) pair gets
an independent substream derived from the master seed, so runs reproduce
byte for byte and trials can be distributed across processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .core import Alphabet, Seq, alphabet
from .errors import (BadGamma, ConfigError, InvalidModel, NotIrreducible,
                     TruncationTooTight)

_SUM_TOL = 1e-12
_STAT_TOL = 1e-10

_ROLE_IDS = {"x": 0, "y": 1, "smb": 2, "aux": 3}


def _role_id(role) -> int:
    if isinstance(role, int):
        return role
    try:
        return _ROLE_IDS[role]
    except KeyError:
        raise ValueError(f"unknown rng role {role!r}") from None


@dataclass(frozen=True)
class RngSpec:
    """Master seed plus a deterministic (trial, role) -> stream derivation."""

    master_seed: int = 0

    def _seq(self, trial: int, role) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            self.master_seed, spawn_key=(_role_id(role), trial))

    def stream(self, trial: int, role) -> np.random.Generator:
        return np.random.default_rng(self._seq(trial, role))

    def seed_of(self, trial: int, role) -> int:
        """A stable integer identifying the substream, for logging."""
        return int(self._seq(trial, role).generate_state(1, np.uint64)[0])


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.float64)
    arr.flags.writeable = False
    return arr


def _check_prob_vector(v: np.ndarray, what: str, tol: float = _SUM_TOL):
    if v.ndim != 1:
        raise InvalidModel(f"{what} must be a vector")
    if np.any(v < 0) or not np.all(np.isfinite(v)):
        raise InvalidModel(f"{what} has negative or non-finite entries")
    if abs(float(v.sum()) - 1.0) > tol:
        raise InvalidModel(f"{what} sums to {v.sum()!r}, not 1")


def _check_stochastic(m: np.ndarray, what: str, tol: float = _SUM_TOL):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidModel(f"{what} must be square")
    if np.any(m < 0) or not np.all(np.isfinite(m)):
        raise InvalidModel(f"{what} has negative or non-finite entries")
    rows = m.sum(axis=1)
    if np.max(np.abs(rows - 1.0)) > tol:
        raise InvalidModel(f"{what} rows do not sum to 1")


def _check_stationary(pi: np.ndarray, m: np.ndarray, what: str):
    if np.max(np.abs(pi @ m - pi)) > _STAT_TOL:
        raise InvalidModel(f"{what}: pi is not stationary for the transition")


@dataclass(frozen=True)
class Bernoulli:
    alphabet: Alphabet
    p: np.ndarray

    def __post_init__(self):
        p = _freeze(self.p)
        object.__setattr__(self, "p", p)
        if p.shape != (self.alphabet.size,):
            raise InvalidModel("p length must match alphabet size")
        _check_prob_vector(p, "Bernoulli.p")


@dataclass(frozen=True)
class Markov:
    alphabet: Alphabet
    transition: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        t = _freeze(self.transition)
        pi = _freeze(self.pi)
        object.__setattr__(self, "transition", t)
        object.__setattr__(self, "pi", pi)
        a = self.alphabet.size
        if t.shape != (a, a):
            raise InvalidModel("transition must be alphabet-sized and square")
        _check_stochastic(t, "Markov.transition")
        _check_prob_vector(pi, "Markov.pi")
        _check_stationary(pi, t, "Markov")


@dataclass(frozen=True)
class Hmm:
    alphabet: Alphabet
    pi: np.ndarray
    transition: np.ndarray
    emission: np.ndarray

    def __post_init__(self):
        pi = _freeze(self.pi)
        t = _freeze(self.transition)
        r = _freeze(self.emission)
        for name, val in (("pi", pi), ("transition", t), ("emission", r)):
            object.__setattr__(self, name, val)
        s = pi.shape[0]
        if t.shape != (s, s):
            raise InvalidModel("Hmm.transition shape does not match pi")
        if r.ndim != 2 or r.shape != (s, self.alphabet.size):
            raise InvalidModel("Hmm.emission must be states x alphabet")
        _check_prob_vector(pi, "Hmm.pi")
        _check_stochastic(t, "Hmm.transition")
        if np.any(r < 0) or np.max(np.abs(r.sum(axis=1) - 1.0)) > _SUM_TOL:
            raise InvalidModel("Hmm.emission rows must be distributions")
        _check_stationary(pi, t, "Hmm")

    @property
    def n_states(self) -> int:
        return int(self.pi.shape[0])


@dataclass(frozen=True)
class Pmp:
    """Matrix-product source: one nonnegative matrix per letter."""

    alphabet: Alphabet
    pi: np.ndarray
    matrices: np.ndarray  # shape (alphabet, states, states)

    def __post_init__(self):
        pi = _freeze(self.pi)
        m = _freeze(self.matrices)
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "matrices", m)
        s = pi.shape[0]
        if m.ndim != 3 or m.shape != (self.alphabet.size, s, s):
            raise InvalidModel("Pmp.matrices must be alphabet x states^2")
        if np.any(m < 0) or not np.all(np.isfinite(m)):
            raise InvalidModel("Pmp letter matrices must be nonnegative")
        total = m.sum(axis=0)
        rows = total.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > _STAT_TOL:
            raise InvalidModel("sum of Pmp letter matrices is not stochastic")
        _check_prob_vector(pi, "Pmp.pi")
        if np.max(np.abs(pi @ total - pi)) > _STAT_TOL:
            raise InvalidModel("Pmp.pi is not stationary for the summed matrix")

    @property
    def n_states(self) -> int:
        return int(self.pi.shape[0])


@dataclass(frozen=True)
class GammaSpec:
    """Cost sequence gamma(0), gamma(1), ... for the countable chain.

    Named kinds evaluate in closed form; custom tables extend past their
    last entry linearly with the final gap so the chain stays defined on
    all of the nonnegative integers.
    """

    kind: str
    table: np.ndarray | None = None

    def values(self, ns) -> np.ndarray:
        ns = np.asarray(ns, dtype=np.float64)
        if self.kind == "n_squared":
            return ns * ns
        if self.kind == "n_plus_log":
            return ns + np.log1p(ns)
        tab = self.table
        last = len(tab) - 1
        gap = tab[-1] - tab[-2] if last >= 1 else 1.0
        inside = np.minimum(ns.astype(np.int64), last)
        out = tab[inside] + np.maximum(ns - last, 0.0) * gap
        return out

    def tail_gap(self, s: int) -> float:
        """Lower bound on gamma(m+1) - gamma(m) over all m >= s."""
        if self.kind == "n_squared":
            return 2.0 * s + 1.0
        if self.kind == "n_plus_log":
            return 1.0
        tab = self.table
        gaps = np.diff(tab)
        final = float(gaps[-1]) if gaps.size else 1.0
        inside = gaps[s:] if s < gaps.size else np.empty(0)
        return float(min(final, inside.min())) if inside.size else final


def _coerce_gamma(gamma) -> GammaSpec:
    if isinstance(gamma, GammaSpec):
        if gamma.kind not in ("n_squared", "n_plus_log", "custom"):
            raise BadGamma(f"unknown gamma kind {gamma.kind!r}")
        if gamma.kind == "custom" and (gamma.table is None
                                       or len(gamma.table) < 2):
            raise BadGamma("custom gamma needs a table of length >= 2")
        return gamma
    if isinstance(gamma, str):
        if gamma not in ("n_squared", "n_plus_log"):
            raise BadGamma(f"unknown gamma kind {gamma!r}")
        return GammaSpec(gamma)
    table = _freeze(np.asarray(gamma, dtype=np.float64))
    if table.ndim != 1 or table.size < 2:
        raise BadGamma("custom gamma needs a table of length >= 2")
    return GammaSpec("custom", table)


@dataclass(frozen=True)
class CountableHmm:
    """Increment-or-reset chain with stationary weights exp(-gamma(n)).

    From state i the chain moves to i+1 with probability
    exp(gamma(i) - gamma(i+1)) and falls back to 0 otherwise.  Only the
    initial distribution is truncated (at s_max, renormalized); dynamics
    and sampling run on the full countable state space.
    """

    alphabet: Alphabet
    gamma: GammaSpec
    s_max: int
    delta: float
    pi: np.ndarray = field(repr=False)
    tail_bound: float

    def up_probs(self, hi: int) -> np.ndarray:
        """exp(gamma(i) - gamma(i+1)) for i = 0..hi-1."""
        g = self.gamma.values(np.arange(hi + 1))
        return np.exp(g[:-1] - g[1:])


def countable_hmm_build(gamma, s_max: int = 64, delta: float = 1e-12,
                        labels: str = "ab") -> CountableHmm:
    """Validate a cost sequence and build the chain around it.

    Raises BadGamma when gamma(0) != 0 or some gap is nonpositive, and
    TruncationTooTight when the stationary mass beyond s_max cannot be
    certified below delta.
    """
    spec = _coerce_gamma(gamma)
    if s_max < 1:
        raise BadGamma("s_max must be at least 1")
    g = spec.values(np.arange(s_max + 2))
    if abs(float(g[0])) > 1e-12:
        raise BadGamma(f"gamma(0) must be 0, got {g[0]!r}")
    gaps = np.diff(g)
    if np.min(gaps) <= 0:
        k = int(np.argmin(gaps))
        raise BadGamma(f"gamma must strictly increase; gap at n={k} "
                       f"is {gaps[k]!r}")
    weights = np.exp(-g[:s_max + 1])
    z = float(weights.sum())
    eps = spec.tail_gap(s_max + 1)
    if eps <= 0:
        raise BadGamma("gamma gaps must stay positive past the truncation")
    tail = float(np.exp(-g[s_max + 1]) / -np.expm1(-eps))
    if tail / z >= delta:
        raise TruncationTooTight(
            f"tail mass bound {tail / z:.3e} >= delta {delta:.3e}; "
            f"raise s_max")
    return CountableHmm(alphabet(labels), spec, s_max, delta,
                        _freeze(weights / z), tail / z)


SourceModel = Union[Bernoulli, Markov, Hmm, Pmp, CountableHmm]


def stationary_vector(transition: np.ndarray, tol: float = 1e-12
                      ) -> np.ndarray:
    """Unique stationary distribution of an irreducible stochastic matrix.

    Solves the balance equations directly and polishes with damped
    iteration until the residual drops below tol.  Raises NotIrreducible
    with the strongly-connected split when there is no unique answer.
    """
    t = np.asarray(transition, dtype=np.float64)
    _check_stochastic(t, "transition")
    s = t.shape[0]
    if s == 1:
        return np.array([1.0])
    n_comp, labels = connected_components(csr_matrix(t > 0),
                                          connection="strong")
    if n_comp > 1:
        comps = [sorted(np.nonzero(labels == k)[0].tolist())
                 for k in range(n_comp)]
        raise NotIrreducible(comps)
    a = t.T - np.eye(s)
    a[-1, :] = 1.0
    b = np.zeros(s)
    b[-1] = 1.0
    pi = np.linalg.solve(a, b)
    pi = np.clip(pi, 0.0, None)
    pi /= pi.sum()
    for _ in range(100000):
        if np.max(np.abs(pi @ t - pi)) <= tol:
            return pi
        pi = 0.5 * (pi + pi @ t)
        pi /= pi.sum()
    raise InvalidModel("stationary vector iteration failed to converge")


def markov_from_transition(alph: Alphabet, transition) -> Markov:
    """Markov model with the stationary vector computed, not supplied."""
    t = np.asarray(transition, dtype=np.float64)
    return Markov(alph, t, stationary_vector(t))


def hmm_from_parts(alph: Alphabet, transition, emission) -> Hmm:
    """Hmm with the hidden stationary vector computed from the transition."""
    t = np.asarray(transition, dtype=np.float64)
    return Hmm(alph, stationary_vector(t), t, np.asarray(emission,
                                                         dtype=np.float64))


def pmp_from_hmm(h: Hmm) -> Pmp:
    """Letter-matrix form of an Hmm: M_a = diag(emission[:, a]) @ transition.

    The two models assign identical probabilities to every string.
    """
    mats = np.stack([np.diag(h.emission[:, a]) @ h.transition
                     for a in range(h.alphabet.size)])
    return Pmp(h.alphabet, h.pi, mats)


# ---------------------------------------------------------------------------
# sampling

def _inverse_cdf(cum: np.ndarray, u: float) -> int:
    return int(np.searchsorted(cum, u, side="right"))


def sample(model: SourceModel, n: int, rng: np.random.Generator) -> Seq:
    """Draw one stationary sample path of length n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(model, Bernoulli):
        cum = np.cumsum(model.p)
        syms = np.searchsorted(cum, rng.random(n), side="right")
        return Seq(model.alphabet, np.minimum(syms, model.alphabet.size - 1))
    if isinstance(model, Markov):
        return Seq(model.alphabet, _sample_chain(
            model.pi, model.transition, n, rng))
    if isinstance(model, Hmm):
        states = _sample_chain(model.pi, model.transition, n, rng)
        cum_r = np.cumsum(model.emission, axis=1)
        u = rng.random(n)
        syms = (u[:, None] >= cum_r[states]).sum(axis=1)
        return Seq(model.alphabet, np.minimum(syms, model.alphabet.size - 1))
    if isinstance(model, Pmp):
        return Seq(model.alphabet, _sample_pmp(model, n, rng))
    if isinstance(model, CountableHmm):
        return Seq(model.alphabet, _sample_countable(model, n, rng))
    raise TypeError(f"not a source model: {model!r}")


def _sample_chain(pi: np.ndarray, t: np.ndarray, n: int,
                  rng: np.random.Generator) -> np.ndarray:
    out = np.empty(n, dtype=np.int64)
    if n == 0:
        return out
    us = rng.random(n).tolist()
    cum_rows = [row for row in np.cumsum(t, axis=1)]
    s = _inverse_cdf(np.cumsum(pi), us[0])
    out[0] = s
    nstates = t.shape[0]
    for k in range(1, n):
        u = us[k]
        row = cum_rows[s]
        s = 0
        while s < nstates - 1 and u >= row[s]:
            s += 1
        out[k] = s
    return out


def _sample_pmp(model: Pmp, n: int, rng: np.random.Generator) -> np.ndarray:
    out = np.empty(n, dtype=np.int64)
    if n == 0:
        return out
    us = rng.random(n)
    v = model.pi.copy()
    mats = model.matrices
    a = model.alphabet.size
    for k in range(n):
        w = np.einsum("s,asr->a", v, mats)
        w = np.maximum(w, 0.0)
        cum = np.cumsum(w / w.sum())
        sym = min(_inverse_cdf(cum, us[k]), a - 1)
        out[k] = sym
        v = v @ mats[sym]
        v /= v.sum()
    return out


def _sample_countable(model: CountableHmm, n: int,
                      rng: np.random.Generator) -> np.ndarray:
    out = np.empty(n, dtype=np.int64)
    if n == 0:
        return out
    us = rng.random(n + 1).tolist()
    state = _inverse_cdf(np.cumsum(model.pi), us[0])
    state = min(state, model.s_max)
    gamma = model.gamma
    # grow the up-probability cache on demand; runs stay short in practice
    ups = model.up_probs(max(state + 1, 8)).tolist()
    for k in range(n):
        out[k] = 0 if state == 0 else 1
        if state + 1 >= len(ups):
            ups = model.up_probs(2 * len(ups)).tolist()
        state = state + 1 if us[k + 1] < ups[state] else 0
    return out


def sample_batch(model: SourceModel, n: int, count: int,
                 rng: np.random.Generator) -> np.ndarray:
    """count independent stationary paths as a (count, n) symbol array.

    Vectorized across paths; meant for Monte-Carlo frequency checks where
    calling sample() count times would dominate the runtime.
    """
    if isinstance(model, Bernoulli):
        cum = np.cumsum(model.p)
        syms = np.searchsorted(cum, rng.random((count, n)), side="right")
        return np.minimum(syms, model.alphabet.size - 1)
    if isinstance(model, Markov):
        return _batch_chain(model.pi, model.transition, n, count, rng)
    if isinstance(model, Hmm):
        states = _batch_chain(model.pi, model.transition, n, count, rng)
        cum_r = np.cumsum(model.emission, axis=1)
        u = rng.random((count, n))
        syms = (u[:, :, None] >= cum_r[states]).sum(axis=2)
        return np.minimum(syms, model.alphabet.size - 1)
    if isinstance(model, Pmp):
        return np.stack([_sample_pmp(model, n, rng) for _ in range(count)])
    if isinstance(model, CountableHmm):
        g = model.gamma.values(np.arange(model.s_max + n + 2))
        ups = np.exp(g[:-1] - g[1:])
        states = np.searchsorted(np.cumsum(model.pi), rng.random(count),
                                 side="right")
        states = np.minimum(states, model.s_max)
        out = np.empty((count, n), dtype=np.int64)
        for k in range(n):
            out[:, k] = states > 0
            u = rng.random(count)
            states = np.where(u < ups[states], states + 1, 0)
        return out
    raise TypeError(f"not a source model: {model!r}")


def _batch_chain(pi: np.ndarray, t: np.ndarray, n: int, count: int,
                 rng: np.random.Generator) -> np.ndarray:
    out = np.empty((count, n), dtype=np.int64)
    if n == 0:
        return out
    nstates = t.shape[0]
    cum_rows = np.cumsum(t, axis=1)
    s = np.searchsorted(np.cumsum(pi), rng.random(count), side="right")
    s = np.minimum(s, nstates - 1)
    out[:, 0] = s
    for k in range(1, n):
        u = rng.random(count)
        s = (u[:, None] >= cum_rows[s]).sum(axis=1)
        s = np.minimum(s, nstates - 1)
        out[:, k] = s
    return out


# ---------------------------------------------------------------------------
# log-probabilities

def log_marginal(model: SourceModel, seq: Seq) -> float:
    """ln P[seq], exactly -inf when the model gives the string zero mass."""
    n = len(seq)
    if n == 0:
        return 0.0
    return float(log_marginal_prefixes(model, seq, [n])[0])


def log_marginal_prefixes(model: SourceModel, seq: Seq,
                          ns: Sequence[int]) -> np.ndarray:
    """ln P[seq[1..n]] for each n in ns, in one forward pass."""
    ns = list(ns)
    if any(k < 1 or k > len(seq) for k in ns):
        raise ValueError("prefix lengths must lie in 1..len(seq)")
    if seq.alphabet != model.alphabet:
        from .errors import AlphabetMismatch
        raise AlphabetMismatch("sequence alphabet differs from the model")
    syms = seq.symbols
    if isinstance(model, Bernoulli):
        with np.errstate(divide="ignore"):
            steps = np.log(model.p)[syms]
        cum = np.cumsum(steps)
        return cum[np.asarray(ns) - 1]
    if isinstance(model, Markov):
        with np.errstate(divide="ignore"):
            log_pi = np.log(model.pi)
            log_t = np.log(model.transition)
        steps = np.empty(len(seq))
        steps[0] = log_pi[syms[0]]
        steps[1:] = log_t[syms[:-1], syms[1:]]
        cum = np.cumsum(steps)
        return cum[np.asarray(ns) - 1]
    if isinstance(model, (Hmm, Pmp)):
        return _scan_marginals(model, syms, ns)
    if isinstance(model, CountableHmm):
        return _countable_marginals(model, syms, ns)
    raise TypeError(f"not a source model: {model!r}")


def _scan_marginals(model, syms: np.ndarray, ns: list) -> np.ndarray:
    n_max = max(ns)
    want = {k: i for i, k in enumerate(ns)}
    out = np.empty(len(ns))
    if isinstance(model, Hmm):
        t, r = model.transition, model.emission
        step = [t * r[None, :, a] for a in range(model.alphabet.size)]
        v = model.pi * r[:, syms[0]]
    else:
        step = [model.matrices[a] for a in range(model.alphabet.size)]
        v = model.pi @ model.matrices[syms[0]]
    logp = 0.0
    dead = False
    for k in range(n_max):
        if k > 0:
            if not dead:
                v = v @ step[syms[k]]
        if not dead:
            c = float(v.sum())
            if c <= 0.0:
                dead = True
                logp = -math.inf
            else:
                logp += math.log(c)
                v = v / c
        i = want.get(k + 1)
        if i is not None:
            out[i] = logp
    return out


def _countable_marginals(model: CountableHmm, syms: np.ndarray,
                         ns: list) -> np.ndarray:
    n_max = max(ns)
    want = {k: i for i, k in enumerate(ns)}
    out = np.empty(len(ns))
    g = model.gamma.values(np.arange(model.s_max + n_max + 2))
    ups = np.exp(g[:-1] - g[1:])
    buf = np.zeros(model.s_max + n_max + 2)
    buf[:model.s_max + 1] = model.pi
    hi = model.s_max + 1
    logp = 0.0
    dead = False
    for k, a in enumerate(syms[:n_max].tolist()):
        if not dead:
            if a == 0:
                w = buf[0]
                if w <= 0.0:
                    dead = True
                else:
                    logp += math.log(w)
                    if hi > 2:
                        buf[2:hi] = 0.0
                    buf[0] = 1.0 - ups[0]
                    buf[1] = ups[0]
                    hi = 2
            else:
                seg = buf[1:hi].copy()
                tot = float(seg.sum())
                if tot <= 0.0:
                    dead = True
                else:
                    logp += math.log(tot)
                    seg /= tot
                    up_seg = ups[1:hi]
                    buf[0] = float((seg * (1.0 - up_seg)).sum())
                    buf[2:hi + 1] = seg * up_seg
                    buf[1] = 0.0
                    hi += 1
        if dead:
            logp = -math.inf
        i = want.get(k + 1)
        if i is not None:
            out[i] = logp
    return out


# ---------------------------------------------------------------------------
# model spec files

def model_from_dict(d: dict, where: str = "model") -> SourceModel:
    """Build a model from its JSON dictionary form.

    Structural problems raise ConfigError naming the offending field;
    numeric problems surface as InvalidModel from the constructors.
    Stationary vectors are computed when absent and verified when given.
    """
    if not isinstance(d, dict):
        raise ConfigError(where, "must be an object")
    kind = d.get("type")
    if kind == "bernoulli":
        alph = _labels_of(d, where)
        return Bernoulli(alph, _array_of(d, "p", where))
    if kind == "markov":
        alph = _labels_of(d, where)
        t = _array_of(d, "transition", where)
        if "pi" in d:
            return Markov(alph, t, _array_of(d, "pi", where))
        return markov_from_transition(alph, t)
    if kind == "hmm":
        alph = _labels_of(d, where)
        t = _array_of(d, "transition", where)
        r = _array_of(d, "emission", where)
        if "pi" in d:
            return Hmm(alph, _array_of(d, "pi", where), t, r)
        return hmm_from_parts(alph, t, r)
    if kind == "pmp":
        alph = _labels_of(d, where)
        mats = _array_of(d, "matrices", where)
        if "pi" in d:
            pi = _array_of(d, "pi", where)
        else:
            pi = stationary_vector(np.asarray(mats).sum(axis=0))
        return Pmp(alph, pi, mats)
    if kind == "countable_hmm":
        gamma = d.get("gamma")
        if gamma is None:
            raise ConfigError(f"{where}.gamma", "is required")
        labels = d.get("labels", ["a", "b"])
        if len(labels) != 2:
            raise ConfigError(f"{where}.labels",
                              "countable_hmm uses exactly two labels")
        return countable_hmm_build(
            gamma, int(d.get("s_max", 64)), float(d.get("delta", 1e-12)),
            labels="".join(labels))
    raise ConfigError(f"{where}.type", f"unknown model type {kind!r}")


def _labels_of(d: dict, where: str) -> Alphabet:
    labels = d.get("labels")
    if not isinstance(labels, list) or len(labels) < 2:
        raise ConfigError(f"{where}.labels", "need a list of 2+ labels")
    try:
        return Alphabet(tuple(labels))
    except ValueError as e:
        raise ConfigError(f"{where}.labels", str(e)) from None


def _array_of(d: dict, key: str, where: str) -> np.ndarray:
    if key not in d:
        raise ConfigError(f"{where}.{key}", "is required")
    try:
        return np.asarray(d[key], dtype=np.float64)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}.{key}", "is not numeric") from None


def model_to_dict(model: SourceModel) -> dict:
    labels = list(model.alphabet.labels)
    if isinstance(model, Bernoulli):
        return {"type": "bernoulli", "labels": labels,
                "p": model.p.tolist()}
    if isinstance(model, Markov):
        return {"type": "markov", "labels": labels,
                "transition": model.transition.tolist(),
                "pi": model.pi.tolist()}
    if isinstance(model, Hmm):
        return {"type": "hmm", "labels": labels, "pi": model.pi.tolist(),
                "transition": model.transition.tolist(),
                "emission": model.emission.tolist()}
    if isinstance(model, Pmp):
        return {"type": "pmp", "labels": labels, "pi": model.pi.tolist(),
                "matrices": model.matrices.tolist()}
    if isinstance(model, CountableHmm):
        gamma = (model.gamma.table.tolist()
                 if model.gamma.kind == "custom" else model.gamma.kind)
        return {"type": "countable_hmm", "labels": labels, "gamma": gamma,
                "s_max": model.s_max, "delta": model.delta}
    raise TypeError(f"not a source model: {model!r}")
