"""
Search objectives: the mean tilde_p over all k-factor projections of a design,
maintained under single-column (+1, -1) swaps.
"""
import logging
import math
from itertools import combinations

import numpy as np
from scipy.special import comb

from rodeo.criteria.approx import projection_tilde_values
from rodeo.criteria.bridge import bridge_coefficients, bridge_constant, projection_share
from rodeo.design import Design, project
from rodeo.models import MaximalModel, weight_table
from rodeo.utils import Random

logger = logging.getLogger(__name__)


def adjustment_pairs(column):
    """
    (row_minus, row_plus) pairs of a column in lexicographic order, where
    row_minus holds -1 and row_plus holds +1.
    """
    minus = np.flatnonzero(column == -1)
    plus = np.flatnonzero(column == 1)
    for rm in minus:
        for rp in plus:
            yield int(rm), int(rp)


class SearchObjective:
    """
    Base class holding the weights shared by both engines. A bound objective owns a
    working copy of the design in a fixed column order.
    """

    engine = None

    def __init__(self, n_runs, k, prior, alpha, order=2):
        self.n_runs = n_runs
        self.k = k
        self.prior = prior
        self.alpha = alpha
        self.order = order
        self._weights = {}
        self.x = None

    def weights_for(self, k):
        if k not in self._weights:
            maximal = (
                MaximalModel.second_order(k)
                if self.order == 2
                else MaximalModel.first_order(k)
            )
            self._weights[k] = weight_table(maximal, self.prior, self.n_runs)
        return self._weights[k]

    @property
    def design(self):
        return Design(self.x)

    @property
    def factors(self):
        return self.x.shape[1]

    def bind(self, d):
        self.x = np.array(d.entries, dtype=np.int64)

    def value(self):
        raise NotImplementedError("Subclasses should implement this and return a float")

    def leave_one_out(self):
        raise NotImplementedError("Subclasses should implement this")

    def first_improvement(self, col, current, tol):
        raise NotImplementedError("Subclasses should implement this")

    def apply(self, col, rm, rp):
        self.x[rm, col] = 1
        self.x[rp, col] = -1


class WordObjective(SearchObjective):
    """
    Objective for exchangeable weights, computed from signed J sums of every factor
    subset up to length 4 (2 for main-effects maximal models). A swap in column c
    only changes the sums of subsets containing c.
    """

    engine = "words"

    def __init__(self, n_runs, k, prior, alpha, order=2):
        super().__init__(n_runs, k, prior, alpha, order)
        self.max_length = 4 if order == 2 else 2
        self._scales = {}

    def bind(self, d):
        super().bind(d)
        m = self.factors
        self._sums = {}
        self._containing = [dict() for _ in range(m)]
        for length in range(1, self.max_length + 1):
            subsets = np.array(list(combinations(range(m), length)), dtype=np.int64)
            subsets = subsets.reshape(-1, length)
            self._sums[length] = np.prod(self.x[:, subsets], axis=2).sum(axis=0)
            for c in range(m):
                idx = np.flatnonzero((subsets == c).any(axis=1))
                others = np.array([[f for f in subsets[i] if f != c] for i in idx])
                self._containing[c][length] = (idx, others.reshape(len(idx), length - 1))

    def _scale(self, m, k):
        """
        Design-independent constant and the multiplier of each sum(S^2) term.
        """
        if (m, k) not in self._scales:
            weights = self.weights_for(k)
            coefficients = bridge_coefficients(weights, self.alpha)
            n = self.n_runs
            multipliers = [
                c * projection_share(m, k, l) / n ** 3
                for l, c in enumerate(coefficients, start=1)
            ]
            multipliers += [0.0] * (self.max_length - len(multipliers))
            self._scales[(m, k)] = (bridge_constant(weights, self.alpha), multipliers)
        return self._scales[(m, k)]

    def _value(self, squares, m, k):
        constant, multipliers = self._scale(m, k)
        return constant + math.fsum(
            multipliers[l - 1] * squares[l] for l in range(1, self.max_length + 1)
        )

    def _squares(self):
        return {l: int(np.sum(s * s)) for l, s in self._sums.items()}

    def value(self):
        return self._value(self._squares(), self.factors, self.k)

    def leave_one_out(self):
        m = self.factors
        k = min(self.k, m - 1)
        total = self._squares()
        values = np.empty(m)
        for c in range(m):
            squares = {}
            for l, s in self._sums.items():
                idx, _ = self._containing[c][l]
                squares[l] = total[l] - int(np.sum(s[idx] * s[idx]))
            values[c] = self._value(squares, m - 1, k)
        return values

    def _others_product(self, col, length):
        idx, others = self._containing[col][length]
        if length == 1:
            return idx, np.ones((len(idx), self.n_runs), dtype=np.int64)
        return idx, np.prod(self.x[:, others], axis=2).T

    def first_improvement(self, col, current, tol):
        column = self.x[:, col]
        minus = np.flatnonzero(column == -1)
        plus = np.flatnonzero(column == 1)
        if not minus.size or not plus.size:
            return None

        _, multipliers = self._scale(self.factors, self.k)
        change = np.zeros((minus.size, plus.size))
        for length in range(1, self.max_length + 1):
            if multipliers[length - 1] == 0:
                continue
            idx, u = self._others_product(col, length)
            if not idx.size:
                continue
            s = self._sums[length][idx]
            step = 2 * u[:, minus][:, :, None] - 2 * u[:, plus][:, None, :]
            exact = np.sum(step * (2 * s[:, None, None] + step), axis=0)
            change += multipliers[length - 1] * exact

        improving = change < -tol
        if not improving.any():
            return None
        i, j = np.unravel_index(np.argmax(improving), improving.shape)
        return int(minus[i]), int(plus[j])

    def apply(self, col, rm, rp):
        for length in range(1, self.max_length + 1):
            idx, u = self._others_product(col, length)
            self._sums[length][idx] += 2 * u[:, rm] - 2 * u[:, rp]
        super().apply(col, rm, rp)


class DirectObjective(SearchObjective):
    """
    Objective for arbitrary weights, evaluating tilde_p projection by projection.
    A swap in column c only re-evaluates projections containing c.

    With `subsample` in (0, 1) a seeded random share of the projections is scored.
    """

    engine = "direct"

    def __init__(self, n_runs, k, prior, alpha, order=2, subsample=0.0, seed=None):
        super().__init__(n_runs, k, prior, alpha, order)
        self.subsample = subsample
        self.seed = seed

    def _subsets(self, m, k):
        subsets = np.array(list(combinations(range(m), k)), dtype=np.int64)
        if 0 < self.subsample < 1:
            size = max(1, int(round(self.subsample * len(subsets))))
            with Random(self.seed):
                keep = np.sort(np.random.choice(len(subsets), size, replace=False))
            subsets = subsets[keep]
        return subsets

    def _tilde_p(self, d, k, subsets):
        ta, ti = projection_tilde_values(d, self.weights_for(k), subsets=subsets)
        return self.alpha * ti + (1 - self.alpha) * ta

    def bind(self, d):
        super().bind(d)
        self.subsets = self._subsets(self.factors, self.k)
        self._values = self._tilde_p(self.design, self.k, self.subsets)

    def value(self):
        return math.fsum(self._values) / len(self._values)

    def leave_one_out(self):
        m = self.factors
        k = min(self.k, m - 1)
        d = self.design
        values = np.empty(m)
        for c in range(m):
            reduced = project(d, [f for f in range(m) if f != c])
            per = self._tilde_p(reduced, k, self._subsets(m - 1, k))
            values[c] = math.fsum(per) / len(per)
        return values

    def _candidate(self, col, rm, rp):
        x = self.x.copy()
        x[rm, col] = 1
        x[rp, col] = -1
        return Design(x)

    def first_improvement(self, col, current, tol):
        touched = (self.subsets == col).any(axis=1)
        if not touched.any():
            return None
        base = math.fsum(self._values[~touched])
        n = len(self._values)
        for rm, rp in adjustment_pairs(self.x[:, col]):
            new = self._tilde_p(self._candidate(col, rm, rp), self.k, self.subsets[touched])
            if (base + math.fsum(new)) / n < current - tol:
                return rm, rp
        return None

    def apply(self, col, rm, rp):
        super().apply(col, rm, rp)
        touched = (self.subsets == col).any(axis=1)
        self._values[touched] = self._tilde_p(self.design, self.k, self.subsets[touched])


def make_objective(cfg, seed=None):
    """
    Build the objective engine a SearchConfig asks for. 'auto' picks the word engine
    whenever the prior is symmetric.
    """
    engine = cfg.engine
    if engine == "auto":
        engine = "words" if cfg.prior.is_symmetric else "direct"
    if engine == "words":
        if cfg.subsample:
            logger.warning("Projection subsampling has no effect with the word engine")
        return WordObjective(cfg.n_runs, cfg.k, cfg.prior, cfg.alpha, cfg.order)
    return DirectObjective(
        cfg.n_runs,
        cfg.k,
        cfg.prior,
        cfg.alpha,
        cfg.order,
        subsample=cfg.subsample,
        seed=seed,
    )


def n_projections(m, k):
    return comb(m, k, exact=True)
