"""
Inversion-free approximations of the robust criteria.

Every criterion is a weighted sum of r_ij = a_ij^2 / (a_ii^2 a_jj) over the Gram
matrix of the maximal model, so submodels only enter through the pairwise
weights p_ij.
"""
import logging
import math
from collections import namedtuple
from dataclasses import dataclass
from itertools import combinations, islice

import numpy as np
from scipy.special import comb
from tqdm import tqdm

from rodeo import config
from rodeo.criteria.exact import moment_diagonal
from rodeo.design import model_matrix
from rodeo.exceptions import DimensionsIncompatible, WrongInput

logger = logging.getLogger(__name__)

TildeValues = namedtuple("TildeValues", ["tilde_a", "tilde_i", "tilde_p"])


@dataclass(frozen=True)
class RTable:
    """
    r[i, j] = a_ij^2 / (a_ii^2 a_jj) for the maximal-model Gram matrix `a`.
    """

    r: np.ndarray
    a: np.ndarray

    @property
    def v(self):
        return self.r.shape[0] - 1


@dataclass(frozen=True)
class AlphaWeights:
    """
    Per-effect coefficients of the blended criterion: alpha for the intercept,
    1 - 2 alpha / 3 for mains and 1 - 8 alpha / 9 for interactions, i.e.
    alpha * g_i + (1 - alpha) * [i >= 1].
    """

    alpha: float
    coefficients: np.ndarray
    g: np.ndarray

    @classmethod
    def for_model(cls, maximal, alpha):
        if not 0.0 <= alpha <= 1.0:
            raise WrongInput(f"alpha must lie in [0, 1], got {alpha}.")
        g = moment_diagonal(maximal)
        indicator = np.ones_like(g)
        indicator[0] = 0.0
        return cls(alpha=alpha, coefficients=alpha * g + (1 - alpha) * indicator, g=g)


def _r_from_gram(a):
    a = a.astype(float)
    diag = np.diagonal(a, axis1=-2, axis2=-1)
    return a * a / (diag[..., :, None] ** 2 * diag[..., None, :])


def r_table(d, maximal):
    """
    RTable of a design's full maximal-model matrix. Gram entries are exact integers.
    """
    x = model_matrix(d, maximal)
    a = x.T @ x
    return RTable(r=_r_from_gram(a), a=a)


def _check_dims(r, weights):
    if r.r.shape != weights.p_pair.shape:
        raise DimensionsIncompatible(
            f"RTable has {r.v + 1} effects but weights have {weights.p_pair.shape[0]}."
        )


def tilde_criteria(r, weights, alpha):
    """
    Approximate criteria from an RTable and pairwise weights:
    tilde_i = sum_ij g_i r_ij p_ij, tilde_a = sum_{i>=1} sum_j r_ij p_ij,
    tilde_p = alpha tilde_i + (1 - alpha) tilde_a.

    :param r: An RTable.
    :param weights: A WeightTable over the same maximal model.
    :param alpha: Blend weight in [0, 1].
    :return: TildeValues.
    """
    _check_dims(r, weights)
    aw = AlphaWeights.for_model(weights.maximal, alpha)
    rp = r.r * weights.p_pair
    tilde_i = math.fsum((aw.g[:, None] * rp).ravel())
    tilde_a = math.fsum(rp[1:, :].ravel())
    return TildeValues(tilde_a, tilde_i, alpha * tilde_i + (1 - alpha) * tilde_a)


def tilde_p_direct(r, weights, alpha):
    """
    tilde_p from the per-effect alpha coefficients in one sum.
    """
    _check_dims(r, weights)
    aw = AlphaWeights.for_model(weights.maximal, alpha)
    return math.fsum((aw.coefficients[:, None] * r.r * weights.p_pair).ravel())


def projection_grams(d, maximal, subsets):
    """
    Gram matrices of the maximal-model matrices of a batch of projections.

    :param d: A Design.
    :param maximal: A k-factor MaximalModel applied to every projection.
    :param subsets: (B, k) integer array of column subsets.
    :return: (B, v+1, v+1) integer array.
    """
    mains = np.transpose(d.entries[:, subsets], (1, 0, 2))
    blocks = [np.ones(mains.shape[:2] + (1,), dtype=np.int64), mains]
    if maximal.k_star:
        pairs = np.array(maximal.interactions)
        blocks.append(mains[:, :, pairs[:, 0]] * mains[:, :, pairs[:, 1]])
    x = np.concatenate(blocks, axis=2)
    return np.einsum("bni,bnj->bij", x, x)


def _batches(iterable, size):
    it = iter(iterable)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64)


def projection_tilde_values(
    d, weights, subsets=None, batch_size=None, show_progress=False
):
    """
    tilde_a and tilde_i of every listed k-factor projection.

    :param d: A Design.
    :param weights: WeightTable over a k-factor maximal model, shared by all projections.
    :param subsets: Iterable of column subsets, all k-subsets in combinations() order by default.
    :param batch_size: Projections per batch, config.approx.batch_size by default.
    :param show_progress: Display a progress bar over batches.
    :return: Two float arrays (tilde_a, tilde_i), one entry per projection.
    """
    maximal = weights.maximal
    k = maximal.k
    if not 1 <= k <= d.factors:
        raise WrongInput(f"Projection size {k} invalid for {d.factors} factors.")
    batch_size = batch_size or config.approx.batch_size
    if subsets is None:
        subsets = combinations(range(d.factors), k)
        total = comb(d.factors, k, exact=True)
    else:
        subsets = list(subsets)
        total = len(subsets)

    p = weights.p_pair
    w_i = moment_diagonal(maximal)[:, None] * p
    w_a = p.copy()
    w_a[0, :] = 0.0

    tilde_a, tilde_i = [], []
    n_batches = -(-total // batch_size)
    for batch in tqdm(
        _batches(subsets, batch_size), total=n_batches, disable=not show_progress
    ):
        r = _r_from_gram(projection_grams(d, maximal, batch))
        tilde_a.append(np.einsum("bij,ij->b", r, w_a))
        tilde_i.append(np.einsum("bij,ij->b", r, w_i))

    return np.concatenate(tilde_a), np.concatenate(tilde_i)


def average_tilde_criteria(
    d, k, weights, alpha, subsets=None, batch_size=None, show_progress=False
):
    """
    Mean of tilde_a, tilde_i and tilde_p over k-factor projections.

    :return: TildeValues of the means.
    """
    if weights.k != k:
        raise DimensionsIncompatible(
            f"Weights are for {weights.k}-factor models, projections have {k} factors."
        )
    if not 0.0 <= alpha <= 1.0:
        raise WrongInput(f"alpha must lie in [0, 1], got {alpha}.")
    ta, ti = projection_tilde_values(
        d, weights, subsets=subsets, batch_size=batch_size, show_progress=show_progress
    )
    mean_a = math.fsum(ta) / len(ta)
    mean_i = math.fsum(ti) / len(ti)
    return TildeValues(mean_a, mean_i, alpha * mean_i + (1 - alpha) * mean_a)


def projection_average_tilde(d, k, weights, alpha, **kwargs):
    """
    Mean tilde_p over all k-factor projections (or the given `subsets`).
    """
    return average_tilde_criteria(d, k, weights, alpha, **kwargs).tilde_p
