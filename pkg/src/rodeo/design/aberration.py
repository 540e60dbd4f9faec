"""
Aberration statistics of two-level designs: J-characteristics, the generalized
wordlength pattern, GMA ordering and E(s^2).
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np
from scipy.special import comb

from rodeo import config
from rodeo.exceptions import WrongInput

logger = logging.getLogger(__name__)


class Ordering(Enum):
    BETTER = -1
    TIED = 0
    WORSE = 1


@dataclass(frozen=True)
class Gwlp:
    """
    Generalized wordlength pattern (b_1, ..., b_L) of an N-run design.
    `b[l - 1]` holds b_l; b_0 = N by definition and is not stored.
    """

    b: tuple
    n: int

    def __len__(self):
        return len(self.b)

    def __getitem__(self, l):
        """1-based access, gwlp[l] == b_l."""
        if l < 1 or l > len(self.b):
            raise IndexError(f"b_{l} not computed (pattern has {len(self.b)} entries)")
        return self.b[l - 1]

    def prefix(self, length):
        """
        (b_1..b_length), zero-padded when the pattern is shorter (words longer
        than the number of factors cannot exist).
        """
        return tuple(self.b[:length]) + (0.0,) * max(0, length - len(self.b))


def j_sum(d, w):
    """
    Signed column-product row-sum over the factor subset w.
    """
    w = list(w)
    return int(np.prod(d.entries[:, w], axis=1).sum())


def j_characteristic(d, w):
    """
    J-characteristic |sum_i prod_{j in w} d_ij| of a nonempty factor subset.

    :param d: A Design.
    :param w: Nonempty iterable of distinct 0-based column indices.
    :return: Nonnegative integer.
    """
    w = list(w)
    if not w:
        raise WrongInput("J-characteristic needs a nonempty factor subset.")
    if len(set(w)) != len(w) or any(c < 0 or c >= d.factors for c in w):
        raise WrongInput(f"Invalid factor subset {w} for {d.factors} factors.")
    return abs(j_sum(d, w))


def word_sums(d, length):
    """
    Signed J sums of every `length`-subset of factors, in combinations() order.

    :return: (subsets, sums) with subsets an (n_w, length) int array.
    """
    subsets = np.array(list(combinations(range(d.factors), length)), dtype=np.int64)
    if subsets.size == 0:
        return subsets.reshape(0, length), np.zeros(0, dtype=np.int64)
    x = d.entries
    # (N, n_w) products, accumulated column by column to bound memory
    prod = x[:, subsets[:, 0]]
    for i in range(1, length):
        prod = prod * x[:, subsets[:, i]]
    return subsets, prod.sum(axis=0)


def gwlp(d, max_order=None):
    """
    Generalized wordlength pattern b_l = sum over l-subsets w of (J(w)/N)^2.

    Sums of squared J values are accumulated as exact integers and divided by N^2 once.

    :param d: A Design.
    :param max_order: Highest word length to compute. Defaults to all m when
        m <= config.design.full_gwlp_max_factors, else config.design.gwlp_max_order.
    :return: A Gwlp.
    """
    m = d.factors
    if max_order is None:
        if m <= config.design.full_gwlp_max_factors:
            max_order = m
        else:
            max_order = config.design.gwlp_max_order
            logger.debug(
                f"{d.label}: {m} factors, computing GWLP up to order {max_order} only"
            )
    max_order = min(max_order, m)

    n2 = d.runs ** 2
    b = []
    for length in range(1, max_order + 1):
        _, sums = word_sums(d, length)
        b.append(int(np.sum(sums * sums)) / n2)
    return Gwlp(b=tuple(b), n=d.runs)


def gma_compare(w1, w2, tol=None):
    """
    Compare two wordlength patterns in generalized minimum aberration order.

    :param w1: First Gwlp.
    :param w2: Second Gwlp.
    :param tol: Per-entry tie tolerance, config.design.gma_tie_tol by default.
    :return: Ordering.BETTER when w1 has less aberration, WORSE when more, else TIED.
    """
    if len(w1) != len(w2):
        raise WrongInput(
            f"Cannot compare wordlength patterns of lengths {len(w1)} and {len(w2)}."
        )
    tol = config.design.gma_tie_tol if tol is None else tol
    for b1, b2 in zip(w1.b, w2.b):
        if abs(b1 - b2) <= tol:
            continue
        return Ordering.BETTER if b1 < b2 else Ordering.WORSE
    return Ordering.TIED


def e_s2(d):
    """
    Mean squared off-diagonal column inner product, sum_{i<j} a_ij^2 / C(m, 2).
    """
    m = d.factors
    if m < 2:
        raise WrongInput(f"E(s^2) needs at least 2 factors, got {m}.")
    a = d.entries.T @ d.entries
    upper = a[np.triu_indices(m, k=1)]
    return int(np.sum(upper * upper)) / comb(m, 2, exact=True)


def resolution(g, tol=None):
    """
    Smallest word length with nonvanishing b_l, or infinity if all computed b_l vanish.
    """
    tol = config.design.gma_tie_tol if tol is None else tol
    for l, b in enumerate(g.b, start=1):
        if b > tol:
            return l
    return float("inf")


def is_orthogonal_array(d, strength, tol=None):
    """
    :return: True when b_1..b_strength all vanish.
    """
    if strength < 1:
        raise WrongInput(f"Strength must be positive, got {strength}.")
    g = gwlp(d, max_order=strength)
    return resolution(g, tol) > strength
