"""
Closed-form links between the approximate criterion and the generalized
wordlength pattern under symmetric priors.

For a +-1 design r_ij = a_ij^2 / N^3 while b_l is expressed in (J/N)^2, so the
design-dependent part of tilde_p is the bridge value divided by N.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import comb

from rodeo import config
from rodeo.criteria.approx import AlphaWeights, r_table, tilde_criteria
from rodeo.design import gwlp
from rodeo.exceptions import DimensionsIncompatible, SymmetryViolation, WrongInput
from rodeo.models.weights import pair_classes

logger = logging.getLogger(__name__)

# (distinct factors, distinct interactions) of each inclusion class
_CLASSES = {
    "xi10": (1, 0),
    "xi20": (2, 0),
    "xi21": (2, 1),
    "xi31": (3, 1),
    "xi32": (3, 2),
    "xi42": (4, 2),
}


@dataclass(frozen=True)
class XiSet:
    """
    Joint prior inclusion probabilities of: one main (xi10), two mains (xi20),
    one interaction (xi21), a main plus a disjoint interaction (xi31), two
    interactions sharing a factor (xi32) and two disjoint interactions (xi42).
    """

    xi10: float
    xi20: float
    xi21: float = 0.0
    xi31: float = 0.0
    xi32: float = 0.0
    xi42: float = 0.0

    def to_dict(self):
        return {name: getattr(self, name) for name in _CLASSES}


@dataclass(frozen=True)
class BridgeValue:
    value: float
    coefficients: tuple


def xi_from_weights(weights, k=None, tol=None):
    """
    Read the inclusion probabilities off a symmetric WeightTable.

    Every p_pair entry of one class must agree with the others to `tol`.

    :param weights: WeightTable over a full first- or second-order maximal model.
    :param k: Expected number of factors (checked when given).
    :param tol: Class agreement tolerance, config.criteria.symmetry_tol by default.
    :return: An XiSet; interaction classes are 0 for first-order maximal models.
    """
    maximal = weights.maximal
    if k is not None and maximal.k != k:
        raise DimensionsIncompatible(f"Weights are for k={maximal.k}, not k={k}.")
    if not (maximal.is_full_second_order or maximal.k_star == 0):
        raise WrongInput(f"{maximal} is neither full first- nor second-order.")
    tol = config.criteria.symmetry_tol if tol is None else tol

    a0, b0 = pair_classes(maximal)
    p = weights.p_pair
    values = {}
    for name, (a, b) in _CLASSES.items():
        mask = (a0 == a) & (b0 == b)
        members = np.argwhere(mask)
        if not len(members):
            values[name] = 0.0
            continue
        i, j = members[0]
        reference = p[i, j]
        deviation = np.abs(p[mask] - reference)
        if deviation.max() > tol:
            worst = members[int(np.argmax(deviation))]
            pair = (
                maximal.effect_index(worst[0]).name,
                maximal.effect_index(worst[1]).name,
            )
            msg = f"Weights are not exchangeable: p{pair} deviates from its {name} class."
            logger.error(msg)
            raise SymmetryViolation(msg, pair=pair)
        values[name] = float(reference)
    return XiSet(**values)


def bridge_first_order(b1, b2, xi1, xi2, alpha):
    """
    Design-dependent part (times N) of tilde_p for a main-effects maximal model:
    (1 + alpha/3) xi1 b1 + 2 (1 - 2 alpha/3) xi2 b2.
    """
    return (1 + alpha / 3) * xi1 * b1 + 2 * (1 - 2 * alpha / 3) * xi2 * b2


def second_order_coefficients(xi, k, alpha):
    """
    Multipliers of b1..b4 in the second-order bridge.
    """
    return (
        (1 + alpha / 3) * xi.xi10 + 2 * (1 - 7 * alpha / 9) * (k - 1) * xi.xi21,
        2 * (1 - 2 * alpha / 3) * xi.xi20
        + (1 + alpha / 9) * xi.xi21
        + 2 * (1 - 8 * alpha / 9) * (k - 2) * xi.xi32,
        6 * (1 - 7 * alpha / 9) * xi.xi31,
        6 * (1 - 8 * alpha / 9) * xi.xi42,
    )


def bridge_second_order(b, xi, k, alpha):
    """
    Design-dependent part (times N) of tilde_p for the full second-order maximal model.

    :param b: (b1, b2, b3, b4), missing trailing entries count as 0.
    :param xi: An XiSet.
    :param k: Number of factors.
    :param alpha: Blend weight in [0, 1].
    :return: BridgeValue with the value and the four coefficients.
    """
    if k < 2:
        raise WrongInput(f"The second-order bridge needs k >= 2, got {k}.")
    b = tuple(b)[:4] + (0.0,) * max(0, 4 - len(b))
    coefficients = second_order_coefficients(xi, k, alpha)
    return BridgeValue(
        value=math.fsum(c * bl for c, bl in zip(coefficients, b)),
        coefficients=coefficients,
    )


def bridge_coefficients(weights, alpha):
    """
    Multipliers of (b1, ...) matching the maximal model the weights were built for.
    """
    xi = xi_from_weights(weights)
    if weights.maximal.k_star == 0:
        return (1 + alpha / 3) * xi.xi10, 2 * (1 - 2 * alpha / 3) * xi.xi20
    return second_order_coefficients(xi, weights.k, alpha)


def bridge_value(d, weights, alpha):
    """
    Bridge value of a full design (k = m) for the weights' maximal model.
    """
    coefficients = bridge_coefficients(weights, alpha)
    b = gwlp(d, max_order=len(coefficients)).prefix(len(coefficients))
    return math.fsum(c * bl for c, bl in zip(coefficients, b))


def bridge_constant(weights, alpha, n_runs=None):
    """
    Design-independent part of tilde_p: sum_i alpha_i p_ii / N.
    """
    n_runs = weights.n_runs if n_runs is None else n_runs
    aw = AlphaWeights.for_model(weights.maximal, alpha)
    return math.fsum(aw.coefficients * np.diag(weights.p_pair)) / n_runs


def verify_bridge(d1, d2, weights, alpha):
    """
    Compare tilde_p differences of two designs with their bridge differences.

    :param d1: First Design.
    :param d2: Second Design with the same N and m.
    :param weights: Symmetric WeightTable over a full maximal model on m factors.
    :param alpha: Blend weight in [0, 1].
    :return: |[tilde_p(d1) - tilde_p(d2)] - [bridge(d1) - bridge(d2)] / N|.
    """
    if d1.runs != d2.runs or d1.factors != d2.factors:
        raise DimensionsIncompatible(
            f"Cannot compare {d1.runs}x{d1.factors} and {d2.runs}x{d2.factors} designs."
        )
    if d1.factors != weights.k:
        raise DimensionsIncompatible(
            f"Weights are for k={weights.k}, designs have {d1.factors} factors."
        )

    maximal = weights.maximal
    p1 = tilde_criteria(r_table(d1, maximal), weights, alpha).tilde_p
    p2 = tilde_criteria(r_table(d2, maximal), weights, alpha).tilde_p
    br1 = bridge_value(d1, weights, alpha)
    br2 = bridge_value(d2, weights, alpha)
    residual = abs((p1 - p2) - (br1 - br2) / d1.runs)
    logger.debug(
        f"{d1.label} vs {d2.label}: tilde_p diff {p1 - p2:.6g}, bridge diff"
        f" {(br1 - br2) / d1.runs:.6g}, residual {residual:.3g}"
    )
    return residual


def projection_share(m, k, length):
    """
    Fraction of k-factor projections containing a given word of `length` factors.
    """
    if length > k:
        return 0.0
    return comb(m - length, k - length, exact=True) / comb(m, k, exact=True)


def bridge_projection_average(b, m, k, weights, alpha, n_runs=None):
    """
    Mean tilde_p over all k-factor projections of an m-factor design, from the
    design's own wordlength pattern: each l-word lies in C(m-l, k-l) of the
    C(m, k) projections.

    :param b: (b1, b2, ...) of the full design, at least as long as the bridge needs.
    :param m: Number of factors of the design.
    :param k: Projection size.
    :param weights: Symmetric WeightTable over a full k-factor maximal model.
    :param alpha: Blend weight in [0, 1].
    :param n_runs: Run size, weights.n_runs by default.
    :return: The projection average.
    """
    n_runs = weights.n_runs if n_runs is None else n_runs
    coefficients = bridge_coefficients(weights, alpha)
    terms = (
        c * bl * projection_share(m, k, l)
        for l, (c, bl) in enumerate(zip(coefficients, tuple(b)), start=1)
    )
    return bridge_constant(weights, alpha, n_runs) + math.fsum(terms) / n_runs
