"""
Exact model-robust criteria from explicit information matrices of every
eligible submodel: A_s, I_s, P_alpha and their harmonic-mean variants.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Optional

import numpy as np
from scipy.linalg import eigh
from scipy.special import comb
from tqdm import tqdm

from rodeo import config
from rodeo.design import model_matrix, project
from rodeo.exceptions import AllInestimable, DimensionsIncompatible, WrongInput
from rodeo.models.space import INTERACTION, MAIN

logger = logging.getLogger(__name__)

HARMONIC_MODES = ("auto", "always", "never")

# Region moments over [-1, 1]: E[1] = 1, E[x^2] = 1/3, E[x^2 y^2] = 1/9
_MOMENTS = {MAIN: 1.0 / 3.0, INTERACTION: 1.0 / 9.0}


def moment_diagonal(maximal):
    """
    Diagonal of the region-moment matrix for every effect of a maximal model:
    1 for the intercept, 1/3 per main effect and 1/9 per interaction.
    """
    g = np.ones(maximal.v + 1)
    for e in maximal.effects[1:]:
        g[e.ordinal] = _MOMENTS[e.kind]
    return g


def submodel_moments(s):
    return np.array(
        [1.0] + [_MOMENTS[MAIN]] * len(s.mains) + [_MOMENTS[INTERACTION]] * len(s.interactions)
    )


@dataclass(frozen=True)
class ModelTrace:
    model: object
    weight: float
    trace_h: Optional[float]
    trace_ig: Optional[float]

    @property
    def estimable(self):
        return self.trace_h is not None


@dataclass
class ExactReport:
    a_s: float
    i_s: float
    p_alpha: float
    alpha: float
    used_harmonic: bool
    n_evaluated: int
    n_inestimable: int
    per_model: Optional[list] = field(default=None, repr=False)

    def to_dict(self):
        return {
            "a_s": self.a_s,
            "i_s": self.i_s,
            "p_alpha": self.p_alpha,
            "alpha": self.alpha,
            "used_harmonic": self.used_harmonic,
            "n_inestimable": self.n_inestimable,
        }


def _inverse_diagonal(gram, n_runs, tol):
    """
    Diagonal of gram^-1, or None when gram is singular at tolerance tol * N.
    """
    lam, vec = eigh(gram)
    if lam[0] <= tol * n_runs:
        return None
    return (vec * vec) @ (1.0 / lam)


def _check_tol(tol):
    return config.criteria.pivot_rel_tol if tol is None else tol


def trace_h(d, s, tol=None):
    """
    Total variance of the non-intercept effect estimates of submodel `s`,
    the trace of (X_s'X_s)^-1 without its intercept entry.

    :param d: A Design.
    :param s: A Submodel (or any model with mains/interactions).
    :param tol: Relative singularity threshold, config.criteria.pivot_rel_tol by default.
    :return: The trace, or None when the submodel is not estimable.
    """
    x = model_matrix(d, s).astype(float)
    diag = _inverse_diagonal(x.T @ x, d.runs, _check_tol(tol))
    if diag is None:
        return None
    return math.fsum(diag[1:])


def trace_ig(d, s, tol=None):
    """
    Average prediction variance over [-1, 1]^k_s, tr[(X_s'X_s)^-1 G_s].

    :return: The trace, or None when the submodel is not estimable.
    """
    x = model_matrix(d, s).astype(float)
    diag = _inverse_diagonal(x.T @ x, d.runs, _check_tol(tol))
    if diag is None:
        return None
    return math.fsum(submodel_moments(s) * diag)


def _blend(alpha, i_value, a_value):
    # 0 * inf stays 0 at the endpoints
    parts = []
    if alpha > 0:
        parts.append(alpha * i_value)
    if alpha < 1:
        parts.append((1.0 - alpha) * a_value)
    return sum(parts)


def exact_criteria(d, maximal, weights, alpha, harmonic=None, per_model=False, tol=None):
    """
    Exact A_s, I_s and P_alpha of a design, averaged over the weighted submodels.

    When harmonic is 'auto' the harmonic-mean variants are used as soon as one
    weighted submodel is not estimable; 'always' uses them unconditionally and
    'never' raises instead. In the harmonic path a_s = 1/tr[H_s] and
    e_s = 1/tr[(X_s'X_s)^-1 G_s] for estimable models, 0 otherwise, and the
    intercept-only model (empty H_s) contributes a_s = 0.

    :param d: A Design with at least the maximal model's factors.
    :param maximal: The MaximalModel.
    :param weights: An enumerated WeightTable built over the same maximal model.
    :param alpha: Blend weight in [0, 1], 0 gives A_s and 1 gives I_s.
    :param harmonic: One of auto/always/never, config.criteria.harmonic by default.
    :param per_model: Include a ModelTrace per weighted submodel in the report.
    :param tol: Relative singularity threshold.
    :return: An ExactReport.
    """
    if not 0.0 <= alpha <= 1.0:
        raise WrongInput(f"alpha must lie in [0, 1], got {alpha}.")
    harmonic = config.criteria.harmonic if harmonic is None else harmonic
    if harmonic not in HARMONIC_MODES:
        raise WrongInput(f"harmonic must be one of {HARMONIC_MODES}, got {harmonic!r}.")
    if not weights.is_enumerated:
        raise WrongInput(
            "Exact criteria need per-model weights; build the table with the enumerated engine."
        )
    if weights.maximal != maximal:
        raise DimensionsIncompatible(
            f"Weights were built for {weights.maximal}, not {maximal}."
        )
    if weights.n_runs != d.runs:
        raise DimensionsIncompatible(
            f"Weights assume N={weights.n_runs} but design {d.label!r} has {d.runs} runs."
        )
    tol = _check_tol(tol)

    x = model_matrix(d, maximal)
    gram = (x.T @ x).astype(float)
    g = moment_diagonal(maximal)

    traces = []
    for s, p in zip(weights.models, weights.p_s):
        if p <= 0:
            continue
        cols = list(s.columns)
        diag = _inverse_diagonal(gram[np.ix_(cols, cols)], d.runs, tol)
        if diag is None:
            traces.append(ModelTrace(replace(s, estimable=False), p, None, None))
        else:
            traces.append(
                ModelTrace(
                    replace(s, estimable=True),
                    p,
                    math.fsum(diag[1:]),
                    math.fsum(g[cols] * diag),
                )
            )

    n_inestimable = sum(not t.estimable for t in traces)
    if harmonic == "never" and n_inestimable:
        msg = f"{n_inestimable} weighted submodels are not estimable on {d.label!r}."
        logger.error(msg)
        raise AllInestimable(msg)
    used_harmonic = harmonic == "always" or n_inestimable > 0

    if not used_harmonic:
        a_s = math.fsum(t.weight * t.trace_h for t in traces)
        i_s = math.fsum(t.weight * t.trace_ig for t in traces)
    else:
        if n_inestimable:
            logger.debug(
                f"{d.label}: {n_inestimable} of {len(traces)} submodels not estimable,"
                " using harmonic means"
            )
        inv_a = math.fsum(
            t.weight / t.trace_h for t in traces if t.estimable and t.trace_h > 0
        )
        inv_i = math.fsum(t.weight / t.trace_ig for t in traces if t.estimable)
        if inv_a == 0 and inv_i == 0:
            msg = f"No weighted submodel is estimable on design {d.label!r}."
            logger.error(msg)
            raise AllInestimable(msg)
        a_s = 1.0 / inv_a if inv_a > 0 else math.inf
        i_s = 1.0 / inv_i if inv_i > 0 else math.inf

    return ExactReport(
        a_s=a_s,
        i_s=i_s,
        p_alpha=_blend(alpha, i_s, a_s),
        alpha=alpha,
        used_harmonic=used_harmonic,
        n_evaluated=len(traces),
        n_inestimable=n_inestimable,
        per_model=traces if per_model else None,
    )


def projection_average_exact(
    d,
    k,
    weights,
    alpha,
    harmonic=None,
    per_model=False,
    full_output=False,
    show_progress=False,
):
    """
    Mean exact P_alpha over all k-factor projections of a design, each projection
    weighted equally.

    :param d: A Design.
    :param k: Projection size, k <= m.
    :param weights: Enumerated WeightTable over a k-factor maximal model.
    :param alpha: Blend weight in [0, 1].
    :param harmonic: Harmonic mode passed to exact_criteria.
    :param per_model: Keep per-submodel details in each projection's report.
    :param full_output: Also return the per-projection ExactReports.
    :param show_progress: Display a progress bar over projections.
    :return: The mean, or (mean, reports) when full_output is set.
    """
    if not 1 <= k <= d.factors:
        raise WrongInput(f"Projection size {k} invalid for {d.factors} factors.")
    if weights.k != k:
        raise DimensionsIncompatible(
            f"Weights are for {weights.k}-factor models, projections have {k} factors."
        )

    reports = []
    subsets = combinations(range(d.factors), k)
    total = comb(d.factors, k, exact=True)
    for cols in tqdm(subsets, total=total, disable=not show_progress):
        reports.append(
            exact_criteria(
                project(d, cols),
                weights.maximal,
                weights,
                alpha,
                harmonic,
                per_model=per_model,
            )
        )

    mean = math.fsum(r.p_alpha for r in reports) / len(reports)
    logger.debug(f"{d.label}: exact P_{alpha} averaged over {len(reports)} projections")
    if full_output:
        return mean, reports
    return mean
