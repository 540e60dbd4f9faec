import json
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import comb

from rodeo import config
from rodeo.exceptions import DegeneratePrior, WrongInput
from rodeo.models.space import INTERACTION, MaximalModel, enumerate_submodels

logger = logging.getLogger(__name__)

EQUAL = "equal"
HIERARCHICAL = "hierarchical"


def _choose(n, r):
    if n < 0 or r < 0 or r > n:
        return 0
    return comb(n, r, exact=True)


def _check_probability(name, value):
    if not 0.0 <= value <= 1.0:
        raise WrongInput(f"Prior probability {name}={value} outside [0, 1].")
    return float(value)


@dataclass(frozen=True)
class PriorSpec:
    """
    Prior over submodels.

    In hierarchical mode `pi1` is either one probability shared by all factors or a
    per-factor tuple, and `pi2` is either one conditional interaction probability or a
    symmetric k x k tuple-of-tuples indexed by factor pair.
    """

    mode: str = EQUAL
    pi1: object = None
    pi2: object = None

    def __post_init__(self):
        if self.mode not in (EQUAL, HIERARCHICAL):
            raise WrongInput(f"Unknown prior mode {self.mode!r}.")
        if self.mode == EQUAL:
            return
        if self.pi1 is None or self.pi2 is None:
            raise WrongInput("A hierarchical prior needs both pi1 and pi2.")

        if np.isscalar(self.pi1):
            object.__setattr__(self, "pi1", _check_probability("pi1", self.pi1))
        else:
            object.__setattr__(
                self, "pi1", tuple(_check_probability("pi1", p) for p in self.pi1)
            )

        if np.isscalar(self.pi2):
            object.__setattr__(self, "pi2", _check_probability("pi2", self.pi2))
        else:
            matrix = np.asarray(self.pi2, dtype=float)
            if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
                raise WrongInput("Per-pair pi2 must be a square matrix.")
            if not np.allclose(matrix, matrix.T):
                raise WrongInput("Per-pair pi2 matrix must be symmetric.")
            for p in matrix[np.triu_indices(matrix.shape[0], k=1)]:
                _check_probability("pi2", p)
            object.__setattr__(self, "pi2", tuple(map(tuple, matrix.tolist())))

    @classmethod
    def equal(cls):
        return cls(EQUAL)

    @classmethod
    def hierarchical(cls, pi1, pi2):
        return cls(HIERARCHICAL, pi1, pi2)

    @classmethod
    def from_dict(cls, d):
        mode = d.get("mode", EQUAL)
        if mode == EQUAL:
            return cls.equal()
        return cls.hierarchical(d.get("pi1"), d.get("pi2"))

    @classmethod
    def parse(cls, text):
        """
        Parse 'equal', 'pi1=.5,pi2=.25' or a JSON object such as
        {"mode": "hierarchical", "pi1": 0.5, "pi2": 0.25}.
        """
        text = text.strip()
        if text.lower() == EQUAL:
            return cls.equal()
        if text.startswith("{"):
            try:
                return cls.from_dict(json.loads(text))
            except json.JSONDecodeError as e:
                raise WrongInput(f"Unreadable prior {text!r}: {e}")

        values = {}
        for item in text.split(","):
            key, sep, value = item.partition("=")
            if not sep or key.strip() not in ("pi1", "pi2"):
                raise WrongInput(
                    f"Unreadable prior {text!r}; expected 'equal' or 'pi1=..,pi2=..'."
                )
            try:
                values[key.strip()] = float(value)
            except ValueError:
                raise WrongInput(f"Prior value {value!r} is not a number.")
        return cls.hierarchical(values.get("pi1"), values.get("pi2"))

    def to_dict(self):
        if self.mode == EQUAL:
            return {"mode": EQUAL}
        return {
            "mode": HIERARCHICAL,
            "pi1": self.pi1 if np.isscalar(self.pi1) else list(self.pi1),
            "pi2": self.pi2 if np.isscalar(self.pi2) else [list(r) for r in self.pi2],
        }

    @property
    def is_symmetric(self):
        """True when every factor and every pair carry the same probabilities."""
        if self.mode == EQUAL:
            return True
        return (
            len(set(self._main_values())) <= 1 and len(set(self._pair_values())) <= 1
        )

    def _main_values(self):
        return (self.pi1,) if np.isscalar(self.pi1) else self.pi1

    def _pair_values(self):
        if np.isscalar(self.pi2):
            return (self.pi2,)
        k = len(self.pi2)
        return tuple(self.pi2[f][g] for f in range(k) for g in range(f + 1, k))

    def main_probs(self, k):
        if np.isscalar(self.pi1):
            return np.full(k, self.pi1)
        if len(self.pi1) != k:
            raise WrongInput(f"Prior has {len(self.pi1)} main probabilities, need {k}.")
        return np.array(self.pi1)

    def interaction_prob(self, f, g):
        if np.isscalar(self.pi2):
            return self.pi2
        return self.pi2[f][g]

    def symmetric_values(self):
        """(pi1, pi2) of a symmetric hierarchical prior."""
        pairs = self._pair_values()
        return self._main_values()[0], (pairs[0] if pairs else 0.0)


@dataclass
class WeightTable:
    """
    Model weights over a maximal model's eligible submodels.

    `p_pair[i, j]` is the total weight of models containing effects i and j.
    `models` and `p_s` are only materialized by the enumerated engine.
    """

    maximal: object
    n_runs: int
    prior: PriorSpec
    p_pair: np.ndarray
    gamma: float
    n_eligible: int
    engine: str
    models: Optional[list] = field(default=None, repr=False)
    p_s: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def k(self):
        return self.maximal.k

    @property
    def is_enumerated(self):
        return self.models is not None


def model_prior(s, prior, maximal):
    """
    Unnormalized prior probability of a submodel.

    Equal mode gives 1 for every model. Hierarchical mode multiplies Bernoulli terms
    for mains and, for interactions whose parents are both present, for the conditional
    interaction indicators; an interaction with an absent parent is excluded with
    probability 1.

    :param s: A Submodel.
    :param prior: A PriorSpec.
    :param maximal: The MaximalModel `s` belongs to.
    :return: Nonnegative float.
    """
    if prior.mode == EQUAL:
        return 1.0

    pi = prior.main_probs(maximal.k)
    mains = set(s.mains)
    present = set(s.interactions)
    p = 1.0
    for f in range(maximal.k):
        p *= pi[f] if f in mains else 1.0 - pi[f]
    for f, g in maximal.interactions:
        if f in mains and g in mains:
            q = prior.interaction_prob(f, g)
            p *= q if (f, g) in present else 1.0 - q
    return p


def _indicator_rows(models, width):
    rows = np.zeros((len(models), width))
    for n, s in enumerate(models):
        rows[n, list(s.columns)] = 1.0
    return rows


def weight_table_enumerated(models, prior, maximal, n_runs, chunk=65536):
    """
    Weights from an explicit submodel list: p_s = Pr(M_s) / gamma over eligible models,
    gamma the total prior of eligible models. Ineligible models get weight 0.

    :param models: Submodels from enumerate_submodels.
    :param prior: A PriorSpec.
    :param maximal: The MaximalModel the submodels belong to.
    :param n_runs: Run size N used for eligibility.
    :param chunk: Models per block when accumulating p_pair.
    :return: An enumerated WeightTable.
    """
    raw = np.array([model_prior(s, prior, maximal) if s.eligible else 0.0 for s in models])
    gamma = math.fsum(raw)
    if gamma <= 0:
        msg = f"All eligible submodels of {maximal} have zero prior probability."
        logger.error(msg)
        raise DegeneratePrior(msg)

    p_s = raw / gamma
    width = maximal.v + 1
    p_pair = np.zeros((width, width))
    for start in range(0, len(models), chunk):
        rows = _indicator_rows(models[start : start + chunk], width)
        weighted = rows * p_s[start : start + chunk, None]
        p_pair += weighted.T @ rows

    if abs(math.fsum(p_s) - 1.0) > config.models.sum_tol:
        logger.warning(f"Model weights sum to {math.fsum(p_s)!r}")

    return WeightTable(
        maximal=maximal,
        n_runs=n_runs,
        prior=prior,
        p_pair=p_pair,
        gamma=gamma,
        n_eligible=int(sum(s.eligible for s in models)),
        engine="enumerated",
        models=models,
        p_s=p_s,
    )


def inclusion_probabilities(k, prior, n_runs, order=2):
    """
    Joint inclusion probabilities of a fixed set of a0 mains and b0 interactions among
    them, for a symmetric prior over a full first- or second-order maximal model.

    Models are grouped by (a, b), the numbers of mains and interactions. There are
    C(k, a) * C(C(a, 2), b) of them per group, all sharing one prior weight, and a group
    is eligible when 1 + a + b <= N. Models containing the fixed effects number
    C(k - a0, a - a0) * C(C(a, 2) - b0, b - b0) per group.

    :return: (xi, gamma, n_eligible) with xi a 5 x 3 array indexed by (a0, b0).
    """
    if prior.mode == EQUAL:
        pi1 = pi2 = None
    else:
        pi1, pi2 = prior.symmetric_values()

    def pairs(a):
        return comb(a, 2, exact=True) if order == 2 else 0

    def weight(a, b):
        if pi1 is None:
            return 1.0
        p = pi1 ** a * (1.0 - pi1) ** (k - a)
        if order == 2:
            p *= pi2 ** b * (1.0 - pi2) ** (pairs(a) - b)
        return p

    groups = []
    for a in range(k + 1):
        for b in range(min(pairs(a), n_runs - 1 - a) + 1):
            groups.append((a, b, weight(a, b)))

    def total(a0, b0):
        return math.fsum(
            float(_choose(k - a0, a - a0))
            * float(_choose(pairs(a) - b0, b - b0))
            * w
            for a, b, w in groups
            if a >= a0 and b >= b0
        )

    gamma = total(0, 0)
    if gamma <= 0:
        msg = f"All eligible submodels for k={k}, N={n_runs} have zero prior probability."
        logger.error(msg)
        raise DegeneratePrior(msg)

    xi = np.zeros((5, 3))
    for a0 in range(5):
        for b0 in range(3):
            xi[a0, b0] = total(a0, b0) / gamma
    n_eligible = sum(
        comb(k, a, exact=True) * comb(pairs(a), b, exact=True) for a, b, _ in groups
    )
    return xi, gamma, n_eligible


def pair_classes(maximal):
    """
    For every pair of effect ordinals (i, j): the number of distinct factors and the
    number of distinct interactions the two effects involve.

    :return: Two (v+1) x (v+1) integer arrays (a0, b0).
    """
    width = maximal.v + 1
    incidence = np.zeros((width, maximal.k), dtype=np.int64)
    is_int = np.zeros(width, dtype=np.int64)
    for e in maximal.effects:
        incidence[e.ordinal, list(e.factors)] = 1
        is_int[e.ordinal] = e.kind == INTERACTION

    sizes = incidence.sum(axis=1)
    a0 = sizes[:, None] + sizes[None, :] - incidence @ incidence.T
    b0 = is_int[:, None] + is_int[None, :] - np.diag(is_int)
    return a0, b0


def weight_table_exchangeable(k, prior, n_runs, order=2):
    """
    Weights for a symmetric prior over the full first- or second-order maximal model,
    computed from closed-form group counts without enumerating models.

    Every p_pair entry depends only on how many distinct factors and interactions the
    two effects involve, so the table is filled from inclusion_probabilities().

    :param k: Number of factors.
    :param prior: A symmetric PriorSpec.
    :param n_runs: Run size N used for eligibility.
    :param order: 2 for the full second-order maximal model, 1 for main effects only.
    :return: An exchangeable WeightTable (no per-model weights).
    """
    if not prior.is_symmetric:
        raise WrongInput("The exchangeable engine needs a symmetric prior.")
    if order not in (1, 2):
        raise WrongInput(f"Maximal model order must be 1 or 2, got {order}.")
    if order == 2 and prior.mode == HIERARCHICAL and k < 2:
        if prior.symmetric_values()[1] > 0:
            raise WrongInput(f"Interaction probability given but k={k} has no pairs.")

    maximal = MaximalModel.second_order(k) if order == 2 else MaximalModel.first_order(k)
    xi, gamma, n_eligible = inclusion_probabilities(k, prior, n_runs, order=order)
    a0, b0 = pair_classes(maximal)
    p_pair = xi[a0, b0]

    logger.debug(f"Exchangeable weights for {maximal}, N={n_runs}: {n_eligible} eligible models")
    return WeightTable(
        maximal=maximal,
        n_runs=n_runs,
        prior=prior,
        p_pair=p_pair,
        gamma=gamma,
        n_eligible=n_eligible,
        engine="exchangeable",
    )


def weight_table(maximal, prior, n_runs, engine="auto"):
    """
    Build a WeightTable, choosing the engine when `engine` is 'auto':
    exchangeable for symmetric priors over full first- or second-order maximal models,
    enumerated otherwise.
    """
    exchangeable_ok = prior.is_symmetric and (
        maximal.is_full_second_order or maximal.k_star == 0
    )
    if engine == "auto":
        engine = "exchangeable" if exchangeable_ok else "enumerated"

    if engine == "exchangeable":
        if not exchangeable_ok:
            raise WrongInput(
                f"The exchangeable engine cannot weight {maximal} under {prior.mode} prior."
            )
        return weight_table_exchangeable(maximal.k, prior, n_runs, order=maximal.order)
    if engine == "enumerated":
        models = enumerate_submodels(maximal, n_runs)
        return weight_table_enumerated(models, prior, maximal, n_runs)
    raise WrongInput(f"Unknown weight engine {engine!r}.")
