import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from scipy.special import comb

from rodeo import config
from rodeo.exceptions import CapacityError, WrongInput

logger = logging.getLogger(__name__)

INTERCEPT = "intercept"
MAIN = "main"
INTERACTION = "interaction"


@dataclass(frozen=True)
class EffectIndex:
    """
    One column of a maximal model matrix. `factors` is () for the intercept,
    (f,) for a main effect and (f, g) with f < g for an interaction.
    """

    kind: str
    factors: tuple
    ordinal: int

    @property
    def name(self):
        if self.kind == INTERCEPT:
            return "I"
        return "".join(f"x{f + 1}" for f in self.factors)


class MaximalModel:
    """
    k main effects plus a set of two-factor interactions. Effect ordinals are
    0 for the intercept, 1..k for mains and k+1..v for interactions in sorted order.
    """

    def __init__(self, k, interactions=()):
        if k < 0:
            raise WrongInput(f"Number of factors must be nonnegative, got {k}.")
        pairs = set()
        for pair in interactions:
            f, g = sorted(int(x) for x in pair)
            if f == g or f < 0 or g >= k:
                raise WrongInput(f"Invalid interaction {pair} for {k} factors.")
            pairs.add((f, g))

        self.k = k
        self.mains = tuple(range(k))
        self.interactions = tuple(sorted(pairs))
        self._effects = (
            [EffectIndex(INTERCEPT, (), 0)]
            + [EffectIndex(MAIN, (f,), 1 + f) for f in range(k)]
            + [
                EffectIndex(INTERACTION, pair, 1 + k + i)
                for i, pair in enumerate(self.interactions)
            ]
        )

    @classmethod
    def first_order(cls, k):
        return cls(k)

    @classmethod
    def second_order(cls, k):
        return cls(k, combinations(range(k), 2))

    @property
    def k_star(self):
        return len(self.interactions)

    @property
    def v(self):
        return self.k + self.k_star

    @property
    def order(self):
        return 2 if self.k_star else 1

    @property
    def is_full_second_order(self):
        return self.k_star == comb(self.k, 2, exact=True)

    @property
    def effects(self):
        return list(self._effects)

    def effect_index(self, ordinal):
        return self._effects[ordinal]

    def __eq__(self, other):
        if not isinstance(other, MaximalModel):
            return NotImplemented
        return self.k == other.k and self.interactions == other.interactions

    def __hash__(self):
        return hash((self.k, self.interactions))

    def __repr__(self):
        return f"MaximalModel(k={self.k}, k*={self.k_star})"


@dataclass(frozen=True)
class Submodel:
    """
    A heredity-respecting subset of a maximal model's effects.

    `columns` are the maximal-model ordinals of the submodel's effects, intercept first.
    `estimable` is only known once a design has been evaluated.
    """

    mains: tuple
    interactions: tuple
    columns: tuple
    eligible: bool
    estimable: Optional[bool] = None

    @property
    def v_s(self):
        return len(self.mains) + len(self.interactions)

    @property
    def name(self):
        terms = [f"x{f + 1}" for f in self.mains]
        terms += [f"x{f + 1}x{g + 1}" for f, g in self.interactions]
        return "{" + ",".join(terms) + "}"


def _allowed(interactions, mask):
    return [
        (i, pair)
        for i, pair in enumerate(interactions)
        if (mask >> pair[0]) & 1 and (mask >> pair[1]) & 1
    ]


def lattice_size(maximal, cap=None):
    """
    Number of strong-heredity submodels of a maximal model, intercept-only model included.

    :param maximal: A MaximalModel.
    :param cap: Optional bound; counting stops as soon as the total exceeds it.
    :return: The lattice size (or a value above `cap` once exceeded).
    """
    k = maximal.k
    if maximal.is_full_second_order:
        return sum(
            comb(k, a, exact=True) * 2 ** comb(a, 2, exact=True) for a in range(k + 1)
        )

    total = 0
    for mask in range(2 ** k):
        total += 2 ** len(_allowed(maximal.interactions, mask))
        if cap is not None and total > cap:
            break
    return total


def enumerate_submodels(maximal, n_runs, cap=None):
    """
    Enumerate every strong-heredity submodel of a maximal model.

    Mains subsets are visited in binary counting order (bit f set means factor f is in)
    and, within one mains subset, subsets of the allowed interactions likewise.

    :param maximal: A MaximalModel.
    :param n_runs: Run size N; a submodel is eligible when v_s + 1 <= N.
    :param cap: Largest lattice to materialize, config.models.enumeration_cap by default.
    :return: A list of Submodel.
    """
    cap = config.models.enumeration_cap if cap is None else cap
    size = lattice_size(maximal, cap=cap)
    if size > cap:
        msg = (
            f"{maximal} has more than {cap} heredity submodels;"
            " use the exchangeable weight engine instead."
        )
        logger.error(msg)
        raise CapacityError(msg)

    k = maximal.k
    models = []
    for mask in range(2 ** k):
        mains = tuple(f for f in range(k) if (mask >> f) & 1)
        main_columns = tuple(1 + f for f in mains)
        allowed = _allowed(maximal.interactions, mask)
        for imask in range(2 ** len(allowed)):
            chosen = [allowed[i] for i in range(len(allowed)) if (imask >> i) & 1]
            columns = (0,) + main_columns + tuple(1 + k + i for i, _ in chosen)
            models.append(
                Submodel(
                    mains=mains,
                    interactions=tuple(pair for _, pair in chosen),
                    columns=columns,
                    eligible=len(columns) <= n_runs,
                )
            )

    n_eligible = sum(s.eligible for s in models)
    logger.info(
        f"Enumerated {len(models)} submodels of {maximal}, {n_eligible} eligible at N={n_runs}"
    )
    return models
