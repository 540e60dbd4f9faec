import logging
from dataclasses import dataclass

import numpy as np
from scipy.stats import pearsonr, rankdata

from rodeo import config
from rodeo.exceptions import WrongInput

logger = logging.getLogger(__name__)


def rank_values(values, decimals=None):
    """
    Ranks with ties sharing the minimum rank (1 = smallest). Values are rounded to
    `decimals` first so that values printing the same are tied.
    """
    decimals = config.reproduce.rank_decimals if decimals is None else decimals
    rounded = np.round(np.asarray(values, dtype=float), decimals)
    return rankdata(rounded, method="min").astype(int)


def rank_correlation(r1, r2):
    """
    Pearson correlation of two rank vectors; 1 when both are constant.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = np.asarray(r2, dtype=float)
    if r1.shape != r2.shape:
        raise WrongInput(f"Rank vectors of lengths {len(r1)} and {len(r2)} differ.")
    constant1, constant2 = np.ptp(r1) == 0, np.ptp(r2) == 0
    if constant1 and constant2:
        return 1.0
    if constant1 or constant2:
        logger.warning("One rank vector is constant, correlation reported as 0")
        return 0.0
    return float(pearsonr(r1, r2)[0])


@dataclass
class RankReport:
    labels: list
    values: dict
    ranks: dict
    correlation: float

    def to_records(self):
        names = list(self.values)
        for i, label in enumerate(self.labels):
            record = {"label": label}
            for name in names:
                record[name] = self.values[name][i]
                record[f"{name}_rank"] = int(self.ranks[name][i])
            yield record


def rank_report(labels, first, second, names=("exact", "approx"), decimals=None):
    """
    Rank designs under two criteria and correlate the rankings.

    :param labels: Design labels.
    :param first: Values under the first criterion.
    :param second: Values under the second criterion.
    :param names: Criterion names used as keys.
    :param decimals: Rounding applied before ranking.
    :return: A RankReport.
    """
    if len(labels) < 2:
        raise WrongInput("Ranking needs at least two designs.")
    r1 = rank_values(first, decimals)
    r2 = rank_values(second, decimals)
    return RankReport(
        labels=list(labels),
        values={names[0]: list(first), names[1]: list(second)},
        ranks={names[0]: r1, names[1]: r2},
        correlation=rank_correlation(r1, r2),
    )
