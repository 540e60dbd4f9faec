import logging
import time
from dataclasses import asdict, dataclass

from rodeo.criteria import projection_average_exact, projection_average_tilde
from rodeo.exceptions import WrongInput
from rodeo.models import MaximalModel, PriorSpec, weight_table

logger = logging.getLogger(__name__)


@dataclass
class TimingRecord:
    k: int
    n_designs: int
    n_models: int
    exact_seconds: float
    approx_seconds: float

    @property
    def ratio(self):
        if self.approx_seconds == 0:
            return float("inf")
        return self.exact_seconds / self.approx_seconds

    def to_dict(self):
        return dict(asdict(self), ratio=self.ratio)


def time_criteria(designs, ks, alpha=0.5, prior=None):
    """
    Wall-clock cost of the exact and approximate projection averages over a set of
    designs. Weight tables are built once per k and excluded from both timings.

    :param designs: Designs sharing one run size.
    :param ks: Projection sizes to time.
    :param alpha: Blend weight in [0, 1].
    :param prior: PriorSpec, equal weights by default.
    :return: List of TimingRecord, one per k.
    """
    designs = list(designs)
    if not designs:
        raise WrongInput("Timing needs at least one design.")
    n_runs = designs[0].runs
    if any(d.runs != n_runs for d in designs):
        raise WrongInput("All timed designs must share one run size.")
    prior = prior or PriorSpec.equal()

    records = []
    for k in ks:
        weights = weight_table(
            MaximalModel.second_order(k), prior, n_runs, engine="enumerated"
        )

        start = time.perf_counter()
        for d in designs:
            projection_average_exact(d, k, weights, alpha)
        exact_seconds = time.perf_counter() - start

        start = time.perf_counter()
        for d in designs:
            projection_average_tilde(d, k, weights, alpha)
        approx_seconds = time.perf_counter() - start

        record = TimingRecord(k, len(designs), weights.n_eligible, exact_seconds, approx_seconds)
        logger.info(
            f"k={k}: exact {exact_seconds:.3f}s, approximate {approx_seconds:.3f}s"
            f" over {record.n_models} models"
        )
        records.append(record)
    return records
