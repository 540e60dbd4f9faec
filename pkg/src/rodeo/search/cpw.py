import logging
from concurrent import futures
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from tqdm import tqdm

from rodeo import config
from rodeo.design import Design, project
from rodeo.exceptions import WrongInput
from rodeo.models import PriorSpec
from rodeo.search.objective import adjustment_pairs, make_objective, n_projections
from rodeo.utils import Random, ensure, spawn_seeds

logger = logging.getLogger(__name__)


@dataclass
class SearchConfig:
    """
    Settings of a columnwise-pairwise search. Fields left as None are read from
    the [search] config section.
    """

    n_runs: int
    n_factors: int
    k: int
    alpha: float = 0.5
    prior: PriorSpec = field(default_factory=PriorSpec.equal)
    g: Optional[int] = None
    restarts: Optional[int] = None
    seed: Optional[int] = None
    max_sweeps: Optional[int] = None
    order: int = 2
    engine: Optional[str] = None
    subsample: Optional[float] = None
    n_workers: Optional[int] = None
    start_designs: Optional[list] = field(default=None, repr=False)

    def __post_init__(self):
        section = config.search
        for name in ("g", "restarts", "seed", "max_sweeps", "engine", "subsample", "n_workers"):
            if getattr(self, name) is None:
                setattr(self, name, getattr(section, name))

        if self.n_runs < 2:
            raise WrongInput(f"A design needs at least 2 runs, got {self.n_runs}.")
        if not 1 <= self.k <= self.n_factors:
            raise WrongInput(
                f"Projection size k={self.k} must lie in 1..{self.n_factors}."
            )
        if not 0.0 <= self.alpha <= 1.0:
            raise WrongInput(f"alpha must lie in [0, 1], got {self.alpha}.")
        if self.order not in (1, 2):
            raise WrongInput(f"order must be 1 or 2, got {self.order}.")
        if self.engine not in ("auto", "words", "direct"):
            raise WrongInput(f"Unknown objective engine {self.engine!r}.")
        if self.engine == "words" and not self.prior.is_symmetric:
            raise WrongInput("The word engine needs a symmetric prior.")
        if not 0.0 <= self.subsample < 1.0:
            raise WrongInput(f"subsample must lie in [0, 1), got {self.subsample}.")
        if self.restarts < 1:
            raise WrongInput(f"restarts must be positive, got {self.restarts}.")
        if self.g > self.n_factors:
            logger.debug(f"g={self.g} exceeds {self.n_factors} factors, using g={self.n_factors}")
            self.g = self.n_factors
        if self.start_designs:
            for d in self.start_designs:
                if (d.runs, d.factors) != (self.n_runs, self.n_factors):
                    raise WrongInput(
                        f"Starting design {d.label!r} is {d.runs}x{d.factors},"
                        f" expected {self.n_runs}x{self.n_factors}."
                    )
            if len(self.start_designs) < self.restarts:
                logger.info(
                    f"{len(self.start_designs)} starting designs given, remaining"
                    f" {self.restarts - len(self.start_designs)} restarts start at random"
                )


@dataclass(frozen=True)
class Move:
    sweep: int
    column: int
    rows: tuple
    objective: float


@dataclass
class SearchTrace:
    """
    Record of one restart. Columns in `moves` index the starting design; `design`
    holds the final design with its columns in the last reordered sequence.
    """

    restart: int
    seed: int
    start_objective: float
    final_objective: float
    moves: list
    sweeps: int
    max_sweeps_hit: bool
    design: Design = field(repr=False)
    column_order: tuple = ()

    @property
    def objectives(self):
        return [self.start_objective] + [mv.objective for mv in self.moves]

    def to_dict(self):
        return {
            "restart": self.restart,
            "seed": self.seed,
            "start_objective": self.start_objective,
            "final_objective": self.final_objective,
            "sweeps": self.sweeps,
            "max_sweeps_hit": self.max_sweeps_hit,
            "column_order": list(self.column_order),
            "moves": [
                {
                    "sweep": mv.sweep,
                    "column": mv.column,
                    "rows": list(mv.rows),
                    "objective": mv.objective,
                }
                for mv in self.moves
            ],
        }


def random_balanced_design(n_runs, n_factors, seed=None):
    """
    Random design whose columns hold ceil(N/2) entries +1 and floor(N/2) entries -1,
    each column shuffled independently.

    :param n_runs: Number of runs N >= 2.
    :param n_factors: Number of columns.
    :param seed: Random seed (None to apply no seed).
    :return: A level-balanced (near-balanced for odd N) Design.
    """
    if n_runs < 2:
        raise WrongInput(f"A design needs at least 2 runs, got {n_runs}.")
    base = np.where(np.arange(n_runs) < (n_runs + 1) // 2, 1, -1)
    with Random(seed):
        columns = [base[np.random.permutation(n_runs)] for _ in range(n_factors)]
    return Design(np.stack(columns, axis=1), label=f"random-{n_runs}x{n_factors}")


def _reorder(objective):
    if objective.factors < 2:
        return list(range(objective.factors))
    values = objective.leave_one_out()
    return [int(c) for c in np.argsort(values, kind="stable")]


def reorder_columns(d, cfg, objective=None):
    """
    Sort columns ascending by the objective of the design with that column deleted,
    ties kept in original order.

    :param d: A Design.
    :param cfg: SearchConfig supplying k, alpha, prior and engine.
    :param objective: Optional pre-built objective (bound to `d` here).
    :return: The column-permuted Design.
    """
    if d.factors < 2:
        raise WrongInput("Reordering needs at least 2 columns.")
    objective = objective or make_objective(cfg, seed=cfg.seed)
    objective.bind(d)
    return project(d, _reorder(objective))


def first_order_adjustments(d, col):
    """
    Every design obtained by turning one -1 of column `col` into +1 and one +1 into -1,
    in lexicographic (row_minus, row_plus) order. A constant column yields nothing.
    """
    if not 0 <= col < d.factors:
        raise WrongInput(f"Column {col} out of range for {d.factors} factors.")
    column = d.column(col)
    for rm, rp in adjustment_pairs(column):
        values = column.copy()
        values[rm], values[rp] = 1, -1
        yield d.with_column(col, values)


def run_restart(cfg, restart, seed):
    """
    One restart: start design, then alternate column reordering and the first strict
    improvement among the first g columns until none improves.
    """
    if cfg.start_designs and restart < len(cfg.start_designs):
        start = cfg.start_designs[restart]
    else:
        start = random_balanced_design(cfg.n_runs, cfg.n_factors, seed=seed)

    tol = config.search.improvement_tol
    objective = make_objective(cfg, seed=seed)
    objective.bind(start)
    current = start_objective = objective.value()

    moves = []
    sweeps = 0
    hit = False
    while True:
        order = _reorder(objective)
        improved = False
        for col in order[: cfg.g]:
            move = objective.first_improvement(col, current, tol)
            if move is None:
                continue
            objective.apply(col, *move)
            current = objective.value()
            moves.append(Move(sweep=sweeps, column=col, rows=move, objective=current))
            improved = True
            break
        sweeps += 1
        if not improved:
            break
        if sweeps >= cfg.max_sweeps:
            logger.warning(f"Restart {restart} stopped after max_sweeps={cfg.max_sweeps}")
            hit = True
            break

    # swaps exchange a -1 and a +1 within one column
    ensure(
        np.array_equal(objective.x.sum(axis=0), start.entries.sum(axis=0)),
        f"Restart {restart} changed a column sum",
    )
    final = project(objective.design, order)
    final.label = f"cpw-{cfg.n_runs}x{cfg.n_factors}-r{restart}"
    if cfg.subsample and objective.engine == "direct":
        # Scores above used a subset of projections; report on all of them.
        full = make_objective(_full_config(cfg), seed=seed)
        full.bind(final)
        final_objective = full.value()
    else:
        final_objective = current

    logger.debug(
        f"Restart {restart}: {start_objective:.6f} -> {final_objective:.6f}"
        f" in {len(moves)} moves"
    )
    return SearchTrace(
        restart=restart,
        seed=seed,
        start_objective=start_objective,
        final_objective=final_objective,
        moves=moves,
        sweeps=sweeps,
        max_sweeps_hit=hit,
        design=final,
        column_order=tuple(order),
    )


def _full_config(cfg):
    return SearchConfig(
        n_runs=cfg.n_runs,
        n_factors=cfg.n_factors,
        k=cfg.k,
        alpha=cfg.alpha,
        prior=cfg.prior,
        g=cfg.g,
        restarts=1,
        seed=cfg.seed,
        max_sweeps=cfg.max_sweeps,
        order=cfg.order,
        engine="direct",
        subsample=0.0,
        n_workers=1,
    )


def run_restarts(cfg, show_progress=False):
    """
    Run every restart of a search. Restart seeds are derived from cfg.seed, so
    results do not depend on the number of workers.

    :return: List of SearchTrace in restart order.
    """
    seeds = spawn_seeds(cfg.seed, cfg.restarts)
    logger.info(
        f"CPW search N={cfg.n_runs} m={cfg.n_factors} k={cfg.k}:"
        f" {cfg.restarts} restarts over {n_projections(cfg.n_factors, cfg.k)} projections"
    )

    if cfg.n_workers <= 1:
        return [
            run_restart(cfg, i, seed)
            for i, seed in enumerate(tqdm(seeds, disable=not show_progress))
        ]

    traces = [None] * cfg.restarts
    pbar = tqdm(total=cfg.restarts, disable=not show_progress)
    with futures.ProcessPoolExecutor(cfg.n_workers) as executor:
        to_do = {
            executor.submit(run_restart, cfg, i, seed): i for i, seed in enumerate(seeds)
        }
        for future in futures.as_completed(to_do):
            traces[to_do[future]] = future.result()
            pbar.update(1)
    pbar.close()
    return traces


def cpw_search(cfg, show_progress=False):
    """
    Columnwise-pairwise search for a design minimizing mean tilde_p over k-factor
    projections.

    :param cfg: A SearchConfig.
    :param show_progress: Display a progress bar over restarts.
    :return: (best Design, its SearchTrace); ties go to the lowest restart index.
    """
    traces = run_restarts(cfg, show_progress=show_progress)
    best = traces[0]
    for trace in traces[1:]:
        if trace.final_objective < best.final_objective:
            best = trace
    logger.info(
        f"Best restart {best.restart}: objective {best.final_objective:.6f}"
        f" after {len(best.moves)} moves"
    )
    return best.design, best
