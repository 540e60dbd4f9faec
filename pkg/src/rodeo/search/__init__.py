from .objective import (
    DirectObjective,
    SearchObjective,
    WordObjective,
    adjustment_pairs,
    make_objective,
)
from .cpw import (  # isort:skip
    Move,
    SearchConfig,
    SearchTrace,
    cpw_search,
    first_order_adjustments,
    random_balanced_design,
    reorder_columns,
    run_restart,
    run_restarts,
)
