from .ranking import RankReport, rank_correlation, rank_report, rank_values
from .harness import (  # isort:skip
    TABLES,
    CellResult,
    ReproductionReport,
    printed_tolerance,
    reproduce,
    reproduce_ex413,
    reproduce_table3,
    reproduce_table5,
)
from .timing import TimingRecord, time_criteria
