import tempfile

from rodeo.criteria import projection_average_tilde
from rodeo.models import MaximalModel, PriorSpec, weight_table
from rodeo.search import SearchConfig, cpw_search, random_balanced_design
from rodeo.storage import read_design, save_design

# ------------------------------------------------------------------------------
# Search 12-run designs on 5 factors that do well across all 3-factor
#   projections under a hierarchical prior.
prior = PriorSpec.hierarchical(0.5, 0.25)
cfg = SearchConfig(
    n_runs=12, n_factors=5, k=3, alpha=0.5, prior=prior, restarts=3, seed=11
)

design, trace = cpw_search(cfg)
print(
    f"Restart {trace.restart}:"
    f" {trace.start_objective:.5f} -> {trace.final_objective:.5f}"
)
print(f"{len(trace.moves)} moves in {trace.sweeps} sweeps")

# Compare against a random level-balanced start.
weights = weight_table(MaximalModel.second_order(3), prior, 12)
start = random_balanced_design(12, 5, seed=11)
print("random design:", projection_average_tilde(start, 3, weights, 0.5))
print("searched design:", projection_average_tilde(design, 3, weights, 0.5))

# Designs are plain text, one run per line.
with tempfile.TemporaryDirectory() as tmpdir:
    path = f"{tmpdir}/searched.txt"
    save_design(design, path)
    assert read_design(path) == design
