from rodeo.catalog import catalog
from rodeo.criteria import (
    bridge_projection_average,
    projection_average_exact,
    projection_average_tilde,
)
from rodeo.design import gma_compare, gwlp
from rodeo.models import MaximalModel, PriorSpec, weight_table

# ------------------------------------------------------------------------------
# Four 16-run designs on 5 factors ship with rodeo as catalog fixtures.
designs = catalog.group("A")
for d in designs:
    print(d.label, d.runs, "x", d.factors, "GWLP", gwlp(d).b)

# The approximate criterion only needs pairwise inclusion weights, which for an
#   exchangeable prior come in closed form.
alpha = 0.5
k = 5
weights = weight_table(MaximalModel.second_order(k), PriorSpec.equal(), 16)
tilde = {d.label: projection_average_tilde(d, k, weights, alpha) for d in designs}
print("Approximate P:", tilde)

# The same number follows from the wordlength pattern alone.
for d in designs:
    b = gwlp(d, max_order=4).prefix(4)
    from_words = bridge_projection_average(b, d.factors, k, weights, alpha)
    assert abs(from_words - tilde[d.label]) < 1e-10

# Lower approximate P goes with less aberration.
ranked = sorted(designs, key=lambda d: tilde[d.label])
for better, worse in zip(ranked, ranked[1:]):
    print(better.label, gma_compare(gwlp(better), gwlp(worse)).name, worse.label)

# ------------------------------------------------------------------------------
# Exact criteria invert the information matrix of every eligible submodel.
#   Three-factor projections keep this quick.
k = 3
exact_weights = weight_table(
    MaximalModel.second_order(k), PriorSpec.equal(), 14, engine="enumerated"
)
for d in catalog.group("B")[:3]:
    exact = projection_average_exact(d, k, exact_weights, alpha)
    approx = projection_average_tilde(d, k, exact_weights, alpha)
    print(f"{d.label}: exact {exact:.4f}, approximate {approx:.4f}")
