from .space import (
    INTERACTION,
    INTERCEPT,
    MAIN,
    EffectIndex,
    MaximalModel,
    Submodel,
    enumerate_submodels,
    lattice_size,
)
from .weights import (  # isort:skip
    PriorSpec,
    WeightTable,
    inclusion_probabilities,
    model_prior,
    pair_classes,
    weight_table,
    weight_table_enumerated,
    weight_table_exchangeable,
)
