from .design import Design, full_factorial, model_matrix, parse_design, project
from .aberration import (  # isort:skip
    Gwlp,
    Ordering,
    e_s2,
    gma_compare,
    gwlp,
    is_orthogonal_array,
    j_characteristic,
    resolution,
    word_sums,
)
