from .exact import (
    HARMONIC_MODES,
    ExactReport,
    ModelTrace,
    exact_criteria,
    moment_diagonal,
    projection_average_exact,
    trace_h,
    trace_ig,
)
from .approx import (  # isort:skip
    AlphaWeights,
    RTable,
    TildeValues,
    average_tilde_criteria,
    projection_average_tilde,
    projection_tilde_values,
    r_table,
    tilde_criteria,
    tilde_p_direct,
)
from .bridge import (  # isort:skip
    BridgeValue,
    XiSet,
    bridge_coefficients,
    bridge_constant,
    bridge_first_order,
    bridge_projection_average,
    bridge_second_order,
    bridge_value,
    verify_bridge,
    xi_from_weights,
)
