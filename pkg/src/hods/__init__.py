"""Higher-order digital sequences over F2.

Exact construction of digital nets, sequences, and their digit-interlaced
order-2 variants; dual-set weight enumeration and quality verification;
Walsh character identities; and L2/Lq discrepancy studies.
"""

from .errors import InvalidInputError, ResourceLimitError, budget_bits
from .gf2core import (
    BitMatrix,
    Gf2Poly,
    irreducible_sequence,
    kernel_basis,
    laurent_coefficients,
    poly_is_irreducible,
    rank,
)
from .genmat import (
    GeneratingMatrixSet,
    interlace_matrix_set,
    interlaced_niederreiter_set,
    interlaced_t_bound,
    niederreiter_matrix,
    niederreiter_set,
    niederreiter_t_bound,
    upper_left,
    upper_left_set,
    zero_set,
)
from .points import (
    DyadicValue,
    PointSet,
    ShiftVector,
    block_shift_vector,
    digital_shift,
    interlace_points,
    interlace_value,
    net_points,
    propagation_point_set,
    sequence_point,
    sequence_points,
)
from .duality import (
    DualBasis,
    DualElement,
    dual_elements,
    dual_set_basis,
    exact_t_value,
    minimal_weights,
    nrt_weight,
    order2_weight,
    verify_order2_net,
)
from .walsh import (
    character_sum,
    delta_walsh_coefficient,
    delta_walsh_midpoint,
    indicator_walsh_integral,
    linear_walsh_integral,
    wal,
    wal_point,
    walsh_inner_product,
)
from .discrepancy import (
    StudyRow,
    convergence_study,
    l2_exact,
    local_discrepancy,
    lq_discrepancy_bound,
    lq_estimate,
    qmc_integrate,
    to_float_array,
)

__version__ = "0.1.0"
