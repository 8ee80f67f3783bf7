"""GDoF analysis of multi-cell networks that treat inter-cell interference
as noise: strategy evaluation, downlink/uplink power-allocation duality,
polyhedral achievable regions with regime classification, a brute-force
grid-search oracle, and an exact deterministic-channel checker."""

__version__ = "0.1.0"

from .adt import (
    AdtCheckReport,
    AdtDistribution,
    AdtParams,
    adt_output,
    check_entropy_diff,
    check_less_noisy,
    downshift,
    entropy,
)
from .duality import (
    DualizationReport,
    dualize,
    dualize_ibc_to_imac,
    dualize_imac_to_ibc,
    normalize_imac_strategy,
    satisfies_received_power_order,
)
from .errors import (
    BudgetExceededError,
    DimensionMismatchError,
    EmptyRegionError,
    NetworkFormatError,
    PreconditionError,
    TincellError,
)
from .network import (
    CanonicalizationRecord,
    ChannelStrengths,
    UserId,
    canonicalize,
    parse_network,
    serialize_network,
    validate,
)
from .oracle import (
    GridSpec,
    default_grid,
    grid_achievable_points,
    oracle_achievable,
    oracle_max_sum,
    strategy_count,
)
from .regions import (
    IaReport,
    LinearConstraint,
    PolyhedralRegion,
    RegimeLabel,
    Subnetwork,
    UserPartition,
    classify_regime,
    contains,
    ctin_conditions_hold,
    cyclic_sequences,
    ia_sum_gdof,
    identity_suborder,
    implied_conditions_hold,
    max_weighted_sum,
    outer_bound_region,
    partition_order_holds,
    partition_users,
    polyhedral_region,
    region_to_dict,
    tin_conditions_hold,
    tina_max_weighted_sum,
    tina_region_contains,
)
from .strategies import (
    SILENT,
    DecodingOrder,
    FiniteSnrConfig,
    PowerAllocation,
    Strategy,
    achievable_with_strategy,
    gamma_ibc,
    gamma_imac,
    gdof_bounds,
    gdof_bounds_ibc,
    gdof_bounds_imac,
    parse_strategy,
    sinr_rates_ibc,
    strategy_to_dict,
)
