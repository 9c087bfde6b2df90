"""Lifetime bounds and routing simulation for continuous 802.15.4 sensor networks.

The toolkit layers a network graph by hop distance from its base station,
derives a linear per-packet energy model from radio frame overheads and
measured radio costs, computes analytical lower/upper bounds on the number
of collection iterations the network can complete before its first node
dies, and validates those bounds with a deterministic routing simulator.
"""

from .bounds import (
    BoundsReport,
    SphereIndexOutOfRange,
    ZeroEnergyModel,
    lifetime_bounds,
    sphere_min_energy,
    worst_case_node_energy,
)
from .calibration import (
    NonPositiveInput,
    PacketReading,
    ScopeReading,
    ZeroEffectiveBytes,
    profile_from_readings,
    reading_energy,
)
from .errors import Error
from .frame_model import (
    FRAME_PRESETS,
    FrameConfig,
    ack_frame_length,
    data_frame_length,
    frame_preset,
)
from .energy_model import (
    CC2420_PAPER,
    PROFILE_PRESETS,
    EnergyModel,
    RadioProfile,
    build_model,
    profile_preset,
    receive_energy,
    send_energy,
)
from .simulator import (
    STRATEGIES,
    BoundsVerdict,
    BoundViolation,
    InvalidStrategyForTopology,
    SimConfig,
    SimResult,
    simulate,
    validate_against_bounds,
)
from .topology import (
    EmptyTopology,
    SpherePartition,
    Topology,
    UnreachableNode,
    load_topology,
    partition,
)

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "BoundsVerdict",
    "BoundViolation",
    "CC2420_PAPER",
    "EmptyTopology",
    "EnergyModel",
    "Error",
    "FRAME_PRESETS",
    "FrameConfig",
    "InvalidStrategyForTopology",
    "NonPositiveInput",
    "PROFILE_PRESETS",
    "PacketReading",
    "RadioProfile",
    "STRATEGIES",
    "ScopeReading",
    "SimConfig",
    "SimResult",
    "SpherePartition",
    "SphereIndexOutOfRange",
    "Topology",
    "UnreachableNode",
    "ZeroEffectiveBytes",
    "ZeroEnergyModel",
    "ack_frame_length",
    "build_model",
    "data_frame_length",
    "frame_preset",
    "lifetime_bounds",
    "load_topology",
    "partition",
    "profile_from_readings",
    "profile_preset",
    "reading_energy",
    "receive_energy",
    "send_energy",
    "simulate",
    "sphere_min_energy",
    "validate_against_bounds",
    "worst_case_node_energy",
]
