"""Quasi-static Mode III interface crack growth through channels of small line defects."""

from .asymptotics import (
    Arrangement,
    ChannelSpec,
    channel_microcracks,
    channel_mixed,
    channel_mixed_infinite,
    far_single_microcrack,
    far_single_rigid,
)
from .config import ArrayGenerator, DiagramSettings, RunConfig, expand_arrays
from .diagram import CellClass, DiagramGrid, diagram
from .dipole import DipoleMatrix, dipole_matrix
from .field import a0, grad_u0, k0, potential_derivative
from .model import (
    Bimaterial,
    Configuration,
    ConfigurationError,
    Defect,
    DefectKind,
    DefectPolar,
    DomainError,
    LoadCase,
    SingularityError,
    SolverSettings,
    TipState,
    to_polar,
    validate,
)
from .perturbation import (
    PerturbationResult,
    delta_k_advance,
    delta_k_defect,
    relative_perturbation,
    weight_vector,
)
from .propagation import Outcome, PropagationTrace, propagate, speed_scaling_probe, step_advance

__version__ = "0.1.0"
