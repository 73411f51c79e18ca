"""Exact logical states prepared by transversal injection on unrotated surface codes."""

from .amplitude import AmplitudePoly, InjectionState, LogicalState, ZeroProbabilityTrajectory, bloch, normalize
from .coset import Trajectory, coset_representatives, enumerate_coset
from .lattice import CodeLayout, build_layout, validate_layout
from .projector import ProjectionResult, project, trajectory_probability

__all__ = [
    "AmplitudePoly",
    "CodeLayout",
    "InjectionState",
    "LogicalState",
    "ProjectionResult",
    "Trajectory",
    "ZeroProbabilityTrajectory",
    "bloch",
    "build_layout",
    "coset_representatives",
    "enumerate_coset",
    "normalize",
    "project",
    "trajectory_probability",
    "validate_layout",
]
