"""Geometric optimal-control toolkit.

Extremal flows of the planar orthogonal-frame control system, analytic
extremals, frame curvature calculus and a shooting-method planner.
"""

from ._core import (  # noqa: F401
    CheckFault,
    CheckResult,
    ClosedFormParams,
    ConservationReport,
    Control,
    Costate,
    DegenerateFrameError,
    DomainError,
    FrameField,
    IntegrationError,
    IntegratorConfig,
    MaxStepsError,
    Method,
    PhasePoint,
    PlanResult,
    RhsKind,
    ShootingConfig,
    SingularityError,
    State,
    StructureData,
    Trajectory,
    TrajectoryMeta,
    UnknownFrameError,
    Vec2,
    builtin_frame,
    builtin_frame_names,
    conservation_report,
    control_rate_u1,
    controls_at,
    frame_inner,
    gaussian_curvature,
    general_rhs,
    geodesic_curvature,
    hamilton_rhs,
    hamiltonian,
    integrate,
    kappa_g_at,
    lie_bracket,
    optimal_controls,
    paper_frame,
    phase_at,
    plan,
    reduced_rhs,
    residual,
    run_check_suite,
    shoot,
    structure_functions,
    theta_at,
    theta_dot_at,
)

__version__ = "0.1.0"
