"""Bound-state spectra of radial problems with an attractive inverse-square
singularity under self-adjoint-extension boundary conditions, plus an
independent shooting oracle and a CLI."""

from . import cli, errors, oracle, singular, specfun, spectra
from .cli import RunConfig, run
from .oracle import (
    MeshSpec,
    RadialSolution,
    boundary_bracket_class,
    e0_node_count,
    find_levels,
    find_levels_with_solutions,
    integrate_radial,
    orthogonality_defect,
    overlap_integral,
    spacing_report,
    virial_residual,
)
from .singular import (
    RadialProblem,
    Regime,
    SingularityAnalysis,
    additional_exists,
    analyze,
    e0_node_radius,
    giri_g_classify,
    kinetic_convergence,
    oscillator_tail,
    quantum_defect,
    sinh_squared_problem,
)
from .spectra import (
    BoundState,
    SAEParameter,
    SpectrumResult,
    closed_levels,
    fall_spectrum,
    fp_lambda,
    ground_state_window,
    inverse_square_level,
    kg_hydrogen_level,
    kg_hydrogen_map,
    kg_two_particle,
    qp_lambda,
    scarf_b,
    solve_attractive_coulomb,
    solve_repulsive_coulomb,
    tau_from_energy,
)

__version__ = "0.1.0"
