"""Dissipative Jaynes-Cummings toolkit.

A two-level emitter coupled to one cavity mode with cavity loss, spontaneous
emission, incoherent pumping and pure dephasing: full master-equation
numerics, closed-form effective-coupling analytics and laser rate equations.
"""

__version__ = "0.1.0"

from .analytics import (
    RegimeReport,
    TwoBoxState,
    bad_cavity_crossing_pump,
    classify_regime,
    effective_coupling,
    effective_quality_factor,
    efficiency_beta,
    optimal_dephasing,
    pumped_rates,
    purcell_factor,
    steady_populations_badcavity,
    two_box_evolve,
)
from .hilbert import Operators, SystemParams, build_hamiltonian, build_operators
from .lindblad import Liouvillian, Trajectory, build_liouvillian, evolve, steady_state
from .observables import SteadyObservables, expectation, g2_zero, poissonian_plateau, steady_observables
from .ratelaser import LaserSteadyState, laser_steady_state, na_of_inversion, rate_rhs
from .sweep import Grid, SweepResult, SweepSpec, emit, run_sweep

__all__ = [
    "Grid",
    "LaserSteadyState",
    "Liouvillian",
    "Operators",
    "RegimeReport",
    "SteadyObservables",
    "SweepResult",
    "SweepSpec",
    "SystemParams",
    "Trajectory",
    "TwoBoxState",
    "bad_cavity_crossing_pump",
    "build_hamiltonian",
    "build_liouvillian",
    "build_operators",
    "classify_regime",
    "effective_coupling",
    "effective_quality_factor",
    "efficiency_beta",
    "emit",
    "evolve",
    "expectation",
    "g2_zero",
    "laser_steady_state",
    "na_of_inversion",
    "optimal_dephasing",
    "poissonian_plateau",
    "pumped_rates",
    "purcell_factor",
    "rate_rhs",
    "run_sweep",
    "steady_observables",
    "steady_populations_badcavity",
    "steady_state",
    "two_box_evolve",
]
