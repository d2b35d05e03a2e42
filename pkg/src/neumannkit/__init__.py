"""Closed-form Neumann (second-kind Green) functions for the unit disk,
the plane annulus and the unit ball, discrete charge energies, and a
verification harness for the extremal properties of angularly symmetric
charge configurations.

The numerical hot paths run in a compiled extension when it was built;
otherwise a pure-Python twin is used (``neumannkit.BACKEND`` names the
active one, NEUMANNKIT_BACKEND overrides the choice).
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .errors import (ConfigurationError, ConvergenceError, DomainError,
                     NeumannKitError, SingularityError)
from .special import (DEFAULT_THETA_TOL, double_factorial,
                      fundamental_solution, sphere_area, theta1,
                      theta1_prime_at_zero)
from .geometry import (Annulus, Ball, Circle, Configuration, CylPoint, Disk,
                       Scheme, cartesian_to_cyl, cyl_to_cartesian,
                       parse_domain, realize, sample_random_angles,
                       symmetrize)
from .kernels import (NeumannKernel, ball_flux_correction, neumann_annulus,
                      neumann_annulus_diag, neumann_ball, neumann_ball_diag,
                      neumann_disk, neumann_disk_diag)
from .energy import (EnergyReport, energy_report, expansion_coefficients,
                     neumann_energy, potential, quadratic_form_qn)
from .verification import (CheckReport, annulus_fourier_oracle,
                           boundary_flux_check, boundary_mean_check,
                           dirichlet_asymptotics_check, fd_laplacian_check,
                           theta1_triple_product, verification_suite)
from .harness import (SearchResult, TrialRecord, extremality_search,
                      run_trials, trials_summary, trials_to_csv)

__all__ = [
    "__version__", "BACKEND",
    "NeumannKitError", "DomainError", "SingularityError", "ConvergenceError",
    "ConfigurationError",
    "DEFAULT_THETA_TOL", "fundamental_solution", "sphere_area",
    "double_factorial", "theta1", "theta1_prime_at_zero",
    "CylPoint", "Disk", "Annulus", "Ball", "Circle", "Configuration",
    "Scheme", "cyl_to_cartesian", "cartesian_to_cyl", "realize", "symmetrize",
    "sample_random_angles", "parse_domain",
    "neumann_disk", "neumann_disk_diag", "neumann_annulus",
    "neumann_annulus_diag", "ball_flux_correction", "neumann_ball",
    "neumann_ball_diag", "NeumannKernel",
    "neumann_energy", "quadratic_form_qn", "potential",
    "expansion_coefficients", "EnergyReport", "energy_report",
    "CheckReport", "fd_laplacian_check", "boundary_flux_check",
    "boundary_mean_check", "annulus_fourier_oracle", "theta1_triple_product",
    "dirichlet_asymptotics_check", "verification_suite",
    "TrialRecord", "run_trials", "extremality_search", "SearchResult",
    "trials_summary", "trials_to_csv",
]
