"""Min-type reproducing kernels on the unit ball: closed forms, weighted
quadrature, minimal-norm interpolation, and exponential-growth scans for
radial Sobolev functions."""

__version__ = "0.1.0"

from .errors import (DomainError, KinkError, ProfileError, QuadratureError,
                     SolverError)
from .kernels import (alpha_critical, ball_volume, eval_functional_norm,
                      gamma2, gammaN, kernel_derivative, kernel_K,
                      kernel_matrix, moser_mu, sphere_measure, tm_candidate)
from .profiles import (RadialProfile, from_callables, kernel_profile,
                       linear_ramp, moser_profile, scale_profile,
                       tm_candidate_profile, zero_profile)
from .quadrature import (DEFAULT_SPEC, QuadratureSpec, apply_evaluation,
                         gradient_seminorm, inner_product, sobolev_norm)
from .montecarlo import disk_energy_mc
from .interpolation import (GramSystem, KernelExpansion, NodeSet,
                            add_expansions, build_gram, evaluate_expansion,
                            expansion_norm, fit_min_norm, node_set_from_csv)
from .moser import (ScanResult, TMParameters, TMValue, moser_scan,
                    tm_average, tm_functional, unit_norm_check)

__all__ = [
    "DomainError", "KinkError", "ProfileError", "QuadratureError", "SolverError",
    "alpha_critical", "ball_volume", "eval_functional_norm", "gamma2", "gammaN",
    "kernel_derivative", "kernel_K", "kernel_matrix", "moser_mu",
    "sphere_measure", "tm_candidate",
    "RadialProfile", "from_callables", "kernel_profile", "linear_ramp",
    "moser_profile", "scale_profile", "tm_candidate_profile", "zero_profile",
    "DEFAULT_SPEC", "QuadratureSpec", "apply_evaluation", "gradient_seminorm",
    "inner_product", "sobolev_norm",
    "disk_energy_mc",
    "GramSystem", "KernelExpansion", "NodeSet", "add_expansions", "build_gram",
    "evaluate_expansion", "expansion_norm", "fit_min_norm", "node_set_from_csv",
    "ScanResult", "TMParameters", "TMValue", "moser_scan", "tm_average",
    "tm_functional", "unit_norm_check",
    "__version__",
]
