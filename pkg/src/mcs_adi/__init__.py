"""MCS ADI splitting for 2D convection-diffusion with a mixed derivative.

The package has two halves that check each other:

* a small linear-algebra side (`solver`, `spectrum`): periodic second-order
  finite differences split into a mixed-derivative part and two
  unidirectional parts, advanced either by the mixed-derivative-corrected
  ADI scheme (``mcs``) or by the plain first-order splitting (``douglas``);
* a scalar analysis side (`stability`, `analysis`): the rational
  amplification factor of the scheme on a Fourier mode, the spectral cone
  condition, and grid / Monte-Carlo scans of the sharp stability thresholds
  of the scheme parameter theta.

`cli` exposes both halves as the ``mcs-adi`` command.
"""

__version__ = "0.1.0"

from .stability import (
    DomainError,
    PoleError,
    SchemeParams,
    SpectralPoint,
    cone_condition,
    eval_stability_function,
    stability_function,
)
from .spectrum import (
    ConeReport,
    FourierMode,
    GridSpec,
    PdeCoefficients,
    fourier_symbols,
    verify_cone_all_modes,
)
from .solver import (
    SingularSystemError,
    SplitOperators,
    apply_split_operator,
    build_split_operators,
    run_convergence_study,
    solve_directional,
    step_douglas,
    step_mcs,
)
from .analysis import ScanReport, default_theta_grid, figure1_scan

__all__ = [
    "__version__",
    "DomainError",
    "PoleError",
    "SchemeParams",
    "SpectralPoint",
    "cone_condition",
    "eval_stability_function",
    "stability_function",
    "ConeReport",
    "FourierMode",
    "GridSpec",
    "PdeCoefficients",
    "fourier_symbols",
    "verify_cone_all_modes",
    "SingularSystemError",
    "SplitOperators",
    "apply_split_operator",
    "build_split_operators",
    "run_convergence_study",
    "solve_directional",
    "step_douglas",
    "step_mcs",
    "ScanReport",
    "default_theta_grid",
    "figure1_scan",
]
