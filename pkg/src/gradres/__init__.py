"""Graded minimal resolutions, twisted (smash) products and stratifying ideals over
finite-dimensional algebras, with exact arithmetic over F_p and Q."""
from .algebra import (
    AlgebraError,
    CapabilityError,
    GammaAlgebra,
    GradedAlgebra,
    QuiverPresentation,
    build_algebra,
    make_gamma_algebra,
    opposite,
    path_algebra,
    quotient_by_ideal,
    radical,
)
from .config import RunConfig
from .exactla import Field
from .homology import (
    SubalgebraR,
    bar_resolution,
    is_relatively_projective,
    quotient_functor_check,
    relative_tor,
    stratifying_check,
    tor,
)
from .modules import (
    Module,
    ModuleError,
    Submodule,
    build_module,
    is_projective,
    is_superfluous,
    is_superfluous_bruteforce,
    regular_module,
    simples,
    submodule,
)
from .monoid import GradedMonoid, MonoidError
from .resolution import compare, cover, forgetful_resolution_check, minimal_resolution, verify
from .smash import check_twisted_axioms, smash, twist_module, twisted_resolution_check

__version__ = "0.1.0"
