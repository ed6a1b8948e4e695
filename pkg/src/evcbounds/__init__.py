"""Dependence measures and sharp bounds for bivariate extreme-value copulas.

The public surface is re-exported here; see the submodules for details:

- :mod:`evcbounds.pickands`  knot representation, families, copula evaluation
- :mod:`evcbounds.measures`  Spearman's rho, Kendall's tau and their transforms
- :mod:`evcbounds.envelopes` lower/upper bounds, region membership, witnesses
- :mod:`evcbounds.numerics`  quadrature and root finding
"""
from .errors import (
    DomainError,
    EVCBoundsError,
    InvalidPickands,
    NoClosedForm,
    NoSignChange,
    ParameterOutOfRange,
    PointOutsideRegion,
    ToleranceNotReached,
    WitnessNotFound,
)
from .numerics import IntegrationResult, QuadratureConfig, RootResult, find_root, integrate
from .pickands import (
    Dominance,
    FamilySpec,
    PickandsFunction,
    comonotone,
    convex_combination,
    copula_eval,
    dominates,
    eval_pickands,
    from_json,
    from_knots,
    from_supporting_lines,
    independence,
    is_valid,
    make_family,
    support_bounds,
    support_contains,
)
from .measures import (
    MeasureKind,
    h_rho,
    h_tau,
    phi1,
    phi1_inv,
    phi2,
    phi2_inv,
    psi1,
    psi1_inv,
    psi2,
    psi2_inv,
    rho,
    rho_family_closed,
    tau,
    tau_family_closed,
    tau_quadrature_oracle,
)
from .envelopes import (
    Region,
    Witness,
    boundary_curves,
    calibrate,
    lower_bound,
    region_contains,
    upper_bound,
    upper_envelope_rho,
    upper_envelope_tau,
    witness,
)

__version__ = "0.1.0"
