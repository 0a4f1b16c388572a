from .cyclotomic import (
    Cyclotomic,
    as_cyclotomic,
    cyclotomic_polynomial,
    divisors,
    euler_phi,
    eval_cyclotomic_polynomial,
)
from .linalg import (
    SubspaceCF,
    apply_matrix,
    nullspace,
    rref,
    subspace_canonicalize,
    subspace_intersect,
    subspace_leq,
)
from .snf import SmithForm, smith_normal_form
from .valuation import (
    FactoredOrderPoly,
    NotRealizableError,
    ZetaSpec,
    choose_zeta,
    eval_order_poly_valuation,
    is_prime,
    multiplicative_order,
    nu_cyclotomic_value,
    nu_ell,
    nu_ell_factor,
    prime_power_base,
)

__all__ = [
    "SmithForm",
    "smith_normal_form",
    "Cyclotomic",
    "FactoredOrderPoly",
    "NotRealizableError",
    "SubspaceCF",
    "ZetaSpec",
    "apply_matrix",
    "as_cyclotomic",
    "choose_zeta",
    "cyclotomic_polynomial",
    "divisors",
    "euler_phi",
    "eval_cyclotomic_polynomial",
    "eval_order_poly_valuation",
    "is_prime",
    "multiplicative_order",
    "nu_cyclotomic_value",
    "nu_ell",
    "nu_ell_factor",
    "nullspace",
    "prime_power_base",
    "rref",
    "subspace_canonicalize",
    "subspace_intersect",
    "subspace_leq",
]
