"""Quantitative algebras over finite metric spaces."""

from qalg._qalg import (
    Space,
    check_monad_laws,
    check_sat,
    free_algebra,
    hausdorff_distance,
    hom_space,
    is_ultrametric,
    metric_reflection,
    monad_names,
    parse,
    product,
    smallest_pseudometric,
    tensor,
    InputError,
    BudgetError,
)

__all__ = [
    "Space",
    "check_monad_laws",
    "check_sat",
    "free_algebra",
    "hausdorff_distance",
    "hom_space",
    "is_ultrametric",
    "metric_reflection",
    "monad_names",
    "parse",
    "product",
    "smallest_pseudometric",
    "tensor",
    "InputError",
    "BudgetError",
]
