"""Exact noncommutative power series with shift-plethysm.

Truncated series over integer-indexed letters with exact rational (and
t-marked) coefficients, shift-plethystic substitution and inversion, the
implicit-equation solver behind hydra continued fractions and enriched tree
series, linked-language K-duality, the insertion bijection on cyclic
compositions, umbral specialization to (z, q, t)-series, closed-form q-series
evaluators, and brute-force oracles that certify every identity.
"""

from .coeffs import T, TPoly, tpoly
from .series import (
    Series,
    Window,
    WindowError,
    coefficient,
    series_equal,
    series_inverse,
    series_linear,
    series_mul,
    shift,
    sign_flip,
    word_stats,
)
from .plethysm import (
    BiSeries,
    SolverError,
    plethysm,
    plethystic_inverse,
    series_order,
    solve_implicit,
    word_plethysm,
)
from .languages import (
    LinkedLanguage,
    NotLinkedError,
    SetSpec,
    build_language,
    carlitz_compositions,
    compositions,
    compositions_bounded_diff,
    compositions_diff_in_complement,
    compositions_plus,
    distinct_partitions_max_part,
    graded_gf,
    k_dual,
    m_distinct_partitions,
    partitions_max_part,
    partitions_with_rises,
    sigma,
)
from .trees import (
    PTree,
    format_tree,
    insertion_tree,
    is_cyclic_composition,
    preorder_word,
    validate_tree,
)
from .hydra import (
    LocalMinimaFactorization,
    compositions_by_local_minima,
    enriched_trees,
    hydra_R,
    local_minima_factor,
    quotient_composition_form,
    quotient_partition_form,
)
from .qseries import ZQSeries, closed_form, sk_factorial, umbral

__all__ = [name for name in dir() if not name.startswith("_")]
