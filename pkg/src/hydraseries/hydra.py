"""Enriched shift-plethystic tree series, hydra continued fractions, the
quotient forms of the main theorems, and local-minima composition structure.

The quotient forms are deliberately computed by plain series algebra on the
enumerated languages, sharing no path with the fixed-point solver, so that
their agreement with the solver output is a genuine two-route cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coeffs import T
from .languages import (
    compositions,
    compositions_bounded_diff,
    m_distinct_partitions,
    partitions_max_part,
)
from .plethysm import BiSeries, SolverError, X_FAM, Y_FAM, plethysm, solve_implicit
from .series import Series, Window


def enriched_trees(enriching: Series, window: Window = None) -> Series:
    """The tree series A satisfying A = X_0 (M o_s A) for an enriching series
    M with constant term 1.

    When M is a language the support words are the preorder words of colored
    plane trees whose children-color word, shifted down by the parent color,
    lies in M; for general M each such tree is weighted by the product of the
    corresponding coefficients.  The shift-plethystic inverse is X_0 M^{-1}.
    """
    if enriching.constant_term() != 1:
        raise ValueError("enriching series needs constant term 1")
    if window is None:
        window = Window(enriching.window.max_len, enriching.window.max_letter, 0)
    max_len, max_letter = window.max_len, window.max_letter
    terms = {}
    x0 = ((X_FAM, 0),)
    for w, c in enriching.terms.items():
        if len(w) + 1 > max_len:
            continue
        if w and max(w) > max_letter:
            continue
        terms[x0 + tuple((Y_FAM, k) for k in w)] = c
    return solve_implicit(BiSeries(terms, window), window)


def hydra_R(m, window: Window) -> Series:
    """The m-headed hydra continued fraction: trees enriched with the
    sign-flipped bounded-part partition series (m = None for the
    infinitely-headed fraction).

    Checks the sign relation  A_{Pi_m} = -R_m(-X)  against an independent
    solve before returning.
    """
    pi = partitions_max_part(m, window)
    hydra = enriched_trees(pi.sign_flip(), window)
    trees = enriched_trees(pi, window)
    witness = (-hydra.sign_flip()).first_discrepancy(trees)
    if witness is not None:
        raise SolverError(f"hydra sign relation fails at word {witness}")
    return hydra


def quotient_partition_form(m: int, window: Window) -> Series:
    """X_0 (sigma^{m-1} P_m) (P_m)^{-1} built from the m-distinct partition
    language; equals hydra_R(m - 1) on the window."""
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    p = m_distinct_partitions(m, window)
    x0 = Series.letter(0, window)
    return x0 * p.shift(m - 1) * p.inverse()


def quotient_composition_form(m: int, window: Window) -> Series:
    """X_0 (sigma^{m-1} C^(m-1))^{-1} C^(m-1) built from the bounded-difference
    composition language; equals enriched_trees(Pi_{m-1}) on the window."""
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    c = compositions_bounded_diff(m - 1, window)
    x0 = Series.letter(0, window)
    return x0 * c.shift(m - 1).inverse() * c


@dataclass(frozen=True)
class LocalMinimaFactorization:
    """The unique split of a composition into cyclic blocks at its running
    minima: minima are weakly decreasing and block i is the tail after the
    i-th minimum."""

    minima: tuple
    blocks: tuple

    def reassemble(self) -> tuple:
        out = []
        for m, block in zip(self.minima, self.blocks):
            out.append(m)
            out.extend(block)
        return tuple(out)


def local_minima_factor(word) -> LocalMinimaFactorization:
    """Factor a composition at its local minima; the empty composition gives
    the empty factorization."""
    w = tuple(word)
    if any(a < 1 for a in w):
        raise ValueError(f"{w} is not a composition")
    minima = []
    blocks = []
    current = None
    for a in w:
        if current is None or a <= current:
            minima.append(a)
            blocks.append([])
            current = a
        else:
            blocks[-1].append(a)
    return LocalMinimaFactorization(
        tuple(minima), tuple(tuple(b) for b in blocks)
    )


def compositions_by_local_minima(window: Window) -> Series:
    """The composition series with each cyclic block marked by t: substituting
    t X_0 C into the unbounded partition series puts t^j on the compositions
    with j local minima."""
    c = compositions(window)
    marked = (Series.letter(0, window) * c).scale(T)
    return plethysm(partitions_max_part(None, window), marked)
