"""Constructors for the language families of the package and the
linked-language K-duality machinery.

Every family is materialized by direct recursive enumeration of its defining
adjacency constraint on the window, never via algebraic identities; the
algebraic identities are then meaningful cross-checks.  All language
coefficients are 0/1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .series import Series, Window


class NotLinkedError(Exception):
    """K-dualizing produced a non-0/1 coefficient, so the input could not have
    been a genuine linked language."""


# -- subsets of the naturals --------------------------------------------------


@dataclass(frozen=True)
class SetSpec:
    """A decidable subset of the naturals with terminating bounded enumeration.

    kinds: "finite" (sorted tuple), "interval" (lo, hi-or-None),
    "progression" (first l, modulus m, exclude-zero flag; the set
    {l, l+m, l+2m, ...}), "union" (tuple of SetSpec).
    """

    kind: str
    data: tuple

    @classmethod
    def finite(cls, values) -> "SetSpec":
        vals = sorted(set(values))
        if any(v < 0 for v in vals):
            raise ValueError("SetSpec elements must be nonnegative")
        return cls("finite", tuple(vals))

    @classmethod
    def interval(cls, lo: int, hi=None) -> "SetSpec":
        if lo < 0 or (hi is not None and hi < lo):
            raise ValueError(f"bad interval [{lo}, {hi}]")
        return cls("interval", (lo, hi))

    @classmethod
    def progression(cls, first: int, modulus: int, exclude_zero=False) -> "SetSpec":
        if modulus < 1 or first < 0:
            raise ValueError(f"bad progression {first} mod {modulus}")
        return cls("progression", (first, modulus, bool(exclude_zero)))

    @classmethod
    def union(cls, parts) -> "SetSpec":
        return cls("union", tuple(parts))

    @classmethod
    def odd(cls) -> "SetSpec":
        return cls.progression(1, 2)

    def __contains__(self, n: int) -> bool:
        if not isinstance(n, int) or n < 0:
            return False
        kind, data = self.kind, self.data
        if kind == "finite":
            return n in data
        if kind == "interval":
            lo, hi = data
            return lo <= n and (hi is None or n <= hi)
        if kind == "progression":
            first, mod, exclude_zero = data
            if exclude_zero and n == 0:
                return False
            return n >= first and (n - first) % mod == 0
        return any(n in part for part in data)

    def members_upto(self, bound: int) -> list:
        """Sorted members <= bound."""
        if bound < 0:
            return []
        kind, data = self.kind, self.data
        if kind == "finite":
            return [v for v in data if v <= bound]
        if kind == "interval":
            lo, hi = data
            top = bound if hi is None else min(hi, bound)
            return list(range(lo, top + 1))
        if kind == "progression":
            first, mod, exclude_zero = data
            vals = list(range(first, bound + 1, mod))
            if exclude_zero and vals and vals[0] == 0:
                vals.pop(0)
            return vals
        merged = set()
        for part in data:
            merged.update(part.members_upto(bound))
        return sorted(merged)

    def min_member(self):
        kind, data = self.kind, self.data
        if kind == "finite":
            return data[0] if data else None
        if kind == "interval":
            return data[0]
        if kind == "progression":
            first, mod, exclude_zero = data
            return first + mod if exclude_zero and first == 0 else first
        mins = [m for m in (p.min_member() for p in data) if m is not None]
        return min(mins) if mins else None

    def __str__(self) -> str:
        kind, data = self.kind, self.data
        if kind == "finite":
            return "{" + ",".join(map(str, data)) + "}"
        if kind == "interval":
            lo, hi = data
            return f"{lo}.." if hi is None else f"{lo}..{hi}"
        if kind == "progression":
            first, mod, exclude_zero = data
            s = f"{first} mod {mod}"
            return s + ", no-zero" if exclude_zero else s
        return " | ".join(str(p) for p in data)

    @classmethod
    def parse(cls, text: str) -> "SetSpec":
        """CLI syntax: "odd", "m..", "m..n", "{a,b,c}", "l mod m",
        "l mod m, no-zero"."""
        text = text.strip()
        if text == "odd":
            return cls.odd()
        m = re.fullmatch(r"\{(\d+(?:\s*,\s*\d+)*)\}", text)
        if m:
            return cls.finite(int(v) for v in m.group(1).split(","))
        m = re.fullmatch(r"(\d+)\.\.(\d+)?", text)
        if m:
            hi = int(m.group(2)) if m.group(2) else None
            return cls.interval(int(m.group(1)), hi)
        m = re.fullmatch(r"(\d+)\s+mod\s+(\d+)(\s*,\s*no-zero)?", text)
        if m:
            return cls.progression(int(m.group(1)), int(m.group(2)), bool(m.group(3)))
        raise ValueError(f"cannot parse set spec {text!r}")


# -- enumeration core ---------------------------------------------------------


def _chain_series(window: Window, firsts, allowed_next) -> Series:
    """1 + all words w_1...w_l (l <= max_len) with w_1 in firsts and every
    next letter drawn from allowed_next[previous letter]."""
    max_len = window.max_len
    terms = {(): 1}

    def extend(word, last):
        if len(word) == max_len:
            return
        for b in allowed_next[last]:
            w2 = word + (b,)
            terms[w2] = 1
            extend(w2, b)

    for a in firsts:
        w = (a,)
        terms[w] = 1
        extend(w, a)
    return Series._raw(terms, window)


def _adjacency_table(window: Window, next_letters) -> list:
    """allowed_next[a] for a in 0..max_letter, via a per-letter callback."""
    top = window.max_letter
    table = [()] * (top + 1)
    for a in range(1, top + 1):
        table[a] = tuple(next_letters(a))
    return table


# -- named families -----------------------------------------------------------


def sigma(s: SetSpec, window: Window) -> Series:
    """The single-letter series over the members of s (no constant term)."""
    terms = {
        (k,): 1
        for k in s.members_upto(window.max_letter)
        if k >= window.min_letter
    }
    return Series._raw(terms, window)


def compositions(window: Window) -> Series:
    """All words with parts >= 1 (the star of the positive letters)."""
    top = window.max_letter
    everything = tuple(range(1, top + 1))
    table = [everything] * (top + 1)
    return _chain_series(window, everything, table)


def compositions_plus(window: Window) -> Series:
    """Nonempty compositions: compositions minus the unit."""
    c = compositions(window)
    terms = dict(c.terms)
    terms.pop((), None)
    return Series._raw(terms, window)


def partitions_max_part(m, window: Window) -> Series:
    """Partitions in weakly decreasing order with parts in [1, m]
    (m = None for parts of any size; letters above the window fall away)."""
    top = window.max_letter if m is None else min(m, window.max_letter)
    if m is not None and m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    table = _adjacency_table(window, lambda a: range(1, min(a, top) + 1))
    return _chain_series(window, range(1, top + 1), table)


def distinct_partitions_max_part(m, window: Window) -> Series:
    """Strictly increasing words with parts in [1, m] (m = None for any size)."""
    top = window.max_letter if m is None else min(m, window.max_letter)
    if m is not None and m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    table = _adjacency_table(window, lambda a: range(a + 1, top + 1))
    return _chain_series(window, range(1, top + 1), table)


def m_distinct_partitions(m: int, window: Window) -> Series:
    """Increasing partitions with consecutive gaps >= m (m = 0 allows repeats)."""
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    top = window.max_letter
    table = _adjacency_table(window, lambda a: range(a + m, top + 1))
    return _chain_series(window, range(1, top + 1), table)


def partitions_with_rises(s: SetSpec, window: Window) -> Series:
    """Increasing partitions whose consecutive rises all lie in s."""
    top = window.max_letter
    table = _adjacency_table(
        window, lambda a: (a + r for r in s.members_upto(top - a))
    )
    return _chain_series(window, range(1, top + 1), table)


def compositions_bounded_diff(m: int, window: Window) -> Series:
    """Compositions whose contiguous differences are all <= m."""
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    top = window.max_letter
    table = _adjacency_table(window, lambda a: range(1, min(a + m, top) + 1))
    return _chain_series(window, range(1, top + 1), table)


def compositions_diff_in_complement(s: SetSpec, window: Window) -> Series:
    """Compositions whose contiguous differences avoid s (complement taken in
    the integers, so negative differences are always allowed unless in s)."""
    top = window.max_letter
    table = _adjacency_table(
        window, lambda a: (b for b in range(1, top + 1) if (b - a) not in s)
    )
    return _chain_series(window, range(1, top + 1), table)


def carlitz_compositions(window: Window) -> Series:
    """Compositions with no two equal adjacent parts."""
    top = window.max_letter
    table = _adjacency_table(
        window, lambda a: (b for b in range(1, top + 1) if b != a)
    )
    return _chain_series(window, range(1, top + 1), table)


# -- linked languages ---------------------------------------------------------


class LinkedLanguage:
    """A language 1 + Sigma_W + L_B for a link set B, realized on a window.

    ``link(i, j)`` decides membership of (i, j) in B.  The alphabet W is
    restricted to the positive naturals.
    """

    def __init__(self, w_set: SetSpec, link, window: Window):
        if 0 in w_set:
            raise ValueError("linked languages use alphabets W inside the positive naturals")
        self.w_set = w_set
        self.link = link
        self.window = window
        letters = w_set.members_upto(window.max_letter)
        table = [()] * (window.max_letter + 1)
        for a in letters:
            table[a] = tuple(b for b in letters if link(a, b))
        self.series = _chain_series(window, letters, table)

    def dual(self) -> "LinkedLanguage":
        """The linked language over the complementary link set."""
        link = self.link
        return LinkedLanguage(self.w_set, lambda a, b: not link(a, b), self.window)


def linked_m_distinct(m: int, window: Window) -> LinkedLanguage:
    return LinkedLanguage(SetSpec.interval(1), lambda a, b: b - a >= m, window)


def linked_bounded_diff(m: int, window: Window) -> LinkedLanguage:
    return LinkedLanguage(SetSpec.interval(1), lambda a, b: b - a <= m, window)


def linked_rises(s: SetSpec, window: Window) -> LinkedLanguage:
    return LinkedLanguage(SetSpec.interval(1), lambda a, b: (b - a) in s, window)


def linked_diff_complement(s: SetSpec, window: Window) -> LinkedLanguage:
    return LinkedLanguage(SetSpec.interval(1), lambda a, b: (b - a) not in s, window)


def linked_repeats(window: Window) -> LinkedLanguage:
    """Words repeating one letter (links i = j); its K-dual is Carlitz."""
    return LinkedLanguage(SetSpec.interval(1), lambda a, b: a == b, window)


def linked_carlitz(window: Window) -> LinkedLanguage:
    return LinkedLanguage(SetSpec.interval(1), lambda a, b: a != b, window)


def graded_gf(lang: LinkedLanguage) -> Series:
    """Sign-by-length generating function of the realized language."""
    return lang.series.sign_flip()


def k_dual(lang: LinkedLanguage) -> Series:
    """The K-dual language, computed as the inverse of the graded generating
    function; every coefficient of the result must come out 0 or 1."""
    inv = graded_gf(lang).inverse()
    for w, c in inv.terms.items():
        if c != 1:
            raise NotLinkedError(
                f"K-dual has coefficient {c} at word {w}; input is not a linked language"
            )
    return inv


# -- dispatcher ---------------------------------------------------------------

LANGUAGE_KINDS = (
    "sigma",
    "compositions",
    "pi",
    "pi-inf",
    "pi-upper",
    "pi-upper-inf",
    "p-m",
    "p-s",
    "c-m",
    "c-shat",
    "carlitz",
)


def build_language(kind: str, params: dict, window: Window) -> Series:
    """Build a named family; params carry "m" or "set" as the kind requires."""
    if kind == "sigma":
        return sigma(params["set"], window)
    if kind == "compositions":
        return compositions(window)
    if kind == "pi":
        return partitions_max_part(params["m"], window)
    if kind == "pi-inf":
        return partitions_max_part(None, window)
    if kind == "pi-upper":
        return distinct_partitions_max_part(params["m"], window)
    if kind == "pi-upper-inf":
        return distinct_partitions_max_part(None, window)
    if kind == "p-m":
        return m_distinct_partitions(params["m"], window)
    if kind == "p-s":
        return partitions_with_rises(params["set"], window)
    if kind == "c-m":
        return compositions_bounded_diff(params["m"], window)
    if kind == "c-shat":
        return compositions_diff_in_complement(params["set"], window)
    if kind == "carlitz":
        return carlitz_compositions(window)
    raise ValueError(f"unknown language kind {kind!r}")
