"""Truncated noncommutative formal power series over the integer-indexed
letter alphabet, with windowed-exactness bookkeeping.

A word is a tuple of integer letters; the empty tuple is the unit word.  A
:class:`Series` stores a finitely supported word -> coefficient map together
with a :class:`Window` stating where the stored values are exact:

* every word of length <= ``max_len`` whose letters all lie in
  ``[min_letter, max_letter]`` has its exact coefficient stored (zeros are
  never stored), and

* the underlying untruncated series is supported on words whose letters are
  all >= ``min_letter``, so a coefficient query below the floor is exactly 0.

Truncating by (length, letter range) rather than by weight makes product and
shift window arithmetic exact: concatenation adds lengths and never creates
letters outside the union of the factors' letters.

All values are immutable after construction and every operation is a pure
function of its inputs, so values may be freely shared across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import TPoly, coeff_from_json, coeff_to_json


class WindowError(Exception):
    """A coefficient or operation was requested outside the certified window."""


@dataclass(frozen=True)
class Window:
    """Exactness region: word length <= max_len, letters in [min_letter, max_letter]."""

    max_len: int
    max_letter: int
    min_letter: int = 0

    def __post_init__(self):
        if self.max_len < 1:
            raise ValueError(f"max_len must be >= 1, got {self.max_len}")
        if self.min_letter > self.max_letter:
            raise ValueError(
                f"empty letter range [{self.min_letter}, {self.max_letter}]"
            )

    def combine(self, other: "Window") -> "Window":
        """Window on which values derived from both operands stay exact.

        Lengths and letter ceilings intersect; floors take the min because a
        word below one operand's floor still has a known (zero) coefficient
        there.
        """
        return Window(
            min(self.max_len, other.max_len),
            min(self.max_letter, other.max_letter),
            min(self.min_letter, other.min_letter),
        )

    def shifted(self, n: int) -> "Window":
        return Window(self.max_len, self.max_letter + n, self.min_letter + n)

    def admits(self, word) -> bool:
        """True if the word lies in the stored region."""
        if len(word) > self.max_len:
            return False
        lo, hi = self.min_letter, self.max_letter
        return all(lo <= a <= hi for a in word)


def word_stats(word):
    """(weight, length, order) of a word; order is None for the empty word."""
    w = tuple(word)
    return (sum(w), len(w), min(w) if w else None)


class Series:
    """Finitely supported map word -> coefficient, exact on its window."""

    __slots__ = ("terms", "window")

    def __init__(self, terms, window: Window):
        pruned = {}
        for w, c in terms.items():
            if not c:
                continue
            w = tuple(w)
            if not window.admits(w):
                raise WindowError(f"word {w} violates window {window}")
            pruned[w] = c
        self.terms = pruned
        self.window = window

    @classmethod
    def _raw(cls, terms: dict, window: Window) -> "Series":
        # internal fast path: caller guarantees pruned, in-window terms
        self = object.__new__(cls)
        self.terms = terms
        self.window = window
        return self

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, window: Window) -> "Series":
        return cls._raw({}, window)

    @classmethod
    def one(cls, window: Window) -> "Series":
        return cls._raw({(): 1}, window)

    @classmethod
    def letter(cls, k: int, window: Window) -> "Series":
        if not window.admits((k,)):
            raise WindowError(f"letter {k} outside window {window}")
        return cls._raw({(k,): 1}, window)

    @classmethod
    def scalar(cls, c, window: Window) -> "Series":
        return cls._raw({(): c} if c else {}, window)

    # -- queries -----------------------------------------------------------

    def coefficient(self, word):
        """Exact coefficient of the word; below-floor words are exactly 0.

        Raises WindowError when the word escapes the certified region, i.e.
        the query cannot be answered exactly.
        """
        w = tuple(word)
        win = self.window
        if any(a < win.min_letter for a in w):
            return 0
        if len(w) > win.max_len or any(a > win.max_letter for a in w):
            raise WindowError(f"word {w} outside window {win}")
        return self.terms.get(w, 0)

    def constant_term(self):
        return self.terms.get((), 0)

    def support(self):
        return self.terms.keys()

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        n = len(self.terms)
        win = self.window
        head = ", ".join(
            f"{c}*X{list(w)}" for w, c in sorted(self.terms.items())[:4]
        )
        if n > 4:
            head += ", ..."
        return f"<Series {n} terms on (L={win.max_len}, K={win.max_letter}, O={win.min_letter}): {head}>"

    def _by_length(self, max_len, max_letter):
        """Term lists grouped by word length, restricted to the given bounds."""
        rows = [[] for _ in range(max_len + 1)]
        need_letter = self.window.max_letter > max_letter
        need_len = self.window.max_len > max_len
        for w, c in self.terms.items():
            if need_len and len(w) > max_len:
                continue
            if need_letter and w and max(w) > max_letter:
                continue
            rows[len(w)].append((w, c))
        return rows

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return series_linear([(1, self), (1, other)])

    def __sub__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return series_linear([(1, self), (-1, other)])

    def __neg__(self):
        return Series._raw({w: -c for w, c in self.terms.items()}, self.window)

    def scale(self, c) -> "Series":
        if not c:
            return Series.zero(self.window)
        out = {}
        for w, v in self.terms.items():
            cv = c * v
            if cv:
                out[w] = cv
        return Series._raw(out, self.window)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        win = self.window.combine(other.window)
        L, K = win.max_len, win.max_letter
        rows_b = other._by_length(L, K)
        out = {}
        get = out.get
        need_letter = self.window.max_letter > K
        for wa, ca in self.terms.items():
            la = len(wa)
            if la > L:
                continue
            if need_letter and wa and max(wa) > K:
                continue
            for lb in range(L - la + 1):
                row = rows_b[lb]
                if not row:
                    continue
                for wb, cb in row:
                    w = wa + wb
                    c = ca * cb
                    cur = get(w)
                    if cur is None:
                        out[w] = c
                    else:
                        out[w] = cur + c
        return Series._raw({w: c for w, c in out.items() if c}, win)

    def inverse(self) -> "Series":
        """Multiplicative inverse (1/alpha) * sum_n (1 - R/alpha)^n on the window.

        Requires a nonzero rational constant term alpha.  Computed by the
        equivalent length-graded recurrence <X, w> = -(1/alpha) *
        sum_{u v = w, v nonempty} <X, u><R, v>, which touches only the words
        that actually lie in the inverse's support.
        """
        alpha = self.constant_term()
        if not alpha:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        if isinstance(alpha, TPoly):
            raise ZeroDivisionError("constant term must be a nonzero rational")
        if alpha == 1:
            inv_alpha = 1
        elif alpha == -1:
            inv_alpha = -1
        else:
            inv_alpha = Fraction(1, 1) / alpha
        win = self.window
        L = win.max_len
        rows_r = self._by_length(L, win.max_letter)
        rows_x = [[((), inv_alpha)]]
        out = {(): inv_alpha}
        for length in range(1, L + 1):
            acc = {}
            get = acc.get
            for j in range(length):
                xs = rows_x[j]
                rs = rows_r[length - j]
                if not xs or not rs:
                    continue
                for wx, cx in xs:
                    for wr, cr in rs:
                        w = wx + wr
                        c = cx * cr
                        cur = get(w)
                        if cur is None:
                            acc[w] = c
                        else:
                            acc[w] = cur + c
            row = []
            if inv_alpha == 1:
                for w, c in acc.items():
                    if c:
                        c = -c
                        row.append((w, c))
                        out[w] = c
            else:
                for w, c in acc.items():
                    c = -inv_alpha * c if inv_alpha != -1 else c
                    if c:
                        row.append((w, c))
                        out[w] = c
            rows_x.append(row)
        return Series._raw(out, win)

    def shift(self, n: int) -> "Series":
        """Letter reindexing X_i -> X_{i+n}; window moves with the letters."""
        if n == 0:
            return self
        out = {}
        for w, c in self.terms.items():
            out[tuple(a + n for a in w)] = c
        return Series._raw(out, self.window.shifted(n))

    def sign_flip(self) -> "Series":
        """The substitution X_i -> -X_i: scales each word by (-1)^length."""
        out = {}
        for w, c in self.terms.items():
            out[w] = -c if len(w) % 2 else c
        return Series._raw(out, self.window)

    # -- comparison ----------------------------------------------------------

    def first_discrepancy(self, other: "Series"):
        """Least word (lex order) inside the combined window where the two
        series differ, or None when they agree there."""
        win = self.window.combine(other.window)
        L, K = win.max_len, win.max_letter
        bad = []
        for w, c in self.terms.items():
            if len(w) <= L and (not w or max(w) <= K):
                if other.terms.get(w, 0) != c:
                    bad.append(w)
        for w, c in other.terms.items():
            if len(w) <= L and (not w or max(w) <= K):
                if w not in self.terms:
                    bad.append(w)
        return min(bad) if bad else None

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.first_discrepancy(other) is None

    __hash__ = None

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        win = self.window
        return {
            "window": {"L": win.max_len, "K": win.max_letter, "O": win.min_letter},
            "terms": [
                {"word": list(w), "coeff": coeff_to_json(c)}
                for w, c in sorted(self.terms.items())
            ],
        }

    def dumps(self) -> str:
        """Byte-stable JSON dump (terms sorted lexicographically by word)."""
        return json.dumps(self.to_json_dict(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json_dict(cls, obj) -> "Series":
        w = obj["window"]
        win = Window(w["L"], w["K"], w["O"])
        terms = {
            tuple(entry["word"]): coeff_from_json(entry["coeff"])
            for entry in obj["terms"]
        }
        return cls(terms, win)

    @classmethod
    def loads(cls, text: str) -> "Series":
        return cls.from_json_dict(json.loads(text))


def series_linear(items) -> Series:
    """Coefficient-wise linear combination sum_i scalar_i * R_i.

    The result window combines all input windows; an empty combination is an
    error because it has no window to live on.
    """
    items = list(items)
    if not items:
        raise ValueError("series_linear needs at least one (scalar, series) pair")
    win = items[0][1].window
    for _, s in items[1:]:
        win = win.combine(s.window)
    L, K = win.max_len, win.max_letter
    out = {}
    get = out.get
    for scalar, s in items:
        if not scalar:
            continue
        need_letter = s.window.max_letter > K
        need_len = s.window.max_len > L
        for w, c in s.terms.items():
            if need_len and len(w) > L:
                continue
            if need_letter and w and max(w) > K:
                continue
            c = c if scalar == 1 else scalar * c
            cur = get(w)
            if cur is None:
                out[w] = c
            else:
                out[w] = cur + c
    return Series._raw({w: c for w, c in out.items() if c}, win)


def series_mul(a: Series, b: Series) -> Series:
    return a * b


def series_inverse(a: Series) -> Series:
    return a.inverse()


def shift(a: Series, n: int) -> Series:
    return a.shift(n)


def sign_flip(a: Series) -> Series:
    return a.sign_flip()


def coefficient(a: Series, word):
    return a.coefficient(word)


def series_equal(a: Series, b: Series) -> bool:
    return a.first_discrepancy(b) is None


def geometric_inverse(b: Series) -> Series:
    """1/(1-B) for B with zero constant term (the Kleene-star of B)."""
    one = Series.one(b.window)
    return (one - b).inverse()
