"""Independent brute-force enumerators certifying the algebraic machinery.

Everything here recomputes counts from first principles: recursive
enumeration of compositions, partitions and valid colored trees, plus direct
scans for statistics.  No code is shared with the algebraic modules beyond
plain tuple words, so an agreement between the two sides is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_COMPOSITION_WEIGHT = 24  # enumeration cost 2^(n-1)
MAX_PARTITION_WEIGHT = 40


def enum_compositions(n: int, filt=None) -> list:
    """All compositions of n in lexicographic order, optionally filtered."""
    if not 1 <= n <= MAX_COMPOSITION_WEIGHT:
        raise ValueError(f"need 1 <= n <= {MAX_COMPOSITION_WEIGHT}, got {n}")
    result = []

    def lex(prefix, remaining):
        for a in range(1, remaining + 1):
            word = prefix + (a,)
            if a == remaining:
                if filt is None or filt(word):
                    result.append(word)
            else:
                lex(word, remaining - a)

    lex((), n)
    return result


def enum_partitions_with_rises(n: int, rise_set) -> list:
    """Partitions of n in increasing order with every rise in rise_set;
    the first part is only required to be >= 1."""
    if not 1 <= n <= MAX_PARTITION_WEIGHT:
        raise ValueError(f"need 1 <= n <= {MAX_PARTITION_WEIGHT}, got {n}")
    out = []

    def extend(word, total, last):
        if total == n:
            out.append(word)
            return
        for r in rise_set.members_upto(n - total - last):
            nxt = last + r
            extend(word + (nxt,), total + nxt, nxt)

    for a in range(1, n + 1):
        extend((a,), a, a)
    return out


def count_local_minima(word) -> int:
    """Number of running-minimum breakpoints: the first part starts a block,
    and every later part <= the current minimum starts the next one."""
    count = 0
    current = None
    for a in word:
        if current is None or a <= current:
            count += 1
            current = a
    return count


def count_weak_descents(word) -> int:
    """Positions i with word[i+1] <= word[i]."""
    return sum(1 for i in range(len(word) - 1) if word[i + 1] <= word[i])


# -- aggregated tables --------------------------------------------------------


@dataclass(frozen=True)
class CountTable:
    """Counts keyed by (weight, length, marker); deterministic enumeration
    order makes repeated builds byte-identical."""

    kind: str
    counts: dict

    def get(self, weight, length, marker=0) -> int:
        return self.counts.get((weight, length, marker), 0)

    def to_tsv(self) -> str:
        """Rows (z, t, q, coeff) = (length, marker, weight, count), mirroring
        the q-series table format so the two dumps diff directly."""
        lines = ["z\tt\tq\tcoeff"]
        rows = sorted(
            (length, marker, weight, c)
            for (weight, length, marker), c in self.counts.items()
        )
        for z, t, q, c in rows:
            lines.append(f"{z}\t{t}\t{q}\t{c}")
        return "\n".join(lines) + "\n"


def _carlitz_ok(word):
    return all(word[i] != word[i + 1] for i in range(len(word) - 1))


def count_table(kind: str, params: dict, nmax: int) -> CountTable:
    """Aggregate an enumerator into (weight, length, marker) -> count.

    kinds: compositions, carlitz, compositions-max-diff (m),
    compositions-diff-not-in (set), compositions-by-minima (marker = number
    of local minima), m-distinct (m), partitions-rises (set).
    """
    counts = {}

    def bump(word, marker=0):
        key = (sum(word), len(word), marker)
        counts[key] = counts.get(key, 0) + 1

    if kind in ("compositions", "carlitz", "compositions-max-diff",
                "compositions-diff-not-in", "compositions-by-minima"):
        if kind == "compositions-max-diff":
            m = params["m"]

            def filt(w):
                return all(w[i + 1] - w[i] <= m for i in range(len(w) - 1))

        elif kind == "compositions-diff-not-in":
            s = params["set"]

            def filt(w):
                return all((w[i + 1] - w[i]) not in s for i in range(len(w) - 1))

        elif kind == "carlitz":
            filt = _carlitz_ok
        else:
            filt = None
        for n in range(1, nmax + 1):
            for w in enum_compositions(n, filt):
                bump(w, count_local_minima(w) if kind == "compositions-by-minima" else 0)
    elif kind == "m-distinct":
        m = params["m"]

        class _RisesFrom:  # gaps >= m, kept free of the algebraic modules
            @staticmethod
            def members_upto(bound):
                return list(range(m, bound + 1))

        for n in range(1, nmax + 1):
            for w in enum_partitions_with_rises(n, _RisesFrom()):
                bump(w)
    elif kind == "partitions-rises":
        s = params["set"]
        for n in range(1, nmax + 1):
            for w in enum_partitions_with_rises(n, s):
                bump(w)
    else:
        raise ValueError(f"unknown count table kind {kind!r}")
    return CountTable(kind, counts)


# -- exhaustive valid-tree enumeration ------------------------------------------


def enum_tree_words(max_weight: int, max_jump=None) -> set:
    """Preorder words of every valid colored plane tree of weight <= max_weight.

    Valid: root color >= 1, children colors weakly decreasing left to right,
    and each child exceeds its parent by at least 1 and at most max_jump
    (None for unbounded).  Built directly from this recursive description,
    independently of the insertion algorithm.
    """
    tree_cache = {}
    forest_cache = {}

    def trees(root, budget):
        # all (word, weight) for trees rooted at color root, weight <= budget
        key = (root, budget)
        got = tree_cache.get(key)
        if got is None:
            lo = root + 1
            hi = budget - root if max_jump is None else min(root + max_jump, budget - root)
            got = [
                ((root,) + fw, root + fwt)
                for fw, fwt in forests(lo, hi, budget - root)
            ]
            tree_cache[key] = got
        return got

    def forests(lo, hi, budget):
        # sequences of trees with weakly decreasing root colors in [lo, hi]
        key = (lo, hi, budget)
        got = forest_cache.get(key)
        if got is None:
            got = [((), 0)]
            for c in range(lo, min(hi, budget) + 1):
                for tw, twt in trees(c, budget):
                    for fw, fwt in forests(lo, c, budget - twt):
                        got.append((tw + fw, twt + fwt))
            forest_cache[key] = got
        return got

    words = set()
    for root in range(1, max_weight + 1):
        for w, _ in trees(root, max_weight):
            words.add(w)
    return words
