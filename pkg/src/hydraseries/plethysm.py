"""Shift-plethystic substitution, the implicit-equation fixed-point solver,
and plethystic inversion.

The substitution R o_s S replaces each letter X_k of R's words by the shifted
series sigma^k S and multiplies left to right.  It is evaluated here over a
hash-consed suffix DAG of R's support: words sharing a tail share one
evaluation, which collapses the composition-shaped languages of this package
from hundreds of thousands of words to a handful of distinct suffix classes.

Window certification: with R exact on (L_R, K_R, floor O_R) and S exact on
(L_S, K_S, O_S), the result is exact on L = min(L_R, L_S) and
K = min(K_R + O_S, K_S + O_R) with floor O_R + O_S.  Letters of R above
K - O_S cannot touch the result window and are skipped; the operation refuses
to emit anything it cannot certify.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffs import TPoly
from .series import Series, Window, WindowError

X_FAM = 0
Y_FAM = 1


class SolverError(Exception):
    """The fixed-point check after the stabilization bound failed.

    This signals an internal window-arithmetic bug, never an expected
    condition on valid inputs.
    """


# -- suffix DAG ---------------------------------------------------------------


def _suffix_dag(terms):
    """Hash-consed suffix DAG of a term map.

    Returns (nodes, root) with nodes[i] = (const, ((letter, child_index), ...))
    in a topological order (children precede parents).  Node i represents the
    series  const * 1 + sum_letter  atom(letter) * node(child) over its own
    suffix set.
    """
    words = sorted(terms)
    nodes = []
    cons = {}

    def build(lo, hi, depth):
        const = 0
        if lo < hi and len(words[lo]) == depth:
            const = terms[words[lo]]
            lo += 1
        children = []
        i = lo
        while i < hi:
            k = words[i][depth]
            j = i + 1
            while j < hi and words[j][depth] == k:
                j += 1
            children.append((k, build(i, j, depth + 1)))
            i = j
        key = (const, tuple(children))
        idx = cons.get(key)
        if idx is None:
            idx = len(nodes)
            nodes.append(key)
            cons[key] = idx
        return idx

    root = build(0, len(words), 0)
    return nodes, root


def _group(items, max_len):
    """Length-grouped (word, coeff) lists, zeros dropped."""
    rows = [[] for _ in range(max_len + 1)]
    for w, c in items:
        if c:
            rows[len(w)].append((w, c))
    return rows


def _mul_rows(a_rows, b_rows, max_len):
    """Product of two length-graded series: a_rows as lists of (word, coeff),
    b_rows as dicts, producing dicts; words longer than max_len are dropped."""
    out = [{} for _ in range(max_len + 1)]
    for la, arow in enumerate(a_rows):
        if not arow:
            continue
        for lb in range(max_len - la + 1):
            brow = b_rows[lb]
            if not brow:
                continue
            dest = out[la + lb]
            get = dest.get
            for wa, ca in arow:
                for wb, cb in brow.items():
                    w = wa + wb
                    c = ca * cb
                    cur = get(w)
                    if cur is None:
                        dest[w] = c
                    else:
                        dest[w] = cur + c
    return out


def _sum_atoms(atom_rows_list, max_len):
    """Coefficient-wise sum of length-grouped atom lists."""
    if len(atom_rows_list) == 1:
        return atom_rows_list[0]
    rows = [{} for _ in range(max_len + 1)]
    for atom_rows in atom_rows_list:
        for length, row in enumerate(atom_rows):
            dest = rows[length]
            get = dest.get
            for w, c in row:
                cur = get(w)
                if cur is None:
                    dest[w] = c
                else:
                    dest[w] = cur + c
    return [
        [(w, c) for w, c in row.items() if c] for row in rows
    ]


def _eval_dag(nodes, root, atom, max_len):
    """Evaluate a suffix DAG bottom-up; atom(letter) yields the length-grouped
    term lists of the series substituted for that letter.  Returns the root's
    term dict.

    Sibling edges into the same child first have their atoms summed, so one
    product serves the whole group; for the dense composition-shaped languages
    every letter leads to the same child and the summed shifts telescope to a
    handful of terms.  Products are cached across parents sharing an edge
    group, and both caches are reference counted and freed once the last
    parent has consumed them.
    """
    groups = []  # per node: ((letters, child), ...) with letters sorted
    node_refs = [0] * len(nodes)
    group_refs = {}
    node_refs[root] += 1
    for _, children in nodes:
        by_child = {}
        for letter, child in children:
            by_child.setdefault(child, []).append(letter)
        node_groups = tuple(
            (tuple(letters), child) for child, letters in by_child.items()
        )
        groups.append(node_groups)
        for key in node_groups:
            node_refs[key[1]] += 1
            group_refs[key] = group_refs.get(key, 0) + 1

    values = [None] * len(nodes)
    prod_cache = {}
    atom_sum_cache = {}
    for idx, (const, _) in enumerate(nodes):
        out = [{} for _ in range(max_len + 1)]
        if const:
            out[0][()] = const
        for key in groups[idx]:
            letters, child = key
            prod = prod_cache.get(key)
            if prod is None:
                asum = atom_sum_cache.get(letters)
                if asum is None:
                    asum = _sum_atoms([atom(a) for a in letters], max_len)
                    atom_sum_cache[letters] = asum
                prod = _mul_rows(asum, values[child], max_len)
                if group_refs[key] > 1:
                    prod_cache[key] = prod
            group_refs[key] -= 1
            still_shared = group_refs[key] > 0
            if not still_shared:
                prod_cache.pop(key, None)
            node_refs[child] -= 1
            if node_refs[child] == 0:
                values[child] = None
            for length in range(max_len + 1):
                row = prod[length]
                if not row:
                    continue
                dest = out[length]
                if dest:
                    get = dest.get
                    for w, c in row.items():
                        cur = get(w)
                        if cur is None:
                            dest[w] = c
                        else:
                            dest[w] = cur + c
                else:
                    out[length] = dict(row) if still_shared else row
        values[idx] = out
    result = {}
    for row in values[root]:
        for w, c in row.items():
            if c:
                result[w] = c
    return result


# -- shift-plethysm -----------------------------------------------------------


def word_plethysm(word, s: Series) -> Series:
    """Substitute sigma^{k_i} s for each letter of the word and multiply.

    The empty word maps to 1.  Requires <s, 1> = 0, otherwise the defining sum
    of the plethysm would be infinite.
    """
    if s.constant_term():
        raise ValueError("plethysm undefined: substituted series has a constant term")
    result = Series.one(s.window)
    for k in word:
        result = result * s.shift(k)
    return result


def plethysm(r: Series, s: Series) -> Series:
    """Shift-plethysm r o_s s = sum_w <r, X_w> (sigma^{w_1} s)...(sigma^{w_l} s),
    exact on the largest window certified by the input windows."""
    if s.constant_term():
        raise ValueError("plethysm undefined: substituted series has a constant term")
    wr, ws = r.window, s.window
    max_len = min(wr.max_len, ws.max_len)
    max_letter = min(wr.max_letter + ws.min_letter, ws.max_letter + wr.min_letter)
    floor = wr.min_letter + ws.min_letter
    if max_letter < floor:
        raise WindowError("input windows certify no nonempty output window")
    window = Window(max_len, max_letter, floor)
    kmax = max_letter - ws.min_letter
    filtered = {
        w: c
        for w, c in r.terms.items()
        if len(w) <= max_len and (not w or max(w) <= kmax)
    }
    nodes, root = _suffix_dag(filtered)

    # bucket the substituted series by max letter so that building sigma^k s
    # only walks the words that survive the letter ceiling after shifting;
    # the most negative outer letter needs the largest original maxima
    base = ws.min_letter
    top = min(ws.max_letter, max_letter - wr.min_letter) - base
    buckets = [[] for _ in range(top + 1)]
    for w, c in s.terms.items():
        if len(w) > max_len:
            continue
        m = max(w) - base
        if m <= top:
            buckets[m].append((w, c))
    shift_cache = {}

    def atom(k):
        rows = shift_cache.get(k)
        if rows is None:
            items = []
            for bucket in buckets[: max_letter - k - base + 1]:
                for w, c in bucket:
                    items.append((tuple(a + k for a in w), c))
            rows = _group(items, max_len)
            shift_cache[k] = rows
        return rows

    result = _eval_dag(nodes, root, atom, max_len)
    return Series._raw({w: c for w, c in result.items() if c}, window)


def series_order(r: Series) -> int:
    """Least letter occurring in the (windowed) support; undefined for constants."""
    best = None
    for w in r.terms:
        if w:
            m = min(w)
            if best is None or m < best:
                best = m
    if best is None:
        raise ValueError("order undefined for a constant series")
    return best


# -- implicit equations -------------------------------------------------------


class BiSeries:
    """Series over the doubled alphabet {X_k} u {Y_k}, used as the right-hand
    side F(X; Y) of an implicit equation.  Letters are (family, index) pairs
    with family 0 for X and 1 for Y; the window bounds apply to both families.
    """

    __slots__ = ("terms", "window")

    def __init__(self, terms, window: Window):
        pruned = {}
        for w, c in terms.items():
            if not c:
                continue
            w = tuple(w)
            if len(w) > window.max_len:
                raise WindowError(f"word of length {len(w)} violates window {window}")
            for fam, k in w:
                if fam not in (X_FAM, Y_FAM):
                    raise ValueError(f"bad letter family {fam}")
                if not window.min_letter <= k <= window.max_letter:
                    raise WindowError(f"letter index {k} outside window {window}")
            pruned[w] = c
        self.terms = pruned
        self.window = window

    @classmethod
    def zero(cls, window):
        return cls({}, window)

    @classmethod
    def one(cls, window):
        return cls({(): 1}, window)

    @classmethod
    def x_letter(cls, k, window):
        return cls({((X_FAM, k),): 1}, window)

    @classmethod
    def y_letter(cls, k, window):
        return cls({((Y_FAM, k),): 1}, window)

    @classmethod
    def from_series(cls, s: Series, family: int) -> "BiSeries":
        terms = {tuple((family, k) for k in w): c for w, c in s.terms.items()}
        return cls(terms, s.window)

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        win = self.window.combine(other.window)
        out = dict(self._clip(win))
        for w, c in other._clip(win):
            cur = out.get(w)
            out[w] = c if cur is None else cur + c
        return BiSeries({w: c for w, c in out.items() if c}, win)

    def __neg__(self):
        out = BiSeries.zero(self.window)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return BiSeries({w: c * v for w, v in self.terms.items()}, self.window)

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        win = self.window.combine(other.window)
        L = win.max_len
        out = {}
        for wa, ca in self._clip(win):
            for wb, cb in other._clip(win):
                if len(wa) + len(wb) > L:
                    continue
                w = wa + wb
                c = ca * cb
                cur = out.get(w)
                out[w] = c if cur is None else cur + c
        return BiSeries({w: c for w, c in out.items() if c}, win)

    def _clip(self, win):
        for w, c in self.terms.items():
            if len(w) <= win.max_len and all(
                win.min_letter <= k <= win.max_letter for _, k in w
            ):
                yield w, c


def solve_implicit(f: BiSeries, window: Window) -> Series:
    """Unique solution G of G = F(X; G, sigma G, sigma^2 G, ...) on the window.

    Requires <F, 1> = 0 and <F, Y_0> = 0.  Iterates G <- F(X; G) from G = 0
    for K + L steps; by the stabilization bound every coefficient of a word
    with letters <= K and length <= L has settled by then.  One extra
    application is compared against the result as a fixed-point check.
    """
    if window.min_letter != 0:
        raise ValueError("implicit equations are solved on windows with floor 0")
    if f.terms.get((), 0):
        raise ValueError("implicit equation needs <F, 1> = 0")
    if f.terms.get(((Y_FAM, 0),), 0):
        raise ValueError("implicit equation needs <F, Y_0> = 0")
    max_len, max_letter = window.max_len, window.max_letter
    filtered = {
        w: c
        for w, c in f.terms.items()
        if len(w) <= max_len and all(k <= max_letter for _, k in w)
    }
    nodes, root = _suffix_dag(filtered)
    g = Series.zero(window)
    for step in range(1, max_letter + max_len + 1):
        g = _substitute(nodes, root, g, window, stable_upto=step)
    final = _substitute(nodes, root, g, window)
    witness = final.first_discrepancy(g)
    if witness is not None:
        raise SolverError(
            f"iterates at the stabilization bound disagree at word {witness}"
        )
    return g


def _substitute(nodes, root, g: Series, window: Window, stable_upto=None) -> Series:
    """One application G -> F(X; G) on the window.

    With ``stable_upto = n`` the result is restricted to the words whose
    coefficient the iteration has already pinned down, those with
    max letter + length <= n.  Every subtree word read by the substitution has
    a strictly smaller such index, so iterating with this restriction yields
    the exact solution on the index-n region while keeping each iterate inside
    the true solution's support instead of carrying unstabilized junk.
    """
    max_len, max_letter = window.max_len, window.max_letter
    shift_cache = {}

    def atom(letter):
        fam, k = letter
        if fam == X_FAM:
            return _group([((k,), 1)], max_len)
        rows = shift_cache.get(k)
        if rows is None:
            items = []
            for w, c in g.terms.items():
                sw = tuple(a + k for a in w)
                if max(sw) > max_letter:
                    continue
                items.append((sw, c))
            rows = _group(items, max_len)
            shift_cache[k] = rows
        return rows

    result = _eval_dag(nodes, root, atom, max_len)
    if stable_upto is None:
        terms = {w: c for w, c in result.items() if c}
    else:
        terms = {
            w: c
            for w, c in result.items()
            if c and max(w) + len(w) <= stable_upto
        }
    return Series._raw(terms, window)


# -- plethystic inversion -----------------------------------------------------


def plethystic_inverse(r: Series) -> Series:
    """The series G with r o_s G = X_0 = G o_s r on the certified window.

    Defined when <r, 1> = 0 and the coefficient alpha of X_n is nonzero, where
    n is the order of r.  For n = 0 the inverse solves the implicit equation
    G = (1/alpha)(X_0 - r+ o_s G) with r+ = r - alpha X_0; for n != 0 the
    order-0 series sigma^{-n} r is inverted and the result shifted back down,
    which lands in the negative-letter fragment when n > 0.
    """
    if r.constant_term():
        raise ValueError("not plethystically invertible: nonzero constant term")
    n = series_order(r)
    alpha = r.terms.get((n,), 0)
    if not alpha:
        raise ValueError(
            f"not plethystically invertible: zero coefficient at X_{n}"
        )
    if isinstance(alpha, TPoly):
        raise ValueError("leading plethysm coefficient must be a nonzero rational")
    win = r.window
    k_shifted = win.max_letter - n
    if k_shifted < 0:
        raise WindowError("window too small to invert at this order")
    q_window = Window(win.max_len, k_shifted, 0)
    # every support word of r has all letters >= n, so sigma^{-n} r lives at floor 0
    q_terms = {tuple(a - n for a in w): c for w, c in r.terms.items()}

    if alpha == 1:
        inv_alpha = 1
    elif alpha == -1:
        inv_alpha = -1
    else:
        inv_alpha = Fraction(1, 1) / alpha

    f_terms = {((X_FAM, 0),): inv_alpha}
    for w, c in q_terms.items():
        if w == (0,):
            continue
        if len(w) > q_window.max_len or max(w) > q_window.max_letter:
            continue
        f_terms[tuple((Y_FAM, k) for k in w)] = -inv_alpha * c
    q_inv = solve_implicit(BiSeries(f_terms, q_window), q_window)
    return q_inv.shift(-n)
