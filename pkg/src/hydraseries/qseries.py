"""Umbral specialization X_k -> z q^k and the closed-form q-series evaluators.

A :class:`ZQSeries` is a truncated bivariate series: one Laurent polynomial in
q per z-degree 0..zmax, with coefficients that are exact rationals or
polynomials in the marker t.  Declared bounds (qmin, qmax) mean the support
has q-exponents >= qmin and the stored values are exact up to q-degree qmax.
All arithmetic is exact; division is performed by linear recurrence against
denominators with an invertible q-constant term, so no rational-function
representation is ever needed.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .coeffs import TPoly, coeff_to_json, t_coefficients
from .series import Series, WindowError


# -- q-row helpers (Laurent polynomials as {exponent: coeff} dicts) -----------


def row_mul(a: dict, b: dict, qmax: int, qmin=None) -> dict:
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            if e > qmax or (qmin is not None and e < qmin):
                continue
            cur = out.get(e)
            c = c1 * c2
            out[e] = c if cur is None else cur + c
    return {e: c for e, c in out.items() if c}


def row_scale(a: dict, c) -> dict:
    if not c:
        return {}
    return {e: c * v for e, v in a.items() if c * v}


def row_div(num: dict, den: dict, qmax: int) -> dict:
    """num / den as a truncated Laurent row; den needs an invertible constant
    term and no negative exponents (a q-power-series unit)."""
    unit = den.get(0, 0)
    if not unit or isinstance(unit, TPoly):
        raise ZeroDivisionError("denominator needs a nonzero rational q^0 term")
    if any(e < 0 for e in den):
        raise ZeroDivisionError("denominator must be a power series in q")
    if unit == 1:
        inv_unit = 1
    elif unit == -1:
        inv_unit = -1
    else:
        inv_unit = Fraction(1, 1) / unit
    tail = sorted((e, c) for e, c in den.items() if e > 0)
    emin = min(list(num) + [0])
    out = {}
    for e in range(emin, qmax + 1):
        v = num.get(e, 0)
        for d, c in tail:
            if d > e - emin:
                break
            prev = out.get(e - d)
            if prev is not None:
                v = v - c * prev
        if inv_unit != 1:
            v = inv_unit * v
        if v:
            out[e] = v
    return out


def pochhammer_row(base: int, step: int, n: int, qmax: int) -> dict:
    """(q^base; q^step)_n = prod_{i<n} (1 - q^{base + i step}), truncated."""
    out = {0: 1}
    for i in range(n):
        e = base + i * step
        if e > qmax:
            break  # remaining factors are 1 modulo the truncation
        out = row_mul(out, {0: 1, e: -1}, qmax)
    return out


def qq_pochhammer_row(n: int, qmax: int) -> dict:
    """(q; q)_n truncated at qmax."""
    return pochhammer_row(1, 1, n, qmax)


# -- the bivariate series ------------------------------------------------------


class ZQSeries:
    """Truncated (z, q)-series with exact coefficients in Q[t]."""

    __slots__ = ("zmax", "qmin", "qmax", "rows")

    def __init__(self, rows, zmax: int, qmin: int, qmax: int):
        if zmax < 0 or qmin > qmax:
            raise ValueError(f"bad bounds zmax={zmax}, q in [{qmin}, {qmax}]")
        clean = []
        for z in range(zmax + 1):
            row = rows[z] if z < len(rows) else {}
            pruned = {}
            for e, c in row.items():
                if not c:
                    continue
                if e < qmin or e > qmax:
                    raise ValueError(f"exponent q^{e} outside bounds [{qmin}, {qmax}]")
                pruned[e] = c
            clean.append(pruned)
        self.rows = tuple(clean)
        self.zmax = zmax
        self.qmin = qmin
        self.qmax = qmax

    @classmethod
    def _raw(cls, rows, zmax, qmin, qmax):
        self = object.__new__(cls)
        self.rows = tuple(rows)
        self.zmax = zmax
        self.qmin = qmin
        self.qmax = qmax
        return self

    @classmethod
    def zero(cls, zmax, qmin, qmax):
        return cls._raw([{} for _ in range(zmax + 1)], zmax, qmin, qmax)

    @classmethod
    def scalar(cls, c, zmax, qmin, qmax):
        rows = [{} for _ in range(zmax + 1)]
        if c:
            rows[0] = {0: c}
        return cls._raw(rows, zmax, qmin, qmax)

    @classmethod
    def monomial(cls, zdeg, qdeg, zmax, qmin, qmax, coeff=1):
        rows = [{} for _ in range(zmax + 1)]
        if zdeg <= zmax and qmin <= qdeg <= qmax and coeff:
            rows[zdeg] = {qdeg: coeff}
        return cls._raw(rows, zmax, qmin, qmax)

    # -- queries --------------------------------------------------------------

    def coefficient(self, zdeg: int, qdeg: int):
        """Coefficient of z^zdeg q^qdeg (an exact rational or a t-polynomial)."""
        if zdeg > self.zmax or qdeg > self.qmax:
            raise WindowError(f"(z^{zdeg}, q^{qdeg}) outside declared bounds")
        if zdeg < 0 or qdeg < self.qmin:
            return 0
        return self.rows[zdeg].get(qdeg, 0)

    def coefficient_t(self, zdeg: int, tdeg: int, qdeg: int):
        """Rational coefficient of z^zdeg t^tdeg q^qdeg."""
        c = self.coefficient(zdeg, qdeg)
        if isinstance(c, TPoly):
            return c.c[tdeg] if tdeg < len(c.c) else 0
        return c if tdeg == 0 else 0

    def __bool__(self):
        return any(self.rows)

    def __repr__(self):
        n = sum(len(r) for r in self.rows)
        return f"<ZQSeries {n} cells, z<={self.zmax}, q in [{self.qmin},{self.qmax}]>"

    # -- arithmetic -------------------------------------------------------------

    def _combine_bounds(self, other):
        return (
            min(self.zmax, other.zmax),
            min(self.qmin, other.qmin),
            min(self.qmax, other.qmax),
        )

    def __add__(self, other):
        if not isinstance(other, ZQSeries):
            return NotImplemented
        zmax, qmin, qmax = self._combine_bounds(other)
        rows = []
        for z in range(zmax + 1):
            row = {e: c for e, c in self.rows[z].items() if e <= qmax}
            for e, c in other.rows[z].items():
                if e > qmax:
                    continue
                cur = row.get(e)
                v = c if cur is None else cur + c
                if v:
                    row[e] = v
                elif cur is not None:
                    del row[e]
            rows.append(row)
        return ZQSeries._raw(rows, zmax, qmin, qmax)

    def __neg__(self):
        rows = [{e: -c for e, c in r.items()} for r in self.rows]
        return ZQSeries._raw(rows, self.zmax, self.qmin, self.qmax)

    def __sub__(self, other):
        if not isinstance(other, ZQSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        if not c:
            return ZQSeries.zero(self.zmax, self.qmin, self.qmax)
        rows = [row_scale(r, c) for r in self.rows]
        return ZQSeries._raw(rows, self.zmax, self.qmin, self.qmax)

    def __mul__(self, other):
        if not isinstance(other, ZQSeries):
            return NotImplemented
        zmax = min(self.zmax, other.zmax)
        qmin = self.qmin + other.qmin
        qmax = min(self.qmax + other.qmin, other.qmax + self.qmin)
        if qmax < qmin:
            raise WindowError("declared q-bounds certify no overlap")
        rows = []
        for z in range(zmax + 1):
            acc = {}
            for a in range(z + 1):
                ra, rb = self.rows[a], other.rows[z - a]
                if not ra or not rb:
                    continue
                for e1, c1 in ra.items():
                    for e2, c2 in rb.items():
                        e = e1 + e2
                        if e > qmax:
                            continue
                        cur = acc.get(e)
                        c = c1 * c2
                        acc[e] = c if cur is None else cur + c
            rows.append({e: c for e, c in acc.items() if c})
        return ZQSeries._raw(rows, zmax, qmin, qmax)

    def divide(self, other: "ZQSeries") -> "ZQSeries":
        """Exact truncated quotient; the divisor needs a z^0 part that is a
        q-power-series unit, and both operands must be free of negative
        q-exponents."""
        if self.qmin < 0 or other.qmin < 0:
            raise WindowError("division requires nonnegative q-valuations")
        zmax = min(self.zmax, other.zmax)
        qmax = min(self.qmax, other.qmax)
        den0 = other.rows[0]
        out_rows = []
        for z in range(zmax + 1):
            num = {e: c for e, c in self.rows[z].items() if e <= qmax}
            for a in range(1, z + 1):
                da = other.rows[a]
                if not da:
                    continue
                prev = out_rows[z - a]
                for e1, c1 in da.items():
                    for e2, c2 in prev.items():
                        e = e1 + e2
                        if e > qmax:
                            continue
                        cur = num.get(e)
                        c = c1 * c2
                        num[e] = -c if cur is None else cur - c
            out_rows.append(row_div(num, den0, qmax))
        return ZQSeries._raw(out_rows, zmax, 0, qmax)

    def reciprocal(self) -> "ZQSeries":
        """Multiplicative inverse: requires a nonzero rational z^0 q^0 term."""
        return ZQSeries.scalar(1, self.zmax, 0, self.qmax).divide(self)

    def subst_zq(self, n: int) -> "ZQSeries":
        """The substitution z -> z q^n (n >= 0): row k shifts by n*k in q."""
        if n < 0:
            raise ValueError("only nonnegative q-power substitutions are supported")
        rows = []
        for z, row in enumerate(self.rows):
            shifted = {}
            for e, c in row.items():
                e2 = e + n * z
                if e2 <= self.qmax:
                    shifted[e2] = c
            rows.append(shifted)
        return ZQSeries._raw(rows, self.zmax, self.qmin, self.qmax)

    def times_z(self) -> "ZQSeries":
        """Multiply by z, dropping the overflowing top row."""
        rows = [{}] + [dict(r) for r in self.rows[: self.zmax]]
        return ZQSeries._raw(rows, self.zmax, self.qmin, self.qmax)

    # -- comparison ---------------------------------------------------------------

    def first_discrepancy(self, other: "ZQSeries"):
        """Least (z, q) inside the common bounds where the two differ."""
        zmax = min(self.zmax, other.zmax)
        qmax = min(self.qmax, other.qmax)
        bad = []
        for z in range(zmax + 1):
            ra, rb = self.rows[z], other.rows[z]
            for e, c in ra.items():
                if e <= qmax and rb.get(e, 0) != c:
                    bad.append((z, e))
            for e in rb:
                if e <= qmax and e not in ra:
                    bad.append((z, e))
        return min(bad) if bad else None

    def __eq__(self, other):
        if not isinstance(other, ZQSeries):
            return NotImplemented
        return self.first_discrepancy(other) is None

    __hash__ = None

    # -- serialization ---------------------------------------------------------

    def cells(self):
        """(z, t, q, rational) rows in ascending (z, t, q) order."""
        out = []
        for z, row in enumerate(self.rows):
            by_t = {}
            for e, c in row.items():
                for t, v in enumerate(t_coefficients(c)):
                    if v:
                        by_t.setdefault(t, []).append((e, v))
            for t in sorted(by_t):
                for e, v in sorted(by_t[t]):
                    out.append((z, t, e, v))
        return out

    def to_tsv(self) -> str:
        lines = ["z\tt\tq\tcoeff"]
        for z, t, e, v in self.cells():
            lines.append(f"{z}\t{t}\t{e}\t{Fraction(v)}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "zmax": self.zmax,
            "qmin": self.qmin,
            "qmax": self.qmax,
            "terms": [
                {"z": z, "t": t, "q": e, "coeff": str(Fraction(v))}
                for z, t, e, v in self.cells()
            ],
        }


# -- umbral map -----------------------------------------------------------------


def certified_umbral_bounds(series: Series, zmax=None):
    """Largest (qmin, qmax) such that every word with that weight range,
    length <= zmax, and letters above the floor fits the window."""
    win = series.window
    z = win.max_len if zmax is None else min(zmax, win.max_len)
    floor = win.min_letter
    if floor >= 0:
        return z, 0, win.max_letter
    return z, floor * z, win.max_letter + floor * (z - 1)


def umbral(series: Series, zmax=None, qmin=None, qmax=None) -> ZQSeries:
    """Apply X_k -> z q^k: a word w contributes its coefficient (marker t and
    all) to the cell z^length(w) q^weight(w).  Bounds default to the largest
    region certified by the series window; asking beyond it is an error."""
    z_cert, qmin_cert, qmax_cert = certified_umbral_bounds(series, zmax)
    zmax = z_cert if zmax is None else zmax
    qmin = qmin_cert if qmin is None else qmin
    qmax = qmax_cert if qmax is None else qmax
    if zmax > series.window.max_len or qmin > qmin_cert or qmax > qmax_cert:
        raise WindowError(
            f"requested bounds (z<={zmax}, q in [{qmin},{qmax}]) exceed certified "
            f"(z<={z_cert}, q in [{qmin_cert},{qmax_cert}])"
        )
    rows = [{} for _ in range(zmax + 1)]
    for w, c in series.terms.items():
        length = len(w)
        if length > zmax:
            continue
        weight = sum(w)
        if weight < qmin or weight > qmax:
            continue
        row = rows[length]
        cur = row.get(weight)
        v = c if cur is None else cur + c
        if v:
            row[weight] = v
        elif cur is not None:
            del row[weight]
    return ZQSeries._raw(rows, zmax, qmin, qmax)


# -- rise-set power sums ---------------------------------------------------------


def sk_row(rise_set, k: int, bound: int) -> dict:
    """S_k(q) = sum_{s in S} q^{k(s-1)} truncated at the exponent bound."""
    if k < 1:
        raise ValueError("power sums are indexed from 1")
    out = {}
    for s in rise_set.members_upto(bound // k + 1):
        e = k * (s - 1)
        if e <= bound:
            out[e] = 1
    return out


def sk_factorial(rise_set, k: int, qmax: int) -> dict:
    """(S_k)!(q) = S_k S_{k-1} ... S_1 truncated at qmax; (S_0)! = 1.

    Factors with 0 in the rise set carry negative exponents, so each factor is
    enumerated far enough that every product exponent <= qmax is complete.
    """
    if k < 0:
        raise ValueError("need k >= 0")
    if k == 0:
        return {0: 1}
    smin = rise_set.min_member()
    if smin is None:
        return {}
    mins = [j * (smin - 1) for j in range(1, k + 1)]
    total_min = sum(mins)
    out = {0: 1}
    slack = total_min
    for j in range(k, 0, -1):
        mj = mins[j - 1]
        slack -= mj  # minimal exponent still to come from factors below j
        factor = sk_row(rise_set, j, qmax - (total_min - mj))
        out = row_mul(out, factor, qmax - slack)
    return {e: c for e, c in out.items() if e <= qmax}


# -- closed forms ------------------------------------------------------------------


def _mdistinct_rows(m: int, zmax: int, qmax: int, signed: bool) -> list:
    """Rows of sum_k (+-1)^k q^{m C(k,2) + k} z^k / (q; q)_k."""
    rows = []
    for k in range(zmax + 1):
        e = m * comb(k, 2) + k
        if e > qmax:
            rows.append({})
            continue
        row = row_div({e: 1}, qq_pochhammer_row(k, qmax), qmax)
        if signed and k % 2:
            row = {x: -c for x, c in row.items()}
        rows.append(row)
    return rows


def _ps_sum(rise_set, zmax: int, qmax: int, signed: bool) -> ZQSeries:
    """1 + sum_k (+-1)^k q^{C(k+1,2)} / (1 - q^k) * (S_{k-1})!(q) z^k."""
    rows = [{0: 1}]
    for k in range(1, zmax + 1):
        # the factorial may carry negative exponents (when 0 is a rise), so
        # the monomial prefactor exceeding qmax does not by itself kill a row
        e = comb(k + 1, 2)
        fact = sk_factorial(rise_set, k - 1, qmax - e)
        num = {x + e: c for x, c in fact.items()}
        row = row_div(num, {0: 1, k: -1}, qmax)
        if any(x < 0 for x in row):
            raise ValueError("rise-set series produced negative q-exponents")
        if signed and k % 2:
            row = {x: -c for x, c in row.items()}
        rows.append(row)
    return ZQSeries._raw(rows, zmax, 0, qmax)


def _local_minima_product(zmax: int, qmax: int) -> ZQSeries:
    """prod_{k>=1} (1 - q - z q^{k+1}) / (1 - q - z q^{k+1} + q^k (q - 1) z t);
    factors beyond k = qmax are 1 modulo the truncation."""
    from .coeffs import T

    acc = ZQSeries.scalar(1, zmax, 0, qmax)
    for k in range(1, qmax + 1):
        num_rows = [{0: 1, 1: -1}, {}]
        den_rows = [{0: 1, 1: -1}, {}]
        if k + 1 <= qmax:
            num_rows[1][k + 1] = -1
            den_rows[1][k + 1] = -1 + T
        if k <= qmax:
            den_rows[1][k] = den_rows[1].get(k, 0) + (-T)
        pad = [{} for _ in range(zmax + 1)]
        num = ZQSeries._raw((num_rows + pad)[: zmax + 1], zmax, 0, qmax)
        den = ZQSeries._raw((den_rows + pad)[: zmax + 1], zmax, 0, qmax)
        acc = (acc * num).divide(den)
    return acc


CLOSED_FORMS = ("Pm", "Cm", "Rm", "HydraA", "PS", "CShat", "LocalMinima")


def closed_form(name: str, params, zmax: int, qmax: int) -> ZQSeries:
    """Evaluate one of the closed q-series forms exactly on (z <= zmax,
    0 <= q <= qmax).

    Pm(m): generating function of m-distinct partitions by (parts, weight).
    Cm(m): compositions with contiguous differences <= m-1, as the reciprocal
        of the alternating Pm sum.
    Rm(m): the m-headed hydra fraction z P_{m+1}(z q^m) / P_{m+1}(z).
    HydraA(m): the partition-enriched tree series A_{Pi_m}(z) as a quotient of
        the alternating sums.
    PS(set): partitions with all rises in the set.
    CShat(set): compositions with contiguous differences outside the set.
    LocalMinima: compositions by (parts, weight) with t marking local minima.
    """
    if name == "Pm":
        m = _need_m(params)
        return ZQSeries._raw(_mdistinct_rows(m, zmax, qmax, False), zmax, 0, qmax)
    if name == "Cm":
        m = _need_m(params)
        alt = ZQSeries._raw(_mdistinct_rows(m, zmax, qmax, True), zmax, 0, qmax)
        return alt.reciprocal()
    if name == "Rm":
        m = _need_m(params)
        p = closed_form("Pm", {"m": m + 1}, zmax, qmax)
        return p.subst_zq(m).divide(p).times_z()
    if name == "HydraA":
        m = _need_m(params)
        alt = ZQSeries._raw(_mdistinct_rows(m + 1, zmax, qmax, True), zmax, 0, qmax)
        return alt.subst_zq(m).divide(alt).times_z()
    if name == "PS":
        return _ps_sum(params["set"], zmax, qmax, False)
    if name == "CShat":
        return _ps_sum(params["set"], zmax, qmax, True).reciprocal()
    if name == "LocalMinima":
        return _local_minima_product(zmax, qmax)
    raise ValueError(f"unknown closed form {name!r}")


def _need_m(params) -> int:
    m = params["m"]
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    return m


# -- worked-example specializations of the rise-set formula ----------------------


def _ps_from_fk(fk, zmax, qmax) -> ZQSeries:
    rows = [{0: 1}] + [fk(k) for k in range(1, zmax + 1)]
    return ZQSeries._raw(rows, zmax, 0, qmax)


def ps_interval_from(m: int, zmax: int, qmax: int) -> ZQSeries:
    """Rises in [m, oo): f_k = q^{m C(k,2) + k} / (q; q)_k."""
    return ZQSeries._raw(_mdistinct_rows(m, zmax, qmax, False), zmax, 0, qmax)


def ps_interval(m: int, n: int, zmax: int, qmax: int) -> ZQSeries:
    """Rises in [m, n]: f_k = q^{m C(k,2)+k} (q^{n-m+1}; q^{n-m+1})_{k-1} / (q; q)_k."""
    step = n - m + 1

    def fk(k):
        e = m * comb(k, 2) + k
        if e > qmax:
            return {}
        num = row_mul({e: 1}, pochhammer_row(step, step, k - 1, qmax), qmax)
        return row_div(num, qq_pochhammer_row(k, qmax), qmax)

    return _ps_from_fk(fk, zmax, qmax)


def ps_singleton(m: int, zmax: int, qmax: int) -> ZQSeries:
    """Rises all equal to m: f_k = q^{m C(k,2) + k} / (1 - q^k)."""

    def fk(k):
        e = m * comb(k, 2) + k
        if e > qmax:
            return {}
        return row_div({e: 1}, {0: 1, k: -1}, qmax)

    return _ps_from_fk(fk, zmax, qmax)


def ps_multiples(m: int, zmax: int, qmax: int) -> ZQSeries:
    """Rises multiples of m (zero included): f_k = q^k / ((1-q^k)(q^m; q^m)_{k-1})."""

    def fk(k):
        den = row_mul({0: 1, k: -1}, pochhammer_row(m, m, k - 1, qmax), qmax)
        return row_div({k: 1} if k <= qmax else {}, den, qmax)

    return _ps_from_fk(fk, zmax, qmax)


def ps_multiples_positive(m: int, zmax: int, qmax: int) -> ZQSeries:
    """Rises positive multiples of m: f_k = q^{m C(k,2)+k} / ((1-q^k)(q^m; q^m)_{k-1})."""

    def fk(k):
        e = m * comb(k, 2) + k
        if e > qmax:
            return {}
        den = row_mul({0: 1, k: -1}, pochhammer_row(m, m, k - 1, qmax), qmax)
        return row_div({e: 1}, den, qmax)

    return _ps_from_fk(fk, zmax, qmax)


def ps_congruence(first: int, m: int, zmax: int, qmax: int) -> ZQSeries:
    """Rises in {first, first+m, first+2m, ...} for 0 <= first <= m:
    f_k = q^{first C(k,2) + k} / ((1-q^k)(q^m; q^m)_{k-1})."""
    if not 0 <= first <= m:
        raise ValueError(f"need 0 <= first <= modulus, got {first} mod {m}")

    def fk(k):
        e = first * comb(k, 2) + k
        if e > qmax:
            return {}
        den = row_mul({0: 1, k: -1}, pochhammer_row(m, m, k - 1, qmax), qmax)
        return row_div({e: 1}, den, qmax)

    return _ps_from_fk(fk, zmax, qmax)
