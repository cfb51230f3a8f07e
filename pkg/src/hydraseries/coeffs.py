"""Exact coefficient arithmetic: rationals plus an optional marker variable t.

Coefficients of noncommutative series are either plain Python ints, exact
``fractions.Fraction`` values, or :class:`TPoly` polynomials in the single
marker t with rational coefficients.  All three mix freely under ``+``, ``-``
and ``*``, so the series kernels can use native operators; ints stay ints on
the fast path.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class TPoly:
    """Dense polynomial in the marker t with exact rational coefficients.

    Normalized: trailing zeros stripped and degree >= 1 (a degree-0 value is
    returned as the bare scalar by :func:`tpoly`).  Immutable and hashable.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = tuple(coeffs)

    def __bool__(self):
        return True  # normalized TPoly is never the zero coefficient

    def degree(self):
        return len(self.c) - 1

    def __add__(self, other):
        if isinstance(other, TPoly):
            a, b = self.c, other.c
            if len(a) < len(b):
                a, b = b, a
            out = list(a)
            for i, v in enumerate(b):
                out[i] += v
            return tpoly(out)
        if isinstance(other, (int, Fraction)):
            out = list(self.c)
            out[0] += other
            return tpoly(out)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TPoly(tuple(-v for v in self.c))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TPoly):
            a, b = self.c, other.c
            out = [0] * (len(a) + len(b) - 1)
            for i, u in enumerate(a):
                if u:
                    for j, v in enumerate(b):
                        if v:
                            out[i + j] += u * v
            return tpoly(out)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return 0
            return TPoly(tuple(v * other for v in self.c))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self.c == other.c
        return False  # degree >= 1, never equal to a scalar

    def __hash__(self):
        return hash(("t-poly", self.c))

    def __repr__(self):
        parts = []
        for i, v in enumerate(self.c):
            if v == 0:
                continue
            if i == 0:
                parts.append(str(v))
            elif i == 1:
                parts.append(f"{v}*t" if v != 1 else "t")
            else:
                parts.append(f"{v}*t^{i}" if v != 1 else f"t^{i}")
        return " + ".join(parts) if parts else "0"


def tpoly(coeffs):
    """Build a normalized coefficient from a dense t-coefficient list."""
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    if not out:
        return 0
    if len(out) == 1:
        return out[0]
    return TPoly(out)


#: The marker t itself.
T = TPoly((0, 1))


def t_degree(c):
    return c.degree() if isinstance(c, TPoly) else 0


def t_coefficients(c):
    """Dense list of the t-coefficients of a coefficient value."""
    return list(c.c) if isinstance(c, TPoly) else [c]


def t_component(c, j):
    """The rational coefficient of t^j inside c."""
    if isinstance(c, TPoly):
        return c.c[j] if j < len(c.c) else 0
    return c if j == 0 else 0


def _rat_str(v) -> str:
    return str(Fraction(v))


def coeff_to_json(c):
    """JSON form: a rational string "p/q", or {"t": [...]} for marked values."""
    if isinstance(c, TPoly):
        return {"t": [_rat_str(v) for v in c.c]}
    return _rat_str(c)


def coeff_from_json(obj):
    if isinstance(obj, str):
        f = Fraction(obj)
        return int(f) if f.denominator == 1 else f
    if isinstance(obj, dict) and "t" in obj:
        vals = []
        for s in obj["t"]:
            f = Fraction(s)
            vals.append(int(f) if f.denominator == 1 else f)
        return tpoly(vals)
    raise ValueError(f"not a coefficient: {obj!r}")
