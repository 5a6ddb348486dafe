"""Exact linear algebra over the rationals.

Two independent elimination cores are provided:

* ``EchelonFF`` keeps rows as primitive integer vectors and eliminates by
  cross-multiplication (fraction-free), stripping the content gcd after
  every combination so entries stay small.
* ``EchelonQQ`` works directly with ``Fraction`` entries and monic pivot
  rows (ordinary fraction arithmetic).

Both are deterministic: rows are consumed in caller order and a row's pivot
is its surviving entry with the smallest column index.  Nothing here ever
selects a pivot by magnitude, so repeated runs give identical output.
"""

from fractions import Fraction
from math import gcd


def _intify(row):
    """Scale a sparse Fraction row to a primitive integer row, sign-fixed so
    the entry with the smallest column index is positive."""
    if not row:
        return {}
    den = 1
    for v in row.values():
        den = den * v.denominator // gcd(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items() if v}
    if not out:
        return {}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if out[min(out)] < 0:
        g = -g
    return {c: v // g for c, v in out.items()}


class EchelonFF:
    """Incremental fraction-free row echelon form."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = {}  # pivot column -> integer row (dict col -> int)

    @property
    def rank(self):
        return len(self.pivots)

    def add_row(self, row):
        """Feed one sparse row (Fraction or int values).  Returns True if the
        row increased the rank."""
        row = _intify({c: Fraction(v) for c, v in row.items() if v})
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                self.pivots[lead] = row
                return True
            a, b = piv[lead], row[lead]
            new = {}
            for c in row.keys() | piv.keys():
                v = a * row.get(c, 0) - b * piv.get(c, 0)
                if v:
                    new[c] = v
            if not new:
                return False
            g = 0
            for v in new.values():
                g = gcd(g, v)
            if new[min(new)] < 0:
                g = -g
            row = {c: v // g for c, v in new.items()}
        return False

    def nullspace_basis(self):
        """Basis of the solution space of (rows)·x = 0, one vector per free
        column, each scaled to a primitive integer vector."""
        return _nullspace_from_pivots(self.pivots, self.ncols)

    def contains(self, row):
        """True if the sparse row lies in the row space accumulated so far
        (the echelon is not modified)."""
        row = _intify({c: Fraction(v) for c, v in row.items() if v})
        while row:
            piv = self.pivots.get(min(row))
            if piv is None:
                return False
            lead = min(row)
            a, b = piv[lead], row[lead]
            row = {c: v for c in row.keys() | piv.keys()
                   if (v := a * row.get(c, 0) - b * piv.get(c, 0))}
        return True


class EchelonQQ:
    """Incremental row echelon form with plain Fraction arithmetic.

    Independent of EchelonFF by construction; used to cross-check ranks and
    nullspace dimensions.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.pivots = {}  # pivot column -> monic Fraction row

    @property
    def rank(self):
        return len(self.pivots)

    def add_row(self, row):
        row = {c: Fraction(v) for c, v in row.items() if v}
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                inv = row[lead]
                self.pivots[lead] = {c: v / inv for c, v in row.items()}
                return True
            f = row[lead]
            row = {c: v for c in row.keys() | piv.keys()
                   if (v := row.get(c, Fraction(0)) - f * piv.get(c, Fraction(0)))}
        return False

    def nullspace_basis(self):
        return _nullspace_from_pivots(self.pivots, self.ncols)


def _nullspace_from_pivots(pivots, ncols):
    free = [c for c in range(ncols) if c not in pivots]
    order = sorted(pivots, reverse=True)
    basis = []
    for f in free:
        sol = {f: Fraction(1)}
        for p in order:
            row = pivots[p]
            s = Fraction(0)
            for c, v in row.items():
                if c != p and c in sol:
                    s += Fraction(v) * sol[c]
            if s:
                sol[p] = -s / Fraction(row[p])
        vec = _intify(sol)
        if vec[f] < 0:  # keep the defining entry positive
            vec = {c: -v for c, v in vec.items()}
        basis.append({c: Fraction(v) for c, v in vec.items()})
    return basis


def rank_ff(rows, ncols):
    ech = EchelonFF(ncols)
    for r in rows:
        ech.add_row(r)
    return ech.rank


def det(matrix):
    """Exact determinant of a dense square Fraction matrix (Gauss with the
    first nonzero entry of each column as pivot)."""
    m = [[Fraction(v) for v in row] for row in matrix]
    n = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        result *= m[col][col]
        inv = m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] / inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return sign * result


class SpanSolver:
    """Expresses query vectors exactly in the span of a fixed generator list.

    Generators and queries are sparse mappings with arbitrary (but mutually
    comparable) hashable keys.  ``coords`` returns the unique coefficient
    dict over generator indices, or None when the query leaves the span.
    """

    def __init__(self, generators):
        self.universe = sorted({k for g in generators for k in g})
        self.colix = {k: n for n, k in enumerate(self.universe)}
        self.rows = {}  # lead column -> (row dict, combination dict)
        for n, g in enumerate(generators):
            vec = {self.colix[k]: Fraction(v) for k, v in g.items() if v}
            vec, comb = self._reduce(vec, {n: Fraction(1)})
            if vec:
                self.rows[min(vec)] = (vec, comb)
        self.rank = len(self.rows)

    def _reduce(self, vec, comb):
        while vec:
            lead = min(vec)
            hit = self.rows.get(lead)
            if hit is None:
                return vec, comb
            row, rcomb = hit
            f = vec[lead] / row[lead]
            for c, v in row.items():
                vec[c] = vec.get(c, Fraction(0)) - f * v
                if not vec[c]:
                    del vec[c]
            for g, v in rcomb.items():
                comb[g] = comb.get(g, Fraction(0)) - f * v
                if not comb[g]:
                    del comb[g]
        return vec, comb

    def coords(self, query):
        vec = {}
        for k, v in query.items():
            if not v:
                continue
            ix = self.colix.get(k)
            if ix is None:
                return None
            vec[ix] = Fraction(v)
        vec, comb = self._reduce(vec, {})
        if vec:
            return None
        return {g: -c for g, c in comb.items()}
