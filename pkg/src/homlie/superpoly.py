"""Supercommutative polynomial algebra with exact rational coefficients.

Even variables x_1, x_2, ... commute; odd variables xi_1, xi_2, ...
anticommute and square to zero.  On top of the polynomial ring the module
provides the geometric objects the builders need: polynomial vector fields
in the even variables, differential 2- and 3-forms, the complementary-index
bracket on single-term 2-forms, and the contact bracket on polynomials in
one even and six odd variables.

Monomials are canonical tuples ``(evens, odds)`` where ``evens`` is a sorted
tuple of (variable, exponent) pairs and ``odds`` a strictly increasing tuple
of odd indices.  Formal power series never appear: callers work below a
fixed polynomial degree (2 is enough for everything built here), and
``SuperPoly.truncated`` discards higher terms when a computation could
exceed the bound.
"""

from fractions import Fraction

from .errors import DomainError

EMPTY_MONO = ((), ())


def permutation_sign(seq):
    """+1 / -1 for an even / odd sequence of distinct values, 0 on repeats."""
    seq = tuple(seq)
    if len(set(seq)) != len(seq):
        return 0
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv % 2 else 1


def perm_sign(t, i, j, k, l):
    """Sign of (t,i,j,k,l) as a rearrangement of (1,2,3,4,5); 0 on repeats."""
    idx = (t, i, j, k, l)
    for v in idx:
        if not 1 <= v <= 5:
            raise DomainError(f"index {v} outside 1..5")
    return permutation_sign(idx)


def _merge_odds(o1, o2):
    """Merge two increasing odd-index tuples; returns (merged, sign) or None
    when an index repeats (the product vanishes)."""
    sign = 1
    out = []
    i = j = 0
    n1 = len(o1)
    while i < n1 and j < len(o2):
        a, b = o1[i], o2[j]
        if a == b:
            return None
        if a < b:
            out.append(a)
            i += 1
        else:
            if (n1 - i) % 2:
                sign = -sign
            out.append(b)
            j += 1
    out.extend(o1[i:])
    out.extend(o2[j:])
    return tuple(out), sign


def _mono_mul(m1, m2):
    e1, o1 = m1
    e2, o2 = m2
    merged = _merge_odds(o1, o2)
    if merged is None:
        return None
    odds, sign = merged
    if not e1:
        evens = e2
    elif not e2:
        evens = e1
    else:
        acc = dict(e1)
        for v, e in e2:
            acc[v] = acc.get(v, 0) + e
        evens = tuple(sorted(acc.items()))
    return (evens, odds), sign


class SuperPoly:
    """A finite sum of supercommutative monomials with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def constant(cls, c):
        return cls({EMPTY_MONO: Fraction(c)})

    @classmethod
    def even_var(cls, i, exp=1):
        return cls({(((i, exp),), ()): Fraction(1)})

    @classmethod
    def odd_var(cls, *indices):
        if list(indices) != sorted(set(indices)):
            raise DomainError("odd factors must be strictly increasing")
        return cls({((), tuple(indices)): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def parity(self):
        """0 or 1 for a homogeneous polynomial, None when parities mix.
        The zero polynomial counts as even."""
        parities = {len(o) % 2 for (_, o) in self.terms}
        if not parities:
            return 0
        if len(parities) > 1:
            return None
        return parities.pop()

    def total_degree(self):
        return max((sum(e for _, e in ev) + len(o) for (ev, o) in self.terms),
                   default=0)

    def truncated(self, bound):
        return SuperPoly({m: c for m, c in self.terms.items()
                          if sum(e for _, e in m[0]) + len(m[1]) <= bound})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        res = SuperPoly()
        res.terms = out
        return res

    def __neg__(self):
        res = SuperPoly()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        res = SuperPoly()
        if c:
            res.terms = {m: c * v for m, v in self.terms.items()}
        return res

    def __mul__(self, other):
        if not isinstance(other, SuperPoly):
            return self.scale(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = _mono_mul(m1, m2)
                if prod is None:
                    continue
                m, sign = prod
                s = out.get(m, Fraction(0)) + sign * c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        res = SuperPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def d_even(self, var):
        """Partial derivative with respect to even variable ``var``."""
        out = {}
        for (ev, od), c in self.terms.items():
            for n, (v, e) in enumerate(ev):
                if v == var:
                    rest = ev[:n] + ((v, e - 1),) + ev[n + 1:] if e > 1 \
                        else ev[:n] + ev[n + 1:]
                    m = (rest, od)
                    s = out.get(m, Fraction(0)) + e * c
                    if s:
                        out[m] = s
                    elif m in out:
                        del out[m]
                    break
        res = SuperPoly()
        res.terms = out
        return res

    def d_odd(self, var):
        """Left derivative with respect to odd variable ``var``: strike the
        factor, with a minus sign per odd factor standing before it."""
        out = {}
        for (ev, od), c in self.terms.items():
            if var in od:
                pos = od.index(var)
                m = (ev, od[:pos] + od[pos + 1:])
                sign = -1 if pos % 2 else 1
                s = out.get(m, Fraction(0)) + sign * c
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        res = SuperPoly()
        res.terms = out
        return res

    def items_sorted(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        return isinstance(other, SuperPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.items_sorted()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (ev, od), c in self.items_sorted():
            factors = [f"x{v}^{e}" if e > 1 else f"x{v}" for v, e in ev]
            factors += [f"xi{i}" for i in od]
            body = "*".join(factors) if factors else "1"
            parts.append(f"{c}*{body}")
        return " + ".join(parts)


class VectorField:
    """Polynomial vector field sum_i f_i d/dx_i in the even variables."""

    __slots__ = ("components",)

    def __init__(self, components=None):
        self.components = {}
        if components:
            for i, p in components.items():
                if not p.is_zero():
                    self.components[i] = p

    def is_zero(self):
        return not self.components

    def apply(self, poly):
        out = SuperPoly()
        for i, f in self.components.items():
            out = out + f * poly.d_even(i)
        return out

    def bracket(self, other):
        """Commutator of derivations, read off the coordinate functions."""
        out = {}
        for i in self.components.keys() | other.components.keys():
            g = self.apply(other.components.get(i, SuperPoly())) \
                - other.apply(self.components.get(i, SuperPoly()))
            if not g.is_zero():
                out[i] = g
        return VectorField(out)

    def divergence(self):
        out = SuperPoly()
        for i, f in self.components.items():
            out = out + f.d_even(i)
        return out

    def __add__(self, other):
        out = dict(self.components)
        for i, p in other.components.items():
            out[i] = out.get(i, SuperPoly()) + p
        return VectorField(out)

    def scale(self, c):
        return VectorField({i: p.scale(c) for i, p in self.components.items()})

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.components == other.components

    def __repr__(self):
        if not self.components:
            return "0"
        return " + ".join(f"({p})·d{i}" for i, p in sorted(self.components.items()))


class TwoForm:
    """Polynomial differential 2-form, stored on ordered index pairs i < j."""

    __slots__ = ("comps",)

    def __init__(self, comps=None):
        self.comps = {}
        if comps:
            for (i, j), p in comps.items():
                if i >= j:
                    raise DomainError("2-form components must use i < j")
                if not p.is_zero():
                    self.comps[(i, j)] = p

    def add_term(self, i, j, poly):
        """Accumulate poly·dx_i∧dx_j, renormalizing the index order."""
        if i == j or poly.is_zero():
            return
        if i > j:
            i, j = j, i
            poly = -poly
        cur = self.comps.get((i, j), SuperPoly()) + poly
        if cur.is_zero():
            self.comps.pop((i, j), None)
        else:
            self.comps[(i, j)] = cur

    def is_zero(self):
        return not self.comps

    def __add__(self, other):
        out = TwoForm()
        for (i, j), p in self.comps.items():
            out.add_term(i, j, p)
        for (i, j), p in other.comps.items():
            out.add_term(i, j, p)
        return out

    def scale(self, c):
        return TwoForm({k: p.scale(c) for k, p in self.comps.items()})

    def __eq__(self, other):
        return isinstance(other, TwoForm) and self.comps == other.comps

    def __repr__(self):
        if not self.comps:
            return "0"
        return " + ".join(f"({p})·d_{i}{j}" for (i, j), p in sorted(self.comps.items()))


class ThreeForm:
    """Polynomial 3-form on ordered triples, just enough for closedness checks."""

    __slots__ = ("comps",)

    def __init__(self):
        self.comps = {}

    def add_term(self, i, j, k, poly):
        sign = permutation_sign((i, j, k))
        if sign == 0 or poly.is_zero():
            return
        key = tuple(sorted((i, j, k)))
        cur = self.comps.get(key, SuperPoly()) + poly.scale(sign)
        if cur.is_zero():
            self.comps.pop(key, None)
        else:
            self.comps[key] = cur

    def is_zero(self):
        return not self.comps

    def __repr__(self):
        if not self.comps:
            return "0"
        return " + ".join(f"({p})·d_{i}{j}{k}"
                          for (i, j, k), p in sorted(self.comps.items()))


def exterior_d(omega):
    """Exterior derivative of a 2-form: d(f dx_i∧dx_j) collects
    d_m(f) dx_m∧dx_i∧dx_j on ordered triples."""
    out = ThreeForm()
    for (i, j), f in omega.comps.items():
        for m in _even_vars_of(f):
            out.add_term(m, i, j, f.d_even(m))
    return out


def exterior_d_1form(comps):
    """d of a polynomial 1-form given as {i: f_i}; returns a TwoForm."""
    out = TwoForm()
    for i, f in comps.items():
        for m in _even_vars_of(f):
            out.add_term(m, i, f.d_even(m))
    return out


def _even_vars_of(poly):
    return {v for (ev, _) in poly.terms for v, _e in ev}


def lie_derivative_2form(field, omega):
    """Lie derivative L_D(f dx_i∧dx_j) = D(f) dx_i∧dx_j
    + f·d(D x_i)∧dx_j + f·dx_i∧d(D x_j), renormalized to ordered pairs."""
    out = TwoForm()
    for (i, j), f in omega.comps.items():
        out.add_term(i, j, field.apply(f))
        gi = field.components.get(i)
        if gi is not None:
            for m in _even_vars_of(gi):
                out.add_term(m, j, f * gi.d_even(m))
        gj = field.components.get(j)
        if gj is not None:
            for m in _even_vars_of(gj):
                out.add_term(i, m, f * gj.d_even(m))
    return out


def form_bracket(omega1, omega2):
    """Bracket of 2-forms: [f dx_i∧dx_j, g dx_k∧dx_l] = sign·f·g d/dx_t with
    t the complementary index of (i,j,k,l) in 1..5, extended bilinearly."""
    acc = {}
    for (i, j), f in omega1.comps.items():
        for (k, l), g in omega2.comps.items():
            used = {i, j, k, l}
            if len(used) != 4:
                continue
            (t,) = set((1, 2, 3, 4, 5)) - used
            sign = perm_sign(t, i, j, k, l)
            prod = (f * g).scale(sign)
            if prod.is_zero():
                continue
            acc[t] = acc.get(t, SuperPoly()) + prod
    return VectorField(acc)


CONTACT_N_ODD = 6
CONTACT_EVEN_VAR = 1


def contact_bracket(f, g, n_odd=CONTACT_N_ODD):
    """Contact bracket on polynomials in one even variable x and odd
    variables xi_1..xi_n:

        [f,g] = (2f - sum_i xi_i·d_i(f))·dx(g)
              - (-1)^{|f||g|} (2g - sum_i xi_i·d_i(g))·dx(f)
              + (-1)^{|f|} sum_i d_i(f)·d_i(g)

    Both arguments must be parity-homogeneous.
    """
    pf, pg = f.parity(), g.parity()
    if pf is None or pg is None:
        raise DomainError("contact bracket needs parity-homogeneous arguments")

    def euler_adjusted(p):
        acc = p.scale(2)
        for i in range(1, n_odd + 1):
            acc = acc - SuperPoly.odd_var(i) * p.d_odd(i)
        return acc

    x = CONTACT_EVEN_VAR
    out = euler_adjusted(f) * g.d_even(x)
    s2 = -1 if (pf and pg) else 1
    out = out - (euler_adjusted(g) * f.d_even(x)).scale(s2)
    s3 = -1 if pf else 1
    for i in range(1, n_odd + 1):
        out = out + (f.d_odd(i) * g.d_odd(i)).scale(s3)
    return out
