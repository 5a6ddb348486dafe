"""Polynomial ideals over Q in a handful of variables: Buchberger's
algorithm, zero-dimensionality detection, and enumeration of rational
solution points.

Polynomials are dicts mapping dense exponent tuples to Fraction
coefficients.  The solver contract order is degree-reverse-lexicographic;
a lexicographic basis is computed internally to triangularize and
back-substitute.  Everything is deterministic: S-pairs are processed in a
fixed sorted order and output bases are reduced, primitive-integer,
positive-lead and sorted.

The solution-point search is complete in the following sense: when every
eliminant encountered splits into rational linear factors, the returned
points are the whole variety (over any extension field); any non-rational
factor is returned as a residual component instead of being dropped.
"""

from fractions import Fraction
from math import gcd

from .errors import InconclusiveError

DEFAULT_SPAIR_CAP = 200_000
DEFAULT_PARAM_CAP = 32


def grevlex_key(mono):
    return (sum(mono), tuple(-e for e in reversed(mono)))


def lex_key(mono):
    return mono


def poly_clean(p):
    return {m: c for m, c in p.items() if c}


def poly_add(p, q):
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, Fraction(0)) + c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out


def poly_scale(p, c):
    if not c:
        return {}
    return {m: c * v for m, v in p.items()}


def mono_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def mono_divides(m1, m2):
    return all(a <= b for a, b in zip(m1, m2))


def mono_div(m1, m2):
    return tuple(a - b for a, b in zip(m1, m2))


def mono_lcm(m1, m2):
    return tuple(max(a, b) for a, b in zip(m1, m2))


def poly_mul_term(p, mono, coeff):
    return {mono_mul(m, mono): c * coeff for m, c in p.items()}


def leading(p, key):
    m = max(p, key=key)
    return m, p[m]


def normalize(p):
    """Primitive integer coefficients, sign fixed by making the coefficient
    of the tuple-wise largest monomial positive (order independent)."""
    p = poly_clean(p)
    if not p:
        return {}
    den = 1
    for c in p.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {m: int(c * den) for m, c in p.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if ints[max(ints)] < 0:
        g = -g
    return {m: Fraction(v // g) for m, v in ints.items()}


def reduce_poly(p, basis, key):
    """Full normal form of p modulo the basis (every monomial reduced)."""
    p = dict(p)
    out = {}
    while p:
        m, c = leading(p, key)
        hit = None
        for lm, lc, g in basis:
            if mono_divides(lm, m):
                hit = (lm, lc, g)
                break
        if hit is None:
            out[m] = c
            del p[m]
            continue
        lm, lc, g = hit
        p = poly_add(p, poly_mul_term(g, mono_div(m, lm), -c / lc))
    return out


def _prepare(basis_polys, key):
    out = []
    for g in basis_polys:
        g = poly_clean(g)
        if g:
            lm, lc = leading(g, key)
            out.append((lm, lc, g))
    out.sort(key=lambda t: key(t[0]))
    return out


def buchberger(polys, nvars, key=grevlex_key, spair_cap=DEFAULT_SPAIR_CAP):
    """Reduced Groebner basis for the given order.  Raises
    InconclusiveError when more than spair_cap S-pairs are processed."""
    gens = []
    seen = set()
    for p in polys:
        p = normalize(p)
        if p:
            sig = tuple(sorted(p.items()))
            if sig not in seen:
                seen.add(sig)
                gens.append(p)
    gens.sort(key=lambda p: key(leading(p, key)[0]))
    basis = []
    for g in gens:
        basis.append(g)
    if not basis:
        return []

    def lm(g):
        return leading(g, key)[0]

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    processed = 0
    while pairs:
        # deterministic normal strategy: smallest lcm first
        pick = min(pairs, key=lambda ij: (key(mono_lcm(lm(basis[ij[0]]),
                                                       lm(basis[ij[1]]))),
                                          ij))
        pairs.discard(pick)
        i, j = pick
        gi, gj = basis[i], basis[j]
        mi, ci = leading(gi, key)
        mj, cj = leading(gj, key)
        l = mono_lcm(mi, mj)
        if l == mono_mul(mi, mj):  # coprime leading terms: S-poly reduces to 0
            continue
        processed += 1
        if processed > spair_cap:
            raise InconclusiveError(
                f"S-pair cap {spair_cap} exceeded ({len(basis)} basis elements)")
        s = poly_add(poly_mul_term(gi, mono_div(l, mi), Fraction(1) / ci),
                     poly_mul_term(gj, mono_div(l, mj), -Fraction(1) / cj))
        prepared = _prepare(basis, key)
        rem = normalize(reduce_poly(s, prepared, key))
        if rem:
            basis.append(rem)
            new = len(basis) - 1
            for t in range(new):
                pairs.add((t, new))

    # minimalize: drop members whose lead is divisible by another lead
    keep = []
    for i, g in enumerate(basis):
        mi = lm(g)
        if any(mono_divides(lm(h), mi) for t, h in enumerate(basis)
               if t != i and (t < i or lm(h) != mi)):
            continue
        keep.append(g)
    # inter-reduce for a canonical reduced basis
    reduced = []
    for i, g in enumerate(keep):
        others = _prepare([h for t, h in enumerate(keep) if t != i], key)
        r = normalize(reduce_poly(g, others, key))
        if r:
            reduced.append(r)
    reduced.sort(key=lambda p: key(leading(p, key)[0]), reverse=True)
    return reduced


def is_zero_dimensional(gb, nvars, key=grevlex_key):
    """A Groebner basis (any order) cuts out finitely many points over the
    algebraic closure iff some leading monomial is a pure power of each
    variable."""
    if any(leading(g, key)[0] == (0,) * nvars for g in gb):
        return True  # the empty variety
    for v in range(nvars):
        found = False
        for g in gb:
            m = leading(g, key)[0]
            if m[v] > 0 and all(e == 0 for t, e in enumerate(m) if t != v):
                found = True
                break
        if not found:
            return False
    return True


# --- univariate helpers -----------------------------------------------------

def _univar_coeffs(p, var):
    """Coefficient list (ascending) when p involves only ``var``; None else."""
    deg = 0
    for m in p:
        for t, e in enumerate(m):
            if e and t != var:
                return None
        deg = max(deg, m[var])
    coeffs = [Fraction(0)] * (deg + 1)
    for m, c in p.items():
        coeffs[m[var]] = c
    return coeffs


def _int_coeffs(coeffs):
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else ints


def _divisors(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def rational_roots(coeffs):
    """All rational roots (with multiplicity divided out) of an integer
    coefficient list, plus the leftover factor's degree."""
    coeffs = list(_int_coeffs(coeffs))
    roots = []
    while len(coeffs) > 1 and coeffs[0] == 0:
        roots.append(Fraction(0))
        coeffs = coeffs[1:]
    while len(coeffs) > 1:
        a0, an = coeffs[0], coeffs[-1]
        found = None
        for q in _divisors(an):
            for pnum in _divisors(a0):
                for r in (Fraction(pnum, q), Fraction(-pnum, q)):
                    val = Fraction(0)
                    for c in reversed(coeffs):
                        val = val * r + c
                    if val == 0:
                        found = r
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        # synthetic division by (x - found)
        out = [Fraction(0)] * (len(coeffs) - 1)
        carry = Fraction(0)
        for i in range(len(coeffs) - 1, 0, -1):
            carry = coeffs[i] + carry * found
            out[i - 1] = carry
        roots.append(found)
        coeffs = _int_coeffs(out)
    return roots, len(coeffs) - 1


def _substitute(p, var, value):
    out = {}
    for m, c in p.items():
        e = m[var]
        nm = m[:var] + (0,) + m[var + 1:]
        s = out.get(nm, Fraction(0)) + c * value ** e
        if s:
            out[nm] = s
        elif nm in out:
            del out[nm]
    return out


def _drop_var(p, var):
    return {m[:var] + m[var + 1:]: c for m, c in p.items()}


def _lift_point(point, var, value):
    return point[:var] + (value,) + point[var:]


def solve_points(polys, nvars, spair_cap=DEFAULT_SPAIR_CAP):
    """Enumerate the rational points of V(polys) by lex triangularization and
    back-substitution.

    Returns (points, residuals) where residuals is a list of generator sets
    (as polynomial dicts over the original variables, with a context of fixed
    trailing values) describing any part of the variety the rational search
    could not finish; residuals empty means the point list is the complete
    variety over the algebraic closure.
    """
    if nvars == 0:
        if any(poly_clean(p) for p in polys):
            return [], []
        return [()], []
    gb = buchberger(polys, nvars, key=lex_key, spair_cap=spair_cap)
    if not gb:
        # no constraints: positive-dimensional, the whole affine space
        return [], [{"generators": [], "free_vars": nvars}]
    if any(leading(g, lex_key)[0] == (0,) * nvars for g in gb):
        return [], []
    last = nvars - 1
    univs = [cf for g in gb if (cf := _univar_coeffs(g, last)) is not None]
    if not univs:
        return [], [{"generators": gb, "free_vars": None}]
    # intersect root sets of all univariate members
    root_sets = []
    residual_deg = 0
    for cf in univs:
        roots, leftover = rational_roots(cf)
        root_sets.append(set(roots))
        residual_deg = max(residual_deg, 0 if leftover == 0 else leftover)
    common = set.intersection(*root_sets)
    points = []
    residuals = []
    if residual_deg:
        residuals.append({"generators": gb, "free_vars": 0,
                          "note": f"nonrational eliminant factor of degree {residual_deg}"})
    for r in sorted(common):
        sub = [_drop_var(_substitute(g, last, r), last) for g in gb]
        pts, res = solve_points(sub, nvars - 1, spair_cap)
        points.extend(_lift_point(p, last, r) for p in pts)
        for item in res:
            item = dict(item)
            item["fixed"] = {last: r, **item.get("fixed", {})}
            residuals.append(item)
    return sorted(points), residuals
