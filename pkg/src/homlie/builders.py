"""Construct the nonpositive parts of the five exceptional simple Lie
superalgebras as structure-constant tables, by evaluating every pairwise
bracket inside a concrete realization and re-expressing the result in the
declared basis.

Realizations used:

* E(5,10) / E(3,6): divergence-free polynomial vector fields in five even
  variables (degree 0 and -2) and closed constant-coefficient 2-forms
  (degree -1), with the complementary-index bracket between forms.
* E(3,8): same components as E(3,6) in degrees 0, -1, -2, plus a declared
  two-dimensional degree -3 component that carries no bracket data (it is
  excluded from solver constraints and generation checks).
* E(1,6): polynomials in one even and six odd variables of polynomial degree
  at most 2, under the contact bracket.
* E(4,4): an 8x8 matrix model of the centrally extended periplectic algebra
  acting on its natural 4|4-dimensional module; the skew lower-left blocks
  are twisted by their Hodge duals in the upper-right block, which is what
  makes the central extension nontrivial.

A bracket that leaves the declared span raises BuildError naming the pair,
so the realization itself is the convention oracle.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .algebra import BasisElement, GradedSuperalgebra
from .errors import BuildError, DomainError
from .linalg import SpanSolver
from .superpoly import (SuperPoly, TwoForm, VectorField, contact_bracket,
                        exterior_d, form_bracket, lie_derivative_2form,
                        permutation_sign)

ALGEBRA_IDS = ("E44", "E510", "E36", "E38", "E16")


# ---------------------------------------------------------------------------
# E(4,4) matrix model

class Mat8:
    """Sparse 8x8 rational matrix; indices 1..8, primed index i' = i+4."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = {}
        if entries:
            for k, v in entries.items():
                v = Fraction(v)
                if v:
                    self.entries[k] = v

    def __add__(self, other):
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        m = Mat8()
        m.entries = out
        return m

    def scale(self, c):
        return Mat8({k: c * v for k, v in self.entries.items()})

    def mul(self, other):
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, c), v in self.entries.items():
            for c2, v2 in by_row.get(c, ()):
                k = (r, c2)
                s = out.get(k, Fraction(0)) + v * v2
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        m = Mat8()
        m.entries = out
        return m

    def act(self, vec):
        out = {}
        for (r, c), v in self.entries.items():
            if c in vec.entries:
                s = out.get(r, Fraction(0)) + v * vec.entries[c]
                if s:
                    out[r] = s
                elif r in out:
                    del out[r]
        w = Vec8()
        w.entries = out
        return w


class Vec8:
    """Sparse vector in the natural 4|4-dimensional module."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = {k: Fraction(v) for k, v in (entries or {}).items()
                        if Fraction(v)}


def _unit(r, c):
    return Mat8({(r, c): 1})


def _prime(i):
    return i + 4


def hodge_dual_skew(c):
    """Hodge dual of a skew 4x4 pattern given on ordered pairs i < j,
    normalized so that applying the dual twice returns the input."""
    out = {}
    for a, b in combinations((1, 2, 3, 4), 2):
        s = Fraction(0)
        for (i, j), v in c.items():
            sg = permutation_sign((a, b, i, j))
            if sg:
                s += sg * Fraction(v)
        if s:
            out[(a, b)] = s
    return out


def _e44_A(i, j):
    return _unit(i, j) + _unit(_prime(j), _prime(i)).scale(-1)


def _e44_B(i, j):
    if i == j:
        return _unit(i, _prime(i))
    return _unit(i, _prime(j)) + _unit(j, _prime(i))


def _e44_C(i, j):
    dual = hodge_dual_skew({(i, j): 1})
    m = _unit(_prime(i), j) + _unit(_prime(j), i).scale(-1)
    for (k, l), v in dual.items():
        m = m + (_unit(k, _prime(l)) + _unit(l, _prime(k)).scale(-1)).scale(-v)
    return m


def _e44_H(i):
    return (_unit(i, i) + _unit(i + 1, i + 1).scale(-1)
            + _unit(_prime(i), _prime(i)).scale(-1)
            + _unit(_prime(i) + 1, _prime(i) + 1))


def _e44_entries():
    entries = []
    for i in range(1, 5):
        for j in range(1, 5):
            if i != j:
                entries.append((f"A_{i}{j}", 0, 0, _e44_A(i, j)))
    for i in range(1, 5):
        for j in range(i, 5):
            entries.append((f"B_{i}{j}", 1, 0, _e44_B(i, j)))
    for i, j in combinations((1, 2, 3, 4), 2):
        entries.append((f"C_{i}{j}", 1, 0, _e44_C(i, j)))
    entries.append(("I", 0, 0, Mat8({(r, r): 1 for r in range(1, 9)})))
    for i in range(1, 4):
        entries.append((f"H_{i}", 0, 0, _e44_H(i)))
    for i in range(1, 5):
        entries.append((f"v_{i}", 0, -1, Vec8({i: 1})))
    for i in range(1, 5):
        entries.append((f"v_{i}'", 1, -1, Vec8({_prime(i): 1})))
    return entries


def _e44_flatten(obj):
    if isinstance(obj, Mat8):
        return {("m", r, c): v for (r, c), v in obj.entries.items()}
    return {("v", r): v for r, v in obj.entries.items()}


def _e44_bracket(a, pa, b, pb):
    if isinstance(a, Mat8) and isinstance(b, Mat8):
        sign = -1 if (pa and pb) else 1
        return a.mul(b) + b.mul(a).scale(-sign)
    if isinstance(a, Mat8):
        return a.act(b)
    if isinstance(b, Mat8):
        sign = -1 if (pa and pb) else 1
        return b.act(a).scale(-sign)
    return Vec8()  # module vectors bracket to zero: the gradation has depth 1


# ---------------------------------------------------------------------------
# E(5,10) / E(3,6) vector-field-and-form model

def _xd(i, j):
    return VectorField({j: SuperPoly.even_var(i)})


def _h_field(diag):
    comps = {}
    for i, c in diag.items():
        if c:
            comps[i] = SuperPoly.even_var(i).scale(c)
    return VectorField(comps)


def _d_form(i, j):
    return TwoForm({(i, j): SuperPoly.constant(1)})


def _p_field(i):
    return VectorField({i: SuperPoly.constant(1)})


def _e510_entries():
    entries = []
    for i in range(1, 6):
        for j in range(1, 6):
            if i != j:
                entries.append((f"x_{i}d_{j}", 0, 0, _xd(i, j)))
    for m in range(1, 5):
        entries.append((f"h_{m}", 0, 0, _h_field({m: 1, m + 1: -1})))
    for i, j in combinations(range(1, 6), 2):
        entries.append((f"d_{i}{j}", 1, -1, _d_form(i, j)))
    for i in range(1, 6):
        entries.append((f"p_{i}", 0, -2, _p_field(i)))
    return entries


def _e36_entries():
    entries = []
    for i in range(1, 4):
        for j in range(1, 4):
            if i != j:
                entries.append((f"x_{i}d_{j}", 0, 0, _xd(i, j)))
    entries.append(("x_4d_5", 0, 0, _xd(4, 5)))
    entries.append(("x_5d_4", 0, 0, _xd(5, 4)))
    entries.append(("h_1", 0, 0, _h_field({1: 1, 2: -1})))
    entries.append(("h_2", 0, 0, _h_field({2: 1, 3: -1})))
    entries.append(("h_3", 0, 0, _h_field({4: 1, 5: -1})))
    entries.append(("h_4", 0, 0, _h_field({2: -1, 3: -1, 5: 2})))
    for i in range(1, 4):
        for j in (4, 5):
            entries.append((f"d_{i}{j}", 1, -1, _d_form(i, j)))
    for i in range(1, 4):
        entries.append((f"p_{i}", 0, -2, _p_field(i)))
    return entries


def _form_model_flatten(obj):
    if isinstance(obj, VectorField):
        return {("vf", i, m): c
                for i, p in obj.components.items() for m, c in p.terms.items()}
    return {("fm", i, j, m): c
            for (i, j), p in obj.comps.items() for m, c in p.terms.items()}


def _form_model_bracket(a, pa, b, pb):
    if isinstance(a, VectorField) and isinstance(b, VectorField):
        return a.bracket(b)
    if isinstance(a, VectorField):
        return lie_derivative_2form(a, b)
    if isinstance(b, VectorField):
        return lie_derivative_2form(b, a).scale(-1)
    return form_bracket(a, b)


# ---------------------------------------------------------------------------
# E(1,6) contact model

def _e16_entries():
    entries = [("x", 0, 0, SuperPoly.even_var(1))]
    for i, j in combinations(range(1, 7), 2):
        entries.append((f"xi_{i}xi_{j}", 0, 0, SuperPoly.odd_var(i, j)))
    for i in range(1, 7):
        entries.append((f"xi_{i}", 1, -1, SuperPoly.odd_var(i)))
    entries.append(("1", 0, -2, SuperPoly.constant(1)))
    return entries


def _e16_flatten(obj):
    return {("p", m): c for m, c in obj.terms.items()}


def _e16_bracket(a, pa, b, pb):
    return contact_bracket(a, b)


# ---------------------------------------------------------------------------
# Generic assembly

def _is_zero(obj):
    if isinstance(obj, (Mat8, Vec8)):
        return not obj.entries
    if isinstance(obj, VectorField):
        return obj.is_zero()
    if isinstance(obj, (TwoForm, SuperPoly)):
        return obj.is_zero()
    raise BuildError(f"unknown realization object {type(obj)!r}")


def _assemble(name, entries, bracket_fn, flatten_fn, consistent,
              stub_entries=()):
    flats = [flatten_fn(obj) for (_, _, _, obj) in entries]
    solver = SpanSolver(flats)
    if solver.rank != len(entries):
        raise BuildError(f"{name}: declared basis is not linearly independent")

    basis = [BasisElement(n, label, parity, degree)
             for n, (label, parity, degree, _) in enumerate(entries)]
    n_live = len(entries)
    for label, parity, degree in stub_entries:
        basis.append(BasisElement(len(basis), label, parity, degree))

    brackets = {}
    for i in range(n_live):
        li, pi, _di, oi = entries[i]
        for j in range(i, n_live):
            lj, pj, _dj, oj = entries[j]
            res = bracket_fn(oi, pi, oj, pj)
            if _is_zero(res):
                continue
            coords = solver.coords(flatten_fn(res))
            if coords is None:
                raise BuildError(
                    f"{name}: [{li}, {lj}] leaves the declared span")
            brackets[(i, j)] = coords

    stub_degrees = frozenset(d for (_, _, d) in stub_entries)
    return GradedSuperalgebra(name, basis, brackets, consistent, stub_degrees)


def realization(algebra_id):
    """The labeled realization objects behind a builder, for convention-level
    verification (closedness, divergence, independence)."""
    if algebra_id == "E44":
        return _e44_entries()
    if algebra_id == "E510":
        return _e510_entries()
    if algebra_id in ("E36", "E38"):
        return _e36_entries()
    if algebra_id == "E16":
        return _e16_entries()
    raise DomainError(f"unknown algebra id {algebra_id!r}")


def _check_e510_family(name, entries):
    """Build-time realization constraints: odd generators are closed forms,
    even generators are divergence free."""
    for label, parity, degree, obj in entries:
        if parity == 1:
            if not exterior_d(obj).is_zero():
                raise BuildError(f"{name}: d({label}) != 0")
        else:
            if not obj.divergence().is_zero():
                raise BuildError(f"{name}: divergence({label}) != 0")


@lru_cache(maxsize=None)
def build(algebra_id):
    """Build one of E44, E510, E36, E38, E16 as a GradedSuperalgebra."""
    if algebra_id == "E44":
        return _assemble("E44", _e44_entries(), _e44_bracket, _e44_flatten,
                         consistent=False)
    if algebra_id == "E510":
        entries = _e510_entries()
        _check_e510_family("E510", entries)
        return _assemble("E510", entries, _form_model_bracket,
                         _form_model_flatten, consistent=True)
    if algebra_id == "E36":
        entries = _e36_entries()
        _check_e510_family("E36", entries)
        return _assemble("E36", entries, _form_model_bracket,
                         _form_model_flatten, consistent=True)
    if algebra_id == "E38":
        entries = _e36_entries()
        _check_e510_family("E38", entries)
        stubs = [("dx_4", 1, -3), ("dx_5", 1, -3)]
        return _assemble("E38", entries, _form_model_bracket,
                         _form_model_flatten, consistent=True,
                         stub_entries=stubs)
    if algebra_id == "E16":
        return _assemble("E16", _e16_entries(), _e16_bracket, _e16_flatten,
                         consistent=True)
    raise DomainError(f"unknown algebra id {algebra_id!r}; "
                      f"expected one of {', '.join(ALGEBRA_IDS)}")


def e36_into_e510():
    """The embedding of the E36 basis into E510 as coefficient vectors over
    the E510 basis (E36 is a subalgebra of E510 in the same realization)."""
    e510 = build("E510")
    e36 = build("E36")
    solver = SpanSolver([_form_model_flatten(obj)
                         for (_, _, _, obj) in _e510_entries()])
    mapping = {}
    for label, _p, _d, obj in _e36_entries():
        coords = solver.coords(_form_model_flatten(obj))
        if coords is None:
            raise BuildError(f"E36 element {label} does not lie in E510")
        mapping[e36.label_index[label]] = coords
    return e510, e36, mapping
