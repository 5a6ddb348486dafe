"""Classification of Hom-Lie structures on a built algebra.

The unknown is an even linear map sigma on the nonpositive part.  Its free
entries are cut down by the parity mask (sigma is even) together with one of
three degree masks:

* ``graded`` (default) — sigma preserves the Z-degree, sigma(g_d) in g_d.
  This is the hypothesis under which the triviality certificate is issued.
* ``filtration`` — sigma can only lower the degree, sigma(g_d) in the sum
  of g_e for e <= d.
* ``free`` — parity only; exploration mode.

The distinction matters: on the degree-truncated algebras the filtration
relaxation is strictly weaker.  E16 is the witness: its grading element x
lies outside the derived algebra of the nonpositive part, and the degree -2
generator annihilates every basis element except x, so x |-> x + c·1
extends to an invertible multiplicative family that lowers degree.  The
family is not degree preserving, and it does not survive against positive
degrees (bracketing 1 against degree-one elements is nonzero), which are
out of scope here.  The ``graded`` certificate is the faithful truncated
statement; ``filtration`` runs report whatever they find.

The pipeline has three exact stages:

1. linear stage — the sigma-twisted Jacobi identity is linear in sigma;
   one vector equation per basis triple x <= y <= z gives a sparse system
   whose nullspace is computed by fraction-free elimination (an ordinary
   fraction-arithmetic eliminator is available as an independent
   cross-check of the dimension);
2. quadratic stage — multiplicativity sigma[x,y] = [sigma x, sigma y],
   restricted to the nullspace parametrization, gives polynomials of degree
   at most two in the nullspace parameters; their common zeros are
   enumerated through Groebner bases;
3. invertibility filter — under the graded or filtration masks sigma is
   block triangular, so it is invertible exactly when every diagonal degree
   block has nonzero determinant.

The classification certificate is granted when the variety enumeration is
complete and the only invertible solution is the identity.  Declared stub
components (the bracket-free degree -3 part of E38) are excluded from the
unknown map; identity there is forced vacuously.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from . import groebner
from .algebra import run_core_checks
from .builders import build
from .errors import DomainError, InconclusiveError
from .linalg import EchelonFF, EchelonQQ, SpanSolver


MASK_MODES = ("graded", "filtration", "free")


class CandidateSpace:
    """Index bookkeeping for the free entries of the unknown even map."""

    def __init__(self, alg, mode="graded"):
        if mode not in MASK_MODES:
            raise DomainError(f"unknown mask mode {mode!r}")
        self.alg = alg
        self.mode = mode
        self.scope = [b.index for b in alg.basis
                      if b.degree not in alg.stub_degrees]
        allowed = {}
        for x in self.scope:
            rows = []
            for m in self.scope:
                if alg.parity(m) != alg.parity(x):
                    continue
                if mode == "graded" and alg.degree(m) != alg.degree(x):
                    continue
                if mode == "filtration" and alg.degree(m) > alg.degree(x):
                    continue
                rows.append(m)
            allowed[x] = rows
        self.allowed_rows = allowed
        self.unknowns = [(m, x) for x in self.scope for m in allowed[x]]
        self.col_of = {u: n for n, u in enumerate(self.unknowns)}

    @property
    def n_unknowns(self):
        return len(self.unknowns)

    def identity_vector(self):
        return {self.col_of[(i, i)]: Fraction(1) for i in self.scope}


class CandidateMap:
    """A concrete even map given by its sparse matrix entries (row, col)."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = {k: Fraction(v) for k, v in entries.items() if v}

    @classmethod
    def from_vector(cls, space, vec):
        return cls({space.unknowns[c]: v for c, v in vec.items()})

    @classmethod
    def identity(cls, space):
        return cls({(i, i): Fraction(1) for i in space.scope})

    def column(self, x):
        return [(m, v) for (m, c), v in sorted(self.entries.items()) if c == x]

    def columns(self):
        out = {}
        for (m, x), v in self.entries.items():
            out.setdefault(x, []).append((m, v))
        for x in out:
            out[x].sort()
        return out

    def is_identity_on(self, indices):
        want = {(i, i): Fraction(1) for i in indices}
        return self.entries == want

    def sorted_items(self):
        return sorted(self.entries.items())

    def __eq__(self, other):
        return isinstance(other, CandidateMap) and self.entries == other.entries


class LinearSystem:
    """The sigma-twisted Jacobi constraints, regenerable row stream.

    Each produced row is tagged with its generating triple and output
    coordinate.  Triples whose three inner brackets all vanish contribute
    nothing for any sigma and are skipped.
    """

    def __init__(self, alg, space):
        self.alg = alg
        self.space = space

    def iter_rows(self):
        alg = self.alg
        space = self.space
        scope = space.scope
        pb = alg.pair_bracket
        par = [alg.basis[i].parity for i in range(alg.dim)]
        allowed = space.allowed_rows
        col_of = space.col_of
        for a in range(len(scope)):
            x = scope[a]
            for b in range(a, len(scope)):
                y = scope[b]
                w_xy = pb(x, y)
                for c in range(b, len(scope)):
                    z = scope[c]
                    w_yz = pb(y, z)
                    w_zx = pb(z, x)
                    if not (w_yz or w_zx or w_xy):
                        continue
                    eq = {}
                    for src, w, sgn in (
                            (x, w_yz, -1 if (par[x] and par[z]) else 1),
                            (y, w_zx, -1 if (par[y] and par[x]) else 1),
                            (z, w_xy, -1 if (par[z] and par[y]) else 1)):
                        if not w:
                            continue
                        for k, ck in w.items():
                            for m in allowed[src]:
                                for t, c2 in pb(m, k).items():
                                    col = col_of[(m, src)]
                                    row = eq.setdefault(t, {})
                                    s = row.get(col, Fraction(0)) + sgn * ck * c2
                                    if s:
                                        row[col] = s
                                    elif col in row:
                                        del row[col]
                    for t in sorted(eq):
                        if eq[t]:
                            yield (x, y, z), t, eq[t]

    def residual_at(self, vector):
        """Number of rows whose evaluation at a concrete unknown vector is
        nonzero (0 means the vector satisfies every constraint)."""
        bad = 0
        for _tag, _t, row in self.iter_rows():
            s = Fraction(0)
            for c, v in row.items():
                if c in vector:
                    s += v * vector[c]
            if s:
                bad += 1
        return bad


def assemble_homjacobi(alg, space):
    return LinearSystem(alg, space)


def nullspace(system, strategy="fraction-free"):
    """Nullspace basis of the linear stage.  Rows are deduplicated by their
    primitive normal form before elimination; pivoting is positional."""
    space = system.space
    n = space.n_unknowns
    if strategy == "fraction-free":
        ech = EchelonFF(n)
    elif strategy == "fractions":
        ech = EchelonQQ(n)
    else:
        raise DomainError(f"unknown elimination strategy {strategy!r}")
    seen = set()
    for _tag, _t, row in system.iter_rows():
        den = 1
        for v in row.values():
            den = den * v.denominator // gcd(den, v.denominator)
        ints = {c: int(v * den) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if ints[min(ints)] < 0:
            g = -g
        key = tuple(sorted((c, v // g) for c, v in ints.items()))
        if key in seen:
            continue
        seen.add(key)
        ech.add_row(row)
    basis = ech.nullspace_basis()
    return [CandidateMap.from_vector(space, vec) for vec in basis]


class QuadraticSystem:
    """Multiplicativity constraints over a nullspace parametrization
    sigma = sum_k c_k B_k, as polynomials of degree <= 2 in c."""

    def __init__(self, nvars, polys):
        self.nvars = nvars
        self.polys = polys  # list of ((x, y, t), poly-dict)

    def distinct_polys(self):
        out = []
        seen = set()
        for _tag, p in self.polys:
            p = groebner.normalize(p)
            if not p:
                continue
            sig = tuple(sorted(p.items()))
            if sig not in seen:
                seen.add(sig)
                out.append(p)
        return out


def assemble_multiplicativity(alg, space, basis_maps):
    """sigma[x,y] - [sigma x, sigma y] expanded over the output basis for all
    scope pairs x <= y."""
    d = len(basis_maps)
    pb = alg.pair_bracket
    cols = [bm.columns() for bm in basis_maps]
    scope = space.scope
    polys = []
    for a in range(len(scope)):
        x = scope[a]
        for b in range(a, len(scope)):
            y = scope[b]
            acc = {}

            def put(t, mono, coeff):
                p = acc.setdefault(t, {})
                s = p.get(mono, Fraction(0)) + coeff
                if s:
                    p[mono] = s
                elif mono in p:
                    del p[mono]

            w = pb(x, y)
            for k, ck in w.items():
                for r in range(d):
                    for m, v in cols[r].get(k, ()):
                        mono = tuple(1 if t == r else 0 for t in range(d))
                        put(m, mono, ck * v)
            for r in range(d):
                colx = cols[r].get(x, ())
                if not colx:
                    continue
                for s in range(d):
                    coly = cols[s].get(y, ())
                    if not coly:
                        continue
                    mono = tuple((1 if t == r else 0) + (1 if t == s else 0)
                                 for t in range(d))
                    for m, vm in colx:
                        for n2, vn in coly:
                            for t, c2 in pb(m, n2).items():
                                put(t, mono, -vm * vn * c2)
            for t in sorted(acc):
                if acc[t]:
                    polys.append(((x, y, t), acc[t]))
    return QuadraticSystem(d, polys)


@dataclass
class VarietyResult:
    points: list  # tuples of Fractions over the nullspace parameters
    residuals: list
    generators: list  # reduced grevlex basis, for the report
    status: str  # "complete" | "residual"


def solve_variety(qsys, spair_cap=groebner.DEFAULT_SPAIR_CAP,
                  param_cap=groebner.DEFAULT_PARAM_CAP):
    """Rational points plus any residual components of the multiplicativity
    variety.  The generating set is first row-reduced inside the finite
    space of degree <= 2 monomials, which leaves at most dim-of-that-space
    generators without changing the ideal."""
    d = qsys.nvars
    if d > param_cap:
        raise InconclusiveError(
            f"{d} nullspace parameters exceed the configured cap {param_cap}")
    polys = qsys.distinct_polys()
    if not polys:
        if d == 0:
            return VarietyResult([()], [], [], "complete")
        return VarietyResult([], [{"generators": [], "free_vars": d}], [],
                             "residual")
    monos = sorted({m for p in polys for m in p},
                   key=groebner.grevlex_key, reverse=True)
    colix = {m: n for n, m in enumerate(monos)}
    ech = {}
    for p in polys:
        row = {colix[m]: c for m, c in p.items()}
        while row:
            lead = min(row)
            piv = ech.get(lead)
            if piv is None:
                inv = row[lead]
                ech[lead] = {c: v / inv for c, v in row.items()}
                break
            f = row[lead]
            row = {c: v for c in row.keys() | piv.keys()
                   if (v := row.get(c, Fraction(0)) - f * piv.get(c, Fraction(0)))}
    reduced = [groebner.normalize({monos[c]: v for c, v in row.items()})
               for _, row in sorted(ech.items())]
    gb = groebner.buchberger(reduced, d, key=groebner.grevlex_key,
                             spair_cap=spair_cap)
    points, residuals = groebner.solve_points(gb, d, spair_cap=spair_cap)
    status = "complete" if not residuals else "residual"
    return VarietyResult(points, residuals, gb, status)


def point_to_map(space, basis_maps, point):
    entries = {}
    for c, bm in zip(point, basis_maps):
        if not c:
            continue
        for k, v in bm.entries.items():
            s = entries.get(k, Fraction(0)) + c * v
            if s:
                entries[k] = s
            elif k in entries:
                del entries[k]
    return CandidateMap(entries)


def invertibility_filter(maps, alg, space):
    """Split solution maps into invertible / non-invertible by the exact
    determinants of the diagonal degree blocks.  Only valid for block
    triangular maps (graded or filtration mask); refuses otherwise."""
    if space.mode == "free":
        raise DomainError("invertibility filter requires a degree mask "
                          "(graded or filtration)")
    from .linalg import det
    degrees = sorted({alg.degree(i) for i in space.scope})
    invertible, non_invertible = [], []
    for cm in maps:
        dets = []
        ok = True
        for dg in degrees:
            idx = [i for i in space.scope if alg.degree(i) == dg]
            block = [[cm.entries.get((r, c), Fraction(0)) for c in idx]
                     for r in idx]
            dval = det(block)
            dets.append((dg, dval))
            if dval == 0:
                ok = False
        (invertible if ok else non_invertible).append((cm, dets))
    return invertible, non_invertible


@dataclass
class SolutionReport:
    algebra: str
    dim: int
    scope_dim: int
    config: dict
    checks: list
    n_unknowns: int
    nullspace_dim: int
    nullspace_basis: list  # CandidateMap
    variety: VarietyResult | None
    invertible: list  # (CandidateMap, block det witnesses)
    non_invertible: list
    trivial_certificate: bool | None
    notes: list = field(default_factory=list)


def classify(algebra_id, mode="graded", linear_only=False,
             spair_cap=groebner.DEFAULT_SPAIR_CAP,
             param_cap=groebner.DEFAULT_PARAM_CAP):
    """Full pipeline for one algebra; builds and checks internally."""
    alg = build(algebra_id)
    checks = run_core_checks(alg)
    if not all(c.passed for c in checks):
        failed = [c.name for c in checks if not c.passed]
        raise DomainError(f"{algebra_id}: structural checks failed: {failed}")

    space = CandidateSpace(alg, mode=mode)
    system = assemble_homjacobi(alg, space)
    basis_maps = nullspace(system, strategy="fraction-free")
    d = len(basis_maps)

    notes = []
    if alg.stub_degrees:
        notes.append("stub degrees excluded from the unknown map: "
                     + ", ".join(str(t) for t in sorted(alg.stub_degrees)))

    config = {
        "mask_mode": mode,
        "parity_mask": True,
        "pivot_rule": "row-order/min-column",
        "elimination": "fraction-free",
        "groebner_order": "grevlex",
        "spair_cap": spair_cap,
        "param_cap": param_cap,
    }

    ident_span = SpanSolver([{k: v for k, v in bm.entries.items()}
                             for bm in basis_maps])
    ident = CandidateMap.identity(space)
    id_coords = ident_span.coords(ident.entries)
    if id_coords is None:
        raise DomainError(f"{algebra_id}: identity missing from the "
                          "linear-stage nullspace")

    if linear_only:
        return SolutionReport(algebra_id, alg.dim, len(space.scope), config,
                              checks, space.n_unknowns, d, basis_maps, None,
                              [], [], None, notes)

    qsys = assemble_multiplicativity(alg, space, basis_maps)
    variety = solve_variety(qsys, spair_cap=spair_cap, param_cap=param_cap)

    maps = [point_to_map(space, basis_maps, pt) for pt in variety.points]
    if mode == "free":
        report_inv, report_noninv = [], []
        certificate = None
        notes.append("invertibility filter skipped: no degree mask")
    else:
        report_inv, report_noninv = invertibility_filter(maps, alg, space)
        zero_found = any(not cm.entries for cm, _ in report_noninv)
        id_found = any(cm.is_identity_on(space.scope) for cm, _ in report_inv)
        if variety.status == "complete" and (not zero_found or not id_found):
            raise DomainError(f"{algebra_id}: expected the zero map among "
                              "non-invertible and the identity among "
                              "invertible solutions")
        if variety.status != "complete":
            notes.append("variety has residual non-point components; "
                         "certificate withheld")
        certificate = (variety.status == "complete"
                       and len(report_inv) == 1
                       and report_inv[0][0].is_identity_on(space.scope))

    return SolutionReport(algebra_id, alg.dim, len(space.scope), config,
                          checks, space.n_unknowns, d, basis_maps, variety,
                          report_inv, report_noninv, certificate, notes)
