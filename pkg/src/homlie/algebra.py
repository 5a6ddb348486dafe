"""Finite-dimensional Z2 x Z graded algebras given by sparse structure
constants, plus the structural checkers every built algebra must pass.

The bracket table is stored for index pairs i <= j only; values for i > j
follow from super-antisymmetry [x,y] = -(-1)^{|x||y|}[y,x].  Diagonal pairs
(i,i) are kept explicitly because odd squares need not vanish.  Hand-made
tables may store arbitrary pairs; ``check_antisymmetry`` then verifies the
redundant entries agree before anything else trusts them.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .linalg import EchelonFF


@dataclass(frozen=True)
class BasisElement:
    index: int
    label: str
    parity: int  # 0 even, 1 odd
    degree: int


@dataclass(frozen=True)
class AlgebraElement:
    """Sparse coefficient vector over a fixed basis."""

    coeffs: tuple  # sorted tuple of (index, Fraction), no zeros

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted((i, Fraction(c)) for i, c in d.items() if c)))

    def as_dict(self):
        return dict(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return AlgebraElement(())
        return AlgebraElement(tuple((i, c * v) for i, v in self.coeffs))

    def __add__(self, other):
        out = dict(self.coeffs)
        for i, v in other.coeffs:
            s = out.get(i, Fraction(0)) + v
            if s:
                out[i] = s
            elif i in out:
                del out[i]
        return AlgebraElement.from_dict(out)

    def __sub__(self, other):
        return self + other.scale(-1)


class GradedSuperalgebra:
    """Bracket table over an indexed, labeled, Z2 x Z graded basis.

    ``consistent`` declares whether parity is expected to equal degree mod 2
    throughout (checked, not assumed).  ``stub_degrees`` lists declared
    degrees whose component carries no bracket data and is excluded from
    solver constraints and generation checks.
    """

    def __init__(self, name, basis, brackets, consistent, stub_degrees=()):
        self.name = name
        self.basis = tuple(basis)
        for n, b in enumerate(self.basis):
            if b.index != n:
                raise DomainError(f"basis indices must be contiguous, got {b}")
        labels = [b.label for b in self.basis]
        if len(set(labels)) != len(labels):
            raise DomainError("basis labels must be unique")
        self.label_index = {b.label: b.index for b in self.basis}
        self.consistent = bool(consistent)
        self.stub_degrees = frozenset(stub_degrees)
        self.brackets = {}
        dim = len(self.basis)
        for (i, j), terms in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DomainError(f"bracket pair ({i},{j}) out of range")
            clean = {k: Fraction(c) for k, c in terms.items() if c}
            for k in clean:
                if not 0 <= k < dim:
                    raise DomainError(f"bracket target {k} out of range")
            if clean:
                self.brackets[(i, j)] = clean
        self._directed = None

    @property
    def dim(self):
        return len(self.basis)

    def parity(self, i):
        return self.basis[i].parity

    def degree(self, i):
        return self.basis[i].degree

    def degrees(self):
        return sorted({b.degree for b in self.basis})

    def indices_of_degree(self, d):
        return [b.index for b in self.basis if b.degree == d]

    def min_degree(self):
        return min(b.degree for b in self.basis)

    def _sign(self, i, j):
        return -1 if (self.basis[i].parity and self.basis[j].parity) else 1

    def pair_bracket(self, i, j):
        """[e_i, e_j] as a dict index -> Fraction, for any argument order."""
        if self._directed is None:
            table = {}
            for (a, b), terms in self.brackets.items():
                table[(a, b)] = dict(terms)
                if a != b and (b, a) not in self.brackets:
                    s = -self._sign(a, b)
                    table[(b, a)] = {k: s * c for k, c in terms.items()}
            self._directed = table
        return self._directed.get((i, j), {})

    def bracket(self, a, b):
        """Bilinear extension of the structure constants to elements."""
        out = {}
        for i, ca in a.coeffs:
            for j, cb in b.coeffs:
                for k, c in self.pair_bracket(i, j).items():
                    s = out.get(k, Fraction(0)) + ca * cb * c
                    if s:
                        out[k] = s
                    elif k in out:
                        del out[k]
        return AlgebraElement.from_dict(out)

    def element(self, label, c=1):
        return AlgebraElement.from_dict({self.label_index[label]: Fraction(c)})

    def format_element(self, elem):
        if elem.is_zero():
            return "0"
        parts = []
        for i, c in elem.coeffs:
            parts.append(f"{c}·{self.basis[i].label}")
        return " + ".join(parts)

    def __eq__(self, other):
        return (isinstance(other, GradedSuperalgebra)
                and self.name == other.name
                and self.basis == other.basis
                and self.brackets == other.brackets
                and self.consistent == other.consistent
                and self.stub_degrees == other.stub_degrees)


@dataclass
class CheckReport:
    name: str
    passed: bool
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_doc(self):
        return {"name": self.name, "passed": self.passed,
                "witnesses": [list(w) if isinstance(w, tuple) else w
                              for w in self.witnesses],
                "details": self.details}


def check_antisymmetry(alg):
    """Verify the stored table is compatible with super-antisymmetry: even
    diagonal entries vanish, and when both (i,j) and (j,i) are stored they
    agree up to the sign rule."""
    witnesses = []
    for (i, j), terms in sorted(alg.brackets.items()):
        if i == j and alg.parity(i) == 0 and terms:
            witnesses.append((i, i))
        if i != j and (j, i) in alg.brackets:
            mirror = alg.brackets[(j, i)]
            s = -alg._sign(i, j)
            expect = {k: s * c for k, c in terms.items()}
            if mirror != expect:
                witnesses.append((min(i, j), max(i, j)))
    witnesses = sorted(set(witnesses))
    stored_upper = sum(1 for (i, j) in alg.brackets if i <= j)
    return CheckReport("antisymmetry", not witnesses, witnesses,
                       {"stored_pairs_upper": stored_upper})


def check_jacobi(alg):
    """Graded Jacobi identity over all basis triples i <= j <= k.  The other
    orderings differ from these by an overall sign once antisymmetry holds."""
    n = alg.dim
    failing = []
    for i in range(n):
        pi = alg.parity(i)
        ei = AlgebraElement(((i, Fraction(1)),))
        for j in range(i, n):
            pj = alg.parity(j)
            ej = AlgebraElement(((j, Fraction(1)),))
            for k in range(j, n):
                pk = alg.parity(k)
                ek = AlgebraElement(((k, Fraction(1)),))
                s1 = -1 if (pi and pk) else 1
                s2 = -1 if (pj and pi) else 1
                s3 = -1 if (pk and pj) else 1
                res = (alg.bracket(ei, alg.bracket(ej, ek)).scale(s1)
                       + alg.bracket(ej, alg.bracket(ek, ei)).scale(s2)
                       + alg.bracket(ek, alg.bracket(ei, ej)).scale(s3))
                if not res.is_zero():
                    failing.append(((i, j, k), alg.format_element(res)))
                    if len(failing) >= 5:
                        return CheckReport("jacobi", False, failing,
                                           {"triples": "truncated"})
    total = n * (n + 1) * (n + 2) // 6
    return CheckReport("jacobi", not failing, failing, {"triples": total})


def check_grading_parity(alg):
    """Degree and parity additivity of every stored entry, absent entries for
    pairs below the minimum degree, and the consistency flag (parity equal to
    degree mod 2) with its witness set."""
    witnesses = []
    mindeg = alg.min_degree()
    for (i, j), terms in sorted(alg.brackets.items()):
        d = alg.degree(i) + alg.degree(j)
        p = (alg.parity(i) + alg.parity(j)) % 2
        if d < mindeg and terms:
            witnesses.append(("below_min_degree", i, j))
            continue
        for k in sorted(terms):
            if alg.degree(k) != d:
                witnesses.append(("degree", i, j, k))
            if alg.parity(k) != p:
                witnesses.append(("parity", i, j, k))
    inconsistent = [b.label for b in alg.basis
                    if b.parity != (b.degree % 2 + 2) % 2]
    passed = not witnesses and (not alg.consistent or not inconsistent)
    return CheckReport("grading_parity", passed, witnesses,
                       {"declared_consistent": alg.consistent,
                        "inconsistency_witnesses": inconsistent})


def check_transitivity(alg):
    """Exact kernel of g_0 -> Hom(g_{-1}, g) sending x to ad(x)|_{g_{-1}};
    passes when the kernel is zero."""
    g0 = alg.indices_of_degree(0)
    gm1 = alg.indices_of_degree(-1)
    col_of = {x: n for n, x in enumerate(g0)}
    ech = EchelonFF(len(g0))
    rows = {}
    for b in gm1:
        for x in g0:
            for t, c in alg.pair_bracket(x, b).items():
                rows.setdefault((b, t), {})[col_of[x]] = c
    for key in sorted(rows):
        ech.add_row(rows[key])
    kernel = ech.nullspace_basis()
    witnesses = []
    for vec in kernel:
        elem = AlgebraElement.from_dict({g0[c]: v for c, v in vec.items()})
        witnesses.append(alg.format_element(elem))
    return CheckReport("transitivity", not kernel, witnesses,
                       {"kernel_dim": len(kernel), "g0_dim": len(g0)})


def check_generation(alg):
    """span[g_0, g_{-1}] = g_{-1} and span[g_{-1}, g_{-1}] = g_{-2} (when a
    g_{-2} exists), by exact rank.  Stub components are out of scope."""
    g0 = alg.indices_of_degree(0)
    gm1 = alg.indices_of_degree(-1)
    details = {}
    ok = True

    pos1 = {b: n for n, b in enumerate(gm1)}
    ech1 = EchelonFF(len(gm1))
    for x in g0:
        for b in gm1:
            row = {pos1[t]: c for t, c in alg.pair_bracket(x, b).items()}
            if row:
                ech1.add_row(row)
    details["rank_g0_gm1"] = ech1.rank
    details["dim_gm1"] = len(gm1)
    ok = ok and ech1.rank == len(gm1)

    if -2 in alg.degrees() and -2 not in alg.stub_degrees:
        gm2 = alg.indices_of_degree(-2)
        pos2 = {b: n for n, b in enumerate(gm2)}
        ech2 = EchelonFF(len(gm2))
        for n, a in enumerate(gm1):
            for b in gm1[n:]:
                row = {pos2[t]: c for t, c in alg.pair_bracket(a, b).items()}
                if row:
                    ech2.add_row(row)
        details["rank_gm1_gm1"] = ech2.rank
        details["dim_gm2"] = len(gm2)
        ok = ok and ech2.rank == len(gm2)
    else:
        details["rank_gm1_gm1"] = None
        details["dim_gm2"] = 0

    return CheckReport("generation", ok, [], details)


def check_irreducibility(alg):
    """Optional extra check: the associative algebra generated by the g_0
    action on g_{-1} has full dimension (dim g_{-1})^2 exactly when the
    module is absolutely irreducible.  Not part of the acceptance gate."""
    gm1 = alg.indices_of_degree(-1)
    n = len(gm1)
    pos = {b: k for k, b in enumerate(gm1)}
    gens = []
    for x in alg.indices_of_degree(0):
        mat = {}
        for b in gm1:
            for t, c in alg.pair_bracket(x, b).items():
                mat[(pos[t], pos[b])] = c
        if mat:
            gens.append(mat)

    def matmul(m1, m2):
        by_row = {}
        for (r, c), v in m2.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, c), v in m1.items():
            for c2, v2 in by_row.get(c, ()):
                k = (r, c2)
                s = out.get(k, Fraction(0)) + v * v2
                if s:
                    out[k] = s
                elif k in out:
                    del out[k]
        return out

    def flat(m):
        return {r * n + c: v for (r, c), v in m.items()}

    ech = EchelonFF(n * n)
    span = []
    ident = {(i, i): Fraction(1) for i in range(n)}
    for m in [ident] + gens:
        if ech.add_row(flat(m)):
            span.append(m)
    frontier = list(span)
    while frontier:
        new = []
        for m in frontier:
            for g in gens:
                prod = matmul(m, g)
                if prod and ech.add_row(flat(prod)):
                    new.append(prod)
        frontier = new
    full = ech.rank == n * n
    return CheckReport("irreducibility", full, [],
                       {"generated_dim": ech.rank, "full_dim": n * n})


def run_core_checks(alg):
    """The five structural checks, in dependency order."""
    return [check_antisymmetry(alg), check_jacobi(alg),
            check_grading_parity(alg), check_transitivity(alg),
            check_generation(alg)]
