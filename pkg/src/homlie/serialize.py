"""Canonical serialization for algebras, fixtures and reports.

One self-describing JSON schema, versioned through ``format_version``.
Serialization is byte-deterministic: keys are sorted, separators fixed, and
every list is emitted in a canonical order, so two runs over identical
inputs produce identical files.  Rationals are stored as explicit
numerator/denominator pairs in lowest terms with positive denominator
(``fractions.Fraction`` guarantees both).
"""

import json
from fractions import Fraction

from .algebra import (BasisElement, GradedSuperalgebra, check_antisymmetry,
                      check_grading_parity)
from .errors import ParseError

FORMAT_VERSION = 1


def canonical_bytes(doc):
    return (json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n").encode()


def frac_pair(x):
    x = Fraction(x)
    return [x.numerator, x.denominator]


def algebra_to_doc(alg):
    basis = [{"index": b.index, "label": b.label, "parity": b.parity,
              "degree": b.degree} for b in alg.basis]
    brackets = []
    for (i, j) in sorted(alg.brackets):
        terms = [{"k": k, "num": c.numerator, "den": c.denominator}
                 for k, c in sorted(alg.brackets[(i, j)].items())]
        brackets.append({"i": i, "j": j, "terms": terms})
    return {
        "format_version": FORMAT_VERSION,
        "kind": "algebra",
        "name": alg.name,
        "consistent": alg.consistent,
        "stub_degrees": sorted(alg.stub_degrees),
        "basis": basis,
        "brackets": brackets,
    }


def _need(doc, key, types):
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    if not isinstance(doc[key], types):
        raise ParseError(f"field {key!r} has wrong type")
    return doc[key]


def doc_to_algebra(doc):
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    if doc.get("kind") != "algebra":
        raise ParseError(f"expected kind 'algebra', got {doc.get('kind')!r}")
    name = _need(doc, "name", str)
    consistent = _need(doc, "consistent", bool)
    stub = _need(doc, "stub_degrees", list)
    basis_docs = _need(doc, "basis", list)
    basis = []
    for n, b in enumerate(basis_docs):
        idx = _need(b, "index", int)
        if idx != n:
            raise ParseError(f"basis record {n}: index {idx} not contiguous")
        parity = _need(b, "parity", int)
        if parity not in (0, 1):
            raise ParseError(f"basis record {n}: parity must be 0 or 1")
        basis.append(BasisElement(idx, _need(b, "label", str), parity,
                                  _need(b, "degree", int)))
    labels = [b.label for b in basis]
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate basis labels")

    brackets = {}
    last = None
    for rec in _need(doc, "brackets", list):
        i = _need(rec, "i", int)
        j = _need(rec, "j", int)
        where = f"bracket record ({i},{j})"
        if i > j:
            raise ParseError(f"{where}: pairs must satisfy i <= j")
        if last is not None and (i, j) <= last:
            raise ParseError(f"{where}: records out of order")
        last = (i, j)
        terms = {}
        last_k = None
        for t in _need(rec, "terms", list):
            k = _need(t, "k", int)
            num = _need(t, "num", int)
            den = _need(t, "den", int)
            if den <= 0:
                raise ParseError(f"{where}: term k={k} has den <= 0")
            if num == 0:
                raise ParseError(f"{where}: term k={k} stores a zero")
            from math import gcd
            if gcd(num, den) != 1:
                raise ParseError(f"{where}: term k={k} not in lowest terms")
            if last_k is not None and k <= last_k:
                raise ParseError(f"{where}: terms out of order")
            last_k = k
            terms[k] = Fraction(num, den)
        if terms:
            brackets[(i, j)] = terms

    try:
        alg = GradedSuperalgebra(name, basis, brackets, consistent, stub)
    except Exception as exc:
        raise ParseError(str(exc)) from exc
    anti = check_antisymmetry(alg)
    if not anti.passed:
        raise ParseError(f"antisymmetry violated at pairs {anti.witnesses[:3]}")
    grading = check_grading_parity(alg)
    if not grading.passed:
        raise ParseError(f"grading/parity violated: {grading.witnesses[:3]}")
    return alg


def _poly_doc(poly):
    return [[list(m), c.numerator, c.denominator]
            for m, c in sorted(poly.items())]


def _residual_doc(res):
    out = {"generators": [_poly_doc(g) for g in res.get("generators", [])]}
    fv = res.get("free_vars")
    out["free_vars"] = fv
    if "fixed" in res:
        out["fixed"] = {str(k): frac_pair(v) for k, v in sorted(res["fixed"].items())}
    if "note" in res:
        out["note"] = res["note"]
    return out


def _map_doc(cm):
    return [[m, x, v.numerator, v.denominator] for (m, x), v in cm.sorted_items()]


def solution_to_doc(rep):
    doc = {
        "algebra": rep.algebra,
        "dim": rep.dim,
        "scope_dim": rep.scope_dim,
        "config": rep.config,
        "checks": [c.to_doc() for c in rep.checks],
        "n_unknowns": rep.n_unknowns,
        "nullspace_dim": rep.nullspace_dim,
        "nullspace_basis": [_map_doc(bm) for bm in rep.nullspace_basis],
        "trivial_certificate": rep.trivial_certificate,
        "notes": list(rep.notes),
    }
    if rep.variety is None:
        doc["variety"] = None
        doc["invertible"] = None
        doc["non_invertible"] = None
    else:
        doc["variety"] = {
            "status": rep.variety.status,
            "points": [[frac_pair(c) for c in pt] for pt in rep.variety.points],
            "residuals": [_residual_doc(r) for r in rep.variety.residuals],
            "groebner_basis": [_poly_doc(g) for g in rep.variety.generators],
        }
        doc["invertible"] = [
            {"entries": _map_doc(cm),
             "block_dets": [[dg, *frac_pair(dv)] for dg, dv in dets]}
            for cm, dets in rep.invertible]
        doc["non_invertible"] = [
            {"entries": _map_doc(cm),
             "block_dets": [[dg, *frac_pair(dv)] for dg, dv in dets]}
            for cm, dets in rep.non_invertible]
    return doc


def report_doc(kind, tool_version, body):
    return {
        "format_version": FORMAT_VERSION,
        "kind": "report",
        "report_kind": kind,
        "tool_version": tool_version,
        **body,
    }
