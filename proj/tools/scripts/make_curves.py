#!/usr/bin/env python3
"""Generate the shipped plane-curve fixtures.

Each curve is a random small-integer form subject to the linear conditions that
impose the listed ordinary singularities.  The full singular scheme is checked
over Q with a Groebner basis after a random projective change of coordinates,
so no unlisted singularities can slip in.
"""
import argparse
import itertools
import random
from fractions import Fraction
from pathlib import Path

import sympy as sp

X, Y, Z = sp.symbols("x y z")


def monomials(d):
    return [(a, b, d - a - b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def conditions(mons, point, mult):
    """Rows: vanishing of all partials of order mult-1 at point."""
    rows = []
    for order in range(mult):
        for i in range(order + 1):
            for j in range(order + 1 - i):
                k = order - i - j
                row = []
                for (a, b, c) in mons:
                    if a < i or b < j or c < k:
                        row.append(0)
                        continue
                    coef = (sp.ff(a, i) * sp.ff(b, j) * sp.ff(c, k)
                            * sp.Integer(point[0]) ** (a - i) * sp.Integer(point[1]) ** (b - j)
                            * sp.Integer(point[2]) ** (c - k))
                    row.append(coef)
                rows.append(row)
    return rows


def tjurina(mult):
    return {2: 1, 3: 4}[mult]


def singular_degree(f, rng):
    """Length of the singular scheme of the projective curve f = 0 (over Qbar)."""
    while True:
        m = sp.Matrix(3, 3, lambda i, j: rng.randint(-3, 3))
        if m.det() != 0:
            break
    sub = {X: m[0, 0] * X + m[0, 1] * Y + m[0, 2] * Z,
           Y: m[1, 0] * X + m[1, 1] * Y + m[1, 2] * Z,
           Z: m[2, 0] * X + m[2, 1] * Y + m[2, 2] * Z}
    g = sp.expand(f.subs(sub, simultaneous=True))
    gx, gy, gz = [sp.diff(g, v) for v in (X, Y, Z)]
    at_inf = sp.gcd_list([sp.expand(h.subs(Z, 0)) for h in (gx, gy, gz)])
    if at_inf != 0 and sp.Poly(at_inf, X, Y).total_degree() > 0:
        return None
    aff = [sp.expand(h.subs(Z, 1)) for h in (g, gx, gy)]
    gb = sp.groebner(aff, X, Y, order="grevlex")
    lms = [sp.Poly(p, X, Y).monoms(order="grevlex")[0] for p in gb.exprs]
    count = 0
    bound = 200
    for a in range(bound):
        for b in range(bound):
            if not any(a >= u and b >= v for (u, v) in lms):
                count += 1
    return count


def build(name, degree, sings, genus, tags, seed, coeff_range=4):
    rng = random.Random(seed)
    mons = monomials(degree)
    rows = []
    for (pt, m) in sings:
        rows += conditions(mons, pt, m)
    A = sp.Matrix(rows) if rows else sp.zeros(0, len(mons))
    null = A.nullspace() if rows else [sp.eye(len(mons))[:, i] for i in range(len(mons))]
    for attempt in range(200):
        coeffs = [rng.randint(-coeff_range, coeff_range) for _ in null]
        v = sum((c * n for c, n in zip(coeffs, null)), sp.zeros(len(mons), 1))
        den = sp.ilcm(*[sp.fraction(x)[1] for x in v]) if len(v) else 1
        v = v * den
        g = sp.igcd(*[int(x) for x in v if x != 0]) if any(x != 0 for x in v) else 1
        v = v / g
        f = sum(int(c) * X ** a * Y ** b * Z ** cc for c, (a, b, cc) in zip(v, mons))
        if f == 0:
            continue
        if not sp.Poly(f, X, Y, Z).is_irreducible:
            continue
        expected = sum(tjurina(m) for _, m in sings)
        got = singular_degree(f, rng)
        if got != expected:
            continue
        terms = [(mon, int(c)) for c, mon in zip(v, mons) if c != 0]
        return terms
    raise RuntimeError("no valid curve found for " + name)


def emit(path, name, degree, genus, tags, terms, sings):
    lines = ["# " + name + ": plane curve of degree %d, geometric genus %d" % (degree, genus),
             "name " + name, "field Q", "degree %d" % degree, "genus %d" % genus,
             "tags " + " ".join(tags)]
    for (a, b, c), coef in terms:
        lines.append("term %d %d %d %d" % (a, b, c, coef))
    for pt, m in sings:
        lines.append("singular %d %d %d %d" % (pt[0], pt[1], pt[2], m))
    Path(path).write_text("\n".join(lines) + "\n")


CURVES = [
    ("QUARTIC", 4, [], 3, ["smooth-quartic"], 11),
    ("TRIG5", 5, [((0, 0, 1), 2)], 5, ["trigonal", "trigonal-center=0,0,1"], 12),
    ("GEN5", 6, [((1, 0, 0), 2), ((0, 1, 0), 2), ((0, 0, 1), 2), ((1, 1, 1), 2), ((1, -1, 2), 2)], 5,
     ["generic"], 13),
    ("TRIG6", 6, [((0, 0, 1), 3), ((1, 0, 0), 2)], 6, ["trigonal", "trigonal-center=0,0,1"], 14),
    ("TRIG7", 6, [((0, 0, 1), 3)], 7, ["trigonal", "trigonal-center=0,0,1"], 15),
    ("GEN6", 6, [((1, 0, 0), 2), ((0, 1, 0), 2), ((0, 0, 1), 2), ((1, 1, 1), 2)], 6,
     ["generic", "tetragonal"], 16),
    ("GEN7", 7, [((1, 0, 0), 2), ((0, 1, 0), 2), ((0, 0, 1), 2), ((1, 1, 1), 2), ((1, 2, 3), 2),
                 ((2, -1, 1), 2), ((3, 1, -2), 2), ((-1, 3, 2), 2)], 7, ["generic"], 17),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[2] / "data" / "curves"))
    ap.add_argument("--only", default="")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fermat = [((5, 0, 0), 1), ((0, 5, 0), 1), ((0, 0, 5), 1)]
    if not args.only or args.only == "QUINTIC":
        emit(out / "QUINTIC.curve", "QUINTIC", 5, 6, ["plane-quintic"], fermat, [])
    for name, d, sings, genus, tags, seed in CURVES:
        if args.only and args.only != name:
            continue
        terms = build(name, d, sings, genus, tags, seed)
        emit(out / (name + ".curve"), name, d, genus, tags, terms, sings)
        print("wrote", name)


if __name__ == "__main__":
    main()
