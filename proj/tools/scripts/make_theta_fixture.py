#!/usr/bin/env python3
"""Build a genus-3 Abelian fixture from the hyperelliptic curve y^2 = prod (x - e_k).

Periods and Abel images come from numerical path integration of x^j dx / y with
analytic continuation of the square root.  The prime form is evaluated through
an odd theta characteristic.  The point x coordinate is the local coordinate at
every marked point; w', q and the log-derivatives of q all refer to it.

Checks performed before writing:
  * the Riemann period matrix is symmetric with positive definite imaginary part;
  * integrating around closed loops in the x-plane returns lattice vectors;
  * q is antisymmetric and nonzero off the diagonal.
"""
import argparse
import itertools
import json
from pathlib import Path

import mpmath as mp

SCHEMA = "thetalab.abelian-fixture/1"

BRANCH = [-3, -2, -1, mp.mpf("0.5"), 1, 2, mp.mpf("3.5"), 4]
POINTS = [
    mp.mpc("-2.4", "0.55"),
    mp.mpc("-0.6", "0.8"),
    mp.mpc("0.2", "0.45"),
    mp.mpc("1.4", "0.7"),
    mp.mpc("2.6", "0.5"),
    mp.mpc("-1.5", "1.1"),
]
G = 3


def rest_sqrt_continued(path_xs, start):
    """Continue sqrt(prod_{k>0}(x - e_k)) along sample points, starting near start."""
    vals = []
    prev = start
    for x in path_xs:
        v = mp.sqrt(mp.fprod(x - e for e in BRANCH[1:]))
        if prev is not None and abs(v - prev) > abs(v + prev):
            v = -v
        vals.append(v)
        prev = v
    return vals


def abel_from_e1(xa, steps=400):
    """Integrate (1, x, x^2) dx / y from e1 to xa along the straight segment.

    With x = e1 + t^2 (xa - e1), t in [0, 1], y = t sqrt(xa - e1) s(x), where s is
    the continued root of the remaining factors, the integrand is smooth in t.
    Returns the raw integrals and the value y(xa) reached by continuation.
    """
    e1 = BRANCH[0]
    d = xa - e1
    rd = mp.sqrt(d)
    ts = [mp.mpf(i) / steps for i in range(steps + 1)]
    s_vals = rest_sqrt_continued([e1 + t * t * d for t in ts], None)
    table = dict(zip(ts, s_vals))

    def s_at(t):
        # nearest continued sample fixes the sign
        k = min(steps, max(0, int(mp.nint(t * steps))))
        v = mp.sqrt(mp.fprod(e1 + t * t * d - e for e in BRANCH[1:]))
        ref = table[ts[k]]
        return v if abs(v - ref) <= abs(v + ref) else -v

    out = []
    for j in range(G):
        f = lambda t: 2 * (e1 + t * t * d) ** j * rd / s_at(t)
        out.append(mp.quad(f, mp.linspace(0, 1, 9)))
    y_end = rd * table[ts[-1]]
    return out, y_end


def interval_integrals():
    """J_k[j] = integral over [e_k, e_{k+1}] of x^j dx / y(x + i0)."""
    def y_above(x):
        return mp.fprod(mp.sqrt(x - e) if x > e else 1j * mp.sqrt(e - x) for e in BRANCH)

    J = []
    for k in range(len(BRANCH) - 1):
        a, b = BRANCH[k], BRANCH[k + 1]
        row = []
        for j in range(G):
            # tanh-sinh handles the inverse square-root endpoints
            row.append(mp.quad(lambda x: x ** j / y_above(x), [a, b]))
        J.append(row)
    return J


def loop_integral(center, radius, steps=2000):
    """Integrate (1, x, x^2) dx / y around a circle with continuation."""
    thetas = [2 * mp.pi * i / steps for i in range(steps + 1)]
    xs = [center + radius * mp.expj(t) for t in thetas]
    prev = None
    ys = []
    for x in xs:
        v = mp.sqrt(mp.fprod(x - e for e in BRANCH))
        if prev is not None and abs(v - prev) > abs(v + prev):
            v = -v
        ys.append(v)
        prev = v
    total = [mp.mpc(0)] * G
    # composite Simpson in theta
    h = 2 * mp.pi / steps
    for i in range(steps + 1):
        wgt = 1 if i in (0, steps) else (4 if i % 2 else 2)
        dx = 1j * radius * mp.expj(thetas[i])
        for j in range(G):
            total[j] += wgt * xs[i] ** j * dx / ys[i]
    return [t * h / 3 for t in total]


def theta_char(a, b, z, Om, derivs=(), N=7):
    """theta[a;b](z, Om) and its partial derivatives along coordinate indices."""
    g = len(z)
    s = mp.mpc(0)
    for n in itertools.product(range(-N, N + 1), repeat=g):
        k = [n[i] + a[i] for i in range(g)]
        quad = sum(k[i] * Om[i, j] * k[j] for i in range(g) for j in range(g))
        lin = sum(k[i] * (z[i] + b[i]) for i in range(g))
        term = mp.exp(mp.pi * 1j * quad + 2 * mp.pi * 1j * lin)
        for d in derivs:
            term *= 2 * mp.pi * 1j * k[d]
        s += term
    return s


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[2] / "data" / "theta" / "genus3_hyperelliptic.json"))
    ap.add_argument("--dps", type=int, default=30)
    args = ap.parse_args()
    mp.mp.dps = args.dps

    J = interval_integrals()
    # a_i loops around [e_{2i-1}, e_{2i}], b_i runs from cut i to the last cut
    A = mp.matrix(G, G)
    B = mp.matrix(G, G)
    for i in range(G):
        for j in range(G):
            A[j, i] = 2 * J[2 * i][j]
            B[j, i] = 2 * sum(J[k][j] for k in range(2 * i + 1, 2 * G + 1, 2))
    Ainv = A ** -1
    Om = Ainv * B
    sym = max(abs(Om[i, j] - Om[j, i]) for i in range(G) for j in range(G))
    if sym > 1e-15:
        raise SystemExit(f"period matrix not symmetric: {sym}")
    Y = mp.matrix([[Om[i, j].imag for j in range(G)] for i in range(G)])
    mp.cholesky(Y)

    # lattice check: closed loops must integrate to Omega m + n
    lattice_res = 0
    loops = [("-1.5", "0.8"), ("0.75", "0.4"), ("2.75", "1.0"), ("-2.5", "0.7"), ("0.5", "4.1")]
    for c, r in [(mp.mpf(a), mp.mpf(b)) for a, b in loops]:
        raw = loop_integral(c, r)
        v = Ainv * mp.matrix(raw)
        # solve v = Om m + n with m = Y^{-1} Im v
        m = mp.lu_solve(Y, mp.matrix([v[i].imag for i in range(G)]))
        n = [v[i] - sum(Om[i, j] * m[j] for j in range(G)) for i in range(G)]
        for x in list(m) + n:
            lattice_res = max(lattice_res, abs(x - mp.nint(mp.re(x))))
    if lattice_res > 1e-8:
        raise SystemExit(f"loop integrals are not lattice vectors: {lattice_res}")

    w, wp, wpp = [], [], []
    for xa in POINTS:
        raw, ya = abel_from_e1(xa)
        w.append(Ainv * mp.matrix(raw))
        wp.append(Ainv * mp.matrix([xa ** j / ya for j in range(G)]))
        # derivative of x^j / y with y' = y/2 * sum 1/(x - e)
        dlog = sum(1 / (xa - e) for e in BRANCH) / 2
        wpp.append(Ainv * mp.matrix([(j * xa ** (j - 1) if j else 0) / ya - xa ** j / ya * dlog for j in range(G)]))

    # odd characteristic with the largest gradient at 0
    best = None
    for bits in itertools.product([0, 1], repeat=2 * G):
        a = [mp.mpf(bits[i]) / 2 for i in range(G)]
        b = [mp.mpf(bits[G + i]) / 2 for i in range(G)]
        if sum(bits[i] * bits[G + i] for i in range(G)) % 2 == 0:
            continue
        grad = [theta_char(a, b, [0] * G, Om, (i,)) for i in range(G)]
        nrm = max(abs(x) for x in grad)
        if best is None or nrm > best[0]:
            best = (nrm, a, b, grad)
    _, ca, cb, grad = best

    def hsq(i):
        return sum(grad[k] * wp[i][k] for k in range(G))

    def dlog_h(i):
        return sum(grad[k] * wpp[i][k] for k in range(G)) / (2 * hsq(i))

    npts = len(POINTS)
    q = [[mp.mpc(0)] * npts for _ in range(npts)]
    d1 = [[None] * npts for _ in range(npts)]
    d2 = [[None] * npts for _ in range(npts)]
    for i in range(npts):
        for j in range(npts):
            if i == j:
                continue
            u = [w[i][k] - w[j][k] for k in range(G)]
            th = theta_char(ca, cb, u, Om)
            g1 = [theta_char(ca, cb, u, Om, (k,)) for k in range(G)]
            g2 = [[theta_char(ca, cb, u, Om, (k, l)) for l in range(G)] for k in range(G)]
            h_i = mp.sqrt(hsq(i))
            h_j = mp.sqrt(hsq(j))
            q[i][j] = th / (h_i * h_j)
            D = sum(g1[k] * wp[i][k] for k in range(G))
            DD = sum(g2[k][l] * wp[i][k] * wp[i][l] for k in range(G) for l in range(G))
            Dpp = sum(g1[k] * wpp[i][k] for k in range(G))
            d1[i][j] = D / th - dlog_h(i)
            d2[i][j] = (DD + Dpp) / th - (D / th) ** 2 - mp.diff(
                lambda t: _dlog_h_at(t, Ainv, grad), POINTS[i])
    anti = max(abs(q[i][j] + q[j][i]) for i in range(npts) for j in range(npts) if i != j)
    if anti > 1e-12:
        raise SystemExit(f"prime form not antisymmetric: {anti}")
    if min(abs(q[i][j]) for i in range(npts) for j in range(npts) if i != j) < 1e-8:
        raise SystemExit("prime form vanishes off the diagonal")

    def c(z):
        z = mp.mpc(z)
        return [float(z.real), float(z.imag)]

    doc = {
        "schema": SCHEMA,
        "genus": G,
        "curve": "y^2 = " + " ".join(f"(x - {mp.nstr(e, 6)})" for e in BRANCH),
        "normalization": "local coordinate x at every marked point; q(a,b) = theta[delta](w(a)-w(b)) / (h(a) h(b)) with h^2 = sum_k d_k theta[delta](0) w'_k",
        "odd_characteristic": [[float(x) for x in ca], [float(x) for x in cb]],
        "omega": [[c(Om[i, j]) for j in range(G)] for i in range(G)],
        "points": [
            {"x": c(POINTS[i]), "w": [c(w[i][k]) for k in range(G)], "w_prime": [c(wp[i][k]) for k in range(G)]}
            for i in range(npts)
        ],
        "q": [[c(q[i][j]) for j in range(npts)] for i in range(npts)],
        "dlog_q": [[c(d1[i][j]) if i != j else [0.0, 0.0] for j in range(npts)] for i in range(npts)],
        "d2log_q": [[c(d2[i][j]) if i != j else [0.0, 0.0] for j in range(npts)] for i in range(npts)],
        "checks": {"omega_symmetry": float(sym), "loop_lattice_residual": float(lattice_res), "q_antisymmetry": float(anti)},
    }
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    Path(args.out).write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {args.out}")


def _dlog_h_at(x, Ainv, grad):
    wp = Ainv * mp.matrix([x ** j for j in range(G)])
    y = mp.sqrt(mp.fprod(x - e for e in BRANCH))
    dlog = sum(1 / (x - e) for e in BRANCH) / 2
    wpp = Ainv * mp.matrix([(j * x ** (j - 1) if j else 0) for j in range(G)])
    # ratio is independent of the sign and scale of y
    num = sum(grad[k] * (wpp[k] - wp[k] * dlog) for k in range(G))
    den = sum(grad[k] * wp[k] for k in range(G))
    return num / (2 * den)


if __name__ == "__main__":
    main()
