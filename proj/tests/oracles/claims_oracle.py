"""Expected values for the claim suite that are not stated outright anywhere.

Computed with sympy (and brute force for lattice points), then frozen into
data/derived.json. The C++ claim runner reads them as expected outcomes.
"""

import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from sympy import Matrix, Poly, cancel, diff, expand, groebner, reduced, symbols
from sympy.parsing.sympy_parser import parse_expr

from canon import fmt

ROOT = Path(__file__).resolve().parents[2]
OUT = ROOT / "data" / "derived.json"
GOLDEN = ROOT / "tests" / "golden"


def hessian_claims():
    x, y, z = symbols("x y z")
    f = x**10 + x**2 * y**6 + (z**2 + 1) ** 3 - 3 * x**4 * y**2 * (z**2 + 1)
    d = lambda a, b: diff(f, a, b)
    minor = Matrix([[d(x, y), d(y, y)], [d(x, z), d(y, z)]]).det()
    gb = groebner([z, x**6 - y**2, y**4 - x**2], x, y, z, order="grevlex")
    m = Matrix([[d(x, x), d(x, y)], [d(x, y), d(y, y)]])
    names = ["x", "y", "z"]

    def nf(p):
        return reduced(expand(p), list(gb.exprs), x, y, z, order="grevlex")[1]

    entries = [[fmt(nf(m[i, j]), names) for j in range(2)] for i in range(2)]
    return {
        "hessian_minor_det": fmt(expand(minor), names),
        "hessian_reduced_entries": entries,
        "hessian_reduced_det": fmt(nf(m.det()), names),
    }


def gsecond_claims(alpha0):
    """g'' against its displayed rewrite, with alpha kept symbolic.

    With yh^6 - y^6 = -alpha*yh^8, g'' = -alpha*yh^8*P + A^2 + C^2 where P is
    phi^* f1 in hat coordinates. The display reads
    alpha*xh^2*B^2 + (A - alpha*C/2)^2 + (1 - alpha^2/4)*C^2.
    """
    xh, yh, zh, a, t = symbols("xh yh zh alpha t")
    P = xh**10 + xh**2 * yh**24 - zh**6 + 3 * xh**4 * yh**8 * zh**2
    A = xh**6 + yh**8 * zh**2
    B = yh**16 + xh**2 * zh**2
    C = zh**4 - xh**4 * yh**8
    g2 = -a * yh**8 * P + A**2 + C**2
    display = a * xh**2 * B**2 + (A - a * C / 2) ** 2 + (1 - a**2 / 4) * C**2
    defect = expand(display - g2)
    k = cancel(defect / (a * yh**8 * P))
    assert k.is_number, k
    # Along (t^4, t, 0) only the constant term of alpha matters for the lowest term.
    on_curve = expand(g2.subs({xh: t**4, yh: t, zh: 0}))
    low = Poly(on_curve, t, a)
    lowest_deg = min(m[0] for m, _ in low.terms())
    lowest = sum(c * a**m[1] for m, c in low.terms() if m[0] == lowest_deg)
    value = lowest.subs(a, alpha0)
    return {
        "gsecond_display_minus_g2_over_alpha_yh8_P": str(k),
        "gsecond_jet_curve": ["t^4", "t", "0"],
        "gsecond_jet_lowest": fmt(value * t**lowest_deg, ["t"]),
    }


def half_support(coeffs):
    """Brute force: b with 2b a convex combination of the support."""
    pts = [tuple(m) for m in coeffs]
    n = len(pts[0])
    box = [max(p[i] for p in pts) // 2 for i in range(n)]
    out = []
    for b in itertools.product(*[range(m + 1) for m in box]):
        target = tuple(2 * c for c in b)
        if in_hull(pts, target):
            out.append(list(b))
    return sorted(out)


def in_hull(pts, q):
    # Exact LP feasibility through sympy's rational simplex would be overkill
    # here: try all subsets of at most n+1 support points (Caratheodory).
    from sympy import Matrix as M, Rational

    n = len(q)
    for r in range(1, n + 2):
        for sub in itertools.combinations(pts, r):
            rows = [[Rational(p[i]) for p in sub] for i in range(n)] + [[Rational(1)] * r]
            rhs = [Rational(c) for c in q] + [Rational(1)]
            A, bvec = M(rows), M(rhs)
            try:
                sol, params = A.gauss_jordan_solve(bvec)
            except ValueError:
                continue
            if params.shape[0] == 0 and all(s >= 0 for s in sol):
                return True
            if params.shape[0] > 0:
                # Pin free parameters to zero; smaller subsets cover the rest.
                s0 = sol.subs({p: 0 for p in params})
                if all(s >= 0 for s in s0):
                    return True
    return False


def main():
    series = json.loads((GOLDEN / "series.json").read_text())
    gb = json.loads((GOLDEN / "groebner.json").read_text())
    quot = {c["name"]: c["quotient"] for c in gb["quotient"]}
    yh = symbols("yh")

    def constant_term(text):
        c = Poly(parse_expr(text.replace("^", "**")), yh).coeff_monomial(1)
        return Fraction(int(c.p), int(c.q))

    alpha0 = constant_term(series["alpha"])

    y, z, w, x = symbols("y z w x")
    motz = Poly(x**4 * y**2 + x**2 * y**4 + 1 - 3 * x**2 * y**2, x, y)
    doc = {
        "IGamma2_by_f_quotient": quot["IGamma2_by_f"],
        "IC2_by_f1_quotient": quot["IC2_by_f1"],
        "coeff_yh6_zh6_y6_phi_f1": series["coeff_yh6_zh6"],
        "alpha_constant": str(alpha0),
        "one_minus_alpha_sq_over_4_constant": str(constant_term(series["one_minus_alpha_sq_over_4"])),
        "motzkin_half_support": half_support([m for m, _ in motz.terms()]),
    }
    for w0 in ["3/2", "2", "5"]:
        wv = Fraction(w0)
        g = Poly(expand(1 + wv**2 * y**2 * z**4 + wv**2 * y**4 * z**2 + (1 - wv) * y**2 * z**2), y, z)
        doc[f"motzkin4_half_support_w{w0}"] = half_support([m for m, _ in g.terms()])
    doc.update(hessian_claims())
    doc.update(gsecond_claims(alpha0))

    # Coefficient of yh^6 zh^6 in f2: only -y^6 phi^* f1 reaches it below degree 13.
    doc["coeff_yh6_zh6_f2"] = str(-Fraction(series["coeff_yh6_zh6"]))
    OUT.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
    print(f"wrote {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
