"""Series goldens computed by fixed-point iteration on coefficient lists.

y as a series in yh solves y = yh * (1 - y^2 + y^3)^(-1/8); z in zh solves
z = zh * (1 - 2z)^(-1/2). The C++ side instead reverts the forward series, so
the two computations share no code path. Writes tests/golden/series.json.
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

from sympy import Poly, Rational, expand, symbols

from canon import fmt

OUT = Path(__file__).resolve().parent.parent / "golden" / "series.json"
DATA = Path(__file__).resolve().parents[2] / "data" / "objects"
N = 48


def pad(a, n):
    return (list(a) + [Fraction(0)] * (n + 1))[: n + 1]


def mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


def add(a, b, n):
    a, b = pad(a, n), pad(b, n)
    return [a[k] + b[k] for k in range(n + 1)]


def scale(a, c):
    return [c * x for x in a]


def one_plus_pow(e, exponent, n):
    """(1 + e)^exponent for e without constant term, from the differential
    equation (1 + e) p' = exponent e' p solved degree by degree."""
    e = pad(e, n)
    p = [Fraction(0)] * (n + 1)
    p[0] = Fraction(1)
    for k in range(1, n + 1):
        s = Fraction(0)
        for j in range(1, k + 1):
            s += exponent * j * e[j] * p[k - j] - e[j] * (k - j) * p[k - j]
        p[k] = s / k
    return p


def shift(a, k, n):
    return pad([Fraction(0)] * k + list(a), n)


def fixed_point(rhs, n):
    cur = pad([Fraction(0), Fraction(1)], n)
    for _ in range(n + 2):
        nxt = rhs(cur)
        if nxt == cur:
            return cur
        cur = nxt
    raise RuntimeError("no convergence")


def power(a, k, n):
    out = pad([Fraction(1)], n)
    for _ in range(k):
        out = mul(out, a, n)
    return out


def to_expr(coeffs, var):
    return sum(Rational(c.numerator, c.denominator) * var**k for k, c in enumerate(coeffs) if c)


def unit(k, n):
    return [Fraction(1) if j == k else Fraction(0) for j in range(n + 1)]


def main():
    yh, zh, xh, y, t, x = symbols("yh zh xh y t x")

    def y_rhs(cur):
        e = add(scale(power(cur, 2, N), -1), power(cur, 3, N), N)
        return shift(one_plus_pow(e, Fraction(-1, 8), N), 1, N)

    def z_rhs(cur):
        return shift(one_plus_pow(scale(cur, -2), Fraction(-1, 2), N), 1, N)

    y_of = fixed_point(y_rhs, N)
    z_of = fixed_point(z_rhs, N)
    rel = add(add(power(y_of, 8, N), scale(power(y_of, 10, N), -1), N), power(y_of, 11, N), N)
    assert rel == unit(8, N)
    zrel = add(power(z_of, 2, N), scale(power(z_of, 3, N), -2), N)
    assert zrel == unit(2, N)

    y6 = power(y_of, 6, N)
    diff = add(y6, scale(unit(6, N), -1), N)
    assert all(c == 0 for c in diff[:8])
    alpha = diff[8:]
    one_minus = add([Fraction(1)], scale(mul(alpha, alpha, N - 8), Fraction(-1, 4)), N - 8)

    # y^6 * phi^* f1 in hat coordinates: u = xh^2, v = yh^8, w = -zh^2.
    u, v, w = xh**2, yh**8, -(zh**2)
    f1 = expand(u**5 + u * v**3 + w**3 - 3 * u**2 * v * w)
    prod = Poly(expand(to_expr(y6, yh) * f1), xh, yh, zh)
    target = sum(c * xh**m[0] * yh**m[1] * zh**m[2] for m, c in prod.terms() if sum(m) <= N)
    tp = Poly(target, xh, yh, zh)

    quartic_tail = [Fraction(0), Fraction(0), Fraction(-1), Fraction(1)]
    y_hat = shift(one_plus_pow(quartic_tail, Fraction(1, 8), N), 1, N)
    sqrt_t = one_plus_pow([Fraction(0), Fraction(1)], Fraction(1, 2), 8)
    root8 = one_plus_pow(quartic_tail, Fraction(1, 8), 8)
    # The reversion r of t + t^2 solves r = t - r^2.
    rev = fixed_point(lambda r: add(unit(1, 10), scale(mul(r, r, 10), -1), 10), 10)
    # (x + a)^2 = x^2 + x^3 gives a = x (sqrt(1 + x) - 1).
    adic_a = shift(add(one_plus_pow([Fraction(0), Fraction(1)], Fraction(1, 2), 10), [Fraction(-1)], 10), 1, 11)

    doc = {
        "trunc": N,
        "y_of": fmt(to_expr(y_of, yh), ["yh"]),
        "z_of": fmt(to_expr(z_of, zh), ["zh"]),
        "y_hat": fmt(to_expr(y_hat, y), ["y"]),
        "alpha": fmt(to_expr(alpha, yh), ["yh"]),
        "alpha_trunc": N - 8,
        "one_minus_alpha_sq_over_4": fmt(to_expr(one_minus, yh), ["yh"]),
        "y6_phi_f1_hat": fmt(target, ["xh", "yh", "zh"]),
        "coeff_yh6_zh6": str(tp.coeff_monomial(yh**6 * zh**6)),
        "coeff_yh8_zh6": str(tp.coeff_monomial(yh**8 * zh**6)),
        "sqrt_1_plus_t_8": fmt(to_expr(sqrt_t, t), ["t"]),
        "eighth_root_8": fmt(to_expr(root8, y), ["y"]),
        "reversion_t_plus_t2_10": fmt(to_expr(rev, t), ["t"]),
        "adic_x3_a_11": fmt(to_expr(adic_a, x), ["x"]),
    }
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {OUT}", file=sys.stderr)

    # The same values as catalog objects for the claim suite.
    def series_file(name, names, trunc, body):
        path = DATA / f"{name}.series"
        path.write_text(f"vars: {' '.join(names)}\ntrunc: {trunc}\n{body}\n")
        print(f"wrote {path}", file=sys.stderr)

    series_file("y6_phi_f1_hat", ["xh", "yh", "zh"], N, doc["y6_phi_f1_hat"])
    series_file("alpha", ["yh"], N - 8, doc["alpha"])
    series_file("one_minus_alpha_sq_over_4", ["yh"], N - 8, doc["one_minus_alpha_sq_over_4"])


if __name__ == "__main__":
    main()
