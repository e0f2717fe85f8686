"""Symbolic eigenvalues of the Casimir operators C_n^(j) on phi_ell.

phi_ell(g) = prod_k d_k^(ell_k + rho_k) where d_k are the diagonal entries of
the upper-triangular factor in g = R*Q.  Products of trailing d_k^2 are the
lower-right minors of g g^T, so phi is a rational-power expression in the
entries of g and D_{i,j} can be applied by plain differentiation at g = 1.

Usage: python3 tools/derive_casimir.py [n]
"""
import itertools
import sys

import sympy as sp


def phi_expr(n, g, ell):
    rho = [sp.Rational(n - 2 * k + 1, 2) for k in range(1, n + 1)]
    G = g * g.T
    minors = [sp.Integer(1)]
    for k in range(1, n + 1):
        minors.append(G[n - k:, n - k:].det())
    # d_{n-k+1}^2 = minor_k / minor_{k-1}
    f = sp.Integer(1)
    for k in range(1, n + 1):
        idx = n - k  # zero-based position of d
        f *= (minors[k] / minors[k - 1]) ** ((ell[idx] + rho[idx]) / 2)
    return f


def casimir_eigenvalue(n, j, ell):
    ts = sp.symbols(f"t1:{j + 2}")
    total = sp.Integer(0)
    for idx in itertools.product(range(n), repeat=j + 1):
        g = sp.eye(n)
        for m in range(j + 1):
            a, b = idx[m], idx[(m + 1) % (j + 1)]
            E = sp.zeros(n, n)
            E[a, b] = 1
            g = g * (sp.eye(n) + (sp.exp(ts[m]) - 1) * E if a == b else sp.eye(n) + ts[m] * E)
        f = phi_expr(n, g, ell)
        d = f
        for t in ts:
            d = sp.diff(d, t)
        total += d.subs({t: 0 for t in ts})
    return sp.factorial(n - j - 1) / sp.factorial(n) * total


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    ls = sp.symbols(f"l1:{n + 1}")
    ell = list(ls[:-1]) + [-sum(ls[:-1])]
    for j in range(1, n):
        ev = sp.expand(sp.simplify(casimir_eigenvalue(n, j, ell)))
        print(f"n={n} j={j}: {ev}")
        if j == 1:
            lap = sp.Rational(n + 1, 12) - sum(x * x for x in ell) / (n * (n - 1))
            print("  + laplace eigenvalue:", sp.simplify(ev + lap))


if __name__ == "__main__":
    main()
