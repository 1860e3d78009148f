"""Independent reference computations built on sympy, used to cross-check the library."""

from __future__ import annotations

import sympy


def to_sympy(m) -> sympy.Matrix:
    rows, cols = m.shape
    return sympy.Matrix(rows, cols, lambda i, j: sympy.Rational(int(m[i, j].numerator), int(m[i, j].denominator)))


def nullity(rows: list[list], n: int) -> int:
    """Dimension of the solution space of the homogeneous system with the given rows in n unknowns."""
    if not rows:
        return n
    M = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) if hasattr(x, "numerator") else x
                       for x in r] for r in rows])
    return n - M.rank()


def invariant_sections_dim(R) -> int:
    """dim {e ∈ Γ(E) : Δ^E_g e_{s(g)} = e_{t(g)} for every arrow g}, by stacking every arrow's
    fixed-point condition into one system."""
    G = R.G
    off, n = {}, 0
    for x in G.objects:
        off[x] = n
        n += R.E[x]
    rows = []
    for g in G.arrow_ids:
        s, t = G.src(g), G.tgt(g)
        D = R.deltaE[g]
        for i in range(R.E[t]):
            row = [0] * n
            for j in range(R.E[s]):
                row[off[s] + j] += D[i, j]
            row[off[t] + i] -= 1
            rows.append(row)
    return nullity(rows, n)


def group_invariants_dim(rho: dict, d: int) -> int:
    """dim E^Γ: solve (ρ(γ) − 1)v = 0 for all γ at once."""
    rows = []
    for m in rho.values():
        for i in range(d):
            rows.append([m[i, j] - (1 if i == j else 0) for j in range(d)])
    return nullity(rows, d)


def rep_equation_residuals(R) -> list[str]:
    """The structure equations of a 2-term representation up to homotopy, written out
    directly with sympy matrices; returns the names of those that fail."""
    G = R.G
    S = {k: to_sympy(v) for k, v in R.deltaC.items()}
    T = {k: to_sympy(v) for k, v in R.deltaE.items()}
    d = {x: to_sympy(R.d(x)) for x in G.objects}

    def om(g, h):
        return to_sympy(R.Om(g, h))

    bad = []
    for g in G.arrow_ids:
        if T[g] * d[G.src(g)] != d[G.tgt(g)] * S[g]:
            bad.append(f"chain map {g}")
    for g, h in G.pairs:
        gh = G.mul(g, h)
        if S[g] * S[h] - S[gh] + om(g, h) * d[G.src(h)] != sympy.zeros(*S[gh].shape):
            bad.append(f"C curvature {g},{h}")
        if T[g] * T[h] - T[gh] + d[G.tgt(g)] * om(g, h) != sympy.zeros(*T[gh].shape):
            bad.append(f"E curvature {g},{h}")
    for a, b, c in G.triples():
        lhs = S[a] * om(b, c) - om(G.mul(a, b), c) + om(a, G.mul(b, c)) - om(a, b) * T[c]
        if lhs != sympy.zeros(*lhs.shape):
            bad.append(f"cocycle {a},{b},{c}")
    return bad
