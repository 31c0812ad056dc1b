"""Independent reference computations for the tests.

Everything here works degree by degree with plain Gaussian elimination on
explicit spanning sets (no Groebner bases, no package linear algebra), over
Fraction for Q and Python ints for F_p.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement


def monomials(nvars: int, degree: int) -> list:
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


class Arith:
    def __init__(self, p: int):
        self.p = p

    def conv(self, c):
        if self.p:
            return int(c) % self.p
        return Fraction(int(c.numerator), int(c.denominator))

    def inv(self, a):
        return pow(a, self.p - 2, self.p) if self.p else 1 / a

    def norm(self, a):
        return a % self.p if self.p else a


def row_reduce(rows: list, ar: Arith) -> dict:
    """Echelon basis {pivot column: row} of the span of sparse rows."""
    basis: dict = {}
    for row in rows:
        v = {k: c for k, c in row.items() if c}
        while v:
            piv = min(v)
            if piv not in basis:
                inv = ar.inv(v[piv])
                basis[piv] = {k: ar.norm(c * inv) for k, c in v.items()}
                break
            f = v[piv]
            for k, c in basis[piv].items():
                v[k] = ar.norm(v.get(k, 0) - f * c)
                if not v[k]:
                    del v[k]
    return basis


def rank(rows: list, ar: Arith) -> int:
    return len(row_reduce(rows, ar))


class DegreewiseModule:
    """M = F/U read off degree by degree: M_q = F_q / span(monomial multiples of relations)."""

    def __init__(self, M):
        ctx = M.ctx
        assert ctx.base.is_field
        self.n1 = ctx.n + 1
        self.ar = Arith(ctx.field.p)
        self.degrees = list(M.degrees)
        self.relations = []
        for rel in M.relations:
            (k, m) = next(iter(rel))
            deg = self.degrees[k] + sum(m)
            self.relations.append((deg, {(k, tuple(m)): self.ar.conv(c) for (k, m), c in rel.items()}))
        self._parts: dict = {}

    def part(self, q: int):
        """(index of F_q basis, echelon basis of U_q, quotient columns)."""
        if q in self._parts:
            return self._parts[q]
        cols = [(k, m) for k, a in enumerate(self.degrees) for m in monomials(self.n1, q - a)]
        index = {t: i for i, t in enumerate(cols)}
        span = []
        for deg, rel in self.relations:
            for al in monomials(self.n1, q - deg):
                span.append({index[(k, tuple(x + y for x, y in zip(m, al)))]: c for (k, m), c in rel.items()})
        ech = row_reduce(span, self.ar)
        free = [i for i in range(len(cols)) if i not in ech]
        out = (index, ech, free)
        self._parts[q] = out
        return out

    def dim(self, q: int) -> int:
        return len(self.part(q)[2])

    def reduce(self, q: int, v: dict) -> dict:
        """Coordinates of v (dict over F_q basis indices) in the quotient basis."""
        _, ech, free = self.part(q)
        v = dict(v)
        for piv in sorted(ech):
            f = v.get(piv)
            if f:
                for k, c in ech[piv].items():
                    v[k] = self.ar.norm(v.get(k, 0) - f * c)
        pos = {c: i for i, c in enumerate(free)}
        return {pos[k]: c for k, c in v.items() if c and k in pos}

    def mult(self, q: int, var: int, j: int) -> dict:
        """x_var times the j-th quotient basis vector of M_q, in M_{q+1} coordinates."""
        index, _, free = self.part(q)
        cols = {i: t for t, i in index.items()}
        k, m = cols[free[j]]
        m2 = list(m)
        m2[var] += 1
        idx2 = self.part(q + 1)[0]
        return self.reduce(q + 1, {idx2[(k, tuple(m2))]: 1})


def _koszul_rank_tor(D: DegreewiseModule, i: int, j: int) -> int:
    """Rank of wedge^i V (x) M_{j-i} -> wedge^{i-1} V (x) M_{j-i+1}."""
    if i <= 0:
        return 0
    n1 = D.n1
    q = j - i
    dq = D.dim(q)
    if dq == 0:
        return 0
    lower = list(combinations(range(n1), i - 1))
    lidx = {J: t for t, J in enumerate(lower)}
    d1 = D.dim(q + 1)
    rows = []
    for J in combinations(range(n1), i):
        for b in range(dq):
            row = {}
            for t, v in enumerate(J):
                sign = -1 if t % 2 else 1
                J2 = J[:t] + J[t + 1:]
                for c, a in D.mult(q, v, b).items():
                    key = lidx[J2] * d1 + c
                    row[key] = D.ar.norm(row.get(key, 0) + sign * a)
            rows.append(row)
    return rank(rows, D.ar)


def tor_dims(M, jmax: int) -> dict:
    """{(i, j): dim Tor_i(B, M)_j} for j <= jmax, nonzero entries only."""
    D = DegreewiseModule(M)
    n1 = D.n1
    lo = min(M.degrees, default=0)
    out = {}
    for i in range(n1 + 1):
        for j in range(lo + i, jmax + 1):
            size = len(list(combinations(range(n1), i))) * D.dim(j - i)
            h = size - _koszul_rank_tor(D, i, j) - _koszul_rank_tor(D, i + 1, j)
            if h:
                out[(i, j)] = h
    return out


def _koszul_rank_ext(D: DegreewiseModule, j: int, p: int) -> int:
    """Rank of wedge^j V* (x) M_{p+j} -> wedge^{j+1} V* (x) M_{p+j+1}."""
    n1 = D.n1
    if j < 0 or j >= n1:
        return 0
    q = p + j
    dq = D.dim(q)
    if dq == 0:
        return 0
    upper = list(combinations(range(n1), j + 1))
    uidx = {J: t for t, J in enumerate(upper)}
    d1 = D.dim(q + 1)
    rows = []
    for J in combinations(range(n1), j):
        for b in range(dq):
            row = {}
            for v in range(n1):
                if v in J:
                    continue
                J2 = tuple(sorted(J + (v,)))
                sign = -1 if J2.index(v) % 2 else 1
                for c, a in D.mult(q, v, b).items():
                    key = uidx[J2] * d1 + c
                    row[key] = D.ar.norm(row.get(key, 0) + sign * a)
            rows.append(row)
    return rank(rows, D.ar)


def ext_dims(M, pmax: int) -> dict:
    """{(j, p): dim Ext^j(B, M)_p} for p <= pmax, computed from the Koszul cochain complex."""
    D = DegreewiseModule(M)
    n1 = D.n1
    lo = min(M.degrees, default=0)
    out = {}
    for j in range(n1 + 1):
        for p in range(lo - j, pmax + 1):
            size = len(list(combinations(range(n1), j))) * D.dim(p + j)
            h = size - _koszul_rank_ext(D, j, p) - _koszul_rank_ext(D, j - 1, p)
            if h:
                out[(j, p)] = h
    return out


def hom_power_dim(M, l: int, p: int, D: DegreewiseModule | None = None) -> int:
    """dim Hom(m^l, M)_p: images of the degree-l monomials in M_{l+p} satisfying
    x_i phi(u) = x_j phi(u') whenever x_i u = x_j u'."""
    D = D or DegreewiseModule(M)
    n1 = D.n1
    gens = monomials(n1, l)
    gidx = {u: t for t, u in enumerate(gens)}
    q = l + p
    dq = D.dim(q)
    if dq == 0:
        return 0
    if l == 0:
        return dq
    d1 = D.dim(q + 1)
    # each relation is a vector in M_{q+1}; collect the linear functional per unknown
    mults = {(v, b): D.mult(q, v, b) for v in range(n1) for b in range(dq)}
    eqs: dict = {}
    for w in monomials(n1, l + 1):
        srcs = [(v, gidx[tuple(a - (t == v) for t, a in enumerate(w))]) for v in range(n1) if w[v]]
        (v0, u0) = srcs[0]
        for v, u in srcs[1:]:
            for c in range(d1):
                eqs[(w, v, c)] = {}
            for b in range(dq):
                for c, a in mults[(v0, b)].items():
                    row = eqs[(w, v, c)]
                    row[u0 * dq + b] = D.ar.norm(row.get(u0 * dq + b, 0) + a)
                for c, a in mults[(v, b)].items():
                    row = eqs[(w, v, c)]
                    row[u * dq + b] = D.ar.norm(row.get(u * dq + b, 0) - a)
    # the functionals are columns; the rank of the system is the rank of the transpose
    cols: dict = {}
    for key, row in eqs.items():
        for var, a in row.items():
            if a:
                cols.setdefault(var, {})[key] = a
    keys = {k: t for t, k in enumerate(eqs)}
    mat = [{keys[k]: a for k, a in col.items()} for col in cols.values()]
    return len(gens) * dq - rank(mat, D.ar)


def free_map_rank(A, q: int, p: int) -> int:
    """Rank of a graded matrix between free modules in degree q."""
    ar = Arith(p)
    nv = A.ctx.n + 1
    rows = []
    for c, col in enumerate(A.cols):
        for u in monomials(nv, q - A.source.degrees[c]):
            rows.append({(pos, tuple(a + b for a, b in zip(m, u))): ar.conv(x) for (pos, m), x in col.items()})
    return rank(rows, ar)


def free_dim(degrees, nvars: int, q: int) -> int:
    return sum(len(monomials(nvars, q - a)) for a in degrees)
