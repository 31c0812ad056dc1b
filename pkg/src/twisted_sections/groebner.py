"""Groebner bases for graded submodules of free S-modules.

Vectors use the sparse form ``{(position, monomial): coefficient}``.
Internally every module term is packed into one Python integer whose
numeric order is the module order (position over term, position 0 largest,
then degrevlex on x, then degrevlex on y).  The packing is additive in the
monomial, so multiplying a term by a monomial is integer addition and the
leading term of a vector is ``max`` of its keys.

All inputs must be homogeneous in x; the algorithm runs degree by degree
(normal selection, smallest lcm first) and interleaves the input
generators, which also yields an irredundant generating subset.
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .matrices import GradedFree, GradedMatrix
from .polys import InhomogeneousError, vec_axpy, vec_degree, vec_reindex
from .rings import PolyRing, mono_div, mono_lcm

_BITS = 16
_W = 1 << _BITS


class TermCodec:
    """Order-preserving, additive integer encoding of module terms."""

    def __init__(self, nx: int, ny: int):
        self.nx, self.ny = nx, ny
        self.nvars = nx + ny
        self.pos_unit = _W ** max(self.nvars, 1)
        self._dec: dict = {}
        self._enc: dict = {}

    def mono(self, e: tuple) -> int:
        k = self._enc.get(e)
        if k is not None:
            return k
        key = 0
        for block in ((0, self.nx), (self.nx, self.nvars)):
            lo, hi = block
            if hi == lo:
                continue
            xs = e[lo:hi]
            digits = [sum(xs)]
            s = 0
            partial = []
            for v in xs[:-1]:
                s += v
                partial.append(s)
            digits.extend(reversed(partial))
            for dgt in digits:
                key = key * _W + dgt
        self._enc[e] = key
        self._dec[key] = e
        return key

    def decode(self, key: int) -> tuple:
        e = self._dec.get(key)
        if e is not None:
            return e
        digits = []
        k = key
        for _ in range(self.nvars):
            k, r = divmod(k, _W)
            digits.append(r)
        digits.reverse()
        out = []
        at = 0
        for size in (self.nx, self.ny):
            if not size:
                continue
            block = digits[at: at + size]
            at += size
            total, partial = block[0], list(reversed(block[1:]))
            exps = []
            prev = 0
            for s in partial:
                exps.append(s - prev)
                prev = s
            exps.append(total - prev)
            out.extend(exps)
        e = tuple(out)
        self._dec[key] = e
        self._enc[e] = key
        return e

    def term(self, pos: int, e: tuple) -> int:
        return self.mono(e) - pos * self.pos_unit

    def split(self, t: int) -> tuple:
        q, r = divmod(t, self.pos_unit)
        return -q, self.decode(r)

    def encode_vec(self, v: Mapping) -> dict:
        pu = self.pos_unit
        mono = self.mono
        return {mono(m) - q * pu: c for (q, m), c in v.items()}

    def decode_vec(self, v: Mapping) -> dict:
        split = self.split
        return {split(t): c for t, c in v.items()}


@lru_cache(maxsize=None)
def codec_for(nx: int, ny: int) -> TermCodec:
    return TermCodec(nx, ny)


def _mask(e: tuple) -> int:
    m = 0
    for i, v in enumerate(e):
        if v:
            m |= 1 << i
    return m


class _Elem:
    __slots__ = ("vec", "lt", "pos", "ltm", "mask", "deg", "tail")

    def __init__(self, vec: dict, codec: TermCodec, deg: int):
        self.vec = vec
        self.lt = max(vec)
        self.pos, self.ltm = codec.split(self.lt)
        self.mask = _mask(self.ltm)
        self.deg = deg
        self.tail = [(k, c) for k, c in vec.items() if k != self.lt]


class _Engine:
    """Shared state of one Buchberger run."""

    def __init__(self, ring: PolyRing, posdeg: Sequence[int]):
        self.ring = ring
        self.p = ring.p
        self.field = ring.field
        self.codec = codec_for(ring.nx, ring.ny)
        self.posdeg = list(posdeg)
        self.elems: list = []
        self.by_pos: dict = {}

    # -- degrees --
    def deg_of(self, v: Mapping) -> int | None:
        split = self.codec.split
        nx = self.ring.nx
        degs = set()
        for t in v:
            q, e = split(t)
            degs.add(sum(e[:nx]) + self.posdeg[q])
        if len(degs) > 1:
            raise InhomogeneousError(f"vector is not homogeneous: degrees {sorted(degs)}")
        return degs.pop() if degs else None

    # -- reduction --
    def find_divisor(self, t: int):
        q, e = self.codec.split(t)
        cands = self.by_pos.get(q)
        if not cands:
            return None
        m = _mask(e)
        for g in cands:
            if g.mask & ~m:
                continue
            ge = g.ltm
            for a, b in zip(e, ge):
                if a < b:
                    break
            else:
                return g
        return None

    def reduce(self, v: dict, full: bool = True) -> dict:
        """Normal form of v (a fresh dict) against the current elements."""
        p = self.p
        rem: dict = {}
        find = self.find_divisor
        # max-heap of candidate leading terms; entries whose key left v are stale
        heap = [-k for k in v]
        heapq.heapify(heap)
        push, pop = heapq.heappush, heapq.heappop
        while heap:
            t = -pop(heap)
            c = v.pop(t, None)
            if c is None:
                continue
            g = find(t)
            if g is None:
                rem[t] = c
                if not full:
                    rem.update(v)
                    return rem
                continue
            s = t - g.lt
            get = v.get
            for k, a in g.tail:
                nk = k + s
                old = get(nk)
                if old is None:
                    nv = (-c * a) % p if p else -c * a
                    if nv:
                        v[nk] = nv
                        push(heap, -nk)
                    continue
                nv = (old - c * a) % p if p else old - c * a
                if nv:
                    v[nk] = nv
                else:
                    del v[nk]
        return rem

    def monic(self, v: dict) -> dict:
        lc = v[max(v)]
        if lc == 1:
            return v
        inv = self.field.inv(lc)
        p = self.p
        if p:
            return {k: (c * inv) % p for k, c in v.items()}
        return {k: c * inv for k, c in v.items()}

    def add(self, v: dict, deg: int) -> _Elem:
        el = _Elem(self.monic(v), self.codec, deg)
        self.elems.append(el)
        self.by_pos.setdefault(el.pos, []).append(el)
        return el

    def spoly(self, a: _Elem, b: _Elem, lcm: tuple) -> dict:
        mono = self.codec.mono
        sa = mono(mono_div(lcm, a.ltm))
        sb = mono(mono_div(lcm, b.ltm))
        p = self.p
        v = {k + sa: c for k, c in a.tail}
        get = v.get
        for k, c in b.tail:
            nk = k + sb
            nv = get(nk, 0) - c
            if p:
                nv %= p
            if nv:
                v[nk] = nv
            elif nk in v:
                del v[nk]
        return v


def _buchberger(eng: _Engine, gens: list) -> list:
    """Run the interleaved Buchberger algorithm; return indices of kept generators."""
    nx = eng.ring.nx
    pending: dict = {}
    for idx, v in enumerate(gens):
        if not v:
            continue
        d = eng.deg_of(v)
        pending.setdefault(d, []).append((idx, v))
    for d in pending:
        pending[d].reverse()  # pop() from the end keeps input order
    heap: list = []
    pairs: dict = {}  # id -> [i, j, lcm, alive]
    counter = [0]
    kept: list = []
    posdeg = eng.posdeg
    codec = eng.codec

    def update(hi: int):
        h = eng.elems[hi]
        same = [gi for gi, g in enumerate(eng.elems[:-1]) if g.pos == h.pos]
        # chain criterion on old pairs
        hm = h.ltm
        for rec in pairs.values():
            if not rec[3] or eng.elems[rec[0]].pos != h.pos:
                continue
            L = rec[2]
            if all(a >= b for a, b in zip(L, hm)):
                if mono_lcm(eng.elems[rec[0]].ltm, hm) != L and mono_lcm(eng.elems[rec[1]].ltm, hm) != L:
                    rec[3] = False
        # new pairs, keep only lcm-minimal ones
        cand = [(mono_lcm(eng.elems[gi].ltm, hm), gi) for gi in same]
        cand.sort(key=lambda lg: (sum(lg[0]), lg[1]))
        chosen: list = []
        for L, gi in cand:
            if any(all(a >= b for a, b in zip(L, L2)) for L2, _ in chosen):
                continue
            chosen.append((L, gi))
        for L, gi in chosen:
            deg = sum(L[:nx]) + posdeg[h.pos]
            pid = counter[0]
            counter[0] += 1
            pairs[pid] = [gi, hi, L, True]
            heapq.heappush(heap, (deg, codec.mono(L), pid))

    def next_degree():
        while heap and not pairs[heap[0][2]][3]:
            pid = heapq.heappop(heap)[2]
            del pairs[pid]
        cands = []
        if heap:
            cands.append(heap[0][0])
        if pending:
            cands.append(min(pending))
        return min(cands) if cands else None

    while True:
        D = next_degree()
        if D is None:
            break
        while True:
            # all pairs of degree D
            while heap and heap[0][0] == D:
                _, _, pid = heapq.heappop(heap)
                i, j, L, alive = pairs.pop(pid)
                if not alive:
                    continue
                r = eng.reduce(eng.spoly(eng.elems[i], eng.elems[j], L))
                if r:
                    eng.add(r, D)
                    update(len(eng.elems) - 1)
            gens_d = pending.get(D)
            if not gens_d:
                pending.pop(D, None)
                break
            idx, v = gens_d.pop()
            if not gens_d:
                del pending[D]
            r = eng.reduce(dict(v))
            if r:
                kept.append(idx)
                eng.add(r, D)
                update(len(eng.elems) - 1)
    return kept


def _interreduce(eng: _Engine) -> list:
    """Reduced Groebner basis from the engine's elements."""
    minimal: list = []
    by_pos: dict = {}
    for g in sorted(eng.elems, key=lambda g: g.lt):
        kept = by_pos.setdefault(g.pos, [])
        if any(all(a >= b for a, b in zip(g.ltm, h.ltm)) for h in kept):
            continue
        kept.append(g)
        minimal.append(g)
    red = _Engine(eng.ring, eng.posdeg)
    red.by_pos = by_pos
    final = _Engine(eng.ring, eng.posdeg)
    for g in minimal:
        lst = by_pos[g.pos]
        lst.remove(g)
        v = red.reduce(dict(g.tail))
        lst.append(g)
        v[g.lt] = 1
        final.add(v, g.deg)
    return final.elems


class GroebnerBasis:
    """A reduced Groebner basis of a graded submodule of a free module.

    ``posdeg`` holds the degrees of the ambient free module's generators.
    """

    def __init__(self, ring: PolyRing, posdeg: Sequence[int], generators: Iterable[Mapping]):
        self.ring = ring
        self.posdeg = tuple(posdeg)
        eng = _Engine(ring, posdeg)
        gens = [eng.codec.encode_vec(v) for v in generators]
        self.kept = _buchberger(eng, gens)
        self._eng = _Engine(ring, posdeg)
        for el in _interreduce(eng):
            self._eng.elems.append(el)
            self._eng.by_pos.setdefault(el.pos, []).append(el)

    @property
    def codec(self) -> TermCodec:
        return self._eng.codec

    def __len__(self):
        return len(self._eng.elems)

    @property
    def elements(self) -> list:
        return [self.codec.decode_vec(g.vec) for g in self._eng.elems]

    def leading_terms(self) -> list:
        return [(g.pos, g.ltm) for g in self._eng.elems]

    def leading_by_position(self) -> dict:
        out: dict = {}
        for g in self._eng.elems:
            out.setdefault(g.pos, []).append(g.ltm)
        return out

    def nf_encoded(self, v: dict) -> dict:
        return self._eng.reduce(dict(v))

    def normal_form(self, v: Mapping) -> dict:
        enc = self.codec.encode_vec(v)
        return self.codec.decode_vec(self._eng.reduce(enc))

    def contains(self, v: Mapping) -> bool:
        return not self._eng.reduce(self.codec.encode_vec(v))

    def is_standard(self, pos: int, mono: tuple) -> bool:
        return self._eng.find_divisor(self.codec.term(pos, mono)) is None

    def check_certificate(self) -> bool:
        """Re-check Buchberger's criterion: every S-pair reduces to zero."""
        els = self._eng.elems
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                a, b = els[i], els[j]
                if a.pos != b.pos:
                    continue
                L = mono_lcm(a.ltm, b.ltm)
                if self._eng.reduce(self._eng.spoly(a, b, L)):
                    return False
        return True


def groebner_basis(generators: Iterable[Mapping], posdeg: Sequence[int], ring: PolyRing) -> GroebnerBasis:
    return GroebnerBasis(ring, posdeg, generators)


def minimal_generators(vectors: Sequence[Mapping], posdeg: Sequence[int], ring: PolyRing) -> list:
    """Indices of an irredundant generating subset (minimal over a field base)."""
    eng = _Engine(ring, posdeg)
    return _buchberger(eng, [eng.codec.encode_vec(v) for v in vectors])


class Subquotient:
    """Generators Z of a submodule of F/<U>, with relations among them and lifting.

    One Groebner basis of ``{(z_j, e_j)} + {(u_i, 0)}`` in ``F + tags`` under
    position-over-term (F first) yields both the relation module of the
    images of Z in F/<U> and a lift of any element of their span.
    """

    def __init__(self, ring: PolyRing, posdeg: Sequence[int], Z: Sequence[Mapping],
                 zdeg: Sequence[int], U: Sequence[Mapping] = ()):
        self.ring = ring
        self.r = r = len(posdeg)
        self.nz = len(Z)
        self.zdeg = list(zdeg)
        full = list(posdeg) + list(zdeg)
        gens = []
        for j, z in enumerate(Z):
            v = dict(z)
            v[(r + j, ring.one)] = ring.field.one
            gens.append(v)
        gens.extend(dict(u) for u in U if u)
        self.gb = GroebnerBasis(ring, full, gens)

    def relations(self) -> list:
        """Generators of the relations among the images of Z (vectors in tag space)."""
        out = []
        r = self.r
        for g in self.gb._eng.elems:
            if g.pos >= r:
                vec = self.gb.codec.decode_vec(g.vec)
                out.append({(q - r, m): c for (q, m), c in vec.items()})
        return out

    def lift(self, v: Mapping) -> dict | None:
        """Coefficients c with v = sum c_j z_j modulo U, or None if v is not in the span."""
        codec = self.gb.codec
        nf = self.gb.nf_encoded(codec.encode_vec(v))
        r = self.r
        field = self.ring.field
        out = {}
        for t, c in nf.items():
            q, m = codec.split(t)
            if q < r:
                return None
            out[(q - r, m)] = field.neg(c)
        return out


def syzygies(columns: Sequence[Mapping], posdeg: Sequence[int], coldeg: Sequence[int],
             ring: PolyRing, minimal: bool = False) -> list:
    """Generators of the syzygy module of the columns, as vectors indexed by column."""
    sub = Subquotient(ring, posdeg, columns, coldeg)
    rels = sub.relations()
    if minimal and rels:
        keep = minimal_generators(rels, coldeg, ring)
        rels = [rels[i] for i in keep]
    return rels


# ---------- presentations ----------

class Minimalized:
    """Result of pruning a presentation ``(degrees, relations)``.

    ``keep[i]`` is the old index of new generator ``i``; ``proj[g]`` expresses
    old generator ``g`` in the new generators.  ``minimal`` is only claimed over
    a field base.
    """

    __slots__ = ("degrees", "relations", "keep", "proj", "minimal")

    def __init__(self, degrees, relations, keep, proj, minimal):
        self.degrees = degrees
        self.relations = relations
        self.keep = keep
        self.proj = proj
        self.minimal = minimal


def _substitute(v: dict, k: int, expr: dict, p: int) -> dict:
    """Replace generator k inside v by the vector expr."""
    comp = [(m, c) for (q, m), c in v.items() if q == k]
    if not comp:
        return v
    out = {t: c for t, c in v.items() if t[0] != k}
    for m, c in comp:
        vec_axpy(out, c, expr, p, shift=m)
    return out


def minimalize_raw(ring: PolyRing, degrees: Sequence[int], relations: Sequence[Mapping],
                   minimal_relations: bool = True) -> Minimalized:
    """Cancel unit entries, then keep an irredundant subset of the relations."""
    field = ring.field
    p = ring.p
    one = ring.one
    rels = [dict(r) for r in relations if r]
    exprs: dict = {}
    while True:
        found = None
        for ri, r in enumerate(rels):
            units = [q for (q, m) in r if m == one]
            if units:
                found = (ri, max(units))
                break
        if found is None:
            break
        ri, k = found
        r = rels.pop(ri)
        c = r[(k, one)]
        inv = field.inv(c)
        expr = {t: (field.neg(a * inv)) for t, a in r.items() if t != (k, one)}
        if p:
            expr = {t: a % p for t, a in expr.items()}
        rels = [_substitute(s, k, expr, p) for s in rels]
        rels = [s for s in rels if s]
        for g in list(exprs):
            exprs[g] = _substitute(exprs[g], k, expr, p)
        exprs[k] = expr
    alive = [g for g in range(len(degrees)) if g not in exprs]
    new_index = {g: i for i, g in enumerate(alive)}
    new_deg = [degrees[g] for g in alive]
    rels = [vec_reindex(r, new_index) for r in rels]
    if minimal_relations and rels:
        rels = [rels[i] for i in minimal_generators(rels, new_deg, ring)]
    proj = []
    for g in range(len(degrees)):
        if g in exprs:
            proj.append(vec_reindex(exprs[g], new_index))
        else:
            proj.append({(new_index[g], one): field.one})
    return Minimalized(new_deg, rels, alive, proj, minimal=ring.ny == 0)


def syzygy_module(m: GradedMatrix, minimal: bool | None = None) -> GradedMatrix:
    """Matrix whose columns generate all syzygies of the columns of m."""
    ctx = m.ctx
    if minimal is None:
        minimal = ctx.base.is_field
    rels = syzygies(m.cols, m.target.degrees, m.source.degrees, ctx.ring, minimal=minimal)
    degs = [vec_degree(r, ctx.ring, m.source.degrees) for r in rels]
    return GradedMatrix(ctx, GradedFree(degs), m.source, rels, check=False)


def minimalize(pres: GradedMatrix) -> tuple:
    """Prune a presentation matrix (target = generators).

    Returns ``(matrix, info)``; ``info.minimal`` is False over a polynomial
    base, where unit cancellation is still done but minimality is not claimed.
    """
    ctx = pres.ctx
    info = minimalize_raw(ctx.ring, pres.target.degrees, pres.cols)
    degs = [vec_degree(r, ctx.ring, info.degrees) for r in info.relations]
    mat = GradedMatrix(ctx, GradedFree(degs), GradedFree(info.degrees), info.relations, check=False)
    return mat, info


def free_resolution(pres: GradedMatrix, max_length: int | None = None) -> list:
    """Free resolution of coker(pres): maps d_1, d_2, ... (d_i: F_i -> F_{i-1}).

    Over a field base the presentation is minimalized first, so the ranks and
    degrees of the F_i are the graded Betti numbers.
    """
    ctx = pres.ctx
    if max_length is None:
        max_length = ctx.n + 1 + len(ctx.y_names) + 1
    field_base = ctx.base.is_field
    if field_base:
        pres, _ = minimalize(pres)
    steps = []
    cur = pres
    while cur.source.rank and len(steps) < max_length:
        steps.append(cur)
        cur = syzygy_module(cur, minimal=field_base)
    return steps
