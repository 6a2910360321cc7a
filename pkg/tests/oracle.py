"""Brute-force reference implementation, deliberately sharing no code with bautq.

Elements of a free graded-commutative algebra are dicts from sorted words
(tuples of generator names, repeats allowed for even generators) to Fractions.
Signs come from bubble-sorting words; ranks come from sympy.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

import sympy


class OAlg:
    def __init__(self, gens):
        self.gens = list(gens)  # [(name, degree)]
        self.deg = dict(self.gens)
        self.order = {n: i for i, (n, _) in enumerate(self.gens)}

    def odd(self, g):
        return self.deg[g] % 2 == 1

    def word_degree(self, w):
        return sum(self.deg[g] for g in w)

    def normalize(self, w):
        """(sign, sorted word) or (0, None) when an odd generator repeats."""
        w = list(w)
        sign = 1
        for i in range(len(w)):
            for j in range(len(w) - 1 - i):
                a, b = w[j], w[j + 1]
                if self.order[a] > self.order[b]:
                    w[j], w[j + 1] = b, a
                    if self.odd(a) and self.odd(b):
                        sign = -sign
        for a, b in zip(w, w[1:]):
            if a == b and self.odd(a):
                return 0, None
        return sign, tuple(w)

    def basis(self, degree):
        if degree < 0:
            return []
        out = []
        names = [n for n, _ in self.gens]
        maxlen = degree // max(1, min(self.deg.values(), default=1)) if self.gens else 0
        for k in range(0, maxlen + 1):
            for w in combinations_with_replacement(names, k):
                if self.word_degree(w) != degree:
                    continue
                s, nw = self.normalize(w)
                if s and nw not in out:
                    out.append(nw)
        return out

    def mul(self, a, b):
        out = {}
        for w1, c1 in a.items():
            for w2, c2 in b.items():
                s, w = self.normalize(w1 + w2)
                if s:
                    out[w] = out.get(w, 0) + s * c1 * c2
        return {w: c for w, c in out.items() if c}

    def add(self, a, b, c=1):
        out = dict(a)
        for w, x in b.items():
            out[w] = out.get(w, 0) + c * x
        return {w: x for w, x in out.items() if x}

    def gen(self, g):
        return {(g,): Fraction(1)}

    def apply(self, images, shift, x):
        """Derivation of degree -shift given on generators, applied to x word by word."""
        out = {}
        for w, c in x.items():
            pre = 0
            for k, g in enumerate(w):
                img = images.get(g)
                if img:
                    sign = -1 if (shift * pre) % 2 else 1
                    left = {w[:k]: Fraction(1)}
                    right = {w[k + 1:]: Fraction(1)}
                    # left part is already sorted; multiply out and renormalize
                    piece = self.mul(self.mul(left, img), right)
                    out = self.add(out, piece, sign * c)
                pre += self.deg[g]
        return out


def parse_simple(alg: OAlg, terms):
    """terms: list of (coeff, [generator names]) -> element."""
    out = {}
    for c, names in terms:
        x = {(): Fraction(c)}
        for n in names:
            x = alg.mul(x, alg.gen(n))
        out = alg.add(out, x)
    return out


def sympy_rank(cols, nrows):
    if not cols or nrows == 0:
        return 0
    m = sympy.Matrix(nrows, len(cols), lambda i, j: sympy.Rational(cols[j][i].numerator, cols[j][i].denominator))
    return m.rank()


class OModel:
    def __init__(self, gens, diff):
        self.alg = OAlg(gens)
        self.diff = diff  # name -> element

    def d(self, x):
        return self.alg.apply(self.diff, -1, x)


def _der_keys(model: OModel, n, sources):
    keys = []
    for g in sources:
        for w in model.alg.basis(model.alg.deg[g] - n):
            keys.append((g, w))
    return keys


def _boundary_of_key(model: OModel, n, key):
    """∂(g,w) = d∘σ - (-1)^n σ∘d, as a dict on elementary keys."""
    g, w = key
    sigma = {g: {w: Fraction(1)}}
    out = {}
    for h, _ in model.alg.gens:
        val = {}
        s_h = sigma.get(h, {})
        if s_h:
            val = model.alg.add(val, model.d(s_h))
        dh = model.diff.get(h, {})
        if dh:
            val = model.alg.add(val, model.alg.apply(sigma, n, dh), -((-1) ** n))
        for ww, c in val.items():
            out[(h, ww)] = out.get((h, ww), 0) + c
    return {k: c for k, c in out.items() if c}


def boundary_columns(model: OModel, n, sources):
    src = _der_keys(model, n, sources)
    tgt = _der_keys(model, n - 1, sources)
    idx = {k: i for i, k in enumerate(tgt)}
    cols = []
    for k in src:
        b = _boundary_of_key(model, n, k)
        col = [Fraction(0)] * len(tgt)
        for kk, c in b.items():
            col[idx[kk]] = c  # KeyError means the subcomplex is not closed
        cols.append(col)
    return cols, len(tgt)


def der_homology_dim(model: OModel, n, sources=None):
    sources = [g for g, _ in model.alg.gens] if sources is None else sources
    cols_n, rows_n = boundary_columns(model, n, sources)
    cols_up, rows_up = boundary_columns(model, n + 1, sources)
    dim_n = len(cols_n)
    z = dim_n - sympy_rank(cols_n, rows_n)
    # degree-1 chains are already cycles; boundaries from degree 2 land in them
    b = sympy_rank(cols_up, rows_up)
    return z - b


def cohomology_dim(model: OModel, k):
    def dmat(j):
        src = model.alg.basis(j)
        tgt = model.alg.basis(j + 1)
        idx = {w: i for i, w in enumerate(tgt)}
        cols = []
        for w in src:
            img = model.d({w: Fraction(1)})
            col = [Fraction(0)] * len(tgt)
            for ww, c in img.items():
                col[idx[ww]] = c
            cols.append(col)
        return cols, len(tgt)

    c_k, r_k = dmat(k)
    c_prev, r_prev = dmat(k - 1) if k > 0 else ([], 0)
    return len(c_k) - sympy_rank(c_k, r_k) - sympy_rank(c_prev, r_prev)


def in_boundaries(model: OModel, n, sources, element: dict) -> bool:
    """Is the degree-n derivation (keys (g, word)) a boundary in the sub-complex on ``sources``?"""
    cols, rows = boundary_columns(model, n + 1, sources)
    tgt = _der_keys(model, n, sources)
    idx = {k: i for i, k in enumerate(tgt)}
    v = [Fraction(0)] * len(tgt)
    for k, c in element.items():
        v[idx[k]] = c
    return sympy_rank(cols, rows) == sympy_rank(cols + [v], rows)


def zero_extended_tau(model: OModel, base_images: dict, shift: int, fiber_gens) -> dict:
    """W-components of ∂_X applied to a derivation given on base generators."""
    out = {}
    for h in fiber_gens:
        dh = model.diff.get(h, {})
        if not dh:
            continue
        val = model.alg.apply(base_images, shift, dh)
        for w, c in val.items():
            out[(h, w)] = out.get((h, w), 0) - ((-1) ** shift) * c
    return {k: c for k, c in out.items() if c}


def neg_derivation_dim(ring_gens, relations, k):
    """dim of degree -k derivations of Q[x]/(relations); relations are elements of OAlg(ring_gens)."""
    alg = OAlg(ring_gens)

    def ideal_cols(deg):
        basis = alg.basis(deg)
        idx = {w: i for i, w in enumerate(basis)}
        cols = []
        for f in relations:
            fdeg = alg.word_degree(next(iter(f)))
            for w in alg.basis(deg - fdeg):
                g = alg.mul({w: Fraction(1)}, f)
                col = [Fraction(0)] * len(basis)
                for ww, c in g.items():
                    col[idx[ww]] = c
                cols.append(col)
        return cols, len(basis)

    unknowns = [(g, w) for g, d in ring_gens for w in alg.basis(d - k)]
    if not unknowns:
        return 0
    # A: unknowns -> ⊕_j Q[x]_{|f_j| - k}
    targets = []
    for f in relations:
        targets.append(alg.word_degree(next(iter(f))) - k)
    blocks = [alg.basis(t) if t >= 0 else [] for t in targets]
    offsets, total = [], 0
    for b in blocks:
        offsets.append(total)
        total += len(b)
    a_cols = []
    for g, w in unknowns:
        col = [Fraction(0)] * total
        for j, f in enumerate(relations):
            if targets[j] < 0:
                continue
            img = alg.apply({g: {w: Fraction(1)}}, k, f)
            idx = {ww: i for i, ww in enumerate(blocks[j])}
            for ww, c in img.items():
                col[offsets[j] + idx[ww]] = c
        a_cols.append(col)
    s_cols = []
    for j, t in enumerate(targets):
        if t < 0:
            continue
        cols, _ = ideal_cols(t)
        for c in cols:
            s_cols.append([Fraction(0)] * offsets[j] + c + [Fraction(0)] * (total - offsets[j] - len(c)))
    rank_a = sympy_rank(a_cols, total)
    rank_s = sympy_rank(s_cols, total)
    rank_as = sympy_rank(a_cols + s_cols, total)
    solutions = (len(unknowns) - rank_a) + (rank_a + rank_s - rank_as)
    trivial = 0
    for g, d in ring_gens:
        cols, rows = ideal_cols(d - k)
        trivial += sympy_rank(cols, rows) if d - k >= 0 else 0
    return solutions - trivial
