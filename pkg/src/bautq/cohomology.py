"""Bounded-degree cohomology, finite quotient rings and the Halperin test."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import AlgElement, Generator, GradedAlgebra, leibniz_extend
from .linalg import RatMatrix, _rref_rows, independent_subset, kernel_basis, rank
from .models import RelativeModel, SullivanModel, classify, validate_model


class NotPure(ValueError):
    pass


class NotF0(ValueError):
    pass


class NotAKSExtension(ValueError):
    pass


@dataclass
class CohomologyTable:
    cutoff: int
    dims: dict[int, int]
    reps: dict[int, list[AlgElement]]
    certified_zero_beyond: int | None = None

    def dims_list(self) -> list[int]:
        return [self.dims[k] for k in range(self.cutoff + 1)]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def last_nonzero(self) -> int:
        return max((k for k, v in self.dims.items() if v), default=0)


def _d_matrix(m: SullivanModel, k: int) -> RatMatrix:
    src = m.alg.monomial_basis(k)
    tgt = m.alg.monomial_basis(k + 1)
    idx = {t: i for i, t in enumerate(tgt)}
    cols = []
    for mono in src:
        img = m.d(m.alg.mono(mono))
        col = [Fraction(0)] * len(tgt)
        for t, c in img.terms.items():
            col[idx[t]] = c
        cols.append(col)
    return RatMatrix.from_columns(cols, len(tgt))


def cdga_cohomology(m: SullivanModel, cutoff: int) -> CohomologyTable:
    """H^k(ΛV, d) for 0 ≤ k ≤ cutoff with cocycle representatives."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    alg = m.alg
    dims, reps = {}, {}
    prev = None  # matrix of d from degree k-1 to k
    for k in range(cutoff + 1):
        cur = _d_matrix(m, k)
        basis = alg.monomial_basis(k)
        cycles = kernel_basis(cur)
        bnd = [prev.column(j) for j in range(prev.cols)] if prev is not None else []
        chosen = independent_subset(cycles, bnd) if cycles else []
        dims[k] = len(chosen)
        reps[k] = [AlgElement(alg, {b: c for b, c in zip(basis, cycles[j]) if c}) for j in chosen]
        prev = cur
    return CohomologyTable(cutoff, dims, reps)


class FiniteGradedRing:
    """Q[x_1..x_n]/(f_1..f_m) on even generators, handled degree by degree."""

    def __init__(self, gens: Sequence[Generator | tuple] | GradedAlgebra, relations: Sequence[AlgElement]):
        self.alg = gens if isinstance(gens, GradedAlgebra) else GradedAlgebra(gens)
        if any(self.alg.odd):
            raise ValueError("quotient rings here are evenly graded")
        rels = []
        for f in relations:
            f = f if f.alg == self.alg else self.alg.embed(f)
            if f.is_zero():
                continue
            f.degree()  # homogeneity check
            rels.append(f)
        self.relations = rels
        self._cache: dict[int, tuple] = {}

    @property
    def complete_intersection(self) -> bool:
        return len(self.relations) == len(self.alg)

    @property
    def socle_degree(self) -> int:
        """Σ(|f_i| - |x_i|), the top degree of a complete intersection."""
        return sum(f.degree() for f in self.relations) - sum(self.alg.degrees)

    def _degree_data(self, k: int):
        if k not in self._cache:
            basis = self.alg.monomial_basis(k)
            idx = {b: i for i, b in enumerate(basis)}
            rows = []
            for f in self.relations:
                for mono in self.alg.monomial_basis(k - f.degree()):
                    g = self.alg.mono(mono) * f
                    row = [Fraction(0)] * len(basis)
                    for t, c in g.terms.items():
                        row[idx[t]] = c
                    rows.append(row)
            red, piv = _rref_rows(rows, len(basis)) if rows else ([], [])
            red = red[: len(piv)]
            std = [i for i in range(len(basis)) if i not in set(piv)]
            self._cache[k] = (basis, idx, red, piv, std)
        return self._cache[k]

    def dim(self, k: int) -> int:
        if k < 0:
            return 0
        return len(self._degree_data(k)[4])

    def quotient_basis(self, k: int) -> list[tuple]:
        basis, _, _, _, std = self._degree_data(k)
        return [basis[i] for i in std]

    def reduce(self, x: AlgElement) -> list[Fraction]:
        """Coordinates of the class of a homogeneous x on the standard monomials."""
        if x.is_zero():
            return []
        k = x.degree()
        basis, idx, red, piv, std = self._degree_data(k)
        v = [Fraction(0)] * len(basis)
        for t, c in x.terms.items():
            v[idx[t]] = c
        for row, p in zip(red, piv):
            f = v[p]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return [v[i] for i in std]

    def is_zero(self, x: AlgElement) -> bool:
        return not any(self.reduce(x))

    def poincare_series_ci(self, upto: int) -> list[int]:
        """Coefficients of ∏(1 - t^|f|)/∏(1 - t^|x|) up to degree ``upto``."""
        series = [0] * (upto + 1)
        series[0] = 1
        for d in self.alg.degrees:
            for k in range(d, upto + 1):
                series[k] += series[k - d]
        for f in self.relations:
            d = f.degree()
            for k in range(upto, d - 1, -1):
                series[k] -= series[k - d]
        return series


@dataclass
class NegDerivations:
    k: int
    dim: int
    witnesses: list[dict[str, AlgElement]] = field(default_factory=list)


def neg_derivations_of_ring(r: FiniteGradedRing, k: int) -> NegDerivations:
    """Derivations θ of degree -k of the quotient ring, θ(x_i) ∈ R^{|x_i|-k}."""
    if k < 1:
        raise ValueError("k must be positive")
    alg = r.alg
    unknowns = []  # (generator index, monomial)
    for i, d in enumerate(alg.degrees):
        for mono in r.quotient_basis(d - k) if d - k >= 0 else []:
            unknowns.append((i, mono))
    if not unknowns:
        return NegDerivations(k, 0)
    cols = []
    for i, mono in unknowns:
        col = []
        for f in r.relations:
            img = leibniz_extend({i: alg.mono(mono)}, k, f, check=False)
            if f.degree() - k >= 0:
                red = r.reduce(img) if not img.is_zero() else [Fraction(0)] * r.dim(f.degree() - k)
                col += red
        cols.append(col)
    nrows = len(cols[0])
    ker = kernel_basis(RatMatrix.from_columns(cols, nrows)) if nrows else [
        [Fraction(int(a == b)) for a in range(len(unknowns))] for b in range(len(unknowns))
    ]
    wit = []
    for v in ker:
        theta: dict[str, AlgElement] = {}
        for (i, mono), c in zip(unknowns, v):
            if c:
                theta[alg.names[i]] = theta.get(alg.names[i], alg.zero()) + alg.mono(mono, c)
        wit.append(theta)
    return NegDerivations(k, len(ker), wit)


def ring_of_pure_model(m: SullivanModel) -> FiniteGradedRing:
    """Q[x]/(d y_1, ..., d y_n) for a pure model with even x's and odd y's."""
    cl = classify(m)
    if not cl.strictly_pure:
        raise NotPure("model is not pure (odd images must be polynomials in the even generators)")
    even = [g for g in m.alg.gens if not g.odd]
    ring_alg = GradedAlgebra(even)
    rels = [m.alg.restrict(m.d_of(i), ring_alg) for i, g in enumerate(m.alg.gens) if g.odd]
    return FiniteGradedRing(ring_alg, rels)


@dataclass
class F0Verdict:
    is_f0: bool
    reason: str
    formal_dimension: int | None = None
    table: CohomologyTable | None = None

    def __bool__(self):
        return self.is_f0


def f0_certify(m: SullivanModel) -> F0Verdict:
    """Equal even/odd generator counts, H^odd = 0 and vanishing above the formal dimension.

    Cohomology is computed up to twice the formal dimension Σ|y| - Σ(|x|-1);
    zeros on (N, 2N] are taken as the finiteness certificate.
    """
    cl = classify(m)
    if not cl.pure:
        raise NotPure("f0_certify needs a pure model")
    if cl.n_even != cl.n_odd:
        return F0Verdict(False, f"{cl.n_even} even vs {cl.n_odd} odd generators")
    if not cl.strictly_pure:
        return F0Verdict(False, "odd generators appear in the images of odd generators")
    n = sum(g.degree for g in m.alg.gens if g.odd) - sum(g.degree - 1 for g in m.alg.gens if not g.odd)
    table = cdga_cohomology(m, 2 * max(n, 0))
    odd = [k for k, v in table.dims.items() if v and k % 2]
    if odd:
        return F0Verdict(False, f"odd cohomology in degrees {odd}", n, table)
    beyond = [k for k, v in table.dims.items() if v and k > n]
    if beyond:
        return F0Verdict(False, f"cohomology above the formal dimension {n}: {beyond}", n, table)
    table.certified_zero_beyond = n
    return F0Verdict(True, f"finite even cohomology, top degree {n}", n, table)


@dataclass
class HalperinVerdict:
    holds: bool
    per_k: dict[int, int]
    witnesses: dict[int, list] = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def halperin_test(m: SullivanModel, require_f0: bool = True) -> HalperinVerdict:
    """True iff the cohomology ring has no nonzero derivation of negative degree.

    Only degrees -k with 1 ≤ k ≤ max|x_i| can carry such derivations.
    """
    if require_f0:
        v = f0_certify(m)
        if not v:
            raise NotF0(v.reason)
    ring = ring_of_pure_model(m)
    per_k, wit = {}, {}
    for k in range(1, max(ring.alg.degrees, default=0) + 1):
        nd = neg_derivations_of_ring(ring, k)
        per_k[k] = nd.dim
        if nd.dim:
            wit[k] = nd.witnesses
    return HalperinVerdict(not wit, per_k, wit)


@dataclass
class BorelReport:
    extension: RelativeModel
    table: CohomologyTable
    growth_within_cutoff: bool
    note: str


def borel_extend(m: SullivanModel, torus: int | Sequence[str], images: Mapping, cutoff: int) -> BorelReport:
    """The KS extension Q[t_1..t_r] → Q[t]⊗ΛV with D t_i = 0 and D v ≡ d v mod (t).

    Only cohomology up to ``cutoff`` is computed; global finiteness is never
    claimed.
    """
    names = [f"t{i + 1}" for i in range(torus)] if isinstance(torus, int) else list(torus)
    for n in names:
        if m.alg.has(n):
            raise NotAKSExtension(f"torus generator {n} clashes with a model generator")
    base = SullivanModel([(n, 2) for n in names], {}, name="BT")
    total_alg = GradedAlgebra(list(base.alg.gens) + list(m.alg.gens))
    parsed = {}
    for k, v in images.items():
        if isinstance(v, str):
            from .dsl import parse_poly

            v = parse_poly(v, total_alg)
        elif isinstance(v, AlgElement) and v.alg != total_alg:
            v = total_alg.embed(v)
        parsed[k] = v
    for n in names:
        if n in parsed and not parsed[n].is_zero():
            raise NotAKSExtension(f"D({n}) must vanish")
    fib = {}
    for i, g in enumerate(m.alg.gens):
        img = parsed.get(g.name, total_alg.embed(m.d_of(i)))
        no_t = AlgElement(total_alg, {mono: c for mono, c in img.terms.items() if not any(mono[: len(names)])})
        if no_t != total_alg.embed(m.d_of(i)):
            raise NotAKSExtension(f"D({g.name}) is not d({g.name}) modulo the ideal (t)")
        fib[g.name] = img
    unknown = set(parsed) - set(names) - set(m.alg.names)
    if unknown:
        raise NotAKSExtension(f"unknown generators {sorted(unknown)}")
    rm = RelativeModel(base, m.alg.gens, fib, name="borel", total_name="Borel")
    rep = validate_model(rm.total)
    if not rep.ok:
        raise NotAKSExtension("; ".join(rep.failures))
    table = cdga_cohomology(rm.total, cutoff)
    upper = [k for k in range(cutoff // 2 + 1, cutoff + 1) if table.dims[k]]
    growth = bool(upper)
    note = (
        f"cohomology computed up to degree {cutoff} only; "
        + ("nonzero classes persist near the cutoff" if growth else f"zero on ({cutoff // 2}, {cutoff}]")
    )
    return BorelReport(rm, table, growth, note)
