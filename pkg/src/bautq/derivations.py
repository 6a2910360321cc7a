"""The derivation DGL Der M of a Sullivan model and its homology.

Conventions: σ ∈ Der_i lowers degree by i and satisfies
σ(xy) = σ(x)y + (-1)^(i|x|) x σ(y); the boundary is ∂σ = d∘σ - (-1)^i σ∘d and
the bracket is [σ,τ] = σ∘τ - (-1)^(|σ||τ|) τ∘σ. In degree 1 only ∂-cycles are
chains, so ∂ of a degree-1 derivation (a shift-0 derivation) never enters the
complex.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import AlgElement, GradedAlgebra, Monomial, apply_on_mono, leibniz_extend
from .linalg import RatMatrix, as_fraction, in_span, independent_subset, kernel_basis, rank
from .models import SullivanModel

Key = tuple  # (generator index, monomial)

SIGN_NOTE = (
    "bracket [s,t] = s∘t - (-1)^(|s||t|) t∘s and boundary ∂s = d∘s - (-1)^|s| s∘d, "
    "evaluated mechanically; printed examples may differ from these by a global sign"
)


class Derivation:
    """A derivation of shift ``shift`` given by its values on generators."""

    __slots__ = ("alg", "shift", "images")

    def __init__(self, alg: GradedAlgebra, shift: int, images: Mapping | None = None, check: bool = True):
        self.alg = alg
        self.shift = shift
        imgs: dict[int, AlgElement] = {}
        for k, v in (images or {}).items():
            i = k if isinstance(k, int) else alg.index(k)
            if not isinstance(v, AlgElement):
                v = alg.scalar(v)
            elif v.alg != alg:
                v = alg.embed(v)
            if v.is_zero():
                continue
            if check:
                want = alg.degrees[i] - shift
                if v.degree() != want:
                    raise ValueError(
                        f"image of {alg.names[i]} has degree {v.degree()}, a shift-{shift} derivation needs {want}"
                    )
            imgs[i] = v
        self.images = imgs

    @classmethod
    def elementary(cls, alg: GradedAlgebra, gen, value=None, coeff=1) -> "Derivation":
        """The elementary derivation (gen, value); ``value`` is a monomial tuple or an element."""
        i = gen if isinstance(gen, int) else alg.index(gen)
        if value is None:
            value = alg.one()
        elif isinstance(value, tuple):
            value = alg.mono(value)
        value = value * as_fraction(coeff)
        shift = alg.degrees[i] - (value.degree() if not value.is_zero() else 0)
        return cls(alg, shift, {i: value})

    @classmethod
    def zero(cls, alg: GradedAlgebra, shift: int) -> "Derivation":
        return cls(alg, shift, {})

    def __call__(self, x: AlgElement) -> AlgElement:
        return leibniz_extend(self.images, self.shift, x, check=False)

    def on_gen(self, i: int) -> AlgElement:
        return self.images.get(i, self.alg.zero())

    def _same(self, other: "Derivation"):
        if other.alg != self.alg:
            raise ValueError("derivations of different algebras")
        if other.shift != self.shift and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"cannot add shifts {self.shift} and {other.shift}")

    def __add__(self, other: "Derivation") -> "Derivation":
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        shift = self.shift if not self.is_zero() else other.shift
        imgs = dict(self.images)
        for i, v in other.images.items():
            imgs[i] = imgs[i] + v if i in imgs else v
        return Derivation(self.alg, shift, imgs, check=False)

    __radd__ = __add__

    def __neg__(self):
        return Derivation(self.alg, self.shift, {i: -v for i, v in self.images.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = as_fraction(c)
        return Derivation(self.alg, self.shift, {i: v * c for i, v in self.images.items()}, check=False)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.images

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.alg == other.alg and self.shift == other.shift and self.images.keys() == other.images.keys() and all(
            self.images[k] == other.images[k] for k in self.images
        )

    __hash__ = None

    def coords(self) -> dict[Key, Fraction]:
        """Coefficients on elementary derivations (gen index, monomial)."""
        return {(i, m): c for i, v in self.images.items() for m, c in v.terms.items()}

    def support(self) -> set[int]:
        return set(self.images)

    def restrict_to(self, gens: Iterable[int]) -> "Derivation":
        keep = set(gens)
        return Derivation(self.alg, self.shift, {i: v for i, v in self.images.items() if i in keep}, check=False)

    def __str__(self):
        return format_combination(self.alg, self.coords())

    def __repr__(self):
        return f"Derivation[{self.shift}]({self})"


def format_key(alg: GradedAlgebra, key: Key) -> str:
    i, m = key
    return f"({alg.names[i]},{alg.format_mono(m)})"


def format_combination(alg: GradedAlgebra, coords: Mapping[Key, Fraction]) -> str:
    if not coords:
        return "0"
    items = sorted(coords.items(), key=lambda kv: (kv[0][0], tuple(-e for e in kv[0][1])))
    out = []
    for n, (k, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        body = format_key(alg, k) if a == 1 else f"{a}*{format_key(alg, k)}"
        out.append((("-" if neg else "") if n == 0 else (" - " if neg else " + ")) + body)
    return "".join(out)


def _compose_on_gen(outer: Derivation, inner_img: AlgElement) -> AlgElement:
    return leibniz_extend(outer.images, outer.shift, inner_img, check=False)


def der_bracket(s: Derivation, t: Derivation) -> Derivation:
    """[σ,τ] = σ∘τ - (-1)^(|σ||τ|) τ∘σ, evaluated generator by generator."""
    if s.alg != t.alg:
        raise ValueError("derivations of different algebras")
    alg = s.alg
    sign = -1 if (s.shift * t.shift) % 2 else 1
    imgs = {}
    for i in range(len(alg)):
        a = _compose_on_gen(s, t.on_gen(i)) if i in t.images else alg.zero()
        b = _compose_on_gen(t, s.on_gen(i)) if i in s.images else alg.zero()
        v = a - b * sign
        if not v.is_zero():
            imgs[i] = v
    return Derivation(alg, s.shift + t.shift, imgs, check=False)


def differential_as_derivation(m: SullivanModel) -> Derivation:
    return Derivation(m.alg, -1, m.diff, check=False)


def der_boundary(m: SullivanModel, s: Derivation) -> Derivation:
    """∂σ = d∘σ - (-1)^i σ∘d; equivalently the bracket with d (shift -1)."""
    if s.alg != m.alg:
        raise ValueError("derivation does not belong to this model")
    return der_bracket(differential_as_derivation(m), s)


def derivation_basis(m: SullivanModel, i: int, sources: Iterable[int] | None = None) -> list[Derivation]:
    """Elementary derivations (v, monomial) of shift ``i``."""
    cx = DerComplex(m, sources)
    return [Derivation.elementary(m.alg, g, mono) for g, mono in cx.basis(i)]


@dataclass
class ChainSlice:
    degree: int
    basis: list[Key]
    boundary: RatMatrix  # columns: ∂(basis element) in the degree-1 basis


@dataclass
class HomologyClass:
    degree: int
    representative: Derivation
    complex: "DerComplex" = field(repr=False)

    def vector(self) -> list[Fraction]:
        return self.complex.vector(self.representative, self.degree)

    def is_zero(self) -> bool:
        return self.complex.is_boundary(self.representative, self.degree)

    def __eq__(self, other):
        if not isinstance(other, HomologyClass):
            return NotImplemented
        if other.degree != self.degree:
            return self.is_zero() and other.is_zero()
        return self.complex.is_boundary(self.representative - other.representative, self.degree)

    __hash__ = None

    def proportional_to(self, other: "HomologyClass") -> Fraction | None:
        """c with [self] = c·[other], or None when no such scalar exists."""
        bnd = self.complex.boundary_vectors(self.degree)
        coeffs = in_span(bnd + [other.vector()], self.vector())
        if coeffs is None:
            return None
        return coeffs[-1]

    def __str__(self):
        return f"[{self.representative}]"


@dataclass
class HomologyGroup:
    degree: int
    dim: int
    classes: list[HomologyClass]

    def __iter__(self):
        return iter((self.dim, self.classes))


class DerComplex:
    """Positive-degree derivations of ``model`` that vanish off ``sources``.

    With all generators as sources this is Der M; with the fiber generators of
    a relative model it is Der(ΛW, ΛV⊗ΛW), which is always a subcomplex.
    """

    def __init__(self, model: SullivanModel, sources: Iterable[int] | None = None):
        self.model = model
        self.alg = model.alg
        self.sources = tuple(sorted(set(range(len(self.alg)) if sources is None else sources)))
        self._basis: dict[int, list[Key]] = {}
        self._index: dict[int, dict[Key, int]] = {}
        self._bmat: dict[int, RatMatrix] = {}
        self._cycles: dict[int, list[list[Fraction]]] = {}
        self._homology: dict[int, HomologyGroup] = {}
        self._d = differential_as_derivation(model)

    @property
    def max_degree(self) -> int:
        return max((self.alg.degrees[i] for i in self.sources), default=0)

    def basis(self, n: int) -> list[Key]:
        if n not in self._basis:
            keys = []
            for g in self.sources:
                for mono in self.alg.monomial_basis(self.alg.degrees[g] - n):
                    keys.append((g, mono))
            self._basis[n] = keys
            self._index[n] = {k: j for j, k in enumerate(keys)}
        return self._basis[n]

    def index(self, n: int) -> dict[Key, int]:
        self.basis(n)
        return self._index[n]

    def element(self, n: int, j: int) -> Derivation:
        g, mono = self.basis(n)[j]
        return Derivation(self.alg, n, {g: self.alg.mono(mono)}, check=False)

    def vector(self, s: Derivation, n: int | None = None) -> list[Fraction]:
        n = s.shift if n is None else n
        idx = self.index(n)
        v = [Fraction(0)] * len(idx)
        if s.is_zero():
            return v
        if s.shift != n:
            raise ValueError(f"derivation of shift {s.shift} in degree {n}")
        for k, c in s.coords().items():
            if k not in idx:
                raise ValueError(f"{format_key(self.alg, k)} is outside this complex")
            v[idx[k]] = c
        return v

    def derivation(self, n: int, vec: Sequence) -> Derivation:
        imgs: dict[int, dict] = {}
        for (g, mono), c in zip(self.basis(n), vec):
            if c:
                imgs.setdefault(g, {})[mono] = c
        return Derivation(self.alg, n, {g: AlgElement(self.alg, t) for g, t in imgs.items()}, check=False)

    def boundary(self, s: Derivation) -> Derivation:
        return der_bracket(self._d, s)

    def boundary_matrix(self, n: int) -> RatMatrix:
        """Matrix of ∂ from degree n to degree n-1 (degree 0 holds shift-0 derivations)."""
        if n not in self._bmat:
            src = self.basis(n)
            tgt = self.index(n - 1)
            cols = []
            for j in range(len(src)):
                b = self.boundary(self.element(n, j))
                col = [Fraction(0)] * len(tgt)
                for k, c in b.coords().items():
                    if k not in tgt:
                        raise ValueError(f"boundary leaves the complex at {format_key(self.alg, k)}")
                    col[tgt[k]] = c
                cols.append(col)
            self._bmat[n] = RatMatrix.from_columns(cols, len(tgt))
        return self._bmat[n]

    def slice(self, n: int) -> ChainSlice:
        return ChainSlice(n, self.basis(n), self.boundary_matrix(n))

    def cycle_vectors(self, n: int) -> list[list[Fraction]]:
        if n not in self._cycles:
            self._cycles[n] = kernel_basis(self.boundary_matrix(n))
        return self._cycles[n]

    def chain_vectors(self, n: int) -> list[list[Fraction]]:
        """A basis of the degree-n chains: everything for n ≥ 2, the cycles for n = 1."""
        if n < 1:
            return []
        if n == 1:
            return self.cycle_vectors(1)
        size = len(self.basis(n))
        return [[Fraction(int(i == j)) for i in range(size)] for j in range(size)]

    def boundary_vectors(self, n: int) -> list[list[Fraction]]:
        m = self.boundary_matrix(n + 1)
        return [m.column(j) for j in range(m.cols)]

    def is_cycle(self, s: Derivation) -> bool:
        return self.boundary(s).is_zero()

    def is_boundary(self, s: Derivation, n: int | None = None) -> bool:
        n = s.shift if n is None else n
        return in_span(self.boundary_vectors(n), self.vector(s, n)) is not None

    def solve_boundary(self, s: Derivation, n: int | None = None) -> Derivation | None:
        """Some q of degree n+1 with ∂q = s, or None."""
        n = s.shift if n is None else n
        coeffs = in_span(self.boundary_vectors(n), self.vector(s, n))
        if coeffs is None:
            return None
        return self.derivation(n + 1, coeffs)

    def homology(self, n: int) -> HomologyGroup:
        if n < 1:
            raise ValueError("homology is defined in degrees n >= 1")
        if n not in self._homology:
            cycles = self.cycle_vectors(n)
            bnd = self.boundary_vectors(n)
            chosen = independent_subset(cycles, bnd) if cycles else []
            classes = [HomologyClass(n, self.derivation(n, cycles[j]), self) for j in chosen]
            self._homology[n] = HomologyGroup(n, len(classes), classes)
        return self._homology[n]

    def homology_dim(self, n: int) -> int:
        return self.homology(n).dim

    def homology_class(self, s: Derivation) -> HomologyClass:
        if not self.is_cycle(s):
            raise ValueError(f"{s} is not a cycle")
        return HomologyClass(s.shift, s, self)


def der_homology(m: SullivanModel, n: int) -> HomologyGroup:
    return DerComplex(m).homology(n)


def pi_aut_dims(m: SullivanModel, lo: int, hi: int) -> dict[int, int]:
    """n ↦ dim π_n(Baut_1 X)_Q = dim H_{n-1}(Der M) for lo ≤ n ≤ hi."""
    if lo < 2:
        raise ValueError("range must lie in [2, ∞)")
    cx = DerComplex(m)
    return {n: cx.homology_dim(n - 1) for n in range(lo, hi + 1)}


# -- Chevalley–Eilenberg cochains -------------------------------------------


class CutoffTooSmall(ValueError):
    pass


@dataclass
class CStarModel:
    model: SullivanModel
    cutoff: int
    labels: dict[str, str]  # generator name -> dual basis element of L
    lie_basis: dict[int, list[Derivation]]

    def d_squared_checked_up_to(self) -> int:
        """Generators of degree ≤ this value have D∘D fully determined inside the cutoff."""
        return self.cutoff - 2


# relative sign of the linear part against the quadratic part; fixed so that D∘D = 0
LINEAR_SIGN = -1


def cstar_model(cx: DerComplex, cutoff: int, linear_sign: int = LINEAR_SIGN) -> CStarModel:
    """The cochain algebra C*(L) on generators dual to L_n (degree n+1 ≤ cutoff).

    D = d1 + d2 with d1 dual to ∂ (up to ``linear_sign``) and
    d2 ξ^c = 1/2 Σ_{a,b} (-1)^|e_a| c^c_{ab} ξ^a ξ^b where [e_a,e_b] = Σ c^c_{ab} e_c.
    """
    if cutoff < 2:
        raise CutoffTooSmall("cutoff must be at least 2")
    top = cutoff - 1
    lie: dict[int, list[Derivation]] = {}
    vecs: dict[int, list[list[Fraction]]] = {}
    for n in range(1, top + 1):
        vs = cx.chain_vectors(n)
        vecs[n] = vs
        lie[n] = [cx.derivation(n, v) for v in vs]
    if not any(lie.values()):
        raise CutoffTooSmall(f"no generators of degree <= {cutoff}")

    names: dict[tuple[int, int], str] = {}
    gens = []
    labels = {}
    for n in range(1, top + 1):
        for k, e in enumerate(lie[n]):
            nm = f"s{n}_{k}"
            names[(n, k)] = nm
            gens.append((nm, n + 1))
            labels[nm] = str(e)
    alg = GradedAlgebra(gens)

    def coords_in_L(s: Derivation, n: int) -> list[Fraction]:
        v = cx.vector(s, n)
        if n >= 2:
            return v
        c = in_span(vecs[1], v)
        if c is None:
            raise ValueError("element is not a degree-1 cycle")
        return c

    diff: dict[str, AlgElement] = {nm: alg.zero() for nm in alg.names}
    # linear part: ⟨d1 ξ^c, e_a⟩ ∝ coefficient of e_c in ∂ e_a
    for n in range(2, top + 1):
        for a, e in enumerate(lie[n]):
            b = cx.boundary(e)
            if b.is_zero():
                continue
            for c, coef in enumerate(coords_in_L(b, n - 1)):
                if coef:
                    diff[names[(n - 1, c)]] += alg.gen(names[(n, a)]) * (linear_sign * coef)
    # quadratic part
    half = Fraction(1, 2)
    for p in range(1, top + 1):
        for q in range(1, top + 1 - p):
            for a, ea in enumerate(lie[p]):
                sign = -1 if p % 2 else 1
                xa = alg.gen(names[(p, a)])
                for b, eb in enumerate(lie[q]):
                    br = der_bracket(ea, eb)
                    if br.is_zero():
                        continue
                    prod = xa * alg.gen(names[(q, b)])
                    if prod.is_zero():
                        continue
                    for c, coef in enumerate(coords_in_L(br, p + q)):
                        if coef:
                            diff[names[(p + q, c)]] += prod * (half * sign * coef)
    model = SullivanModel(alg, diff, name="C*")
    return CStarModel(model, cutoff, labels, lie)
