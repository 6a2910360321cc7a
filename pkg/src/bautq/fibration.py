"""Derivation complexes attached to a relative model ΛV → ΛV⊗ΛW.

Der(ΛV⊗ΛW) splits as derivations supported on V (base part) and on W
(fiber part, = Der_{ΛV}(ΛV⊗ΛW)). The fiber part is always a subcomplex;
when min|W| ≥ max|V| the base part in positive degrees is exactly Der(ΛV)
and proj_V∘σ is a DGL map.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgElement
from .cohomology import cdga_cohomology
from .derivations import DerComplex, Derivation, HomologyClass, der_bracket, format_key
from .linalg import RatMatrix, in_span, kernel_basis, rank
from .models import RelativeModel, is_pi_q_separable


class NotSeparable(ValueError):
    pass


class NotACycle(ValueError):
    pass


class BaseNotOddSphere(ValueError):
    pass


class CutoffInsufficient(ValueError):
    pass


class FibrationComplexes:
    """The three complexes of a relative model: total, fiber part and base."""

    def __init__(self, rm: RelativeModel):
        self.rm = rm
        self.total = DerComplex(rm.total)
        self.fiber = DerComplex(rm.total, rm.fiber_indices)
        self.base = DerComplex(rm.base)

    def zero_extend(self, s: Derivation) -> Derivation:
        """A base derivation viewed on the total algebra, W-generators ↦ 0."""
        alg = self.rm.total.alg
        return Derivation(alg, s.shift, {s.alg.names[i]: alg.embed(v) for i, v in s.images.items()}, check=False)

    def split(self, s: Derivation) -> tuple[Derivation, Derivation]:
        """(V-supported part, W-supported part) of a derivation of the total algebra."""
        return s.restrict_to(self.rm.base_indices), s.restrict_to(self.rm.fiber_indices)

    def tau(self, s: Derivation) -> Derivation:
        """τ(σ): the W-supported component of ∂_X σ."""
        return self.split(self.total.boundary(s))[1]


_cache: dict[int, FibrationComplexes] = {}


def complexes(rm: RelativeModel) -> FibrationComplexes:
    fc = _cache.get(id(rm))
    if fc is None or fc.rm is not rm:
        fc = FibrationComplexes(rm)
        _cache[id(rm)] = fc
    return fc


def _require_separable(rm: RelativeModel):
    v = is_pi_q_separable(rm)
    if not v:
        w, b = v.witness
        raise NotSeparable(f"not pi_Q-separable: |{w}| < |{b}|")


def b_f_project(rm: RelativeModel, s: Derivation) -> Derivation:
    """b_f(σ) = proj_V∘σ restricted to V-generators, as a derivation of ΛV."""
    _require_separable(rm)
    base = rm.base.alg
    total = rm.total.alg
    imgs = {}
    for i in rm.base_indices:
        img = s.on_gen(i)
        if not img.is_zero():
            imgs[total.names[i]] = total.restrict(img, base)
    return Derivation(base, s.shift, imgs, check=False)


@dataclass
class ProjectionCheck:
    passed: bool
    witness: tuple | None = None
    violations: list[str] = field(default_factory=list)
    checked_elements: int = 0
    checked_pairs: int = 0


def strict_projection_check(rm: RelativeModel) -> ProjectionCheck:
    """Verify that b_f is a DGL map, or exhibit [(w,1),(v,w)] = (v,1) with b_f killing both factors."""
    sep = is_pi_q_separable(rm)
    fc = complexes(rm)
    alg = rm.total.alg
    if not sep:
        wname, vname = sep.witness
        w, v = alg.index(wname), alg.index(vname)
        s1 = Derivation.elementary(alg, w)
        s2 = Derivation.elementary(alg, v, alg.gen(w))
        br = der_bracket(s1, s2)
        rhs = Derivation.elementary(alg, v)
        msg = f"[({wname},1),({vname},{wname})] = {br}, proj_V of it is ({vname},1) but both factors project to 0"
        return ProjectionCheck(False, (str(s1), str(s2), str(br)), [msg] if br == rhs else [msg + " (unexpected bracket)"])
    basis = []
    for n in range(1, fc.total.max_degree + 1):
        basis += [fc.total.element(n, j) for j in range(len(fc.total.basis(n)))]
    bad = []
    for s in basis:
        lhs = b_f_project(rm, fc.total.boundary(s))
        rhs = fc.base.boundary(b_f_project(rm, s))
        if lhs != rhs:
            bad.append(f"∂ mismatch on {s}")
    pairs = 0
    for a in basis:
        ba = b_f_project(rm, a)
        for b in basis:
            if a.shift + b.shift > fc.total.max_degree:
                continue
            pairs += 1
            if b_f_project(rm, der_bracket(a, b)) != der_bracket(ba, b_f_project(rm, b)):
                bad.append(f"bracket mismatch on {a}, {b}")
    return ProjectionCheck(not bad, None, bad, len(basis), pairs)


def connecting_delta(rm: RelativeModel, c: HomologyClass | Derivation) -> HomologyClass:
    """δ_f[σ] = [∂_X σ] for a ∂_Y-cycle σ zero-extended to ΛV⊗ΛW."""
    _require_separable(rm)
    fc = complexes(rm)
    s = c.representative if isinstance(c, HomologyClass) else c
    if not fc.base.boundary(s).is_zero():
        raise NotACycle(f"{s} is not a ∂_Y-cycle")
    if s.shift < 2:
        raise ValueError("δ_f on degree-1 classes lands outside the positive-degree complex")
    img = fc.total.boundary(fc.zero_extend(s))
    vpart, wpart = fc.split(img)
    assert vpart.is_zero(), "V-component of ∂_X of a zero-extended cycle must vanish"
    return HomologyClass(s.shift - 1, wpart, fc.fiber)


@dataclass
class SectionVerdict:
    has_section: bool
    failing: list[tuple[HomologyClass, HomologyClass]]
    scanned_degrees: range
    degree_one_classes: int
    ranks: dict[int, int]

    def __bool__(self):
        return self.has_section


def delta_rank(rm: RelativeModel, n: int) -> int:
    """Rank of δ_f: H_n(Der ΛV) → H_{n-1}(fiber part)."""
    fc = complexes(rm)
    if n < 2:
        return 0
    classes = fc.base.homology(n).classes
    if not classes:
        return 0
    vecs = [connecting_delta(rm, c).vector() for c in classes]
    bnd = fc.fiber.boundary_vectors(n - 1)
    r_all = rank(RatMatrix.from_rows(bnd + vecs, len(vecs[0]))) if vecs[0] else 0
    r_b = rank(RatMatrix.from_rows(bnd, len(vecs[0]))) if bnd and vecs[0] else 0
    return r_all - r_b


def section_exists(rm: RelativeModel) -> SectionVerdict:
    """a_f has a section iff δ_f vanishes on H_n(Der ΛV) for 2 ≤ n ≤ max|v|."""
    _require_separable(rm)
    fc = complexes(rm)
    top = fc.base.max_degree
    failing, ranks = [], {}
    for n in range(2, top + 1):
        for c in fc.base.homology(n).classes:
            img = connecting_delta(rm, c)
            if not img.is_zero():
                failing.append((c, img))
        ranks[n] = delta_rank(rm, n)
    h1 = fc.base.homology_dim(1) if top >= 1 else 0
    return SectionVerdict(not failing, failing, range(2, top + 1), h1, ranks)


@dataclass
class OddSphereVerdict:
    fibre_trivial: bool
    witness: Derivation | None = None
    witness_class_nonzero: bool | None = None

    @property
    def label(self) -> str:
        return "fibre-trivial" if self.fibre_trivial else "a_f ~ *"


def odd_sphere_triviality(rm: RelativeModel) -> OddSphereVerdict:
    base = rm.base.alg
    if len(base) != 1 or not base.odd[0]:
        raise BaseNotOddSphere("base must be Λ(v) with a single odd generator")
    fc = complexes(rm)
    s = Derivation.elementary(base, 0)
    img = fc.total.boundary(fc.zero_extend(s))
    if img.is_zero():
        return OddSphereVerdict(True)
    _, wpart = fc.split(img)
    cls = HomologyClass(s.shift - 1, wpart, fc.fiber)
    return OddSphereVerdict(False, wpart, not cls.is_zero())


def rel_der_homology(rm: RelativeModel, n: int):
    """H_n(Der_{ΛV}(ΛV⊗ΛW)) ≅ π_{n+1}(Baut_1 f)_Q."""
    return complexes(rm).fiber.homology(n)


@dataclass
class PiOddVerdict:
    vanishes: bool
    nonzero: dict[int, list[HomologyClass]]

    def __bool__(self):
        return self.vanishes


def pi_odd_vanishing(rm: RelativeModel) -> PiOddVerdict:
    """π_odd(Baut_1 f)_Q = H_even(fiber part) = 0, scanning even degrees ≤ max|w|."""
    _require_separable(rm)
    fc = complexes(rm)
    nz = {}
    for n in range(2, fc.fiber.max_degree + 1, 2):
        h = fc.fiber.homology(n)
        if h.dim:
            nz[n] = h.classes
    return PiOddVerdict(not nz, nz)


def _fiber_only_der_dims(rm: RelativeModel, i: int) -> int:
    """dim Der_i(ΛW) for the fibre algebra ΛW alone."""
    from .algebra import GradedAlgebra

    alg = GradedAlgebra(rm.fiber_gens)
    return sum(len(alg.monomial_basis(g.degree - i)) for g in rm.fiber_gens)


def fiber_dims_formula(rm: RelativeModel, n: int, cutoff: int) -> int:
    """Σ_{i-j=n, i≥1, j≥0} dim Der_i(ΛW)·dim H^j(ΛV)."""
    top = max((g.degree for g in rm.fiber_gens), default=0)
    needed = [i - n for i in range(max(n, 1), top + 1) if _fiber_only_der_dims(rm, i) and i - n >= 0]
    # a point has no cohomology above degree 0, whatever the cutoff
    if needed and max(needed) > cutoff and len(rm.base.alg):
        raise CutoffInsufficient(f"H^{max(needed)}(ΛV) needed, cutoff is {cutoff}")
    table = cdga_cohomology(rm.base, cutoff)
    return sum(_fiber_only_der_dims(rm, n + j) * table.dims[j] for j in range(0, cutoff + 1) if n + j >= 1)


@dataclass
class RhoImage:
    """The span of (w, m·h) with m a monomial of ΛW and h a chosen cocycle of ΛV."""

    vectors: dict[int, list[list[Fraction]]]
    closed: bool
    homology_dims: dict[int, int]


def rho_image(rm: RelativeModel, max_degree: int, cutoff: int | None = None) -> RhoImage:
    from .algebra import GradedAlgebra

    fc = complexes(rm)
    alg = rm.total.alg
    fib_alg = GradedAlgebra(rm.fiber_gens)
    top = fc.fiber.max_degree
    cutoff = top if cutoff is None else cutoff
    table = cdga_cohomology(rm.base, cutoff)
    vecs: dict[int, list[list[Fraction]]] = {}
    for n in range(0, max_degree + 2):
        out = []
        for wi in rm.fiber_indices:
            w = alg.gens[wi]
            for j in range(0, cutoff + 1):
                i = n + j
                for mono in fib_alg.monomial_basis(w.degree - i):
                    m_el = alg.embed(fib_alg.mono(mono))
                    for h in table.reps[j]:
                        val = m_el * alg.embed(h)
                        if val.is_zero():
                            continue
                        s = Derivation(alg, n, {wi: val}, check=False)
                        out.append(fc.fiber.vector(s, n))
        vecs[n] = out
    closed = True
    maps: dict[int, int] = {}
    for n in range(1, max_degree + 2):
        span = vecs[n - 1]
        imgs = []
        for v in vecs[n]:
            b = fc.fiber.boundary(fc.fiber.derivation(n, v))
            bv = fc.fiber.vector(b, n - 1)
            imgs.append(bv)
            if n >= 2 and in_span(span, bv) is None:
                closed = False
        maps[n] = rank(RatMatrix.from_rows(imgs, len(fc.fiber.basis(n - 1)))) if imgs else 0
    dims = {}
    for n in range(1, max_degree + 1):
        dims[n] = len(vecs[n]) - maps[n] - maps[n + 1]
    return RhoImage({n: vecs[n] for n in range(1, max_degree + 1)}, closed, dims)
