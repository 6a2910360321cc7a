"""Free graded Lie expressions, Quillen data and DGL maps into derivation algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .algebra import GradedAlgebra
from .derivations import Derivation, DerComplex, der_bracket
from .linalg import as_fraction
from .models import SullivanModel


@dataclass(frozen=True)
class LieGen:
    name: str


@dataclass(frozen=True)
class LieBracket:
    left: "LieExpr"
    right: "LieExpr"


@dataclass(frozen=True)
class LieScale:
    coeff: Fraction
    expr: "LieExpr"

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))


@dataclass(frozen=True)
class LieSum:
    terms: tuple


LieExpr = Union[LieGen, LieBracket, LieScale, LieSum]
LIE_ZERO = LieSum(())


class UnmappedGenerator(KeyError):
    pass


class InhomogeneousLieExpr(ValueError):
    pass


def lie_gens(e: LieExpr) -> set[str]:
    if isinstance(e, LieGen):
        return {e.name}
    if isinstance(e, LieBracket):
        return lie_gens(e.left) | lie_gens(e.right)
    if isinstance(e, LieScale):
        return lie_gens(e.expr)
    return set().union(*(lie_gens(t) for t in e.terms)) if e.terms else set()


def lie_degree(e: LieExpr, degrees: Mapping[str, int]) -> int | None:
    """Degree of a homogeneous expression; None for the empty sum."""
    if isinstance(e, LieGen):
        return degrees[e.name]
    if isinstance(e, LieBracket):
        a, b = lie_degree(e.left, degrees), lie_degree(e.right, degrees)
        return None if a is None or b is None else a + b
    if isinstance(e, LieScale):
        return lie_degree(e.expr, degrees)
    degs = {lie_degree(t, degrees) for t in e.terms} - {None}
    if len(degs) > 1:
        raise InhomogeneousLieExpr(f"sum of terms in degrees {sorted(degs)}")
    return degs.pop() if degs else None


# -- tensor-algebra image ---------------------------------------------------
# The free Lie algebra embeds in the tensor algebra via [a,b] = ab - (-1)^{|a||b|} ba,
# so words with rational coefficients give a faithful normal form.

Word = tuple


def _tadd(a: dict, b: dict, c=1) -> dict:
    out = dict(a)
    for w, x in b.items():
        v = out.get(w, 0) + c * x
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def _tmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            v = out.get(w, 0) + c1 * c2
            if v:
                out[w] = v
            else:
                out.pop(w)
    return out


def tensor_image(e: LieExpr, degrees: Mapping[str, int]) -> dict[Word, Fraction]:
    if isinstance(e, LieGen):
        return {(e.name,): Fraction(1)}
    if isinstance(e, LieBracket):
        a, b = tensor_image(e.left, degrees), tensor_image(e.right, degrees)
        if not a or not b:
            return {}
        da, db = lie_degree(e.left, degrees), lie_degree(e.right, degrees)
        return _tadd(_tmul(a, b), _tmul(b, a), -((-1) ** (da * db)))
    if isinstance(e, LieScale):
        return {w: c * e.coeff for w, c in tensor_image(e.expr, degrees).items() if c * e.coeff}
    out: dict = {}
    for t in e.terms:
        out = _tadd(out, tensor_image(t, degrees))
    return out


def _tensor_d(x: dict, diff: Mapping[str, dict], degrees: Mapping[str, int]) -> dict:
    """The degree -1 derivation of the tensor algebra extending ``diff``."""
    out: dict = {}
    for word, c in x.items():
        pre = 0
        for k, g in enumerate(word):
            dg = diff.get(g)
            if dg:
                sign = -1 if pre % 2 else 1
                piece = _tmul(_tmul({word[:k]: Fraction(1)}, dg), {word[k + 1:]: Fraction(1)})
                out = _tadd(out, piece, sign * c)
            pre += degrees[g]
    return out


class QuillenData:
    """A free DGL (L(g_1..g_k), ∂) with an optional attached cell u.

    The cell, when named, is the generator u with ∂u = ∂_α(u) in the others.
    """

    def __init__(self, gens: Sequence[tuple[str, int]], diff: Mapping[str, LieExpr] | None = None, cell: str | None = None, name: str = ""):
        self.name = name
        self.gens = [(n, int(d)) for n, d in gens]
        self.degrees = dict(self.gens)
        if len(self.degrees) != len(self.gens):
            raise ValueError("duplicate Quillen generator")
        self.diff: dict[str, LieExpr] = dict(diff or {})
        self.cell = cell
        for g, e in self.diff.items():
            if g not in self.degrees:
                raise KeyError(g)
            unknown = lie_gens(e) - set(self.degrees)
            if unknown:
                raise UnmappedGenerator(f"∂{g} uses unknown generators {sorted(unknown)}")
        if cell is not None and cell not in self.degrees:
            raise KeyError(cell)

    def d(self, g: str) -> LieExpr:
        return self.diff.get(g, LIE_ZERO)

    def degree_errors(self) -> list[str]:
        out = []
        for g, deg in self.gens:
            if deg < 1:
                out.append(f"{g}: degree {deg} < 1")
            try:
                k = lie_degree(self.d(g), self.degrees)
            except InhomogeneousLieExpr as e:
                out.append(f"∂{g}: {e}")
                continue
            if k is not None and k != deg - 1 and tensor_image(self.d(g), self.degrees):
                out.append(f"∂{g} has degree {k}, expected {deg - 1}")
        return out

    def d_squared_failures(self) -> list[str]:
        """Generators g with ∂∂g ≠ 0, computed in the enveloping tensor algebra."""
        timg = {g: tensor_image(self.d(g), self.degrees) for g, _ in self.gens}
        return [g for g, _ in self.gens if _tensor_d(timg[g], timg, self.degrees)]

    @property
    def cell_degree(self) -> int:
        return self.degrees[self.cell]

    def without_cell(self) -> "QuillenData":
        if self.cell is None:
            return self
        return QuillenData([g for g in self.gens if g[0] != self.cell], {k: v for k, v in self.diff.items() if k != self.cell}, None, self.name)

    def __eq__(self, other):
        if not isinstance(other, QuillenData) or self.gens != other.gens or self.cell != other.cell:
            return False
        return all(tensor_image(self.d(g), self.degrees) == tensor_image(other.d(g), other.degrees) for g, _ in self.gens)

    __hash__ = None

    def __repr__(self):
        return f"QuillenData({self.name}: {self.gens}, cell={self.cell})"


@dataclass
class DglMapData:
    """Generator images of a DGL map into Der of some model."""

    alg: GradedAlgebra
    images: dict[str, Derivation] = field(default_factory=dict)

    def image(self, g: str) -> Derivation:
        if g not in self.images:
            raise UnmappedGenerator(g)
        return self.images[g]

    def extended(self, g: str, s: Derivation) -> "DglMapData":
        return DglMapData(self.alg, {**self.images, g: s})


def lie_eval(h: DglMapData, e: LieExpr) -> Derivation | None:
    """Homomorphic evaluation; None stands for the empty sum."""
    if isinstance(e, LieGen):
        return h.image(e.name)
    if isinstance(e, LieBracket):
        a, b = lie_eval(h, e.left), lie_eval(h, e.right)
        if a is None or b is None:
            return None
        return der_bracket(a, b)
    if isinstance(e, LieScale):
        a = lie_eval(h, e.expr)
        return None if a is None else a * e.coeff
    out = None
    for t in e.terms:
        a = lie_eval(h, t)
        if a is None:
            continue
        try:
            out = a if out is None else out + a
        except ValueError as exc:
            raise InhomogeneousLieExpr(str(exc)) from None
    return out


@dataclass
class MapCheck:
    passed: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def dgl_map_check(q: QuillenData, h: DglMapData, target: SullivanModel) -> MapCheck:
    """∂_target h(g) = h(∂g) on every generator of q that h maps."""
    cx = DerComplex(target)
    bad = []
    for g, deg in q.gens:
        if g not in h.images:
            continue
        s = h.images[g]
        if not s.is_zero() and s.shift != deg:
            bad.append(f"{g}: image has degree {s.shift}, expected {deg}")
            continue
        lhs = cx.boundary(s)
        try:
            rhs = lie_eval(h, q.d(g))
        except UnmappedGenerator as e:
            bad.append(f"{g}: ∂{g} involves unmapped generator {e}")
            continue
        diff = lhs if rhs is None else lhs - rhs
        if not diff.is_zero():
            bad.append(f"{g}: ∂h({g}) = {lhs} but h(∂{g}) = {rhs if rhs is not None else 0}")
    return MapCheck(not bad, bad)


def format_lie(e: LieExpr) -> str:
    if isinstance(e, LieGen):
        return e.name
    if isinstance(e, LieBracket):
        return f"[{format_lie(e.left)},{format_lie(e.right)}]"
    if isinstance(e, LieScale):
        inner = format_lie(e.expr)
        if isinstance(e.expr, LieSum):
            inner = f"({inner})"
        return f"{e.coeff}*{inner}"
    if not e.terms:
        return "0"
    return " + ".join(format_lie(t) if not isinstance(t, LieSum) else f"({format_lie(t)})" for t in e.terms)
