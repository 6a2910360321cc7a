"""Sullivan models (ΛV, d) and relative (KS) models ΛV → ΛV⊗ΛW."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import AlgElement, Generator, GradedAlgebra, InhomogeneousImage, leibniz_extend


class SullivanModel:
    """A free graded-commutative algebra with a differential given on generators.

    Missing entries of ``diff`` mean d(g) = 0. Construction does not validate;
    call :func:`validate_model` for a report.
    """

    def __init__(self, gens: Sequence[Generator | tuple] | GradedAlgebra, diff: Mapping | None = None, name: str = ""):
        self.alg = gens if isinstance(gens, GradedAlgebra) else GradedAlgebra(gens)
        self.name = name
        d = {}
        for k, v in (diff or {}).items():
            i = k if isinstance(k, int) else self.alg.index(k)
            if not isinstance(v, AlgElement):
                v = self.alg.scalar(v)
            elif v.alg != self.alg:
                v = self.alg.embed(v)
            if not v.is_zero():
                d[i] = v
        self.diff: dict[int, AlgElement] = d

    @property
    def gens(self):
        return self.alg.gens

    def d_of(self, name_or_index) -> AlgElement:
        i = name_or_index if isinstance(name_or_index, int) else self.alg.index(name_or_index)
        return self.diff.get(i, self.alg.zero())

    def d(self, x: AlgElement) -> AlgElement:
        return leibniz_extend(self.diff, -1, x, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, SullivanModel)
            and self.alg == other.alg
            and self.diff.keys() == other.diff.keys()
            and all(self.diff[k] == other.diff[k] for k in self.diff)
        )

    __hash__ = None

    def __repr__(self):
        ds = ", ".join(f"d{self.alg.names[i]} = {v}" for i, v in sorted(self.diff.items()))
        return f"SullivanModel({self.name or ''}{self.alg}{'; ' + ds if ds else ''})"

    def reordered(self, order: Sequence[str]) -> "SullivanModel":
        """The same model with generators declared in a different order."""
        alg = GradedAlgebra([self.alg.gens[self.alg.index(n)] for n in order])
        return SullivanModel(alg, {self.alg.names[i]: alg.embed(v) for i, v in self.diff.items()}, self.name)


@dataclass
class GeneratorCheck:
    name: str
    degree_ok: bool
    d_squared_zero: bool
    decomposable: bool
    message: str = ""


@dataclass
class ValidationReport:
    checks: list[GeneratorCheck] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors and all(c.degree_ok and c.d_squared_zero for c in self.checks)

    @property
    def minimal(self) -> bool:
        return all(c.decomposable for c in self.checks)

    @property
    def failures(self) -> list[str]:
        out = list(self.errors)
        out += [f"{c.name}: {c.message}" for c in self.checks if not (c.degree_ok and c.d_squared_zero)]
        return out


def validate_model(m: SullivanModel) -> ValidationReport:
    """Per generator: degree of d(g), d∘d(g) = 0, and absence of linear terms."""
    rep = ValidationReport()
    alg = m.alg
    for g in alg.gens:
        if g.degree < 2:
            rep.errors.append(f"{g.name}: degree {g.degree} < 2 (models are simply connected)")
    for i, g in enumerate(alg.gens):
        img = m.diff.get(i, alg.zero())
        msg = []
        degree_ok = True
        try:
            deg = img.degree()
        except InhomogeneousImage as e:
            deg, degree_ok = None, False
            msg.append(str(e))
        if deg is not None and deg != g.degree + 1:
            degree_ok = False
            msg.append(f"d {g.name} has degree {deg}, expected {g.degree + 1}")
        d2 = m.d(img) if degree_ok else alg.zero()
        if not d2.is_zero():
            msg.append(f"d(d {g.name}) = {d2} != 0")
        linear = [mono for mono in img.terms if sum(mono) == 1]
        rep.checks.append(GeneratorCheck(g.name, degree_ok, d2.is_zero(), not linear, "; ".join(msg)))
    return rep


class RelativeModel:
    """A KS extension (ΛV, d) → (ΛV⊗ΛW, D).

    The total differential is stored once, on the total algebra; the base
    differential is read back from it.
    """

    def __init__(self, base: SullivanModel, fiber_gens: Sequence[Generator | tuple], fiber_diff: Mapping | None = None, name: str = "", total_name: str = ""):
        self.name = name
        self.total_name = total_name
        fgs = [g if isinstance(g, Generator) else Generator(*g) for g in fiber_gens]
        alg = GradedAlgebra(list(base.alg.gens) + fgs)
        diff: dict = {}
        for i, v in base.diff.items():
            diff[base.alg.names[i]] = alg.embed(v)
        for k, v in (fiber_diff or {}).items():
            name_k = k if isinstance(k, str) else fgs[k].name
            if base.alg.has(name_k):
                raise ValueError(f"{name_k} is a base generator; its differential comes from the base")
            diff[name_k] = v
        self.total = SullivanModel(alg, diff, total_name)
        self.n_base = len(base.alg)
        self.fiber_gens = tuple(fgs)
        self._base = base

    @property
    def base(self) -> SullivanModel:
        # view of D restricted to ΛV
        return self._base

    @property
    def base_indices(self) -> range:
        return range(self.n_base)

    @property
    def fiber_indices(self) -> range:
        return range(self.n_base, len(self.total.alg))

    def fiber_diff(self) -> dict[str, AlgElement]:
        names = self.total.alg.names
        return {names[i]: v for i, v in self.total.diff.items() if i >= self.n_base}

    def __eq__(self, other):
        return isinstance(other, RelativeModel) and self.total == other.total and self.n_base == other.n_base and self._base == other._base

    __hash__ = None

    def __repr__(self):
        return f"RelativeModel({self.name}: {self._base.alg} -> {self.total.alg})"


def validate_relative(rm: RelativeModel) -> ValidationReport:
    rep = validate_model(rm.total)
    base_rep = validate_model(rm.base)
    rep.errors += [f"base: {f}" for f in base_rep.failures]
    alg = rm.total.alg
    for i in rm.base_indices:
        if rm.total.d_of(i) != alg.embed(rm.base.d_of(i)):
            rep.errors.append(f"D|ΛV differs from d on {alg.names[i]}")
    return rep


@dataclass
class SeparabilityVerdict:
    separable: bool
    min_fiber: float
    max_base: int
    witness: tuple[str, str] | None = None

    def __bool__(self):
        return self.separable


def is_pi_q_separable(rm: RelativeModel) -> SeparabilityVerdict:
    """min |W| ≥ max |V|, with max over no generators = 0 and min over none = ∞."""
    base_degs = [g.degree for g in rm.base.alg.gens]
    fib_degs = [g.degree for g in rm.fiber_gens]
    max_v = max(base_degs, default=0)
    min_w = min(fib_degs, default=float("inf"))
    if min_w >= max_v:
        return SeparabilityVerdict(True, min_w, max_v)
    w = next(g for g in rm.fiber_gens if g.degree == min_w)
    v = next(g for g in rm.base.alg.gens if g.degree > w.degree)
    return SeparabilityVerdict(False, min_w, max_v, (w.name, v.name))


@dataclass
class Classification:
    pure: bool
    strictly_pure: bool
    n_even: int
    n_odd: int

    @property
    def elliptic_candidate(self) -> bool:
        return self.strictly_pure and self.n_odd >= self.n_even

    @property
    def f0_candidate(self) -> bool:
        return self.strictly_pure and self.n_even == self.n_odd


def classify(m: SullivanModel) -> Classification:
    """Purity flags and generator parity counts.

    ``pure``: d vanishes on even generators and sends odd generators into
    even-degree elements. ``strictly_pure`` additionally requires the odd
    images to be polynomials in the even generators, which is what the F0 and
    Halperin machinery needs.
    """
    alg = m.alg
    even_idx = [i for i, g in enumerate(alg.gens) if not g.odd]
    odd_idx = [i for i, g in enumerate(alg.gens) if g.odd]
    pure = all(m.d_of(i).is_zero() for i in even_idx)
    strictly = pure and all(
        all(mono[j] == 0 for j in odd_idx for mono in m.d_of(i).terms) for i in odd_idx
    )
    return Classification(pure, strictly, len(even_idx), len(odd_idx))
