"""Free graded-commutative algebras ΛV over Q.

A monomial is a tuple of exponents, one per generator in declaration order,
with exponent at most 1 on odd generators. The canonical word of a monomial
lists generators in declaration order; every product is brought back to that
order by counting transpositions of odd generators.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .linalg import as_fraction

Monomial = tuple  # tuple[int, ...]


class InhomogeneousImage(ValueError):
    """A derivation image does not have the degree its shift requires."""


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def __str__(self):
        return f"{self.name}:{self.degree}"


class GradedAlgebra:
    """The free graded-commutative algebra on an ordered list of generators."""

    def __init__(self, gens: Iterable[Generator | tuple]):
        gs = []
        for g in gens:
            if not isinstance(g, Generator):
                g = Generator(*g)
            gs.append(g)
        self.gens: tuple[Generator, ...] = tuple(gs)
        names = [g.name for g in self.gens]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate generator names: {', '.join(dup)}")
        self.names = tuple(names)
        self.degrees = tuple(g.degree for g in self.gens)
        self.odd = tuple(g.odd for g in self.gens)
        self._index = {n: i for i, n in enumerate(names)}
        self._basis_cache: dict[int, list[Monomial]] = {}

    # -- bookkeeping -----------------------------------------------------
    def __len__(self):
        return len(self.gens)

    def __eq__(self, other):
        return isinstance(other, GradedAlgebra) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)

    def __repr__(self):
        return "Λ(" + ", ".join(str(g) for g in self.gens) + ")"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def has(self, name: str) -> bool:
        return name in self._index

    def unit_mono(self) -> Monomial:
        return (0,) * len(self.gens)

    def gen_mono(self, i: int) -> Monomial:
        m = [0] * len(self.gens)
        m[i] = 1
        return tuple(m)

    def mono_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    # -- elements --------------------------------------------------------
    def zero(self) -> "AlgElement":
        return AlgElement(self, {})

    def one(self) -> "AlgElement":
        return AlgElement(self, {self.unit_mono(): Fraction(1)})

    def gen(self, name_or_index) -> "AlgElement":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return AlgElement(self, {self.gen_mono(i): Fraction(1)})

    def mono(self, m: Monomial, coeff=1) -> "AlgElement":
        return AlgElement(self, {tuple(m): as_fraction(coeff)})

    def scalar(self, c) -> "AlgElement":
        return AlgElement(self, {self.unit_mono(): as_fraction(c)})

    # -- monomials -------------------------------------------------------
    def monomial_basis(self, degree: int) -> list[Monomial]:
        """All monomials of the given degree, in decreasing lexicographic order."""
        if degree < 0:
            return []
        if degree not in self._basis_cache:
            self._basis_cache[degree] = _monomials(self.degrees, self.odd, degree)
        return list(self._basis_cache[degree])

    def mono_mul(self, a: Monomial, b: Monomial) -> tuple[int, Monomial] | None:
        """Product of two canonical monomials as ``(sign, monomial)``, or None if zero."""
        return _mono_mul(self.odd, a, b)

    def format_mono(self, m: Monomial) -> str:
        parts = []
        for e, n in zip(m, self.names):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"

    # -- embedding between algebras sharing generator names --------------
    def embed(self, x: "AlgElement") -> "AlgElement":
        """Map an element of a sub-algebra (generators matched by name) into this one."""
        if x.alg == self:
            return x
        pos = [self.index(n) for n in x.alg.names]
        for src, dst in zip(x.alg.gens, pos):
            if self.gens[dst].degree != src.degree:
                raise ValueError(f"generator {src.name} has degree {src.degree} vs {self.gens[dst].degree}")
        out = self.zero()
        for m, c in x.terms.items():
            # rebuild the source word factor by factor; odd generators may be reordered
            prod = self.scalar(c)
            for i, e in enumerate(m):
                for _ in range(e):
                    prod = prod * self.gen(pos[i])
            out = out + prod
        return out

    def restrict(self, x: "AlgElement", sub: "GradedAlgebra") -> "AlgElement":
        """Keep only the terms of ``x`` that live in ``sub`` and rewrite them there."""
        keep = {self.index(n) for n in sub.names}
        out = sub.zero()
        for m, c in x.terms.items():
            if any(e and i not in keep for i, e in enumerate(m)):
                continue
            prod = sub.scalar(c)
            for i, e in enumerate(m):
                for _ in range(e):
                    prod = prod * sub.gen(self.names[i])
            out = out + prod
        return out


@lru_cache(maxsize=None)
def _monomials(degrees: tuple, odd: tuple, degree: int) -> list[Monomial]:
    n = len(degrees)
    out: list[Monomial] = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == n:
            if remaining == 0:
                out.append(tuple(acc))
            return
        d = degrees[i]
        emax = remaining // d if d > 0 else 0
        if odd[i]:
            emax = min(emax, 1)
        for e in range(emax, -1, -1):
            acc.append(e)
            rec(i + 1, remaining - e * d, acc)
            acc.pop()

    rec(0, degree, [])
    return out


def _mono_mul(odd: tuple, a: Monomial, b: Monomial):
    swaps = 0
    b_odd_before = 0
    out = []
    for k, (ea, eb) in enumerate(zip(a, b)):
        if odd[k]:
            if ea and eb:
                return None
            if ea:
                swaps += b_odd_before
            if eb:
                b_odd_before += 1
        out.append(ea + eb)
    return (-1 if swaps % 2 else 1), tuple(out)


class AlgElement:
    """A finite rational combination of monomials of one algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: GradedAlgebra, terms: Mapping[Monomial, Fraction] | None = None):
        self.alg = alg
        clean = {}
        if terms:
            for m, c in terms.items():
                c = as_fraction(c)
                if c:
                    m = tuple(m)
                    if len(m) != len(alg.gens):
                        raise ValueError("monomial length does not match the algebra")
                    clean[m] = c
        self.terms: dict[Monomial, Fraction] = clean

    # arithmetic
    def _coerce(self, other) -> "AlgElement":
        if isinstance(other, AlgElement):
            if other.alg != self.alg:
                raise ValueError(f"elements of different algebras: {self.alg} vs {other.alg}")
            return other
        return self.alg.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t.get(m, 0) + c
        return AlgElement(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return AlgElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, AlgElement):
            c = as_fraction(other)
            return AlgElement(self.alg, {m: c * v for m, v in self.terms.items()})
        return multiply(self, other)

    def __rmul__(self, other):
        c = as_fraction(other)
        return AlgElement(self.alg, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, AlgElement):
            return self.alg == other.alg and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(m), Fraction(0))

    def degree(self) -> int | None:
        """The common degree of all terms; None for zero. Raises on inhomogeneous input."""
        degs = {self.alg.mono_degree(m) for m in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise InhomogeneousImage(f"inhomogeneous element {self} (degrees {sorted(degs)})")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len({self.alg.mono_degree(m) for m in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (-self.alg.mono_degree(t[0]), tuple(-e for e in t[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            ms = self.alg.format_mono(m)
            neg = c < 0
            a = -c if neg else c
            if ms == "1":
                body = str(a)
            elif a == 1:
                body = ms
            else:
                body = f"{a}*{ms}"
            if i == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"AlgElement({self})"


def multiply(a: AlgElement, b: AlgElement) -> AlgElement:
    """Graded-commutative product with Koszul signs."""
    if a.alg != b.alg:
        raise ValueError("elements of different algebras")
    odd = a.alg.odd
    out: dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            r = _mono_mul(odd, ma, mb)
            if r is None:
                continue
            s, m = r
            out[m] = out.get(m, 0) + s * ca * cb
    return AlgElement(a.alg, out)


def _check_images(alg: GradedAlgebra, images: Mapping[int, AlgElement], shift: int):
    for i, img in images.items():
        if img is None or img.is_zero():
            continue
        want = alg.degrees[i] - shift
        deg = img.degree()
        if deg != want:
            raise InhomogeneousImage(
                f"image of {alg.names[i]} has degree {deg}, expected {want} for shift {shift}"
            )


def _normalize_images(alg: GradedAlgebra, images: Mapping) -> dict[int, AlgElement]:
    out = {}
    for k, v in images.items():
        i = k if isinstance(k, int) else alg.index(k)
        if v is None:
            continue
        if not isinstance(v, AlgElement):
            v = alg.scalar(v)
        elif v.alg != alg:
            v = alg.embed(v)
        if not v.is_zero():
            out[i] = v
    return out


def apply_on_mono(alg: GradedAlgebra, images: Mapping[int, AlgElement], shift: int, m: Monomial) -> AlgElement:
    """Evaluate the shift-``shift`` derivation with the given generator images on a monomial."""
    odd = alg.odd
    out: dict[Monomial, Fraction] = {}
    prefix_deg = 0
    n = len(m)
    for k in range(n):
        e = m[k]
        if e == 0:
            continue
        img = images.get(k)
        if img is not None and img.terms:
            sign = -1 if (shift * prefix_deg) % 2 else 1
            prefix = m[:k] + (0,) * (n - k)
            rest = list(m)
            for j in range(k + 1):
                rest[j] = 0
            rest[k] = e - 1
            rest = tuple(rest)
            coef = sign * e
            for t, c in img.terms.items():
                r1 = _mono_mul(odd, prefix, t)
                if r1 is None:
                    continue
                r2 = _mono_mul(odd, r1[1], rest)
                if r2 is None:
                    continue
                mm = r2[1]
                out[mm] = out.get(mm, 0) + coef * r1[0] * r2[0] * c
        prefix_deg += e * alg.degrees[k]
    return AlgElement(alg, out)


def leibniz_extend(images: Mapping, shift: int, target: AlgElement, check: bool = True) -> AlgElement:
    """Evaluate on ``target`` the unique derivation of degree ``-shift`` with the given images.

    ``shift = -1`` gives a differential (degree +1), ``shift = i > 0`` an element of Der_i.
    Sign rule: σ(xy) = σ(x)y + (-1)^(shift*|x|) x σ(y).
    """
    alg = target.alg
    imgs = _normalize_images(alg, images)
    if check:
        _check_images(alg, imgs, shift)
    acc: dict[Monomial, Fraction] = {}
    for m, c in target.terms.items():
        for mm, v in apply_on_mono(alg, imgs, shift, m).terms.items():
            acc[mm] = acc.get(mm, 0) + c * v
    return AlgElement(alg, acc)


def monomial_basis(gens: Sequence[Generator | tuple], degree: int) -> list[Monomial]:
    return GradedAlgebra(gens).monomial_basis(degree)
