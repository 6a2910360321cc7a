"""The obstruction O_α(h_X, h_Y) to lifting over an attached cell, and a cell-by-cell scan."""
from __future__ import annotations

from dataclasses import dataclass, field

from .derivations import Derivation, HomologyClass
from .fibration import NotACycle, b_f_project, complexes, is_pi_q_separable, pi_odd_vanishing, NotSeparable
from .lie import DglMapData, LieExpr, QuillenData, dgl_map_check, lie_eval
from .models import RelativeModel


class CommutativityFailure(ValueError):
    pass


class NotADglMap(ValueError):
    pass


@dataclass
class ObstructionResult:
    degree: int
    element: Derivation
    cls: HomologyClass | None
    zero: bool
    tau_part: Derivation
    hx_part: Derivation
    q: Derivation | None = None
    lift: DglMapData | None = None
    lift_check: object = None

    @property
    def verdict(self) -> str:
        return "ZERO" if self.zero else "NONZERO"


def _embed_map(rm: RelativeModel, h: DglMapData) -> DglMapData:
    alg = rm.total.alg
    if h.alg == alg:
        return h
    return DglMapData(alg, {g: Derivation(alg, s.shift, {s.alg.names[i]: alg.embed(v) for i, v in s.images.items()}, check=False) for g, s in h.images.items()})


def obstruction_class(
    rm: RelativeModel,
    hX: DglMapData,
    hYu: Derivation,
    del_alpha_u: LieExpr,
    N: int,
    quillen: QuillenData | None = None,
    hY: DglMapData | None = None,
) -> ObstructionResult:
    """[τ(h_Y(u)) - h''_X(∂_α u)] in H_{N-2} of the fiber part, with the lift when it vanishes.

    ``quillen`` (when given) is L(B)∐L(u) with its cell named; it is used to check
    that h_X is a DGL map on L(B) and that the extended map is one too.
    ``hY`` gives h_Y on L(B); generators it omits default to b_f∘h_X.
    """
    if not is_pi_q_separable(rm):
        raise NotSeparable("obstruction theory needs a π_Q-separable relative model")
    fc = complexes(rm)
    hX = _embed_map(rm, hX)
    if not hYu.is_zero() and hYu.shift != N - 1:
        raise ValueError(f"h_Y(u) has degree {hYu.shift}, a cell of dimension {N} needs {N - 1}")
    if quillen is not None:
        chk = dgl_map_check(quillen.without_cell(), hX, rm.total)
        if not chk:
            raise NotADglMap("; ".join(chk.violations))
    hy_images = {g: b_f_project(rm, s) for g, s in hX.images.items()}
    for g, s in (hY.images.items() if hY else ()):
        if g in hy_images and b_f_project(rm, hX.images[g]) != s:
            raise CommutativityFailure(f"b_f(h_X({g})) = {hy_images[g]} but h_Y({g}) = {s}")
        hy_images[g] = s

    # equation (1): ∂_Y h_Y(u) = h_Y(∂_α u), which makes the difference a cycle
    hy_map = DglMapData(rm.base.alg, hy_images)
    rhs = lie_eval(hy_map, del_alpha_u)
    lhs = fc.base.boundary(hYu) if not hYu.is_zero() else hYu
    if not (lhs - rhs if rhs is not None else lhs).is_zero():
        raise NotACycle(f"∂_Y h_Y(u) = {lhs} differs from h_Y(∂u) = {rhs}")

    n = N - 2
    alg = rm.total.alg
    ext = fc.zero_extend(hYu) if not hYu.is_zero() else Derivation.zero(alg, N - 1)
    tau_part = fc.tau(ext) if not ext.is_zero() else Derivation.zero(alg, n)
    hx_val = lie_eval(hX, del_alpha_u)
    hx_part = fc.split(hx_val)[1] if hx_val is not None else Derivation.zero(alg, n)
    element = tau_part - hx_part
    if n < 1:
        # shift-0 derivations: degree-1 chains are cycles, so nothing bounds
        zero, cls, q = element.is_zero(), None, (Derivation.zero(alg, 1) if element.is_zero() else None)
    else:
        if not fc.fiber.is_cycle(element):
            raise NotACycle(f"obstruction element {element} is not a ∂_X-cycle")
        cls = HomologyClass(n, element, fc.fiber)
        q = fc.fiber.solve_boundary(element, n)
        zero = q is not None
    res = ObstructionResult(n, element, cls, zero, tau_part, hx_part, q)
    if zero:
        lift_u = ext - q if not q.is_zero() else ext
        cell = quillen.cell if quillen is not None and quillen.cell else "u"
        res.lift = hX.extended(cell, lift_u)
        if quillen is not None:
            res.lift_check = dgl_map_check(quillen, res.lift, rm.total)
        else:
            q1 = QuillenData([(g, s.shift) for g, s in hX.images.items()] + [(cell, N - 1)], {cell: del_alpha_u})
            res.lift_check = dgl_map_check(q1, res.lift, rm.total)
    return res


@dataclass
class CellReport:
    cell: str
    N: int
    result: ObstructionResult


@dataclass
class LiftScan:
    odd_base: bool
    certified: bool
    liftable: bool | None
    cells: list[CellReport] = field(default_factory=list)
    pi_odd_witnesses: dict = field(default_factory=dict)
    hX: DglMapData | None = None
    note: str = ""


def skeletal_lift_scan(rm: RelativeModel, q: QuillenData, hY: DglMapData | None = None) -> LiftScan:
    """Attach the generators of q one at a time and extend h_X whenever the obstruction vanishes.

    If every generator of q has odd degree and π_odd(Baut_1 f)_Q = 0, all obstruction
    groups vanish and the lift is certified without cell computations.
    """
    if not is_pi_q_separable(rm):
        raise NotSeparable("obstruction theory needs a π_Q-separable relative model")
    odd = all(d % 2 for _, d in q.gens)
    pv = pi_odd_vanishing(rm)
    if odd and pv:
        return LiftScan(True, True, True, note="all obstruction groups H_even of the fiber part vanish")
    if hY is None:
        return LiftScan(odd, False, None, pi_odd_witnesses=pv.nonzero, note="no h_Y supplied; per-cell obstructions not evaluated")
    alg = rm.total.alg
    hX = DglMapData(alg, {})
    cells = []
    done: list[tuple[str, int]] = []
    for g, deg in q.gens:
        sub = QuillenData(done + [(g, deg)], {k: q.d(k) for k, _ in done + [(g, deg)]}, g)
        hYu = hY.images.get(g, Derivation.zero(rm.base.alg, deg))
        res = obstruction_class(rm, hX, hYu, q.d(g), deg + 1, sub, DglMapData(rm.base.alg, {k: v for k, v in hY.images.items() if k != g}))
        cells.append(CellReport(g, deg + 1, res))
        if not res.zero:
            return LiftScan(odd, False, False, cells, pv.nonzero, hX, f"obstruction at cell {g} is nonzero for this choice of h_X")
        hX = res.lift
        done.append((g, deg))
    return LiftScan(odd, False, True, cells, pv.nonzero, hX, "every cell obstruction vanished")
