import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bautq.derivations import DerComplex, Derivation, der_bracket
from bautq.fibration import NotACycle, NotSeparable, complexes
from bautq.lie import (
    LIE_ZERO,
    DglMapData,
    LieBracket,
    LieGen,
    LieScale,
    LieSum,
    QuillenData,
    UnmappedGenerator,
    dgl_map_check,
    lie_eval,
)
from bautq.models import SullivanModel
from bautq.obstruction import CommutativityFailure, NotADglMap, obstruction_class, skeletal_lift_scan

U1, U2 = LieGen("u1"), LieGen("u2")


def el(alg, gen, *factors, c=1):
    val = alg.one()
    for f in factors:
        val = val * alg.gen(f)
    return Derivation.elementary(alg, gen, val, c)


def problem_args(ws, name):
    p = ws.problems[name]
    q = ws.quillens[p.quillen]
    q = QuillenData(q.gens, q.diff, p.cell)
    rest = DglMapData(p.hY.alg, {g: s for g, s in p.hY.images.items() if g != p.cell})
    return ws.relatives[p.relative], p.hX, p.hY.images[p.cell], q.d(p.cell), q.cell_degree + 1, q, rest


# -- lie_eval and dgl_map_check ---------------------------------------------


def test_lie_eval_examples(ws):
    m = ws.model("HopfTotal")
    zero_map = DglMapData(m.alg, {"u1": Derivation.zero(m.alg, 1)})
    out = lie_eval(zero_map, LieBracket(U1, U1))
    assert out is None or out.is_zero()
    h = DglMapData(m.alg, {"a": el(m.alg, "z"), "b": el(m.alg, "x", "z")})
    assert lie_eval(h, LieGen("a")) == el(m.alg, "z")
    assert lie_eval(h, LieBracket(LieGen("a"), LieGen("b"))) == el(m.alg, "x")
    assert lie_eval(h, LieScale(3, LieBracket(LieGen("a"), LieGen("b")))) == el(m.alg, "x", c=3)
    s = LieSum((LieBracket(LieGen("a"), LieGen("b")), LieScale(1, LieBracket(LieGen("b"), LieGen("a")))))
    # [a,b] + [b,a] with |a| = 3, |b| = 1: [b,a] = -(-1)^3 [a,b] = [a,b]
    assert lie_eval(h, s) == el(m.alg, "x", c=2)
    with pytest.raises(UnmappedGenerator):
        lie_eval(h, LieGen("c"))


def test_dgl_map_check_examples(ws):
    total = ws.relatives["F"].total
    q1 = QuillenData([("u1", 1)])
    assert dgl_map_check(q1, DglMapData(total.alg, {"u1": Derivation.zero(total.alg, 1)}), total)

    sv = ws.models["Sv"]
    lcp2 = ws.quillens["LCP2"]
    hY = DglMapData(sv.alg, {"u1": Derivation.zero(sv.alg, 1), "u2": el(sv.alg, "v")})
    assert dgl_map_check(lcp2, hY, sv)

    # same data, target differential altered so that ∂(v,1) ≠ 0
    t = SullivanModel([("a", 2), ("v", 3), ("b", 8)], {})
    t = SullivanModel(t.alg, {"b": t.alg.gen("v") * t.alg.gen("a") ** 3})
    assert not DerComplex(t).boundary(el(t.alg, "v")).is_zero()
    bad = DglMapData(t.alg, {"u1": Derivation.zero(t.alg, 1), "u2": el(t.alg, "v")})
    chk = dgl_map_check(lcp2, bad, t)
    assert not chk and len(chk.violations) == 1 and chk.violations[0].startswith("u2:")


def test_quillen_d_squared():
    assert QuillenData([("u1", 1), ("u2", 3)], {"u2": LieBracket(U1, U1)}).d_squared_failures() == []
    a, b = LieGen("a"), LieGen("b")
    q = QuillenData([("a", 1), ("b", 2), ("c", 4)], {"b": a, "c": LieBracket(a, b)})
    assert q.d_squared_failures() == ["c"]
    assert QuillenData([("a", 1), ("c", 3)], {"c": a}).degree_errors() == ["∂c has degree 1, expected 2"]


HOPF_GENS = ["(x,1)", "(y,z)", "(y,x)", "(z,1)", "(x,z)", "(y,1)"]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(range(6)), st.sampled_from(range(6)), st.integers(-3, 3))
def test_lie_eval_antisymmetry(ws, i, j, c):
    m = ws.model("HopfTotal")
    cx = DerComplex(m)
    basis = [cx.element(n, k) for n in (1, 3, 4, 7) for k in range(len(cx.basis(n)))]
    a, b = basis[i], basis[j] * c
    h = DglMapData(m.alg, {"a": a, "b": b})
    ab = lie_eval(h, LieBracket(LieGen("a"), LieGen("b")))
    ba = lie_eval(h, LieBracket(LieGen("b"), LieGen("a")))
    sign = -1 if (a.shift * b.shift) % 2 else 1
    assert ab == ba * (-sign)


# -- obstruction class -------------------------------------------------------


def test_cp2_example(ws):
    rm, hX, hYu, du, N, q, rest = problem_args(ws, "CP2")
    res = obstruction_class(rm, hX, hYu, du, N, q, rest)
    assert res.degree == 2 and res.verdict == "NONZERO"
    expected = complexes(rm).fiber.homology_class(el(rm.total.alg, "w2", "w1"))
    assert res.cls == expected
    assert res.hx_part.is_zero() and res.lift is None


def test_cp2_trivial_extension_lifts(ws):
    rm, hX, hYu, du, N, q, rest = problem_args(ws, "CP2triv")
    res = obstruction_class(rm, hX, hYu, du, N, q, rest)
    assert res.zero and res.tau_part.is_zero() and res.hx_part.is_zero()
    assert res.lift_check.passed
    assert res.lift.images["u2"] == el(rm.total.alg, "v")


def test_zero_data_gives_zero_class(ws):
    rm = ws.relatives["F"]
    res = obstruction_class(rm, DglMapData(rm.total.alg, {"u1": Derivation.zero(rm.total.alg, 1)}), Derivation.zero(rm.base.alg, 3), LieBracket(U1, U1), 4)
    assert res.zero and res.lift_check.passed


def test_lift5_problems(ws):
    res = obstruction_class(*problem_args(ws, "Lift5a"))
    assert res.zero
    res = obstruction_class(*problem_args(ws, "Lift5b"))
    assert not res.zero
    assert str(res.element) == "(w,v2)"


def _loop_problem(ws, t, c):
    """Cell u:3 with ∂u = c·a, |a| = 2, h_X(a) = (w2,w1) and h_Y(u) = t·(v,1) over F."""
    rm = ws.relatives["F"]
    alg = rm.total.alg
    q = QuillenData([("a", 2), ("u", 3)], {"u": LieScale(c, LieGen("a"))}, "u")
    hX = DglMapData(alg, {"a": el(alg, "w2", "w1")})
    hYu = el(rm.base.alg, "v") * t
    return rm, hX, hYu, q.d("u"), 4, q


def test_nonzero_h_x_contribution_cancels(ws):
    res = obstruction_class(*_loop_problem(ws, 2, 2))
    assert not res.hx_part.is_zero() and not res.tau_part.is_zero()
    assert res.zero and res.lift_check.passed


@settings(max_examples=100, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-3, 3).filter(bool))
def test_obstruction_scales(ws, t, c, k):
    base = obstruction_class(*_loop_problem(ws, t, c))
    scaled = obstruction_class(*_loop_problem(ws, k * t, k * c))
    assert scaled.element == base.element * k
    assert scaled.zero == base.zero == (t == c)
    if scaled.zero:
        assert scaled.lift_check.passed


def test_precondition_errors(ws):
    hopf = ws.relatives["Hopf"]
    with pytest.raises(NotSeparable):
        obstruction_class(hopf, DglMapData(hopf.total.alg, {}), Derivation.zero(hopf.base.alg, 3), LIE_ZERO, 4)

    rm = ws.relatives["F"]
    alg = rm.total.alg
    q = QuillenData([("a", 3), ("u", 4)], {}, "u")
    with pytest.raises(NotADglMap):
        obstruction_class(rm, DglMapData(alg, {"a": el(alg, "v")}), Derivation.zero(rm.base.alg, 4), LIE_ZERO, 5, q)
    triv = ws.relatives["Ftriv"]
    hX = DglMapData(triv.total.alg, {"a": el(triv.total.alg, "v")})
    hY = DglMapData(triv.base.alg, {"a": el(triv.base.alg, "v", c=2)})
    with pytest.raises(CommutativityFailure):
        obstruction_class(triv, hX, Derivation.zero(triv.base.alg, 4), LIE_ZERO, 5, q, hY)

    c2 = ws.relatives["Counter2"]
    with pytest.raises(NotACycle):
        obstruction_class(c2, DglMapData(c2.total.alg, {"u1": Derivation.zero(c2.total.alg, 1)}), el(c2.base.alg, "v1"), LieBracket(U1, U1), 4)
    with pytest.raises(ValueError):
        obstruction_class(rm, DglMapData(alg, {}), el(rm.base.alg, "v"), LIE_ZERO, 5)


# -- skeletal scan -----------------------------------------------------------


def test_scan_certifies_ex5a(ws):
    scan = skeletal_lift_scan(ws.relatives["Ex5a"], ws.quillens["LCP2"])
    assert scan.odd_base and scan.certified and scan.liftable and not scan.cells


def test_scan_ex5b_not_certified(ws):
    rm = ws.relatives["Ex5b"]
    scan = skeletal_lift_scan(rm, ws.quillens["LCP2"])
    assert not scan.certified and scan.liftable is None and len(scan.pi_odd_witnesses[2]) == 2
    hY = ws.problems["Lift5b"].hY
    scan = skeletal_lift_scan(rm, ws.quillens["LCP2"], hY)
    assert scan.liftable is False and [c.result.zero for c in scan.cells] == [True, False]


def test_scan_point_base(ws):
    rm = ws.relatives["Ex5b"]
    scan = skeletal_lift_scan(rm, QuillenData([]), DglMapData(rm.base.alg, {}))
    assert scan.liftable and not scan.cells
