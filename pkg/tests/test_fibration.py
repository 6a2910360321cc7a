import pytest

from bautq.derivations import Derivation
from bautq.fibration import (
    BaseNotOddSphere,
    CutoffInsufficient,
    NotACycle,
    NotSeparable,
    b_f_project,
    complexes,
    connecting_delta,
    fiber_dims_formula,
    odd_sphere_triviality,
    pi_odd_vanishing,
    rel_der_homology,
    rho_image,
    section_exists,
    strict_projection_check,
)
from bautq.models import RelativeModel, SullivanModel


def el(alg, gen, *factors, c=1):
    val = alg.one()
    for f in factors:
        val = val * alg.gen(f)
    return Derivation.elementary(alg, gen, val, c)


@pytest.fixture(scope="module")
def s2n_x():
    # Λ(x:4) | y:7 with Dy = x², viewed as a fibration over K(Q,4)
    base = SullivanModel([("x", 4)], {})
    alg_t = RelativeModel(base, [("y", 7)]).total.alg
    return RelativeModel(base, [("y", 7)], {"y": alg_t.gen("x") ** 2})


def test_b_f_examples(s2n_x):
    alg = s2n_x.total.alg
    base = s2n_x.base.alg
    assert b_f_project(s2n_x, el(alg, "x")) == el(base, "x")
    assert b_f_project(s2n_x, el(alg, "y")).is_zero()
    assert b_f_project(s2n_x, el(alg, "y", "x")).is_zero()


def test_b_f_kills_fiber_part_and_fixes_base(ws):
    rm = ws.relatives["Counter2"]
    fc = complexes(rm)
    for n in range(1, fc.fiber.max_degree + 1):
        for j in range(len(fc.fiber.basis(n))):
            assert b_f_project(rm, fc.fiber.element(n, j)).is_zero()
    for n in range(1, fc.base.max_degree + 1):
        for j in range(len(fc.base.basis(n))):
            s = fc.base.element(n, j)
            assert b_f_project(rm, fc.zero_extend(s)) == s


def test_b_f_requires_separable(ws):
    rm = ws.relatives["Hopf"]
    with pytest.raises(NotSeparable):
        b_f_project(rm, el(rm.total.alg, "x"))


def test_strict_projection(ws):
    assert strict_projection_check(ws.relatives["Counter1"]).passed
    bad = strict_projection_check(ws.relatives["Hopf"])
    assert not bad.passed
    assert bad.witness == ("(z,1)", "(x,z)", "(x,1)")
    empty = RelativeModel(ws.models["S4"], [])
    chk = strict_projection_check(empty)
    assert chk.passed and chk.checked_elements > 0


def test_connecting_delta_examples(ws):
    c1 = ws.relatives["Counter1"]
    fc = complexes(c1)
    img = connecting_delta(c1, el(c1.base.alg, "v1"))
    assert img.degree == 2 and not img.is_zero()
    assert img == fc.fiber.homology_class(el(c1.total.alg, "w2", "w1"))

    c2 = ws.relatives["Counter2"]
    assert connecting_delta(c2, el(c2.base.alg, "v3")).is_zero()

    su = ws.relatives["SU6F"]
    fcs = complexes(su)
    img = connecting_delta(su, el(su.base.alg, "y1"))
    expected = fcs.fiber.homology_class(el(su.total.alg, "w2", "x2", "w1"))
    assert not img.is_zero()
    assert img.proportional_to(expected) in (1, -1)


def test_connecting_delta_errors(ws):
    su = ws.relatives["SU6F"]
    with pytest.raises(NotACycle):
        connecting_delta(su, el(su.base.alg, "x1"))
    with pytest.raises(NotSeparable):
        connecting_delta(ws.relatives["Hopf"], el(ws.models["S4"].alg, "y"))


def test_section_examples(ws):
    v = section_exists(ws.relatives["Counter1"])
    assert not v and len(v.failing) == 1 and v.ranks[3] == 1
    assert section_exists(ws.relatives["Counter2"])
    assert section_exists(RelativeModel(ws.models["Y2"], []))
    assert section_exists(ws.relatives["Counter2"]).scanned_degrees == range(2, 6)


def test_odd_sphere(ws):
    v = odd_sphere_triviality(ws.relatives["Counter1"])
    assert v.label == "a_f ~ *" and v.witness_class_nonzero
    assert str(v.witness) == "(w2,w1)"
    assert odd_sphere_triviality(ws.relatives["Ftriv"]).fibre_trivial
    rm = RelativeModel(ws.models["Sv"], [("w", 5)])
    assert odd_sphere_triviality(rm).label == "fibre-trivial"
    with pytest.raises(BaseNotOddSphere):
        odd_sphere_triviality(ws.relatives["Counter2"])


def test_rel_der_homology_examples(ws):
    ex5b = ws.relatives["Ex5b"]
    h2 = rel_der_homology(ex5b, 2)
    assert h2.dim == 2
    fc = complexes(ex5b)
    alg = ex5b.total.alg
    a = fc.fiber.homology_class(el(alg, "w", "v1"))
    b = fc.fiber.homology_class(el(alg, "w", "v2"))
    assert not a.is_zero() and not b.is_zero() and a.proportional_to(b) is None

    ex5a = ws.relatives["Ex5a"]
    assert all(rel_der_homology(ex5a, n).dim == 0 for n in range(2, 6, 2))

    empty = RelativeModel(ws.models["S3"], [])
    assert all(rel_der_homology(empty, n).dim == 0 for n in range(1, 6))


def test_pi_odd_examples(ws):
    assert pi_odd_vanishing(ws.relatives["Ex5a"])
    v = pi_odd_vanishing(ws.relatives["Ex5b"])
    assert not v and list(v.nonzero) == [2] and len(v.nonzero[2]) == 2
    assert pi_odd_vanishing(RelativeModel(ws.models["S3"], []))


def test_fiber_dims_formula_examples(ws):
    c1 = ws.relatives["Counter1"]
    # n = 2 picks up Der_5(ΛW) ⊗ H^3 = span of (w1,1)⊗[v1], plus Der_2 ⊗ H^0 = (w2,w1)
    assert fiber_dims_formula(c1, 2, 10) == 2
    empty = RelativeModel(ws.models["S3"], [])
    assert all(fiber_dims_formula(empty, n, 6) == 0 for n in range(1, 6))
    point = SullivanModel([], {})
    rm = RelativeModel(point, [("w1", 5), ("w2", 7)])
    assert [fiber_dims_formula(rm, n, 4) for n in range(1, 8)] == [0, 1, 0, 0, 1, 0, 1]
    with pytest.raises(CutoffInsufficient):
        fiber_dims_formula(c1, 2, 1)


def test_rho_image_matches_formula_and_fiber_homology(ws):
    c1 = ws.relatives["Counter1"]
    rho = rho_image(c1, 10)
    assert rho.closed
    fc = complexes(c1)
    for n in range(1, 11):
        assert len(rho.vectors[n]) == fiber_dims_formula(c1, n, 10)
        assert rho.homology_dims[n] == fc.fiber.homology_dim(n)
