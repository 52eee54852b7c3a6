from fractions import Fraction

import pytest

from rht import (DgaMorphism, FreeCdga, HomotopyElement, Leaf, Node,
                 RingPresentation, TruncatedCdga, attach_cell_model,
                 bracket_degree, extend_with_witness, hopf_invariant,
                 integrate_0_1, integrate_0_t, massey_triple, minimal_model,
                 obstruction_class, parse_bracket, scale_leaves,
                 whitehead_pair)
from rht.presentations import projective_ring, wedge_of_spheres_ring

from conftest import random_homogeneous

F = Fraction


# -- integration operators ------------------------------------------------------


def test_integral_0_t_annihilates_body(wedge_table):
    a = wedge_table["a"]
    assert integrate_0_t(HomotopyElement.t_power(a, 2)).is_zero()


def test_integral_0_t_odd_coefficient(wedge_table):
    a = wedge_table["a"]        # degree 3
    out = integrate_0_t(HomotopyElement.t_power(a, 0, dt=True))
    assert out == HomotopyElement.t_power(-1 * a, 1)


def test_integral_0_t_divides_by_exponent():
    A = FreeCdga([("x", 2)])
    out = integrate_0_t(HomotopyElement.t_power(A["x"], 1, dt=True))
    assert out.body == {2: A["x"] / 2}
    assert not out.dt_part


def test_integral_0_1_values(wedge_table):
    A = FreeCdga([("x", 2)])
    assert integrate_0_1(HomotopyElement.t_power(A["x"], 5)).is_zero()
    assert integrate_0_1(HomotopyElement.t_power(A["x"], 0, dt=True)) == A["x"]
    a = wedge_table["a"]
    assert integrate_0_1(HomotopyElement.t_power(a, 3, dt=True)) == a * F(-1, 4)


def _random_homotopy_element(alg, rng):
    body = {}
    dt = {}
    degrees = list(range(1, 10))
    for _ in range(rng.randint(1, 3)):
        e = random_homogeneous(alg, rng, degrees)
        i = rng.randint(0, 5)
        if rng.random() < 0.5:
            body[i] = body.get(i, alg.zero()) + e
        else:
            dt[i] = dt.get(i, alg.zero()) + e
    return HomotopyElement(alg, body, dt)


def test_integration_identities_randomized(wedge_table, rng):
    alg = wedge_table
    for _ in range(400):
        u = _random_homotopy_element(alg, rng)
        assert (integrate_0_t(u).d() + integrate_0_t(u.d())
                == u - HomotopyElement.constant(u.at(0)))
        assert integrate_0_1(u).d() + integrate_0_1(u.d()) == u.at(1) - u.at(0)


def test_t_degree_overflow_is_an_error(wedge_table):
    a = wedge_table["a"]
    with pytest.raises(ValueError, match="cap"):
        HomotopyElement.t_power(a, 17)
    X = FreeCdga([("x", 2)])
    big = HomotopyElement.t_power(X["x"], 9)
    with pytest.raises(ValueError, match="cap"):
        big * big
    assert HomotopyElement.t_power(a, 20, t_cap=32).body[20] == a


def test_time_reversal_involution(wedge_table, rng):
    for _ in range(50):
        u = _random_homotopy_element(wedge_table, rng)
        assert u.reversed().reversed() == u
        assert u.reversed().at(0) == u.at(1)
        assert u.reversed().at(1) == u.at(0)


# -- obstruction classes ---------------------------------------------------------


def _square():
    A = FreeCdga([("a", 2)], name="A")
    AV = FreeCdga.define([("a", 2), ("v", 3)], d=lambda X: {"v": X["a"] ** 2},
                         name="AV")
    B = FreeCdga.define([("a", 2), ("b", 3)], d=lambda X: {"b": X["a"] ** 2},
                        name="B")
    Cfree = FreeCdga.define([("e", 2), ("s", 3)], d=lambda X: {"s": X["e"] ** 2},
                            name="Cfree")
    C = TruncatedCdga(Cfree, 5, name="C")
    f = DgaMorphism(A, B, {"a": B["a"]})
    h = DgaMorphism(B, C, {"a": C["e"], "b": C["s"]})
    g = DgaMorphism(AV, C, {"a": C["e"], "v": C["s"]})
    return A, AV, B, C, f, g, h


def test_obstruction_vanishes_for_identity_target():
    A, AV, B, _C, f, _g, _h = _square()
    g = DgaMorphism(AV, B, {"a": B["a"], "v": B["b"]})
    ob = obstruction_class(f, g, DgaMorphism.identity(B))
    assert ob.vanishes
    f_ext, H_ext = extend_with_witness(ob)
    assert f_ext.images["v"].d() == f.apply(A["a"] ** 2)


def test_obstruction_model_map_fixture():
    _A, _AV, B, _C, f, g, h = _square()
    ob = obstruction_class(f, g, h)
    assert ob.vanishes
    b_v, c_v = ob.primitives["v"]
    assert b_v == B["b"] and c_v.is_zero()
    f_ext, H_ext = extend_with_witness(ob)
    # at t = 0 the extension homotopy restricts to g
    assert H_ext.images["v"].at(0) == g.images["v"]
    assert H_ext.images["v"].at(1) == h.apply(B["b"])


def test_obstruction_cocycle_property():
    from rht.cohomology import MappingCone
    _A, _AV, _B, _C, f, g, h = _square()
    ob = obstruction_class(f, g, h)
    cone = MappingCone(h)
    for name, (b_part, c_part) in ob.cocycle.items():
        terms = cone.terms_of_pair(b_part, c_part)
        out = {}
        for key, c in terms.items():
            for k2, c2 in cone.d_key(key).items():
                out[k2] = out.get(k2, F(0)) + c * c2
        assert not any(out.values())


def test_obstruction_nonvanishing_rank_one():
    A, AV, B, _C, f, _g, _h = _square()
    C2free = FreeCdga.define([("e", 2), ("s", 3), ("sp", 3)],
                             d=lambda X: {"s": X["e"] ** 2})
    C2 = TruncatedCdga(C2free, 5, name="C2")
    h2 = DgaMorphism(B, C2, {"a": C2["e"], "b": C2["s"]})
    g2 = DgaMorphism(AV, C2, {"a": C2["e"], "v": C2["s"] + C2["sp"]})
    ob = obstruction_class(f, g2, h2)
    assert not ob.vanishes and ob.rank == 1
    with pytest.raises(ValueError, match="does not vanish"):
        extend_with_witness(ob)


def test_obstruction_requires_matching_homotopy():
    _A, _AV, B, C, f, g, h = _square()
    # g|_A with a different image than h(f(a)) and no homotopy given
    AV2 = g.source
    g_bad = DgaMorphism(AV2, C, {"a": 2 * C["e"],
                                 "v": 4 * C["s"]})
    with pytest.raises(ValueError, match="homotopy"):
        obstruction_class(f, g_bad, h)


def test_obstruction_rejects_mixed_extension_degrees():
    A = FreeCdga([("a", 2)], name="A")
    bad = FreeCdga.define([("a", 2), ("v", 3), ("w", 5)],
                          d=lambda X: {"v": X["a"] ** 2, "w": X["a"] ** 3})
    B = FreeCdga.define([("a", 2), ("b", 3)], d=lambda X: {"b": X["a"] ** 2})
    f = DgaMorphism(A, B, {"a": B["a"]})
    g = DgaMorphism(bad, B, {"a": B["a"], "v": B["b"], "w": B["a"] * B["b"]})
    with pytest.raises(ValueError, match="one degree"):
        obstruction_class(f, g, DgaMorphism.identity(B))


def test_constant_extension_keeps_constant_homotopy():
    _A, _AV, B, _C, f, g, h = _square()
    ob = obstruction_class(f, g, h)
    f_ext, H_ext = extend_with_witness(ob)
    img = H_ext.images["v"]
    # c = 0 here, so the homotopy on v is g(v) plus the integral tail only
    assert img.at(0) == g.images["v"]


# -- Whitehead pairings ------------------------------------------------------------


def test_bracket_parsing_roundtrip():
    e = parse_bracket("[[a,c],[a,[a,b]]]")
    assert isinstance(e, Node) and isinstance(e.left, Node)
    assert parse_bracket("3*a") == Leaf("a", F(3))
    with pytest.raises(ValueError):
        parse_bracket("[a,")
    with pytest.raises(ValueError):
        parse_bracket("[a b]")


def test_bracket_degrees(wedge_table):
    assert bracket_degree(wedge_table, parse_bracket("[a,b]")) == 5
    assert bracket_degree(wedge_table, parse_bracket("[a,[a,b]]")) == 7
    assert bracket_degree(wedge_table, parse_bracket("[[a,c],[a,[a,b]]]")) == 13


def test_whitehead_unit_pairings(wedge_table):
    assert abs(whitehead_pair(wedge_table, "u_b", parse_bracket("[a,b]"))) == 1
    assert abs(whitehead_pair(wedge_table, "v_b", parse_bracket("[a,[a,b]]"))) == 1
    assert whitehead_pair(wedge_table, "u_c", parse_bracket("[a,c]")) != 0


def test_whitehead_seventeenth_power_scaling(wedge_table):
    expr = parse_bracket("[[a,c],[a,[a,b]]]")
    base = whitehead_pair(wedge_table, "z", expr)
    assert base != 0
    for n in (1, 2, 3, 4, 5):
        scaled = scale_leaves(expr, lambda leaf: F(n) ** wedge_table.degree_of(leaf.name))
        assert whitehead_pair(wedge_table, "z", scaled) == F(n) ** 17 * base


def test_whitehead_multilinearity_in_single_leaf(wedge_table):
    expr = Node(Node(Leaf("a"), Leaf("c")),
                Node(Leaf("a", F(1)), Node(Leaf("a"), Leaf("b"))))
    base = whitehead_pair(wedge_table, "z", expr)
    scaled = Node(Node(Leaf("a"), Leaf("c", F(7))),
                  Node(Leaf("a"), Node(Leaf("a"), Leaf("b"))))
    assert whitehead_pair(wedge_table, "z", scaled) == 7 * base


def test_whitehead_square_convention():
    # db = a^2 makes b dual to the bracket square of the degree-2 class, with
    # the even-square convention contributing a factor of 2
    s2 = FreeCdga.define([("a", 2), ("b", 3)], d=lambda A: {"b": A["a"] ** 2})
    assert abs(whitehead_pair(s2, "b", parse_bracket("[a,a]"))) == 2


def test_whitehead_degree_mismatch_rejected(wedge_table):
    with pytest.raises(ValueError, match="degree"):
        whitehead_pair(wedge_table, "z", parse_bracket("[a,b]"))


# -- Massey triples ----------------------------------------------------------------


def test_massey_wedge_vanishes():
    w33 = minimal_model(wedge_of_spheres_ring([3, 3], name="w33"), 8)
    alg = w33.algebra
    a, b = (alg[g.name] for g in alg.gens if g.degree == 3)
    res = massey_triple(alg, a, a, b)
    assert res.vanishes_mod_indeterminacy


def test_massey_cell_attachment_certifies_nonformality():
    w33 = minimal_model(wedge_of_spheres_ring([3, 3], name="w33"), 8)
    alg = w33.algebra
    a3 = [g.name for g in alg.gens if g.degree == 3]
    u5 = [g.name for g in alg.gens if g.degree == 5][0]
    target = alg[a3[0]] * alg[u5]
    vb = next(g.name for g in alg.gens if g.degree == 7
              and alg.differential_of(g.name) in (target, -target))
    cell = attach_cell_model(w33, {vb: 1})
    res = massey_triple(cell, cell[a3[0]], cell[a3[0]], cell[a3[1]])
    assert not res.vanishes_mod_indeterminacy
    assert res.indeterminacy_dim == 0
    assert any(res.class_coords)


def test_massey_zero_input_gives_zero_class(wedge_table):
    res = massey_triple(wedge_table, wedge_table.zero(), wedge_table["a"],
                        wedge_table["b"])
    assert res.vanishes_mod_indeterminacy
    assert res.class_representative.is_zero()


def test_massey_rejects_nonvanishing_products():
    A = FreeCdga([("a", 3), ("b", 3), ("c", 5)])
    with pytest.raises(ValueError, match="does not vanish"):
        massey_triple(A, A["a"], A["b"], A["c"])


# -- Hopf invariants ----------------------------------------------------------------


def test_hopf_cp2_is_one():
    assert hopf_invariant(projective_ring(2, 2, name="CP2"), "x") == 1


def test_hopf_s2s2_is_zero():
    amb = FreeCdga([("w1", 2), ("w2", 2)])
    ring = RingPresentation([("w1", 2), ("w2", 2)],
                            [amb["w1"] ** 2, amb["w2"] ** 2],
                            fundamental_degree=4, duality=True)
    assert hopf_invariant(ring, "w1") == 0
    assert hopf_invariant(ring, "w2") == 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_hopf_cup_square_bilinearity(k):
    amb = FreeCdga([("w", 2), ("b", 4)])
    ring = RingPresentation(
        [("w", 2), ("b", 4)],
        [amb["w"] ** 2 - k * k * amb["b"], amb["w"] * amb["b"], amb["b"] ** 2],
        fundamental_degree=4)
    assert hopf_invariant(ring, "w") == k * k


def test_hopf_rejects_fat_top_degree():
    ring = RingPresentation([("w", 2), ("u", 4), ("v", 4)], [],
                            fundamental_degree=4)
    with pytest.raises(ValueError, match="rank"):
        hopf_invariant(ring, "w")
