import itertools
import random

import pytest

from chevcr import e7
from chevcr.centralizer import centralizer_description
from chevcr.chevalley import MixedElement, UnipotentElement, levi
from chevcr.coeffring import GF2m, SparsePoly, ZERO
from chevcr.crgit import (SearchSpaceTooLarge, SupportNotCentralInContext, brute_force_conjugacy, c_lambda,
                          c_lambda_tuple, conjugate_tuple, curve_tuple, default_finite_set, find_offset,
                          infinite_classes_obstruction, ru_conjugacy_decision, specialize_tuple)
from chevcr.parabolic import Cocharacter, lambda_weights
from chevcr.weyl import WeylWord

GF2 = GF2m(1)
GF4 = GF2m(2)
F16 = GF2m(4)
LEVI = ["alpha", "beta", "gamma", "delta", "epsilon", "eta"]


@pytest.fixture(scope="module")
def ctx():
    return e7.context()


@pytest.fixture(scope="module")
def desc(ctx):
    return centralizer_description([e7.Q1, e7.Q2], ctx)


def _random_element(rng, ctx):
    w = WeylWord(tuple(rng.choice(LEVI) for _ in range(rng.randint(0, 6))))
    coeffs = {x: F16(rng.randrange(16)) for x in rng.sample(range(1, 43), rng.randint(0, 10))}
    return MixedElement(w, UnipotentElement(ctx, coeffs))


def test_limit_of_conjugated_generators(ctx):
    a = SparsePoly.var("a")
    hs = e7.conjugated_generators(a, ctx)
    assert c_lambda_tuple(hs, ctx) == e7.k_generators(ctx)


def test_limit_of_radical_and_levi_elements(ctx):
    u = MixedElement(WeylWord(), UnipotentElement(ctx, {1: 1, 36: 1}))
    assert c_lambda(u).unip.is_identity() and c_lambda(u).permutation.is_identity()
    q = levi(e7.Q1, ctx)
    assert c_lambda(q) == q


def test_limit_is_an_idempotent_homomorphism(ctx):
    rng = random.Random(12)
    for _ in range(100):
        x, y = _random_element(rng, ctx), _random_element(rng, ctx)
        assert c_lambda(x * y) == c_lambda(x) * c_lambda(y)
        assert c_lambda(c_lambda(x)) == c_lambda(x)


def test_central_conjugation_preserves_limit(ctx):
    rng = random.Random(13)
    for _ in range(30):
        x = _random_element(rng, ctx)
        m = MixedElement(WeylWord(), UnipotentElement(ctx, {z: F16(rng.randrange(16)) for z in range(36, 43)}))
        assert c_lambda(x.conjugate(m)) == c_lambda(x)


def test_weights_of_lambda(ctx):
    S = ctx.system
    w = lambda_weights(e7.cocharacter(), S)
    assert w[S.simple_label("sigma")] == 2
    assert all(w[x] == 0 for x in range(43, 64))
    assert all(w[x] == 2 for x in range(1, 36)) and all(w[x] == 4 for x in range(36, 43))


def test_zero_cocharacter_has_zero_weights(ctx):
    w = lambda_weights(Cocharacter((0,) * 7), ctx.system)
    assert set(w.values()) == {0}


def test_roots_of_m_are_closed(ctx):
    S = ctx.system
    psi = {s * x for x in range(36, 64) for s in (1, -1)}
    for x, y in itertools.product(psi, psi):
        r = S.root(x) + S.root(y)
        if S.is_root(r):
            assert S.label(r) in psi
    # and it is the full set of roots orthogonal to the weight-one layer's complement in Psi(M)
    assert len(psi) == 56


def test_symbolic_non_conjugacy(ctx, desc):
    a = SparsePoly.var("a")
    hs = e7.conjugated_generators(a, ctx)
    v = ru_conjugacy_decision(hs, e7.k_generators(ctx), e7.WEIGHT_TWO, desc,
                              source_offset=e7.v(a, ctx), orbit_names=e7.orbit_names())
    assert not v.conjugate
    assert [str(c) for c in v.conditions] == ["a"]
    assert v.certificate["orbit_values"] == {"a": "a", "b": "0", "c": "0", "d": "0"}
    assert v.certificate["violated_relation"] == "a + b + c + d = 0"
    assert v.certificate["relation_value"] == "a"
    assert "trust_boundary" in v.certificate
    assert v.holds_at({"a": GF4(0)}, GF4) and not v.holds_at({"a": GF4.gen}, GF4)


def test_offset_solver_lands_in_the_right_coset(ctx, desc):
    a = SparsePoly.var("a")
    hs = e7.conjugated_generators(a, ctx)
    off = find_offset(hs, desc)
    g = MixedElement(WeylWord(), off)
    assert conjugate_tuple(g, e7.k_generators(ctx)) == hs


def test_symbolic_decision_without_offsets(ctx, desc):
    a = SparsePoly.var("a")
    v = ru_conjugacy_decision(e7.conjugated_generators(a, ctx), e7.k_generators(ctx), e7.WEIGHT_TWO, desc)
    assert not v.conjugate and [str(c) for c in v.conditions] == ["a"]


def test_brute_force_non_conjugacy_gf2(ctx):
    hs = e7.conjugated_generators(SparsePoly.var("a"), ctx)
    r = brute_force_conjugacy(specialize_tuple(hs, {"a": GF2(1)}, GF2), e7.k_generators(ctx), e7.WEIGHT_TWO, GF2)
    assert not r.conjugate and r.search_space == 128


def test_brute_force_non_conjugacy_gf4(ctx):
    hs = e7.conjugated_generators(SparsePoly.var("a"), ctx)
    r = brute_force_conjugacy(specialize_tuple(hs, {"a": GF4.gen}, GF4), e7.k_generators(ctx), e7.WEIGHT_TWO, GF4)
    assert not r.conjugate and r.search_space == 4 ** 7


def test_symbolic_and_brute_force_agree(ctx, desc):
    rng = random.Random(14)
    ks = e7.k_generators(ctx) + e7.central_elements(ctx)
    for _ in range(4):
        m0 = UnipotentElement(ctx, {z: 1 for z in e7.WEIGHT_TWO if rng.random() < 0.5})
        src = conjugate_tuple(MixedElement(WeylWord(), m0), ks)
        sym = ru_conjugacy_decision(src, ks, e7.WEIGHT_TWO, desc)
        brute = brute_force_conjugacy(src, ks, e7.WEIGHT_TWO, GF2)
        assert sym.conjugate and brute.conjugate
        assert conjugate_tuple(MixedElement(WeylWord(), sym.conjugator), src) == ks
    # a non-conjugate instance over GF(2)
    one = SparsePoly.const(1)
    hs = e7.conjugated_generators(one, ctx)
    sym = ru_conjugacy_decision(hs, e7.k_generators(ctx), e7.WEIGHT_TWO, desc, source_offset=e7.v(one, ctx))
    brute = brute_force_conjugacy(hs, e7.k_generators(ctx), e7.WEIGHT_TWO, GF2)
    assert not sym.conjugate and not brute.conjugate


def test_brute_force_returns_least_conjugator(ctx):
    ks = e7.k_generators(ctx)
    r = brute_force_conjugacy(ks, ks, e7.WEIGHT_TWO, GF2)
    assert r.conjugate and r.conjugator.is_identity()


def test_non_central_support_is_refused(ctx, desc):
    ks = e7.k_generators(ctx)
    with pytest.raises(SupportNotCentralInContext):
        ru_conjugacy_decision(ks, ks, [1, 36], desc)


def test_search_space_bound(ctx):
    ks = e7.k_generators(ctx)
    with pytest.raises(SearchSpaceTooLarge):
        brute_force_conjugacy(ks, ks, e7.WEIGHT_TWO, F16)


def test_different_levi_parts_are_not_conjugate(ctx, desc):
    ks = e7.k_generators(ctx)
    v = ru_conjugacy_decision(ks, ks[::-1], e7.WEIGHT_TWO, desc)
    assert not v.conjugate


def test_infinite_classes_relation(desc):
    res = infinite_classes_obstruction(desc, e7.WEIGHT_TWO, list(e7.CURVES[1]))
    assert str(res.relation) == "a' + b'"
    assert res.routes_agree
    assert res.to_json()["relation"] == "a' + b' = 0"


def test_infinite_classes_other_curve(desc):
    res = infinite_classes_obstruction(desc, e7.WEIGHT_TWO, list(e7.CURVES[8]))
    assert str(res.relation) == "a' + b'" and res.routes_agree


def test_infinite_classes_degenerate_curve(desc):
    res = infinite_classes_obstruction(desc, e7.WEIGHT_TWO, [])
    assert res.relation == ZERO and not res.coset_conditions and not res.direct_conditions


def test_infinite_classes_brute_force_gf4(ctx, desc):
    F = default_finite_set(ctx, e7.WEIGHT_TWO)
    target = curve_tuple(desc, list(e7.CURVES[1]), GF4.one, F)
    source = curve_tuple(desc, list(e7.CURVES[1]), GF4.gen, F)
    assert not brute_force_conjugacy(source, target, e7.WEIGHT_TWO, GF4).conjugate
    same = curve_tuple(desc, list(e7.CURVES[1]), GF4.gen, F)
    assert brute_force_conjugacy(source, same, e7.WEIGHT_TWO, GF4).conjugate
