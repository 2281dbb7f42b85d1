import itertools

import pytest

from chevcr.rootsys import (CartanDatum, E7_SIGMA_BANDS, LabelMismatch, NonFinite, NonSimplyLaced, Root,
                            e7_datum, e7_root_system, generate_root_system, load_root_table, pairing,
                            reflect, simple_root, type_a_datum, type_d_datum, type_e_datum,
                            validate_labeling)

import oracles


@pytest.fixture(scope="module")
def E7():
    return e7_root_system()


def test_e7_datum_matches_dynkin_chain():
    d = e7_datum()
    assert d.simple_root_names == ("alpha", "beta", "gamma", "delta", "epsilon", "eta", "sigma")
    edges = {frozenset(e) for e in d.edges()}
    assert edges == {frozenset(e) for e in oracles.EDGES}


@pytest.mark.parametrize("datum, count", [
    (type_a_datum(1), 1), (type_a_datum(2), 3), (type_a_datum(5), 15),
    (type_d_datum(4), 12), (type_d_datum(6), 30),
    (type_e_datum(6), 36), (e7_datum(), 63), (type_e_datum(8), 120),
])
def test_positive_root_counts(datum, count):
    assert len(generate_root_system(datum).positive_roots) == count


def test_a2_roots_are_xi_zeta_and_sum():
    S = generate_root_system(type_a_datum(2))
    assert [r.coords for r in S.positive_roots] == [(0, 1), (1, 0), (1, 1)]


def test_non_simply_laced_rejected():
    with pytest.raises(NonSimplyLaced):
        CartanDatum(2, ((2, -1), (-2, 2)), ("a", "b"))   # B2
    with pytest.raises(NonSimplyLaced):
        CartanDatum(2, ((2, -2), (-2, 2)), ("a", "b"))


def test_affine_datum_hits_the_bound():
    affine_a2 = CartanDatum(3, ((2, -1, -1), (-1, 2, -1), (-1, -1, 2)), ("x", "y", "z"))
    with pytest.raises(NonFinite):
        generate_root_system(affine_a2, bound=500)


def test_pairing_examples(E7):
    d = E7.datum
    sigma, delta, alpha = (simple_root(d, d.index(n)) for n in ("sigma", "delta", "alpha"))
    assert pairing(sigma, delta, d) == -1
    assert pairing(sigma, sigma, d) == 2
    assert pairing(sigma, alpha, d) == 0


def test_reflect_examples(E7):
    d = E7.datum
    sigma, delta, beta = (simple_root(d, d.index(n)) for n in ("sigma", "delta", "beta"))
    assert reflect(sigma, sigma, d) == -sigma
    assert E7.label(reflect(sigma, delta, d)) == 9
    assert oracles.table()[9] == (1, 0, 0, 0, 1, 0, 0)
    assert reflect(sigma, beta, d) == sigma


def test_bundled_table_validates(E7):
    rep = validate_labeling(generate_root_system(e7_datum()), load_root_table(), bands=E7_SIGMA_BANDS)
    assert str(rep) == "VALID, 63/63 matched"
    assert rep.bands == {1: 35, 2: 7, 0: 21}


def test_label_8_is_sigma_and_43_to_48_are_the_chain(E7):
    assert E7.simple_label("sigma") == 8
    assert [E7.simple_label(n) for n in ("alpha", "beta", "gamma", "delta", "epsilon", "eta")] == list(range(43, 49))
    assert oracles.table()[8] == (1, 0, 0, 0, 0, 0, 0)


def test_duplicated_vector_is_rejected():
    rows = load_root_table()
    rows[1] = (rows[1][0], dict(rows[0][1]))
    with pytest.raises(LabelMismatch) as err:
        validate_labeling(generate_root_system(e7_datum()), rows)
    assert err.value.label == 2


def test_band_violation_is_rejected():
    rows = load_root_table()
    # swap labels 35 and 36: both still roots, but the sigma bands break
    rows[34], rows[35] = (36, rows[34][1]), (35, rows[35][1])
    with pytest.raises(LabelMismatch):
        validate_labeling(generate_root_system(e7_datum()), rows, bands=E7_SIGMA_BANDS)


def test_non_root_row_is_rejected():
    rows = load_root_table()
    rows[0] = (1, {**rows[0][1], "alpha": 5})
    with pytest.raises(LabelMismatch) as err:
        validate_labeling(generate_root_system(e7_datum()), rows)
    assert err.value.label == 1


def test_closure_under_addition(E7):
    labs = E7.positive_labels
    for x, y in itertools.product(labs, labs):
        s = E7.root(x) + E7.root(y)
        if E7.is_root(s):
            assert E7.label(s) in labs


def test_reflection_is_an_involution_and_pairing_symmetric(E7):
    d = E7.datum
    roots = [E7.root(x) for x in E7.all_labels]
    assert len(roots) == 126
    for z in roots:
        assert pairing(z, z, d) == 2
    for z, x in itertools.product(roots[::5], roots[::3]):
        assert reflect(reflect(z, x, d), x, d) == z
        assert pairing(z, x, d) == pairing(x, z, d)
        assert E7.is_root(reflect(z, x, d))


def test_sign_coherence(E7):
    for x in E7.all_labels:
        c = E7.root(x).coords
        assert all(v >= 0 for v in c) or all(v <= 0 for v in c)
    assert Root((1, 0)).is_positive() and not Root((-1, 0)).is_positive()


def test_generated_roots_match_table_oracle(E7):
    tab = oracles.table()
    d = E7.datum
    for lab, vec in tab.items():
        coords = [0] * 7
        for name, v in zip(oracles.COLUMNS, vec):
            coords[d.index(name)] = v
        assert E7.label(Root(tuple(coords))) == lab
