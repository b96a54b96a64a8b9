import pytest

from pihall import zoo
from pihall.linalg import gf, mat_identity, mat_inverse, mat_mul, \
    mat_transpose, point_to_vec, vec_to_point
from pihall.perms import Perm


@pytest.mark.parametrize("build,expect", [
    (lambda: zoo.sym(4), 24),
    (lambda: zoo.alt(5), 60),
    (lambda: zoo.cyclic(12), 12),
    (lambda: zoo.dihedral(4), 8),
    (lambda: zoo.dihedral(6), 12),
    (lambda: zoo.direct_product(zoo.alt(5), zoo.alt(5)), 3600),
    (lambda: zoo.wreath(zoo.sym(3), 2), 72),
    (lambda: zoo.psl2(7), 168),
    (lambda: zoo.psl2(11), 660),
    (lambda: zoo.psl2(13), 1092),
    (lambda: zoo.gl(3, 2), 168),
    (lambda: zoo.gl(5, 2), 9999360),
])
def test_constructor_orders(build, expect):
    assert build().order() == expect


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2),
                                 (3, 3), (2, 8), (2, 9), (4, 2)])
def test_gl_orders_closed_form(n, q):
    assert zoo.gl(n, q).order() == zoo.gl_order(n, q)


def test_field_tables():
    for q in (2, 3, 4, 5, 7, 8, 9):
        F = gf(q)
        for a in range(1, q):
            assert F.mul[a][F.inv[a]] == 1
        for a in range(q):
            assert F.add[a][F.neg[a]] == 0


def test_matrix_inverse_round_trip():
    F = gf(4)
    M = ((1, 2, 0), (0, 1, 3), (2, 0, 1))
    assert mat_mul(F, M, mat_inverse(F, M)) == mat_identity(3)


def test_vector_point_indexing_least_significant_first():
    assert vec_to_point(2, (1, 0, 0)) == 0
    assert vec_to_point(2, (0, 1, 0)) == 1
    assert vec_to_point(2, (1, 1, 0)) == 2
    assert point_to_vec(2, 3, 5) == (0, 1, 1)


def test_deterministic_rebuild():
    for name in zoo.ZOO_NAMES:
        a = zoo.build_named(name)
        b = zoo.build_named(name)
        assert [g.images for g in a.generators] == \
               [g.images for g in b.generators]


def test_flag_stabilizer_orders():
    assert zoo.flag_stabilizer(5, 2, (5,)).order() == zoo.gl(5, 2).order()
    for dims in [(2, 1, 2), (1, 2, 2), (2, 2, 1)]:
        H = zoo.flag_stabilizer(5, 2, dims)
        assert H.order() == 9216 == zoo.parabolic_order(dims, 2)
    assert zoo.parabolic_order((2, 1, 2), 2) == 36 * 256


def test_flag_stabilizer_small_case():
    H = zoo.flag_stabilizer(3, 2, (1, 2))
    assert H.order() == zoo.parabolic_order((1, 2), 2) == 24


def test_gl52_hat_structure():
    hat = zoo.gl52_hat()
    assert hat.group.degree == 62
    assert hat.group.order() == 2 * 9999360
    assert (hat.iota * hat.iota).is_identity()
    assert hat.inner.order() == 9999360
    # restriction of the inner copy to the vector block is gl(5,2)
    restricted = hat.restrict_subgroup(hat.inner)
    assert [g.images for g in restricted.generators] == \
           [g.images for g in zoo.gl(5, 2).generators]


def test_iota_conjugation_is_inverse_transpose():
    hat = zoo.gl52_hat()
    F = gf(2)
    for M in zoo._gl_generator_matrices(5, 2):
        emb = hat.embed_matrix(M)
        conj = hat.iota.inverse() * emb * hat.iota
        assert conj == hat.embed_matrix(mat_transpose(mat_inverse(F, M)))
        assert hat.inner.contains(conj)


def test_dual_flag_conjugator_identity():
    H1 = zoo.flag_stabilizer(5, 2, (2, 1, 2))
    g = zoo.dual_flag_conjugator(H1, H1)
    assert g is not None


def test_dual_flag_conjugator_between_types():
    H1 = zoo.flag_stabilizer(5, 2, (2, 1, 2))
    H2 = zoo.flag_stabilizer(5, 2, (1, 2, 2))
    assert zoo.dual_flag_conjugator(H1, H2) is None


def test_dual_flag_conjugator_on_conjugate():
    G = zoo.gl(5, 2)
    H1 = zoo.flag_stabilizer(5, 2, (2, 1, 2))
    t = G.random_element(9)
    Ht = type(H1)(31, [h.conjugate(t) for h in H1.generators])
    g = zoo.dual_flag_conjugator(Ht, H1)
    assert g is not None
    assert all(H1.contains(h.conjugate(g)) for h in Ht.generators)


def test_build_from_spec_matches_names():
    for name, spec in zoo.ZOO_NAMES.items():
        G = zoo.build_from_spec(spec)
        assert G.degree == zoo.build_named(name).degree


def test_corpus_manifest_is_oracle_stamped():
    entries = zoo.corpus_manifest()
    assert len(entries) >= 30
    for e in entries:
        assert e["provenance"].startswith("oracle-bootstrap")
        assert e["order"] <= 1_000_000
        assert set(e["expected"]) == {"E", "C", "D", "k"}


def test_group_file_dict_round_trip():
    data = zoo.group_file_dict("alt5")
    G = zoo.build_named("alt5")
    assert data["degree"] == 5
    rebuilt = [Perm(images) for images in data["generators"]]
    assert rebuilt == list(G.generators)


def test_degree_budget_guard():
    with pytest.raises(ValueError):
        zoo.sym(20_000)
    with pytest.raises(ValueError):
        zoo.gl(6, 9)
