import pytest

from conftest import brute_group_elements
from pihall import zoo
from pihall.config import Budgets
from pihall.groups import PermGroup
from pihall.perms import Perm
from pihall.structure import (center, chief_factor_decomposition, chief_series,
                              derived_subgroup, induced_automizer, is_normal,
                              is_simple, minimal_normal_subgroups,
                              normal_closure, normal_subgroups)

SMALL = Budgets(order_budget=10_000)


def test_normal_closure_in_simple_group():
    A5 = zoo.alt(5)
    for x in [Perm.from_cycles(5, (0, 1, 2)), Perm.from_cycles(5, (0, 1), (2, 3))]:
        assert normal_closure(A5, [x]).same_group_as(A5)


def test_derived_subgroup_sym4():
    got = derived_subgroup(zoo.sym(4))
    brute = {g * h * g.inverse() * h.inverse()
             for g in brute_group_elements(zoo.sym(4))
             for h in brute_group_elements(zoo.sym(4))}
    # the commutators of S4 already form A4
    assert got.same_group_as(zoo.alt(4))
    assert brute <= set(brute_group_elements(got))


def test_center_dihedral4():
    assert center(zoo.dihedral(4)).order() == 2
    assert center(zoo.sym(4)).order() == 1
    assert center(zoo.cyclic(12)).order() == 12


@pytest.mark.parametrize("G,expect", [
    (zoo.cyclic(7), True),
    (zoo.alt(5), True),
    (zoo.alt(6), True),
    (zoo.psl2(7), True),
    (zoo.psl2(11), True),
    (zoo.sym(4), False),
    (zoo.alt(4), False),
    (zoo.cyclic(12), False),
    (zoo.direct_product(zoo.alt(5), zoo.alt(5)), False),
])
def test_is_simple_small(G, expect):
    assert is_simple(G) is expect


def test_is_simple_above_enumeration_budget():
    # force the reduction paths: gl(5,2) via the primitive certificate, the
    # direct product via orbit restriction kernels
    assert is_simple(zoo.gl(5, 2), SMALL) is True
    assert is_simple(zoo.gl(4, 2), SMALL) is True
    big_prod = zoo.direct_product(zoo.gl(4, 2), zoo.gl(4, 2))
    assert is_simple(big_prod, SMALL) is False


def test_is_simple_rejects_trivial():
    with pytest.raises(ValueError):
        is_simple(PermGroup(3, []))


def test_minimal_normals_sym4():
    mins = minimal_normal_subgroups(zoo.sym(4))
    assert len(mins) == 1 and mins[0].order() == 4


def test_minimal_normals_simple():
    mins = minimal_normal_subgroups(zoo.alt(5))
    assert len(mins) == 1 and mins[0].same_group_as(zoo.alt(5))


def test_minimal_normals_direct_product():
    DP = zoo.direct_product(zoo.alt(5), zoo.alt(5))
    mins = minimal_normal_subgroups(DP)
    assert len(mins) == 2
    assert sorted(m.order() for m in mins) == [60, 60]


def test_minimal_normals_above_budget():
    hat = zoo.gl52_hat()
    mins = minimal_normal_subgroups(hat.group, SMALL)
    assert len(mins) == 1
    assert mins[0].same_group_as(hat.inner)


def test_chief_series_sym4():
    cs = chief_series(zoo.sym(4))
    assert [t.order() for t in cs.terms] == [24, 12, 4, 1]
    assert cs.factor_orders() == [2, 3, 4]
    assert all(cs.factor_is_abelian(i) for i in range(1, 4))
    for term in cs.terms:
        assert is_normal(zoo.sym(4), term)


def test_chief_series_simple_group():
    cs = chief_series(zoo.alt(5))
    assert [t.order() for t in cs.terms] == [60, 1]
    assert not cs.factor_is_abelian(1)


def test_chief_series_wreath_socle():
    W = zoo.wreath(zoo.alt(5), 2)
    cs = chief_series(W)
    assert [t.order() for t in cs.terms] == [7200, 3600, 1]
    parts = chief_factor_decomposition(cs, 2)
    assert len(parts) == 2 and all(p.order() == 60 for p in parts)


def test_chief_series_extension():
    hat = zoo.gl52_hat()
    cs = chief_series(hat.group, SMALL)
    assert [t.order() for t in cs.terms] == [19998720, 9999360, 1]
    assert cs.terms[1].same_group_as(hat.inner)


def test_chief_factor_decomposition_v4():
    cs = chief_series(zoo.sym(4))
    parts = chief_factor_decomposition(cs, 3)  # V4 over 1
    assert len(parts) == 2 and all(p.order() == 2 for p in parts)


def test_chief_factor_decomposition_simple_factor():
    cs = chief_series(zoo.alt(5))
    parts = chief_factor_decomposition(cs, 1)
    assert len(parts) == 1 and parts[0].same_group_as(zoo.alt(5))


def test_series_factor_product_is_group_order():
    for G in [zoo.sym(4), zoo.wreath(zoo.sym(3), 2), zoo.sym(6),
              zoo.direct_product(zoo.alt(5), zoo.sym(4))]:
        cs = chief_series(G)
        total = 1
        for fo in cs.factor_orders():
            total *= fo
        assert total == G.order()


def test_no_intermediate_normal_subgroup_between_terms():
    # chief factors are minimal normal in the quotient: cross-check against
    # the full normal subgroup lattice for small groups
    for G in [zoo.sym(4), zoo.wreath(zoo.sym(3), 2), zoo.sym(5)]:
        cs = chief_series(G)
        normals = normal_subgroups(G)
        orders = {N.order(): N for N in normals}
        for i in range(1, len(cs) + 1):
            A, B = cs.factor_pair(i)
            for N in normals:
                if B.order() < N.order() < A.order():
                    assert not (B.is_subgroup_of(N) and N.is_subgroup_of(A))


def test_normal_subgroups_sym4():
    orders = sorted(N.order() for N in normal_subgroups(zoo.sym(4)))
    assert orders == [1, 4, 12, 24]


def test_normal_subgroups_direct_product():
    DP = zoo.direct_product(zoo.alt(5), zoo.alt(5))
    orders = sorted(N.order() for N in normal_subgroups(DP))
    assert orders == [1, 60, 60, 3600]


def test_induced_automizer_v4_in_sym4():
    S4 = zoo.sym(4)
    V4 = minimal_normal_subgroups(S4)[0]
    aut = induced_automizer(S4, V4, PermGroup(4, []))
    assert aut.section_image.order() == 6
    assert aut.kernel.same_group_as(V4)
    assert aut.route == "element-action"


def test_induced_automizer_alt5_in_sym5():
    aut = induced_automizer(zoo.sym(5), zoo.alt(5), PermGroup(5, []))
    assert aut.section_image.order() == 120
    assert aut.inner_image.order() == 60
    assert aut.kernel.is_trivial()


def test_induced_automizer_trivial_section():
    S4 = zoo.sym(4)
    aut = induced_automizer(S4, S4, S4)
    assert aut.section_image.order() == 1


def test_induced_automizer_ambient_route():
    # beyond the element-action budget with trivial centralizer
    hat = zoo.gl52_hat()
    aut = induced_automizer(hat.group, hat.inner, PermGroup(62, []), SMALL)
    assert aut.route == "ambient-faithful"
    assert aut.section_image.same_group_as(hat.group)
    assert aut.inner_image.same_group_as(hat.inner)


def test_induced_automizer_coset_route():
    # force route (c): section over the element budget, centralizer nontrivial
    G = zoo.direct_product(zoo.sym(5), zoo.cyclic(3))
    A = PermGroup(8, [Perm(list(p.images) + [5, 6, 7])
                      for p in zoo.alt(5).generators])
    tiny = Budgets(element_action_budget=10)
    aut = induced_automizer(G, A, PermGroup(8, []), tiny)
    assert aut.route == "coset-on-centralizer"
    assert aut.section_image.order() == 120
    assert aut.kernel.order() == 3  # the cyclic factor centralizes A


def test_induced_automizer_requires_normal():
    S4 = zoo.sym(4)
    H = PermGroup(4, [Perm.from_cycles(4, (0, 1, 2))])
    with pytest.raises(ValueError):
        induced_automizer(S4, H, PermGroup(4, []))


def test_automizer_index_divides_normalizer_index():
    # with trivial B and centerless A: inner image matches A and the outer
    # part divides |N_G(A) : A C_G(A)|
    from pihall.backtrack import centralizer, normalizer
    for G, A in [(zoo.sym(5), zoo.alt(5)),
                 (zoo.sym(6), zoo.alt(6))]:
        aut = induced_automizer(G, A, PermGroup(G.degree, []))
        assert aut.inner_image.order() == A.order()
        N = normalizer(G, A)
        C = centralizer(G, A)
        bound = N.order() // (A.order() * C.order())
        outer = aut.section_image.order() // aut.inner_image.order()
        assert bound % outer == 0
