import random

import pytest

from pihall import zoo
from pihall.actions import (block_action, coset_action, identity_hom,
                            minimal_block_system, nontrivial_block_system,
                            orbit_restriction, section_action)
from pihall.backtrack import BudgetExceededError
from pihall.groups import PermGroup
from pihall.perms import Perm


def v4_in(degree=4):
    return PermGroup(degree, [Perm.from_cycles(degree, (0, 1), (2, 3)),
                              Perm.from_cycles(degree, (0, 2), (1, 3))])


def test_coset_action_on_self_is_trivial():
    S4 = zoo.sym(4)
    hom = coset_action(S4, S4)
    assert hom.domain_size == 1
    assert hom.quotient.order() == 1
    assert hom.kernel().same_group_as(S4)


def test_coset_action_sym4_over_alt4():
    S4, A4 = zoo.sym(4), zoo.alt(4)
    hom = coset_action(S4, A4)
    assert hom.domain_size == 2
    assert hom.quotient.order() == 2
    assert hom.kernel().same_group_as(A4)


def test_coset_action_core_is_kernel():
    # S4 on the cosets of a Sylow-2: degree 3, kernel V4, image order 6
    S4 = zoo.sym(4)
    D8 = PermGroup(4, [Perm.from_cycles(4, (0, 1, 2, 3)),
                       Perm.from_cycles(4, (0, 2))])
    hom = coset_action(S4, D8)
    assert hom.domain_size == 3
    assert hom.quotient.order() == 6
    assert hom.kernel().same_group_as(v4_in())


def test_preimage_round_trip():
    S4 = zoo.sym(4)
    hom = coset_action(S4, v4_in())
    rng = random.Random(3)
    for _ in range(25):
        q = hom.quotient.random_element(rng)
        p = hom.preimage(q)
        assert hom.image(p) == q
    with pytest.raises(ValueError):
        sub = PermGroup(hom.domain_size, [])
        # an element outside the image: only possible if image is proper
        bigger = zoo.sym(hom.domain_size)
        outsider = next(g for g in bigger.elements()
                        if not hom.quotient.contains(g))
        hom.preimage(outsider)


def test_preimage_group_pulls_back_subgroup():
    S4 = zoo.sym(4)
    hom = coset_action(S4, v4_in())
    rot = next(g for g in hom.quotient.elements() if g.order() == 3)
    pre = hom.preimage_group(PermGroup(hom.domain_size, [rot]))
    assert pre.same_group_as(zoo.alt(4))


def test_degree_budget():
    with pytest.raises(BudgetExceededError):
        coset_action(zoo.sym(6), PermGroup(6, []), degree_budget=100)


def test_section_action_sym4_on_v4():
    S4 = zoo.sym(4)
    sec = section_action(S4, v4_in(), PermGroup(4, []))
    assert sec.domain_size == 3
    assert sec.quotient.order() == 6
    assert sec.kernel().same_group_as(v4_in())


def test_section_action_sym5_on_alt5():
    S5, A5 = zoo.sym(5), zoo.alt(5)
    sec = section_action(S5, A5, PermGroup(5, []))
    assert sec.domain_size == 59
    assert sec.quotient.order() == 120
    assert sec.kernel().is_trivial()
    inner = PermGroup(59, [sec.image(a) for a in A5.generators])
    assert inner.order() == 60


def test_identity_hom():
    G = zoo.alt(5)
    hom = identity_hom(G)
    assert hom.quotient.same_group_as(G)
    assert hom.kernel().is_trivial()


def test_orbit_restriction():
    DP = zoo.direct_product(zoo.alt(5), zoo.sym(4))
    hom = orbit_restriction(DP, list(range(5)))
    assert hom.quotient.order() == 60
    assert hom.kernel().order() == 24


def test_blocks_of_wreath():
    W = zoo.wreath(zoo.sym(3), 2)
    blocks = nontrivial_block_system(W)
    assert blocks == [[0, 1, 2], [3, 4, 5]]
    hom = block_action(W, blocks)
    assert hom.quotient.order() == 2
    assert hom.kernel().order() == 36


def test_primitive_group_has_no_blocks():
    assert nontrivial_block_system(zoo.psl2(7)) is None
    assert nontrivial_block_system(zoo.sym(5)) is None


def test_minimal_block_system_contains_pair():
    W = zoo.wreath(zoo.sym(3), 2)
    blocks = minimal_block_system(W, 0, 1)
    cell = next(b for b in blocks if 0 in b)
    assert 1 in cell
