import json

import pytest

from pihall import zoo
from pihall.arith import PiSet
from pihall.groups import PermGroup
from pihall.hall import classify_ECD, is_hall
from pihall.perms import Perm
from pihall.reduction import (REGISTRY, automizer_cpi_check,
                              compare_with_oracle, corollary18_shortcut,
                              cpi_reduce, theorem1_suite)
from pihall.structure import chief_factor_decomposition, chief_series

PI23 = PiSet([2, 3])
PI25 = PiSet([2, 5])
PI35 = PiSet([3, 5])


def test_pi_group_is_immediate():
    S4 = zoo.sym(4)
    tr = cpi_reduce(S4, PI23)
    assert tr.verdict and tr.hall_witness.same_group_as(S4)


def test_sym5_positive():
    tr = cpi_reduce(zoo.sym(5), PI23)
    assert tr.verdict
    assert tr.hall_witness.order() == 24
    assert is_hall(zoo.sym(5), tr.hall_witness, PI23)


def test_gl32_negative_at_simple_level():
    tr = cpi_reduce(zoo.gl(3, 2), PI23)
    assert not tr.verdict
    failed = [lvl for lvl in tr.levels if lvl.failure]
    assert len(failed) == 1
    assert failed[0].failure == "automizer"
    assert failed[0].factor_kind == "semisimple"


def test_sylow_case():
    tr = cpi_reduce(zoo.sym(4), PiSet([2]))
    assert tr.verdict and tr.hall_witness.order() == 8


def test_witness_invariants():
    for G, pi in [(zoo.sym(5), PI23), (zoo.alt(5), PI23),
                  (zoo.wreath(zoo.sym(3), 2), PI23),
                  (zoo.direct_product(zoo.alt(5), zoo.alt(5)), PI23)]:
        tr = cpi_reduce(G, pi)
        if tr.verdict:
            assert is_hall(G, tr.hall_witness, pi)
            assert classify_ECD(G, pi).k == 1
        # level arithmetic: H_i contains the series term below it
        for record in tr.levels:
            assert record.H_order % tr.series.terms[record.index - 1].order() \
                   != -1  # order fields populated
        assert len([lvl for lvl in tr.levels if lvl.failure]) == \
               (0 if tr.verdict else 1)


def test_completeness_oracle_k1_implies_verdict():
    for G, pi in [(zoo.alt(5), PI23), (zoo.sym(6), PiSet([2])),
                  (zoo.alt(5), PiSet([5]))]:
        if classify_ECD(G, pi).k == 1:
            assert cpi_reduce(G, pi).verdict


def test_e_consistency():
    # a positive verdict always carries an existence witness
    tr = cpi_reduce(zoo.psl2(7), PiSet([3, 7]))
    assert tr.verdict and tr.hall_witness.order() == 21


def test_automizer_check_operation():
    S5 = zoo.sym(5)
    series = chief_series(S5)
    # level 2 of Sym(5) > Alt(5) > 1
    factors = chief_factor_decomposition(series, 2)
    checks = automizer_cpi_check(S5, zoo.alt(5), PermGroup(5, []), factors,
                                 PI23)
    assert len(checks) == 1
    assert checks[0].cpi_verdict
    assert checks[0].automizer_order == 120


def test_automizer_check_failing_factor():
    G = zoo.gl(3, 2)
    series = chief_series(G)
    factors = chief_factor_decomposition(series, 1)
    checks = automizer_cpi_check(G, G, PermGroup(7, []), factors, PI23)
    assert len(checks) == 1 and not checks[0].cpi_verdict


def test_abelian_factors_pass_without_work():
    checks = automizer_cpi_check(zoo.sym(4), zoo.sym(4), zoo.alt(4), [],
                                 PI23, abelian=True)
    assert all(c.cpi_verdict for c in checks)


def test_corollary18_requires_missing_prime():
    assert corollary18_shortcut(zoo.sym(4), PI23) is None


def test_corollary18_solvable():
    assert corollary18_shortcut(zoo.sym(4), PI35) is True


def test_corollary18_alt5_25():
    assert corollary18_shortcut(zoo.alt(5), PI25) is False
    assert classify_ECD(zoo.alt(5), PI25).C is False


def test_corollary18_matches_oracle_on_products():
    G = zoo.direct_product(zoo.sym(5), zoo.cyclic(7))
    for pi in [PI35, PI25, PiSet([5, 7])]:
        assert corollary18_shortcut(G, pi) == classify_ECD(G, pi).C


def test_shortcut_recorded_in_trace():
    tr = cpi_reduce(zoo.alt(5), PI25)
    assert tr.shortcut_verdict is False
    assert tr.shortcut_agrees is True


def test_theorem1_trivial_and_full():
    res = theorem1_suite(zoo.sym(4), PI23)
    orders = sorted(A.order() for A, _ in res)
    assert orders[0] == 1 and orders[-1] == 24
    assert all(ok for _, ok in res)


def test_theorem1_wreath():
    res = theorem1_suite(zoo.wreath(zoo.sym(4), 2), PI23)
    assert res and all(ok for _, ok in res)


def test_theorem1_requires_conjugacy():
    with pytest.raises(ValueError):
        theorem1_suite(zoo.gl(3, 2), PI23)


@pytest.mark.parametrize("name,pi,expected", [
    ("alt5", "2,3", True), ("gl3_2", "2,3", False),
    ("dihedral6", "2", True), ("sym6", "2,3", False),
    ("psl2_13", "2,3", False), ("alt5wr2", "2,3", True),
])
def test_compare_with_oracle(name, pi, expected):
    cmp = compare_with_oracle(zoo.build_named(name), PiSet.parse(pi))
    assert cmp.agree is True
    assert cmp.reduction_verdict is expected


def test_registry_round_trip():
    G = zoo.sym(4)
    REGISTRY.register_cpi_verdict(G, PI23, True)
    assert REGISTRY.lookup_cpi_verdict(zoo.sym(4), PI23) is True
    assert REGISTRY.lookup_cpi_verdict(zoo.sym(4), PI25) is None
    H = zoo.sym(4)
    REGISTRY.register_hall(G, PI23, H)
    assert REGISTRY.lookup_hall(zoo.sym(4), PI23).same_group_as(H)
    REGISTRY.clear()


def test_trace_serialization_includes_generators():
    tr = cpi_reduce(zoo.sym(5), PI23)
    data = tr.to_dict()
    text = json.dumps(data, sort_keys=True)
    assert json.loads(text) == data
    # an external checker can replay the order arithmetic
    gens = data["hall_witness_generators"]
    H = PermGroup(5, [Perm(g) for g in gens])
    assert H.order() == data["hall_witness_order"] == 24
