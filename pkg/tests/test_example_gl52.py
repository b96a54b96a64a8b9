import json

from pihall import zoo
from pihall.arith import PiSet
from pihall.reduction import REGISTRY, cpi_reduce

PI23 = PiSet([2, 3])


def claim(report, name):
    return next(c for c in report["claims"] if c["name"] == name)


def test_all_claims_hold(gl52_example_report):
    assert gl52_example_report["verdict"] is True
    assert all(c["ok"] for c in gl52_example_report["claims"])


def test_order_factorization_claim(gl52_example_report):
    c = claim(gl52_example_report, "base-order-factorization")
    assert c["order"] == 2 ** 10 * 3 ** 2 * 5 * 7 * 31


def test_three_hall_representatives(gl52_example_report):
    for dims in ("212", "122", "221"):
        assert claim(gl52_example_report, f"hall-{dims}")["order"] == 9216
        assert claim(gl52_example_report, f"self-normalizing-{dims}")["ok"]


def test_non_conjugacy_signatures(gl52_example_report):
    sigs = claim(gl52_example_report, "pairwise-non-conjugate")["signatures"]
    assert sorted(map(tuple, sigs)) == [(1, 6, 24), (3, 4, 24), (3, 12, 16)]


def test_involution_class_action(gl52_example_report):
    assert claim(gl52_example_report, "involution-fixes-first-class")["ok"]
    assert claim(gl52_example_report, "involution-moves-second-class")["ok"]
    assert claim(gl52_example_report, "involution-swaps-classes")["ok"]


def test_extension_hall_claims(gl52_example_report):
    assert claim(gl52_example_report, "extension-hall-order")["order"] == 18432
    assert claim(gl52_example_report, "extension-hall")["ok"]
    assert claim(gl52_example_report, "meets-inner-in-first-rep")["ok"]


def test_induced_count_marked_as_assumption(gl52_example_report):
    c = claim(gl52_example_report, "induced-class-count")
    assert c["k_induced"] == 1 and c["known_classes"] == 3
    assert "desk scale" in gl52_example_report["exhaustiveness"]


def test_report_is_json_serializable(gl52_example_report):
    json.dumps(gl52_example_report)


def test_lift_through_extension_quotient(gl52_example_report):
    # lifting the order-2 quotient's (trivially Hall) top through the inner
    # copy produces the registered order-18432 Hall subgroup
    from pihall.actions import coset_action
    from pihall.hall import find_hall, is_hall, lift_hall
    hat = zoo.gl52_hat()
    hom = coset_action(hat.group, hat.inner, check_subgroup=False)
    kbar = find_hall(hom.quotient, PI23)
    H = lift_hall(hat.group, hat.inner, hom, kbar, PI23)
    assert H.order() == 18432
    assert is_hall(hat.group, H, PI23)


def test_registry_feeds_generic_reduction(gl52_example_report):
    # the pipeline registered the extension; the generic procedure now
    # decides it, marking the injected steps
    hat = zoo.gl52_hat()
    assert REGISTRY.lookup_cpi_verdict(hat.group, PI23) is True
    trace = cpi_reduce(hat.group, PI23)
    assert trace.verdict
    assert trace.hall_witness.order() == 18432
    flagged = [lvl for lvl in trace.levels
               if lvl.special_cased_hall
               or any(c.special_cased for c in lvl.automizer_checks)]
    assert flagged, "injected results must be marked in the trace"
