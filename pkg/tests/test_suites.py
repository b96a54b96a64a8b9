import json

from pihall import zoo
from pihall.config import DEFAULT_BUDGETS
from pihall.suites import (COROLLARY18_PI_SETS, CorpusContext,
                           run_entry_comparisons, suite_lemma4_1,
                           suite_lemma5, suite_lemma12, suite_lemma13,
                           suite_lemma15, suite_lemma16, suite_theorem10)


def mini_entries(names_pis):
    manifest = {(e["name"], e["pi"]): e for e in zoo.corpus_manifest()}
    return [manifest[key] for key in names_pis]


def test_entry_comparison_structure():
    ctx = CorpusContext(DEFAULT_BUDGETS, 1)
    entries = mini_entries([("alt5", "2,3"), ("gl3_2", "2,3")])
    results = run_entry_comparisons(entries, ctx)
    assert [r.agree for r in results] == [True, True]
    assert all(r.matches_manifest for r in results)
    json.dumps([r.to_dict() for r in results])


def test_lemma4_1_counts_instances():
    ctx = CorpusContext(DEFAULT_BUDGETS, 1)
    res = suite_lemma4_1(mini_entries([("sym5", "2,3"), ("sym4", "2,3")]), ctx)
    assert res.checked >= 3 and res.passed


def test_lemma5_applies_to_products():
    ctx = CorpusContext(DEFAULT_BUDGETS, 1)
    res = suite_lemma5(mini_entries([("alt5xalt5", "2,3")]), ctx)
    assert res.checked >= 2 and res.passed


def test_lemma12_13_on_sym5():
    ctx = CorpusContext(DEFAULT_BUDGETS, 1)
    entries = mini_entries([("sym5", "2,3")])
    assert suite_lemma12(entries, ctx).passed
    r13 = suite_lemma13(entries, ctx)
    assert r13.checked >= 1 and r13.passed


def test_lemma15_on_direct_products():
    ctx = CorpusContext(DEFAULT_BUDGETS, 1)
    res = suite_lemma15(mini_entries([("alt5xalt5", "2,3")]), ctx)
    assert res.checked == 1 and res.passed


def test_lemma16_on_wreath():
    ctx = CorpusContext(DEFAULT_BUDGETS, 1)
    res = suite_lemma16(mini_entries([("alt5wr2", "2,3")]), ctx)
    assert res.checked >= 1 and res.passed


def test_theorem10_sees_almost_simple_entries():
    ctx = CorpusContext(DEFAULT_BUDGETS, 1)
    res = suite_theorem10(
        mini_entries([("sym5", "2,3"), ("psl2_7", "2,3"), ("sym4", "2,3")]),
        ctx)
    # sym4 is not almost simple; the other two are
    assert res.checked == 2 and res.passed


def test_corollary18_pi_sets_are_the_required_three():
    assert COROLLARY18_PI_SETS == ("2,5", "3,5", "5,7")
