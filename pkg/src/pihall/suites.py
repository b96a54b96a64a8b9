"""Corpus runner and the numbered invariant suites.

Each suite sweeps the corpus for instances satisfying its hypotheses and
records violations; the suite keys follow the numbering of the underlying
theory source, which is the interface the corpus command reports under.
All expected values come from the oracle (either frozen at bootstrap time
or recomputed here); nothing is hand-written.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import zoo
from .actions import coset_action
from .arith import PiSet, is_pi_number
from .backtrack import BudgetExceededError, centralizer, normalizer
from .config import DEFAULT_BUDGETS, Budgets
from .groups import PermGroup, join_subgroups
from .hall import (all_hall_classes, are_conjugate, classify_ECD,
                   intersect_subgroups, is_hall, k_induced,
                   pi_separable_series)
from .reduction import compare_with_oracle, corollary18_shortcut, theorem1_suite
from .structure import get_table, is_normal, minimal_normal_subgroups, \
    normal_subgroups

COROLLARY18_PI_SETS = ("2,5", "3,5", "5,7")


@dataclass
class SuiteResult:
    key: str
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {"key": self.key, "name": self.name, "checked": self.checked,
                "passed": self.passed, "violations": self.violations,
                "notes": self.notes}


@dataclass
class CorpusEntryResult:
    name: str
    pi: str
    expected: dict
    observed: dict | str
    comparison: dict
    matches_manifest: bool
    agree: bool | None

    def to_dict(self) -> dict:
        return {"name": self.name, "pi": self.pi, "expected": self.expected,
                "observed": self.observed, "comparison": self.comparison,
                "matches_manifest": self.matches_manifest, "agree": self.agree}


class CorpusContext:
    """Shared per-run caches: built groups, normal subgroup lists, tables."""

    def __init__(self, budgets: Budgets, seed: int):
        self.budgets = budgets
        self.seed = seed
        self._groups: dict[str, PermGroup] = {}
        self._normals: dict[str, list[PermGroup]] = {}
        self._quotients: dict = {}

    def group(self, name: str) -> PermGroup:
        if name not in self._groups:
            self._groups[name] = zoo.build_named(name)
        return self._groups[name]

    def normals(self, name: str) -> list[PermGroup]:
        if name not in self._normals:
            self._normals[name] = normal_subgroups(self.group(name),
                                                   self.budgets)
        return self._normals[name]

    def quotient(self, name: str, A: PermGroup):
        key = (name, A.canonical_key())
        if key not in self._quotients:
            self._quotients[key] = coset_action(
                self.group(name), A,
                degree_budget=self.budgets.coset_degree_budget,
                check_subgroup=False)
        return self._quotients[key]

    def classify(self, G: PermGroup, pi: PiSet):
        return classify_ECD(G, pi, self.budgets, self.seed)


def _entry_groups(entries) -> list[tuple[str, PermGroup]]:
    seen = []
    names = set()
    for e in entries:
        if e["name"] not in names:
            names.add(e["name"])
            seen.append(e["name"])
    return seen


def run_entry_comparisons(entries, ctx: CorpusContext) -> list[CorpusEntryResult]:
    out = []
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        cmp = compare_with_oracle(G, pi, ctx.budgets, ctx.seed)
        try:
            observed = ctx.classify(G, pi).flags()
            matches = observed == e["expected"]
        except BudgetExceededError as exc:
            observed = f"budget_exceeded:{exc.kind}"
            matches = False
        out.append(CorpusEntryResult(
            name=e["name"], pi=e["pi"], expected=e["expected"],
            observed=observed, comparison=cmp.to_dict(),
            matches_manifest=matches, agree=cmp.agree))
    return out


# -- the numbered suites --------------------------------------------------------


def suite_lemma4_1(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-4.1", "hall-intersection-and-image")
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        rep = ctx.classify(G, pi)
        if not rep.E:
            continue
        H = rep.classes.class_reps[0]
        for A in ctx.normals(e["name"]):
            if A.order() in (1, G.order()):
                continue
            res.checked += 1
            inter = intersect_subgroups(H, A, ctx.budgets.order_budget)
            if not is_hall(A, inter, pi):
                res.violations.append(
                    f"{e['name']}/{e['pi']}: H∩A not Hall in A "
                    f"(|A|={A.order()})")
            hom = ctx.quotient(e["name"], A)
            Hbar = PermGroup(hom.domain_size,
                             [hom.image(h) for h in H.generators])
            if not is_hall(hom.quotient, Hbar, pi):
                res.violations.append(
                    f"{e['name']}/{e['pi']}: HA/A not Hall in G/A "
                    f"(|A|={A.order()})")
    return res


def suite_lemma4_2(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-4.2", "separable-series-dominance")
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        series = pi_separable_series(G, pi, ctx.budgets, ctx.seed)
        if series is None:
            continue
        res.checked += 1
        rep = ctx.classify(G, pi)
        if not (rep.E and rep.C and rep.D):
            res.violations.append(
                f"{e['name']}/{e['pi']}: separable series exists but flags "
                f"are {rep.flags()}")
    return res


def suite_lemma5(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-5", "extension-closure")
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        for A in ctx.normals(e["name"]):
            if A.order() in (1, G.order()):
                continue
            hom = ctx.quotient(e["name"], A)
            if not (ctx.classify(A, pi).C and
                    ctx.classify(hom.quotient, pi).C):
                continue
            res.checked += 1
            if not ctx.classify(G, pi).C:
                res.violations.append(
                    f"{e['name']}/{e['pi']}: A and G/A conjugacy holds "
                    f"(|A|={A.order()}) but G fails")
    return res


def suite_lemma7(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-7", "normalizer-inheritance")
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        rep = ctx.classify(G, pi)
        if not rep.C:
            continue
        H = rep.classes.class_reps[0]
        for A in ctx.normals(e["name"]):
            if A.order() in (1, G.order()):
                continue
            res.checked += 1
            HA = join_subgroups(G, [H, A])
            N1 = normalizer(G, HA, node_budget=ctx.budgets.node_budget)
            if not ctx.classify(N1, pi).C:
                res.violations.append(
                    f"{e['name']}/{e['pi']}: N_G(HA) fails (|A|={A.order()})")
            inter = intersect_subgroups(H, A, ctx.budgets.order_budget)
            N2 = normalizer(G, inter, node_budget=ctx.budgets.node_budget)
            if not ctx.classify(N2, pi).C:
                res.violations.append(
                    f"{e['name']}/{e['pi']}: N_G(H∩A) fails (|A|={A.order()})")
    return res


def suite_lemma9(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-9", "quotient-inheritance")
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        if not ctx.classify(G, pi).C:
            continue
        for A in ctx.normals(e["name"]):
            if A.order() in (1, G.order()):
                continue
            res.checked += 1
            hom = ctx.quotient(e["name"], A)
            if not ctx.classify(hom.quotient, pi).C:
                res.violations.append(
                    f"{e['name']}/{e['pi']}: quotient by |A|={A.order()} "
                    f"fails")
    return res


def _ha_instances(entries, ctx: CorpusContext):
    """(entry, G, pi, H, A) with HA normal in G and A a proper normal
    subgroup; the instances Lemmas 11-13 quantify over."""
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        rep = ctx.classify(G, pi)
        if not rep.E:
            continue
        H = rep.classes.class_reps[0]
        for A in ctx.normals(e["name"]):
            if A.order() in (1, G.order()):
                continue
            HA = join_subgroups(G, [H, A])
            if is_normal(G, HA):
                yield e, G, pi, H, A, HA


def _induced_class_keys(G: PermGroup, A: PermGroup, pi: PiSet,
                        ctx: CorpusContext) -> set:
    """Canonical keys of the A-classes of G-induced Hall subgroups."""
    from .hall import _canonical_under
    tbl = get_table(G, ctx.budgets.order_budget)
    a_set = tbl.indices_of_subgroup(A)
    a_gens = [tbl.idx_of_perm(g) for g in A.generators]
    keys = set()
    for H in ctx.classify(G, pi).classes.class_reps:
        h_set = tbl.indices_of_subgroup(H)
        keys.add(_canonical_under(tbl, frozenset(h_set & a_set), a_gens))
    return keys


def suite_lemma11(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-11", "induced-iff-invariant")
    from .hall import _canonical_under
    for e, G, pi, H, A, HA in _ha_instances(entries, ctx):
        C = centralizer(G, A, node_budget=ctx.budgets.node_budget)
        HAC = join_subgroups(G, [H, A, C])
        if not is_normal(G, HAC):
            continue
        res.checked += 1
        induced = _induced_class_keys(G, A, pi, ctx)
        tbl = get_table(G, ctx.budgets.order_budget)
        a_gens = [tbl.idx_of_perm(g) for g in A.generators]
        for M in ctx.classify(A, pi).classes.class_reps:
            m_set = tbl.indices_of_subgroup(M)
            key = _canonical_under(tbl, m_set, a_gens)
            is_induced = key in induced
            h_invariant = all(
                are_conjugate(
                    A, PermGroup(G.degree,
                                 [x.conjugate(h) for x in M.generators]),
                    M, ctx.budgets) is not None
                for h in H.generators)
            if is_induced != h_invariant:
                res.violations.append(
                    f"{e['name']}/{e['pi']}: class of |M|={M.order()} "
                    f"induced={is_induced} invariant={h_invariant}")
    return res


def suite_lemma12(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-12", "induced-count-descends-to-HA")
    for e, G, pi, H, A, HA in _ha_instances(entries, ctx):
        res.checked += 1
        kG = k_induced(G, A, pi, ctx.budgets, ctx.seed)
        kHA = k_induced(HA, A, pi, ctx.budgets, ctx.seed)
        if kG.k_induced > kG.k_total:
            res.violations.append(
                f"{e['name']}/{e['pi']}: induced count exceeds total")
        if kG.k_induced != kHA.k_induced:
            res.violations.append(
                f"{e['name']}/{e['pi']}: k^G(A)={kG.k_induced} but "
                f"k^HA(A)={kHA.k_induced} (|A|={A.order()})")
    return res


def suite_lemma13(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-13", "one-class-three-ways")
    for e, G, pi, H, A, HA in _ha_instances(entries, ctx):
        res.checked += 1
        cond1 = k_induced(G, A, pi, ctx.budgets, ctx.seed).k_induced == 1
        cond2 = ctx.classify(HA, pi).C
        # every two Hall subgroups of G conjugate by an element of A:
        # one class overall, and the A-orbit of H is its whole G-class
        rep = ctx.classify(G, pi)
        cond3 = False
        if rep.k == 1:
            tbl = get_table(G, ctx.budgets.order_budget)
            h_set = tbl.indices_of_subgroup(rep.classes.class_reps[0])
            a_gens = [tbl.idx_of_perm(g) for g in A.generators]
            from .hall import _canonical_under
            a_orbit = _a_orbit_size(tbl, h_set, a_gens)
            cond3 = a_orbit == rep.classes.class_sizes[0]
        if not (cond1 == cond2 == cond3):
            res.violations.append(
                f"{e['name']}/{e['pi']}: |A|={A.order()} "
                f"k=1:{cond1} HA-conj:{cond2} A-conj:{cond3}")
    return res


def _a_orbit_size(tbl, h_set: frozenset, a_gen_idxs) -> int:
    import numpy as np
    seen = {h_set}
    queue = [np.asarray(sorted(h_set), dtype=np.int64)]
    while queue:
        arr = queue.pop()
        for t in a_gen_idxs:
            conj = tbl.conjugate_indices(arr, t)
            key = frozenset(conj.tolist())
            if key not in seen:
                seen.add(key)
                queue.append(np.sort(conj))
    return len(seen)


def suite_lemma15(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-15", "product-count-multiplies")
    for e in entries:
        if zoo.ZOO_NAMES[e["name"]]["kind"] != "direct_product":
            continue
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        mins = minimal_normal_subgroups(G, ctx.budgets, ctx.seed)
        # the two disjoint-action factors are the orbit-split normal parts
        factors = [M for M in mins if M.order() > 1]
        if len(factors) < 2:
            continue
        A1, A2 = factors[0], factors[1]
        if A1.order() * A2.order() != G.order():
            continue
        res.checked += 1
        k = ctx.classify(G, pi).k
        k1 = all_hall_classes(A1, pi, ctx.budgets, ctx.seed).k
        k2 = all_hall_classes(A2, pi, ctx.budgets, ctx.seed).k
        if k != k1 * k2:
            res.violations.append(
                f"{e['name']}/{e['pi']}: k={k} but factors give {k1}*{k2}")
    return res


def suite_lemma16(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("lemma-16", "transitive-factors-collapse")
    for e in entries:
        if zoo.ZOO_NAMES[e["name"]]["kind"] != "wreath":
            continue
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        rep = ctx.classify(G, pi)
        if not rep.E:
            continue
        H = rep.classes.class_reps[0]
        mins = minimal_normal_subgroups(G, ctx.budgets, ctx.seed)
        for A in mins:
            subs = minimal_normal_subgroups(A, ctx.budgets, ctx.seed) \
                if A.order() > 1 and not A.same_group_as(G) else []
            if len(subs) < 2:
                continue
            C = centralizer(G, A, node_budget=ctx.budgets.node_budget)
            HAC = join_subgroups(G, [H, A, C])
            if HAC.order() != G.order():
                continue
            res.checked += 1
            S1 = subs[0]
            N = normalizer(G, S1, node_budget=ctx.budgets.node_budget)
            kGA = k_induced(G, A, pi, ctx.budgets, ctx.seed).k_induced
            kNS = k_induced(N, S1, pi, ctx.budgets, ctx.seed).k_induced
            if kGA != kNS:
                res.violations.append(
                    f"{e['name']}/{e['pi']}: k^G(A)={kGA} but "
                    f"k^N(S1)={kNS}")
    return res


def suite_theorem1(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("theorem-1", "hall-times-normal-keeps-conjugacy")
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        if not ctx.classify(G, pi).C:
            continue
        for A, ok in theorem1_suite(G, pi, ctx.budgets, ctx.seed):
            res.checked += 1
            if not ok:
                res.violations.append(
                    f"{e['name']}/{e['pi']}: HA fails for |A|={A.order()}")
    return res


def _almost_simple_socle(G: PermGroup, ctx: CorpusContext) -> PermGroup | None:
    """The socle when G is almost simple (unique nonabelian simple minimal
    normal subgroup with trivial centralizer), else None."""
    from .structure import is_simple
    mins = minimal_normal_subgroups(G, ctx.budgets, ctx.seed)
    if len(mins) != 1:
        return None
    S = mins[0]
    if S.order() <= 1 or S.is_abelian():
        return None
    if not is_simple(S, ctx.budgets, ctx.seed):
        return None
    if not centralizer(G, S, node_budget=ctx.budgets.node_budget).is_trivial():
        return None
    return S


def suite_theorem10(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("theorem-10", "almost-simple-class-counts")
    socle_cache: dict[str, PermGroup | None] = {}
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        if not ctx.classify(G, pi).E:
            continue
        if e["name"] not in socle_cache:
            socle_cache[e["name"]] = _almost_simple_socle(G, ctx)
        S = socle_cache[e["name"]]
        if S is None:
            continue
        res.checked += 1
        k = k_induced(G, S, pi, ctx.budgets, ctx.seed).k_induced
        if 2 not in pi:
            allowed = {1}
        elif 3 not in pi:
            allowed = {1, 2}
        else:
            allowed = {1, 2, 3, 4, 9}
        if k not in allowed:
            res.violations.append(
                f"{e['name']}/{e['pi']}: induced count {k} outside {allowed}")
        if not is_pi_number(k, pi):
            res.violations.append(
                f"{e['name']}/{e['pi']}: induced count {k} is not a "
                f"pi-number")
    return res


def suite_corollary18(entries, ctx: CorpusContext) -> SuiteResult:
    res = SuiteResult("corollary-18", "composition-factor-criterion")
    names = _entry_groups(entries)
    for name in names:
        G = ctx.group(name)
        for pi_key in COROLLARY18_PI_SETS:
            pi = PiSet.parse(pi_key)
            res.checked += 1
            crit = corollary18_shortcut(G, pi, ctx.budgets, ctx.seed)
            oracle = ctx.classify(G, pi).C
            if crit != oracle:
                res.violations.append(
                    f"{name}/{pi_key}: criterion {crit} vs oracle {oracle}")
    return res


def suite_oracle_selfcheck(entries, ctx: CorpusContext) -> SuiteResult:
    """Re-run the oracle with a different seed: class counts and class
    invariants must match."""
    res = SuiteResult("oracle-selfcheck", "seed-independence")
    for e in entries:
        G = ctx.group(e["name"])
        pi = PiSet.parse(e["pi"])
        res.checked += 1
        a = all_hall_classes(G, pi, ctx.budgets, seed=ctx.seed)
        b = all_hall_classes(G, pi, ctx.budgets, seed=ctx.seed + 1)
        sig_a = sorted((r.order(), r.orbit_sizes()) for r in a.class_reps)
        sig_b = sorted((r.order(), r.orbit_sizes()) for r in b.class_reps)
        if a.k != b.k or sorted(a.class_sizes) != sorted(b.class_sizes) \
                or sig_a != sig_b:
            res.violations.append(f"{e['name']}/{e['pi']}: seeds disagree")
    return res


SUITES = [
    suite_lemma4_1, suite_lemma4_2, suite_lemma5, suite_lemma7, suite_lemma9,
    suite_lemma11, suite_lemma12, suite_lemma13, suite_lemma15, suite_lemma16,
    suite_theorem1, suite_theorem10, suite_corollary18, suite_oracle_selfcheck,
]


@dataclass
class CorpusRunResult:
    entries: list[CorpusEntryResult]
    suites: list[SuiteResult]
    elapsed_ms: int

    @property
    def all_agree(self) -> bool:
        return all(r.agree is True for r in self.entries)

    @property
    def all_match_manifest(self) -> bool:
        return all(r.matches_manifest for r in self.entries)

    @property
    def all_suites_pass(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_dict(self) -> dict:
        return {
            "entries": [r.to_dict() for r in self.entries],
            "suites": [s.to_dict() for s in self.suites],
            "all_agree": self.all_agree,
            "all_match_manifest": self.all_match_manifest,
            "all_suites_pass": self.all_suites_pass,
        }


def run_corpus(entries=None, budgets: Budgets = DEFAULT_BUDGETS,
               seed: int = 1, jobs: int = 1,
               with_suites: bool = True) -> CorpusRunResult:
    t0 = time.perf_counter()
    if entries is None:
        entries = zoo.corpus_manifest()
    ctx = CorpusContext(budgets, seed)
    if jobs > 1:
        results = _run_entries_parallel(entries, budgets, seed, jobs)
    else:
        results = run_entry_comparisons(entries, ctx)
    suite_results = []
    if with_suites:
        for suite in SUITES:
            suite_results.append(suite(entries, ctx))
    return CorpusRunResult(entries=results, suites=suite_results,
                           elapsed_ms=int((time.perf_counter() - t0) * 1000))


def _entry_job(args):
    entry, budget_dict, seed = args
    budgets = Budgets(**budget_dict)
    ctx = CorpusContext(budgets, seed)
    return run_entry_comparisons([entry], ctx)[0].to_dict()


def _run_entries_parallel(entries, budgets, seed, jobs):
    from concurrent.futures import ProcessPoolExecutor
    args = [(e, budgets.to_dict(), seed) for e in entries]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        dicts = list(pool.map(_entry_job, args))
    out = []
    for e, d in zip(entries, dicts):
        out.append(CorpusEntryResult(
            name=d["name"], pi=d["pi"], expected=d["expected"],
            observed=d["observed"], comparison=d["comparison"],
            matches_manifest=d["matches_manifest"], agree=d["agree"]))
    return out
