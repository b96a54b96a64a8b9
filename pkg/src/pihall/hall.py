"""Hall subgroup analysis for a set of primes pi.

The oracle (`all_hall_classes`) is exhaustive within the enumeration
budget: starting from a Sylow subgroup for one pi-prime it grows
pi-overgroups by single-element extensions, deduplicating conjugacy
classes exactly via orbits of element-index sets.  Every Hall class has a
representative through that Sylow subgroup, so the sweep finds all of
them.  Dominance (every pi-subgroup inside a Hall subgroup) is decided by
enumerating maximal pi-subgroup classes; with at most two effective primes
those are all solvable, and normal-cyclic extension growth plus a
containment pass keeps the sweep small.

Negative answers are certificates; running out of a budget raises
BudgetExceededError instead.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .arith import PiSet, is_pi_number, p_part, pi_part
from .backtrack import BudgetExceededError, conjugating_element, normalizer
from .config import DEFAULT_BUDGETS, Budgets
from .groups import PermGroup, require_subgroup
from .perms import Perm
from .structure import chief_series, get_table, is_normal
from .tables import ElementTable


def is_hall(G: PermGroup, H: PermGroup, pi: PiSet) -> bool:
    """H <= G with |H| a pi-number and |G:H| a pi'-number."""
    require_subgroup(G, H, "H")
    return H.order() == pi_part(G.order(), pi)


# -- Sylow subgroups -------------------------------------------------------------


def _p_element(G: PermGroup, p: int, rng: random.Random) -> Perm:
    """An element of order a positive power of p (exists when p | |G|)."""
    for g in G.generators:
        o = g.order()
        if o % p == 0:
            return g ** (o // p_part(o, p))
    for _ in range(8192):
        g = G.random_element(rng)
        o = g.order()
        if o % p == 0:
            return g ** (o // p_part(o, p))
    raise RuntimeError(f"no element of order divisible by {p} found")


def sylow(G: PermGroup, p: int, seed: int = 1,
          budgets: Budgets = DEFAULT_BUDGETS) -> PermGroup:
    """A Sylow p-subgroup, by centralizer descent and normalizer ascent."""
    from .backtrack import element_centralizer

    order = G.order()
    target = p_part(order, p)
    if target == 1:
        return PermGroup(G.degree, [])
    if order == target:
        return G
    rng = random.Random(seed)
    # prefer a p-element whose centralizer captures the largest p-part
    best = None
    for _ in range(6):
        z = _p_element(G, p, rng)
        C = element_centralizer(G, z, node_budget=budgets.node_budget)
        key = p_part(C.order(), p)
        if best is None or key > best[0]:
            best = (key, C)
        if key == target:
            break
    _, C = best
    if C.order() < order:
        P = sylow(C, p, seed, budgets)
    else:
        # z is central; pass to the quotient by <z>
        from .actions import coset_action
        Z = PermGroup(G.degree, [z])
        hom = coset_action(G, Z, degree_budget=budgets.coset_degree_budget,
                           check_subgroup=False)
        P = hom.preimage_group(sylow(hom.quotient, p, seed, budgets))
    while P.order() < target:
        N = normalizer(G, P, node_budget=budgets.node_budget)
        if N.order() == order:
            # P is normal; a Sylow subgroup is the preimage of one in G/P
            from .actions import coset_action
            hom = coset_action(G, P, degree_budget=budgets.coset_degree_budget,
                               check_subgroup=False)
            return hom.preimage_group(sylow(hom.quotient, p, seed, budgets))
        P = sylow(N, p, seed, budgets)
    return P


# -- subgroup intersections (element filter) ---------------------------------------


def intersect_subgroups(H: PermGroup, A: PermGroup,
                        limit: int = 1_000_000) -> PermGroup:
    """H intersect A by enumerating the smaller subgroup's elements."""
    small, big = (H, A) if H.order() <= A.order() else (A, H)
    if small.order() > limit:
        raise BudgetExceededError("intersection",
                                  f"|smaller side| = {small.order()} > {limit}")
    gens: list[Perm] = []
    current = PermGroup(H.degree, [])
    for x in small.elements():
        if not x.is_identity() and big.contains(x) and not current.contains(x):
            gens.append(x)
            current = PermGroup(H.degree, gens)
    return current


# -- the oracle ---------------------------------------------------------------------


@dataclass
class HallClassSet:
    """Conjugacy classes of pi-Hall subgroups of a group."""

    group: PermGroup
    pi: PiSet
    class_reps: list[PermGroup]
    class_sizes: list[int]
    exhaustive: bool
    total_found: int = 0

    @property
    def k(self) -> int:
        return len(self.class_reps)


class _SetOrbits:
    """Conjugation orbits of element-index sets, memoized per class.

    Each distinct class triggers one orbit BFS; every member's sorted-index
    byte string is then registered, so later queries for conjugate sets are
    dictionary hits.  Words (generator index lists) conjugate the class
    root to each member."""

    def __init__(self, tbl: ElementTable):
        self.tbl = tbl
        self.maps = tbl.conj_maps()
        self.class_of: dict[bytes, int] = {}
        self.class_reps: list[dict[bytes, int]] = []  # member -> transporter
        self.class_canon: list[frozenset] = []

    @staticmethod
    def _arr(idxs):
        import numpy as np
        return np.asarray(sorted(idxs), dtype=np.int64)

    def class_id(self, idxs: frozenset) -> int:
        import numpy as np
        tbl = self.tbl
        arr = self._arr(idxs)
        key = arr.tobytes()
        cid = self.class_of.get(key)
        if cid is not None:
            return cid
        cid = len(self.class_reps)
        reps: dict[bytes, int] = {key: tbl.identity_idx}
        canon_key, canon_arr = key, arr
        queue = [(key, arr)]
        while queue:
            k, a = queue.pop()
            base = reps[k]
            for gi, M in enumerate(self.maps):
                conj = np.sort(M[a])
                nk = conj.tobytes()
                if nk not in reps:
                    reps[nk] = tbl.mul(base, tbl.gen_idxs[gi])
                    queue.append((nk, conj))
                    if nk < canon_key:
                        canon_key, canon_arr = nk, conj
        for k in reps:
            self.class_of[k] = cid
        self.class_reps.append(reps)
        self.class_canon.append(frozenset(canon_arr.tolist()))
        return cid

    def key_of(self, idxs: frozenset) -> bytes:
        return self._arr(idxs).tobytes()

    def canon(self, cid: int) -> frozenset:
        return self.class_canon[cid]

    def size(self, cid: int) -> int:
        return len(self.class_reps[cid])

    def members(self, cid: int):
        import numpy as np
        for k in self.class_reps[cid]:
            yield np.frombuffer(k, dtype=np.int64)

    def transporter(self, idxs_from: frozenset, idxs_to: frozenset) -> Perm | None:
        """Some x with (idxs_from)^x = idxs_to, or None if not conjugate."""
        tbl = self.tbl
        cid = self.class_id(idxs_from)
        reps = self.class_reps[cid]
        key_to = self.key_of(idxs_to)
        if key_to not in reps:
            return None
        r_from = reps[self.key_of(idxs_from)]
        x = tbl.mul(tbl.inv(r_from), reps[key_to])
        return tbl.perm_of(x)


def _orbits_for(tbl: ElementTable) -> "_SetOrbits":
    orb = getattr(tbl, "_set_orbits", None)
    if orb is None:
        orb = _SetOrbits(tbl)
        tbl._set_orbits = orb
    return orb


def _pi_order_mask(tbl: ElementTable, pi: PiSet, m: int):
    """Per-element flag: order is a pi-number dividing m (class-constant)."""
    import numpy as np
    class_id, reps = tbl.classes()
    ok = np.zeros(len(reps), dtype=bool)
    for cid, rep in enumerate(reps):
        o = tbl.element_order(rep)
        ok[cid] = m % o == 0 and is_pi_number(o, pi)
    return ok[class_id]


def _quick_probe(tbl: ElementTable, mask, k_sample, x: int) -> bool:
    """Cheap necessary test before a full closure: a few products of x with
    subgroup elements must still be pi-elements of order dividing the
    pi-part."""
    for k in k_sample:
        t = tbl.mul(k, x)
        if not mask[t]:
            return False
    return True


def _grow_from_sylow(tbl: ElementTable, pi: PiSet, m: int,
                     seed_set: frozenset, seed_gens: tuple,
                     first_only: bool):
    """Classes of order-m pi-subgroups containing a fixed Sylow subgroup;
    single-element extension BFS, conjugacy-deduped.  Returns a list of
    (canonical set, orbit words) per Hall class."""
    orbits = _orbits_for(tbl)
    mask = _pi_order_mask(tbl, pi, m)
    seen = {orbits.class_id(seed_set)}
    queue = [(seed_set, seed_gens)]
    found: list[tuple[frozenset, int]] = []
    while queue:
        K, gens = queue.pop(0)
        if len(K) == m:
            cid = orbits.class_id(K)
            found.append((orbits.canon(cid), orbits.size(cid)))
            if first_only:
                return found
            continue
        k_sample = sorted(K)[:4]
        for x in tbl.coset_reps(K):
            if x in K or not mask[x]:
                continue
            if not _quick_probe(tbl, mask, k_sample, x):
                continue
            L = tbl.closure(list(gens) + [x], limit=m)
            if L is None or m % len(L) != 0 or len(L) <= len(K):
                continue
            cid = orbits.class_id(L)
            if cid not in seen:
                seen.add(cid)
                queue.append((L, tuple(sorted(gens + (x,)))))
    return found


def all_hall_classes(G: PermGroup, pi: PiSet,
                     budgets: Budgets = DEFAULT_BUDGETS,
                     seed: int = 1) -> HallClassSet:
    """Every conjugacy class of pi-Hall subgroups (the oracle; exhaustive)."""
    order = G.order()
    m = pi_part(order, pi)
    if m == 1:
        return HallClassSet(G, pi, [PermGroup(G.degree, [])], [1], True, 1)
    if m == order:
        return HallClassSet(G, pi, [G], [1], True, 1)
    tbl = get_table(G, budgets.order_budget)
    effective = [p for p in pi if order % p == 0]
    # Sylow seed: the prime whose Sylow subgroup is largest (fewest cosets)
    pstar = max(effective, key=lambda p: (p_part(order, p), p))
    P = sylow(G, pstar, seed, budgets)
    p_set = tbl.indices_of_subgroup(P)
    p_gens = tuple(sorted(tbl.idx_of_perm(g) for g in P.generators))
    if len(p_set) == m:
        orbits = _orbits_for(tbl)
        cid = orbits.class_id(p_set)
        rep = tbl.subgroup(orbits.canon(cid))
        size = orbits.size(cid)
        return HallClassSet(G, pi, [rep], [size], True, size)
    found = _grow_from_sylow(tbl, pi, m, p_set, p_gens, first_only=False)
    found.sort(key=lambda t: tuple(sorted(t[0])))
    reps = [tbl.subgroup(canon) for canon, _ in found]
    sizes = [size for _, size in found]
    return HallClassSet(G, pi, reps, sizes, True, sum(sizes))


def find_hall(G: PermGroup, pi: PiSet, budgets: Budgets = DEFAULT_BUDGETS,
              seed: int = 1) -> PermGroup | None:
    """One pi-Hall subgroup, or None with certainty (search exhausted).

    Groups past the enumeration budget are served from the special-case
    registry when a verified entry exists."""
    order = G.order()
    m = pi_part(order, pi)
    if m == 1:
        return PermGroup(G.degree, [])
    if m == order:
        return G
    if order > budgets.order_budget:
        from .registry import REGISTRY
        hit = REGISTRY.lookup_hall(G, pi)
        if hit is not None:
            return hit
    tbl = get_table(G, budgets.order_budget)
    effective = [p for p in pi if order % p == 0]
    pstar = max(effective, key=lambda p: (p_part(order, p), p))
    P = sylow(G, pstar, seed, budgets)
    p_set = tbl.indices_of_subgroup(P)
    if len(p_set) == m:
        return P
    p_gens = tuple(sorted(tbl.idx_of_perm(g) for g in P.generators))
    found = _grow_from_sylow(tbl, pi, m, p_set, p_gens, first_only=True)
    if not found:
        return None
    canon, _ = found[0]
    return tbl.subgroup(canon)


# -- subgroup conjugacy ---------------------------------------------------------------


def are_conjugate(G: PermGroup, H: PermGroup, K: PermGroup,
                  budgets: Budgets = DEFAULT_BUDGETS) -> Perm | None:
    """Some x in G with H^x = K, or None as a non-conjugacy certificate.

    Fast-rejects on conjugation invariants (order, orbit-length multiset,
    and the exact element-order histogram for small subgroups), then
    decides exactly: by index-set orbits within the enumeration budget,
    by backtrack beyond it."""
    require_subgroup(G, H, "H")
    require_subgroup(G, K, "K")
    if H.order() != K.order():
        return None
    if sorted(map(len, H.orbits())) != sorted(map(len, K.orbits())):
        return None
    if H.order() <= 1000 and H.fingerprint() != K.fingerprint():
        return None
    if G.order() <= budgets.order_budget:
        tbl = get_table(G, budgets.order_budget)
        orbits = _orbits_for(tbl)
        h_set = tbl.indices_of_subgroup(H)
        k_set = tbl.indices_of_subgroup(K)
        x = orbits.transporter(h_set, k_set)
        if x is not None:
            assert all(K.contains(h.conjugate(x)) for h in H.generators)
        return x
    return conjugating_element(G, H, K, node_budget=budgets.node_budget)


# -- E / C / D classification ------------------------------------------------------


@dataclass
class ECDReport:
    group: PermGroup
    pi: PiSet
    E: bool
    C: bool
    D: bool
    k: int
    classes: HallClassSet

    def flags(self) -> dict:
        return {"E": self.E, "C": self.C, "D": self.D, "k": self.k}


_classify_cache: dict = {}


def classify_ECD(G: PermGroup, pi: PiSet, budgets: Budgets = DEFAULT_BUDGETS,
                 seed: int = 1) -> ECDReport:
    """E: a Hall subgroup exists; C: exactly one class; D: C and every
    maximal pi-subgroup is Hall."""
    key = (G.canonical_key(), pi.primes, seed)
    got = _classify_cache.get(key)
    if got is not None:
        return got
    order = G.order()
    m = pi_part(order, pi)
    classes = all_hall_classes(G, pi, budgets, seed)
    k = classes.k
    E = k >= 1
    C = k == 1
    if m in (1, order):
        D = True
    elif not C:
        D = False
    else:
        D = _dominance_check(G, pi, m, budgets)
    report = ECDReport(G, pi, E, C, D, k, classes)
    if len(_classify_cache) > 512:
        _classify_cache.clear()
    _classify_cache[key] = report
    return report


def _dominance_check(G: PermGroup, pi: PiSet, m: int, budgets: Budgets) -> bool:
    """True iff every maximal pi-subgroup has order m."""
    tbl = get_table(G, budgets.order_budget)
    effective = [p for p in pi if G.order() % p == 0]
    if len(effective) <= 2:
        return _dominance_solvable_sweep(tbl, pi, m, effective)
    return _dominance_generic_sweep(tbl, pi, m)


def _dominance_solvable_sweep(tbl: ElementTable, pi: PiSet, m: int,
                              effective: list[int]) -> bool:
    """All pi-subgroups are solvable (two primes); enumerate their classes
    by normal-cyclic extensions, then settle maximality by containment."""
    orbits = _orbits_for(tbl)
    mask = _pi_order_mask(tbl, pi, m)
    ident = tbl.identity_idx
    triv = frozenset([ident])
    cid0 = orbits.class_id(triv)
    info_by_class: dict[int, dict] = {
        cid0: {"set": triv, "has_ext": False}}
    queue = [(triv, (), cid0)]
    while queue:
        K, gens, cid = queue.pop(0)
        info = info_by_class[cid]
        if len(K) == m:
            continue
        # candidate extension elements normalize K: the stabilizer of K in
        # the conjugation action, from Schreier generators on the set orbit
        n_set = _set_stabilizer_elements(tbl, orbits, K)
        # one candidate per coset of K (same coset, same extension)
        covered = set(K)
        for x in sorted(n_set):
            if x in covered:
                continue
            covered.update(tbl.mul(k, x) for k in K)
            if not mask[x]:
                continue
            o = tbl.element_order(x)
            # normal extension of prime degree: x^p in K
            if not any(o % p == 0 and _power_in_set(tbl, x, p, K)
                       for p in effective):
                continue
            L = tbl.closure(list(gens) + [x], limit=m)
            if L is None or len(L) <= len(K) or m % len(L) != 0:
                continue
            info["has_ext"] = True
            lcid = orbits.class_id(L)
            if lcid not in info_by_class:
                info_by_class[lcid] = {"set": L, "has_ext": False}
                queue.append((L, tuple(sorted(gens + (x,))), lcid))
    # maximality pass: a class with no normal extension may still lie in a
    # larger class; check conjugate containment
    by_size = sorted(info_by_class,
                     key=lambda cid: len(info_by_class[cid]["set"]))
    for kc in by_size:
        k_set = info_by_class[kc]["set"]
        if len(k_set) == m or info_by_class[kc]["has_ext"]:
            continue
        contained = False
        for lc in by_size:
            l_set = info_by_class[lc]["set"]
            if len(l_set) <= len(k_set) or len(l_set) % len(k_set) != 0:
                continue
            if any(set(member.tolist()) <= l_set
                   for member in orbits.members(kc)):
                contained = True
                break
        if not contained:
            return False
    return True


def _power_in_set(tbl: ElementTable, x: int, p: int, K: frozenset) -> bool:
    y = x
    for _ in range(p - 1):
        y = tbl.mul(y, x)
    return y in K


def _set_stabilizer_elements(tbl: ElementTable, orbits: _SetOrbits,
                             node: frozenset) -> set[int]:
    """All elements normalizing the subgroup-set `node`: Schreier generators
    of the orbit stabilizer, closed into the full stabilizer (its size is
    |G| / orbit length)."""
    import numpy as np
    cid = orbits.class_id(node)
    class_reps = orbits.class_reps[cid]
    target = tbl.size // len(class_reps)
    # transversal elements conjugating `node` to each member
    shift_inv = tbl.inv(class_reps[orbits.key_of(node)])
    reps = {key: tbl.mul(shift_inv, r) for key, r in class_reps.items()}
    gens = set()
    for key, rep in reps.items():
        arr = np.frombuffer(key, dtype=np.int64)
        for gi, M in enumerate(orbits.maps):
            image_key = np.sort(M[arr]).tobytes()
            s = tbl.mul(tbl.mul(rep, tbl.gen_idxs[gi]),
                        tbl.inv(reps[image_key]))
            gens.add(s)
        if len(gens) >= target:
            break
    closure = tbl.closure(gens, limit=target)
    assert closure is not None and len(closure) == target
    return set(closure)


def _dominance_generic_sweep(tbl: ElementTable, pi: PiSet, m: int) -> bool:
    """Fallback for three or more effective primes: single-element extension
    growth over all pi-subgroup classes."""
    orbits = _orbits_for(tbl)
    mask = _pi_order_mask(tbl, pi, m)
    ident = tbl.identity_idx
    _, reps = tbl.classes()
    from .arith import is_prime
    info_by_class: dict[int, dict] = {}
    queue = []
    for rep in reps:
        if rep == ident or not mask[rep] or not is_prime(tbl.element_order(rep)):
            continue
        K = tbl.closure([rep], limit=m)
        cid = orbits.class_id(K)
        if cid not in info_by_class:
            info_by_class[cid] = {"set": K, "maximal": True}
            queue.append((K, (rep,), cid))
    while queue:
        K, gens, cid = queue.pop(0)
        info = info_by_class[cid]
        if len(K) == m:
            continue
        k_sample = sorted(K)[:4]
        for x in tbl.coset_reps(K):
            if x in K or not mask[x]:
                continue
            if not _quick_probe(tbl, mask, k_sample, x):
                continue
            L = tbl.closure(list(gens) + [x], limit=m)
            if L is None or len(L) <= len(K) or m % len(L) != 0:
                continue
            info["maximal"] = False
            lcid = orbits.class_id(L)
            if lcid not in info_by_class:
                info_by_class[lcid] = {"set": L, "maximal": True}
                queue.append((L, tuple(sorted(gens + (x,))), lcid))
    return all(len(info["set"]) == m
               for info in info_by_class.values() if info["maximal"])


# -- induced Hall classes -----------------------------------------------------------


@dataclass
class KReport:
    """Counting report for the classes of intersections H^g ∩ A."""

    group: PermGroup
    normal_subgroup: PermGroup
    pi: PiSet
    k_induced: int
    k_total: int
    induced_class_reps: list[PermGroup]
    e_holds: bool = True


def k_induced(G: PermGroup, A: PermGroup, pi: PiSet,
              budgets: Budgets = DEFAULT_BUDGETS, seed: int = 1) -> KReport:
    """Number of A-classes of subgroups H ∩ A over the Hall classes of G."""
    require_subgroup(G, A, "A")
    if not is_normal(G, A):
        raise ValueError("A must be normal in G")
    k_total = all_hall_classes(A, pi, budgets, seed).k
    halls = all_hall_classes(G, pi, budgets, seed)
    if halls.k == 0:
        return KReport(G, A, pi, 0, k_total, [], e_holds=False)
    tbl = get_table(G, budgets.order_budget)
    a_set = tbl.indices_of_subgroup(A)
    a_gen_idx = [tbl.idx_of_perm(g) for g in A.generators]
    import numpy as np
    canon_seen = {}
    for H in halls.class_reps:
        h_set = tbl.indices_of_subgroup(H)
        inter = frozenset(h_set & a_set)
        canon = _canonical_under(tbl, inter, a_gen_idx)
        canon_seen.setdefault(canon, inter)
    reps = [tbl.subgroup(s) for s in sorted(canon_seen, key=lambda s: sorted(s))]
    return KReport(G, A, pi, len(canon_seen), k_total, reps)


def _canonical_under(tbl: ElementTable, idxs: frozenset,
                     conj_gen_idxs: list[int]) -> frozenset:
    """Canonical form of a subgroup index set under conjugation by the
    subgroup generated by the given elements."""
    import numpy as np
    seen = {idxs}
    queue = [np.asarray(sorted(idxs), dtype=np.int64)]
    while queue:
        arr = queue.pop()
        for t in conj_gen_idxs:
            conj = tbl.conjugate_indices(arr, t)
            key = frozenset(int(v) for v in conj)
            if key not in seen:
                seen.add(key)
                queue.append(np.sort(conj))
    return min(seen, key=lambda s: tuple(sorted(s)))


# -- class invariance, extension, lifting ---------------------------------------------


def class_is_G_invariant(G: PermGroup, A: PermGroup, M: PermGroup, pi: PiSet,
                         budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """Whether conjugation by G fixes the A-class {M^a}: for every
    generator g, M^g must be A-conjugate to M."""
    if not is_normal(G, A):
        raise ValueError("A must be normal in G")
    if not is_pi_number(G.order() // A.order(), pi):
        raise ValueError("|G:A| must be a pi-number")
    if not is_hall(A, M, pi):
        raise ValueError("M must be a pi-Hall subgroup of A")
    for g in G.generators:
        if A.contains(g):
            continue
        Mg = PermGroup(G.degree, [h.conjugate(g) for h in M.generators])
        if are_conjugate(A, Mg, M, budgets) is None:
            return False
    return True


def extend_hall(G: PermGroup, A: PermGroup, M: PermGroup, pi: PiSet,
                budgets: Budgets = DEFAULT_BUDGETS,
                seed: int = 1) -> PermGroup | None:
    """A pi-Hall subgroup H of G with H ∩ A = M (exactly), or None when the
    A-class of M is not G-invariant (the two are equivalent).

    Constructive: N = N_G(M) covers G over A by the Frattini argument and
    has a pi-separable series over M, so a Hall subgroup of N works."""
    if not class_is_G_invariant(G, A, M, pi, budgets):
        return None
    if A.same_group_as(G):
        return M
    N = normalizer(G, M, node_budget=budgets.node_budget)
    NA = normalizer(A, M, node_budget=budgets.node_budget)
    # Frattini argument: G = N * A
    assert N.order() * A.order() // NA.order() == G.order(), \
        "Frattini factorization failed"
    H = find_hall(N, pi, budgets, seed)
    assert H is not None, "normalizer is pi-separable; a Hall subgroup exists"
    assert is_hall(G, H, pi)
    inter = intersect_subgroups(H, A, budgets.order_budget)
    if not inter.same_group_as(M):
        x = are_conjugate(A, inter, M, budgets)
        assert x is not None, "H ∩ A must be A-conjugate to M"
        H = PermGroup(G.degree, [h.conjugate(x) for h in H.generators])
        inter = intersect_subgroups(H, A, budgets.order_budget)
        assert inter.same_group_as(M)
    return H


def lift_hall(G: PermGroup, A: PermGroup, hom, Kbar: PermGroup, pi: PiSet,
              budgets: Budgets = DEFAULT_BUDGETS, seed: int = 1) -> PermGroup:
    """A pi-Hall subgroup H of G whose image modulo A is Kbar, given the
    coset action hom of G on A.  Kbar must be pi-Hall in the quotient."""
    if not is_hall(hom.quotient, Kbar, pi):
        raise ValueError("Kbar is not a pi-Hall subgroup of the quotient")
    K = hom.preimage_group(Kbar)
    H = find_hall(K, pi, budgets, seed)
    if H is None:
        raise ValueError("no Hall subgroup in the preimage: source is not E_pi")
    assert is_hall(G, H, pi)
    return H


def pi_separable_series(G: PermGroup, pi: PiSet,
                        budgets: Budgets = DEFAULT_BUDGETS,
                        seed: int = 1) -> list[PermGroup] | None:
    """A normal series with every factor a pi- or pi'-group, or None.

    Groups admitting one satisfy all three Hall properties, so this is a
    fast path for solvable inputs."""
    order = G.order()
    if is_pi_number(order, pi) or pi_part(order, pi) == 1:
        return [G, PermGroup(G.degree, [])]
    series = chief_series(G, budgets, seed)
    for i in range(1, len(series) + 1):
        fo = series.factor_order(i)
        if not (is_pi_number(fo, pi) or pi_part(fo, pi) == 1):
            return None
    return series.terms
