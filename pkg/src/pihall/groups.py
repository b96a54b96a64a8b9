"""Permutation groups backed by a base and strong generating set.

The stabilizer chain is built by a deterministic Schreier-Sims procedure
(no Monte Carlo step); base points are chosen greedily as the smallest
point moved by the generator that creates the level.  Groups are immutable
once the chain exists, so they are safe to share across threads.

Internally the chain works on raw image tuples for speed; the public API
speaks :class:`~pihall.perms.Perm`.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Iterator, Sequence

from .perms import DegreeMismatchError, Perm

_IDENTITY_CACHE: dict[int, tuple[int, ...]] = {}

# Rep caching is quadratic in orbit size x degree; cap it for large actions.
_REP_CACHE_DEGREE = 700


def _ident(n: int) -> tuple[int, ...]:
    p = _IDENTITY_CACHE.get(n)
    if p is None:
        p = tuple(range(n))
        _IDENTITY_CACHE[n] = p
    return p


def _mul(p, q):
    return tuple(map(q.__getitem__, p))


def _inv(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


class _Level:
    """One stabilizer-chain level: base point, generators, Schreier tree.

    The orbit and tree grow append-only so that cached coset representatives
    and already-verified Schreier pairs stay valid when generators arrive.
    """

    __slots__ = ("point", "gens", "tree", "orbit_list", "_reps", "_reps_inv",
                 "checked_upto", "cache_reps", "degree")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.degree = degree
        self.gens: list[tuple[int, ...]] = []
        self.tree: dict[int, tuple[int, tuple[int, ...]] | None] = {point: None}
        self.orbit_list: list[int] = [point]
        self._reps = {point: _ident(degree)}
        self._reps_inv = {point: _ident(degree)}
        self.checked_upto: dict[int, int] = {}
        self.cache_reps = degree <= _REP_CACHE_DEGREE

    def add_gen(self, g: tuple[int, ...]) -> None:
        self.gens.append(g)
        frontier = []
        for x in list(self.orbit_list):
            y = g[x]
            if y not in self.tree:
                self.tree[y] = (x, g)
                self.orbit_list.append(y)
                frontier.append(y)
        while frontier:
            nxt = []
            for x in frontier:
                for gen in self.gens:
                    y = gen[x]
                    if y not in self.tree:
                        self.tree[y] = (x, gen)
                        self.orbit_list.append(y)
                        nxt.append(y)
            frontier = nxt

    def _walk(self, point: int) -> tuple[int, ...]:
        path = []
        x = point
        while True:
            edge = self.tree[x]
            if edge is None:
                break
            parent, gen = edge
            path.append(gen)
            x = parent
        r = _ident(self.degree)
        for gen in reversed(path):
            r = _mul(r, gen)
        return r

    def rep(self, point: int) -> tuple[int, ...]:
        r = self._reps.get(point)
        if r is None:
            r = self._walk(point)
            if self.cache_reps:
                self._reps[point] = r
        return r

    def rep_inv(self, point: int) -> tuple[int, ...]:
        r = self._reps_inv.get(point)
        if r is None:
            r = _inv(self.rep(point))
            if self.cache_reps:
                self._reps_inv[point] = r
        return r


class _Chain:
    """Stabilizer chain over image tuples.

    ``hint`` pre-creates levels on the given points, in order, so they head
    the base even when early generators fix them.  Action homomorphisms use
    this to peel a quotient action off the front of a combined domain: the
    stabilizer of the whole hint block is then the chain suffix after the
    hint levels.  Pre-created levels that stay trivial cost O(1) each.
    """

    __slots__ = ("degree", "levels", "hint_len")

    def __init__(self, degree: int, gens: Iterable[tuple[int, ...]],
                 hint: Sequence[int] = ()):
        self.degree = degree
        self.levels: list[_Level] = [_Level(h, degree) for h in hint]
        self.hint_len = len(hint)
        ident = _ident(degree)
        for g in gens:
            if g != ident:
                self._sift_add(0, g)
        self._complete()

    def _install_gen(self, level: int, w) -> None:
        # w fixes the bases of all levels above `level`, so it generates
        # every stabilizer group down to that level.
        for j in range(level + 1):
            self.levels[j].add_gen(w)

    def _sift_add(self, start: int, w) -> int | None:
        """Sift w (fixing bases above `start`); add the residue where it
        sticks.  Returns the level index that changed, None otherwise."""
        for i in range(start, len(self.levels)):
            lvl = self.levels[i]
            x = w[lvl.point]
            if x == lvl.point:
                continue
            if x not in lvl.tree:
                self._install_gen(i, w)
                return i
            w = _mul(w, lvl.rep_inv(x))
        if w == _ident(self.degree):
            return None
        pt = next(x for x in range(self.degree) if w[x] != x)
        self.levels.append(_Level(pt, self.degree))
        self._install_gen(len(self.levels) - 1, w)
        return len(self.levels) - 1

    def _check_level(self, i: int) -> int | None:
        """Verify Schreier generators of level i; returns deepest changed
        level, or None when the level is fully verified."""
        lvl = self.levels[i]
        if len(lvl.orbit_list) == 1:
            # every generator here fixes the base (or the orbit would have
            # grown) and was installed at a deeper level, hence is already a
            # member of the stabilizer; nothing to verify.
            return None
        deepest = None
        idx = 0
        while idx < len(lvl.orbit_list):
            pt = lvl.orbit_list[idx]
            start = lvl.checked_upto.get(pt, 0)
            ngens = len(lvl.gens)
            if start < ngens:
                u = lvl.rep(pt)
                for gi in range(start, ngens):
                    gen = lvl.gens[gi]
                    target = gen[pt]
                    if target == pt and pt == lvl.point:
                        # Schreier generator equals gen itself, a member of
                        # the deeper stabilizer by its install level
                        continue
                    w = _mul(u, gen)
                    if w == lvl.rep(target):
                        continue
                    s = _mul(w, lvl.rep_inv(target))
                    j = self._sift_add(i + 1, s)
                    if j is not None:
                        deepest = j if deepest is None else max(deepest, j)
                lvl.checked_upto[pt] = ngens
            idx += 1
        return deepest

    def _complete(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            changed = self._check_level(i)
            if changed is None:
                i -= 1
            else:
                i = changed

    # -- queries -----------------------------------------------------------

    def order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.orbit_list)
        return n

    def reduce(self, w) -> tuple[tuple[int, ...], int | None]:
        """Sift w; returns (residue, level index where it stuck or None)."""
        for i, lvl in enumerate(self.levels):
            x = w[lvl.point]
            if x == lvl.point:
                continue
            if x not in lvl.tree:
                return w, i
            w = _mul(w, lvl.rep_inv(x))
        return w, None

    def contains(self, w) -> bool:
        residue, stuck = self.reduce(w)
        return stuck is None and residue == _ident(self.degree)

    def base(self) -> list[int]:
        return [lvl.point for lvl in self.levels]

    def strong_gens_from(self, level: int) -> list[tuple[int, ...]]:
        """Generators of the stabilizer of the first `level` base points."""
        if level >= len(self.levels):
            return []
        return list(self.levels[level].gens)

    def random_tuple(self, rng: random.Random) -> tuple[int, ...]:
        w = _ident(self.degree)
        for lvl in reversed(self.levels):
            if len(lvl.orbit_list) > 1:
                pt = rng.choice(lvl.orbit_list)
                w = _mul(w, lvl.rep(pt))
        return w

    def iter_tuples(self) -> Iterator[tuple[int, ...]]:
        """All elements, in the deterministic transversal-product order."""
        transversals = [[lvl.rep(pt) for pt in sorted(lvl.orbit_list)]
                        for lvl in self.levels if len(lvl.orbit_list) > 1]
        if not transversals:
            yield _ident(self.degree)
            return
        for combo in itertools.product(*reversed(transversals)):
            w = combo[0]
            for u in combo[1:]:
                w = _mul(w, u)
            yield w


class NotASubgroupError(ValueError):
    """Raised when an operation requires H <= G and it does not hold."""


class PermGroup:
    """A finite permutation group on {0..degree-1}.

    Immutable; the stabilizer chain is built on first use and reused.
    """

    def __init__(self, degree: int, generators: Iterable[Perm] = (),
                 name: str | None = None):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, Perm):
                g = Perm(g)
            if g.degree != degree:
                raise DegreeMismatchError(
                    f"generator degree {g.degree} != group degree {degree}")
            if not g.is_identity() and g.images not in seen:
                seen.add(g.images)
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Perm, ...] = tuple(gens)
        self.name = name
        self._chain_cache: _Chain | None = None
        self._fingerprint = None

    # -- chain plumbing ----------------------------------------------------

    def chain(self) -> _Chain:
        if self._chain_cache is None:
            self._chain_cache = _Chain(
                self.degree, [g.images for g in self.generators])
        return self._chain_cache

    def fresh_chain(self, hint: Sequence[int] = ()) -> _Chain:
        """A private chain with a prescribed base prefix; never cached."""
        return _Chain(self.degree, [g.images for g in self.generators],
                      hint=hint)

    def gen_tuples(self) -> list[tuple[int, ...]]:
        return [g.images for g in self.generators]

    # -- basic structure ----------------------------------------------------

    def order(self) -> int:
        return self.chain().order()

    def is_trivial(self) -> bool:
        return not self.generators

    def base(self) -> list[int]:
        return self.chain().base()

    def contains(self, p: Perm) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatchError(
                f"element degree {p.degree} != group degree {self.degree}")
        return self.chain().contains(p.images)

    def __contains__(self, p: Perm) -> bool:
        return self.contains(p)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if self.degree != other.degree:
            raise DegreeMismatchError(
                f"degree {self.degree} != {other.degree}")
        return all(other.contains(g) for g in self.generators)

    def same_group_as(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree
                and self.order() == other.order()
                and self.is_subgroup_of(other))

    def is_abelian(self) -> bool:
        for a, b in itertools.combinations(self.generators, 2):
            if a * b != b * a:
                return False
        return True

    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    # -- orbits and stabilizers ---------------------------------------------

    def _check_point(self, point: int) -> None:
        if not 0 <= point < self.degree:
            raise IndexError(f"point {point} out of range 0..{self.degree - 1}")

    def orbit(self, point: int) -> set[int]:
        self._check_point(point)
        seen = {point}
        queue = [point]
        gens = self.gen_tuples()
        while queue:
            x = queue.pop()
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def orbits(self) -> list[list[int]]:
        """Orbit partition; each orbit sorted, orbits ordered by min point."""
        seen = [False] * self.degree
        out = []
        for x in range(self.degree):
            if not seen[x]:
                orb = sorted(self.orbit(x))
                for y in orb:
                    seen[y] = True
                out.append(orb)
        return out

    def orbit_sizes(self) -> tuple[int, ...]:
        return tuple(sorted(len(o) for o in self.orbits()))

    def stabilizer(self, point: int) -> "PermGroup":
        self._check_point(point)
        chain = self.fresh_chain(hint=[point])
        gens = chain.strong_gens_from(1)
        return PermGroup(self.degree, [Perm(g, validate=False) for g in gens])

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        for p in points:
            self._check_point(p)
        chain = self.fresh_chain(hint=list(points))
        gens = chain.strong_gens_from(len(points))
        return PermGroup(self.degree, [Perm(g, validate=False) for g in gens])

    # -- elements ------------------------------------------------------------

    def random_element(self, rng: random.Random | int) -> Perm:
        if isinstance(rng, int):
            rng = random.Random(rng)
        return Perm(self.chain().random_tuple(rng), validate=False)

    def elements(self) -> Iterator[Perm]:
        for w in self.chain().iter_tuples():
            yield Perm(w, validate=False)

    # -- invariants ------------------------------------------------------------

    def fingerprint(self, sample_size: int = 1000, seed: int = 101):
        """Conjugation-invariant signature: (order, orbit-length multiset,
        element-order histogram of a fixed-seed sample)."""
        if self._fingerprint is None:
            order = self.order()
            if order <= sample_size:
                orders = sorted(p.order() for p in self.elements())
            else:
                rng = random.Random(seed)
                chain = self.chain()
                orders = sorted(
                    Perm(chain.random_tuple(rng), validate=False).order()
                    for _ in range(sample_size))
            histogram = []
            for value in orders:
                if histogram and histogram[-1][0] == value:
                    histogram[-1][1] += 1
                else:
                    histogram.append([value, 1])
            self._fingerprint = (
                order,
                self.orbit_sizes(),
                tuple((v, c) for v, c in histogram),
            )
        return self._fingerprint

    def canonical_key(self):
        """Deterministic identity for caching: degree + sorted generators."""
        return (self.degree, tuple(sorted(g.images for g in self.generators)))

    def __repr__(self) -> str:
        label = self.name or f"{len(self.generators)} gens"
        return f"PermGroup(degree={self.degree}, {label})"


def group_from_gens(degree: int, tuples: Iterable[Sequence[int]],
                    name: str | None = None) -> PermGroup:
    return PermGroup(degree, [Perm(t) for t in tuples], name=name)


def require_subgroup(G: PermGroup, H: PermGroup, what: str = "H") -> None:
    if not H.is_subgroup_of(G):
        raise NotASubgroupError(f"{what} is not a subgroup of the ambient group")


def join_subgroups(G: PermGroup, parts: Iterable[PermGroup]) -> PermGroup:
    """Subgroup generated by the given subgroups of G (no membership check)."""
    gens: list[Perm] = []
    for part in parts:
        gens.extend(part.generators)
    return PermGroup(G.degree, gens)
