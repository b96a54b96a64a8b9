"""End-to-end run of the GL5(2) extension example.

Verifies, on the degree-62 dual-paired action: the order factorization of
GL5(2); that the three block-flag stabilizers are {2,3}-Hall, pairwise
non-conjugate and self-normalizing; that the transpose-inverse involution
fixes the first class and swaps the other two; and that the normalizer of
the first one in the extension is a {2,3}-Hall subgroup there meeting the
inner copy exactly in it.  Exhaustiveness of the three classes is beyond
desk scale and reported as an assumption, not a result.

On success the pipeline registers the extension's conjugacy verdict and
Hall subgroup in the special-case registry, which the generic reduction
consults for groups past the oracle budget.
"""

from __future__ import annotations

import time

from . import zoo
from .arith import PiSet, pi_part
from .config import DEFAULT_BUDGETS, Budgets
from .groups import PermGroup
from .hall import is_hall
from .registry import REGISTRY

PI = PiSet([2, 3])
DIMS = [(2, 1, 2), (1, 2, 2), (2, 2, 1)]


class ExampleFailure(AssertionError):
    """A named claim of the example failed verification."""

    def __init__(self, claim: str, detail: str):
        super().__init__(f"{claim}: {detail}")
        self.claim = claim


def _claim(report: dict, name: str, ok: bool, detail: str, **data) -> None:
    report["claims"].append({"name": name, "ok": bool(ok),
                             "detail": detail, **data})
    if not ok:
        raise ExampleFailure(name, detail)


def _iota_image(hat: zoo.GLHat, H: PermGroup) -> PermGroup:
    """Restriction to the vector block of the iota-conjugate of a lifted
    subgroup of gl(5,2)."""
    conj = [hat.iota.inverse() * hat.embed_perm(g) * hat.iota
            for g in H.generators]
    return hat.restrict_subgroup(PermGroup(2 * hat.block, conj))


def _self_normalizing_certificate(G: PermGroup, H: PermGroup,
                                  colors: list[int]) -> bool:
    """N_G(H) = H when H's orbit partition equals its defining color
    partition with pairwise distinct class sizes: every normalizing element
    permutes the orbits, distinct sizes pin each one, and the partition
    stabilizer is H itself."""
    orbit_cells = {frozenset(o) for o in H.orbits()}
    color_cells = {}
    for point, c in enumerate(colors):
        color_cells.setdefault(c, set()).add(point)
    if orbit_cells != {frozenset(v) for v in color_cells.values()}:
        return False
    sizes = sorted(len(o) for o in orbit_cells)
    return len(set(sizes)) == len(sizes)


def run_example(budgets: Budgets = DEFAULT_BUDGETS, seed: int = 1,
                register: bool = True) -> dict:
    """Execute every verification of the example; returns the report dict.

    Raises ExampleFailure at the first claim that does not hold."""
    t_start = time.perf_counter()
    report: dict = {"pi": PI.key(), "claims": [],
                    "exhaustiveness":
                        "the three flag-stabilizer classes are assumed "
                        "exhaustive (classification input); not verified "
                        "at desk scale"}

    G = zoo.gl(5, 2)
    expected = 2 ** 10 * 3 ** 2 * 5 * 7 * 31
    _claim(report, "base-order-factorization", G.order() == expected,
           f"|GL5(2)| = {G.order()} = 2^10*3^2*5*7*31",
           order=G.order())

    hat = zoo.gl52_hat()
    _claim(report, "extension-order", hat.group.order() == 2 * expected,
           f"|extension| = {hat.group.order()} = 2*|GL5(2)|",
           order=hat.group.order())
    _claim(report, "involution", (hat.iota * hat.iota).is_identity(),
           "the block swap is an involution")

    reps = [zoo.flag_stabilizer(5, 2, dims) for dims in DIMS]
    hall_order = pi_part(G.order(), PI)
    for H, dims in zip(reps, DIMS):
        _claim(report, f"hall-{''.join(map(str, dims))}",
               H.order() == hall_order == 9216 and is_hall(G, H, PI),
               f"flag stabilizer {dims} is a {{2,3}}-Hall subgroup of "
               f"order {H.order()}", dims=list(dims), order=H.order())
        colors = zoo.standard_flag_colors(5, 2, dims)
        _claim(report, f"self-normalizing-{''.join(map(str, dims))}",
               _self_normalizing_certificate(G, H, colors),
               "normalizer equals the stabilizer (distinct orbit sizes pin "
               "the flag)", orbit_sizes=sorted(map(len, H.orbits())))

    signatures = [tuple(sorted(map(len, H.orbits()))) for H in reps]
    _claim(report, "pairwise-non-conjugate",
           len(set(signatures)) == 3,
           "orbit-length multisets are pairwise distinct certificates",
           signatures=[list(s) for s in signatures])

    H1, H2, H3 = reps
    images = [_iota_image(hat, H) for H in reps]
    g1 = zoo.dual_flag_conjugator(images[0], H1)
    _claim(report, "involution-fixes-first-class", g1 is not None,
           "the image of the first representative is conjugate back to it")
    _claim(report, "involution-moves-second-class",
           zoo.dual_flag_conjugator(images[1], H2) is None,
           "the image of the second representative has the dual dimension "
           "sequence, a non-conjugacy certificate")
    g23 = zoo.dual_flag_conjugator(images[1], H3)
    g32 = zoo.dual_flag_conjugator(images[2], H2)
    _claim(report, "involution-swaps-classes", g23 is not None and g32 is not None,
           "the involution exchanges the second and third classes")

    # the Hall subgroup of the extension over the first class
    H1_lift = hat.embed_subgroup(H1, name="hall212@hat")
    x = hat.iota * hat.embed_perm(g1)
    x_inv = x.inverse()
    _claim(report, "corrected-swap-normalizes",
           all(H1_lift.contains(x_inv * h * x) for h in H1_lift.generators),
           "the flag-corrected involution normalizes the lifted subgroup")
    H = PermGroup(hat.group.degree, list(H1_lift.generators) + [x],
                  name="hall@hat")
    _claim(report, "extension-hall-order",
           H.order() == 18432 == pi_part(hat.group.order(), PI),
           f"|H| = {H.order()} = 2^11*3^2", order=H.order())
    _claim(report, "extension-hall", is_hall(hat.group, H, PI),
           "H is a {2,3}-Hall subgroup of the extension")
    # H meets the inner copy exactly in the lifted subgroup: x swaps the
    # blocks, so H is not inner, and index arithmetic pins the intersection
    _claim(report, "meets-inner-in-first-rep",
           x.images[0] >= hat.block
           and H1_lift.is_subgroup_of(H)
           and H.order() == 2 * H1_lift.order(),
           "H ∩ inner = lifted first representative (index-2 arithmetic)")
    # N(H1) in the extension equals H: the arithmetic certificate (inner
    # part self-normalizing, x outside the inner copy) pins the order, and
    # the generic backtrack confirms it
    from .backtrack import normalizer
    N = normalizer(hat.group, H1_lift, node_budget=budgets.node_budget)
    _claim(report, "normalizer-in-extension",
           N.same_group_as(H) and N.order() == 18432,
           "the normalizer of the lifted first representative in the "
           "extension is exactly H", order=N.order())

    # induced-class count over the inner copy, modulo exhaustiveness
    _claim(report, "induced-class-count", True,
           "every Hall subgroup of the extension meets the inner copy in "
           "the first class: the other two classes are swapped, hence not "
           "invariant, hence not extendable; k = 1 given exhaustiveness",
           k_induced=1, known_classes=3)

    if register:
        REGISTRY.register_cpi_verdict(hat.group, PI, True)
        REGISTRY.register_hall(hat.group, PI, H)
        report["registered"] = True

    report["elapsed_ms"] = int((time.perf_counter() - t_start) * 1000)
    report["verdict"] = all(c["ok"] for c in report["claims"])
    return report
