"""Injection point for results that bypass generic budgets.

Populated only by dedicated pipelines (the GL5(2) example); consumers mark
every injected value in their traces.  Conjugacy verdicts are keyed by the
full group fingerprint.  Hall subgroups are verified against the querying
group before being returned, so a hit is sound even if two different
groups ever shared a fingerprint."""

from __future__ import annotations

from .arith import PiSet
from .groups import PermGroup


class SpecialCaseRegistry:
    def __init__(self):
        self._cpi: dict = {}
        self._hall: dict = {}

    @staticmethod
    def _key(G: PermGroup, pi: PiSet):
        return (G.fingerprint(), pi.primes)

    def register_cpi_verdict(self, G: PermGroup, pi: PiSet, verdict: bool):
        self._cpi[self._key(G, pi)] = verdict

    def lookup_cpi_verdict(self, G: PermGroup, pi: PiSet):
        return self._cpi.get(self._key(G, pi))

    def register_hall(self, G: PermGroup, pi: PiSet, hall: PermGroup):
        self._hall.setdefault((G.order(), pi.primes), []).append(hall)

    def lookup_hall(self, G: PermGroup, pi: PiSet):
        from .hall import is_hall
        for hall in self._hall.get((G.order(), pi.primes), []):
            if hall.degree == G.degree and is_hall(G, hall, pi):
                return hall
        return None

    def clear(self):
        self._cpi.clear()
        self._hall.clear()


REGISTRY = SpecialCaseRegistry()
