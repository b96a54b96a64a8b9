"""Prime sets and pi-part arithmetic."""

from __future__ import annotations

import math
from typing import Iterable


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_factorization(n: int) -> dict[int, int]:
    """n >= 1 -> {prime: exponent}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> list[int]:
    return sorted(prime_factorization(n))


class PiSet:
    """A finite set of primes; the complement is implicit."""

    __slots__ = ("primes",)

    def __init__(self, primes: Iterable[int]):
        ps = sorted(set(int(p) for p in primes))
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "primes", tuple(ps))

    def __setattr__(self, name, value):
        raise AttributeError("PiSet is immutable")

    @staticmethod
    def parse(text: str) -> "PiSet":
        """Parse a comma-separated prime list, e.g. '2,3'."""
        parts = [s.strip() for s in text.split(",") if s.strip()]
        if not parts:
            raise ValueError("empty prime list")
        try:
            return PiSet(int(s) for s in parts)
        except ValueError as exc:
            raise ValueError(f"bad prime list {text!r}: {exc}") from None

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __eq__(self, other):
        return isinstance(other, PiSet) and self.primes == other.primes

    def __hash__(self):
        return hash(self.primes)

    def __repr__(self):
        return "PiSet({" + ",".join(map(str, self.primes)) + "})"

    def key(self) -> str:
        return ",".join(map(str, self.primes))


def pi_part(n: int, pi: PiSet) -> int:
    """Largest divisor of n whose prime factors all lie in pi."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = 1
    for p in pi:
        while n % p == 0:
            out *= p
            n //= p
    return out


def is_pi_number(n: int, pi: PiSet) -> bool:
    return pi_part(n, pi) == n


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out
