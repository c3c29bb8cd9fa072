"""Trial-division oracles, independent of the package's sieving code."""

from __future__ import annotations


def trial_is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def trial_count(lo: int, hi: int, lo_open: bool = False, hi_open: bool = False) -> int:
    a = lo + 1 if lo_open else lo
    b = hi - 1 if hi_open else hi
    return sum(1 for x in range(a, b + 1) if trial_is_prime(x))


def trial_pi(x: int) -> int:
    return trial_count(0, x)


def trial_nth(i: int) -> int:
    count = 0
    n = 1
    while count < i:
        n += 1
        if trial_is_prime(n):
            count += 1
    return n


class TrialPrefix:
    """Prefix sums over trial-division primality; pure bookkeeping on top
    of the per-number trial predicate, so many interval queries stay cheap."""

    def __init__(self, limit: int):
        self.limit = limit
        prefix = [0] * (limit + 1)
        running = 0
        for x in range(limit + 1):
            if trial_is_prime(x):
                running += 1
            prefix[x] = running
        self.prefix = prefix

    def pi(self, x: int) -> int:
        if x < 0:
            return 0
        return self.prefix[min(x, self.limit)]

    def count(self, lo: int, hi: int, lo_open: bool = False, hi_open: bool = False) -> int:
        a = lo + 1 if lo_open else lo
        b = hi - 1 if hi_open else hi
        if a > b:
            return 0
        a = max(a, 0)
        return self.pi(b) - self.pi(a - 1)
