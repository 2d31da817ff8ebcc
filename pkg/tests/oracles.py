"""Brute-force oracles, independent of the library's enumerations."""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product


def brute_force_asm_count(k: int) -> int:
    """Count {-1,0,1} matrices whose rows and columns alternate and sum to 1."""
    def alternating(v):
        nz = [x for x in v if x]
        return bool(nz) and nz[0] == 1 and all(a == -b for a, b in zip(nz, nz[1:]))
    rows = [r for r in product((-1, 0, 1), repeat=k) if alternating(r) and sum(r) == 1]
    return sum(all(alternating(col) and sum(col) == 1 for col in zip(*M)) for M in product(rows, repeat=k))


def triples_Q(k: int) -> set:
    out = set()
    for r in range(-k, k + 1):
        for s in range(-k, k + 1):
            if abs(r) + abs(s) <= k - 2 and (r + s - k) % 2 == 0:
                lo, hi = 2 * abs(s) - k + 2, k - 2 - 2 * abs(r)
                out.update((r, s, t) for t in range(lo, hi + 1, 4))
    return out


def brute_force_ideals(elements, ambient=None) -> int:
    """Downward-closed subsets of ``elements`` for the order generated on ``ambient``
    by the covers t' = t + 1, |r' - r| + |s' - s| = 1."""
    els = list(elements)
    amb = list(ambient or els)
    covers = {e: [d for d in amb if d[2] + 1 == e[2] and abs(d[0] - e[0]) + abs(d[1] - e[1]) == 1] for e in amb}
    below = {}
    for e in els:
        seen, stack = set(), list(covers[e])
        while stack:
            d = stack.pop()
            if d not in seen:
                seen.add(d)
                stack.extend(covers[d])
        below[e] = [d for d in els if d in seen]
    count = 0
    for size in range(len(els) + 1):
        for sub in combinations(els, size):
            S = set(sub)
            count += all(d in S for e in S for d in below[e])
    return count


def recursion_value(yv, j: int, k: int) -> Fraction:
    """F_{j,k} evaluated by running the defining recursion on numbers."""
    @lru_cache(maxsize=None)
    def F(j, k):
        if k <= 0:
            return Fraction(1)
        q = k - 1
        M = Fraction(1)
        for i in range(-q, q + 1):
            M *= yv(3 * i + j)
        return (F(j - 3, q) * F(j + 3, q) + M * F(j - 1, q) * F(j + 1, q)) / F(j, q - 1)
    return F(j, k)


