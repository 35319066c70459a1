"""Partitions as trimmed tuples, their orders, and the spectral points."""

from __future__ import annotations

from functools import cmp_to_key, lru_cache
from itertools import combinations
from typing import Iterable, List, NamedTuple, Sequence, Tuple

from .qtpoly import QTPoly

Partition = Tuple[int, ...]

EMPTY: Partition = ()


def partition(parts: Iterable[int]) -> Partition:
    """Validate and trim trailing zeros."""
    p = [int(x) for x in parts]
    if any(x < 0 for x in p):
        raise ValueError(f"negative part in {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ValueError(f"{p} is not weakly decreasing")
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def parse_partition(text: str) -> Partition:
    """``"2,1"`` -> ``(2, 1)``; ``"[]"`` or ``""`` -> ``()``."""
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if not s.strip():
        return EMPTY
    return partition(int(x) for x in s.split(","))


def format_partition(lam: Partition) -> str:
    return ",".join(map(str, lam)) if lam else "[]"


def size(lam: Partition) -> int:
    return sum(lam)


def padded(lam: Partition, n: int) -> Tuple[int, ...]:
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than {n} parts")
    return lam + (0,) * (n - len(lam))


@lru_cache(maxsize=None)
def partitions_of(k: int, max_length: int, max_part: int | None = None) -> Tuple[Partition, ...]:
    """Partitions of ``k`` with at most ``max_length`` parts, in lex-descending order."""
    if max_part is None:
        max_part = k
    if k == 0:
        return (EMPTY,)
    if max_length == 0:
        return ()
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, max_length - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    if sum(mu) != sum(lam):
        return False
    a = b = 0
    for i in range(max(len(mu), len(lam))):
        a += mu[i] if i < len(mu) else 0
        b += lam[i] if i < len(lam) else 0
        if a > b:
            return False
    return True


def order_less(mu: Partition, lam: Partition) -> bool:
    """Default total order: by size, then lexicographic on parts."""
    sm, sl = sum(mu), sum(lam)
    if sm != sl:
        return sm < sl
    return mu < lam


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return EMPTY
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def order_less_conjugate(mu: Partition, lam: Partition) -> bool:
    """Alternate total order: by size, then reverse lex on conjugates.

    Conjugation reverses dominance, so this also refines it, yet it differs
    from the default on incomparable pairs such as (4,1,1) and (3,3).
    """
    sm, sl = sum(mu), sum(lam)
    if sm != sl:
        return sm < sl
    return conjugate(mu) > conjugate(lam)


ORDERS = {"lex": order_less, "conjugate": order_less_conjugate}


def sort_key(order: str = "lex"):
    less = ORDERS[order]

    def cmp(a, b):
        if a == b:
            return 0
        return -1 if less(a, b) else 1

    return cmp_to_key(cmp)


def enumerate_partitions(max_size: int, max_length: int, order: str = "lex") -> List[Partition]:
    """Every partition with ``|lam| <= max_size`` and length ``<= max_length``, ascending."""
    out = [p for k in range(max_size + 1) for p in partitions_of(k, max_length)]
    out.sort(key=sort_key(order))
    return out


def contains(mu: Partition, lam: Partition) -> bool:
    """Diagram containment ``mu ⊂ lam``."""
    if len(mu) > len(lam):
        return False
    return all(m <= l for m, l in zip(mu, lam))


class StripMove(NamedTuple):
    target: Partition
    rows: Tuple[int, ...]  # 0-based rows that gained a box


def vertical_strips(lam: Partition, k: int, n: int) -> List[StripMove]:
    """All ``nu`` with ``nu/lam`` a vertical ``k``-strip inside ``n`` rows."""
    base = padded(lam, n)
    out = []
    for rows in combinations(range(n), k):
        nu = list(base)
        for i in rows:
            nu[i] += 1
        if all(nu[i] >= nu[i + 1] for i in range(n - 1)):
            out.append(StripMove(partition(nu), rows))
    return out


def spectral_exponents(lam: Partition, n: int) -> List[Tuple[int, int]]:
    """``(a_i, b_i)`` with coordinate ``i`` of the spectral point equal to q^a_i t^b_i."""
    return [(x, n - 1 - i) for i, x in enumerate(padded(lam, n))]


def spectral_point(lam: Partition, n: int, field) -> List:
    return [field.monomial(a, b) for a, b in spectral_exponents(lam, n)]


def elementary_at(coords: Sequence, k: int, field):
    total = field.zero
    for rows in combinations(range(len(coords)), k):
        term = field.one
        for i in rows:
            term = term * coords[i]
        total = total + term
    return total


@lru_cache(maxsize=None)
def eigenvalue_poly(lam: Partition, k: int, n: int) -> QTPoly:
    """``e_k`` of the spectral point as an integer polynomial."""
    exps = spectral_exponents(lam, n)
    terms = {}
    for rows in combinations(range(n), k):
        a = sum(exps[i][0] for i in rows)
        b = sum(exps[i][1] for i in rows)
        terms[(a, b)] = terms.get((a, b), 0) + 1
    return QTPoly(terms)


def eigenvalue_ek(lam: Partition, k: int, n: int, field):
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    return field.from_poly(eigenvalue_poly(lam, k, n))
