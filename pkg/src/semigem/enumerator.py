"""Candidate semi-equivelar types for a surface of negative Euler characteristic.

A type with face lengths ``q_1..q_r`` around each of ``p`` vertices satisfies

    sum(1/q_i) + (-chi)/p = (r - 2) / 2

with every term positive when ``chi < 0``.  Face lengths are collected in
nondecreasing order by a bounded Egyptian-fraction recursion; ``p`` is solved
for at the end rather than searched.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

from .embedding import SeType, normalize_cycle
from .errors import NonNegativeChi


@dataclass(frozen=True, order=True)
class TypeMultiset:
    """Face lengths with multiplicities, ``((q, k), ...)`` with ``q`` increasing."""

    parts: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, lengths: Sequence[int]) -> "TypeMultiset":
        return cls(tuple(sorted(Counter(lengths).items())))

    @property
    def rank(self) -> int:
        return sum(k for _, k in self.parts)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(q for q, k in self.parts for _ in range(k))

    def __str__(self) -> str:
        return "{" + ",".join(f"{q}^{k}" if k > 1 else str(q) for q, k in self.parts) + "}"


def cyclic_arrangements(lengths: Sequence[int]) -> list[tuple[int, ...]]:
    """Distinct cyclic sequences of a multiset up to rotation and reflection.

    Normalized representatives, sorted.
    """
    lengths = tuple(sorted(lengths))
    if not lengths:
        return []
    first, rest = lengths[0], lengths[1:]
    # fixing the smallest element first loses nothing: every class has a rotation starting there
    return sorted({normalize_cycle((first,) + perm) for perm in set(permutations(rest))})


@dataclass(frozen=True)
class CandidateType:
    multiset: TypeMultiset
    p: int
    cyclic_expansions: tuple[SeType, ...]

    @property
    def rank(self) -> int:
        return self.multiset.rank

    def sort_key(self):
        return (self.rank, self.multiset.lengths, self.p)


def _check_chi(chi: int) -> None:
    if chi >= 0:
        raise NonNegativeChi(
            f"chi={chi}: only negative Euler characteristic is supported "
            "(chi >= 0 gives infinite families of vertex counts)")


def rank_bound(chi: int) -> int:
    """Largest rank possible with faces of length at least 4.

    Every face term is at most 1/4 and the vertex term at most ``-chi/4``.
    """
    return 4 - chi


def _solutions(chi: int, rank: int, floor: int):
    """All nondecreasing ``(q_1..q_rank, p)`` for one rank."""
    a = -chi
    out = []

    def rec(prefix: list[int], remaining: Fraction, lo: int):
        left = rank - len(prefix)
        if remaining <= 0:
            return
        if left == 0:
            p = a / remaining
            if p.denominator != 1:
                return
            p = int(p)
            if p % 2 or p < prefix[-1] or any(p % q for q in prefix):
                return
            out.append((tuple(prefix), p))
            return
        # terms left: `left` faces of length >= q and the vertex term a/p <= a/q
        q = lo
        while Fraction(left + a, q) >= remaining:
            rest = remaining - Fraction(1, q)
            # the remaining faces and vertex term must be able to absorb what is left
            if rest > 0:
                prefix.append(q)
                rec(prefix, rest, q)
                prefix.pop()
            q += 2

    rec([], Fraction(rank - 2, 2), floor)
    return out


def enumerate_types(chi: int, allow_two_gons: bool = False,
                    max_rank: Optional[int] = None) -> list[CandidateType]:
    """Every multiset of even face lengths and vertex count ``p`` that fits ``chi``.

    With ``allow_two_gons`` the face-length floor drops from 4 to 2.  Two-gons
    contribute 1/2 each, which is exactly what one extra color costs, so any
    solution can be padded with 2-gons forever; the rank is therefore capped
    at the 4-floor bound unless ``max_rank`` says otherwise.
    """
    _check_chi(chi)
    floor = 2 if allow_two_gons else 4
    top = rank_bound(chi) if max_rank is None else max_rank
    found = []
    for rank in range(3, top + 1):
        for qs, p in _solutions(chi, rank, floor):
            ms = TypeMultiset.of(qs)
            exps = tuple(SeType(p, c) for c in cyclic_arrangements(qs))
            found.append(CandidateType(ms, p, exps))
    found.sort(key=CandidateType.sort_key)
    return found


def expanded_types(candidates: Sequence[CandidateType]) -> list[SeType]:
    return [t for c in candidates for t in c.cyclic_expansions]


def check_type(t: SeType, chi: int) -> bool:
    """Exact face-count identity plus the parity and divisibility conditions."""
    qs, p = t.cycle, t.p
    if len(qs) < 3 or p <= 0 or p % 2:
        return False
    if any(q < 2 or q % 2 or p % q or q > p for q in qs):
        return False
    return 1 - Fraction(len(qs), 2) + sum(Fraction(1, q) for q in qs) == Fraction(chi, p)


def rank_excluded(rank: int, chi: int) -> bool:
    """Whether no gem of this rank can embed regularly on a surface of ``chi``.

    Odd ``chi`` forces a non-orientable surface of odd genus ``2 - chi``.  A
    bipartite graph embeds only on orientable surfaces, and a non-bipartite gem
    of rank at least 4 only on non-orientable surfaces of even genus.
    """
    return chi % 2 == 1 and rank >= 4


def admissibility_note(c: CandidateType, chi: int) -> str:
    if c.rank == 3:
        return "admissible"
    if rank_excluded(c.rank, chi):
        return "excluded"
    return "not excluded"


def gem_admissible_types(chi: int, allow_two_gons: bool = False) -> list[CandidateType]:
    return [c for c in enumerate_types(chi, allow_two_gons) if not rank_excluded(c.rank, chi)]
