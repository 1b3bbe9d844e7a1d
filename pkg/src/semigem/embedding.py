"""Regular embeddings of colored graphs and semi-equivelar types.

For a cyclic color order ``eps``, the faces of the regular embedding are the
bi-colored cycles of consecutive color pairs ``(eps[i], eps[i+1])``.  All
counts are exact integers.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence, Union

from .core import Gem, bicolored_cycles, is_bipartite, require_connected
from .errors import ParseError, PermutationColorMismatch, VertexOutOfRange


@dataclass(frozen=True)
class CyclicPermutation:
    """A cyclic order of the colors ``0..d``, up to rotation and reversal.

    Stored rotated so that color 0 comes first and, for three or more colors,
    reversed if needed so that ``order[1] < order[-1]``.
    """

    order: tuple[int, ...]

    @classmethod
    def of(cls, seq: Sequence[int]) -> "CyclicPermutation":
        seq = tuple(seq)
        if sorted(seq) != list(range(len(seq))):
            raise PermutationColorMismatch(f"{seq} is not a permutation of 0..{len(seq) - 1}")
        k = seq.index(0)
        seq = seq[k:] + seq[:k]
        if len(seq) >= 3 and seq[1] > seq[-1]:
            seq = (seq[0],) + tuple(reversed(seq[1:]))
        return cls(seq)

    @classmethod
    def identity(cls, colors: int) -> "CyclicPermutation":
        return cls(tuple(range(colors)))

    def pairs(self) -> list[tuple[int, int]]:
        k = len(self.order)
        return [(self.order[i], self.order[(i + 1) % k]) for i in range(k)]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.order)) + ")"


EpsLike = Union[CyclicPermutation, Sequence[int], None]


def all_cyclic_permutations(colors: int) -> list[CyclicPermutation]:
    """One representative per class: ``d!/2`` classes for ``d >= 2``."""
    if colors < 3:
        return [CyclicPermutation.identity(colors)]
    out = []
    for rest in permutations(range(1, colors)):
        if rest[0] < rest[-1]:
            out.append(CyclicPermutation((0,) + rest))
    return out


def _eps(gem: Gem, eps: EpsLike) -> CyclicPermutation:
    if eps is None:
        return CyclicPermutation.identity(gem.color_count)
    if not isinstance(eps, CyclicPermutation):
        eps = CyclicPermutation.of(eps)
    if len(eps.order) != gem.color_count:
        raise PermutationColorMismatch(
            f"permutation {eps} has {len(eps.order)} colors, gem has {gem.color_count}")
    return eps


@dataclass(frozen=True)
class EmbeddingReport:
    permutation: CyclicPermutation
    faces: tuple[tuple[tuple[int, ...], ...], ...]
    v_count: int
    e_count: int
    f_count: int
    euler_characteristic: int
    orientable: bool

    def face_inventory(self) -> dict[tuple[int, int], int]:
        """Number of faces per consecutive color pair (pair stored sorted)."""
        return {tuple(sorted(pair)): len(fs) for pair, fs in zip(self.permutation.pairs(), self.faces)}

    def face_lengths(self) -> list[list[int]]:
        return [sorted({len(f) for f in fs}) for fs in self.faces]


def regular_embedding(gem: Gem, eps: EpsLike = None) -> EmbeddingReport:
    eps = _eps(gem, eps)
    require_connected(gem)
    faces = tuple(tuple(tuple(c) for c in bicolored_cycles(gem, a, b)) for a, b in eps.pairs())
    v = gem.n_vertices
    e = v * gem.color_count // 2
    f = sum(len(fs) for fs in faces)
    return EmbeddingReport(eps, faces, v, e, f, v - e + f, is_bipartite(gem))


def all_regular_embeddings(gem: Gem) -> list[EmbeddingReport]:
    require_connected(gem)
    return [regular_embedding(gem, eps) for eps in all_cyclic_permutations(gem.color_count)]


def vertex_face_sequence(gem: Gem, eps: EpsLike, v: int) -> tuple[int, ...]:
    eps = _eps(gem, eps)
    if not 1 <= v <= gem.n_vertices:
        raise VertexOutOfRange(f"vertex {v} not in 1..{gem.n_vertices}")
    out = []
    for a, b in eps.pairs():
        ma, mb = gem.matchings[a], gem.matchings[b]
        length = 0
        u = v
        while True:
            length += 2
            u = mb[ma[u]]
            if u == v:
                break
        out.append(length)
    return tuple(out)


# --- semi-equivelar types ------------------------------------------------

def normalize_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically smallest rotation or reflection of a cyclic sequence."""
    seq = tuple(seq)
    k = len(seq)
    cands = []
    for s in (seq, tuple(reversed(seq))):
        for r in range(k):
            cands.append(s[r:] + s[:r])
    return min(cands)


def _runs(seq: Sequence[int]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    for q in seq:
        if runs and runs[-1][0] == q:
            runs[-1] = (q, runs[-1][1] + 1)
        else:
            runs.append((q, 1))
    return runs


def display_groups(seq: Sequence[int]) -> list[tuple[int, int]]:
    """Maximal cyclic runs ``(length, multiplicity)`` in display order.

    Among all rotations and reflections whose first and last entries differ,
    pick the one whose runs, read as ``(-multiplicity, length)``, are smallest:
    longest runs first, then shorter face lengths first.  This reproduces the
    customary spellings ``(6^2,8)``, ``(10^2,4)``, ``(4^2,6^2)``, ``(4,6,4,6)``.
    """
    seq = tuple(seq)
    if len(set(seq)) == 1:
        return [(seq[0], len(seq))]
    k = len(seq)
    best = None
    for s in (seq, tuple(reversed(seq))):
        for r in range(k):
            rot = s[r:] + s[:r]
            if rot[0] == rot[-1]:
                continue
            runs = _runs(rot)
            key = [(-m, q) for q, m in runs]
            if best is None or key < best[0]:
                best = (key, runs)
    return best[1]


def render_groups(groups: Sequence[tuple[int, int]]) -> str:
    return "(" + ",".join(f"{q}^{m}" if m > 1 else f"{q}" for q, m in groups) + ")"


@dataclass(frozen=True)
class SeType:
    """Vertex count plus the cyclic face-length sequence around every vertex."""

    p: int
    cycle: tuple[int, ...]

    @classmethod
    def of(cls, cycle: Sequence[int], p: int) -> "SeType":
        return cls(p, normalize_cycle(cycle))

    @property
    def rank(self) -> int:
        return len(self.cycle)

    @property
    def notation(self) -> str:
        return f"[{render_groups(display_groups(self.cycle))};{self.p}]"

    @property
    def face_notation(self) -> str:
        return render_groups(display_groups(self.cycle))

    def __str__(self) -> str:
        return self.notation

    def euler_characteristic(self) -> Fraction:
        """chi implied by the exact face-count identity (may be non-integral)."""
        k = len(self.cycle)
        return self.p * (1 - Fraction(k, 2) + sum(Fraction(1, q) for q in self.cycle))

    @classmethod
    def parse(cls, text: str) -> "SeType":
        """Parse ``[(t1,...,tk);p]`` where each ``t`` is ``q`` or ``q^m``."""
        m = re.fullmatch(r"\s*\[\s*\(([^)]*)\)\s*;\s*(\d+)\s*\]\s*", text)
        if not m:
            raise ParseError(f"bad type string {text!r}; expected e.g. [(6^2,8);24]")
        seq: list[int] = []
        for tok in m.group(1).split(","):
            tm = re.fullmatch(r"\s*(\d+)\s*(?:\^\s*(\d+)\s*)?", tok)
            if not tm:
                raise ParseError(f"bad face term {tok!r} in {text!r}")
            q, mult = int(tm.group(1)), int(tm.group(2) or 1)
            if mult < 1 or q < 1:
                raise ParseError(f"bad face term {tok!r} in {text!r}")
            seq.extend([q] * mult)
        return cls.of(seq, int(m.group(2)))


def semi_equivelar_type(gem: Gem, eps: EpsLike = None) -> Optional[SeType]:
    """The type of ``gem`` under ``eps`` if every vertex sees the same faces.

    Each consecutive color pair must have all its bi-colored cycles of one
    length; 2-gons are reported as they are.
    """
    eps = _eps(gem, eps)
    require_connected(gem)
    seq = []
    for a, b in eps.pairs():
        lengths = {len(c) for c in bicolored_cycles(gem, a, b)}
        if len(lengths) != 1:
            return None
        seq.append(lengths.pop())
    return SeType.of(seq, gem.n_vertices)
