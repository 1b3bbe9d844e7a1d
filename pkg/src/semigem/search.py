"""Exhaustive search for semi-equivelar colored graphs of a prescribed type.

Colors are laid out along the identity cyclic order, so the bi-colored cycles
of colors ``i`` and ``i+1`` must all have length ``cycle[i]`` (in fixed color
mode every rotation and reflection of the cycle is tried).  Two colors are
fixed up front without loss of generality:

* color 0 pairs ``(1 2)(3 4)...``;
* color 1 closes each consecutive block of ``cycle[0]`` vertices into one
  alternating cycle, since the ``{0,1}`` residue is a disjoint union of such
  cycles and can always be relabeled that way.

The remaining colors are matched one at a time, always pairing the smallest
unmatched vertex, and any alternating path that outgrows its target length (or
cycle that closes at the wrong length) cuts the branch.  Completed graphs are
checked for connectivity and deduplicated by canonical form.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .core import ColorMode, Gem, build, canonical_form, is_connected
from .embedding import SeType, regular_embedding, semi_equivelar_type
from .errors import VertexBoundExceeded
from .topology import Status, Surface, manifold_status

DEFAULT_MAX_NODES = 20_000_000
RANK3_VERTEX_BOUND = 24
HIGH_RANK_VERTEX_BOUND = 8


@dataclass(frozen=True)
class SearchQuery:
    target: SeType
    require_gem: bool = False
    require_surface: Optional[Surface] = None
    color_mode: ColorMode = "permutable"
    max_nodes: int = DEFAULT_MAX_NODES
    force: bool = False

    def __post_init__(self):
        if self.max_nodes <= 0:
            raise ValueError("max_nodes must be positive")


@dataclass(frozen=True)
class SearchHit:
    gem: Gem
    key: bytes
    status: Status
    surface: Optional[Surface]


@dataclass
class SearchResult:
    query: SearchQuery
    hits: list[SearchHit]
    exhausted: bool
    nodes: int = 0
    prunes: Counter = field(default_factory=Counter)
    seconds: float = 0.0

    @property
    def found(self) -> list[Gem]:
        return [h.gem for h in self.hits]


def vertex_bound(rank: int) -> int:
    return RANK3_VERTEX_BOUND if rank == 3 else HIGH_RANK_VERTEX_BOUND


def infeasible_reason(t: SeType) -> Optional[str]:
    """Why no graph of this type can exist on structural grounds, if so."""
    if t.p % 2:
        return f"odd vertex count {t.p}"
    if t.rank < 2:
        return "need at least two colors"
    for q in t.cycle:
        if q % 2 or q < 2:
            return f"face length {q} is not a positive even number"
        if t.p % q:
            return f"face length {q} does not divide {t.p}"
    return None


class _Budget(Exception):
    pass


def _initial_tables(p: int, first: int) -> tuple[list[int], list[int]]:
    m0 = [0] * (p + 1)
    m1 = [0] * (p + 1)
    for u in range(1, p + 1, 2):
        m0[u], m0[u + 1] = u + 1, u
    for b in range(0, p, first):
        block = list(range(b + 1, b + first + 1))
        # consecutive (b+2, b+3), ..., and (b+first, b+1) close the cycle
        for i in range(1, first, 2):
            u, w = block[i], block[(i + 1) % first]
            m1[u], m1[w] = w, u
    return m0, m1


def _trace(ma: list[int], mb: list[int], u: int, limit: int):
    """Walk the alternating ``a/b`` path through ``u``; ``mb`` may be partial.

    Returns ``(closed, edges)``.  Stops early once the count passes ``limit``.
    """
    # forward: leave u by color a, then b, a, ...
    edges = 0
    v = u
    use_a = True
    while True:
        w = ma[v] if use_a else mb[v]
        if not w:
            break
        edges += 1
        if w == u:
            return True, edges
        if edges > limit:
            return False, edges
        v = w
        use_a = not use_a
    # open path: walk backward from u starting with color b
    v = u
    use_a = False
    while True:
        w = ma[v] if use_a else mb[v]
        if not w:
            break
        edges += 1
        if edges > limit:
            return False, edges
        v = w
        use_a = not use_a
    return False, edges


def _arrangements(t: SeType, mode: ColorMode) -> list[tuple[int, ...]]:
    """Face-length assignments to the color pairs that must be tried.

    Renaming colors along the cyclic order turns any rotation or reflection
    of the cycle into any other, so one suffices when colors are permutable.
    """
    if mode == "permutable":
        return [t.cycle]
    k = len(t.cycle)
    out = set()
    for s in (t.cycle, t.cycle[::-1]):
        out.update(s[i:] + s[:i] for i in range(k))
    return sorted(out)


def _run(q: SearchQuery, seq: tuple[int, ...], stats: Counter, nodes: list[int], emit) -> None:
    p = q.target.p
    r = len(seq)
    m0, m1 = _initial_tables(p, seq[0])
    tables = [m0, m1] + [[0] * (p + 1) for _ in range(r - 2)]

    def ok(c: int, u: int) -> bool:
        # pairs (c-1, c) and, for the last color, (c, 0)
        checks = [(tables[c - 1], seq[c - 1])]
        if c == r - 1:
            checks.append((tables[0], seq[r - 1]))
        for other, want in checks:
            closed, e = _trace(other, tables[c], u, want)
            if closed:
                if e != want:
                    stats["closed_wrong_length"] += 1
                    return False
            elif e >= want:
                stats["open_too_long"] += 1
                return False
        return True

    def fill(c: int, start: int):
        nodes[0] += 1
        if nodes[0] > q.max_nodes:
            raise _Budget
        mc = tables[c]
        u = start
        while u <= p and mc[u]:
            u += 1
        if u > p:
            if c + 1 < r:
                fill(c + 1, 1)
            else:
                emit([tb[1:] for tb in tables])
            return
        for w in range(u + 1, p + 1):
            if mc[w]:
                continue
            mc[u], mc[w] = w, u
            if ok(c, u):
                fill(c, u + 1)
            mc[u] = mc[w] = 0

    if r == 2:
        if seq[0] == seq[1] == p:
            emit([m0[1:], m1[1:]])
    else:
        fill(2, 1)


def _surface(gem: Gem) -> Surface:
    rep = regular_embedding(gem)
    return Surface.from_chi(rep.euler_characteristic, rep.orientable)


def search(query: SearchQuery) -> SearchResult:
    t = query.target
    t0 = time.perf_counter()
    bound = vertex_bound(t.rank)
    if t.p > bound and not query.force:
        raise VertexBoundExceeded(
            f"{t} has {t.p} vertices; the search bound for rank {t.rank} is {bound} (use force to override)")
    stats: Counter = Counter()
    seen: dict[bytes, SearchHit] = {}
    if infeasible_reason(t):
        stats["infeasible"] += 1
        return SearchResult(query, [], True, 0, stats, time.perf_counter() - t0)

    def emit(rows):
        g = build(t.p, rows)
        if not is_connected(g):
            stats["disconnected"] += 1
            return
        key = canonical_form(g, query.color_mode)
        if key in seen:
            stats["duplicate"] += 1
            return
        # independent recheck of what the pruning claims
        if semi_equivelar_type(g) != t:
            stats["recheck_failed"] += 1
            return
        st = manifold_status(g).status
        try:
            surf = _surface(g)
        except ValueError:
            surf = None
        seen[key] = SearchHit(g, key, st, surf)

    nodes = [0]
    exhausted = True
    try:
        for seq in _arrangements(t, query.color_mode):
            _run(query, seq, stats, nodes, emit)
    except _Budget:
        exhausted = False
        nodes[0] -= 1
    hits = []
    for key in sorted(seen):
        h = seen[key]
        if query.require_gem and h.status is not Status.MANIFOLD:
            stats["not_gem"] += 1
            continue
        if query.require_surface is not None and h.surface != query.require_surface:
            stats["wrong_surface"] += 1
            continue
        hits.append(h)
    return SearchResult(query, hits, exhausted, nodes[0], stats, time.perf_counter() - t0)


def verify_hit(gem: Gem, query: SearchQuery) -> bool:
    """Recheck a returned graph from scratch against the query's filters."""
    if semi_equivelar_type(gem) != query.target:
        return False
    if query.require_gem and manifold_status(gem).status is not Status.MANIFOLD:
        return False
    if query.require_surface is not None and _surface(gem) != query.require_surface:
        return False
    return True
