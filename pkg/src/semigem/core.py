"""Edge-colored regular graphs stored as one fixed-point-free involution per color.

Vertices are numbered ``1..n``; colors are ``0..d``.  A :class:`Gem` is
immutable once built, so it can be shared freely.
"""
from __future__ import annotations

import re
import struct
from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Literal, Mapping, Optional, Sequence, Union

from .errors import (
    Disconnected,
    EmptyColorSet,
    FixedPoint,
    MissingColor,
    NotInvolution,
    OddVertexCount,
    ParseError,
    SameColor,
    SingletonColorSet,
    VertexOutOfRange,
)

ColorMode = Literal["fixed", "permutable"]
MatchingSpec = Union[Mapping[int, int], Sequence[int], Sequence[Sequence[int]]]


@dataclass(frozen=True)
class Gem:
    """A (d+1)-regular properly edge-colored multigraph without loops.

    ``matchings[c][u]`` is the color-``c`` neighbor of ``u``; index 0 of
    every table is an unused placeholder so lookups stay 1-based.
    """

    n_vertices: int
    matchings: tuple[tuple[int, ...], ...]
    name: str = ""

    @property
    def color_count(self) -> int:
        return len(self.matchings)

    @property
    def d(self) -> int:
        return len(self.matchings) - 1

    @property
    def colors(self) -> range:
        return range(len(self.matchings))

    @property
    def vertices(self) -> range:
        return range(1, self.n_vertices + 1)

    def neighbor(self, u: int, c: int) -> int:
        return self.matchings[c][u]

    def pairs(self, c: int) -> list[tuple[int, int]]:
        """The color-``c`` edges as sorted vertex pairs."""
        m = self.matchings[c]
        return [(u, m[u]) for u in self.vertices if u < m[u]]

    def edges(self) -> list[tuple[int, int, int]]:
        """All edges as ``(u, v, color)`` triples with ``u < v``."""
        return [(u, v, c) for c in self.colors for u, v in self.pairs(c)]

    def relabel(self, vertex_map: Mapping[int, int] | Sequence[int],
                color_map: Optional[Sequence[int]] = None) -> "Gem":
        """Image of this gem under a vertex bijection and optional color bijection.

        ``vertex_map[u]`` is the new id of ``u`` (a sequence is indexed from 1,
        with a placeholder at index 0).  ``color_map[c]`` is the new color of ``c``.
        """
        k = self.color_count
        cmap = list(range(k)) if color_map is None else list(color_map)
        new = [[0] * (self.n_vertices + 1) for _ in range(k)]
        for c in self.colors:
            m = self.matchings[c]
            target = new[cmap[c]]
            for u in self.vertices:
                target[vertex_map[u]] = vertex_map[m[u]]
        return build(self.n_vertices, [t[1:] for t in new], name=self.name)

    def __str__(self) -> str:
        return format_gem(self)


def _table_from_spec(n: int, spec: MatchingSpec, color: int) -> list[int]:
    table = [0] * (n + 1)
    if isinstance(spec, Mapping):
        items = list(spec.items())
    else:
        spec = list(spec)
        if spec and not isinstance(spec[0], (int,)):
            items = []
            for pair in spec:
                a, b = pair
                items.append((a, b))
                items.append((b, a))
        else:
            if len(spec) != n:
                raise NotInvolution(f"color {color}: neighbor table has {len(spec)} entries, expected {n}")
            items = list(zip(range(1, n + 1), spec))
    for u, w in items:
        for x in (u, w):
            if not isinstance(x, int) or not 1 <= x <= n:
                raise VertexOutOfRange(f"color {color}: vertex {x!r} not in 1..{n}")
        if u == w:
            raise FixedPoint(f"color {color}: vertex {u} is matched to itself (loop)")
        if table[u] not in (0, w):
            raise NotInvolution(f"color {color}: vertex {u} matched to both {table[u]} and {w}")
        table[u] = w
    for u in range(1, n + 1):
        if table[u] == 0:
            raise NotInvolution(f"color {color}: vertex {u} is unmatched")
        if table[table[u]] != u:
            raise NotInvolution(f"color {color}: {u}->{table[u]} but {table[u]}->{table[table[u]]}")
    return table


def build(n: int, matchings: Sequence[Optional[MatchingSpec]], colors: Optional[int] = None,
          name: str = "") -> Gem:
    """Validate per-color matchings and return a :class:`Gem`.

    Each matching may be a ``{u: v}`` mapping, a list of ``(u, v)`` pairs, or a
    list of ``n`` neighbors for vertices ``1..n``.  ``colors`` defaults to
    ``len(matchings)``; a ``None`` or missing entry raises :class:`MissingColor`.
    """
    if colors is None:
        colors = len(matchings)
    if n % 2:
        raise OddVertexCount(f"vertex count {n} is odd; a perfect matching needs an even count")
    if n < 2:
        raise VertexOutOfRange(f"need at least 2 vertices, got {n}")
    if colors < 2:
        raise MissingColor(f"need at least 2 colors, got {colors}")
    if len(matchings) > colors:
        raise MissingColor(f"{len(matchings)} matchings given for {colors} colors")
    tables = []
    for c in range(colors):
        spec = matchings[c] if c < len(matchings) else None
        if spec is None or (not isinstance(spec, Mapping) and len(spec) == 0):
            raise MissingColor(f"color {c} has no matching")
        tables.append(tuple(_table_from_spec(n, spec, c)))
    return Gem(n, tuple(tables), name)


def disjoint_union(*gems: Gem) -> Gem:
    k = gems[0].color_count
    if any(g.color_count != k for g in gems):
        raise MissingColor("disjoint union needs equal color counts")
    tables: list[list[int]] = [[] for _ in range(k)]
    offset = 0
    for g in gems:
        for c in range(k):
            tables[c].extend(g.matchings[c][u] + offset for u in g.vertices)
        offset += g.n_vertices
    return build(offset, tables)


def _components(gem: Gem, colors: Iterable[int]) -> list[list[int]]:
    colors = list(colors)
    seen = [False] * (gem.n_vertices + 1)
    comps = []
    for s in gem.vertices:
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for c in colors:
                w = gem.matchings[c][u]
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(gem: Gem) -> bool:
    return len(_components(gem, gem.colors)) == 1


def require_connected(gem: Gem) -> None:
    if not is_connected(gem):
        raise Disconnected(f"gem {gem.name or '<unnamed>'} is not connected")


def is_bipartite(gem: Gem) -> bool:
    side = [-1] * (gem.n_vertices + 1)
    for s in gem.vertices:
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for c in gem.colors:
                w = gem.matchings[c][u]
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    stack.append(w)
                elif side[w] == side[u]:
                    return False
    return True


def bicolored_cycles(gem: Gem, i: int, j: int) -> list[list[int]]:
    """Components of the {i, j}-subgraph, each as the alternating vertex walk.

    Walks start at the smallest unvisited vertex and leave it along color
    ``i``.  A 2-cycle (an i-edge parallel to a j-edge) is reported as ``[u, v]``.
    """
    if i == j:
        raise SameColor(f"bi-colored cycle needs two distinct colors, got {i} twice")
    for c in (i, j):
        if c not in gem.colors:
            raise MissingColor(f"color {c} not in 0..{gem.d}")
    mi, mj = gem.matchings[i], gem.matchings[j]
    seen = [False] * (gem.n_vertices + 1)
    cycles = []
    for s in gem.vertices:
        if seen[s]:
            continue
        cyc = []
        u = s
        while True:
            seen[u] = True
            cyc.append(u)
            v = mi[u]
            seen[v] = True
            cyc.append(v)
            u = mj[v]
            if u == s:
                break
        cycles.append(cyc)
    return cycles


@dataclass(frozen=True)
class Residue:
    """One connected component of a color-restricted subgraph.

    ``gem`` uses local vertex ids ``1..k`` and local colors ``0..len(colors)-1``;
    ``vertices[i-1]`` is the parent id of local vertex ``i`` and
    ``colors[c]`` the parent color of local color ``c``.
    """

    gem: Gem
    vertices: tuple[int, ...]
    colors: tuple[int, ...]


def residue(gem: Gem, colors: Iterable[int]) -> list[Residue]:
    cols = tuple(sorted(set(colors)))
    if not cols:
        raise EmptyColorSet("residue needs a nonempty color set")
    if len(cols) == 1:
        raise SingletonColorSet("residue needs at least two colors")
    for c in cols:
        if c not in gem.colors:
            raise MissingColor(f"color {c} not in 0..{gem.d}")
    out = []
    for comp in _components(gem, cols):
        local = {v: k for k, v in enumerate(comp, start=1)}
        tables = [[local[gem.matchings[c][v]] for v in comp] for c in cols]
        sub = build(len(comp), tables, name=f"{gem.name}|{''.join(map(str, cols))}")
        out.append(Residue(sub, tuple(comp), cols))
    return out


# --- canonical forms -----------------------------------------------------

def _color_orders(k: int, mode: ColorMode) -> Iterable[tuple[int, ...]]:
    if mode == "fixed":
        return [tuple(range(k))]
    if mode == "permutable":
        return permutations(range(k))
    raise ValueError(f"unknown color mode {mode!r}")


def _bfs_code(gem: Gem, start: int, order: Sequence[int], best: Optional[list[int]]):
    """Label vertices in BFS order from ``start``, scanning colors in ``order``.

    Returns ``(code, labels)`` where ``code`` lists, for new vertex 1, 2, ...,
    the new ids of its neighbors in color order.  Aborts with ``None`` as soon
    as the partial code exceeds ``best``.
    """
    n = gem.n_vertices
    labels = [0] * (n + 1)
    labels[start] = 1
    queue = [start]
    nxt = 2
    code: list[int] = []
    tables = [gem.matchings[c] for c in order]
    head = 0
    pos = 0
    tight = best is not None
    while head < len(queue):
        u = queue[head]
        head += 1
        for m in tables:
            w = m[u]
            if not labels[w]:
                labels[w] = nxt
                nxt += 1
                queue.append(w)
            val = labels[w]
            if tight:
                b = best[pos]
                if val > b:
                    return None
                if val < b:
                    tight = False
            code.append(val)
            pos += 1
    return code, labels


def _canonical(gem: Gem, mode: ColorMode):
    best_code = None
    best_witness = None
    for order in _color_orders(gem.color_count, mode):
        for s in gem.vertices:
            res = _bfs_code(gem, s, order, best_code)
            if res is None:
                continue
            code, labels = res
            if best_code is None or code < best_code:
                best_code, best_witness = code, (labels, order)
    return best_code, best_witness


def _pack(n: int, k: int, code: Sequence[int]) -> bytes:
    return struct.pack(f">HH{len(code)}H", n, k, *code)


def canonical_form(gem: Gem, color_mode: ColorMode = "fixed") -> bytes:
    """Canonical byte string of a connected gem.

    Equal for two connected gems iff they are isomorphic: by vertex relabeling
    alone (``"fixed"``) or also allowing any color permutation (``"permutable"``).
    """
    require_connected(gem)
    code, _ = _canonical(gem, color_mode)
    return _pack(gem.n_vertices, gem.color_count, code)


def canonical_labeling(gem: Gem, color_mode: ColorMode = "fixed") -> tuple[bytes, list[int], tuple[int, ...]]:
    """Canonical form plus the labeling attaining it.

    Returns ``(form, labels, order)``: ``labels[u]`` is the canonical id of
    ``u`` and ``order[k]`` the original color placed at canonical position ``k``.
    """
    require_connected(gem)
    code, (labels, order) = _canonical(gem, color_mode)
    return _pack(gem.n_vertices, gem.color_count, code), labels, order


@dataclass(frozen=True)
class Isomorphism:
    vertex_map: dict[int, int]
    color_map: tuple[int, ...]

    def verify(self, source: Gem, target: Gem) -> bool:
        if source.n_vertices != target.n_vertices or source.color_count != target.color_count:
            return False
        if sorted(self.vertex_map.values()) != list(target.vertices):
            return False
        if sorted(self.color_map) != list(target.colors):
            return False
        for c in source.colors:
            mc = source.matchings[c]
            tc = target.matchings[self.color_map[c]]
            for u in source.vertices:
                if tc[self.vertex_map[u]] != self.vertex_map[mc[u]]:
                    return False
        return True


def _connected_isomorphism(g1: Gem, g2: Gem, mode: ColorMode) -> Optional[Isomorphism]:
    c1, (l1, o1) = _canonical(g1, mode)
    c2, (l2, o2) = _canonical(g2, mode)
    if c1 != c2:
        return None
    inv2 = {lab: v for v, lab in enumerate(l2) if v}
    vmap = {u: inv2[l1[u]] for u in g1.vertices}
    cmap = [0] * g1.color_count
    for a, b in zip(o1, o2):
        cmap[a] = b
    return Isomorphism(vmap, tuple(cmap))


def isomorphic(g1: Gem, g2: Gem, color_mode: ColorMode = "fixed") -> Optional[Isomorphism]:
    """An isomorphism ``g1 -> g2`` if one exists, else ``None``.

    Disconnected inputs are matched component by component.
    """
    if g1.n_vertices != g2.n_vertices or g1.color_count != g2.color_count:
        return None
    comps1 = _components(g1, g1.colors)
    comps2 = _components(g2, g2.colors)
    if len(comps1) != len(comps2):
        return None
    if len(comps1) == 1:
        return _connected_isomorphism(g1, g2, color_mode)
    parts1 = residue(g1, g1.colors)
    parts2 = residue(g2, g2.colors)
    for order in _color_orders(g1.color_count, color_mode):
        # g1 color c maps to g2 color order[c]
        keyed2 = [(canonical_form(p.gem, "fixed"), p) for p in parts2]
        used = [False] * len(parts2)
        vmap: dict[int, int] = {}
        ok = True
        for p in parts1:
            image = p.gem.relabel(list(range(p.gem.n_vertices + 1)), order)
            key = canonical_form(image, "fixed")
            for idx, (k2, q) in enumerate(keyed2):
                if not used[idx] and k2 == key:
                    used[idx] = True
                    iso = _connected_isomorphism(image, q.gem, "fixed")
                    for u_local, w_local in iso.vertex_map.items():
                        vmap[p.vertices[u_local - 1]] = q.vertices[w_local - 1]
                    break
            else:
                ok = False
                break
        if ok:
            return Isomorphism(vmap, tuple(order))
    return None


# --- text format ---------------------------------------------------------

_HEADER = re.compile(r"^(gem|colors|vertices)\s+(\S.*)$")
_COLOR = re.compile(r"^color\s+(\d+)\s*:\s*(.*)$")


def parse_gem(text: str, source: str = "<string>") -> Gem:
    """Parse the line-oriented gem text format.

    ::

        gem <name>
        colors <d+1>
        vertices <n>
        color 0: 1-2 3-4 ...

    ``#`` starts a comment.  Raises :class:`ParseError` for syntax problems
    and the validation errors of :func:`build` for structural ones.
    """
    name = None
    n_colors = None
    n = None
    colors: dict[int, list[tuple[int, int]]] = {}
    color_lines: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _COLOR.match(line)
        if m:
            if n_colors is None or n is None:
                raise ParseError(f"{source}:{lineno}: color line before header", lineno)
            c = int(m.group(1))
            if c in colors:
                raise ParseError(f"{source}:{lineno}: color {c} listed twice", lineno)
            pairs = []
            for col, tok in _tokens(m.group(2)):
                pm = re.fullmatch(r"(\d+)\s*-\s*(\d+)", tok)
                if not pm:
                    raise ParseError(f"{source}:{lineno}:{col}: bad pair {tok!r}", lineno, col)
                pairs.append((int(pm.group(1)), int(pm.group(2))))
            colors[c] = pairs
            color_lines[c] = lineno
            continue
        m = _HEADER.match(line)
        if not m:
            raise ParseError(f"{source}:{lineno}: unrecognized line {line!r}", lineno)
        key, val = m.group(1), m.group(2).strip()
        if key == "gem":
            name = val
        else:
            if not val.isdigit():
                raise ParseError(f"{source}:{lineno}: {key} expects an integer, got {val!r}", lineno)
            if key == "colors":
                n_colors = int(val)
            else:
                n = int(val)
    if name is None or n_colors is None or n is None:
        raise ParseError(f"{source}: missing header line (gem/colors/vertices)", 1)
    for c in colors:
        if c >= n_colors:
            raise ParseError(f"{source}:{color_lines[c]}: color {c} outside 0..{n_colors - 1}", color_lines[c])
    specs: list[Optional[list[tuple[int, int]]]] = [colors.get(c) for c in range(n_colors)]
    try:
        return build(n, specs, colors=n_colors, name=name)
    except NotInvolution as exc:
        # point at the offending color line when we can
        m = re.match(r"color (\d+)", str(exc))
        line = color_lines.get(int(m.group(1))) if m else None
        exc.line = line
        raise


def _tokens(s: str):
    for m in re.finditer(r"\S+(?:\s*-\s*\S+)?", s):
        yield m.start() + 1, m.group(0)


def format_gem(gem: Gem, name: Optional[str] = None) -> str:
    lines = [f"gem {name or gem.name or 'unnamed'}", f"colors {gem.color_count}", f"vertices {gem.n_vertices}"]
    for c in gem.colors:
        lines.append(f"color {c}: " + " ".join(f"{u}-{v}" for u, v in gem.pairs(c)))
    return "\n".join(lines) + "\n"


def load_gem(path) -> Gem:
    from pathlib import Path

    p = Path(path)
    return parse_gem(p.read_text(encoding="utf-8"), source=str(p))


def dipole_gem(colors: int) -> Gem:
    """The 2-vertex gem with ``colors`` parallel edges."""
    return build(2, [[(1, 2)]] * colors, name=f"dipole{colors}")
