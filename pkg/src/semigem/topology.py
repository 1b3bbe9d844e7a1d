"""Surface recognition and (three-valued) manifold checks for colored graphs.

A 3-colored graph always represents a closed surface, determined by its
Euler characteristic and bipartiteness.  In higher rank the complex is a
manifold iff every residue missing one color represents a sphere; here that
is decided through 2-dimensional links (exact for d = 3) plus a greedy
dipole-cancellation certificate for 3-spheres (sufficient only).
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .core import Gem, build, bicolored_cycles, is_bipartite, is_connected, require_connected, residue
from .embedding import regular_embedding
from .errors import Disconnected, ParseError, WrongRank


@dataclass(frozen=True)
class Surface:
    orientable: bool
    genus: int

    def __post_init__(self):
        if self.genus < 0 or (not self.orientable and self.genus < 1):
            raise ValueError(f"invalid surface genus {self.genus} (orientable={self.orientable})")

    @classmethod
    def from_chi(cls, chi: int, orientable: bool) -> "Surface":
        if orientable:
            if chi > 2 or chi % 2:
                raise ValueError(f"no orientable surface has chi={chi}")
            return cls(True, (2 - chi) // 2)
        if chi > 1:
            raise ValueError(f"no non-orientable surface has chi={chi}")
        return cls(False, 2 - chi)

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus

    @property
    def name(self) -> str:
        if self.orientable:
            return "S2" if self.genus == 0 else f"S_{self.genus}"
        return "RP2" if self.genus == 1 else f"#{self.genus}RP2"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "Surface":
        """Accepts ``S2``, ``S_g``, ``RP2`` and ``#kRP2`` (spaces allowed)."""
        t = re.sub(r"\s+", "", text)
        if t in ("S2", "S_0", "S^2"):
            return cls(True, 0)
        m = re.fullmatch(r"S_(\d+)", t)
        if m:
            return cls(True, int(m.group(1)))
        if t == "RP2":
            return cls(False, 1)
        m = re.fullmatch(r"#_?(\d+)RP\^?2", t)
        if m and int(m.group(1)) >= 1:
            return cls(False, int(m.group(1)))
        raise ParseError(f"unrecognized surface name {text!r}")


def surface_of(gem: Gem) -> Surface:
    if gem.color_count != 3:
        raise WrongRank(f"surface_of needs a 3-colored graph, got {gem.color_count} colors")
    rep = regular_embedding(gem)
    return Surface.from_chi(rep.euler_characteristic, rep.orientable)


# --- manifold status -----------------------------------------------------

class Status(enum.Enum):
    MANIFOLD = "Manifold"
    NOT_MANIFOLD = "NotManifold"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class LinkFailure:
    """A 3-color residue component whose Euler characteristic is not 2.

    ``colors`` are parent colors; ``vertices`` parent vertex ids.
    ``removed`` is the color whose complementary residue contains it.
    """

    removed: tuple[int, ...]
    colors: tuple[int, ...]
    vertices: tuple[int, ...]
    chi: int


@dataclass(frozen=True)
class ManifoldStatus:
    status: Status
    witness: Optional[LinkFailure] = None
    trail: tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.status is Status.MANIFOLD


def _surface_chi(gem: Gem) -> int:
    v = gem.n_vertices
    return v - 3 * v // 2 + sum(len(bicolored_cycles(gem, a, b)) for a, b in ((0, 1), (1, 2), (0, 2)))


def _first_bad_link(gem: Gem) -> Optional[LinkFailure]:
    """First (colors, component) among 3-color residues with chi != 2."""
    for cols in combinations(gem.colors, 3):
        for r in residue(gem, cols):
            chi = _surface_chi(r.gem)
            if chi != 2:
                removed = tuple(c for c in gem.colors if c not in cols)
                return LinkFailure(removed, cols, r.vertices, chi)
    return None


def verify_link_failure(gem: Gem, w: LinkFailure) -> bool:
    """Recompute the witness component from scratch."""
    for r in residue(gem, w.colors):
        if r.vertices == w.vertices:
            return _surface_chi(r.gem) == w.chi and w.chi != 2
    return False


def manifold_status(gem: Gem) -> ManifoldStatus:
    require_connected(gem)
    d = gem.d
    if d <= 2:
        return ManifoldStatus(Status.MANIFOLD, trail=("rank 3: every 3-colored graph is a surface gem",))
    bad = _first_bad_link(gem)
    if bad is not None:
        return ManifoldStatus(Status.NOT_MANIFOLD, bad, (
            f"residue on colors {bad.colors} (vertices {list(bad.vertices)}) has chi={bad.chi}, not a 2-sphere",))
    if d == 3:
        return ManifoldStatus(Status.MANIFOLD, trail=("every 3-color residue is a 2-sphere",))
    if d > 4:
        return ManifoldStatus(Status.UNKNOWN, trail=(
            "all 3-color residues are 2-spheres; higher links are not decided for d > 4",))
    trail = ["all 3-color residues are 2-spheres"]
    uncertified = []
    for c in gem.colors:
        cols = [x for x in gem.colors if x != c]
        for r in residue(gem, cols):
            if sphere_certify(r.gem):
                trail.append(f"residue without color {c} on {len(r.vertices)} vertices: 3-sphere by dipole reduction")
            else:
                uncertified.append((c, r.vertices))
                trail.append(f"residue without color {c} on {len(r.vertices)} vertices: not certified")
    if uncertified:
        return ManifoldStatus(Status.UNKNOWN, trail=tuple(trail))
    return ManifoldStatus(Status.MANIFOLD, trail=tuple(trail))


# --- dipoles -------------------------------------------------------------

def dipole_colors(gem: Gem, x: int, y: int) -> tuple[int, ...]:
    return tuple(c for c in gem.colors if gem.matchings[c][x] == y)


def is_dipole(gem: Gem, x: int, y: int) -> bool:
    """True if ``x, y`` form a k-dipole, 1 <= k <= d.

    They must be joined by exactly the colors ``C`` and lie in different
    components of the residue on the remaining colors.
    """
    cols = dipole_colors(gem, x, y)
    if not cols or len(cols) > gem.d:
        return False
    rest = [c for c in gem.colors if c not in cols]
    seen = {x}
    stack = [x]
    while stack:
        u = stack.pop()
        for c in rest:
            w = gem.matchings[c][u]
            if w == y:
                return False
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return True


def cancel_dipole(gem: Gem, x: int, y: int) -> Gem:
    """Delete ``x`` and ``y`` and weld their hanging edges color by color."""
    if not is_dipole(gem, x, y):
        raise ValueError(f"({x}, {y}) is not a dipole")
    cols = set(dipole_colors(gem, x, y))
    tables = [list(m) for m in gem.matchings]
    for c in gem.colors:
        if c in cols:
            continue
        a, b = tables[c][x], tables[c][y]
        tables[c][a] = b
        tables[c][b] = a
    keep = [u for u in gem.vertices if u not in (x, y)]
    new_id = {u: i for i, u in enumerate(keep, start=1)}
    return build(len(keep), [[new_id[tables[c][u]] for u in keep] for c in gem.colors], name=gem.name)


def insert_dipole(gem: Gem, colors: tuple[int, ...], edges: dict[int, int]) -> Gem:
    """Inverse of :func:`cancel_dipole`.

    For every color ``c`` outside ``colors``, the color-``c`` edge at
    ``edges[c]`` is cut and the two new vertices ``n+1``, ``n+2`` are spliced
    in; ``n+1`` and ``n+2`` are joined by ``colors``.  The caller picks edges so
    that the new pair is a genuine dipole (checked).
    """
    n = gem.n_vertices
    x, y = n + 1, n + 2
    tables = [list(m) + [0, 0] for m in gem.matchings]
    for c in gem.colors:
        if c in colors:
            tables[c][x], tables[c][y] = y, x
        else:
            a = edges[c]
            b = tables[c][a]
            tables[c][a], tables[c][x] = x, a
            tables[c][b], tables[c][y] = y, b
    out = build(n + 2, [t[1:] for t in tables], name=gem.name)
    if not is_dipole(out, x, y):
        raise ValueError("chosen edges do not produce a dipole")
    return out


def find_dipole(gem: Gem) -> Optional[tuple[int, int]]:
    for x in gem.vertices:
        for c in gem.colors:
            y = gem.matchings[c][x]
            if x < y and is_dipole(gem, x, y):
                return x, y
    return None


def reduce_dipoles(gem: Gem) -> Gem:
    """Cancel dipoles greedily until none is left."""
    while gem.n_vertices > 2:
        pair = find_dipole(gem)
        if pair is None:
            break
        gem = cancel_dipole(gem, *pair)
    return gem


def sphere_certify(gem: Gem) -> bool:
    """Sufficient test that ``gem`` represents a d-sphere.

    ``False`` means "not certified", never "not a sphere".
    """
    if not is_connected(gem):
        raise Disconnected("sphere_certify needs a connected gem")
    if not is_bipartite(gem):
        return False
    if gem.d == 1:
        return True
    if gem.d == 2:
        if _surface_chi(gem) != 2:
            return False
    elif _first_bad_link(gem) is not None:
        return False
    return reduce_dipoles(gem).n_vertices == 2
