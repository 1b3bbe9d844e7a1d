"""Bundled gems of the thirteen figures, with their declared properties.

The data directory holds one gem file per figure plus ``manifest.json``.
Set ``SEMIGEM_CATALOG`` to point at another directory with the same layout.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from ..core import Gem, bicolored_cycles, is_bipartite, is_connected, parse_gem
from ..embedding import SeType, all_cyclic_permutations, normalize_cycle, regular_embedding, semi_equivelar_type
from ..errors import GemError, ParseError
from ..topology import Status, Surface, manifold_status, surface_of, verify_link_failure

DATA_DIR = Path(__file__).resolve().parent / "data"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    gem: Gem
    declared_type: SeType
    expected_surface: Optional[Surface]
    expected_status: Status
    transcription_notes: str = ""
    face_counts: dict = field(default_factory=dict)
    named_faces: dict = field(default_factory=dict)
    embedding: Optional[tuple[int, ...]] = None
    path: Optional[Path] = None


def catalog_dir(path: Union[str, os.PathLike, None] = None) -> Path:
    if path is not None:
        return Path(path)
    env = os.environ.get("SEMIGEM_CATALOG")
    return Path(env) if env else DATA_DIR


def _pair(key: str) -> tuple[int, int]:
    a, b = (int(t) for t in key.split(","))
    return (a, b)


def load_catalog(path: Union[str, os.PathLike, None] = None) -> list[CatalogEntry]:
    root = catalog_dir(path)
    manifest = json.loads((root / "manifest.json").read_text())
    out = []
    for rec in manifest["entries"]:
        f = root / rec["file"]
        gem = parse_gem(f.read_text(), source=str(f))
        surf = rec.get("expected_surface")
        out.append(CatalogEntry(
            name=rec["name"],
            gem=gem,
            declared_type=SeType.parse(rec["declared_type"]),
            expected_surface=Surface.parse(surf) if surf else None,
            expected_status=Status(rec["expected_status"]),
            transcription_notes=rec.get("transcription_notes", ""),
            face_counts={_pair(k): v for k, v in rec.get("face_counts", {}).items()},
            named_faces={_pair(k): [tuple(f) for f in v] for k, v in rec.get("named_faces", {}).items()},
            embedding=tuple(rec["embedding"]) if rec.get("embedding") else None,
            path=f,
        ))
    return out


def get_entry(name: str, path=None) -> CatalogEntry:
    for e in load_catalog(path):
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")


# --- verification --------------------------------------------------------

@dataclass(frozen=True)
class Check:
    entry: str
    check: str
    passed: bool
    witness: str = ""


@dataclass
class VerificationReport:
    entry: str
    checks: list[Check] = field(default_factory=list)
    face_inventory: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Optional[Check]:
        return next((c for c in self.checks if not c.passed), None)

    def add(self, check: str, passed: bool, witness: Any = "") -> bool:
        self.checks.append(Check(self.entry, check, bool(passed), str(witness)))
        return bool(passed)

    def table(self) -> str:
        w = max(len(c.check) for c in self.checks) if self.checks else 5
        rows = [f"{self.entry}"]
        for c in self.checks:
            rows.append(f"  {c.check:<{w}}  {'ok  ' if c.passed else 'FAIL'}  {c.witness}")
        return "\n".join(rows)


def _verify_surface_gem(e: CatalogEntry, rep: VerificationReport) -> None:
    g = e.gem
    rep.add("non_bipartite", not is_bipartite(g), "graph has an odd cycle" if not is_bipartite(g) else "bipartite")
    t = semi_equivelar_type(g)
    rep.add("semi_equivelar_type", t == e.declared_type,
            f"{t} (declared {e.declared_type})" if t != e.declared_type else str(t))
    emb = regular_embedding(g)
    rep.face_inventory = emb.face_inventory()
    rep.add("euler_characteristic", emb.euler_characteristic == -1,
            f"V-E+F = {emb.v_count}-{emb.e_count}+{emb.f_count} = {emb.euler_characteristic}")
    if e.face_counts:
        bad = {k: (rep.face_inventory.get(k), v) for k, v in e.face_counts.items() if rep.face_inventory.get(k) != v}
        rep.add("face_counts", not bad,
                "; ".join(f"{{{a},{b}}}: {got} != {want}" for (a, b), (got, want) in bad.items())
                or _fmt_inventory(rep.face_inventory))
    if e.named_faces:
        missing = []
        for (a, b), faces in e.named_faces.items():
            have = {normalize_cycle(c) for c in bicolored_cycles(g, a, b)}
            missing += [f"{{{a},{b}}} {list(f)}" for f in faces if normalize_cycle(f) not in have]
        n = sum(len(v) for v in e.named_faces.values())
        rep.add("named_faces", not missing, "; ".join(missing) or f"{n} named faces found")
    s = surface_of(g)
    rep.add("surface", s == e.expected_surface, f"{s} (expected {e.expected_surface})")
    st = manifold_status(g)
    rep.add("manifold_status", st.status is e.expected_status, st.status.value)


def _verify_non_gem(e: CatalogEntry, rep: VerificationReport) -> None:
    g = e.gem
    rep.add("color_count", g.color_count == 5, f"{g.color_count} colors")
    hits = []
    for eps in all_cyclic_permutations(g.color_count):
        emb = regular_embedding(g, eps)
        if semi_equivelar_type(g, eps) == e.declared_type and emb.euler_characteristic == -1:
            hits.append(str(eps))
            if not rep.face_inventory:
                rep.face_inventory = emb.face_inventory()
    rep.add("semi_equivelar_type", bool(hits),
            f"{e.declared_type} with chi=-1 under {', '.join(hits)}" if hits else "no class gives the declared type")
    st = manifold_status(g)
    ok = st.status is e.expected_status
    if ok and st.witness is not None:
        w = st.witness
        ok = verify_link_failure(g, w)
        rep.add("manifold_status", ok,
                f"{st.status.value}: colors {w.colors} residue on vertices {list(w.vertices)} has chi={w.chi}")
    else:
        rep.add("manifold_status", ok, st.status.value)


def _fmt_inventory(inv: dict) -> str:
    return ", ".join(f"{{{a},{b}}}:{n}" for (a, b), n in sorted(inv.items()))


def verify_entry(e: CatalogEntry) -> VerificationReport:
    """Run every check for one entry; later checks still run after a failure."""
    rep = VerificationReport(e.name)
    rep.add("valid", True, f"{e.gem.n_vertices} vertices, {e.gem.color_count} colors")
    if not rep.add("connected", is_connected(e.gem), ""):
        return rep
    try:
        if e.expected_status is Status.NOT_MANIFOLD:
            _verify_non_gem(e, rep)
        else:
            _verify_surface_gem(e, rep)
    except GemError as exc:
        rep.add("error", False, f"{type(exc).__name__}: {exc}")
    return rep


def verify_catalog(path=None, names=None) -> list[VerificationReport]:
    entries = load_catalog(path)
    if names:
        entries = [e for e in entries if e.name in names]
    return [verify_entry(e) for e in entries]


__all__ = ["CatalogEntry", "Check", "VerificationReport", "load_catalog", "get_entry",
           "verify_entry", "verify_catalog", "DATA_DIR", "ParseError"]
