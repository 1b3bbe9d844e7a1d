import random

import pytest
from hypothesis import given, settings

from conftest import gems, random_gem
from semigem.core import (
    Gem, bicolored_cycles, build, canonical_form, canonical_labeling, dipole_gem, disjoint_union,
    format_gem, is_bipartite, is_connected, isomorphic, load_gem, parse_gem, residue,
)
from semigem.errors import (
    Disconnected, EmptyColorSet, FixedPoint, MissingColor, NotInvolution, OddVertexCount,
    ParseError, SameColor, SingletonColorSet, VertexOutOfRange,
)


def test_build_from_pairs_mapping_and_table():
    a = build(4, [[(1, 2), (3, 4)], {1: 3, 3: 1, 2: 4, 4: 2}, [4, 3, 2, 1]])
    assert a.color_count == 3 and a.d == 2
    assert a.neighbor(1, 0) == 2 and a.neighbor(1, 1) == 3 and a.neighbor(1, 2) == 4
    assert a.pairs(2) == [(1, 4), (2, 3)]
    assert len(a.edges()) == 6


@pytest.mark.parametrize("n, rows, exc", [
    (3, [[(1, 2)], [(1, 2)]], OddVertexCount),
    (0, [[], []], VertexOutOfRange),
    (4, [[(1, 2), (3, 5)], [(1, 2), (3, 4)]], VertexOutOfRange),
    (4, [[(1, 2), (3, 4)]], MissingColor),
    (4, [[(1, 2), (3, 4)], None], MissingColor),
    (4, [[(1, 1), (3, 4)], [(1, 2), (3, 4)]], FixedPoint),
    (4, [[(1, 2), (1, 3)], [(1, 2), (3, 4)]], NotInvolution),
    (4, [[(1, 2)], [(1, 2), (3, 4)]], NotInvolution),
])
def test_build_rejects(n, rows, exc):
    with pytest.raises(exc):
        build(n, rows)


def test_build_accepts_multi_edges():
    g = dipole_gem(4)
    assert g.n_vertices == 2 and all(g.neighbor(1, c) == 2 for c in g.colors)


def test_bicolored_cycles_and_residue():
    g = build(4, [[(1, 2), (3, 4)], [(2, 3), (4, 1)], [(1, 2), (3, 4)]])
    assert bicolored_cycles(g, 0, 1) == [[1, 2, 3, 4]]
    assert len(bicolored_cycles(g, 0, 2)) == 2
    with pytest.raises(SameColor):
        bicolored_cycles(g, 1, 1)
    with pytest.raises(EmptyColorSet):
        residue(g, [])
    with pytest.raises(SingletonColorSet):
        residue(g, [0])
    rs = residue(g, [0, 2])
    assert [r.vertices for r in rs] == [(1, 2), (3, 4)]
    assert all(r.gem.color_count == 2 for r in rs)


def test_connectivity_and_bipartite():
    assert is_connected(dipole_gem(3)) and is_bipartite(dipole_gem(3))
    two = disjoint_union(dipole_gem(3), dipole_gem(3))
    assert two.n_vertices == 4 and not is_connected(two)
    with pytest.raises(Disconnected):
        canonical_form(two)


def test_parse_format_roundtrip(data_dir):
    g = load_gem(data_dir / "fig1.gem")
    assert g.n_vertices == 8 and g.color_count == 3
    again = parse_gem(format_gem(g))
    assert again.matchings == g.matchings
    assert str(g) == format_gem(g)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as e:
        parse_gem("gem x\ncolors 3\nvertices 4\ncolor 0: 1-2 3-4\ncolor 1: 1:2 3-4\n")
    assert e.value.line == 5
    with pytest.raises(NotInvolution) as e:
        parse_gem("gem x\ncolors 2\nvertices 4\ncolor 0: 1-2 1-3\ncolor 1: 1-2 3-4\n")
    assert e.value.line == 4


def test_repeated_vertex_in_file_is_not_involution(tmp_path):
    p = tmp_path / "bad.gem"
    p.write_text("gem bad\ncolors 3\nvertices 4\ncolor 0: 1-2 2-3\ncolor 1: 1-2 3-4\ncolor 2: 1-3 2-4\n")
    with pytest.raises(NotInvolution):
        load_gem(p)


def test_canonical_form_and_isomorphism_with_colors(catalog):
    g = catalog["fig3"].gem
    rng = random.Random(7)
    perm = list(g.vertices)
    rng.shuffle(perm)
    vmap = dict(zip(g.vertices, perm))
    h = g.relabel(vmap, [2, 0, 1])
    assert canonical_form(g, "fixed") != canonical_form(h, "fixed")
    assert canonical_form(g, "permutable") == canonical_form(h, "permutable")
    assert isomorphic(g, h) is None
    iso = isomorphic(g, h, "permutable")
    assert iso is not None and iso.verify(g, h)
    form, labels, order = canonical_labeling(h, "permutable")
    assert form == canonical_form(g, "permutable") and sorted(labels[1:]) == list(h.vertices)


def test_isomorphic_disconnected():
    a = disjoint_union(dipole_gem(3), build(4, [[(1, 2), (3, 4)], [(2, 3), (1, 4)], [(1, 3), (2, 4)]]))
    b = disjoint_union(build(4, [[(1, 2), (3, 4)], [(2, 3), (1, 4)], [(1, 3), (2, 4)]]), dipole_gem(3))
    iso = isomorphic(a, b)
    assert iso is not None and iso.verify(a, b)
    c = disjoint_union(dipole_gem(3), dipole_gem(3), dipole_gem(3))
    assert isomorphic(a, c) is None


def test_catalog_entries_pairwise_non_isomorphic(catalog):
    keys = [canonical_form(e.gem, "permutable") for e in catalog.values()]
    assert len(set(keys)) == len(keys)


# -- properties ----------------------------------------------------------------

@settings(max_examples=1000, deadline=None)
@given(gems())
def test_random_gems_are_partitioned_by_matchings_and_cycles(g: Gem):
    for c in g.colors:
        m = g.matchings[c]
        assert all(m[m[u]] == u and m[u] != u for u in g.vertices)
    for i in g.colors:
        for j in g.colors:
            if i < j:
                cyc = bicolored_cycles(g, i, j)
                flat = sorted(v for cy in cyc for v in cy)
                assert flat == list(g.vertices)
                assert all(len(cy) % 2 == 0 for cy in cyc)
    comps = residue(g, g.colors)
    assert sorted(v for r in comps for v in r.vertices) == list(g.vertices)
    assert (len(comps) == 1) == is_connected(g)


@pytest.mark.parametrize("name", [f"fig{i}" for i in range(1, 14)])
def test_canonical_form_invariant_under_relabeling(catalog, name):
    g = catalog[name].gem
    rng = random.Random(name)
    fixed = canonical_form(g, "fixed")
    perm_form = canonical_form(g, "permutable") if g.color_count <= 3 else None
    for _ in range(100):
        perm = list(g.vertices)
        rng.shuffle(perm)
        h = g.relabel(dict(zip(g.vertices, perm)))
        assert canonical_form(h, "fixed") == fixed
        if perm_form is not None:
            cols = list(g.colors)
            rng.shuffle(cols)
            assert canonical_form(g.relabel(dict(zip(g.vertices, perm)), cols), "permutable") == perm_form


def test_random_relabeling_isomorphism_found():
    rng = random.Random(3)
    for _ in range(50):
        g = random_gem(rng, 10, 4)
        perm = list(g.vertices)
        rng.shuffle(perm)
        h = g.relabel(dict(zip(g.vertices, perm)))
        iso = isomorphic(g, h)
        assert iso is not None and iso.verify(g, h)
