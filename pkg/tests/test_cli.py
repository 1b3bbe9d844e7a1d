import shutil
import subprocess
import sys

import pytest

from conftest import GOLDEN
from semigem.catalog import DATA_DIR
from semigem.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok_and_failures(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", str(DATA_DIR / "fig1.gem"))
    assert code == 0 and "8 vertices" in out
    odd = tmp_path / "odd.gem"
    odd.write_text("gem odd\ncolors 3\nvertices 3\n")
    code, _, err = run(capsys, "validate", str(odd))
    assert code == 1 and "OddVertexCount" in err
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.gem"))
    assert code == 2
    bad = tmp_path / "bad.gem"
    bad.write_text("gem bad\ncolors 2\nvertices 4\ncolor 0: 1-2 1-3\ncolor 1: 1-2 3-4\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 1 and "NotInvolution" in err and ":4:" in err


def test_validate_records(capsys):
    code, out, _ = run(capsys, "validate", str(DATA_DIR / "fig1.gem"), "--format", "records")
    assert code == 0 and out.startswith("file=") and "vertices=8 colors=3" in out


def test_analyze(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", str(DATA_DIR / "fig5.gem"))
    assert code == 0
    assert "type [(12^2,4);12], chi=-1, surface #3RP2, manifold" in out
    sphere = tmp_path / "s.gem"
    sphere.write_text("gem s\ncolors 3\nvertices 2\ncolor 0: 1-2\ncolor 1: 1-2\ncolor 2: 1-2\n")
    code, out, _ = run(capsys, "analyze", str(sphere))
    assert "type [(2^3);2], chi=2, surface S2" in out
    code, out, _ = run(capsys, "analyze", str(DATA_DIR / "fig13.gem"))
    assert "type [(4^5);4], chi=-1, NOT a manifold" in out and "witness" in out


def test_analyze_all_embeddings_records(capsys):
    code, out, _ = run(capsys, "--format", "records", "analyze", "--all-embeddings", str(DATA_DIR / "fig13.gem"))
    lines = out.splitlines()
    assert code == 0 and len(lines) == 13
    assert lines[-1].startswith("type=[(4^5);4] chi=-1 status=NotManifold")


@pytest.mark.parametrize("args, golden, count", [
    (["--chi", "-1"], "types_chi-1.txt", 15),
    (["--chi", "-1", "--gems-only"], "types_chi-1_gems.txt", 12),
    (["--chi", "-2"], "types_chi-2.txt", 32),
])
def test_types_golden(capsys, args, golden, count):
    code, out, _ = run(capsys, "types", *args, "--format", "records")
    assert code == 0
    assert out == (GOLDEN / golden).read_text()
    code, human, _ = run(capsys, "types", *args)
    assert len(human.splitlines()) == count


def test_types_rejects_non_negative(capsys):
    code, _, err = run(capsys, "types", "--chi", "0")
    assert code == 1 and "negative" in err


def test_catalog_verify(capsys, tmp_path, monkeypatch):
    code, out, _ = run(capsys, "catalog", "verify")
    assert code == 0 and "13/13 entries verified" in out
    code, out, _ = run(capsys, "catalog", "verify", "--entry", "fig7")
    assert code == 0 and "[(4,6,16);48]" in out and "fig8" not in out
    code, out, _ = run(capsys, "catalog", "verify", "--entry", "fig99")
    assert code == 1
    root = tmp_path / "cat"
    shutil.copytree(DATA_DIR, root)
    f = root / "fig3.gem"
    text = f.read_text().splitlines()
    i = next(k for k, ln in enumerate(text) if ln.startswith("color 2:"))
    head, body = text[i].split(":")
    pairs = [t.split("-") for t in body.split()]
    (a, b), (c, d) = pairs[0], pairs[1]
    pairs[0], pairs[1] = [a, c], [b, d]
    text[i] = head + ": " + " ".join("-".join(p) for p in pairs)
    f.write_text("\n".join(text) + "\n")
    monkeypatch.setenv("SEMIGEM_CATALOG", str(root))
    code, _, err = run(capsys, "catalog", "verify")
    assert code == 1 and "fig3: semi_equivelar_type mismatch" in err


def test_search_commands(capsys):
    code, out, _ = run(capsys, "search", "--type", "[(4^5);4]")
    assert code == 0 and "1 found, exhaustive" in out and "not a gem" in out
    code, out, _ = run(capsys, "search", "--type", "[(8^3);8]", "--gems-only", "--surface", "#3RP2")
    assert code == 0 and "exhaustive" in out and "gem hit1" in out
    code, _, err = run(capsys, "search", "--type", "[(4,6,14);84]")
    assert code == 3 and "warning" in err
    code, out, _ = run(capsys, "search", "--type", "[(6^2,12);12]", "--budget", "20")
    assert code == 3 and "INCOMPLETE" in out
    code, _, err = run(capsys, "search", "--type", "(8,8,8)")
    assert code == 1
    code, out, _ = run(capsys, "--format", "records", "search", "--type", "[(4^5);4]")
    assert code == 0 and "status=NotManifold" in out and "exhausted=true" in out


def test_search_output_is_reloadable(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--type", "[(8^3);8]", "--gems-only")
    block = out.split("# hit2")[0].split("\n", 1)[1]
    p = tmp_path / "hit.gem"
    p.write_text(block)
    code, out, _ = run(capsys, "analyze", str(p))
    assert code == 0 and "type [(8^3);8]" in out


def test_iso(capsys, tmp_path):
    f1 = DATA_DIR / "fig1.gem"
    code, out, _ = run(capsys, "iso", str(f1), str(f1))
    assert code == 0 and out.startswith("isomorphic")
    # fig2 with colors 1 and 2 exchanged: the octagons move to another pair
    f2 = DATA_DIR / "fig2.gem"
    swapped = tmp_path / "sw.gem"
    lines = f2.read_text().splitlines()
    c1 = next(i for i, ln in enumerate(lines) if ln.startswith("color 1:"))
    c2 = next(i for i, ln in enumerate(lines) if ln.startswith("color 2:"))
    lines[c1], lines[c2] = "color 1:" + lines[c2].split(":")[1], "color 2:" + lines[c1].split(":")[1]
    swapped.write_text("\n".join(lines) + "\n")
    code, _, _ = run(capsys, "iso", str(f2), str(swapped))
    assert code == 0
    code, out, _ = run(capsys, "iso", str(f2), str(swapped), "--fix-colors")
    assert code == 1 and "not isomorphic" in out
    code, _, _ = run(capsys, "iso", str(f1), str(DATA_DIR / "fig3.gem"))
    assert code == 1
    code, _, _ = run(capsys, "iso", str(f1), str(tmp_path / "none.gem"))
    assert code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "semigem", "types", "--chi", "-1", "--gems-only"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and len(r.stdout.splitlines()) == 12
