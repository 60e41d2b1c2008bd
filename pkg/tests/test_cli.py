"""Command line behavior: formats, golden table, exit codes, determinism."""

import math
import subprocess
import sys
from pathlib import Path

import pytest

import oracles
from markoff import cli, graph, lifts
from markoff.words import PathWord

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_seed_paths_matches_golden(capsys):
    code, out, _ = run_cli(capsys, "seed-paths")
    assert code == 0
    want = (GOLDEN / "seed_paths.txt").read_text()
    # whitespace-normalized comparison
    got_tokens = [line.split() for line in out.strip().splitlines()]
    want_tokens = [line.split() for line in want.strip().splitlines()]
    assert got_tokens == want_tokens


def test_seed_paths_range_is_prefix(capsys):
    code, out, _ = run_cli(capsys, "seed-paths", "--primes", "5..61")
    assert code == 0
    whole = (GOLDEN / "seed_paths.txt").read_text().splitlines()
    assert out.strip().splitlines() == whole[:16]


def test_cage_stats_csv(capsys):
    code, out, _ = run_cli(capsys, "cage-stats", "--primes", "5..61")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == cli.CAGE_CSV_HEADER
    shares = []
    for row in lines[1:]:
        p, vertices, cage, extra, share, heur = row.split(",")
        p, vertices, cage, extra = int(p), int(vertices), int(cage), int(extra)
        assert vertices == graph.vertex_count_formula(p)
        assert 0 < cage <= vertices and 0 <= extra
        assert cage + extra <= vertices
        shares.append(float(share))
        assert 0 < float(heur) < 1
        if p == 31:
            assert math.isclose(float(heur), 0.307814, abs_tol=1e-5)
    assert all(0 < s <= 100 for s in shares)


def test_cage_counts_against_orbit_oracle():
    p = 13
    vertices, cage, extra = cli.cage_counts(p)
    pts = oracles.surface_points(p)
    assert vertices == len(pts)
    want_cage = want_extra = 0
    for x in pts:
        orders = [oracles.matrix_order(c, p) for c in x]
        if any(o in (p - 1, p + 1, 2 * p) for o in orders):
            want_cage += 1
        elif p in orders:
            want_extra += 1
    assert (cage, extra) == (want_cage, want_extra)


def test_level_dist_counts(capsys):
    code, out, _ = run_cli(capsys, "level-dist", "--level", "5", "--bins", "8")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == cli.LEVEL_CSV_HEADER
    assert sum(int(r.split(",")[2]) for r in lines[1:]) == 48
    assert len(lines) - 1 <= 8


def test_path_route_example(capsys):
    code, out, _ = run_cli(capsys, "path", "-p", "29", "--to", "1,2,5")
    assert code == 0 and out.strip() == "r1^2"


def test_path_bfs_replays(capsys):
    code, out, _ = run_cli(capsys, "path", "-p", "29", "--to", "1,2,5",
                           "--method", "bfs")
    assert code == 0
    word = PathWord.parse(out.strip())
    assert word.apply_mod((1, 1, 1), 29) == (1, 2, 5)


def test_lift_exact(capsys):
    code, out, _ = run_cli(capsys, "lift", "-p", "29", "--to", "1,2,5")
    assert code == 0
    assert out.splitlines() == ["word: r1^2", "lift: 1,2,5"]


def test_lift_log_domain(capsys):
    # find a target mod 61 whose constructed lift outgrows a 40-digit cap
    from markoff.paths import construct_path
    target = None
    for x in oracles.surface_points(61):
        word = construct_path(61, x).word
        if lifts.replay_integer(word).log_size > 40 * math.log(10) * 1.5:
            target = x
            break
    assert target is not None
    code, out, _ = run_cli(capsys, "lift", "-p", "61",
                           "--to", f"{target[0]},{target[1]},{target[2]}",
                           "--cap-digits", "40")
    assert code == 0
    lift_line = out.splitlines()[1]
    assert lift_line.startswith("lift: log10_size=")
    assert float(lift_line.split("=")[1]) > 40


def test_classify_example(capsys):
    code, out, _ = run_cli(capsys, "classify", "-p", "11", "--to", "1,1,2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[2] == "x3=2: elliptic, ord 12, maximal: yes"
    assert lines[3] == "point in cage: yes"


def test_connectivity_p31(capsys):
    code, out, _ = run_cli(capsys, "connectivity", "-p", "31")
    assert code == 0
    assert out.strip() == "p=31: connected, 868 vertices"


def test_export_dot_and_csv(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "export", "-p", "5", "--format", "dot")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "graph markoff_5 {" and lines[-1] == "}"
    dest = tmp_path / "g.csv"
    code, out, _ = run_cli(capsys, "export", "-p", "5", "--format", "csv",
                           "--out", str(dest))
    assert code == 0 and out == ""
    rows = dest.read_text().strip().splitlines()
    assert rows[0] == graph.VERTEX_CSV_HEADER
    assert len(rows) == 1 + graph.vertex_count_formula(5)


def test_bounds_row(capsys):
    code, out, _ = run_cli(capsys, "bounds", "-p", "31")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == lifts.BOUND_CSV_HEADER
    vals = lines[1].split(",")
    assert vals[0] == "31"
    assert math.isclose(float(vals[1]), math.log10(96 * 63 ** 4), abs_tol=1e-5)
    assert float(vals[6]) > 0  # certified expansion bound


def test_exit_code_domain_errors(capsys):
    assert run_cli(capsys, "path", "-p", "9", "--to", "1,1,2")[0] == 2
    assert run_cli(capsys, "path", "-p", "11", "--to", "1,1,3")[0] == 2
    assert run_cli(capsys, "path", "-p", "11", "--to", "0,0,0")[0] == 2
    assert run_cli(capsys, "seed-paths", "--primes", "5..3")[0] == 2
    assert run_cli(capsys, "classify", "-p", "11")[0] == 2
    code, _, err = run_cli(capsys, "path", "-p", "11", "--to", "1,1,x")
    assert code == 2 and "error:" in err


def test_exit_code_cap_refusals(capsys):
    code, _, err = run_cli(capsys, "path", "-p", "131", "--to", "1,1,2",
                           "--method", "bfs", "--cap-enum", "100")
    assert code == 3 and "cap" in err
    assert run_cli(capsys, "bounds", "-p", "251", "--cap-spectral", "200")[0] == 3


def test_byte_identical_reruns(capsys):
    first = run_cli(capsys, "cage-stats", "--primes", "5..31")
    second = run_cli(capsys, "cage-stats", "--primes", "5..31")
    assert first == second
    b1 = run_cli(capsys, "bounds", "-p", "31", "--seed", "7")
    b2 = run_cli(capsys, "bounds", "-p", "31", "--seed", "7")
    assert b1 == b2


def test_module_entry_point_smoke():
    proc = subprocess.run(
        [sys.executable, "-m", "markoff", "seed-paths", "--primes", "5..13"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0].split() == \
        "5 rot1^1 : (1,1,1), (1,1,2)".split()


def test_pool_map_matches_serial(capsys, monkeypatch):
    serial = run_cli(capsys, "seed-paths", "--primes", "5..31")
    monkeypatch.setenv("MARKOFF_THREADS", "2")
    pooled = run_cli(capsys, "seed-paths", "--primes", "5..31")
    assert pooled == serial


def test_parse_point_and_range():
    assert cli.parse_point(" 1, 2,5") == (1, 2, 5)
    assert cli.parse_prime_range("5..13") == [5, 7, 11, 13]
    with pytest.raises(Exception):
        cli.parse_point("1,2")
    with pytest.raises(Exception):
        cli.parse_prime_range("10-20")
