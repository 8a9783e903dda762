import json

import pytest

from pathsign import import_dimacs, import_signed, load_report, report_bytes
from pathsign.cli import main


def run(capsys, *argv):
    capsys.readouterr()  # drop anything printed by fixtures
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def level3_files(tmp_path):
    sdg = tmp_path / "d3.sdg"
    col = tmp_path / "g3.col"
    assert main(["generate", "--n", "3", "--out", str(sdg), "--dimacs", str(col)]) == 0
    return sdg, col


def test_generate_summary_line(capsys, tmp_path):
    sdg = tmp_path / "d3.sdg"
    col = tmp_path / "g3.col"
    code, out, _ = run(
        capsys, "generate", "--n", "3", "--out", str(sdg), "--dimacs", str(col)
    )
    assert code == 0
    assert out.splitlines()[0] == "n=3 v=8 e+=10 e-=4"
    d = import_signed(sdg)
    assert (d.positive_edge_count, d.negative_edge_count) == (10, 4)
    g = import_dimacs(col)
    assert (g.vertex_count, g.edge_count) == (8, 14)


def test_generate_level1(capsys):
    code, out, _ = run(capsys, "generate", "--n", "1")
    assert code == 0
    assert out.strip() == "n=1 v=1 e+=0 e-=0"


def test_generate_level5_exit3(capsys):
    code, _, err = run(capsys, "generate", "--n", "5")
    assert code == 3
    assert "82538993760" in err


def test_generate_budget_override(capsys, tmp_path):
    code, out, _ = run(
        capsys, "generate", "--n", "2", "--vertex-budget", "1"
    )
    assert code == 3


def test_verify_level3_all(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    code, out, _ = run(
        capsys,
        "verify", "--n", "3", "--suite", "all", "--seed", "0",
        "--samples", "100", "--report", str(report_path),
    )
    assert code == 0
    assert "overall: pass" in out
    report = load_report(report_path)
    assert report.overall_status == "pass"
    assert (tmp_path / "report.checks.tsv").exists()
    assert (tmp_path / "report.checks.png").exists()
    assert (tmp_path / "report.layer_sizes.png").exists()


def test_verify_no_figures(capsys, tmp_path):
    report_path = tmp_path / "r.json"
    code, out, _ = run(
        capsys,
        "verify", "--n", "2", "--suite", "lemmas", "--seed", "0",
        "--samples", "5", "--report", str(report_path), "--no-figures",
    )
    assert code == 0
    assert not (tmp_path / "r.checks.png").exists()
    assert (tmp_path / "r.checks.tsv").exists()


def test_verify_corrupted_input_exit3(capsys, tmp_path):
    bad = tmp_path / "corrupted.sdg"
    bad.write_text("p sdg 2 1\ne 1 1 +\n")
    code, _, err = run(capsys, "verify", "--in", str(bad))
    assert code == 3
    assert "self-loop" in err


def test_verify_missing_file_exit3(capsys, tmp_path):
    code, _, err = run(capsys, "verify", "--in", str(tmp_path / "nope.sdg"))
    assert code == 3


def test_verify_planted_cycle_exit1(capsys, tmp_path):
    planted = tmp_path / "c5.sdg"
    lines = ["p sdg 5 5"] + [
        f"e {i + 1} {(i + 1) % 5 + 1} +" for i in range(5)
    ]
    planted.write_text("\n".join(lines) + "\n")
    code, out, _ = run(
        capsys,
        "verify", "--in", str(planted), "--suite", "theorem-digraph",
        "--seed", "0", "--samples", "5",
    )
    assert code == 1
    assert "overall: fail" in out


def test_verify_sampling_without_seed_exit3(capsys):
    code, _, err = run(
        capsys, "verify", "--n", "3", "--suite", "theorem-digraph",
        "--samples", "5", "--node-limit", "100000000",
    )
    # level 3 is small enough for the exact branch, so no seed is needed
    assert code == 0


def test_verify_usage_error_exit3(capsys):
    code, _, err = run(capsys, "verify", "--suite", "all")
    assert code == 3


def test_verify_unknown_flag_exit3(capsys):
    code, _, _ = run(capsys, "verify", "--n", "2", "--bogus")
    assert code == 3


def test_verify_nonpositive_budget_exit3(capsys):
    code, _, err = run(
        capsys, "verify", "--n", "2", "--suite", "lemmas", "--node-limit", "0"
    )
    assert code == 3
    assert "positive" in err


def test_verify_determinism_level3(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    codes = []
    for path in paths:
        code, _, _ = run(
            capsys,
            "verify", "--n", "3", "--suite", "all", "--seed", "0",
            "--samples", "64", "--report", str(path), "--no-figures",
        )
        codes.append(code)
    assert codes == [0, 0]
    a = report_bytes(load_report(paths[0]), include_timing=False)
    b = report_bytes(load_report(paths[1]), include_timing=False)
    assert a == b
    raw_a = json.loads(paths[0].read_text())
    raw_b = json.loads(paths[1].read_text())
    raw_a.pop("timing")
    raw_b.pop("timing")
    assert raw_a == raw_b


def test_analyze_clique(capsys, level3_files):
    _, col = level3_files
    code, out, _ = run(capsys, "analyze", "--in", str(col), "--what", "clique")
    assert code == 0
    assert out.strip() == "3"


def test_analyze_chroma_on_signed(capsys, level3_files):
    sdg, _ = level3_files
    code, out, _ = run(capsys, "analyze", "--in", str(sdg), "--what", "chroma")
    assert code == 0
    assert out.strip() == "3"


def test_analyze_dichi(capsys, level3_files):
    sdg, _ = level3_files
    code, out, _ = run(capsys, "analyze", "--in", str(sdg), "--what", "dichi")
    assert code == 0
    assert out.strip() == "2"


def test_analyze_cycles_odd_only_none(capsys, level3_files):
    sdg, _ = level3_files
    code, out, _ = run(
        capsys,
        "analyze", "--in", str(sdg), "--what", "cycles",
        "--min", "5", "--max", "8", "--odd-only",
    )
    assert code == 0
    assert out.strip() == "none"


def test_analyze_cycles_lists_triangles(capsys, level3_files, tmp_path):
    sdg, _ = level3_files
    cert = tmp_path / "cycles.json"
    code, out, _ = run(
        capsys,
        "analyze", "--in", str(sdg), "--what", "cycles",
        "--min", "3", "--max", "8", "--report", str(cert),
    )
    assert code == 0
    assert out.splitlines() == ["0 1 6", "0 1 7", "0 5 2 6", "2 3 5", "2 3 7"]
    doc = json.loads(cert.read_text())
    assert doc["cycles"] == [
        [0, 1, 6], [0, 1, 7], [0, 5, 2, 6], [2, 3, 5], [2, 3, 7]
    ]
    assert doc["complete"] is True


def test_analyze_dichi_rejects_dimacs(capsys, level3_files):
    _, col = level3_files
    code, _, err = run(capsys, "analyze", "--in", str(col), "--what", "dichi")
    assert code == 3
    assert "signed digraph" in err


def test_analyze_unknown_extension_exit3(capsys, tmp_path):
    path = tmp_path / "graph.txt"
    path.write_text("p sdg 1 0\n")
    code, _, err = run(capsys, "analyze", "--in", str(path), "--what", "clique")
    assert code == 3
    assert "--format" in err
    code, out, _ = run(
        capsys, "analyze", "--in", str(path), "--format", "sdg", "--what", "clique"
    )
    assert code == 0
    assert out.strip() == "1"


def test_analyze_usage_error(capsys, level3_files):
    sdg, _ = level3_files
    code, _, _ = run(capsys, "analyze", "--in", str(sdg), "--what", "nonsense")
    assert code == 3


def test_verify_imported_clean_graph_all_suites(capsys, level3_files):
    sdg, _ = level3_files
    code, out, _ = run(
        capsys,
        "verify", "--in", str(sdg), "--suite", "all", "--seed", "0",
        "--samples", "20",
    )
    assert code == 0
    # construction-dependent checks are skipped for imported graphs
    assert "construction_counts" not in out
    assert "simplicity" in out and "dichromatic_bound" in out


def test_figures_include_sample_histograms(tmp_path):
    from pathsign import verify_suites
    from pathsign.figures import render_report_figures

    report = verify_suites(
        n=3, suites=("theorem-undirected",), seed=1, samples=30,
        subset_mode="sampled",
    )
    paths = render_report_figures(report, tmp_path, prefix="r.")
    names = {p.name for p in paths}
    assert names == {"r.checks.png", "r.sample_sizes.png"}
    assert all(p.stat().st_size > 0 for p in paths)
