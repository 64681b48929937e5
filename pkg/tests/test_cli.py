"""End-to-end checks of the command-line surface, run in-process."""

import json
import subprocess
import sys

import pytest

from altpath.cli import EXIT_SAT, EXIT_UNSAT, EXIT_UNKNOWN, main
from altpath.parsing import parse_dimacs, parse_tptp

TREE = """\
cnf(goal, negated_conjecture, (~p)).
cnf(root, axiom, (p | ~q1 | ~q2 | ~q3)).
cnf(r1, axiom, (q1 | ~r1 | ~r2)).
cnf(r2, axiom, (q2 | ~r3 | ~r4)).
cnf(r3, axiom, (q3 | ~r5 | ~r6)).
cnf(f1, axiom, (r1)).
cnf(f2, axiom, (r2)).
cnf(f3, axiom, (r3)).
cnf(f4, axiom, (r4)).
cnf(f5, axiom, (r5)).
cnf(f6, axiom, (r6)).
"""

SAT_CNF = "p cnf 3 2\n1 2 0\n-1 3 0\n"

FO = """\
cnf(c1, axiom, (p(X))).
cnf(c2, negated_conjecture, (~p(a))).
cnf(c3, axiom, (q(b))).
"""


@pytest.fixture
def tree(tmp_path):
    path = tmp_path / "tree.p"
    path.write_text(TREE)
    return str(path)


@pytest.fixture
def sat_cnf(tmp_path):
    path = tmp_path / "sat.cnf"
    path.write_text(SAT_CNF)
    return str(path)


@pytest.fixture
def fo(tmp_path):
    path = tmp_path / "fo.p"
    path.write_text(FO)
    return str(path)


# ---------------------------------------------------------------------------
# filter


def test_filter_writes_the_neighborhood(tree, tmp_path, capsys):
    out = tmp_path / "out.p"
    assert main(["filter", tree, "-n", "4", "-o", str(out)]) == 0
    written = parse_tptp(out.read_text())
    assert len(written) == 11
    summary = capsys.readouterr().out
    assert "relevant at 4: 11" in summary
    assert "distance 4: 6" in summary
    assert "distance 3: 3" in summary


def test_filter_level_one_is_the_support(tree, tmp_path, capsys):
    out = tmp_path / "out.p"
    assert main(["filter", tree, "-n", "1", "-o", str(out)]) == 0
    written = parse_tptp(out.read_text())
    assert len(written) == 1
    assert str(written.clauses[0]) == "~p"


def test_filter_csv_table(tree, tmp_path):
    csv = tmp_path / "d.csv"
    main(["filter", tree, "-n", "4", "-o", str(tmp_path / "o.p"), "--csv", str(csv)])
    lines = csv.read_text().splitlines()
    assert lines[0] == "clause_id,distance"
    assert "1,1" in lines and "6,4" in lines


def test_filter_intersects_two_supports(tmp_path):
    path = tmp_path / "in.cnf"
    path.write_text("p cnf 2 3\n1 2 0\n-1 0\n-2 0\n")
    out = tmp_path / "out.cnf"
    code = main(
        ["filter", str(path), "-n", "2", "--support", "pos", "--support", "neg",
         "--intersect", "-o", str(out)]
    )
    assert code == 0
    assert len(parse_dimacs(out.read_text())) == 3
    # several supports without --intersect is a usage error
    assert main(["filter", str(path), "-n", "2", "--support", "pos",
                 "--support", "neg"]) == 2


def test_filter_purity_note(tmp_path, capsys):
    path = tmp_path / "in.cnf"
    path.write_text("p cnf 2 4\n1 0\n-1 0\n2 0\n1 2 0\n")
    out = tmp_path / "out.cnf"
    code = main(["filter", str(path), "-n", "1", "--purity",
                 "--support", "neg", "-o", str(out)])
    assert code == 0
    summary = capsys.readouterr().out
    assert "input clauses: 4" in summary
    assert "after purity: 2" in summary


def test_filter_json_summary(tree, capsys):
    assert main(["filter", tree, "-n", "4", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["relevant"] == 11
    assert payload["histogram"]["4"] == 6


def test_filter_needs_a_bound(tree, capsys):
    assert main(["filter", tree]) == 2
    assert "distance bound" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# solve


def test_solve_unsat_exit_and_status(tree, capsys):
    assert main(["solve", tree]) == EXIT_UNSAT
    out = capsys.readouterr().out
    assert "s UNSATISFIABLE" in out
    assert "c calls=" in out


def test_solve_trusted_partial_model(sat_cnf, capsys):
    code = main(["solve", sat_cnf, "--support", "ids:2", "--trusted"])
    assert code == EXIT_SAT
    out = capsys.readouterr().out
    assert "s SATISFIABLE" in out
    v_lines = [l for l in out.splitlines() if l.startswith("v ")]
    assert len(v_lines) == 1 and v_lines[0].endswith(" 0")


def test_solve_count_calls_budget(sat_cnf, capsys):
    main(["solve", sat_cnf, "--support", "ids:2", "--count-calls"])
    out = capsys.readouterr().out
    assert "k=3 budget=8" in out


def test_solve_rejects_first_order_input(fo, capsys):
    assert main(["solve", fo]) == 2
    assert "variable-free" in capsys.readouterr().err


def test_solve_json(sat_cnf, capsys):
    code = main(["solve", sat_cnf, "--no-relevance", "--json"])
    assert code == EXIT_SAT
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "sat"
    assert payload["model"]
    assert payload["k"] is None


def test_solve_call_limit_reports_unknown(tmp_path, capsys):
    path = tmp_path / "in.cnf"
    rows = ["p cnf 6 8"]
    rows += ["1 2 3 0", "-1 4 5 0", "-2 -4 6 0", "-3 -5 -6 0",
             "1 -2 4 0", "2 -3 5 0", "3 -4 6 0", "-1 -5 -6 0"]
    path.write_text("\n".join(rows) + "\n")
    code = main(["solve", str(path), "--no-relevance", "--max-calls", "1"])
    assert code == EXIT_UNKNOWN
    assert "s UNKNOWN" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# deepen


def test_deepen_succeeds_at_the_radius(tree, capsys):
    assert main(["deepen", tree]) == EXIT_UNSAT
    out = capsys.readouterr().out
    assert "c unsat at level 4" in out
    assert "support clauses sit at level 1" in out
    assert "s UNSATISFIABLE" in out


def test_deepen_exhausts_levels_on_sat_input(sat_cnf, capsys):
    assert main(["deepen", sat_cnf, "--support", "ids:2"]) == EXIT_SAT
    assert "s SATISFIABLE" in capsys.readouterr().out


def _stub(tmp_path, body: str) -> str:
    path = tmp_path / "stub.py"
    path.write_text(body)
    return f"{sys.executable} {path} {{file}}"


def test_deepen_prover_timeout_stub(fo, tmp_path, capsys):
    prover = _stub(tmp_path, "print('% SZS status Timeout')\n")
    assert main(["deepen", fo, "--prover", prover]) == EXIT_UNKNOWN
    out = capsys.readouterr().out
    assert "c level 1: unknown (SZS Timeout)" in out
    assert "s UNKNOWN" in out


def test_deepen_prover_unsat_stub(fo, tmp_path, capsys):
    prover = _stub(tmp_path, "print('% SZS status Unsatisfiable')\n")
    assert main(["deepen", fo, "--prover", prover]) == EXIT_UNSAT
    out = capsys.readouterr().out
    assert "c unsat at level 1" in out


def test_deepen_prover_failure_does_not_abort_other_levels(fo, tmp_path, capsys):
    prover = _stub(tmp_path, "import sys\nsys.exit(3)\n")
    assert main(["deepen", fo, "--prover", prover]) == EXIT_UNKNOWN
    out = capsys.readouterr().out
    assert "prover error (exit 3)" in out
    assert "c level full:" in out  # later levels still ran


def test_deepen_first_order_needs_a_prover(fo, capsys):
    assert main(["deepen", fo]) == 2
    assert "external prover" in capsys.readouterr().err


def test_deepen_reads_the_filtered_set(fo, tmp_path, capsys):
    # the stub checks that the level-1 file it gets holds only the support
    body = (
        "import sys\n"
        "text = open(sys.argv[1]).read()\n"
        "print('% SZS status Unsatisfiable' if 'p(X)' not in text"
        " else '% SZS status Satisfiable')\n"
    )
    prover = _stub(tmp_path, body)
    assert main(["deepen", fo, "--prover", prover]) == EXIT_UNSAT
    assert "c unsat at level 1" in capsys.readouterr().out


# ---------------------------------------------------------------------------
# distance / path / radius / stats


def test_distance_connectedness_is_not_transitive(tmp_path, capsys):
    path = tmp_path / "t.p"
    path.write_text(
        "cnf(c1, axiom, (~p | q)).\n"
        "cnf(c2, axiom, (~q)).\n"
        "cnf(c3, axiom, (q | ~r)).\n"
    )
    code = main(["distance", str(path), "--pair", "1", "2",
                 "--pair", "2", "3", "--pair", "1", "3"])
    assert code == 0
    assert capsys.readouterr().out.splitlines() == ["2", "2", "inf"]


def test_path_prints_a_validating_witness(tree, capsys):
    assert main(["path", tree, "--to", "6"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("c1 ") and lines[0].endswith("c6")
    assert lines[1] == "length 4"
    assert lines[2] == "valid"


def test_path_unreachable_target(fo, capsys):
    assert main(["path", fo, "--to", "3"]) == 2
    assert "unreachable" in capsys.readouterr().err


def test_radius(tree, tmp_path, capsys):
    assert main(["radius", tree]) == 0
    assert "support radius: 4" in capsys.readouterr().out
    sat = tmp_path / "one.cnf"
    sat.write_text("p cnf 1 1\n1 0\n")
    assert main(["radius", str(sat), "--support", "ids:1"]) == 0
    assert "support radius: inf" in capsys.readouterr().out


def test_stats_bounds_and_budget(tmp_path, capsys):
    path = tmp_path / "s.cnf"
    path.write_text("p cnf 3 4\n1 2 3 0\n-1 2 0\n-2 3 0\n1 3 0\n")
    code = main(["stats", str(path), "--support", "ids:1", "-n", "2"])
    assert code == 0
    out = capsys.readouterr().out
    assert "b=3 k=3" in out
    assert "size budget at 2: 18" in out  # 2 * 1 * 3 * 3


def test_stats_json(tree, capsys):
    assert main(["stats", tree, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["clauses"] == 11
    assert payload["k"] == 4


# ---------------------------------------------------------------------------
# split


def test_split_auto_picks_a_breaking_variable(fo, capsys):
    assert main(["split", fo]) == 0
    out = capsys.readouterr().out
    assert "% split c1 on X into 2 clauses (full)" in out
    assert "cnf(c4, axiom, (p(a)))." in out
    assert "cnf(c5, axiom, (p(b)))." in out
    assert "p(X)" not in out


def test_split_json_summary(fo, capsys):
    assert main(["split", fo, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["clause"] == 1 and payload["var"] == "X"
    assert payload["replacements"] == [4, 5]


def test_split_output_parses_back(fo, tmp_path):
    out = tmp_path / "split.p"
    assert main(["split", fo, "-o", str(out)]) == 0
    written = parse_tptp(out.read_text())
    assert len(written) == 4


def test_split_rejects_ground_input(sat_cnf, capsys):
    assert main(["split", sat_cnf]) == 2
    assert "nothing to split" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# gen


def test_gen_is_deterministic_per_seed(capsys):
    main(["gen", "3sat", "--vars", "8", "--clauses", "12", "--seed", "5"])
    first = capsys.readouterr().out
    main(["gen", "3sat", "--vars", "8", "--clauses", "12", "--seed", "5"])
    assert capsys.readouterr().out == first
    assert first.startswith("p cnf 8 12")


def test_gen_horn_tree_feeds_deepen(tmp_path, capsys):
    out = tmp_path / "tree.p"
    assert main(["gen", "horn-tree", "--depth", "2", "-o", str(out)]) == 0
    assert "negated_conjecture" in out.read_text()
    assert main(["deepen", str(out)]) == EXIT_UNSAT


def test_gen_bounded_first_order(capsys):
    assert main(["gen", "bounded", "--b", "2", "--k", "3", "--first-order",
                 "--clauses", "10", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("cnf(")


# ---------------------------------------------------------------------------
# config errors


def test_unknown_support_spec(tree, capsys):
    assert main(["filter", tree, "-n", "2", "--support", "bogus"]) == 2
    assert "unknown support spec" in capsys.readouterr().err


def test_support_ids_must_exist(tree, capsys):
    assert main(["filter", tree, "-n", "2", "--support", "ids:99"]) == 2
    assert "not in the clause set" in capsys.readouterr().err


def test_empty_support_selection(tmp_path, capsys):
    path = tmp_path / "in.cnf"
    path.write_text("p cnf 2 1\n1 2 0\n")
    assert main(["solve", str(path)]) == 2
    assert "selects no clauses" in capsys.readouterr().err


def test_missing_input_file(capsys):
    assert main(["solve", "/nonexistent/input.cnf"]) == 2
    assert "error:" in capsys.readouterr().err


def test_module_invocation_round_trip(tree):
    proc = subprocess.run(
        [sys.executable, "-m", "altpath.cli", "radius", tree],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "support radius: 4" in proc.stdout
