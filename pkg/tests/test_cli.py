"""Command-line surface: subcommands, exit codes, formats, round trips."""

import json
import re

import pytest

from splicekit import __version__
from splicekit.cli import main, render, run
from splicekit.diagram import parse_diagram
from splicekit.plumbing import parse_plumbing, random_plumbing, render_plumbing

from conftest import ONE_NODE_235_TEXT, THREE_NODE_TEXT, TWO_NODE_TEXT

FLOAT_RE = re.compile(r"\d+\.\d+")


@pytest.fixture
def three_node_file(tmp_path):
    path = tmp_path / "three_node.splice"
    path.write_text(THREE_NODE_TEXT)
    return str(path)


@pytest.fixture
def two_node_file(tmp_path):
    path = tmp_path / "two_node.splice"
    path.write_text(TWO_NODE_TEXT)
    return str(path)


@pytest.fixture
def one_node_file(tmp_path):
    path = tmp_path / "one_node.splice"
    path.write_text(ONE_NODE_235_TEXT)
    return str(path)


@pytest.fixture
def plumbing_file(tmp_path):
    path = tmp_path / "star.plumbing"
    path.write_text(
        "plumbing\nvertex c -1\nvertex a -2\nvertex b -3\nvertex d -5\n"
        "edge c a\nedge c b\nedge c d\n"
    )
    return str(path)


class TestExitCodes:
    def test_uac_qhs_no_is_one(self, three_node_file):
        code, report = run(["uac-qhs", three_node_file])
        assert code == 1
        assert report.verdict == "no"

    def test_uac_qhs_yes_is_zero(self, one_node_file):
        code, report = run(["uac-qhs", one_node_file])
        assert code == 0
        assert report.verdict == "yes_integral"

    def test_invalid_file_is_two(self, tmp_path):
        bad = tmp_path / "bad.splice"
        bad.write_text("splice\nnode n\n")
        code, report = run(["uac-qhs", str(bad)])
        assert code == 2
        assert report.verdict == "invalid"

    def test_missing_file_is_two(self):
        code, _ = run(["uac-qhs", "/nonexistent/x.splice"])
        assert code == 2

    def test_unknown_subcommand_is_two(self):
        code, _ = run(["frobnicate"])
        assert code == 2

    def test_check_ideal_violation_is_one(self, tmp_path):
        path = tmp_path / "viol.splice"
        path.write_text(
            "splice\nnode A +\nnode B +\nleaf x4\nleaf x2\nleaf y3\nleaf y5\n"
            "edge A x4 4\nedge A x2 2\nedge A B 7 1\nedge B y3 3\nedge B y5 5\n"
        )
        code, report = run(["check-ideal", str(path)])
        assert code == 1
        assert report.verdict == "violated"
        assert report.witnesses

    def test_singularity_link(self, three_node_file, one_node_file):
        assert run(["singularity-link", three_node_file])[0] == 1
        assert run(["singularity-link", one_node_file])[0] == 0


class TestValidate:
    def test_valid(self, three_node_file):
        code, report = run(["validate", three_node_file])
        assert code == 0
        assert report.numbers == {"nodes": "3", "leaves": "5", "edges": "7"}


class TestInvariants:
    def test_worked_values_present(self, three_node_file):
        code, report = run(["invariants", three_node_file])
        assert code == 0
        assert report.numbers["D(v0-v1)"] == "430"
        assert report.numbers["D(v1-v2)"] == "432"
        rendered = render(report, "text")
        assert "D(v0-v1) = 430" in rendered
        assert "D(v1-v2) = 432" in rendered

    def test_generators_listed(self, two_node_file):
        _, report = run(["invariants", two_node_file])
        assert report.numbers["dbar(B;B-A)"] == "2"
        assert report.numbers["dbar(A;A-B)"] == "1"


class TestUacQhs:
    def test_witnesses_name_failing_conditions(self, three_node_file):
        _, report = run(["uac-qhs", three_node_file])
        candidates = {w["candidate"] for w in report.witnesses if "candidate" in w}
        assert candidates == {"v0", "v1", "v2"}

    def test_special_reported(self, two_node_file):
        code, report = run(["uac-qhs", two_node_file])
        assert code == 0
        assert report.verdict == "yes_rational"
        assert report.numbers["special"] == "A"


class TestCover:
    def test_two_node_report(self, two_node_file):
        code, report = run(["cover", two_node_file])
        assert code == 0
        assert report.verdict == "no_obstruction"
        pieces = {w["piece"] for w in report.witnesses if "piece" in w}
        assert pieces == {"Sigma(2,4,7)x1", "Sigma(1,3,5)x2"}
        assert report.numbers["p~(A-B)"] == "53"
        assert report.numbers["tori(A-B)"] == "2"
        assert report.numbers["nondegenerate"] == "yes"

    def test_forced_special_obstruction(self, three_node_file):
        code, report = run(["cover", three_node_file, "--special", "v2"])
        assert code == 1
        assert report.verdict == "obstruction:genus_positive"

    def test_euler_overrides_feed_internal_pieces(self, tmp_path):
        # chain u - v - w: v is internal, so its euler number is an input
        path = tmp_path / "chain.splice"
        path.write_text(
            "splice\nnode u +\nnode v +\nnode w +\n"
            "leaf u2\nleaf u3\nleaf v11\nleaf w5\nleaf w7\n"
            "edge u u2 2\nedge u u3 3\nedge u v 1 1\nedge v v11 11\n"
            "edge v w 1 1\nedge w w5 5\nedge w w7 7\n"
        )
        code, report = run(["cover", str(path)])
        assert code == 0
        assert report.numbers["determinant"].startswith("unavailable")
        code, report = run(["cover", str(path), "--euler", "v=-1/30"])
        assert code == 0
        assert not report.numbers["determinant"].startswith("unavailable")
        assert report.numbers["nondegenerate"] in {"yes", "no"}

    def test_zero_weight_reports_obstruction(self, tmp_path):
        path = tmp_path / "zero.splice"
        path.write_text("splice\nnode n +\nleaf a\nleaf b\nleaf c\nedge n a 0\nedge n b 3\nedge n c 5\n")
        code, report = run(["cover", str(path)])
        assert code == 1
        assert report.verdict == "obstruction:zero_weight"

    def test_degenerate_diagram_is_trivial(self, tmp_path):
        path = tmp_path / "degenerate.splice"
        path.write_text("splice\nleaf a\nleaf b\nedge a b\n")
        code, report = run(["cover", str(path)])
        assert code == 0
        assert report.verdict == "no_obstruction"
        assert report.numbers["decide"] == "yes_integral"


class TestBrieskorn:
    def test_integral(self):
        code, report = run(["brieskorn", "2,3,5"])
        assert code == 0
        assert report.verdict == "condition1"
        assert report.numbers["indicator"] == "0"

    def test_not_rhs(self):
        code, report = run(["brieskorn", "2,4,8"])
        assert code == 1
        assert report.verdict == "not_rhs"
        assert report.numbers["indicator"] == "2"

    def test_bad_list(self):
        assert run(["brieskorn", "2,x,5"])[0] == 2
        assert run(["brieskorn", "2,3"])[0] == 2


class TestPlumbCommands:
    def test_plumb_h1(self, plumbing_file):
        code, report = run(["plumb-h1", plumbing_file])
        assert code == 0
        assert report.numbers["h1_order"] == "1"

    def test_plumb2splice_output_parses(self, plumbing_file):
        code, report = run(["plumb2splice", plumbing_file])
        assert code == 0
        d = parse_diagram(report.text_body)
        node = d.node_ids()[0]
        assert sorted(d.node_weights(node)) == [2, 3, 5]

    def test_plumb2splice_pipe_to_uac(self, plumbing_file, tmp_path):
        _, report = run(["plumb2splice", plumbing_file])
        out = tmp_path / "piped.splice"
        out.write_text(report.text_body)
        code, verdict_report = run(["uac-qhs", str(out)])
        assert code == 0
        assert verdict_report.verdict == "yes_integral"


class TestGen:
    def test_deterministic(self):
        _, a = run(["gen", "--seed", "5", "--max-vertices", "6"])
        _, b = run(["gen", "--seed", "5", "--max-vertices", "6"])
        assert a.text_body == b.text_body
        assert parse_plumbing(a.text_body) == random_plumbing(5, 6)

    def test_env_seed_override(self, monkeypatch):
        monkeypatch.setenv("SPLICEKIT_SEED", "77")
        _, report = run(["gen", "--max-vertices", "6"])
        assert parse_plumbing(report.text_body) == random_plumbing(77, 6)

    def test_explicit_seed_beats_env(self, monkeypatch):
        monkeypatch.setenv("SPLICEKIT_SEED", "77")
        _, report = run(["gen", "--seed", "3", "--max-vertices", "6"])
        assert parse_plumbing(report.text_body) == random_plumbing(3, 6)

    def test_round_trip(self):
        _, report = run(["gen", "--seed", "9", "--max-vertices", "8"])
        p = parse_plumbing(report.text_body)
        assert render_plumbing(p) == report.text_body


class TestStdin:
    def test_dash_reads_stdin(self, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(ONE_NODE_235_TEXT))
        code, report = run(["uac-qhs", "-"])
        assert code == 0
        assert report.verdict == "yes_integral"


class TestRender:
    def test_json_is_sorted_and_versioned(self, three_node_file):
        _, report = run(["invariants", three_node_file, "--format", "json"])
        payload = json.loads(render(report, "json"))
        assert payload["version"] == __version__
        assert list(payload.keys()) == sorted(payload.keys())
        assert payload["numbers"]["D(v0-v1)"] == "430"

    def test_json_byte_deterministic(self, two_node_file):
        outputs = set()
        for _ in range(3):
            _, report = run(["cover", two_node_file])
            outputs.add(render(report, "json").encode())
        assert len(outputs) == 1

    def test_no_floating_point_anywhere(self, two_node_file, three_node_file):
        for argv in (
            ["cover", two_node_file],
            ["invariants", three_node_file],
            ["uac-qhs", three_node_file],
            ["brieskorn", "2,4,6"],
        ):
            _, report = run(argv)
            assert not FLOAT_RE.search(render(report, "text")), argv
            payload = json.loads(render(report, "json"))
            del payload["version"]  # the only dotted decimal allowed
            assert not FLOAT_RE.search(json.dumps(payload)), argv

    def test_fractions_rendered_reduced(self, two_node_file):
        _, report = run(["cover", two_node_file])
        rendered = render(report, "text")
        assert "53" in rendered

    def test_text_render_of_witnesses(self, three_node_file):
        _, report = run(["uac-qhs", three_node_file])
        rendered = render(report, "text")
        assert "candidate=v0" in rendered


class TestMain:
    def test_main_prints_and_returns(self, capsys, one_node_file):
        code = main(["uac-qhs", one_node_file])
        assert code == 0
        out = capsys.readouterr().out
        assert "yes_integral" in out

    def test_main_error_goes_to_stderr(self, capsys):
        code = main(["uac-qhs", "/nonexistent/y.splice"])
        assert code == 2
        assert "invalid" in capsys.readouterr().err


class TestSelftest:
    def test_brieskorn_only_small(self):
        code, report = run(
            ["selftest", "--brieskorn", "--max-alpha", "6", "--n", "3..3"]
        )
        assert code == 0
        assert report.verdict == "pass"
        assert report.numbers["brieskorn_tuples_checked"] == str(6 ** 3)

    def test_plumbing_only_small(self):
        code, report = run(["selftest", "--plumbing", "--seeds", "10"])
        assert code == 0
        assert report.numbers["plumbing_seeds_run"] == "10"
        assert report.numbers["plumbing_seed_failures"] == "0"
