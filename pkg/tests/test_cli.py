import json
import os
from unittest import mock

import pytest

from galeforge import cli, invariants, loops
from galeforge.arrangement import PolarizedArrangement, SignVector
from galeforge.contrib.graph import Graph, to_arrangement

from .conftest import load_mock, mock_path


@pytest.fixture(autouse=True)
def no_cache_env():
    with mock.patch.dict(os.environ):
        os.environ.pop("GALEFORGE_CACHE", None)
        yield


def test_no_command_prints_help(capsys):
    assert cli.run([]) == 1
    assert "usage: galeforge" in capsys.readouterr().out


def test_version(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.run(["--version"])
    assert excinfo.value.code == 0
    assert capsys.readouterr().out.startswith("galeforge ")


@mock.patch("galeforge.cli.run", return_value=3)
def test_main_exits_with_run_code(run):
    with pytest.raises(SystemExit) as excinfo:
        cli.main()
    assert excinfo.value.code == 3


def test_missing_file(capsys):
    assert cli.run(["validate", mock_path("does_not_exist.json")]) == 1
    assert capsys.readouterr().err.startswith("error: ")


def test_validate(capsys):
    assert cli.run(["validate", mock_path("tp1.json")]) == 0
    assert capsys.readouterr().out == "valid\n"


def test_validate_not_unimodular(capsys):
    assert cli.run(["validate", mock_path("not_unimodular.json")]) == 1
    assert "not totally unimodular" in capsys.readouterr().out


def test_chambers_requires_a_valid_arrangement(capsys):
    assert cli.run(["chambers", mock_path("not_unimodular.json")]) == 1
    assert "not totally unimodular" in capsys.readouterr().err


@pytest.mark.parametrize(
    ("flag", "expected"),
    [
        ([], "++\n-+\n"),
        (["--both"], "++\n-+\n"),
        (["--feasible"], "++\n+-\n-+\n"),
        (["--bounded"], "++\n-+\n--\n"),
        (["--feasible", "--lattice"], "++\n+-\n-+\n"),
    ],
)
def test_chambers(flag, expected, capsys):
    assert cli.run(["chambers", mock_path("tp1.json")] + flag) == 0
    assert capsys.readouterr().out == expected


def test_chambers_filters_are_exclusive(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.run(["chambers", mock_path("tp1.json"), "--feasible", "--bounded"])
    assert excinfo.value.code == 1
    assert "not allowed with argument" in capsys.readouterr().err


def test_usage_errors_exit_with_invalid_input(capsys):
    with pytest.raises(SystemExit) as excinfo:
        cli.run(["chambers"])
    assert excinfo.value.code == 1
    assert "usage: galeforge chambers" in capsys.readouterr().err


def test_bases(capsys):
    assert cli.run(["bases", mock_path("tp1.json")]) == 0
    assert capsys.readouterr().out == (
        "{e1} vertex (0, 1) mu -+\n"
        "{e2} vertex (1, 0) mu ++\n"
    )


def test_dual_to_stdout(capsys, tp1):
    assert cli.run(["dual", mock_path("tp1.json")]) == 0
    dual = PolarizedArrangement.from_json(json.loads(capsys.readouterr().out))
    assert dual.is_equivalent(tp1.gale_dual())


def test_dual_to_file(tmp_path, capsys, tp1):
    target = tmp_path / "dual.json"
    assert cli.run(["dual", mock_path("tp1.json"), "-o", str(target)]) == 0
    assert capsys.readouterr().out == ""
    dual = PolarizedArrangement.loads(target.read_text())
    assert dual.gale_dual().is_equivalent(tp1)


def test_graph_build(capsys, three_cycle):
    argv = ["graph", "build", mock_path("three_cycle_graph.json"), "--eta", "1,1", "--zeta", "1,0,0"]
    assert cli.run(argv) == 0
    assert json.loads(capsys.readouterr().out) == three_cycle.to_json()


def test_graph_build_negative_values(capsys):
    graph = Graph.from_json(load_mock("three_cycle_graph.json"))
    argv = ["graph", "build", mock_path("three_cycle_graph.json"), "--eta=1,1", "--zeta=-1,0,2"]
    assert cli.run(argv) == 0
    expected = to_arrangement(graph, (1, 1), (-1, 0, 2))
    assert json.loads(capsys.readouterr().out) == expected.to_json()


def test_graph_build_bad_eta(capsys):
    argv = ["graph", "build", mock_path("three_cycle_graph.json"), "--eta", "1,x", "--zeta", "1,0,0"]
    assert cli.run(argv) == 1
    assert "comma separated integers" in capsys.readouterr().err


def test_abelianize(capsys):
    assert cli.run(["abelianize", "--ranks", "2,2"]) == 0
    graph = Graph.from_json(json.loads(capsys.readouterr().out))
    assert graph.framing == "v1_1"
    assert len(graph.edges) == 4


def test_upsilon(capsys):
    assert cli.run(["upsilon", mock_path("tp1.json"), "--max-degree", "3"]) == 0
    assert capsys.readouterr().out == "z^(1) : 1 + t^2\n"


def test_upsilon_oracle_with_json(tmp_path, capsys):
    target = tmp_path / "series.json"
    argv = ["upsilon", mock_path("tp1.json"), "-D", "3", "--oracle", "--json", str(target)]
    assert cli.run(argv) == 0
    assert capsys.readouterr().out == "z^(1) : 1 + t^2\n"
    assert json.loads(target.read_text()) == {
        "degree_bound": 3,
        "terms": [{"gamma": [1], "tau": [[0, 1], [2, 1]]}],
    }


def test_upsilon_both(capsys):
    assert cli.run(["upsilon", mock_path("tp1.json"), "-D", "3", "--both"]) == 0
    assert capsys.readouterr().out == (
        "formula:\nz^(1) : 1 + t^2\noracle:\nz^(1) : 1 + t^2\n"
    )


def test_upsilon_without_terms(capsys):
    assert cli.run(["upsilon", mock_path("tp1.json"), "-D", "1"]) == 0
    assert capsys.readouterr().out == "no terms up to degree 1\n"


def test_upsilon_twist_is_unsupported_by_the_formula(capsys):
    argv = ["upsilon", mock_path("tp1.json"), "-D", "3", "--twist", "1,0"]
    assert cli.run(argv) == 4
    assert "not supported" in capsys.readouterr().err


def test_upsilon_twist_with_the_oracle(capsys):
    argv = ["upsilon", mock_path("tp1.json"), "-D", "2", "--oracle", "--twist", "1,0"]
    assert cli.run(argv) == 0
    assert "z^(1) : 1\n" in capsys.readouterr().out


def test_upsilon_short_chamber(capsys):
    argv = ["upsilon", mock_path("tp1.json"), "-D", "3", "--alpha-plus", "+"]
    assert cli.run(argv) == 1
    assert "has length 1, expected 2" in capsys.readouterr().err


def test_upsilon_chamber_overrides(capsys):
    argv = ["upsilon", mock_path("tp1.json"), "-D", "3", "--alpha-plus", "++", "--alpha-minus=--"]
    assert cli.run(argv) == 0
    assert capsys.readouterr().out == "z^(1) : 1 + t^2\n"


def test_verify(capsys):
    assert cli.run(["verify", mock_path("tp2.json"), "--max-degree", "12"]) == 0
    assert capsys.readouterr().out.startswith("all degrees match")


def test_verify_reports_mismatches(capsys):
    original = loops.epsilon

    def corrupted(A, b):
        return tuple(x + 1 for x in original(A, b))

    with mock.patch.object(loops, "epsilon", corrupted):
        assert cli.run(["verify", mock_path("tp1.json"), "-D", "3"]) == cli.EXIT_MISMATCH
    out = capsys.readouterr().out
    assert out.startswith("1 mismatching degrees")
    assert "z^(1) formula: 2 oracle: 1 + t^2" in out


def test_euler(capsys):
    assert cli.run(["euler", mock_path("tp2.json"), "-D", "6"]) == 0
    assert capsys.readouterr().out == "z^(1) : 3\nz^(2) : 6\n"


def test_oracle(capsys):
    assert cli.run(["oracle", "--weights", "[1, 1, 1]", "--eta", "1"]) == 0
    assert capsys.readouterr().out == "1 + t^2 + t^4\n"


def test_oracle_with_probe(capsys):
    argv = ["oracle", "--weights", "[[1], [1], [-1]]", "--eta", "[1]", "--probe", "1,2,3"]
    assert cli.run(argv) == 0
    assert capsys.readouterr().out == "1 + t^2\n"


def test_oracle_degenerate(capsys):
    argv = ["oracle", "--weights", "[[1, 0], [0, 1], [1, 1]]", "--eta", "[1, 0]"]
    assert cli.run(argv) == 3
    assert capsys.readouterr().err.startswith("error: degenerate parameters")


def test_oracle_bad_json(capsys):
    assert cli.run(["oracle", "--weights", "[1,", "--eta", "1"]) == 1
    assert "--weights is not valid JSON" in capsys.readouterr().err


def test_ext(capsys):
    argv = ["ext", mock_path("tp1.json"), "--alpha1", "++", "--alpha2", "++"]
    assert cli.run(argv) == 0
    assert capsys.readouterr().out == "1 + t^2\n"


def test_tilting(capsys):
    assert cli.run(["tilting", mock_path("tp1.json"), "--alpha", "-+"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "T(++) has 2 Verma subquotients"
    assert len(lines) == 3


@mock.patch("galeforge.cli.setup_logger")
def test_verbose_sets_up_logging(setup_logger, tmp_path):
    logfile = str(tmp_path / "galeforge.log")
    assert cli.run(["-v", "--logfile", logfile, "validate", mock_path("tp1.json")]) == 0
    setup_logger.assert_called_with(10, log_filename=logfile)


def test_threads_flag(capsys):
    with mock.patch("galeforge.invariants.verify", wraps=cli.invariants.verify) as verify:
        assert cli.run(["--threads", "2", "verify", mock_path("tp1.json"), "-D", "3"]) == 0
    assert verify.call_args.kwargs["threads"] == 2


def test_results_are_cached(tmp_path, capsys):
    argv = ["chambers", mock_path("tp1.json")]
    with mock.patch.dict(os.environ, {"GALEFORGE_CACHE": str(tmp_path)}):
        assert cli.run(argv) == 0
        first = capsys.readouterr().out
        assert len(os.listdir(tmp_path)) == 1
        with mock.patch("galeforge.cli.cmd_chambers", side_effect=AssertionError):
            assert cli.run(argv) == 0
        assert capsys.readouterr().out == first


def test_cache_keys_on_options(tmp_path, capsys):
    with mock.patch.dict(os.environ, {"GALEFORGE_CACHE": str(tmp_path)}):
        cli.run(["chambers", mock_path("tp1.json")])
        cli.run(["chambers", mock_path("tp1.json"), "--feasible"])
    assert len(os.listdir(tmp_path)) == 2
    assert capsys.readouterr().out == "++\n-+\n++\n+-\n-+\n"


def test_no_cache_flag(tmp_path, capsys):
    with mock.patch.dict(os.environ, {"GALEFORGE_CACHE": str(tmp_path)}):
        assert cli.run(["--no-cache", "chambers", mock_path("tp1.json")]) == 0
    assert os.listdir(tmp_path) == []


@pytest.mark.parametrize(
    ("options", "alpha1", "alpha2"),
    [
        (["--alpha1", "-+", "--alpha2", "-+"], "-+", "-+"),
        (["--alpha1=-+", "--alpha2=-+"], "-+", "-+"),
        (["--alpha1", "--", "--alpha2", "++"], "--", "++"),
        (["--alpha1=--", "--alpha2=++"], "--", "++"),
    ],
)
def test_ext_chambers_starting_with_minus(options, alpha1, alpha2, capsys, tp1):
    assert cli.run(["ext", mock_path("tp1.json")] + options) == 0
    expected = invariants.ext_poincare(tp1, SignVector.parse(alpha1), SignVector.parse(alpha2))
    assert capsys.readouterr().out == f"{expected}\n"


def test_ext_rejects_other_characters(capsys):
    argv = ["ext", mock_path("tp1.json"), "--alpha1=+x", "--alpha2", "++"]
    assert cli.run(argv) == 1
    assert capsys.readouterr().err.startswith("error: ")


def test_upsilon_twist_length_is_checked(capsys):
    argv = ["upsilon", mock_path("tp1.json"), "-D", "2", "--oracle", "--twist", "1"]
    assert cli.run(argv) == 1
    assert "twist has length 1, expected 2" in capsys.readouterr().err


def test_threads_must_be_positive(capsys):
    assert cli.run(["--threads", "0", "verify", mock_path("tp1.json"), "-D", "3"]) == 1
    assert "--threads must be positive" in capsys.readouterr().err


def test_attach_sign_values():
    argv = ["upsilon", "a.json", "--alpha-plus", "-+", "--alpha-minus=--", "--twist", "1,0"]
    assert cli._attach_sign_values(argv) == [
        "upsilon", "a.json", "--alpha-plus=signs:-+", "--alpha-minus=signs:--", "--twist", "1,0",
    ]
    # Only sign vectors are glued to a following token.
    assert cli._attach_sign_values(["--alpha", "x"]) == ["--alpha", "x"]
