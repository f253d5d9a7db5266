import orjson
import pytest
from click.testing import CliRunner

from app.main import cli


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, ["--log-format", "text", *args])


def test_generate_numeric_family(runner):
    result = invoke(runner, "generate", "--family", "catalan", "--n", "6")
    assert result.exit_code == 0
    assert result.stdout == "1 1 2 5 14 42\n"


def test_generate_polynomial_family(runner):
    result = invoke(runner, "generate", "--family", "q_schroder", "--n", "3")
    assert result.stdout == "[1]\n[1,1]\n[1,3,2]\n"


def test_generate_specialized(runner):
    result = invoke(runner, "generate", "--family", "q_schroder", "--n", "3", "--q", "1")
    assert result.stdout == "1 2 6\n"


def test_generate_triangle(runner):
    result = invoke(runner, "generate", "--triangle", "pascal", "--n", "3")
    assert result.stdout == "1\n1  1\n1  2  1\n"


def test_check_sm_passes(runner):
    result = invoke(runner, "check", "--family", "schroder", "--property", "sm", "--n", "4")
    assert result.exit_code == 0
    data = orjson.loads(result.stdout)
    assert data["result"] == "pass"
    assert data["property"] == "SM"
    assert data["config"]["family"] == "schroder"
    assert data["tool_version"]


def test_check_q_sm_passes(runner):
    result = invoke(runner, "check", "--family", "q_schroder", "--property", "q-sm", "--n", "3")
    assert result.exit_code == 0
    assert orjson.loads(result.stdout)["property"] == "qSM"


def test_singular_hankel_is_indeterminate_failure(runner, write_json):
    path = write_json("ones.json", {"name": "ones", "terms": [1] * 10})
    result = invoke(runner, "check", "--seq-file", path, "--property", "sm", "--n", "2")
    assert result.exit_code == 3
    data = orjson.loads(result.stdout)
    assert data["result"] == "fail"
    assert data["indeterminate"] is True


def test_unknown_family_is_usage_error(runner):
    result = invoke(runner, "generate", "--family", "nope")
    assert result.exit_code == 2
    assert "error: UnknownFamily" in result.stderr


def test_cap_exceeded(runner):
    result = invoke(runner, "generate", "--family", "catalan", "--n", "100")
    assert result.exit_code == 1
    assert "--max-n" in result.stderr


def test_cap_override(runner):
    result = invoke(runner, "generate", "--family", "catalan", "--n", "100", "--max-n", "100")
    assert result.exit_code == 0
    assert len(result.stdout.split()) == 100


def test_two_sources_rejected(runner, write_json):
    path = write_json("ones.json", {"name": "ones", "terms": [1, 1, 1]})
    result = invoke(runner, "generate", "--family", "catalan", "--seq-file", path)
    assert result.exit_code == 2


def test_unknown_property_choice(runner):
    result = invoke(runner, "check", "--family", "catalan", "--property", "bogus")
    assert result.exit_code == 2


def test_replay_reproduces_report(runner, tmp_path):
    out = tmp_path / "report.json"
    first = invoke(runner, "check", "--family", "bell_numbers", "--property", "tp", "--n", "3", "--out", str(out))
    assert first.exit_code == 0
    assert first.stdout == ""
    again = invoke(runner, "replay", str(out))
    assert again.exit_code == 0
    assert orjson.loads(again.stdout) == orjson.loads(out.read_bytes())


def test_replay_rejects_non_report(runner, write_json):
    path = write_json("plain.json", {"name": "x"})
    result = invoke(runner, "replay", path)
    assert result.exit_code == 1
    assert "InvalidInputFile" in result.stderr


def test_families_listing(runner):
    result = invoke(runner, "families", "--format", "json")
    data = orjson.loads(result.stdout)
    assert "apery_general" in data["families"]
    assert "shifted_binomial" in data["triangles"]
    assert "narayana_B" in data["presets"]


def test_iterate(runner):
    result = invoke(runner, "iterate", "--family", "catalan", "--depth", "2")
    assert result.exit_code == 0
    data = orjson.loads(result.stdout)
    assert [level["length"] for level in data["levels"]] == [10, 8]


def test_iterate_strict_failure(runner):
    result = invoke(runner, "iterate", "--family", "binomial_powers", "--depth", "1", "--n", "5", "--strict")
    assert result.exit_code == 3


def test_transform(runner):
    result = invoke(runner, "transform", "--triangle", "shifted_binomial", "--family", "catalan", "--n", "5")
    assert result.stdout == "1 2 6 22 90\n"


def test_convolve(runner):
    result = invoke(runner, "convolve", "--triangle", "pascal", "--family", "factorial", "--n", "5")
    assert result.stdout == "1 2 6 24 120\n"


def test_explore(runner):
    result = invoke(runner, "explore", "--r", "2", "--s", "1", "--depth", "2", "--n", "20")
    assert result.exit_code == 0
    data = orjson.loads(result.stdout)
    assert [c["check_id"] for c in data["checks"]] == ["iterate_logconvex"]
    assert "Finite verification only" in data["statement"]


def test_jacobi_preset(runner):
    result = invoke(runner, "check", "--recursive", "narayana", "--property", "jacobi")
    assert result.exit_code == 0
    data = orjson.loads(result.stdout)
    assert data["combo"] == "lower_b_upper_c"
    assert data["notes"]


def test_explore_q_grid_option(runner):
    result = invoke(runner, "explore", "--r", "1", "--s", "1", "--symbolic-q", "--sm-order", "1", "--q-grid", "1,2")
    assert result.exit_code in (0, 3)
    data = orjson.loads(result.stdout)
    assert data["config"]["q_grid"] == ["1", "2"]
    assert data["checks"][0]["certificate"]["q_grid"] == ["1", "2"]
