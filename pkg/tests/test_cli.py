"""
End-to-end tests for lpc_cli.py through main(argv).
"""
import json

import pytest

from lpc_cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def cpc_file(tmp_path, capsys):
    path = tmp_path / "cpc.json"
    code, out, _ = _run(capsys, "construct", "mds_cpc", "--q", "4", "--w", "3", "-o", str(path))
    assert code == 0
    summary = json.loads(out)
    assert (summary["n"], summary["t"], summary["w"], summary["size"]) == (12, 3, 3, 16)
    assert path.exists()
    return path


class TestCodeCommands:
    """Construct, verify, encode and decode on a saved (12,3,3) code."""

    def test_verify(self, capsys, cpc_file):
        """Exhaustive verification with the size bound and minimum distance."""
        code, out, _ = _run(capsys, "verify", str(cpc_file), "--min-distance")
        payload = json.loads(out)
        assert code == 0
        assert payload["passed"] is True
        assert payload["hot_sets"] == 220
        assert payload["size_bound"]["within"] is True
        assert payload["min_distance"] == 2

    def test_sampled_verify(self, capsys, cpc_file):
        code, out, _ = _run(capsys, "verify", str(cpc_file), "--sampled", "--trials", "20", "--seed", "4")
        assert code == 0
        assert json.loads(out)["mode"] == "sampled"

    def test_encode_then_decode(self, capsys, cpc_file):
        """The encoded word avoids the hot wires and decodes to its codeset."""
        code, out, _ = _run(capsys, "encode", str(cpc_file), "--codeset", "5", "--hot", "1,5,9")
        assert code == 0
        encoded = json.loads(out)
        assert encoded["weight"] == 3
        assert not set(encoded["codeword"]) & {1, 5, 9}

        word = ",".join(str(x) for x in encoded["codeword"])
        code, out, _ = _run(capsys, "decode", str(cpc_file), "--word", word)
        assert code == 0
        assert json.loads(out)["codeset"] == 5

    def test_too_many_hot_wires(self, capsys, cpc_file):
        """Errors go to stderr as JSON with exit code 1."""
        code, _, err = _run(capsys, "encode", str(cpc_file), "--codeset", "0", "--hot", "0,1,2,3")
        assert code == 1
        assert json.loads(err)["type"] == "CodeParameterError"

    def test_decode_non_codeword(self, capsys, cpc_file):
        code, _, err = _run(capsys, "decode", str(cpc_file), "--word", "0,1")
        assert code == 1
        assert json.loads(err)["type"] == "MalformedCodewordError"

    def test_bad_construction_parameters(self, capsys):
        code, _, err = _run(capsys, "construct", "mds_cpc", "--q", "4", "--w", "4")
        assert code == 1
        assert json.loads(err)["type"] == "CodeFileError"


class TestBoundsCommands:
    """Size bounds and comparison tables."""

    def test_bounds_table(self, capsys):
        code, out, _ = _run(capsys, "bounds", "12", "3", "3")
        assert code == 0
        assert "cpc_count_bound" in out

    def test_bounds_json(self, capsys):
        code, out, _ = _run(capsys, "bounds", "12", "3", "3", "--json")
        assert code == 0
        assert json.loads(out)["cpc_count_bound"] == 84

    def test_bounds_rejects_bad_parameters(self, capsys):
        code, _, err = _run(capsys, "bounds", "4", "3", "2")
        assert code == 1
        assert json.loads(err)["type"] == "CodeParameterError"

    def test_compare_examples(self, capsys):
        """The worked comparison rows lead with the RS code."""
        code, out, _ = _run(capsys, "compare", "--examples", "--json")
        rows = json.loads(out)
        assert code == 0
        assert rows[0]["method"] == "mds_cpc"
        assert rows[0]["size"] == 16**5

    def test_compare_needs_parameters(self, capsys):
        code, _, err = _run(capsys, "compare")
        assert code == 1
        assert "--examples" in json.loads(err)["error"]

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit):
            main(["frobnicate"])


class TestMappingCommands:
    """Mapping synthesis and verification."""

    def test_synthesize_and_verify(self, capsys, tmp_path):
        path = tmp_path / "leaf.json"
        code, out, _ = _run(capsys, "synth-mapping", "--sizes", "1,2", "--w", "1", "-o", str(path))
        payload = json.loads(out)
        assert code == 0
        assert payload["groups"] == [[0], [1, 2]]
        assert payload["verify"]["passed"] is True

        code, out, _ = _run(capsys, "verify-mapping", str(path))
        assert code == 0
        assert json.loads(out)["inputs_checked"] == 4

    def test_infeasible(self, capsys):
        """An infeasible request prints its Hall witness and exits 1."""
        code, out, _ = _run(capsys, "synth-mapping", "--sizes", "1,1", "--w", "0")
        assert code == 1
        assert json.loads(out)["feasible"] is False


class TestSimulateCommand:
    """Bus simulation from a config file."""

    def test_json_and_chart(self, capsys, tmp_path, cpc_file):
        """The --steps override applies and the chart is written."""
        config = tmp_path / "sim.json"
        config.write_text(
            json.dumps({"code_path": cpc_file.name, "steps": 10000, "policy": "top_t", "seed": 7, "decay": 0.9}),
            encoding="utf-8",
        )
        chart = tmp_path / "chart.html"
        code, out, _ = _run(capsys, "simulate", str(config), "--steps", "300", "--json", "--chart", str(chart))
        payload = json.loads(out)
        assert code == 0
        assert payload["steps"] == 300
        assert payload["hot_violations"] == 0
        assert payload["chart"]["chart_type"] == "wire_transitions"
        assert chart.exists()

    def test_table_output(self, capsys, tmp_path, cpc_file):
        config = tmp_path / "sim.json"
        config.write_text(json.dumps({"code_path": str(cpc_file), "steps": 50, "decay": 0.5}), encoding="utf-8")
        code, out, _ = _run(capsys, "simulate", str(config))
        assert code == 0
        assert out.startswith("# thermal proxy:")
        assert "transitions" in out
