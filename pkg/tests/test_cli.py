"""CLI: every subcommand, exit codes and deterministic output."""

import json

import pytest

from relugeo.cli import run
from relugeo import jsonio
from relugeo.network import ShallowNet


RELU_NET = {"W1": [["1"]], "b1": ["0"], "W2": ["1"], "b2": "0"}
RELU_SCALED = {"W1": [["2"]], "b1": ["0"], "W2": ["1/2"], "b2": "0"}
ABS_NET = {"W1": [["1"], ["-1"]], "b1": ["0", "0"], "W2": ["1", "1"], "b2": "0"}
COUNTEREXAMPLE = {
    "expr": (
        "max(min(affine([0,1],0), affine([1,1],0)),"
        " min(max(affine([0,1],0), affine([1,1],0)), affine([0,0],0)))"
    ),
    "breaklines": [
        {"d": [1, 0], "q": "0"},
        {"d": [0, 1], "q": "0"},
        {"d": [1, 1], "q": "0"},
    ],
}


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestCanon:
    def test_relu(self, files, capsys):
        code, out = invoke(capsys, "canon", files("relu.json", RELU_NET))
        assert code == 0
        form = json.loads(out)
        assert form["terms"] == [{"d": [1], "q": "0", "kink": "1"}]
        assert form["affine"] == ["0"]

    def test_output_reparses(self, files, capsys):
        _, out = invoke(capsys, "canon", files("abs.json", ABS_NET))
        assert jsonio.from_dict(json.loads(out)).d0 == 1


class TestClassify:
    def test_abs_case_ii(self, files, capsys):
        code, out = invoke(capsys, "classify", files("abs.json", ABS_NET))
        assert code == 0
        report = json.loads(out)
        assert report["case"] == "II"
        assert report["min_width"] == 2
        assert report["components"] == [{"dim": 2, "count": "2"}]


class TestEnum:
    def test_r_samples(self, files, capsys):
        cf = {"terms": [], "affine": ["1"], "bias": "0", "d0": 1}
        code, out = invoke(capsys, "enum", files("aff.json", cf), "--r", "0,1,-2")
        assert code == 0
        fams = json.loads(out)["families"]
        assert len(fams) == 1
        assert fams[0]["r_values"] == ["0", "1", "-2"]
        assert len(fams[0]["tuples"]) == 3


class TestEquiv:
    def test_scaled_equal(self, files, capsys):
        code, out = invoke(
            capsys, "equiv", files("a.json", RELU_NET), files("b.json", RELU_SCALED)
        )
        assert code == 0
        assert json.loads(out)["verdict"] == "equal"

    def test_different_exit_code(self, files, capsys):
        code, out = invoke(
            capsys, "equiv", files("a.json", RELU_NET), files("b.json", ABS_NET)
        )
        assert code == 1
        got = json.loads(out)
        assert got["verdict"] == "different"
        assert got["witness"] == {"d": [1], "q": "0"}


class TestSynth:
    def test_success(self, files, capsys):
        spec = {"expr": "relu(affine([1],0))", "breaklines": "auto"}
        code, out = invoke(capsys, "synth", files("spec.json", spec))
        assert code == 0
        assert json.loads(out)["neurons"] == [
            {"d": [1], "q": "0", "kink": "1", "orient": 1}
        ]

    def test_counterexample(self, files, capsys):
        path = files("counter.json", COUNTEREXAMPLE)
        code, out = invoke(capsys, "synth", path)
        assert code == 1
        got = json.loads(out)
        assert got["error"] == "NotTransversal"
        assert got["violation"]["indices"] == [1, 2, 3]

    def test_counterexample_unchecked(self, files, capsys):
        path = files("counter.json", COUNTEREXAMPLE)
        code, out = invoke(capsys, "synth", path, "--unchecked")
        assert code == 1
        assert json.loads(out)["error"] == "NotRepresentable"


class TestEval:
    def test_net(self, files, capsys):
        # values starting with '-' need the --x=value spelling
        code, out = invoke(capsys, "eval", files("abs.json", ABS_NET), "--x=-3/2")
        assert code == 0
        assert out.strip() == "3/2"


class TestRandom:
    def test_deterministic_and_loadable(self, capsys):
        code, out1 = invoke(capsys, "random", "--d0", "2", "--d1", "3", "--seed", "5")
        assert code == 0
        _, out2 = invoke(capsys, "random", "--d0", "2", "--d1", "3", "--seed", "5")
        assert out1 == out2
        assert isinstance(jsonio.from_dict(json.loads(out1)), ShallowNet)

    def test_transversal_flag(self, capsys):
        from relugeo.network import effective_tuple
        from relugeo.synthesis import check_transversality

        _, out = invoke(
            capsys, "random", "--d0", "2", "--d1", "4", "--seed", "3", "--transversal"
        )
        net = jsonio.from_dict(json.loads(out))
        bls = [nr.breakline for nr in effective_tuple(net).neurons]
        assert len(set(bls)) == len(bls)
        assert check_transversality(bls) is None


class TestErrors:
    def test_missing_file_exit_2(self, capsys, tmp_path):
        code, _ = invoke(capsys, "canon", str(tmp_path / "nope.json"))
        assert code == 2

    def test_bad_expression_exit_2(self, files, capsys):
        code, _ = invoke(capsys, "synth", files("bad.json", {"expr": "relu("}))
        assert code == 2

    def test_unknown_command_exit_2(self, capsys):
        assert run(["frobnicate"]) == 2
        capsys.readouterr()
