import io
import json

import pytest

from hintikka.cli import main

AB = "param a : i\nparam b : i\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def make(text, name="in.sen"):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return make


def test_check_first_example_passes(write):
    f = write(AB + "a =[i] b\na =[i] a\nb =[i] b\nb =[i] a\n")
    code, out, _ = run("check", "--suite", "steen", "--universe-depth", "1", f)
    assert code == 0
    assert "Fail" not in out


def test_check_contradiction_fails_with_witness(write):
    f = write(AB + "a =[i] b\n~(a =[i] b)\n")
    code, out, _ = run("check", "--format", "json", f)
    assert code == 1
    reports = {r["property"]: r for r in json.loads(out)["reports"]}
    assert reports["nabla_c"]["status"] == "Fail"
    assert reports["nabla_c"]["witnesses"]


def test_check_extensional_suite_on_prop_file(write):
    f = write("param q : o\n[q]\n!~ [q]\n", "in.prop")
    code, out, _ = run("check", "--suite", "brown", f)
    assert code == 1
    assert "nabla_c" in out


@pytest.mark.parametrize("cmd", ["check", "translate", "close", "model", "reduce"])
def test_malformed_input_is_exit_2(write, cmd):
    f = write(AB + "a =[i] (\n")
    code, _, err = run(cmd, f)
    assert code == 2
    assert "error" in err


def test_missing_file_is_exit_2(tmp_path):
    assert run("check", str(tmp_path / "absent.sen"))[0] == 2


def test_bad_flags_are_exit_2(write):
    f = write(AB)
    assert run("check", "--universe-depth", "-1", f)[0] == 2
    assert run("close", "--format", "yaml", f)[0] == 2


def test_translate_lists_embedded_and_meta_equations(write):
    f = write(AB + "a =[i] b\na =[i] a\nb =[i] b\nb =[i] a\n")
    code, out, _ = run("translate", "--format", "json", f)
    assert code == 0
    props = json.loads(out)["propositions"]
    eqs = [f"{x} =[i] {y}" for x in "ab" for y in "ab"]
    assert sorted(props) == sorted(eqs + [e.replace("=", "!=", 1) for e in eqs])


def test_translate_renders_red_negation(write):
    f = write("param a : i\nparam p : ((o > o) > i)\na =[i] p (~)\n")
    code, out, _ = run("translate", f)
    assert code == 0
    assert "a !=[i] p (~)" in out


def test_translate_empty_file(write):
    assert run("translate", write("")) == (0, "", "")


def test_close_first_example(write, tmp_path):
    f = write(AB + "a =[i] b\n")
    log = tmp_path / "steps.jsonl"
    code, out, _ = run("close", "--universe-depth", "0", "--provenance", str(log), f)
    assert code == 0
    assert out.splitlines()[2:] == ["a =[i] a", "a =[i] b", "b =[i] a", "b =[i] b"]
    steps = [json.loads(x) for x in log.read_text().splitlines()]
    assert steps[0]["rule"] == "seed"


def test_close_reflexive_disequation_is_inconsistent(write):
    code, out, _ = run("close", write("param a : i\n~(a =[i] a)\n"))
    assert code == 1
    assert out.startswith("inconsistent")


def test_close_iteration_limit_is_exit_3(write):
    f = write(AB + "a =[i] b | ~(a =[i] b)\n")
    code, _, err = run("close", "--max-iterations", "1", f)
    assert code == 3
    assert "resource limit" in err


def test_model_of_unsaturated_set(write):
    code, _, err = run("model", "--universe-depth", "0", write(AB + "a =[i] b\n"))
    assert code == 1
    assert "NotSaturated" in err


def test_model_of_closed_set(write):
    f = write(AB + "a =[i] b\n")
    code, closed, _ = run("close", "--universe-depth", "0", f)
    assert run("model", "--universe-depth", "0", write(closed, "h.sen"))[0] == 1
    code, closed, _ = run("close", "--universe-depth", "0", "--saturate", f)
    assert code == 0
    code, out, _ = run("model", "--universe-depth", "0", "--format", "json", write(closed, "h.sen"))
    assert code == 0
    d = json.loads(out)
    assert d["iotaClasses"] == [["a", "b"]]
    assert d["report"]["status"] == "Pass"


def test_reduce_confirms(write):
    code, out, _ = run("reduce", write(AB + "a =[i] b\n"))
    assert code == 0
    assert out.rstrip().endswith("verdict: reduction-confirmed")


def test_reduce_json_shape(write):
    code, out, _ = run("reduce", "--format", "json", "--universe-depth", "0", write(AB + "a =[i] b\n"))
    assert code == 0
    assert set(json.loads(out)) == {"steen", "brown", "verdict", "translated"}


@pytest.mark.parametrize("argv", [
    ["check", "--format", "json"], ["close"], ["close", "--seed", "7"], ["reduce"], ["translate"],
])
def test_identical_runs_are_byte_identical(write, argv):
    f = write("param a : i\nparam b : i\nparam q : o\nq | a =[i] b\n~(b =[i] a) | q\n")
    first = run(*argv, f)
    assert first[0] in (0, 1)
    for _ in range(2):
        assert run(*argv, f) == first
