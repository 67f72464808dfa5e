import json
import subprocess
import sys
from pathlib import Path

import pytest

from rootmonoid.cli import render, run

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def golden_name(case):
    return "_".join([case["input"][:-5]] + [a.strip("-") for a in case["args"]]) + ".out"


def invoke(args, input_path):
    return subprocess.run([sys.executable, "-m", "rootmonoid", *args, "--input", str(input_path)],
                          capture_output=True, text=True)


@pytest.mark.parametrize("case", CASES, ids=golden_name)
def test_golden(case):
    result = invoke(case["args"], GOLDEN / case["input"])
    assert result.returncode == case["exit"]
    assert result.stdout == (GOLDEN / golden_name(case)).read_text()


def test_roots_listing():
    out = json.loads((GOLDEN / "orthant2_roots_bound_2.out").read_text())
    assert [len(r["roots"]) for r in out["rays"]] == [3, 3]


def test_exit_codes_in_process(tmp_path, capsys):
    assert run(["verify", "--input", str(GOLDEN / "re1.json")]) == 0
    assert run(["aut", "--input", str(GOLDEN / "ray.json")]) == 3
    assert run(["validate", "--input", str(GOLDEN / "nonregular.json")]) == 2
    assert run(["build", "--input", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "list.json"
    bad.write_text("[1, 2]")
    assert run(["build", "--input", str(bad)]) == 1
    capsys.readouterr()


def test_bad_collection_is_invalid(tmp_path, capsys):
    data = json.loads((GOLDEN / "re1.json").read_text())
    data["collection"]["e2"] = [[0, -1]]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    assert run(["verify", "--input", str(path)]) == 2
    assert json.loads(capsys.readouterr().out)["failed"] == "compatible"


def test_search_box_exceeded_is_incomplete(tmp_path, capsys):
    data = {"cone": {"rank": 2, "rays": [[1, 0], [1, -7]]},
            "collection": {"face": {"rays": [[1, 0]]}, "e1": [[-1, -1]], "e2": [[-1, -1]]}}
    path = tmp_path / "wide.json"
    path.write_text(json.dumps(data))
    assert run(["build", "--degree-bound", "1", "--input", str(path)]) == 3
    capsys.readouterr()


def test_output_file(tmp_path):
    out = tmp_path / "report.json"
    assert run(["verify", "--input", str(GOLDEN / "re2.json"), "--output", str(out)]) == 0
    assert json.loads(out.read_text())["passed"] is True


def test_invalid_reductive_cone(tmp_path, capsys):
    data = json.loads((GOLDEN / "mat2.json").read_text())
    data["cone"]["rays"] = [[1, -1], [-1, 1]]
    path = tmp_path / "line.json"
    path.write_text(json.dumps(data))
    assert run(["validate", "--input", str(path)]) == 2
    assert run(["reductive-aut", "--input", str(path)]) == 2
    capsys.readouterr()


def test_render_text():
    text = render({"b": [1, 2], "a": {"x": True, "y": None}}, "text")
    assert text == "a:\n  x: yes\n  y: -\nb: [1,2]\n"


def test_rejects_nonpositive_bound(capsys):
    with pytest.raises(SystemExit):
        run(["roots", "--bound", "0", "--input", str(GOLDEN / "orthant2.json")])
    capsys.readouterr()
