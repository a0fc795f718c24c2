import contextlib
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from build_fixtures import FIXTURES, GOLDEN, fixtures, resolve, run_cli
from cli_cases import CASES
from persistence_kernel import __version__
from persistence_kernel.cli import COMMANDS, main
from persistence_kernel.serialization import dumps


@pytest.mark.parametrize("name,argv", CASES, ids=[c[0] for c in CASES])
def test_golden_output(name, argv):
    code, out = run_cli(resolve(argv))
    assert code == 0
    assert out == (GOLDEN / f"{name}.out").read_text(encoding="utf-8")
    assert run_cli(resolve(argv)) == (code, out)


def test_every_subcommand_has_a_golden():
    assert {argv[0] for _, argv in CASES} == set(COMMANDS)


def _run_capturing(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("argv,code,message", [
    (["validate", str(FIXTURES / "noncommuting.json")], 1, "NonCommuting"),
    (["validate", str(FIXTURES / "not_json.json")], 2, "not valid JSON"),
    (["validate", str(FIXTURES / "missing.json")], 2, "missing.json"),
    (["barcode", str(FIXTURES / "elder.json")], 2, "barcode takes"),
    (["hilbert", str(FIXTURES / "elder.json"), "--box", "0,0"], 2, "bad --box"),
    (["socle", str(FIXTURES / "elder.json"), "--face", "x"], 2, "bad --face"),
    (["socle", str(FIXTURES / "elder.json"), "--face", "7"], 2, ""),
    (["rank", str(FIXTURES / "elder.json"), "--from", "2,2", "--to", "0,0"], 1, "NotComparable"),
    (["rank", str(FIXTURES / "elder.json"), "--from", "2,2"], 2, "--to"),
    (["hilbert", str(FIXTURES / "elder.json"), "--nope"], 2, ""),
    ([], 2, "usage"),
])
def test_exit_codes(argv, code, message):
    got, out, err = _run_capturing(argv)
    assert got == code
    assert out == ""
    assert message in err


def test_bad_input_values_rejected(tmp_path):
    data = json.loads((FIXTURES / "skyscraper.json").read_text())
    data["dims"]["0,0"] = 1.5
    path = tmp_path / "float.json"
    path.write_text(json.dumps(data))
    code, _, err = _run_capturing(["validate", str(path)])
    assert code == 2 and "dims" in err


def test_version_and_schema():
    code, out, _ = _run_capturing(["--version"])
    assert code == 0 and __version__ in out
    code, out, _ = _run_capturing(["--schema", "module"])
    assert code == 0 and json.loads(out)["required"]


def test_stdin_and_console_script():
    text = (FIXTURES / "elder.json").read_text()
    proc = subprocess.run(
        [sys.executable, "-m", "persistence_kernel.cli", "hilbert", "-", "--at", "1,1"],
        input=text, capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == json.loads((GOLDEN / "hilbert_elder_at.out").read_text())


def test_negative_points_use_equals_form():
    code, out, _ = _run_capturing(["hilbert", str(FIXTURES / "elder.json"), "--at=-1,0"])
    assert code == 0 and json.loads(out)


def test_box_flag_enlarges_the_module():
    code, out, _ = _run_capturing(["hilbert", str(FIXTURES / "skyscraper.json"), "--box=-2,-2:2,2"])
    assert code == 0
    result = json.loads(out)
    assert result["box"] == {"lo": [-2, -2], "hi": [2, 2]} and result["dims"] == {"0,0": 1}


def test_fixtures_are_up_to_date():
    for name, data in fixtures().items():
        assert (FIXTURES / name).read_text(encoding="utf-8") == dumps(data) + "\n", name


def test_golden_files_have_no_local_paths():
    for path in GOLDEN.glob("*.out"):
        assert str(Path(__file__).parent) not in path.read_text()
