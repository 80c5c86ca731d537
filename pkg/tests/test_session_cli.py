import json
import subprocess
import sys

import pytest

from torsorlab.cli import run
from torsorlab.errors import ParseError, UnknownExample
from torsorlab.examples import BUILTIN
from torsorlab.herd import check_pretorsor_axioms
from torsorlab.session import builtin_session, dump_session, load_session, parse_session


@pytest.fixture(scope="module")
def emitted():
    return {name: dump_session(builtin_session(name)) for name in BUILTIN}


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _locate(text, needle, nth=0):
    """1-based (line, column) of the nth occurrence of ``needle``."""
    pos = -1
    for _ in range(nth + 1):
        pos = text.index(needle, pos + 1)
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_emit_parse_round_trip(emitted, name):
    text = emitted[name]
    s = parse_session(text, source=name)
    assert dump_session(s) == text
    assert check_pretorsor_axioms(s.torsor(name)).ok


def test_malformed_unit_vector_reports_position(emitted):
    text = emitted["kz2"].replace("unit: ['1', '0']", "unit: ['1', '0', '0']")
    with pytest.raises(ParseError) as exc:
        parse_session(text, source="bad")
    line, _ = _locate(text, "unit: ['1', '0', '0']")
    assert exc.value.line == line
    assert exc.value.column is not None


def test_decimal_scalar_rejected_at_its_position(emitted):
    text = emitted["kz2"].replace("counit:\n    - ['1', '1']", "counit:\n    - ['1', 1.5]")
    with pytest.raises(ParseError) as exc:
        parse_session(text, source="bad")
    assert (exc.value.line, exc.value.column) == _locate(text, "1.5")


def test_unknown_reference_rejected(emitted):
    text = emitted["kz2"].replace("    sigma: Sigma", "    sigma: Nope", 1)
    with pytest.raises(ParseError) as exc:
        parse_session(text, source="bad")
    assert "Nope" in str(exc.value)
    assert exc.value.line == _locate(text, "Nope")[0]


def test_wrong_format_tag_rejected(emitted):
    text = emitted["kz2"].replace("torsorlab-session/1", "torsorlab-session/9", 1)
    with pytest.raises(ParseError) as exc:
        parse_session(text, source="bad")
    assert exc.value.line == 1


def test_format_tag_may_be_omitted(emitted):
    text = emitted["kz2"].split("\n", 1)[1]
    assert dump_session(parse_session(text, source="untagged")) == emitted["kz2"]


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        load_session(str(tmp_path / "absent.yaml"))


def test_unknown_builtin():
    with pytest.raises(UnknownExample):
        builtin_session("nope")


@pytest.mark.parametrize("cmd", ["validate", "check-pretorsor", "derive-comonads",
                                 "check-galois", "check-equivalence"])
def test_commands_pass_on_kz2(tmp_path, emitted, cmd):
    path = _write(tmp_path, "kz2.yaml", emitted["kz2"])
    text, code = run([cmd, path, "--max-dim", "2"])
    assert code == 0, text
    assert text.splitlines()[0].endswith("PASS")


def test_broken_tau_exits_with_check_failure(tmp_path, emitted):
    text = emitted["trivial"].replace("    tau:\n    - ['1']", "    tau:\n    - ['2']")
    path = _write(tmp_path, "bad.yaml", text)
    out, code = run(["check-pretorsor", path])
    assert code == 1
    assert "FAIL" in out


def test_input_errors_exit_with_two(tmp_path):
    assert run(["validate", str(tmp_path / "absent.yaml")])[1] == 2
    assert run(["examples", "emit", "nope"])[1] == 2
    assert run(["no-such-command"])[1] == 2


def test_reports_are_deterministic(tmp_path, emitted):
    path = _write(tmp_path, "kz2.yaml", emitted["kz2"])
    first = run(["derive-comonads", path, "--max-dim", "2"])
    assert run(["derive-comonads", path, "--max-dim", "2"]) == first


def test_structured_output_is_json(tmp_path, emitted):
    path = _write(tmp_path, "kz2.yaml", emitted["kz2"])
    text, code = run(["check-galois", path, "--format", "structured"])
    data = json.loads(text)
    assert code == 0 and data["status"] == "PASS"
    assert all(sec["status"] == "PASS" for sec in data["sections"])
    assert "seconds" not in data


def test_timing_is_opt_in(tmp_path, emitted):
    path = _write(tmp_path, "t.yaml", emitted["trivial"])
    data = json.loads(run(["validate", path, "--format", "structured", "--timing"])[0])
    assert data["seconds"] >= 0


def test_extra_probe_file(tmp_path, emitted):
    path = _write(tmp_path, "kz2.yaml", emitted["kz2"])
    probes = _write(tmp_path, "probes.yaml", "\n".join([
        "format: torsorlab-session/1",
        "scalars: Q",
        "modules:",
        "  sign:",
        "    algebra: kZ2",
        "    dim: 1",
        "    action:",
        "    - [['1']]",
        "    - [['-1']]",
        "probes: [sign]",
        ""]))
    # the sign module lives over T, so the canonical map is also tested there
    text, code = run(["check-galois", path, "--probes", probes])
    assert code == 0, text
    assert "can invertible at sign (rank 2 of 2 -> 2)" in text


def test_emit_to_file_matches_stdout(tmp_path, emitted):
    out = tmp_path / "h4.yaml"
    _, code = run(["examples", "emit", "h4", "-o", str(out)])
    assert code == 0
    assert out.read_text() == emitted["h4"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torsorlab.cli", "examples", "list"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert set(line.split()[0] for line in proc.stdout.splitlines()) == set(BUILTIN)
