import io as stdio
import json

import pytest
from hypothesis import given, settings

from lscat import generators
from lscat.cli import run
from lscat.errors import CycleDetected, InvalidFence, ParseError
from lscat.io import (fence_from_json, fence_to_json, format_poset_text, ingest, loads,
                      parse_poset_text, poset_from_json, poset_to_json, system_from_json,
                      system_to_json)
from lscat.homotopy import is_contractible_in
from test_space import dags

P4_TEXT = """\
# pseudocircle
a < c
a < d
b < c   # trailing comment
b < d
"""


def cli(*argv):
    out = stdio.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    return code, (json.loads(text) if text.lstrip().startswith("{") else text)


@pytest.fixture
def p4_file(tmp_path):
    path = tmp_path / "p4.txt"
    path.write_text(P4_TEXT)
    return str(path)


@pytest.fixture
def shift_file(tmp_path):
    C3 = generators.chain(3)
    data = {"format": "lscat-system/1", "space": poset_to_json(C3),
            "phi": {"x0": "x0", "x1": "x0", "x2": "x1"},
            "F": {"x0": "0", "x1": "1", "x2": "2"}}
    path = tmp_path / "shift.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_parse_text(P4):
    X = parse_poset_text(P4_TEXT)
    assert X == P4
    X = parse_poset_text("point z\na < b\n")
    assert X.points == ("z", "a", "b")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_poset_text("a < b\n\nb <\n")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        parse_poset_text("# nothing\n\n")
    with pytest.raises(ParseError):
        loads("")
    with pytest.raises(ParseError) as info:
        loads('{"points": [\n  "a",\n  }')
    assert info.value.line is not None
    with pytest.raises(CycleDetected):
        parse_poset_text("a < b\nb < a\n")


@given(dags())
@settings(max_examples=40, deadline=None)
def test_poset_round_trips(X):
    assert parse_poset_text(format_poset_text(X)) == X
    assert poset_from_json(json.loads(json.dumps(poset_to_json(X)))) == X
    assert loads(json.dumps(poset_to_json(X))) == X


def test_system_round_trip():
    sys = generators.generate_system(generators.wart(generators.pseudocircle(), 3, 1), 4)
    back = system_from_json(json.loads(json.dumps(system_to_json(sys))))
    assert back.step == sys.step and back.lyapunov == sys.lyapunov


def test_fence_round_trip_and_tampering(P4):
    fence = is_contractible_in(P4, P4.subset("ab"))
    data = json.loads(json.dumps(fence_to_json(fence)))
    assert fence_from_json(data).maps == fence.maps
    # swap the two ends: neighbouring maps are no longer comparable
    data["maps"] = data["maps"][::-1] + [{"a": "c", "b": "d"}, {"a": "d", "b": "c"}]
    with pytest.raises(InvalidFence):
        fence_from_json(data)


def test_ingest_missing_file(tmp_path):
    with pytest.raises(Exception) as info:
        ingest(tmp_path / "nope.txt")
    assert "cannot read" in str(info.value)


def test_cli_cat(p4_file):
    code, rep = cli("cat", p4_file)
    assert code == 0
    assert rep["format"] == "lscat-report/1"
    assert rep["results"]["cat"] == 2
    assert list(rep["inputs"]) == [p4_file]
    assert "certificates" not in rep
    code, rep = cli("cat", p4_file, "--subset", "a,b", "--witness")
    assert rep["results"]["cat"] == 1 and len(rep["certificates"]) == 1
    code, rep = cli("cat", p4_file, "--closed")
    assert rep["results"]["cat"] == 2 and rep["results"]["kind"] == "closed"


def test_cli_other_space_commands(p4_file):
    assert sorted(cli("core", p4_file)[1]["results"]["core"]) == ["a", "b", "c", "d"]
    _, rep = cli("contractible", p4_file)
    assert rep["results"]["contractible_in_X"] is False
    assert rep["results"]["obstruction"] == "Obstructed"
    assert cli("betti", p4_file)[1]["results"]["betti"] == [1, 1]
    assert cli("cuplength", p4_file)[1]["results"]["cup_length"] == 1
    code, rep = cli("axioms", p4_file)
    assert code == 0 and rep["results"]["passed"]


def test_cli_verify_and_spectrum(shift_file):
    code, rep = cli("verify", shift_file)
    assert code == 0
    assert rep["results"]["theorem_holds"] is True
    assert rep["results"]["sum"] == 1 and rep["results"]["nu_X"] == 1
    assert rep["certificates"][0]["format"] == "lscat-fence/1"
    code, rep = cli("spectrum", shift_file)
    assert rep["results"]["values"] == ["0"]


def test_cli_exit_codes(tmp_path, p4_file):
    bad = tmp_path / "bad.txt"
    bad.write_text("a < b\nthis is not valid\n")
    code, rep = cli("cat", str(bad))
    assert code == 2 and rep["error"]["type"] == "ParseError"
    assert "line 2" in rep["error"]["message"]
    cyc = tmp_path / "cyc.txt"
    cyc.write_text("a < b\nb < a\n")
    assert cli("cat", str(cyc))[0] == 2
    assert cli("cat", p4_file, "--subset", "zz")[0] == 2
    assert cli("verify", p4_file)[0] == 2
    assert cli("contractible", p4_file, "--subset", "a,b", "--budget", "1")[0] == 3
    X = generators.antichain(6)
    ac = tmp_path / "ac.txt"
    ac.write_text(format_poset_text(X))
    assert cli("cat", str(ac), "--max-opens", "5")[0] == 3


def test_cli_rejects_non_monotone_fence(tmp_path, C3):
    fence = is_contractible_in(C3, C3.whole())
    data = fence_to_json(fence)
    data["maps"].append({"x0": "x2", "x1": "x0", "x2": "x0"})
    path = tmp_path / "fence.json"
    path.write_text(json.dumps(data))
    code, rep = cli("check-fence", str(path))
    assert code == 2 and rep["error"]["type"] == "NotMonotone"
    data["maps"].pop()
    path.write_text(json.dumps(data))
    code, rep = cli("check-fence", str(path))
    assert code == 0 and rep["results"]["ends_constant"]


def test_cli_rejects_bad_systems(tmp_path):
    C3 = generators.chain(3)
    data = {"space": poset_to_json(C3), "phi": {"x0": "x0", "x1": "x0", "x2": "x1"},
            "F": {"x0": "0", "x1": "2", "x2": "1"}}
    path = tmp_path / "s.json"
    path.write_text(json.dumps(data))
    code, rep = cli("verify", str(path))
    assert code == 2 and rep["error"]["type"] == "NotLyapunov"
    P4 = generators.pseudocircle()
    data = {"space": poset_to_json(P4), "phi": {p: "a" for p in P4.points},
            "F": {p: "0" for p in P4.points}}
    path.write_text(json.dumps(data))
    code, rep = cli("verify", str(path))
    assert code == 2 and rep["error"]["type"] == "NotDeformation"


def test_cli_gen_round_trip(tmp_path):
    out = tmp_path / "sys.json"
    code, rep = cli("gen", "pseudocircle", "--warts", "2", "--system", "--seed", "5",
                    "-o", str(out))
    assert code == 0
    code, rep2 = cli("verify", str(out))
    assert code == 0 and rep2["results"]["theorem_holds"]
    code, rep = cli("gen", "min_sphere", "--n", "1", "--system")
    assert "notice" in rep["results"]
    assert cli("gen", "chain")[0] == 2
    pfile = tmp_path / "p.json"
    cli("gen", "pseudocircle", "-o", str(pfile))
    code, rep = cli("gen", "subdivision", "--from", str(pfile))
    assert code == 0 and len(rep["results"]["points"]) == 8


def test_cli_is_deterministic(p4_file, shift_file):
    for argv in (("cat", p4_file, "--witness"), ("verify", shift_file),
                 ("campaign", "--trials", "5", "--seed", "3"),
                 ("gen", "random", "--n", "6", "--seed", "9", "--system")):
        _, a = cli(*argv)
        _, b = cli(*argv)
        a.pop("timing"), b.pop("timing")
        assert a == b


def test_cli_text_format(p4_file):
    code, text = cli("cat", p4_file, "--format", "text")
    assert code == 0 and "results.cat: 2" in text.splitlines()


def test_cli_campaign():
    code, rep = cli("campaign", "--trials", "10", "--probe-moreover")
    assert code == 0
    assert rep["results"]["counts"]["theorem_holds"] == 10
    assert "moreover_probe" in rep["results"]
