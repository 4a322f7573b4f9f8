from __future__ import annotations

import io
import json
import shutil

import pytest

from hwmodules import fixtures
from hwmodules.algorithms import GramMatrix
from hwmodules.cli import run
from hwmodules.liealg import HeisenbergVirasoro
from hwmodules.scalars import parse_scalar


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_bracket_example():
    assert call("bracket", "e2", "e-2", "--algebra", "virasoro") == (0, "-4*e0 + 1/2*c\n", "")


def test_gram_csv_example():
    code, out, _ = call("gram", "--algebra", "virasoro", "--hw", "e0=0", "c=0", "--level", "1", "--format", "csv")
    assert (code, out) == (0, "0\n")


def test_missing_operand():
    code, out, err = call("bracket", "e2", "--algebra", "virasoro")
    assert code == 2 and out == "" and "required" in err


@pytest.mark.parametrize("argv", [
    ["gram", "--level", "-1"],
    ["gram", "--level", "1", "--hw", "e0"],
    ["gram", "--level", "1", "--hw", "z0=1"],
    ["bracket", "e2", "q7"],
    ["bracket", "e1", "e2", "--bogus"],
    ["virg", "--depth", "2", "--threshold", "-1"],
    ["singvec", "--start", "not a vector"],
    ["heis"],
    ["nosuch"],
])
def test_flag_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_exceeded_exit_1():
    code, out, _ = call("nilpotency", "--algebra", "virasoro", "--hw", "e0=1", "--gen", "e-1", "--start", "v",
                        "--cap", "3")
    assert code == 1 and out.startswith("exceeded")


def test_spec_mismatch_exit_1():
    code, _, err = call("singvec", "--algebra", "heisenberg", "--start", "(2*,...)")
    assert code == 1 and "error" in err


def test_missing_hw_defaults_to_zero():
    assert call("gram", "--level", "1")[1] == call("gram", "--level", "1", "--hw", "e0=0", "c=0")[1]


def test_gram_json_round_trip():
    code, out, _ = call("gram", "--algebra", "hv", "--hw", "e0=1/2", "z0=1*i", "c2=2", "--level", "2",
                        "--format", "json")
    obj = json.loads(out)
    g = GramMatrix.from_json_obj(HeisenbergVirasoro(), obj)
    assert g.size == 5 and str(g.entries[0][0]) == obj["entries"][0][0]
    assert obj["symmetric"] is False
    parse_scalar(obj["determinant"])


@pytest.mark.parametrize("argv", [argv for _, _, argv in fixtures.CORPUS])
def test_determinism(argv):
    assert call(*argv) == call(*argv)


def test_seed_changes_random_cases():
    a = call("check", "--suite", "nilpotency", "--seed", "1", "--format", "json")
    b = call("check", "--suite", "nilpotency", "--seed", "1", "--format", "json")
    assert a == b and a[0] == 0


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nalgebra = virasoro\nhw = e0=7/3 c=3\nlevel = 2\nformat = csv\n")
    code, out, _ = call("gram", "--config", str(cfg))
    assert code == 0 and out == "-47/6,14\n14,308/9\n"
    # explicit flags win over the file
    code, out, _ = call("gram", "--config", str(cfg), "--level", "1")
    assert out == "-14/3\n"
    assert call("gram", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_singvec_text():
    code, out, _ = call("singvec", "--algebra", "sl2", "--module", "irrep", "--dim", "3", "--start", "v2")
    assert code == 0 and out.splitlines()[0] == "2*v0"


def test_heis_probe_region():
    code, out, _ = call("heis", "--tail", "2", "--probe-region", "--format", "json")
    assert code == 0 and json.loads(out)["probe"]["found"] is None


def test_check_suite_exit_code():
    code, out, _ = call("check", "--suite", "scalars", "--scale", "0.1")
    assert code == 0 and out.rstrip().endswith("(seed 20110401)")


# fixtures -------------------------------------------------------------------


def test_shipped_fixtures_pass():
    results = fixtures.compare_all()
    assert len(results) == len(fixtures.CORPUS)
    assert all(r.passed for r in results), [r.describe() for r in results if not r.passed]


def test_gram_level_two_fixture():
    path = fixtures.DEFAULT_ROOT / "gram" / "virasoro-level-2.golden"
    assert fixtures.compare_fixture(path).passed


def test_tampered_fixture(tmp_path):
    src = fixtures.DEFAULT_ROOT / "gram" / "virasoro-level-2.golden"
    dst = tmp_path / "gram" / "tampered.golden"
    dst.parent.mkdir()
    text = src.read_text().replace("308/9", "308/8")
    dst.write_text(text)
    cmp = fixtures.compare_fixture(dst)
    assert not cmp.passed and cmp.line == 5  # header, summary, basis, row 1, row 2
    assert "308/8" in cmp.describe()


def test_missing_and_corrupt_fixture(tmp_path):
    with pytest.raises(fixtures.FixtureError, match="does not exist"):
        fixtures.load_fixture(tmp_path / "nope.golden")
    bad = tmp_path / "bad.golden"
    bad.write_text("no header\n")
    with pytest.raises(fixtures.FixtureError, match="corrupt"):
        fixtures.load_fixture(bad)


def test_empty_fixture_directory(tmp_path):
    with pytest.raises(fixtures.FixtureError) as info:
        fixtures.compare_all(tmp_path)
    assert "virasoro-level-2.golden" in str(info.value)


def test_regenerate_matches_shipped(tmp_path):
    fixtures.regenerate(tmp_path)
    for cmd, name, _ in fixtures.CORPUS:
        rel = f"{cmd}/{name}.golden"
        assert (tmp_path / rel).read_bytes() == (fixtures.DEFAULT_ROOT / rel).read_bytes()
    shutil.rmtree(tmp_path)
