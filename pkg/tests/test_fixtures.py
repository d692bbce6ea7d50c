import pytest

from clustertilt.fixtures import CHECKS, fixture_names, fixture_path, goldens, run_fixtures


def test_bundled_names():
    assert fixture_names() == ["e7tilde", "remark3_Btilde", "remark3_C", "remark3_Calt", "sec3_B", "sec3_C",
                               "sec3_Cprime", "sec4_B", "sec5_B", "sec5_C1", "sec5_C2"]


def test_fixture_path_lookup(tmp_path):
    assert fixture_path("sec3_C").endswith("sec3_C.bq")
    assert fixture_path("sec3_C.bq") == fixture_path("sec3_C")
    f = tmp_path / "x.bq"
    f.write_text("algebra X\nvertices 1\n")
    assert fixture_path(str(f)) == str(f)
    with pytest.raises(FileNotFoundError):
        fixture_path("nope")


def test_goldens_cover_every_check():
    assert set(goldens()) == set(CHECKS)


@pytest.mark.parametrize("name", ["sec3", "remark3", "sec5"])
def test_fast_fixtures_pass(name):
    (rep,) = run_fixtures([name])
    assert rep.ok, [c for c in rep.checks if not c.ok]
    assert rep.to_json()["ok"] is True


@pytest.mark.slow
@pytest.mark.parametrize("name", ["sec4", "e7"])
def test_slow_fixtures_pass(name):
    (rep,) = run_fixtures([name])
    assert rep.ok, [c for c in rep.checks if not c.ok]


def test_report_records_failures():
    g = dict(goldens()["sec3"])
    g["relation_count"] = 5
    rep = CHECKS["sec3"](g)
    assert not rep.ok
    bad = [c.label for c in rep.checks if not c.ok]
    assert bad == ["relation count"]
