import json
import shutil

import pytest

from ccx.fixtures import FixtureError, RunConfig, bundled_fixture, load_fixture


def copy_fixture(tmp_path):
    d = tmp_path / "fx"
    shutil.copytree(bundled_fixture(), d)
    return d


def edit(path, fn):
    data = json.loads(path.read_text())
    fn(data)
    path.write_text(json.dumps(data))


def test_bundled_fixture(fx):
    assert (fx.tilting.r, fx.tilting.n) == (1, 3)
    assert fx.resolve("1") == "T1"
    assert fx.at_prime(211).tilting.phi_matrix.tolist() == fx.tilting.phi_matrix.tolist()


def test_unknown_module(fx):
    with pytest.raises(FixtureError, match="unknown module"):
        fx.module("nope")


def test_path_algebra_rejected(tmp_path):
    d = copy_fixture(tmp_path)

    def make_path_algebra(a):
        a["arrows"] = [{"name": "a", "from": "1", "to": "2"}]
        a["relations"] = []

    edit(d / "algebra.json", make_path_algebra)

    def catalog(c):
        c["modules"] = [
            {"name": "S1", "dims": {"1": 1, "2": 0}},
            {"name": "S2", "dims": {"1": 0, "2": 1}},
        ]
        c["aliases"] = {}
        c["tilting"] = ["S1", "S2"]

    edit(d / "catalog.json", catalog)
    with pytest.raises(FixtureError, match="self-injective"):
        load_fixture(d)


def test_missing_summand_rejected(tmp_path):
    d = copy_fixture(tmp_path)
    edit(d / "catalog.json", lambda c: c.update(tilting=["T2", "T3"]))
    with pytest.raises(FixtureError, match="not maximal"):
        load_fixture(d)


def test_corrupted_action_rejected(tmp_path):
    d = copy_fixture(tmp_path)

    def corrupt(c):
        c["modules"][1]["action"] = {"a": [[1]], "b": [[1]]}

    edit(d / "catalog.json", corrupt)
    with pytest.raises(FixtureError, match="relation|action|respect"):
        load_fixture(d)


def test_duplicate_catalog_entries_name_the_pair(tmp_path):
    d = copy_fixture(tmp_path)

    def dup(c):
        c["modules"].append({"name": "T2b", "dims": {"1": 1, "2": 1}, "action": {"a": [[3]]}})

    edit(d / "catalog.json", dup)
    with pytest.raises(FixtureError) as err:
        load_fixture(d)
    assert err.value.pair == ("T2", "T2b")


@pytest.mark.parametrize("bad", [
    lambda c: c.pop("tilting"),
    lambda c: c.update(tilting=["X"]),
    lambda c: c.update(modules=[]),
])
def test_schema_errors(tmp_path, bad):
    d = copy_fixture(tmp_path)
    edit(d / "catalog.json", bad)
    with pytest.raises(FixtureError):
        load_fixture(d)


def test_missing_directory(tmp_path):
    with pytest.raises(FixtureError):
        load_fixture(tmp_path / "absent")


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("x", prime=100)
    with pytest.raises(ValueError):
        RunConfig("x", primes=(2, 4))
    assert RunConfig("x").as_dict()["primes"] == [2, 3, 5, 7, 11]
