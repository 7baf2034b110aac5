import json
import pathlib

import pytest

import ncx

DATA = pathlib.Path(__file__).resolve().parents[2] / "data" / "golden"


def load(name):
    return json.loads((DATA / f"{name}.json").read_text())


def test_two_rays_not_nearly_convex():
    cert = ncx.is_nearly_convex(load("two_rays"))
    assert cert["nearly_convex"] is False
    assert cert["witness"] == ["0/1", "0/1"]


def test_sum_of_c2_matches_golden():
    c = load("c2")
    assert ncx.nc_equal(ncx.nc_sum(c, c), load("c2_sum"))
    assert not ncx.nc_equal(ncx.nc_sum(c, c), c)


def test_intersect_raises_cq_violated():
    with pytest.raises(ncx.NcxError, match="CQ_VIOLATED"):
        ncx.nc_intersect(load("e1"), load("e2"))


def test_rockafellar_subdiff_and_conjugate():
    f = {"kind": "rockafellar", "alpha": "1"}
    assert ncx.evaluate(f, "0,0") is not None
    assert ncx.subdiff(f, [-1, 0])["empty"] is True
    assert ncx.nc_equal(ncx.dom_subdiff(f), load("rockafellar_dom_one"))


def test_reproduce_ncpolygon_is_deterministic(tmp_path):
    runs = []
    for k in range(2):
        code, records, _ = ncx.run("reproduce", "ncpolygon", svg=str(tmp_path / f"p{k}.svg"))
        assert code == 0
        assert all(r["passed"] for r in records)
        runs.append((json.dumps(records), (tmp_path / f"p{k}.svg").read_text()))
    assert runs[0] == runs[1]


def test_svg_needs_two_dimensions():
    assert "<svg" in ncx.svg(load("c2"))
    with pytest.raises(ncx.NcxError, match="NOT_2D"):
        ncx.svg({"dim": 1, "pieces": [{"le": [{"a": ["1"], "b": "1"}]}]})
