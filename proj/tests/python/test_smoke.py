"""Smoke tests for the nilfold python module (exactness at the boundary)."""

from fractions import Fraction

import nilfold


def frac(s):
    return Fraction(s)


def test_heisenberg_multiply():
    assert nilfold.multiply("heisenberg", ["1", "0", "0"], ["0", "1", "0"]) == ["1", "1", "1"]
    assert nilfold.multiply("heisenberg", ["0", "1", "0"], ["1", "0", "0"]) == ["1", "1", "0"]


def test_inverse_roundtrip():
    g = ["1/2", "-2/3", "7"]
    inv = nilfold.inverse("heisenberg", g)
    assert nilfold.multiply("heisenberg", g, inv) == ["0", "0", "0"]


def test_power_routes_agree():
    g = ["1/3", "1/5", "0"]
    assert nilfold.power("heisenberg", g, 12) == nilfold.power_closed("heisenberg", g, 12)
    # closed form third coordinate: C(12,2) * (1/15)
    third = frac(nilfold.power("heisenberg", g, 12)[2])
    assert third == Fraction(66, 15)


def test_reduce_and_distance():
    p = nilfold.reduce("heisenberg", ["3/2", "3/10", "-1/5"])
    assert p == ["1/2", "3/10", "4/5"]
    d = nilfold.torus_distance(["9/10"], ["1/10"])
    assert frac(d) == Fraction(1, 5)


def test_orbit_rows():
    rows = nilfold.orbit("abelian1", ["1/3"], "1..3")
    assert [r["point"][0] for r in rows] == ["1/3", "2/3", "0"]


def test_region_bound_and_grid():
    assert nilfold.region_bound(2, 2, 2) == "64"
    out = nilfold.count_regions_grid(
        ["1:x^2 -1:y^2 -1:1", "1:y^2 -1:x^2 -1:1"],
        [("-3", "3"), ("-3", "3")],
        resolution=121,
        delta="1/1000",
        degree_bound=2,
    )
    assert out["count"] == "5"
    assert out["stable"]


def test_rotation_certificates():
    got = nilfold.rotation_gap(["1/2"], "pow2", "pow2+1")
    assert got["gap"] == "1/2" and got["exact"]
    found = nilfold.find_separating_rotation("pow2", "pow2+1")
    assert found["found"] and found["alpha"] == ["1/2"]


def test_nice_census_shrinks():
    out = nilfold.nice_census("heisenberg", "squares", 6, resolution=11)
    assert int(out["realized_nice_sets"]) < 2**6
    assert int(out["realized_nice_sets"]) >= 2


def test_classification():
    assert frac(nilfold.lacunary_ratio("pow2", 20)) == 2
    assert frac(nilfold.coeff_bound("heisenberg", 3)) == 81
