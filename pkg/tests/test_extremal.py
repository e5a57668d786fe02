import numpy as np
import pytest

from minkpack.bounds import BoundsRangeError
from minkpack.extremal import (
    ExtremalProfile,
    make_theorem_hexagon,
    max_hexagon_candidates,
    max_kgon_area,
    max_parallelogram_candidates,
    max_triangle_area,
    max_triangle_candidates,
    polygon_from_sides,
    profile,
)
from minkpack.geometry import ConvexDisc, GeometryError, regular_ngon

# frozen values for the canonical hexagon family, worked out by hand:
# vertices (+-1, 0), (+-w, +-1) give A = 2(1+w), Delta = 1/2, F4 = 2w,
# F5 = (F4 + F6)/2 + w(1-w)/..., F6 = A, d0p = (1+w)/2
HEX_EXPECT = {
    0.5: dict(area=3.0, delta=0.5, f4=1.0, f5=13.0 / 8.0, f6=3.0, d0p=0.75),
    0.75: dict(area=3.5, delta=0.5, f4=1.5, f5=33.0 / 16.0, f6=3.5, d0p=0.875),
    1.0: dict(area=4.0, delta=0.5, f4=2.0, f5=2.5, f6=4.0, d0p=1.0),
}


@pytest.mark.parametrize("w", sorted(HEX_EXPECT))
def test_hexagon_family_profiles(w):
    d = make_theorem_hexagon((1.0 + w) / 2.0)
    exp = HEX_EXPECT[w]
    prof = profile(d)
    assert prof.area == pytest.approx(exp["area"], abs=1e-9)
    assert prof.delta == pytest.approx(exp["delta"], abs=1e-8)
    assert prof.f3 == prof.delta
    assert prof.f4 == pytest.approx(exp["f4"], abs=1e-8)
    assert prof.f5 == pytest.approx(exp["f5"], abs=1e-6)
    assert prof.f6 == pytest.approx(exp["f6"], abs=1e-8)
    assert prof.d0p == pytest.approx(exp["d0p"], abs=1e-8)


def test_hexagon_family_gauge_formula():
    for d0p in (0.75, 0.8, 0.9, 1.0):
        w = 2.0 * d0p - 1.0
        d = make_theorem_hexagon(d0p)
        rng = np.random.default_rng(17)
        for v in rng.normal(size=(25, 2)) * 2.0:
            want = max(abs(v[0]) + (1.0 - w) * abs(v[1]), abs(v[1]))
            assert d.gauge(v) == pytest.approx(want, rel=1e-12, abs=1e-12)


def test_hexagon_merges_to_square_at_one():
    d = make_theorem_hexagon(1.0)
    assert len(d.vertices) == 4
    assert d.is_parallelogram


def test_hexagon_range_guard():
    with pytest.raises(BoundsRangeError):
        make_theorem_hexagon(0.7)
    with pytest.raises(BoundsRangeError):
        make_theorem_hexagon(1.01)


def test_square_triangle_continuum(square):
    # midpoint triangles all reach the optimum 1/2; candidates must include one
    assert max_triangle_area(square) == pytest.approx(0.5, abs=1e-9)
    cands = max_triangle_candidates(square)
    assert cands
    for sides in cands:
        assert sides.shape == (3, 2)
        assert np.allclose(sides.sum(axis=0), 0.0, atol=1e-9)
        assert np.allclose(square.gauge_many(sides), 1.0, atol=1e-7)


def test_candidate_lists_close_up(hexagon_78):
    for cands, k in ((max_parallelogram_candidates(hexagon_78), 2),
                     (max_hexagon_candidates(hexagon_78), 3)):
        assert cands
        for sides in cands:
            assert sides.shape == (k, 2)
            assert np.allclose(hexagon_78.gauge_many(sides), 1.0, atol=1e-7)


def test_f6_equals_area_for_hexagon_discs(hexagon_34, hexagon_78):
    for d in (hexagon_34, hexagon_78):
        assert max_kgon_area(d, 6) == pytest.approx(d.area, abs=1e-8)


def test_f4_equals_area_minus_4delta_for_hexagons(hexagon_34, hexagon_78):
    for d in (hexagon_34, hexagon_78):
        prof = profile(d)
        assert prof.f4 == pytest.approx(prof.area - 4.0 * prof.delta, abs=1e-7)


def test_round_disc_values():
    d = regular_ngon(96)
    prof = profile(d)
    assert prof.delta == pytest.approx(np.sqrt(3.0) / 4.0, abs=5e-3)
    assert prof.d0p == pytest.approx(np.pi / (2.0 * np.sqrt(3.0)), abs=5e-3)


def test_max_kgon_rejects_bad_k(square):
    with pytest.raises(GeometryError):
        max_kgon_area(square, 7)
    with pytest.raises(GeometryError):
        max_kgon_area(square, 2)


def test_profile_range_guard():
    with pytest.raises(GeometryError):
        ExtremalProfile(area=4.0, delta=1.0, f3=1.0, f4=2.0, f5=2.5, f6=4.0, d0p=0.5)


@pytest.mark.parametrize("k", [3, 4, 6])
def test_affine_invariance(k):
    d = make_theorem_hexagon(0.85)
    T = np.array([[1.1, 0.3], [-0.2, 0.8]])
    det = abs(np.linalg.det(T))
    dv = ConvexDisc(d.vertices @ T.T)
    a = max_triangle_area(d) if k == 3 else max_kgon_area(d, k)
    b = max_triangle_area(dv) if k == 3 else max_kgon_area(dv, k)
    assert b == pytest.approx(det * a, rel=1e-6)


def test_polygon_from_sides_square(square):
    sides = np.array([[2.0, 0.0], [0.0, 2.0], [-2.0, 0.0], [0.0, -2.0]]) / 2.0
    p = polygon_from_sides(square, sides)
    assert p.area == pytest.approx(1.0)
    assert np.allclose(p.sides, sides)


def test_random_profiles_satisfy_chain(random_disc_profiles):
    for d, prof in random_disc_profiles[:25]:
        assert 0.75 - 1e-6 <= prof.d0p <= 1.0 + 1e-6
        assert prof.f4 <= prof.area - 4.0 * prof.delta + 1e-6
        assert prof.f5 <= 0.5 * (prof.f4 + prof.f6) + 1e-6
        assert prof.f6 <= prof.area + 1e-6
