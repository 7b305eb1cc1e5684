import itertools
import math

import pytest

from qrg import projline as pl
from qrg.rings import GaloisField, Residue, RingError, RingSpec, inverse, is_unit, residue_ring, ring_from_spec

Z6 = ring_from_spec(residue_ring(6))

SMALL_RINGS = [
    residue_ring(n) for n in (2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 18)
] + [
    RingSpec((GaloisField(2, 2),)),
    RingSpec((Residue(2), GaloisField(2, 2))),
    RingSpec((Residue(4), Residue(3))),
    RingSpec((Residue(2), Residue(2))),
    RingSpec((Residue(2), Residue(3), Residue(3))),
    RingSpec((Residue(2), Residue(3), GaloisField(2, 2))),
]


def v6(b, c):
    return pl.vector(Z6, b, c)


# --- plain-integer oracles over Z_d -------------------------------------------


def int_orbit(b, c, d):
    return {(u * b % d, u * c % d) for u in range(d)}


def int_units(d):
    return {u for u in range(d) if math.gcd(u, d) == 1}


def test_det2_examples():
    assert pl.det2(v6(1, 0), v6(0, 1)) == Z6.one
    assert pl.det2(v6(2, 3), v6(1, 2)) == Z6.element((2 * 2 - 3 * 1) % 6)
    assert pl.det2(v6(2, 3), v6(1, 2)) == Z6.one
    assert pl.det2(v6(4, 5), v6(4, 5)) == Z6.zero


def test_det2_antisymmetric():
    for v, w in itertools.product(pl.all_vectors(Z6), repeat=2):
        assert pl.det2(v, w) == -pl.det2(w, v)


def test_perpendicular_examples():
    assert pl.is_perpendicular(v6(1, 0), v6(2, 0))
    assert not pl.is_perpendicular(v6(1, 0), v6(0, 1))
    assert (2 * 3 - 0 * 3) % 6 == 0
    assert pl.is_perpendicular(v6(2, 0), v6(3, 3))


def test_admissible_examples():
    assert pl.is_admissible(v6(1, 0))
    assert pl.is_admissible(v6(2, 3))
    # (2,4): 2y - 4x is never a unit of Z_6, checked over all 36 (x, y)
    assert not any((2 * y - 4 * x) % 6 in int_units(6) for x in range(6) for y in range(6))
    assert not pl.is_admissible(v6(2, 4))
    assert not pl.is_admissible(v6(0, 0))


def test_cyclic_submodule_examples():
    assert {w.indices for w in pl.cyclic_submodule(v6(1, 0))} == {v6(k, 0).indices for k in range(6)}
    sub = pl.cyclic_submodule(v6(2, 0))
    assert {(w.b.coords, w.c.coords) for w in sub} == {
        (Z6.element(b).coords, Z6.element(c).coords) for b, c in int_orbit(2, 0, 6)
    }
    assert len(sub) == 3
    assert len(int_orbit(2, 3, 6)) == 6
    assert len(pl.cyclic_submodule(v6(2, 3))) == 6


def test_submodule_members_pairwise_perpendicular():
    for v in pl.all_vectors(Z6):
        sub = list(pl.cyclic_submodule(v))
        assert all(pl.is_perpendicular(a, b) for a, b in itertools.combinations(sub, 2))
        assert Z6.order % len(sub) == 0


@pytest.mark.parametrize(
    "spec, count",
    [
        (residue_ring(6), 12),
        (RingSpec((Residue(2), Residue(3), GaloisField(2, 2))), 60),
        (RingSpec((Residue(2), Residue(3), Residue(3))), 48),
        (residue_ring(10), 18),
        (residue_ring(15), 24),
        (RingSpec((GaloisField(2, 2),)), 5),
        (residue_ring(4), 6),  # p^k + p^(k-1)
        (residue_ring(9), 12),
    ],
    ids=str,
)
def test_point_counts(spec, count):
    assert len(pl.projective_points(ring_from_spec(spec))) == count


def test_points_are_free_and_disjointly_cover_admissible_vectors():
    ring = ring_from_spec(RingSpec((Residue(2), Residue(3), GaloisField(2, 2))))
    points = pl.projective_points(ring)
    seen = set()
    for p in points:
        assert len(p.orbit_indices) == ring.order
        assert pl.admissible_index(ring, p.rep)
        assert p.rep == min(v for v in p.orbit_indices if pl.admissible_index(ring, v))
        adm = {v for v in p.orbit_indices if pl.admissible_index(ring, v)}
        assert not (adm & seen)
        seen |= adm
    total = sum(1 for v in pl.all_vectors(ring) if pl.is_admissible(v))
    assert len(seen) == total
    # units act transitively on the admissible generators of a point
    assert total == len(points) * len(ring.units)


def test_point_closed_under_scalars():
    for p in pl.projective_points(Z6):
        for u in Z6:
            assert p.representative.scale(u) in p


def test_distant_examples():
    p10, p01, p12 = (pl.point_of(v6(*x)) for x in [(1, 0), (0, 1), (1, 2)])
    assert pl.is_distant(p10, p01)
    assert pl.det2(v6(1, 0), v6(1, 2)) == Z6.element(2)
    assert not pl.is_distant(p10, p12)
    for p in pl.projective_points(Z6):
        assert not pl.is_distant(p, p)


def test_perp_set_examples():
    perp = pl.perp_set(v6(1, 1))
    assert perp == pl.cyclic_submodule(v6(1, 1))
    assert len(perp) == 6
    brute_20 = [(x, y) for x in range(6) for y in range(6) if (2 * y - 0 * x) % 6 == 0]
    assert len(brute_20) == 12
    assert len(pl.perp_set(v6(2, 0))) == 12
    brute_30 = [(x, y) for x in range(6) for y in range(6) if (3 * y) % 6 == 0]
    assert len(brute_30) == 18
    assert len(pl.perp_set(v6(3, 0))) == 18
    assert len(pl.perp_set(v6(0, 0))) == 36


@pytest.mark.parametrize(
    "b, c, K, n_d, perp",
    [
        (1, 1, (), 1, 6),
        (3, 0, (3,), 4, 18),
        (2, 2, (2,), 3, 12),
        (0, 0, (2, 3), 12, 36),
    ],
)
def test_classify_vector_examples(b, c, K, n_d, perp):
    cl = pl.classify_vector(v6(b, c))
    assert (cl.K, cl.n_d, cl.perp_cardinality, cl.formula) == (K, n_d, perp, True)


@pytest.mark.parametrize("d", [6, 10, 15])
def test_counting_formula_matches_brute_force(d):
    ring = ring_from_spec(residue_ring(d))
    for v in pl.all_vectors(ring):
        if v.is_zero():
            continue
        cl = pl.classify_vector(v)
        assert cl.n_d == len(pl.points_through(v))
        assert cl.perp_cardinality == len(pl.perp_set(v))


def test_classification_empirical_for_non_square_free():
    ring = ring_from_spec(residue_ring(12))
    cl = pl.classify_vector(pl.vector(ring, 2, 0))
    assert not cl.formula
    assert cl.n_d == len(pl.points_through(pl.vector(ring, 2, 0)))


@pytest.mark.parametrize("spec", SMALL_RINGS, ids=str)
def test_admissibility_criteria_agree(spec):
    ring = ring_from_spec(spec)
    for v in pl.all_vectors(ring):
        crit = pl.is_admissible(v)
        assert crit == pl.is_admissible_by_determinant(v)
        assert crit == (len(pl.cyclic_submodule(v)) == ring.order)


@pytest.mark.parametrize("spec", SMALL_RINGS, ids=str)
def test_perp_equals_submodule_iff_admissible(spec):
    ring = ring_from_spec(spec)
    for v in pl.all_vectors(ring):
        if v.is_zero():
            continue
        sub, perp = pl.cyclic_submodule(v), pl.perp_set(v)
        if pl.is_admissible(v):
            assert perp == sub
        else:
            assert sub < perp


@pytest.mark.parametrize("spec", SMALL_RINGS, ids=str)
def test_distance_independent_of_representative(spec):
    ring = ring_from_spec(spec)
    points = pl.projective_points(ring)
    units = [u for u in ring if is_unit(u)]
    for p, q in itertools.combinations(points, 2):
        expected = pl.is_distant(p, q)
        for u in units:
            vp = p.representative.scale(u)
            assert is_unit(pl.det2(vp, q.representative)) == expected


@pytest.mark.parametrize("d", [6, 10, 15, 30])
def test_distant_graph_regular(d):
    ring = ring_from_spec(residue_ring(d))
    points = pl.projective_points(ring)
    expected = math.prod(c.modulus for c in ring.spec.components)
    for p in points:
        assert sum(pl.is_distant(p, q) for q in points if q != p) == expected


def test_point_of_rejects_non_admissible():
    with pytest.raises(RingError):
        pl.point_of(v6(2, 4))


def test_point_equality_ignores_representative():
    a = pl.point_of(v6(1, 2))
    b = pl.point_of(pl.vector(Z6, 5, 4))  # 5 * (1, 2)
    assert a == b and hash(a) == hash(b)
    assert inverse(Z6.element(5)) == Z6.element(5)


def test_ring_mismatch():
    z3 = ring_from_spec(residue_ring(3))
    with pytest.raises(RingError):
        pl.det2(v6(1, 0), pl.vector(z3, 1, 0))
