"""The module R^2, free cyclic submodules and the projective line P1(R).

Vectors are pairs of ring elements.  Internally most routines work on pairs of
element indices ``(b, c)`` of a :class:`~qrg.rings.Ring`, which keeps the
exhaustive enumerations used throughout this package cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

from qrg.rings import Residue, Ring, RingElement, RingError

IndexPair = tuple[int, int]


@dataclass(frozen=True, order=True)
class ModuleVector:
    b: RingElement
    c: RingElement

    def __post_init__(self) -> None:
        if self.b.ring.spec != self.c.ring.spec:
            raise RingError(f"vector entries from different rings: {self.b.ring.spec}, {self.c.ring.spec}")

    @property
    def ring(self) -> Ring:
        return self.b.ring

    @property
    def indices(self) -> IndexPair:
        return (self.b.index, self.c.index)

    @classmethod
    def from_indices(cls, ring: Ring, pair: IndexPair) -> ModuleVector:
        return cls(ring[pair[0]], ring[pair[1]])

    def scale(self, u: RingElement) -> ModuleVector:
        return ModuleVector(u * self.b, u * self.c)

    def is_zero(self) -> bool:
        return self.b.index == self.b.ring.zero_index and self.c.index == self.c.ring.zero_index

    def __repr__(self) -> str:
        return f"({self.b!r}, {self.c!r})"


def vector(ring: Ring, b, c) -> ModuleVector:
    """Convenience constructor: ``vector(Z6, 2, 3)``; tuples pass through as coordinates."""

    def elem(x):
        if isinstance(x, RingElement):
            return x
        if isinstance(x, tuple) and ring.num_components > 1:
            return ring.element(*x)
        return ring.element(x)

    return ModuleVector(elem(b), elem(c))


def _check_same(v: ModuleVector, w: ModuleVector) -> None:
    if v.ring.spec != w.ring.spec:
        raise RingError(f"ring mismatch: {v.ring.spec} vs {w.ring.spec}")


# ---------------------------------------------------------------------------
# index-level kernels


def det_index(ring: Ring, v: IndexPair, w: IndexPair) -> int:
    mul, add, neg = ring.mul_table, ring.add_table, ring.neg_table
    return add[mul[v[0]][w[1]]][neg[mul[v[1]][w[0]]]]


def admissible_index(ring: Ring, v: IndexPair) -> bool:
    # no maximal ideal holds both entries
    return all(lu[v[0]] or lu[v[1]] for lu in ring.local_unit)


def orbit_index(ring: Ring, v: IndexPair) -> frozenset[IndexPair]:
    mul = ring.mul_table
    return frozenset((mul[u][v[0]], mul[u][v[1]]) for u in range(ring.order))


# ---------------------------------------------------------------------------
# public operations


def det2(v: ModuleVector, w: ModuleVector) -> RingElement:
    """``b_v c_w - c_v b_w``."""
    _check_same(v, w)
    return v.ring[det_index(v.ring, v.indices, w.indices)]


def is_perpendicular(v: ModuleVector, w: ModuleVector) -> bool:
    _check_same(v, w)
    return det_index(v.ring, v.indices, w.indices) == v.ring.zero_index


def is_admissible(v: ModuleVector) -> bool:
    """At least one unit entry, or two zero divisors lying in no common maximal ideal."""
    return admissible_index(v.ring, v.indices)


def is_admissible_by_determinant(v: ModuleVector) -> bool:
    """Existential definition: some ``w`` makes ``det(v; w)`` a unit.  O(|R|^2)."""
    ring = v.ring
    units = ring.unit_flags
    vi = v.indices
    n = ring.order
    return any(units[det_index(ring, vi, (x, y))] for x in range(n) for y in range(n))


def cyclic_submodule(v: ModuleVector) -> frozenset[ModuleVector]:
    """``{(u b, u c) : u in R}``, zero vector included."""
    ring = v.ring
    return frozenset(ModuleVector.from_indices(ring, p) for p in orbit_index(ring, v.indices))


def perp_set(v: ModuleVector) -> frozenset[ModuleVector]:
    ring = v.ring
    vi = v.indices
    zero = ring.zero_index
    n = ring.order
    return frozenset(
        ModuleVector.from_indices(ring, (x, y)) for x in range(n) for y in range(n) if det_index(ring, vi, (x, y)) == zero
    )


@dataclass(frozen=True)
class ProjectivePoint:
    """A free cyclic submodule ``R(b, c)``; equality is orbit equality."""

    ring: Ring
    rep: IndexPair
    orbit_indices: frozenset[IndexPair]

    @property
    def representative(self) -> ModuleVector:
        return ModuleVector.from_indices(self.ring, self.rep)

    @cached_property
    def orbit(self) -> tuple[ModuleVector, ...]:
        return tuple(ModuleVector.from_indices(self.ring, p) for p in sorted(self.orbit_indices))

    def __contains__(self, v: ModuleVector) -> bool:
        return v.indices in self.orbit_indices

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ProjectivePoint)
            and other.ring.spec == self.ring.spec
            and other.orbit_indices == self.orbit_indices
        )

    def __hash__(self) -> int:
        return hash(self.orbit_indices)

    def __repr__(self) -> str:
        return f"P{self.representative!r}"

    def label(self) -> str:
        b, c = self.representative.b.coords, self.representative.c.coords
        return f"({_fmt_coords(b)},{_fmt_coords(c)})"


def _fmt_coords(coords) -> str:
    if len(coords) == 1:
        return _fmt_one(coords[0])
    return "[" + ",".join(_fmt_one(x) for x in coords) + "]"


def _fmt_one(x) -> str:
    if isinstance(x, tuple):
        return "".join(str(a) for a in x)
    return str(x)


_POINTS_CACHE: dict = {}


def projective_points(ring: Ring) -> list[ProjectivePoint]:
    """All points of P1(R) in order of their canonical (lexicographically least) representative."""
    cached = _POINTS_CACHE.get(ring.spec)
    if cached is not None:
        return list(cached)
    n = ring.order
    seen: set[IndexPair] = set()
    points = []
    for b in range(n):
        for c in range(n):
            v = (b, c)
            if v in seen or not admissible_index(ring, v):
                continue
            orbit = orbit_index(ring, v)
            seen.update(orbit)
            points.append(ProjectivePoint(ring, v, orbit))
    _POINTS_CACHE[ring.spec] = tuple(points)
    return points


def point_of(v: ModuleVector) -> ProjectivePoint:
    if not is_admissible(v):
        raise RingError(f"{v!r} is not admissible")
    orbit = orbit_index(v.ring, v.indices)
    return ProjectivePoint(v.ring, min(p for p in orbit if admissible_index(v.ring, p)), orbit)


def is_distant(p: ProjectivePoint, q: ProjectivePoint) -> bool:
    if p.ring.spec != q.ring.spec:
        raise RingError(f"ring mismatch: {p.ring.spec} vs {q.ring.spec}")
    return p.ring.unit_flags[det_index(p.ring, p.rep, q.rep)]


def nonunit_components(ring: Ring, d: int) -> int:
    """How many local components see ``d`` as a non-unit."""
    return sum(1 for lu in ring.local_unit if not lu[d])


def points_through(v: ModuleVector) -> list[ProjectivePoint]:
    """Brute force: the points of P1(R) whose orbit contains ``v``."""
    return [p for p in projective_points(v.ring) if v.indices in p.orbit_indices]


# ---------------------------------------------------------------------------
# counting formulas for square-free Z_d


@dataclass(frozen=True)
class VectorClassification:
    K: tuple[int, ...]
    n_d: int
    perp_cardinality: int
    formula: bool  # False: ring not square-free Z_d, values are empirical counts


def square_free_modulus(ring: Ring) -> int | None:
    comps = ring.spec.components
    if not all(isinstance(c, Residue) and c.is_field for c in comps):
        return None
    primes = [c.modulus for c in comps]
    if len(set(primes)) != len(primes):
        return None
    return math.prod(primes)


def classify_vector(v: ModuleVector) -> VectorClassification:
    """Point count and perpendicular-set size for a vector of ``Z_d^2``.

    For square-free ``d`` with ``K`` the primes dividing both entries, a vector
    lies on ``prod_{p in K} (p + 1)`` points and has ``d * prod_{p in K} p``
    perpendicular vectors.  Other rings get brute-force counts instead.
    """
    ring = v.ring
    d = square_free_modulus(ring)
    if d is None:
        return VectorClassification((), len(points_through(v)), len(perp_set(v)), formula=False)
    primes = [c.modulus for c in ring.spec.components]
    b, c = v.b.coords, v.c.coords
    K = tuple(p for p, bk, ck in zip(primes, b, c) if bk % p == 0 and ck % p == 0)
    return VectorClassification(K, math.prod(p + 1 for p in K), d * math.prod(K), formula=True)


def all_vectors(ring: Ring) -> list[ModuleVector]:
    n = ring.order
    return [ModuleVector.from_indices(ring, (b, c)) for b in range(n) for c in range(n)]
