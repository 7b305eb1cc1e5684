"""Ring-side view of mutually unbiased bases.

Two admissible vectors give "unbiased" candidates when their punctured cyclic
submodules are disjoint; pairwise-distant points of P1(R) bound how many such
sets can coexist.  Everything here is combinatorial: no Hilbert-space bases
are built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from qrg import projline
from qrg.isomatch import are_isomorphic, neighbor_graph, rook_graph
from qrg.projline import ModuleVector, ProjectivePoint
from qrg.rings import Ring, RingError, RingSpec, ring_from_spec


def _punctured(v: ModuleVector) -> frozenset[tuple[int, int]]:
    ring = v.ring
    return projline.orbit_index(ring, v.indices) - {(ring.zero_index, ring.zero_index)}


def submodules_disjoint(v: ModuleVector, w: ModuleVector) -> bool:
    """True iff ``R v \\ {0}`` and ``R w \\ {0}`` share no vector (explicit intersection)."""
    for x in (v, w):
        if x.is_zero() or not projline.is_admissible(x):
            raise RingError(f"{x!r} must be admissible and nonzero")
    if v.ring.spec != w.ring.spec:
        raise RingError("ring mismatch")
    return not (_punctured(v) & _punctured(w))


def disjoint_by_scalars(v: ModuleVector, w: ModuleVector) -> bool:
    """Cross-check: no nonzero ``u, u'`` with ``u v = u' w``."""
    ring = v.ring
    mul = ring.mul_table
    (b, c), (b2, c2) = v.indices, w.indices
    nonzero = range(1, ring.order)  # index 0 is the zero element
    return not any((mul[u][b], mul[u][c]) == (mul[u2][b2], mul[u2][c2]) for u in nonzero for u2 in nonzero)


def determinant_reading(v: ModuleVector, w: ModuleVector) -> bool:
    """Literal algebraic reading: ``u u' det(v, w) != 0`` for all nonzero ``u, u'``."""
    ring = v.ring
    mul = ring.mul_table
    d = projline.det_index(ring, v.indices, w.indices)
    return all(mul[mul[u][u2]][d] != ring.zero_index for u in range(1, ring.order) for u2 in range(1, ring.order))


# ---------------------------------------------------------------------------
# distant cliques


def _max_clique(adj: list[int]) -> tuple[int, ...]:
    """Exact maximum clique by branch and bound on bitsets; least witness in lexicographic order."""
    n = len(adj)
    best: tuple[int, ...] = ()

    def expand(R: list[int], P: int) -> None:
        nonlocal best
        if not P:
            if len(R) > len(best) or (len(R) == len(best) and tuple(R) < best):
                best = tuple(R)
            return
        while P:
            if len(R) + P.bit_count() < len(best):
                return
            v = (P & -P).bit_length() - 1
            P &= ~(1 << v)
            expand(R + [v], P & adj[v])

    expand([], (1 << n) - 1)
    return best


def distant_adjacency(points: list[ProjectivePoint]) -> list[int]:
    adj = [0] * len(points)
    for i, j in itertools.combinations(range(len(points)), 2):
        if projline.is_distant(points[i], points[j]):
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def max_distant_clique(points: list[ProjectivePoint]) -> tuple[int, list[ProjectivePoint]]:
    witness = [points[i] for i in _max_clique(distant_adjacency(points))]
    for p, q in itertools.combinations(witness, 2):
        if not projline.is_distant(p, q):
            raise AssertionError("witness is not pairwise distant")  # pragma: no cover
    return len(witness), witness


# ---------------------------------------------------------------------------
# report


@dataclass
class MubRow:
    ring: str
    points: int
    max_distant: int
    witness: list[str]
    grid: str = ""
    is_grid: bool | None = None
    role: str = "full"


@dataclass
class MubReport:
    ring: str
    rows: list[MubRow] = field(default_factory=list)
    component_bound: int = 0
    notes: list[str] = field(default_factory=list)

    def row(self, ring: str) -> MubRow:
        return next(r for r in self.rows if r.ring == ring)


def _row(spec: RingSpec, role: str) -> MubRow:
    ring: Ring = ring_from_spec(spec)
    points = projline.projective_points(ring)
    size, witness = max_distant_clique(points)
    shape = [len(projline.projective_points(ring_from_spec(RingSpec((c,))))) for c in spec.components]
    grid = "x".join(map(str, shape))
    is_grid = None
    if all(c.is_field for c in spec.components):
        is_grid = are_isomorphic(neighbor_graph(points), rook_graph(*shape)) is not None
    return MubRow(str(spec), len(points), size, [p.label() for p in witness], grid, is_grid, role)


def mub_report(ring_spec: RingSpec) -> MubReport:
    """Max distant cliques for the ring and each ideal subring left by dropping one field component."""
    report = MubReport(str(ring_spec))
    report.rows.append(_row(ring_spec, "full"))
    comps = ring_spec.components
    report.component_bound = min(_row(RingSpec((c,)), "component").max_distant for c in comps)
    if report.rows[0].max_distant > report.component_bound:
        report.notes.append("max distant clique exceeds the smallest component bound")  # pragma: no cover
    if len(comps) > 1:
        for k, comp in enumerate(comps):
            if not comp.is_field:
                report.notes.append(f"maximal ideal at {comp.name()} is not a product of remaining components; skipped")
                continue
            rest = RingSpec(comps[:k] + comps[k + 1 :])
            report.rows.append(_row(rest, f"ideal: coordinate {k} ({comp.name()}) zero"))
    return report
