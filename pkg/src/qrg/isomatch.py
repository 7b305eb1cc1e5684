"""Exact isomorphism between the set-incidence graph and the P1(R) neighbor graph.

The matcher is individualization/refinement: both graphs are colour-refined
jointly (1-dimensional Weisfeiler-Leman with edge colours), then vertices of
the first graph are individualized in index order against every compatible
vertex of the second, smallest first.  The first complete assignment found is
therefore the lexicographically least isomorphism.
"""

from __future__ import annotations

import itertools
import logging
import time
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass, field

from qrg import graph as pg
from qrg import projline
from qrg.pauli import FactorSpec
from qrg.rings import Ring, RingSpec, ring_from_spec

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected graph; ``colors[i][j]`` is the edge colour, 0 meaning no edge."""

    colors: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.colors)
        for i in range(n):
            if self.colors[i][i]:
                raise ValueError("self-loops are not allowed")
            for j in range(i + 1, n):
                if self.colors[i][j] != self.colors[j][i]:
                    raise ValueError(f"asymmetric colour at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges, labels: Sequence[str] = ()) -> ColoredGraph:
        """``edges`` holds ``(i, j)`` or ``(i, j, colour)`` tuples."""
        m = [[0] * n for _ in range(n)]
        for e in edges:
            i, j = e[0], e[1]
            c = e[2] if len(e) > 2 else 1
            if c <= 0:
                raise ValueError("edge colours must be positive")
            m[i][j] = m[j][i] = c
        return cls(tuple(map(tuple, m)), tuple(labels))

    def __len__(self) -> int:
        return len(self.colors)

    def edges(self) -> list[tuple[int, int, int]]:
        n = len(self)
        return [(i, j, self.colors[i][j]) for i in range(n) for j in range(i + 1, n) if self.colors[i][j]]

    def degree(self, i: int) -> int:
        return sum(1 for c in self.colors[i] if c)

    def color_counts(self) -> dict[int, int]:
        return dict(sorted(Counter(c for _, _, c in self.edges()).items()))

    def uncolored(self) -> ColoredGraph:
        return ColoredGraph(tuple(tuple(1 if c else 0 for c in row) for row in self.colors), self.labels)

    def recolored(self, mapping: dict[int, int]) -> ColoredGraph:
        return ColoredGraph(tuple(tuple(mapping[c] if c else 0 for c in row) for row in self.colors), self.labels)

    def profile(self) -> list[tuple[tuple[int, int], ...]]:
        """Sorted multiset of per-vertex colour-degree profiles; an isomorphism invariant."""
        return sorted(tuple(sorted(Counter(c for c in row if c).items())) for row in self.colors)


# ---------------------------------------------------------------------------
# graph builders


def neighbor_graph(points: Sequence[projline.ProjectivePoint], coloring: str = "count") -> ColoredGraph:
    """Points of P1(R), joined when distinct and not distant.

    ``coloring="count"`` colours an edge by the number of local components in
    which the determinant is a non-unit; ``"components"`` uses the set of those
    components (as a bitmask), a strictly finer invariant.
    """
    if coloring not in ("count", "components"):
        raise ValueError(f"unknown coloring {coloring!r}")
    n = len(points)
    m = [[0] * n for _ in range(n)]
    if n:
        ring = points[0].ring
        for i, j in itertools.combinations(range(n), 2):
            d = projline.det_index(ring, points[i].rep, points[j].rep)
            if ring.unit_flags[d]:
                continue
            if coloring == "count":
                col = projline.nonunit_components(ring, d)
            else:
                col = sum(1 << k for k, lu in enumerate(ring.local_unit) if not lu[d])
            m[i][j] = m[j][i] = col
    return ColoredGraph(tuple(map(tuple, m)), tuple(p.label() for p in points))


def incidence_graph(inc: pg.IncidenceStructure, labels: Sequence[str] = ()) -> ColoredGraph:
    """Maximal sets joined when they intersect, coloured by intersection size."""
    n = len(inc)
    m = [[inc.intersections[i][j] if i != j else 0 for j in range(n)] for i in range(n)]
    return ColoredGraph(tuple(map(tuple, m)), tuple(labels))


def rook_graph(*sizes: int) -> ColoredGraph:
    """Cartesian product of complete graphs (the ``a x b`` grid)."""
    cells = list(itertools.product(*[range(s) for s in sizes]))
    edges = [
        (i, j) for i, j in itertools.combinations(range(len(cells)), 2) if sum(x != y for x, y in zip(cells[i], cells[j])) == 1
    ]
    return ColoredGraph.from_edges(len(cells), edges)


# ---------------------------------------------------------------------------
# refinement and search


def _refine(g1: ColoredGraph, g2: ColoredGraph, c1: list[int], c2: list[int]) -> tuple[list[int], list[int]] | None:
    """Joint colour refinement to a stable partition; None on histogram mismatch."""
    n = len(c1)
    while True:
        classes = len(set(c1))
        s1 = [(c1[v], tuple(sorted((g1.colors[v][u], c1[u]) for u in range(n) if g1.colors[v][u]))) for v in range(n)]
        s2 = [(c2[v], tuple(sorted((g2.colors[v][u], c2[u]) for u in range(n) if g2.colors[v][u]))) for v in range(n)]
        if Counter(s1) != Counter(s2):
            return None
        ids = {s: k for k, s in enumerate(sorted(set(s1)))}
        c1 = [ids[s] for s in s1]
        c2 = [ids[s] for s in s2]
        if len(ids) == classes:
            return c1, c2


def validate_bijection(g1: ColoredGraph, g2: ColoredGraph, f: Sequence[int], respect_colors: bool = False) -> bool:
    n = len(g1)
    if len(g2) != n or sorted(f) != list(range(n)):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            a, b = g1.colors[i][j], g2.colors[f[i]][f[j]]
            if respect_colors:
                if a != b:
                    return False
            elif bool(a) != bool(b):
                return False
    return True


def _search(g1: ColoredGraph, g2: ColoredGraph) -> list[int] | None:
    n = len(g1)
    start = _refine(g1, g2, [0] * n, [0] * n)
    if start is None:
        return None

    def rec(c1: list[int], c2: list[int]) -> list[int] | None:
        sizes = Counter(c1)
        v = next((v for v in range(n) if sizes[c1[v]] > 1), None)
        if v is None:
            where = {c: w for w, c in enumerate(c2)}
            f = [where[c1[u]] for u in range(n)]
            return f if validate_bijection(g1, g2, f, respect_colors=True) else None
        fresh = max(c1) + 1
        for w in range(n):
            if c2[w] != c1[v]:
                continue
            d1, d2 = list(c1), list(c2)
            d1[v] = d2[w] = fresh
            refined = _refine(g1, g2, d1, d2)
            if refined is None:
                continue
            f = rec(*refined)
            if f is not None:
                return f
        return None

    return rec(*start)


def _color_bijections(g1: ColoredGraph, g2: ColoredGraph) -> list[dict[int, int]]:
    """Colour renamings g1 -> g2 that preserve the number of edges of each colour."""
    a, b = g1.color_counts(), g2.color_counts()
    if sorted(a.values()) != sorted(b.values()):
        return []
    by_count: dict[int, list[int]] = {}
    for col, k in b.items():
        by_count.setdefault(k, []).append(col)
    groups = [(sorted(c for c, k in a.items() if k == cnt), targets) for cnt, targets in sorted(by_count.items())]
    out = []
    for perms in itertools.product(*[itertools.permutations(t) for _, t in groups]):
        mapping = {}
        for (src, _), tgt in zip(groups, perms):
            mapping.update(zip(src, tgt))
        out.append(mapping)
    return out


def are_isomorphic(g1: ColoredGraph, g2: ColoredGraph, respect_colors: bool = False) -> list[int] | None:
    """A vertex bijection ``f`` (``g1`` vertex ``i`` -> ``g2`` vertex ``f[i]``) or None.

    With ``respect_colors`` the two graphs may use different colour alphabets:
    every count-preserving renaming of ``g1``'s colours is tried, and an edge
    colour must then match exactly.
    """
    if len(g1) != len(g2):
        return None
    if not respect_colors:
        g1, g2 = g1.uncolored(), g2.uncolored()
        if g1.profile() != g2.profile():
            return None
        f = _search(g1, g2)
    else:
        best = None
        for mapping in _color_bijections(g1, g2):
            h1 = g1.recolored(mapping)
            if h1.profile() != g2.profile():
                continue
            f = _search(h1, g2)
            if f is not None and not validate_bijection(h1, g2, f, respect_colors=True):
                raise AssertionError("matcher produced an invalid bijection")  # pragma: no cover
            if f is not None and (best is None or f < best):
                best = f
        f = best
    if f is not None and not validate_bijection(g1, g2, f):
        raise AssertionError("matcher produced an invalid bijection")  # pragma: no cover
    return f


# ---------------------------------------------------------------------------
# the full check


@dataclass
class VerificationReport:
    dimension: int
    factors: tuple[int, ...]
    ring: str
    operator_count: int
    clique_count: int
    clique_sizes: dict[int, int]
    type_table: list[dict]
    point_count: int
    isomorphic: bool
    colored_isomorphic: bool | None = None
    colored_components_isomorphic: bool | None = None
    bijection: list[tuple[str, str]] = field(default_factory=list)
    findings: list[str] = field(default_factory=list)
    timing: dict[str, float] = field(default_factory=dict)
    # kept for exporters, not serialized
    incidence: ColoredGraph | None = None
    ring_graph: ColoredGraph | None = None


def set_labels(g: pg.PauliGraph, cliques: Sequence[pg.MaximalCommutingSet]) -> list[str]:
    if g.spec.primes == (2, 3):
        from qrg.pauli import paper_label

        name = lambda v: paper_label(g.vertices[v])  # noqa: E731
    else:
        name = lambda v: str(g.vertices[v])  # noqa: E731
    return ["{" + ",".join(name(v) for v in c) + "}" for c in cliques]


def verify_paper_claim(
    spec: FactorSpec,
    ring_spec: RingSpec,
    colors: bool = False,
    bound: int = pg.DEFAULT_DIMENSION_BOUND,
) -> VerificationReport:
    """Operators -> graph -> cliques -> incidence, against P1(R); both sides checked for isomorphism."""
    t0 = time.perf_counter()
    g = pg.build_graph(spec, bound=bound)
    t1 = time.perf_counter()
    cliques = pg.maximal_cliques(g)
    pg.check_cliques(g, cliques)
    t2 = time.perf_counter()
    table = pg.classify_operators(g, cliques)
    findings = []
    hist = pg.size_histogram(cliques)
    used = cliques
    if len(hist) > 1:
        used = pg.top_stratum(cliques)
        findings.append(f"maximal cliques have unequal sizes {hist}; isomorphism uses size {max(hist)} only")
    inc = pg.incidence_structure(used)
    labels = set_labels(g, used)
    g_inc = incidence_graph(inc, labels)

    ring: Ring = ring_from_spec(ring_spec)
    points = projline.projective_points(ring)
    g_ring = neighbor_graph(points)
    t3 = time.perf_counter()

    if len(used) != len(points):
        findings.append(f"{len(used)} maximal commuting sets vs {len(points)} points of P1({ring_spec})")
    f = are_isomorphic(g_inc, g_ring)
    if f is not None and not validate_bijection(g_inc, g_ring, f):
        raise AssertionError("witness bijection failed validation")  # pragma: no cover
    if f is None and len(used) == len(points):
        findings.append(f"incidence graph is not isomorphic to the neighbor graph of P1({ring_spec})")
    t4 = time.perf_counter()

    report = VerificationReport(
        dimension=spec.dimension,
        factors=spec.primes,
        ring=str(ring_spec),
        operator_count=len(g),
        clique_count=len(cliques),
        clique_sizes=hist,
        type_table=[
            {
                "membership": c.membership,
                "perp": c.perp,
                "count": c.count,
                "identity_patterns": ["".join("I" if x else "*" for x in pat) for pat in c.identity_patterns],
            }
            for c in table.classes
        ],
        point_count=len(points),
        isomorphic=f is not None,
        bijection=[(labels[i], points[f[i]].label()) for i in range(len(f))] if f is not None else [],
        findings=findings,
        incidence=g_inc,
        ring_graph=g_ring,
    )
    if sum(table.membership) != sum(len(c) for c in cliques):
        raise AssertionError("double counting identity violated")  # pragma: no cover

    if colors:
        fc = are_isomorphic(g_inc, g_ring, respect_colors=True)
        report.colored_isomorphic = fc is not None
        if fc is None:
            findings.append(
                f"colored mismatch: intersection sizes {g_inc.color_counts()} vs non-unit component counts {g_ring.color_counts()}"
            )
        g_fine = neighbor_graph(points, coloring="components")
        ff = are_isomorphic(g_inc, g_fine, respect_colors=True)
        report.colored_components_isomorphic = ff is not None
        if ff is None:
            findings.append("colored mismatch against non-unit component sets")
    t5 = time.perf_counter()
    report.timing = {
        "graph": t1 - t0,
        "cliques": t2 - t1,
        "ring": t3 - t2,
        "isomorphism": t4 - t3,
        "colored": t5 - t4,
    }
    return report
