"""Pauli graph, maximal commuting sets and the incidence between them."""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from qrg.pauli import FactorSpec, PauliOp, enumerate_operators, symplectic_residues

log = logging.getLogger(__name__)

DEFAULT_DIMENSION_BOUND = 36


class DimensionBoundError(ValueError):
    """The requested dimension exceeds the configured bound."""


@dataclass(frozen=True)
class PauliGraph:
    spec: FactorSpec
    vertices: tuple[PauliOp, ...]
    adjacency: tuple[int, ...]  # neighbor bitsets, one int per vertex

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, i: int) -> list[int]:
        return list(iter_bits(self.adjacency[i]))

    def degree(self, i: int) -> int:
        return self.adjacency[i].bit_count()

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for i, bits in enumerate(self.adjacency):
            for j in iter_bits(bits >> (i + 1)):
                yield i, i + 1 + j

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2

    def index_of(self, op: PauliOp) -> int:
        return self.vertices.index(op)


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def build_graph(spec: FactorSpec, bound: int = DEFAULT_DIMENSION_BOUND) -> PauliGraph:
    if spec.dimension > bound:
        raise DimensionBoundError(f"dimension {spec.dimension} exceeds bound {bound}")
    ops = enumerate_operators(spec)
    n = len(ops)
    adj = [0] * n
    for i in range(n):
        a = ops[i]
        for j in range(i + 1, n):
            if not any(symplectic_residues(spec, a, ops[j]).values()):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return PauliGraph(spec, tuple(ops), tuple(adj))


# ---------------------------------------------------------------------------
# maximal cliques


def maximal_cliques_bitset(adjacency: Sequence[int]) -> list[tuple[int, ...]]:
    """Every maximal clique of a graph given as neighbor bitsets.

    Bron-Kerbosch with Tomita pivoting; output is sorted (cliques as sorted
    index tuples, then lexicographically).
    """
    out: list[tuple[int, ...]] = []
    n = len(adjacency)
    stack = [(0, (1 << n) - 1, 0)]  # (R, P, X)
    while stack:
        R, P, X = stack.pop()
        if not P:
            if not X:
                out.append(tuple(iter_bits(R)))
            continue
        # pivot maximises |P ∩ N(u)| over u in P ∪ X
        pivot = max(iter_bits(P | X), key=lambda u: (P & adjacency[u]).bit_count())
        for v in iter_bits(P & ~adjacency[pivot]):
            bit = 1 << v
            stack.append((R | bit, P & adjacency[v], X & adjacency[v]))
            P &= ~bit
            X |= bit
    out.sort()
    return out


@dataclass(frozen=True)
class MaximalCommutingSet:
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)


def maximal_cliques(g: PauliGraph) -> list[MaximalCommutingSet]:
    return [MaximalCommutingSet(c) for c in maximal_cliques_bitset(g.adjacency)]


def check_cliques(g: PauliGraph, cliques: Sequence[MaximalCommutingSet]) -> None:
    """Re-verify that every clique is pairwise commuting and maximal; raise otherwise."""
    full = (1 << len(g)) - 1
    for c in cliques:
        mask = 0
        for v in c:
            mask |= 1 << v
        for v in c:
            if (g.adjacency[v] | 1 << v) & mask != mask:
                raise AssertionError(f"{c.members} is not a clique")
        common = full & ~mask
        for v in c:
            common &= g.adjacency[v]
        if common:
            raise AssertionError(f"{c.members} extends by {next(iter_bits(common))}")


def size_histogram(cliques: Sequence[MaximalCommutingSet]) -> dict[int, int]:
    return dict(sorted(Counter(len(c) for c in cliques).items()))


def top_stratum(cliques: Sequence[MaximalCommutingSet]) -> list[MaximalCommutingSet]:
    """Cliques of the largest size; warns when sizes are mixed."""
    hist = size_histogram(cliques)
    if len(hist) > 1:
        log.warning("maximal cliques of unequal sizes %s; keeping only size %d", hist, max(hist))
    top = max(hist, default=0)
    return [c for c in cliques if len(c) == top]


# ---------------------------------------------------------------------------
# operator types


@dataclass(frozen=True)
class OperatorClass:
    membership: int
    perp: int
    count: int
    identity_patterns: tuple[tuple[bool, ...], ...]


@dataclass(frozen=True)
class OperatorTypeTable:
    """Per operator: how many maximal sets contain it, and ``|x^perp|``.

    ``|x^perp|`` is the size of the commutant in the phase-free group, which
    counts the operator itself and the identity: ``degree + 2``.
    """

    membership: tuple[int, ...]
    perp: tuple[int, ...]
    classes: tuple[OperatorClass, ...] = field(default=())

    def class_counts(self) -> dict[tuple[int, int], int]:
        return {(c.membership, c.perp): c.count for c in self.classes}


def classify_operators(g: PauliGraph, cliques: Sequence[MaximalCommutingSet]) -> OperatorTypeTable:
    membership = [0] * len(g)
    for c in cliques:
        for v in c:
            membership[v] += 1
    perp = [g.degree(i) + 2 for i in range(len(g))]
    grouped: dict[tuple[int, int], list[int]] = {}
    for i in range(len(g)):
        grouped.setdefault((membership[i], perp[i]), []).append(i)
    classes = []
    for (m, p), members in sorted(grouped.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
        patterns = sorted({g.vertices[i].identity_pattern() for i in members})
        classes.append(OperatorClass(m, p, len(members), tuple(patterns)))
    return OperatorTypeTable(tuple(membership), tuple(perp), tuple(classes))


# ---------------------------------------------------------------------------
# incidence between maximal sets


@dataclass(frozen=True)
class IncidenceStructure:
    sets: tuple[frozenset[int], ...]
    intersections: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.sets)

    def neighbor_edges(self) -> list[tuple[int, int, int]]:
        """``(i, j, |S_i ∩ S_j|)`` for every intersecting pair ``i < j``."""
        n = len(self.sets)
        return [(i, j, self.intersections[i][j]) for i in range(n) for j in range(i + 1, n) if self.intersections[i][j]]

    def distant_edges(self) -> list[tuple[int, int]]:
        n = len(self.sets)
        return [(i, j) for i in range(n) for j in range(i + 1, n) if not self.intersections[i][j]]

    def degree(self, i: int) -> int:
        return sum(1 for j, k in enumerate(self.intersections[i]) if j != i and k)


def incidence_structure(cliques: Sequence[MaximalCommutingSet]) -> IncidenceStructure:
    sets = tuple(c.as_set() for c in cliques)
    inter = tuple(tuple(len(a & b) for b in sets) for a in sets)
    return IncidenceStructure(sets, inter)


# ---------------------------------------------------------------------------
# correspondence with Z_d^2 for square-free d


def crt_vector(spec: FactorSpec, op: PauliOp) -> tuple[int, int]:
    """Map a square-free-dimension operator to its vector ``(b, c)`` in ``Z_d^2``."""
    if len(set(spec.primes)) != len(spec.primes):
        raise ValueError(f"factors {spec} are not pairwise distinct primes")
    d = spec.dimension
    b = c = 0
    for p, (bi, ci) in zip(spec.primes, op.exponents):
        m = d // p
        coef = m * pow(m, -1, p)
        b += bi * coef
        c += ci * coef
    return b % d, c % d



# ---------------------------------------------------------------------------
# the twelve sextit sets as printed (M_4 carries a duplicated 19)

SEXTIT_REFERENCE_SETS: dict[str, tuple[str, ...]] = {
    "L1": ("1", "5", "a_0", "9", "13"),
    "L2": ("2", "6", "a_0", "10", "14"),
    "L3": ("3", "7", "a_0", "11", "15"),
    "L4": ("4", "8", "a_0", "12", "16"),
    "M1": ("1", "5", "b_0", "17", "21"),
    "M2": ("2", "6", "b_0", "18", "22"),
    "M3": ("3", "7", "b_0", "19", "23"),
    "M4": ("4", "8", "b_0", "19", "24"),
    "N1": ("1", "5", "c_0", "25", "29"),
    "N2": ("2", "6", "c_0", "26", "30"),
    "N3": ("3", "7", "c_0", "27", "31"),
    "N4": ("4", "8", "c_0", "28", "32"),
}


@dataclass(frozen=True)
class SetDiscrepancy:
    name: str
    printed: tuple[str, ...]
    computed: tuple[str, ...]
    missing: tuple[str, ...]  # in the computed set, absent from the printed one
    extra: tuple[str, ...]  # printed but not in the computed set
    extra_also_in: tuple[str, ...]  # other printed sets holding the extra labels


def compare_sextit_sets(g: PauliGraph, cliques: Sequence[MaximalCommutingSet]) -> tuple[dict[str, int], list[SetDiscrepancy]]:
    """Match each printed set to its closest computed clique (d = 6 only).

    Returns the name -> clique index assignment and one discrepancy per printed
    set that is not reproduced exactly.
    """
    from qrg.pauli import paper_label

    if g.spec.primes != (2, 3):
        raise ValueError("the printed sets refer to factors (2, 3)")
    computed = [frozenset(paper_label(g.vertices[v]) for v in c) for c in cliques]
    match: dict[str, int] = {}
    issues = []
    for name, printed in SEXTIT_REFERENCE_SETS.items():
        ps = set(printed)
        best = max(range(len(computed)), key=lambda k: (len(computed[k] & ps), -k))
        match[name] = best
        comp = computed[best]
        if comp != ps or len(printed) != len(ps):
            order = {lab: i for i, lab in enumerate(printed)}
            key = lambda lab: (order.get(lab, len(order)), lab)  # noqa: E731
            issues.append(
                SetDiscrepancy(
                    name,
                    printed,
                    tuple(sorted(comp, key=key)),
                    tuple(sorted(comp - ps, key=key)),
                    tuple(sorted(ps - comp, key=key)),
                    tuple(
                        other
                        for other, labs in SEXTIT_REFERENCE_SETS.items()
                        if other != name and (ps - comp) & set(labs)
                    ),
                )
            )
    return match, issues
