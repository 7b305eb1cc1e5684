"""Finite commutative rings presented as direct products of local rings.

Two kinds of local component are supported: residue rings ``Z_{p^k}`` and
Galois fields ``GF(p^k)`` given by an irreducible polynomial over ``Z_p``.
A :class:`Ring` enumerates its elements once, lexicographically on canonical
coordinates, and keeps addition/multiplication tables indexed by element
position.  Everything downstream (module vectors, projective lines) works on
those integer indices for speed; :class:`RingElement` is the user-facing
wrapper.
"""

from __future__ import annotations

import functools
import itertools
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from typing import Union


class RingError(ValueError):
    """Raised for invalid ring descriptions or mixed-ring arithmetic."""


# ---------------------------------------------------------------------------
# small number theory helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as ``[(p, e), ...]`` with increasing ``p``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    fac = factorize(q)
    if len(fac) != 1:
        return None
    return fac[0]


# ---------------------------------------------------------------------------
# polynomials over Z_p (coefficient tuples, lowest degree first)


def _poly_trim(a: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = [x % p for x in a]
    b = _poly_trim([x % p for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    quot = [0] * max(len(a) - len(b) + 1, 1)
    for shift in range(len(a) - len(b), -1, -1):
        coef = a[shift + len(b) - 1] * inv_lead % p
        quot[shift] = coef
        if coef:
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - coef * bc) % p
    return _poly_trim(quot), _poly_trim(a)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Exhaustive irreducibility test: no monic factor of degree 1..deg/2."""
    poly = _poly_trim([x % p for x in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for fdeg in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=fdeg):
            _, rem = poly_divmod(poly, (*low, 1), p)
            if not rem:
                return False
    return True


@functools.cache
def default_polynomial(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``k`` over ``Z_p`` in lexicographic search order.

    Coefficients are listed lowest degree first.  For GF(4) this is x^2+x+1.
    """
    for low in itertools.product(range(p), repeat=k):
        # most significant coefficient varies slowest: reverse for a natural order
        cand = (*reversed(low), 1)
        if cand[0] == 0:
            continue
        if is_irreducible(cand, p):
            return cand
    raise RingError(f"no irreducible polynomial of degree {k} over Z_{p}")  # pragma: no cover


# ---------------------------------------------------------------------------
# local components


Coord = Union[int, tuple[int, ...]]


@dataclass(frozen=True)
class Residue:
    """The residue ring ``Z_{p^k}``; ``modulus`` must be a prime power."""

    modulus: int

    def __post_init__(self) -> None:
        if prime_power(self.modulus) is None:
            raise RingError(f"Z{self.modulus}: modulus must be a prime power >= 2")

    @property
    def prime(self) -> int:
        return prime_power(self.modulus)[0]

    @property
    def order(self) -> int:
        return self.modulus

    @property
    def is_field(self) -> bool:
        return self.modulus == self.prime

    def elements(self) -> list[int]:
        return list(range(self.modulus))

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def mul(self, a: int, b: int) -> int:
        return a * b % self.modulus

    def neg(self, a: int) -> int:
        return -a % self.modulus

    def is_unit(self, a: int) -> bool:
        return a % self.prime != 0

    def name(self) -> str:
        return f"Z{self.modulus}"


@dataclass(frozen=True)
class GaloisField:
    """``GF(p^k)`` realised as ``Z_p[x] / (poly)``.

    ``poly`` is a monic irreducible of degree ``k`` (coefficients lowest degree
    first); left empty, a built-in default is chosen.
    """

    p: int
    k: int
    poly: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise RingError(f"GF: characteristic {self.p} is not prime")
        if self.k < 1:
            raise RingError("GF: degree must be positive")
        if not self.poly:
            object.__setattr__(self, "poly", default_polynomial(self.p, self.k))
        poly = tuple(x % self.p for x in self.poly)
        object.__setattr__(self, "poly", poly)
        if len(poly) - 1 != self.k:
            raise RingError(f"GF({self.p}^{self.k}): polynomial degree {len(poly) - 1} != {self.k}")
        if poly[-1] != 1:
            raise RingError("GF: polynomial must be monic")
        if not is_irreducible(poly, self.p):
            raise RingError(f"GF({self.p}^{self.k}): polynomial {poly} is reducible over Z_{self.p}")

    @property
    def prime(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def is_field(self) -> bool:
        return True

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(range(self.p), repeat=self.k))

    def add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(-x % self.p for x in a)

    def mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        _, rem = poly_divmod(prod, self.poly, self.p)
        return tuple(rem) + (0,) * (self.k - len(rem))

    def is_unit(self, a: tuple[int, ...]) -> bool:
        return any(a)

    def name(self) -> str:
        if self.k == 1:
            return f"Z{self.p}"
        return f"F{self.order}"


Component = Union[Residue, GaloisField]


def canonical_component(comp: Component) -> Component:
    # GF(p) and Z_p are the same ring; keep a single spelling
    if isinstance(comp, GaloisField) and comp.k == 1:
        return Residue(comp.p)
    return comp


@dataclass(frozen=True)
class RingSpec:
    """Ordered direct product of local components."""

    components: tuple[Component, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise RingError("a ring needs at least one component")
        object.__setattr__(self, "components", tuple(canonical_component(c) for c in self.components))

    @property
    def order(self) -> int:
        out = 1
        for c in self.components:
            out *= c.order
        return out

    def __str__(self) -> str:
        return "x".join(c.name() for c in self.components)


def residue_ring(n: int) -> RingSpec:
    """``Z_n`` split by the Chinese remainder theorem into prime-power components."""
    if n < 2:
        raise RingError(f"Z{n}: modulus must be >= 2")
    return RingSpec(tuple(Residue(p**e) for p, e in factorize(n)))


# ---------------------------------------------------------------------------
# rings and elements


class Ring:
    """Immutable handle on a finite product ring with precomputed tables."""

    def __init__(self, spec: RingSpec):
        self.spec = spec
        comps = spec.components
        local_elems = [c.elements() for c in comps]
        self._coords: list[tuple[Coord, ...]] = list(itertools.product(*local_elems))
        self._index = {c: i for i, c in enumerate(self._coords)}
        n = len(self._coords)
        self.order = n

        # element index = mixed radix over component positions (lexicographic)
        local_index = [{e: i for i, e in enumerate(es)} for es in local_elems]
        local_add = [[[li[c.add(a, b)] for b in es] for a in es] for c, es, li in zip(comps, local_elems, local_index)]
        local_mul = [[[li[c.mul(a, b)] for b in es] for a in es] for c, es, li in zip(comps, local_elems, local_index)]
        local_neg = [[li[c.neg(a)] for a in es] for c, es, li in zip(comps, local_elems, local_index)]
        local_unit = [[c.is_unit(a) for a in es] for c, es in zip(comps, local_elems)]

        positions = list(itertools.product(*[range(len(es)) for es in local_elems]))
        radices = [len(es) for es in local_elems]

        def flat(pos: Sequence[int]) -> int:
            i = 0
            for r, x in zip(radices, pos):
                i = i * r + x
            return i

        self._positions = positions
        self.add_table = [[flat([t[a][b] for t, a, b in zip(local_add, pa, pb)]) for pb in positions] for pa in positions]
        self.mul_table = [[flat([t[a][b] for t, a, b in zip(local_mul, pa, pb)]) for pb in positions] for pa in positions]
        self.neg_table = [flat([t[a] for t, a in zip(local_neg, pa)]) for pa in positions]
        # per component: is the coordinate a unit of that local ring
        self.local_unit = [[local_unit[k][pa[k]] for pa in positions] for k in range(len(comps))]
        self.unit_flags = [all(self.local_unit[k][i] for k in range(len(comps))) for i in range(n)]
        self.zero_index = 0
        self.one_index = flat([li[_one(c)] for c, li in zip(comps, local_index)])
        self.units = [i for i in range(n) if self.unit_flags[i]]

    def __repr__(self) -> str:
        return f"Ring({self.spec})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[RingElement]:
        return (RingElement(self, i) for i in range(self.order))

    @property
    def num_components(self) -> int:
        return len(self.spec.components)

    def element(self, *coords: Coord) -> RingElement:
        """Build an element from per-component coordinates (reduced canonically).

        A single integer for a ring with only residue components is also
        accepted and reduced by the CRT, so ``Z6.element(5)`` is 5 mod 6.
        """
        comps = self.spec.components
        if len(coords) == 1 and isinstance(coords[0], int) and len(comps) > 1:
            if not all(isinstance(c, Residue) for c in comps):
                raise RingError("integer literals need a pure residue ring")
            coords = tuple(coords[0] % c.modulus for c in comps)
        if len(coords) != len(comps):
            raise RingError(f"{self.spec}: expected {len(comps)} coordinates, got {len(coords)}")
        canon = []
        for c, x in zip(comps, coords):
            if isinstance(c, Residue):
                canon.append(int(x) % c.modulus)
            else:
                x = (x,) if isinstance(x, int) else tuple(x)
                _, rem = poly_divmod(x, c.poly, c.p)
                canon.append(tuple(rem) + (0,) * (c.k - len(rem)))
        return RingElement(self, self._index[tuple(canon)])

    def coords(self, index: int) -> tuple[Coord, ...]:
        return self._coords[index]

    def __getitem__(self, index: int) -> RingElement:
        return RingElement(self, index)

    @property
    def zero(self) -> RingElement:
        return RingElement(self, self.zero_index)

    @property
    def one(self) -> RingElement:
        return RingElement(self, self.one_index)

    def sample(self, rng: random.Random) -> RingElement:
        return RingElement(self, rng.randrange(self.order))

    def maximal_ideals(self) -> list[MaximalIdeal]:
        return maximal_ideals(self)


def _one(c: Component) -> Coord:
    if isinstance(c, Residue):
        return 1
    return (1,) + (0,) * (c.k - 1)


@functools.cache
def ring_from_spec(spec: RingSpec) -> Ring:
    """Cached ring construction; handles are immutable so sharing is safe."""
    return Ring(spec)


@dataclass(frozen=True)
class RingElement:
    ring: Ring
    index: int

    @property
    def coords(self) -> tuple[Coord, ...]:
        return self.ring.coords(self.index)

    def _check(self, other: RingElement) -> None:
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if other.ring.spec != self.ring.spec:
            raise RingError(f"ring mismatch: {self.ring.spec} vs {other.ring.spec}")

    def __add__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.ring, self.ring.add_table[self.index][other.index])

    def __mul__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.ring, self.ring.mul_table[self.index][other.index])

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, self.ring.neg_table[self.index])

    def __sub__(self, other: RingElement) -> RingElement:
        return self + (-other)

    def __repr__(self) -> str:
        c = self.coords
        return f"{self.ring.spec}{c if len(c) > 1 else c[0]}"

    def __lt__(self, other: RingElement) -> bool:
        self._check(other)
        return self.index < other.index


def add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def neg(a: RingElement) -> RingElement:
    return -a


def is_unit(a: RingElement) -> bool:
    return a.ring.unit_flags[a.index]


def is_zero_divisor(a: RingElement) -> bool:
    """Non-units, zero included, so units and zero divisors partition the ring."""
    return not a.ring.unit_flags[a.index]


def inverse(a: RingElement) -> RingElement:
    if not is_unit(a):
        raise ZeroDivisionError(f"{a} is not a unit")
    row = a.ring.mul_table[a.index]
    return RingElement(a.ring, row.index(a.ring.one_index))


@dataclass(frozen=True)
class MaximalIdeal:
    """Pull-back of the maximal ideal of one local component."""

    ring: Ring
    component_index: int

    def __contains__(self, a: RingElement) -> bool:
        return not self.ring.local_unit[self.component_index][a.index]

    def contains_index(self, i: int) -> bool:
        return not self.ring.local_unit[self.component_index][i]

    def members(self) -> list[RingElement]:
        flags = self.ring.local_unit[self.component_index]
        return [RingElement(self.ring, i) for i in range(self.ring.order) if not flags[i]]

    def __len__(self) -> int:
        return sum(1 for f in self.ring.local_unit[self.component_index] if not f)

    def quotient_component(self) -> Component:
        return self.ring.spec.components[self.component_index]

    def __repr__(self) -> str:
        return f"MaximalIdeal({self.ring.spec}, component={self.component_index})"


def maximal_ideals(ring: Ring) -> list[MaximalIdeal]:
    return [MaximalIdeal(ring, k) for k in range(ring.num_components)]


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first, *rest)


def _local_products(p: int, e: int) -> list[tuple[Component, ...]]:
    """Products of local rings of characteristic ``p`` and total order ``p^e``, up to reordering."""
    out = set()
    for parts in _partitions(e):
        choices = [[Residue(p**a)] + ([GaloisField(p, a)] if a > 1 else []) for a in parts]
        for combo in itertools.product(*choices):
            out.add(tuple(sorted(combo, key=lambda c: (c.order, type(c).__name__))))
    return sorted(out, key=lambda t: [(c.order, type(c).__name__) for c in t])


def ring_catalog(max_order: int) -> list[RingSpec]:
    """Every supported ring (product of Z_{p^a} and GF(p^a)) of order <= ``max_order``, up to isomorphism."""
    specs = []
    for n in range(2, max_order + 1):
        per_prime = [_local_products(p, e) for p, e in factorize(n)]
        for combo in itertools.product(*per_prime):
            specs.append(RingSpec(tuple(c for group in combo for c in group)))
    return specs
