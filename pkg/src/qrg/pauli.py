"""Generalized Pauli operators on tensor products of prime-dimensional qudits.

An operator is stored phase-free as one ``(b, c)`` exponent pair per tensor
factor, meaning ``X^b Z^c`` on that factor.  Commutation is decided
symbolically from the per-prime symplectic forms; :class:`MonomialMatrix`
provides an exact, independent check by multiplying the actual shift/clock
matrices with root-of-unity phases kept as integer exponents.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass

from qrg.rings import factorize, is_prime


@dataclass(frozen=True)
class FactorSpec:
    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", tuple(int(p) for p in self.primes))
        if not self.primes:
            raise ValueError("need at least one tensor factor")
        for p in self.primes:
            if not is_prime(p):
                raise ValueError(f"tensor factor dimension {p} is not prime")

    @classmethod
    def from_dimension(cls, d: int) -> FactorSpec:
        """Nondecreasing prime factorization: 12 -> (2, 2, 3)."""
        if d < 2:
            raise ValueError(f"dimension must be >= 2, got {d}")
        return cls(tuple(p for p, e in factorize(d) for _ in range(e)))

    @property
    def dimension(self) -> int:
        return math.prod(self.primes)

    def __str__(self) -> str:
        return ",".join(map(str, self.primes))


@dataclass(frozen=True, order=True)
class PauliOp:
    exponents: tuple[tuple[int, int], ...]

    def is_identity_on(self, i: int) -> bool:
        return self.exponents[i] == (0, 0)

    def identity_pattern(self) -> tuple[bool, ...]:
        return tuple(e == (0, 0) for e in self.exponents)

    def __str__(self) -> str:
        return "|".join(f"X{b}Z{c}" for b, c in self.exponents)

    @classmethod
    def parse(cls, text: str) -> PauliOp:
        """Inverse of ``str``: ``"X1Z0|X0Z1"``."""
        parts = []
        for tok in text.split("|"):
            tok = tok.strip()
            if not (tok.startswith("X") and "Z" in tok):
                raise ValueError(f"bad operator token {tok!r}")
            b, c = tok[1:].split("Z")
            parts.append((int(b), int(c)))
        return cls(tuple(parts))


def enumerate_operators(spec: FactorSpec) -> list[PauliOp]:
    """All ``d^2 - 1`` non-identity operators, lexicographic on exponent tuples."""
    per_factor = [list(itertools.product(range(p), repeat=2)) for p in spec.primes]
    ops = [PauliOp(t) for t in itertools.product(*per_factor)]
    return ops[1:]  # the first tuple is the identity


def _check_spec(spec: FactorSpec, *ops: PauliOp) -> None:
    for op in ops:
        if len(op.exponents) != len(spec.primes) or any(
            not (0 <= b < p and 0 <= c < p) for (b, c), p in zip(op.exponents, spec.primes)
        ):
            raise ValueError(f"operator {op} does not belong to factors {spec}")


def symplectic_residues(spec: FactorSpec, a: PauliOp, b: PauliOp) -> dict[int, int]:
    """Per prime ``p``: sum over factors of dimension ``p`` of ``b_i c'_i - c_i b'_i`` mod p."""
    out: dict[int, int] = {}
    for p, (x, z), (x2, z2) in zip(spec.primes, a.exponents, b.exponents):
        out[p] = (out.get(p, 0) + x * z2 - z * x2) % p
    return out


def commutes_symbolic(spec: FactorSpec, a: PauliOp, b: PauliOp) -> bool:
    _check_spec(spec, a, b)
    return not any(symplectic_residues(spec, a, b).values())


# ---------------------------------------------------------------------------
# exact monomial matrices


@dataclass(frozen=True)
class MonomialMatrix:
    """Row ``r`` holds ``exp(2 pi i phase_exp[r] / root_order)`` in column ``perm[r]``."""

    perm: tuple[int, ...]
    phase_exp: tuple[int, ...]
    root_order: int

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("perm is not a permutation")
        object.__setattr__(self, "phase_exp", tuple(x % self.root_order for x in self.phase_exp))

    @property
    def size(self) -> int:
        return len(self.perm)

    def with_root_order(self, order: int) -> MonomialMatrix:
        if order % self.root_order:
            raise ValueError(f"root order {order} is not a multiple of {self.root_order}")
        k = order // self.root_order
        return MonomialMatrix(self.perm, tuple(x * k for x in self.phase_exp), order)

    def _aligned(self, other: MonomialMatrix) -> tuple[MonomialMatrix, MonomialMatrix]:
        if self.root_order == other.root_order:
            return self, other
        D = math.lcm(self.root_order, other.root_order)
        return self.with_root_order(D), other.with_root_order(D)

    def __matmul__(self, other: MonomialMatrix) -> MonomialMatrix:
        a, b = self._aligned(other)
        if a.size != b.size:
            raise ValueError("size mismatch")
        perm = tuple(b.perm[a.perm[r]] for r in range(a.size))
        phase = tuple(a.phase_exp[r] + b.phase_exp[a.perm[r]] for r in range(a.size))
        return MonomialMatrix(perm, phase, a.root_order)

    def kron(self, other: MonomialMatrix) -> MonomialMatrix:
        a, b = self._aligned(other)
        n2 = b.size
        perm = tuple(a.perm[i] * n2 + b.perm[j] for i in range(a.size) for j in range(n2))
        phase = tuple(a.phase_exp[i] + b.phase_exp[j] for i in range(a.size) for j in range(n2))
        return MonomialMatrix(perm, phase, a.root_order)

    def inverse(self) -> MonomialMatrix:
        n = self.size
        perm = [0] * n
        phase = [0] * n
        for r, col in enumerate(self.perm):
            perm[col] = r
            phase[col] = -self.phase_exp[r]
        return MonomialMatrix(tuple(perm), tuple(phase), self.root_order)

    def scaled(self, k: int) -> MonomialMatrix:
        """Multiply by the scalar ``exp(2 pi i k / root_order)``."""
        return MonomialMatrix(self.perm, tuple(x + k for x in self.phase_exp), self.root_order)

    def scalar_exponent(self) -> int | None:
        """If this is a scalar multiple of the identity, its phase exponent."""
        if any(c != r for r, c in enumerate(self.perm)) or len(set(self.phase_exp)) != 1:
            return None
        return self.phase_exp[0]

    def to_dense(self):
        import numpy as np

        out = np.zeros((self.size, self.size), dtype=complex)
        for r, (c, e) in enumerate(zip(self.perm, self.phase_exp)):
            out[r, c] = np.exp(2j * np.pi * e / self.root_order)
        return out


def shift_clock(p: int, b: int, c: int, root_order: int | None = None) -> MonomialMatrix:
    """``X^b Z^c`` in dimension ``p`` with ``X|s> = |s+1>`` and ``Z|s> = w^s |s>``."""
    D = root_order or p
    if D % p:
        raise ValueError(f"root order {D} must be a multiple of {p}")
    step = D // p
    # (X^b Z^c)|s> = w^{cs} |s+b>: row s+b, column s
    perm = [0] * p
    phase = [0] * p
    for s in range(p):
        r = (s + b) % p
        perm[r] = s
        phase[r] = c * s * step
    return MonomialMatrix(tuple(perm), tuple(phase), D)


def default_root_order(spec: FactorSpec) -> int:
    """``lcm`` of the factor primes, doubled when a qubit is present (room for the ``i`` in sigma_y)."""
    D = math.lcm(*spec.primes)
    return 2 * D if 2 in spec.primes else D


def to_monomial_matrix(spec: FactorSpec, a: PauliOp, root_order: int | None = None) -> MonomialMatrix:
    _check_spec(spec, a)
    D = root_order or default_root_order(spec)
    out = None
    for p, (b, c) in zip(spec.primes, a.exponents):
        m = shift_clock(p, b, c, D)
        out = m if out is None else out.kron(m)
    return out


def commutator_phase(spec: FactorSpec, a: PauliOp, b: PauliOp) -> int:
    """Exponent ``k`` with ``M_a M_b = w^k M_b M_a`` at the default root order.

    Raises if the group commutator is not scalar (it always is for Pauli operators).
    """
    ma, mb = to_monomial_matrix(spec, a), to_monomial_matrix(spec, b)
    k = ((ma @ mb) @ (mb @ ma).inverse()).scalar_exponent()
    if k is None:
        raise ArithmeticError(f"commutator of {a} and {b} is not scalar")
    return k


def commutes_oracle(spec: FactorSpec, a: PauliOp, b: PauliOp) -> bool:
    ma, mb = to_monomial_matrix(spec, a), to_monomial_matrix(spec, b)
    return ma @ mb == mb @ ma


def oracle_sweep(spec: FactorSpec, ops: Sequence[PauliOp] | None = None) -> list[tuple[PauliOp, PauliOp]]:
    """Compare symbolic commutation with the matrix oracle on every pair; return mismatches."""
    ops = list(ops if ops is not None else enumerate_operators(spec))
    mats = [to_monomial_matrix(spec, op) for op in ops]
    bad = []
    for i, j in itertools.combinations(range(len(ops)), 2):
        oracle = mats[i] @ mats[j] == mats[j] @ mats[i]
        if oracle != commutes_symbolic(spec, ops[i], ops[j]):
            bad.append((ops[i], ops[j]))
    return bad


# ---------------------------------------------------------------------------
# sextit labels

# qubit: I, sigma_x, sigma_y, sigma_z as X^b Z^c exponents (phase dropped)
QUBIT_NAMES = {(0, 0): "I", (1, 0): "sx", (1, 1): "sy", (0, 1): "sz"}
# qutrit orthonormal set sigma_1..sigma_8 = Z, X, Y=XZ, V=XZ^2, Z^2, X^2, Y^2, V^2
QUTRIT_SET = ((0, 1), (1, 0), (1, 1), (1, 2), (0, 2), (2, 0), (2, 2), (2, 1))
_QUBIT_BLOCK = {(0, 0): (0, None), (0, 1): (8, "a_0"), (1, 0): (16, "b_0"), (1, 1): (24, "c_0")}

SEXTIT = FactorSpec((2, 3))


def paper_label(a: PauliOp, spec: FactorSpec = SEXTIT) -> str:
    """Sextit labels ``1..32``, ``a_0``, ``b_0``, ``c_0`` for d = 6 operators."""
    if spec.primes != (2, 3):
        raise ValueError(f"sextit labels exist only for factors (2, 3), got {spec}")
    _check_spec(spec, a)
    qubit, qutrit = a.exponents
    offset, ref = _QUBIT_BLOCK[qubit]
    if qutrit == (0, 0):
        if ref is None:
            raise ValueError("the identity has no label")
        return ref
    return str(offset + QUTRIT_SET.index(qutrit) + 1)


def from_paper_label(label: str) -> PauliOp:
    for op in enumerate_operators(SEXTIT):
        if paper_label(op) == label:
            return op
    raise KeyError(label)
