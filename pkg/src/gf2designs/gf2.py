"""Bit-packed vectors and square matrices over GF(2).

A vector lives in one machine word: bit ``i`` of the integer is
coordinate ``i + 1``.  A matrix is a tuple of such row words.  All
arithmetic is XOR-based; everything is immutable and hashable so group
elements can sit in sets and dicts.

Vectors act on the right, ``x -> x @ A``, i.e. the image of ``x`` is the
XOR of the rows of ``A`` selected by the set bits of ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_DIM = 64


class SingularMatrixError(ValueError):
    """Inverse requested for a matrix of deficient rank."""


class NotAnInvolutionError(ValueError):
    """Involution classification applied to an element of order != 2."""


class OrderCapError(RuntimeError):
    """Element order search exceeded the given cap."""


def _check_dim(dim: int) -> None:
    if not 1 <= dim <= MAX_DIM:
        raise ValueError(f"dimension must be in 1..{MAX_DIM}, got {dim}")


@dataclass(frozen=True)
class GF2Vector:
    """A row vector of ``dim`` bits; bits above ``dim`` must be zero."""

    bits: int
    dim: int

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        if self.bits < 0 or self.bits >> self.dim:
            raise ValueError(f"bits out of range for dimension {self.dim}")

    def __xor__(self, other: "GF2Vector") -> "GF2Vector":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return GF2Vector(self.bits ^ other.bits, self.dim)

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.dim:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def apply(self, m: "GF2Matrix") -> "GF2Vector":
        """Image of this vector under the right action of ``m``."""
        if self.dim != m.dim:
            raise ValueError("dimension mismatch")
        return GF2Vector(vec_mat(self.bits, m.rows), self.dim)


def vec_mat(x: int, rows: tuple[int, ...]) -> int:
    """Right action on a raw bit word: XOR of ``rows[i]`` over set bits of ``x``."""
    acc = 0
    while x:
        acc ^= rows[(x & -x).bit_length() - 1]
        x &= x - 1
    return acc


def rank_of_rows(rows) -> int:
    """GF(2) rank of an iterable of row words (Gaussian elimination)."""
    basis: list[int] = []  # rows with pairwise distinct lowest set bits
    rank = 0
    for r in rows:
        for b in basis:
            if r & (b & -b):
                r ^= b
        if r:
            basis.append(r)
            rank += 1
    return rank


@dataclass(frozen=True)
class GF2Matrix:
    """A square bit matrix; ``rows[i]`` is the word of row ``i + 1``."""

    rows: tuple[int, ...]
    dim: int

    def __post_init__(self) -> None:
        _check_dim(self.dim)
        if len(self.rows) != self.dim:
            raise ValueError(f"expected {self.dim} rows, got {len(self.rows)}")
        for r in self.rows:
            if r < 0 or r >> self.dim:
                raise ValueError(f"row word out of range for dimension {self.dim}")

    @staticmethod
    def identity(dim: int) -> "GF2Matrix":
        _check_dim(dim)
        return GF2Matrix(tuple(1 << i for i in range(dim)), dim)

    @staticmethod
    def from_bit_rows(rows, dim: int | None = None) -> "GF2Matrix":
        rows = tuple(rows)
        return GF2Matrix(rows, len(rows) if dim is None else dim)

    def is_identity(self) -> bool:
        return all(r == 1 << i for i, r in enumerate(self.rows))

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        b = other.rows
        return GF2Matrix(tuple(vec_mat(r, b) for r in self.rows), self.dim)

    def __xor__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return GF2Matrix(
            tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.dim
        )

    def rank(self) -> int:
        return rank_of_rows(self.rows)

    def is_invertible(self) -> bool:
        return self.rank() == self.dim

    def inverse(self) -> "GF2Matrix":
        """Gauss-Jordan inverse; raises SingularMatrixError below full rank."""
        n = self.dim
        aug = [(self.rows[i], 1 << i) for i in range(n)]
        for col in range(n):
            pivot = None
            for i in range(col, n):
                if (aug[i][0] >> col) & 1:
                    pivot = i
                    break
            if pivot is None:
                raise SingularMatrixError(f"rank < {n}")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            prow, pinv = aug[col]
            for i in range(n):
                if i != col and (aug[i][0] >> col) & 1:
                    aug[i] = (aug[i][0] ^ prow, aug[i][1] ^ pinv)
        return GF2Matrix(tuple(inv for _, inv in aug), n)

    def order(self, cap: int = 1 << 20) -> int:
        """Smallest n >= 1 with A^n = I; raises OrderCapError past ``cap``."""
        if not self.is_invertible():
            raise SingularMatrixError("order of a singular matrix")
        power = self
        n = 1
        while not power.is_identity():
            power = power @ self
            n += 1
            if n > cap:
                raise OrderCapError(f"order exceeds cap {cap}")
        return n

    def conjugate_by(self, p: "GF2Matrix") -> "GF2Matrix":
        """p^-1 * self * p."""
        return p.inverse() @ self @ p


@dataclass(frozen=True)
class InvolutionType:
    """Conjugacy class of an order-2 element: ``s`` swap blocks in dimension ``v``."""

    v: int
    s: int

    def __post_init__(self) -> None:
        _check_dim(self.v)
        if not 1 <= self.s <= self.v // 2:
            raise ValueError(f"s must be in 1..{self.v // 2}, got {self.s}")


def involution_normal_form(v: int, s: int) -> GF2Matrix:
    """Block-diagonal normal form: ``s`` blocks (0 1; 1 0), then an identity tail."""
    t = InvolutionType(v, s)  # validates the range
    rows = []
    for b in range(t.s):
        rows.append(1 << (2 * b + 1))
        rows.append(1 << (2 * b))
    for i in range(2 * t.s, v):
        rows.append(1 << i)
    return GF2Matrix(tuple(rows), v)


def involution_type(a: GF2Matrix) -> InvolutionType:
    """Classify an order-2 matrix; s = rank(A + I) is a conjugation invariant."""
    ident = GF2Matrix.identity(a.dim)
    if a.is_identity() or not (a @ a).is_identity():
        raise NotAnInvolutionError("element order is not 2")
    return InvolutionType(a.dim, (a ^ ident).rank())
