"""Design-theoretic predicates and involution counting over GF(2).

A t-(v,k,lambda)_q subspace design is a set of k-subspaces (blocks) of
F_q^v such that every t-subspace lies in exactly lambda blocks.  The
derived parameters lambda_s, the admissibility predicates, and the
fixed-block census of an involution acting on a binary q-Steiner triple
system are all computed with exact integer and rational arithmetic:
whether a count comes out integral is precisely the content of the
exclusion arguments, so floats are banned here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gf2 import vec_mat
from .grassmannian import (
    Subspace,
    enumerate_subspaces,
    gaussian_binomial,
    rref_basis,
)


@dataclass(frozen=True)
class DesignParams:
    """Parameters of a t-(v, k, lambda)_q subspace design."""

    t: int
    v: int
    k: int
    lam: int
    q: int = 2

    def __post_init__(self) -> None:
        if not 0 <= self.t <= self.k <= self.v:
            raise ValueError("need 0 <= t <= k <= v")
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.q < 2:
            raise ValueError("q must be a prime power >= 2")


def lambda_s(p: DesignParams, s: int) -> Fraction:
    """Derived index: a t-design is an s-design with this (rational) lambda.

    lambda_s = lambda * [v-s, t-s]_q / [k-s, t-s]_q for 0 <= s <= t.
    """
    if not 0 <= s <= p.t:
        raise ValueError(f"s must be in 0..{p.t}, got {s}")
    num = gaussian_binomial(p.v - s, p.t - s, p.q)
    den = gaussian_binomial(p.k - s, p.t - s, p.q)
    return Fraction(p.lam * num, den)


def is_admissible(p: DesignParams) -> bool:
    """Whether every derived index lambda_s is an integer."""
    return all(lambda_s(p, s).denominator == 1 for s in range(p.t + 1))


def steiner_triple_admissible(v: int) -> bool:
    """Admissibility of S_q[2,3,v]: v = 1 or 3 mod 6, v >= 7."""
    if v < 1:
        raise ValueError("v must be positive")
    return v >= 7 and v % 6 in (1, 3)


@dataclass(frozen=True)
class InvolutionCensus:
    """Point and fixed-block counts for an involution with ``s`` swap blocks.

    Acting on F_2^v, the involution fixes ``fixed_points`` of the 2^v - 1
    projective points and pairs the rest into ``two_orbits`` swaps.  If a
    binary q-Steiner triple system S_2[2,3,v] is invariant under it, each
    fixed block meets the fixed point set in either a point (``f3`` such
    blocks) or a full line (``f7``).  Both counts are exact rationals; a
    non-integral ``f7`` rules the involution type out, which is what
    ``admissible`` records.
    """

    v: int
    s: int
    fixed_points: int
    two_orbits: int
    f3: int
    f7: Fraction

    @property
    def admissible(self) -> bool:
        return self.f7.denominator == 1

    @property
    def fixed_blocks(self) -> Fraction:
        return self.f3 + self.f7


def involution_census(v: int, s: int) -> InvolutionCensus:
    """Counting data for the normal form with ``s`` swap blocks in dim ``v``."""
    if v < 3:
        raise ValueError("census formulas need v >= 3")
    if not 1 <= s <= v // 2:
        raise ValueError(f"s must be in 1..{v // 2}, got {s}")
    fixed_points = 2 ** (v - s) - 1
    two_orbits = 2 ** (v - s - 1) * (2**s - 1)
    f3 = 2 ** (v - s - 2) * (2**s - 1)
    f7 = Fraction(2 ** (2 * v - 2 * s - 1) + 1 - 3 * 2 ** (v - s - 2) * (2**s + 1), 21)
    return InvolutionCensus(v, s, fixed_points, two_orbits, f3, f7)


def f7_residue_mod7(v: int, s: int) -> int:
    """Residue class mod 7 of the f7 numerator, by closed-form case table.

    Only defined for admissible v (v = 1 or 3 mod 6); the table is indexed
    by s mod 3 and returns a representative in {-1, 0, 1}.
    """
    if not steiner_triple_admissible(v):
        raise ValueError(f"v={v} is not admissible for a triple system")
    table = {
        1: (0, 1, 1),
        3: (0, 0, -1),
    }
    return table[v % 6][s % 3]


def admissible_involution_types(v: int) -> set[int]:
    """Types s whose f7 count is integral, so the type survives the screen.

    For v = 1 mod 6 these are the multiples of 3; for v = 3 mod 6 all s
    except s = 2 mod 3.
    """
    if not steiner_triple_admissible(v):
        raise ValueError(f"v={v} is not admissible for a triple system")
    if v % 6 == 1:
        return {s for s in range(1, v // 2 + 1) if s % 3 == 0}
    return {s for s in range(1, v // 2 + 1) if s % 3 != 2}


def verify_design(blocks, p: DesignParams) -> bool:
    """Exhaustive check that ``blocks`` is a t-(v,k,lambda)_2 design.

    Tallies, for every block, the t-subspaces it contains (each one is
    the image of a t-subspace of coordinate F_2^k under the block basis,
    an injective map), then demands every t-subspace of the ambient
    space was hit exactly lambda times.  Also checks the block count
    against lambda_0.  An oracle, not a hot path.
    """
    if p.q != 2:
        raise ValueError("only q=2 is supported")
    blocks = set(blocks)
    for b in blocks:
        if not isinstance(b, Subspace) or b.v != p.v or b.dim != p.k:
            raise ValueError(f"block {b!r} is not a {p.k}-subspace of F_2^{p.v}")
    if len(blocks) != lambda_s(p, 0):
        return False
    counts: dict[Subspace, int] = {}
    patterns = enumerate_subspaces(p.k, p.t)
    for b in blocks:
        for pat in patterns:
            tsub = Subspace(
                rref_basis((vec_mat(r, b.rows) for r in pat.rows), p.v), p.v
            )
            counts[tsub] = counts.get(tsub, 0) + 1
    if len(counts) != gaussian_binomial(p.v, p.t):
        return False
    return all(c == p.lam for c in counts.values())
