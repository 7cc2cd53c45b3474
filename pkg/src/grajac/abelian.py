"""Finitely generated abelian groups in invariant-factor form.

A group is stored as ``Z^r x Z_{f_1} x ... x Z_{f_k}`` with every
``f_i >= 2`` and ``f_1 | f_2 | ... | f_k``.  That form is unique, so two
:class:`AbelianGroup` values compare equal exactly when the groups are
isomorphic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DivisorBelowTwo, GrajacError, NotSquare
from .linalg import as_matrix, snf_diagonal

INFINITE = math.inf


@dataclass(frozen=True)
class AbelianGroup:
    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        fs = tuple(int(f) for f in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        if self.free_rank < 0:
            raise GrajacError("free rank must be nonnegative")
        if any(f < 2 for f in fs):
            raise DivisorBelowTwo(f"invariant factors must be >= 2, got {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise GrajacError(f"invariant factors {fs} do not form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def __str__(self) -> str:
        return render(self)

    def to_json(self) -> dict:
        return {"rank": self.free_rank, "invariant_factors": list(self.invariant_factors)}

    @classmethod
    def from_json(cls, obj) -> "AbelianGroup":
        return from_elementary_divisors(int(obj["rank"]), obj.get("invariant_factors", []))


TRIVIAL = AbelianGroup()


def fold_to_chain(orders: Iterable[int]) -> list[int]:
    """Pairwise gcd/lcm folding of cyclic orders into an invariant-factor chain.

    Orders equal to 1 are dropped from the result.
    """
    fs = list(orders)
    for i in range(len(fs)):
        for j in range(i + 1, len(fs)):
            a, b = fs[i], fs[j]
            if b % a:
                g = math.gcd(a, b)
                fs[i], fs[j] = g, a // g * b
    return [f for f in fs if f != 1]


def from_elementary_divisors(rank: int, divisors: Iterable[int] = ()) -> AbelianGroup:
    """Canonical form of ``Z^rank x (+) Z_d`` for any list of orders ``d >= 2``."""
    divisors = [int(d) for d in divisors]
    bad = [d for d in divisors if d < 2]
    if bad:
        raise DivisorBelowTwo(f"cyclic orders must be >= 2, got {bad}")
    return AbelianGroup(rank, tuple(fold_to_chain(sorted(divisors))))


def from_cyclic_orders(rank: int, orders: Iterable[int]) -> AbelianGroup:
    """Like :func:`from_elementary_divisors` but tolerates orders of 1 (trivial factors)."""
    return from_elementary_divisors(rank, [d for d in orders if d != 1])


def cokernel(m) -> AbelianGroup:
    """``Z^n / im(m)`` for a square integer matrix ``m``."""
    m = as_matrix(m)
    if not m.is_square:
        raise NotSquare(f"cokernel expects a square matrix, got {m.rows}x{m.cols}")
    diag = snf_diagonal(m)
    nonzero = [d for d in diag if d]
    return AbelianGroup(m.rows - len(nonzero), tuple(d for d in nonzero if d > 1))


def torsion(g: AbelianGroup) -> AbelianGroup:
    return AbelianGroup(0, g.invariant_factors)


def order(g: AbelianGroup):
    """Group order, or ``math.inf`` when the free rank is positive."""
    if g.free_rank:
        return INFINITE
    return math.prod(g.invariant_factors)


def render(g: AbelianGroup) -> str:
    parts = []
    if g.free_rank == 1:
        parts.append("Z")
    elif g.free_rank > 1:
        parts.append(f"Z^{g.free_rank}")
    parts.extend(f"Z_{f}" for f in g.invariant_factors)
    return " x ".join(parts) if parts else "0"


def parse_group(text: str) -> AbelianGroup:
    """Inverse of :func:`render`; also accepts elementary-divisor style input."""
    text = text.strip()
    if text in ("0", ""):
        return TRIVIAL
    rank = 0
    orders = []
    for part in text.split("x"):
        part = part.strip()
        if part == "Z":
            rank += 1
        elif part.startswith("Z^"):
            rank += int(part[2:])
        elif part.startswith("Z_"):
            orders.append(int(part[2:]))
        else:
            raise GrajacError(f"cannot parse group component {part!r}")
    return from_cyclic_orders(rank, orders)


def is_isomorphic(g: AbelianGroup, h: AbelianGroup) -> bool:
    return g == h
