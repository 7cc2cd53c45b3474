"""Chip-firing on directed graphs.

A divisor is an integer chip count per vertex.  Lending at ``v`` moves one
chip along every outgoing arrow of ``v``, i.e. subtracts row ``v`` of the
Laplacian; borrowing is the inverse move.  Two divisors are equivalent when
their difference is an integer combination of Laplacian rows, that is when
it lies in the image of ``L^T``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .analysis import laplacian
from .errors import GrajacError, LengthMismatch
from .graph import DirectedMultigraph
from .linalg import SnfResult, smith_normal_form

Divisor = tuple  # tuple[int, ...], one entry per vertex


class Direction(enum.Enum):
    LEND = "lend"
    BORROW = "borrow"


def parse_divisor(text: str) -> Divisor:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise GrajacError(f"divisor must be comma-separated integers, got {text!r}") from None


def format_divisor(d: Sequence[int]) -> str:
    return ",".join(str(x) for x in d)


def _check(g: DirectedMultigraph, d) -> Divisor:
    d = tuple(int(x) for x in d)
    if len(d) != g.vertex_count:
        raise LengthMismatch(f"divisor has {len(d)} entries, graph has {g.vertex_count} vertices")
    return d


def fire(g: DirectedMultigraph, d, v: int, direction=Direction.LEND) -> Divisor:
    d = _check(g, d)
    g.check_vertex(v)
    sign = -1 if Direction(direction) is Direction.LEND else 1
    row = laplacian(g).row(v - 1)
    return tuple(x + sign * r for x, r in zip(d, row))


@lru_cache(maxsize=256)
def _transposed_snf(g: DirectedMultigraph) -> SnfResult:
    return smith_normal_form(laplacian(g).T)


def _coordinates(g, d) -> tuple[SnfResult, list[int]]:
    snf = _transposed_snf(g)
    return snf, list(snf.p @ list(d))


@dataclass(frozen=True)
class Equivalence:
    equivalent: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.equivalent


def equivalent(g: DirectedMultigraph, d1, d2) -> Equivalence:
    """Decide ``d1 ~ d2``; the witness ``x`` satisfies ``L^T x = d1 - d2``.

    Lending at ``v`` ``x_v`` times (borrowing when negative) turns ``d1``
    into ``d2``.
    """
    d1, d2 = _check(g, d1), _check(g, d2)
    snf, c = _coordinates(g, [a - b for a, b in zip(d1, d2)])
    diag = snf.diagonal
    y = []
    for ci, di in zip(c, diag):
        if di == 0:
            if ci:
                return Equivalence(False)
            y.append(0)
        elif ci % di:
            return Equivalence(False)
        else:
            y.append(ci // di)
    return Equivalence(True, tuple(snf.q @ y))


@dataclass(frozen=True)
class PicardClass:
    """Class label: free coordinates plus residues modulo the invariant factors."""

    free: tuple[int, ...]
    residues: tuple[int, ...]
    moduli: tuple[int, ...]

    def __str__(self) -> str:
        parts = [f"free=({','.join(map(str, self.free))})"]
        parts.append(
            "torsion=(" + ",".join(f"{r} mod {m}" for r, m in zip(self.residues, self.moduli)) + ")"
        )
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"free": list(self.free), "residues": list(self.residues), "moduli": list(self.moduli)}


def picard_class(g: DirectedMultigraph, d) -> PicardClass:
    d = _check(g, d)
    snf, c = _coordinates(g, d)
    free, res, mods = [], [], []
    for ci, di in zip(c, snf.diagonal):
        if di == 0:
            free.append(ci)
        elif di > 1:
            res.append(ci % di)
            mods.append(di)
    return PicardClass(tuple(free), tuple(res), tuple(mods))


def degree(d) -> int:
    return sum(d)
