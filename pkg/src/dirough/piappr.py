"""Approximations carved out of the subgroupoid lattice.

The lower approximation unions the closed sets inside A, the upper is the
generated subgroupoid, and the anti-lower upper unions the inclusion-minimal
closed sets properly containing A. Rough tuples built from these drive two
gradations of rough equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._bits import is_subset
from .errors import LawError
from .grpd import Groupoid, generate, subgroupoids


@dataclass(frozen=True)
class PgTuple:
    """(lower, generated lower, upper); the middle closes the lower."""

    lower: int
    generated_lower: int
    upper: int

    def acpg(self) -> tuple[int, int]:
        return (self.generated_lower, self.upper)


def approx_pi(g: Groupoid, A: int, op: str, cap: int | None = None) -> int:
    if A & ~g.full_mask:
        raise LawError("set A is not a subset of the universe")
    if op == "u_pi":
        return generate(g, A)
    fam = subgroupoids(g, cap)
    if op == "l_pi":
        return fam.union_within(A)
    if op == "u_a":
        # u_a(S) = S by convention; proper subsets union their minimal
        # proper closed supersets
        if A == g.full_mask:
            return A
        pool = tuple(
            H for H in fam.members if is_subset(A, H) and H != A
        )
        out = 0
        for H in fam.minimal_members(pool):
            out |= H
        return out
    raise LawError(f"unknown approximation op {op!r}")


def pg_tuple(g: Groupoid, A: int, cap: int | None = None) -> PgTuple:
    lower = approx_pi(g, A, "l_pi", cap)
    return PgTuple(lower, generate(g, lower), generate(g, A))


def compare_pi(
    g: Groupoid, A: int, B: int, cap: int | None = None
) -> dict[str, bool]:
    """Rough equality at both gradations.

    pg compares the full triple, acpg only the algebraic pair, so pg
    equality always implies acpg equality and not conversely.
    """
    ta, tb = pg_tuple(g, A, cap), pg_tuple(g, B, cap)
    return {
        "pg_equal": ta == tb,
        "acpg_equal": ta.acpg() == tb.acpg(),
    }
