"""Decision regions carved from the groupoid product over a subset pair.

Each product a.b with a drawn from A and b from B lands somewhere; the six
region kinds classify the landing spot relative to A, B, and the
upper-bound set of the pair. The groupoid must actually fit the relation,
so the pair is verified before anything is computed.
"""

from __future__ import annotations

from .errors import LawError, StructureError
from .grpd import Groupoid, verify_b_of_s
from .relsys import RelationalSystem
from ._bits import bits

REGION_KINDS = ("n", "o1", "o2", "i1", "i2", "o")


def region(
    g: Groupoid, sys: RelationalSystem, A: int, B: int, kind: str
) -> int:
    """n: elements of B fixed by some a in A. o1/o2: products that are
    genuine upper bounds escaping A (resp. B). i1/i2: upper-bound products
    landing back inside A (resp. B). o: escaping both."""
    if not verify_b_of_s(sys, g):
        raise StructureError("groupoid is inconsistent with the relation")
    if (A | B) & ~sys.full_mask:
        raise LawError("operand sets must be subsets of the universe")
    if kind not in REGION_KINDS:
        raise LawError(f"unknown region kind {kind!r}")
    if kind == "o":
        return region(g, sys, A, B, "o1") & region(g, sys, A, B, "o2")
    out = 0
    for a in bits(A):
        for b in bits(B):
            c = g.table[a][b]
            if kind == "n":
                if c == b:
                    out |= 1 << b
                continue
            if not (sys.succ[a] & sys.succ[b]) >> c & 1:
                continue
            if kind == "o1" and not A >> c & 1:
                out |= 1 << c
            elif kind == "o2" and not B >> c & 1:
                out |= 1 << c
            elif kind == "i1" and A >> c & 1:
                out |= 1 << c
            elif kind == "i2" and B >> c & 1:
                out |= 1 << c
    return out


def region_table(
    g: Groupoid, sys: RelationalSystem, A: int, B: int
) -> dict[str, int]:
    return {kind: region(g, sys, A, B, kind) for kind in REGION_KINDS}
