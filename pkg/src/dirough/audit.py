"""Claim registry and auditor.

Every theorem-shaped statement the library leans on is registered here as a
claim: an identifier, a tier, the variables it quantifies over, and a
predicate. Tier-1 claims are hard expectations; a failure means the build
is wrong. Tier-2 claims are audited: failures are reported with replayable
witnesses and treated as documented deviations, not crashes.

Claims quantify over subsets (uppercase variables) and elements (lowercase
variables). Assignment spaces that fit a budget are enumerated exhaustively
in a fixed order; larger ones are sampled deterministically from a seed, so
a report is reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from ._bits import bits, is_subset, mix, subsets_of
from .acp import audit_acp_laws
from .cud import approx_cud, cud_family, cudas_op, eth_closure, is_cud
from .errors import LawError
from .grpd import (
    ChoiceStrategy,
    Groupoid,
    build_updir_groupoid,
    generate,
    relation_of,
    verify_b_of_s,
)
from .piappr import approx_pi
from .relsys import (
    RelationalSystem,
    approx_basic,
    dc_neighborhood,
    from_id_pairs,
    is_up_directed,
)

DEFAULT_ASSIGNMENT_LIMIT = 20000


@dataclass(frozen=True)
class AuditInstance:
    name: str
    sys: RelationalSystem
    g: Groupoid | None = None


@dataclass(frozen=True)
class Claim:
    """One auditable statement.

    vars names the quantified variables: uppercase entries range over
    subsets of the universe (or over the CUD family when domain is "cud"),
    lowercase entries over elements. Claims with a checker skip
    quantification entirely and produce their own witness.
    """

    id: str
    tier: int
    needs: str  # "sys" or "grpd"
    vars: tuple[str, ...] = ()
    predicate: Callable[[AuditInstance, dict[str, int]], bool] | None = None
    checker: Callable[[AuditInstance], tuple[bool, dict | None]] | None = None
    domain: str = "all"  # subset variables range over "all" subsets or "cud" members
    requires_updirected: bool = False


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    tier: int
    instance: str
    status: str  # pass | fail | skipped
    witness: dict | None = None

    def as_dict(self) -> dict:
        return {
            "claim": self.claim,
            "tier": self.tier,
            "instance": self.instance,
            "status": self.status,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class DeviationReport:
    results: tuple[ClaimResult, ...]

    @property
    def tier1_failures(self) -> tuple[ClaimResult, ...]:
        return tuple(r for r in self.results if r.tier == 1 and r.status == "fail")

    @property
    def deviations(self) -> tuple[ClaimResult, ...]:
        return tuple(r for r in self.results if r.status == "fail")

    def as_dict(self) -> dict:
        return {"results": [r.as_dict() for r in self.results]}


# ---------------------------------------------------------------------------
# Deterministic random instances


def random_system(seed: int, n: int, density_pct: int = 35) -> RelationalSystem:
    labels = tuple(f"v{i}" for i in range(n))
    pairs = [
        (a, b)
        for a in range(n)
        for b in range(n)
        if mix(seed, a, b) % 100 < density_pct
    ]
    return from_id_pairs(labels, pairs)


def random_updirected_system(
    seed: int, n: int, density_pct: int = 35
) -> RelationalSystem:
    """Random system repaired to up-directedness.

    Any pair with no common successor gets one appointed deterministically.
    Edge additions only grow successor sets, so one pass suffices.
    """
    base = random_system(seed, n, density_pct)
    succ = list(base.succ)
    for a in range(n):
        for b in range(a, n):
            if not succ[a] & succ[b]:
                t = mix(seed, a, b, 7) % n
                succ[a] |= 1 << t
                succ[b] |= 1 << t
    pairs = [(a, b) for a in range(n) for b in bits(succ[a])]
    return from_id_pairs(base.labels, pairs)


# ---------------------------------------------------------------------------
# Predicate helpers

def _l(i: AuditInstance, A: int) -> int:
    return approx_basic(i.sys, A, "l")


def _u(i: AuditInstance, A: int) -> int:
    return approx_basic(i.sys, A, "u")


def _lcd(i: AuditInstance, A: int) -> int:
    return approx_cud(i.sys, A, "l")


def _ucd(i: AuditInstance, A: int, mode: str = "pointwise") -> int:
    return approx_cud(i.sys, A, "u", mode)


def _lpi(i: AuditInstance, A: int) -> int:
    return approx_pi(i.g, A, "l_pi")


def _upi(i: AuditInstance, A: int) -> int:
    return approx_pi(i.g, A, "u_pi")


def _ua(i: AuditInstance, A: int) -> int:
    return approx_pi(i.g, A, "u_a")


def _cone(i: AuditInstance, A: int) -> int:
    out = 0
    for a in bits(A):
        for c in bits(A):
            out |= i.sys.succ[a] & i.sys.succ[c]
    return out


_AUDIT_STRATEGIES = (
    ("min", ChoiceStrategy.min_index()),
    ("max", ChoiceStrategy.max_index()),
    ("seeded-11", ChoiceStrategy.seeded(11)),
    ("min-pi", ChoiceStrategy.min_index(pi_constrained=True)),
    ("seeded-11-pi", ChoiceStrategy.seeded(11, pi_constrained=True)),
)


def _construction_sound(i: AuditInstance) -> tuple[bool, dict | None]:
    for name, strat in _AUDIT_STRATEGIES:
        g = build_updir_groupoid(i.sys, strat)
        if not verify_b_of_s(i.sys, g):
            return False, {"strategy": name}
    return True, None


def _relation_roundtrip(i: AuditInstance) -> tuple[bool, dict | None]:
    for name, strat in _AUDIT_STRATEGIES:
        g = build_updir_groupoid(i.sys, strat)
        back = relation_of(g, "R")
        if back.succ != i.sys.succ:
            return False, {"strategy": name}
    return True, None


@lru_cache(maxsize=None)
def _acp_report(g: Groupoid):
    return audit_acp_laws(g, "formal")


def _acp_checker(law: str) -> Callable[[AuditInstance], tuple[bool, dict | None]]:
    def run(i: AuditInstance) -> tuple[bool, dict | None]:
        for v in _acp_report(i.g).verdicts:
            if v.law == law:
                return v.holds, v.witness
        raise LawError(f"auditor does not know law {law!r}")

    return run


# ---------------------------------------------------------------------------
# The registry

def _claims() -> tuple[Claim, ...]:
    S = "sys"
    G = "grpd"
    out: list[Claim] = []

    def claim(id, tier, needs, vars=(), domain="all", updir=False):
        def wrap(fn):
            out.append(
                Claim(
                    id, tier, needs, tuple(vars), predicate=fn, domain=domain,
                    requires_updirected=updir,
                )
            )
            return fn

        return wrap

    def checked(id, tier, needs, fn, updir=False):
        out.append(Claim(id, tier, needs, checker=fn, requires_updirected=updir))

    # --- basic neighborhood approximations
    @claim("lup.l-id0", 1, S, ["A"])
    def _(i, a):
        lo = _l(i, a["A"])
        return _l(i, lo) == lo and is_subset(lo, a["A"])

    @claim("lup.u-wid0", 1, S, ["A"])
    def _(i, a):
        up = _u(i, a["A"])
        return is_subset(up, _u(i, up))

    @claim("lup.lu-inc", 1, S, ["A"])
    def _(i, a):
        lo = _l(i, a["A"])
        return is_subset(lo, _u(i, lo)) and is_subset(_u(i, lo), _u(i, a["A"]))

    @claim("lup.l-mo", 1, S, ["A", "B"])
    def _(i, a):
        return not is_subset(a["A"], a["B"]) or is_subset(_l(i, a["A"]), _l(i, a["B"]))

    @claim("lup.u-mo", 1, S, ["A", "B"])
    def _(i, a):
        return not is_subset(a["A"], a["B"]) or is_subset(_u(i, a["A"]), _u(i, a["B"]))

    @claim("lup.bnd0", 1, S)
    def _(i, a):
        full = i.sys.full_mask
        return (
            _l(i, full) == _u(i, full)
            and is_subset(_u(i, full), full)
            and _l(i, 0) == 0 == _u(i, 0)
        )

    @claim("lup.u-union", 1, S, ["A", "B"])
    def _(i, a):
        return _u(i, a["A"] | a["B"]) == _u(i, a["A"]) | _u(i, a["B"])

    @claim("lup.l-union", 1, S, ["A", "B"])
    def _(i, a):
        return is_subset(_l(i, a["A"]) | _l(i, a["B"]), _l(i, a["A"] | a["B"]))

    @claim("lup.l-cap", 1, S, ["A", "B"])
    def _(i, a):
        return is_subset(_l(i, a["A"] & a["B"]), _l(i, a["A"]) & _l(i, a["B"]))

    @claim("lup.u-cap", 1, S, ["A", "B"])
    def _(i, a):
        return is_subset(_u(i, a["A"] & a["B"]), _u(i, a["A"]) & _u(i, a["B"]))

    @claim("lup.upper-cone", 1, S, ["A"], updir=True)
    def _(i, a):
        return is_subset(_cone(i, a["A"]), _u(i, a["A"]))

    # --- neighborhood structure
    @claim("nbd.nu1", 1, S, ["x", "y", "z"])
    def _(i, a):
        x, y, z = a["x"], a["y"], a["z"]
        lhs = i.sys.has(x, z) and i.sys.has(y, z)
        rhs = bool((i.sys.succ[x] & i.sys.succ[y]) >> z & 1)
        return lhs == rhs

    @claim("nbd.idcn-ne", 1, S, ["x"], updir=True)
    def _(i, a):
        return dc_neighborhood(i.sys, i.sys.full_mask, a["x"], "idc") != 0

    @claim("nbd.idcn-mo", 1, S, ["A", "B", "x"])
    def _(i, a):
        if not (is_subset(a["A"], a["B"]) and a["A"] != a["B"]):
            return True
        return is_subset(
            dc_neighborhood(i.sys, a["A"], a["x"], "idc"),
            dc_neighborhood(i.sys, a["B"], a["x"], "idc"),
        )

    @claim("nbd.idcn-sub", 1, S, ["A", "x"])
    def _(i, a):
        return is_subset(
            dc_neighborhood(i.sys, a["A"], a["x"], "idc"), i.sys.succ[a["x"]]
        )

    @claim("nbd.eta-mo", 1, S, ["A", "B", "x"])
    def _(i, a):
        if not is_subset(a["A"], a["B"]):
            return True
        return is_subset(
            dc_neighborhood(i.sys, a["A"], a["x"], "dc"),
            dc_neighborhood(i.sys, a["B"], a["x"], "dc"),
        )

    @claim("nbd.eta-sub", 1, S, ["A", "x"])
    def _(i, a):
        return is_subset(
            dc_neighborhood(i.sys, a["A"], a["x"], "dc"), i.sys.pred[a["x"]]
        )

    # --- the cautious closure
    @claim("eth.inclusion", 1, S, ["A"], updir=True)
    def _(i, a):
        return is_subset(a["A"], eth_closure(i.sys, a["A"]))

    @claim("eth.idempotence", 1, S, ["A"], updir=True)
    def _(i, a):
        e = eth_closure(i.sys, a["A"])
        return eth_closure(i.sys, e) == e

    @claim("eth.bottom", 1, S, updir=True)
    def _(i, a):
        return eth_closure(i.sys, 0) == 0

    @claim("eth.top", 1, S, updir=True)
    def _(i, a):
        return eth_closure(i.sys, i.sys.full_mask) == i.sys.full_mask

    @claim("eth.cmo", 2, S, ["A", "B"], updir=True)
    def _(i, a):
        A, B = a["A"], a["B"]
        if not (is_subset(A, B) and A != B and is_subset(B, eth_closure(i.sys, A))):
            return True
        return is_subset(eth_closure(i.sys, A), eth_closure(i.sys, B))

    # --- CUDAS
    @claim("cudas.ic-oplus", 1, S, ["A", "B"], domain="cud", updir=True)
    def _(i, a):
        A, B = a["A"], a["B"]
        return (
            cudas_op(i.sys, A, B, "oplus") == cudas_op(i.sys, B, A, "oplus")
            and cudas_op(i.sys, A, A, "oplus") == A
        )

    @claim("cudas.ic-odot", 1, S, ["A", "B"], domain="cud", updir=True)
    def _(i, a):
        A, B = a["A"], a["B"]
        return (
            cudas_op(i.sys, A, B, "odot") == cudas_op(i.sys, B, A, "odot")
            and cudas_op(i.sys, A, A, "odot") == A
        )

    @claim("cudas.inclusion-plus", 1, S, ["A", "B"], domain="cud", updir=True)
    def _(i, a):
        return is_subset(a["A"], cudas_op(i.sys, a["A"], a["B"], "oplus"))

    @claim("cudas.cmo-plus", 2, S, ["A", "B", "C", "E"], domain="cud", updir=True)
    def _(i, a):
        A, B, C, E = a["A"], a["B"], a["C"], a["E"]
        plus_ac = cudas_op(i.sys, A, C, "oplus")
        if not (is_subset(A, B) and is_subset(C, E) and is_subset(B | E, plus_ac)):
            return True
        return is_subset(plus_ac, cudas_op(i.sys, B, E, "oplus"))

    @claim("cudas.cmo-dot", 2, S, ["A", "B", "C", "E"], domain="cud", updir=True)
    def _(i, a):
        A, B, C, E = a["A"], a["B"], a["C"], a["E"]
        dot_ac = cudas_op(i.sys, A, C, "odot")
        if not (is_subset(A, B) and is_subset(C, E) and is_subset(B & E, dot_ac)):
            return True
        return is_subset(dot_ac, cudas_op(i.sys, B, E, "odot"))

    @claim("cudas.inclusiondot", 2, S, ["A", "B"], domain="cud", updir=True)
    def _(i, a):
        return is_subset(cudas_op(i.sys, a["A"], a["B"], "odot"), a["A"])

    # --- cud approximations, pointwise reading
    @claim("cdbas.cdInclusion", 1, S, ["A"], updir=True)
    def _(i, a):
        lo, up = _lcd(i, a["A"]), _ucd(i, a["A"])
        return is_subset(lo, a["A"]) and is_subset(a["A"], up)

    @claim("cdbas.lcdId", 1, S, ["A"], updir=True)
    def _(i, a):
        lo = _lcd(i, a["A"])
        return _lcd(i, lo) == lo

    @claim("cdbas.ucdpId", 1, S, ["A"], updir=True)
    def _(i, a):
        up = _ucd(i, a["A"])
        return is_subset(up, _ucd(i, up))

    @claim("cdbas.lucdpId", 1, S, ["A"], updir=True)
    def _(i, a):
        lo = _lcd(i, a["A"])
        return is_subset(lo, _ucd(i, lo))

    @claim("cdbas.ulcdId", 1, S, ["A"], updir=True)
    def _(i, a):
        up = _ucd(i, a["A"])
        return _lcd(i, up) == up

    @claim("cdbas.lcdmo", 1, S, ["A", "B"], updir=True)
    def _(i, a):
        return not is_subset(a["A"], a["B"]) or is_subset(
            _lcd(i, a["A"]), _lcd(i, a["B"])
        )

    @claim("cdbas.ucdmo", 1, S, ["A", "B"], updir=True)
    def _(i, a):
        return not is_subset(a["A"], a["B"]) or is_subset(
            _ucd(i, a["A"]), _ucd(i, a["B"])
        )

    @claim("cdbas.lcdsadd", 1, S, ["A", "B"], updir=True)
    def _(i, a):
        return is_subset(
            _lcd(i, a["A"]) | _lcd(i, a["B"]), _lcd(i, a["A"] | a["B"])
        )

    @claim("cdbas.ucdsadd", 1, S, ["A", "B"], updir=True)
    def _(i, a):
        return is_subset(
            _ucd(i, a["A"]) | _ucd(i, a["B"]), _ucd(i, a["A"] | a["B"])
        )

    @claim("cdbas.lcdsmul", 1, S, ["A", "B"], updir=True)
    def _(i, a):
        return is_subset(
            _lcd(i, a["A"] & a["B"]), _lcd(i, a["A"]) & _lcd(i, a["B"])
        )

    @claim("cdbas.ucdsmul", 1, S, ["A", "B"], updir=True)
    def _(i, a):
        return is_subset(
            _ucd(i, a["A"] & a["B"]), _ucd(i, a["A"]) & _ucd(i, a["B"])
        )

    @claim("cdbas.cdbottom", 1, S, updir=True)
    def _(i, a):
        return _lcd(i, 0) == 0 == _ucd(i, 0)

    @claim("cdbas.cdtop", 1, S, updir=True)
    def _(i, a):
        full = i.sys.full_mask
        return _lcd(i, full) == full == _ucd(i, full)

    # --- cud approximations, collection reading (audited; known to fail)
    @claim("cdbas.cdInclusion-collection", 2, S, ["A"], updir=True)
    def _(i, a):
        lo = _lcd(i, a["A"])
        up = _ucd(i, a["A"], "collection")
        return is_subset(lo, a["A"]) and is_subset(a["A"], up)

    @claim("cdbas.ucdmo-collection", 2, S, ["A", "B"], updir=True)
    def _(i, a):
        return not is_subset(a["A"], a["B"]) or is_subset(
            _ucd(i, a["A"], "collection"), _ucd(i, a["B"], "collection")
        )

    def _cdtop_collection(i: AuditInstance) -> tuple[bool, dict | None]:
        full = i.sys.full_mask
        up = _ucd(i, full, "collection")
        if up == full:
            return True, None
        # the witness carries the collection-mode value so the gap is visible
        return False, {"upper": list(i.sys.set_labels(up))}

    checked("cdbas.cdtop-collection", 2, S, _cdtop_collection, updir=True)

    # --- subgroupoid approximations
    @claim("pi9.piInclusion", 1, G, ["A"])
    def _(i, a):
        return is_subset(_lpi(i, a["A"]), a["A"]) and is_subset(a["A"], _upi(i, a["A"]))

    @claim("pi9.lpiId", 1, G, ["A"])
    def _(i, a):
        lo = _lpi(i, a["A"])
        return _lpi(i, lo) == lo

    @claim("pi9.upipId", 1, G, ["A"])
    def _(i, a):
        up = _upi(i, a["A"])
        return _upi(i, up) == up

    @claim("pi9.ulpiId", 1, G, ["A"])
    def _(i, a):
        up = _upi(i, a["A"])
        return _lpi(i, up) == up

    @claim("pi9.lupipId", 2, G, ["A"])
    def _(i, a):
        lo = _lpi(i, a["A"])
        return _upi(i, lo) == lo

    @claim("pi9.lpimo", 1, G, ["A", "B"])
    def _(i, a):
        return not is_subset(a["A"], a["B"]) or is_subset(
            _lpi(i, a["A"]), _lpi(i, a["B"])
        )

    @claim("pi9.upimo", 1, G, ["A", "B"])
    def _(i, a):
        return not is_subset(a["A"], a["B"]) or is_subset(
            _upi(i, a["A"]), _upi(i, a["B"])
        )

    @claim("pi9.lpisadd", 1, G, ["A", "B"])
    def _(i, a):
        return is_subset(
            _lpi(i, a["A"]) | _lpi(i, a["B"]), _lpi(i, a["A"] | a["B"])
        )

    @claim("pi9.upisadd", 1, G, ["A", "B"])
    def _(i, a):
        return is_subset(
            _upi(i, a["A"]) | _upi(i, a["B"]), _upi(i, a["A"] | a["B"])
        )

    @claim("pi9.lpismul", 1, G, ["A", "B"])
    def _(i, a):
        return is_subset(
            _lpi(i, a["A"] & a["B"]), _lpi(i, a["A"]) & _lpi(i, a["B"])
        )

    @claim("pi9.upismul", 1, G, ["A", "B"])
    def _(i, a):
        return is_subset(
            _upi(i, a["A"] & a["B"]), _upi(i, a["A"]) & _upi(i, a["B"])
        )

    @claim("pi9.pibottom", 1, G)
    def _(i, a):
        return _lpi(i, 0) == 0 == _upi(i, 0)

    @claim("pi9.pitop", 1, G)
    def _(i, a):
        full = i.g.full_mask
        return _lpi(i, full) == full == _upi(i, full)

    @claim("sappr.sandwich", 1, G, ["A"])
    def _(i, a):
        lo = _lpi(i, a["A"])
        return is_subset(lo, generate(i.g, lo)) and is_subset(
            generate(i.g, lo), generate(i.g, a["A"])
        )

    # --- anti-lower upper approximation
    @claim("aup.plus-piInclusion", 1, G, ["A"])
    def _(i, a):
        A = a["A"]
        return (
            is_subset(_lpi(i, A), A)
            and is_subset(A, _upi(i, A))
            and is_subset(_upi(i, A), _ua(i, A))
        )

    @claim("aup.uapIn", 1, G, ["A"])
    def _(i, a):
        ua = _ua(i, a["A"])
        return is_subset(ua, _ua(i, ua))

    @claim("aup.luaIn", 1, G, ["A"])
    def _(i, a):
        lo = _lpi(i, a["A"])
        return is_subset(lo, _ua(i, lo))

    @claim("aup.ulaId", 1, G, ["A"])
    def _(i, a):
        ua = _ua(i, a["A"])
        return _lpi(i, ua) == ua

    @claim("aup.uamo", 2, G, ["A", "B"])
    def _(i, a):
        return not is_subset(a["A"], a["B"]) or is_subset(
            _ua(i, a["A"]), _ua(i, a["B"])
        )

    @claim("aup.uaadd", 2, G, ["A", "B"])
    def _(i, a):
        return is_subset(
            _ua(i, a["A"]) | _ua(i, a["B"]), _ua(i, a["A"] | a["B"])
        )

    @claim("aup.abottom", 1, G)
    def _(i, a):
        return _lpi(i, 0) == 0 and is_subset(0, _ua(i, 0))

    @claim("aup.atop", 1, G)
    def _(i, a):
        return _ua(i, i.g.full_mask) == i.g.full_mask

    # --- construction and the pair algebra
    checked("grpd.bs-sound", 1, S, _construction_sound, updir=True)
    checked("grpd.bs-roundtrip", 1, S, _relation_roundtrip, updir=True)
    checked("acp.A1", 1, G, _acp_checker("A1"))
    checked("acp.A2", 2, G, _acp_checker("A2"))
    checked("acp.A3", 1, G, _acp_checker("A3"))
    checked("acp.A4", 1, G, _acp_checker("A4"))
    checked("acp.A5", 1, G, _acp_checker("A5"))
    checked("acp.A6", 2, G, _acp_checker("A6"))
    checked("acp.well-defined", 1, G, _acp_checker("well-defined"))

    return tuple(out)


CLAIMS: tuple[Claim, ...] = _claims()
_BY_ID = {c.id: c for c in CLAIMS}


def claim_ids(tier: str = "all") -> tuple[str, ...]:
    return tuple(c.id for c in CLAIMS if tier == "all" or c.tier == int(tier))


# ---------------------------------------------------------------------------
# Running claims


def _hash_str(s: str) -> int:
    h = 0
    for ch in s:
        h = mix(h, ord(ch))
    return h


def _domains(claim: Claim, inst: AuditInstance) -> list[list[int]]:
    subset_pool: list[int]
    if claim.domain == "cud":
        subset_pool = list(cud_family(inst.sys).members)
    else:
        n = inst.sys.n if claim.needs == "sys" else inst.g.n
        subset_pool = list(subsets_of((1 << n) - 1))
    element_pool = list(range(inst.sys.n if claim.needs == "sys" else inst.g.n))
    return [
        subset_pool if v[0].isupper() else element_pool for v in claim.vars
    ]


def _assignments(
    claim: Claim, inst: AuditInstance, limit: int, seed: int
) -> Iterator[dict[str, int]]:
    domains = _domains(claim, inst)
    total = 1
    for d in domains:
        total *= len(d)
    if total <= limit:
        def rec(k: int, acc: dict) -> Iterator[dict[str, int]]:
            if k == len(domains):
                yield dict(acc)
                return
            for v in domains[k]:
                acc[claim.vars[k]] = v
                yield from rec(k + 1, acc)

        yield from rec(0, {})
        return
    base = mix(seed, _hash_str(claim.id), _hash_str(inst.name))
    for t in range(limit):
        yield {
            claim.vars[k]: domains[k][mix(base, t, k) % len(domains[k])]
            for k in range(len(domains))
        }


def _witness_labels(
    claim: Claim, inst: AuditInstance, asg: dict[str, int]
) -> dict:
    holder = inst.g if claim.needs == "grpd" else inst.sys
    out: dict = {}
    for v in claim.vars:
        if v[0].isupper():
            out[v] = list(holder.set_labels(asg[v]))
        else:
            out[v] = holder.labels[asg[v]]
    return out


def check_claim(
    claim: Claim,
    inst: AuditInstance,
    limit: int = DEFAULT_ASSIGNMENT_LIMIT,
    seed: int = 0,
) -> ClaimResult:
    if claim.needs == "grpd" and inst.g is None:
        return ClaimResult(claim.id, claim.tier, inst.name, "skipped",
                           {"reason": "no groupoid available"})
    if claim.requires_updirected and not is_up_directed(inst.sys):
        return ClaimResult(claim.id, claim.tier, inst.name, "skipped",
                           {"reason": "system is not up-directed"})
    if claim.checker is not None:
        holds, witness = claim.checker(inst)
        return ClaimResult(
            claim.id, claim.tier, inst.name, "pass" if holds else "fail", witness
        )
    for asg in _assignments(claim, inst, limit, seed):
        if not claim.predicate(inst, asg):
            return ClaimResult(
                claim.id, claim.tier, inst.name, "fail",
                _witness_labels(claim, inst, asg),
            )
    return ClaimResult(claim.id, claim.tier, inst.name, "pass")


def replay_witness(
    claim_id: str, inst: AuditInstance, witness: dict
) -> bool:
    """Re-check a reported witness; True means it still violates the claim."""
    claim = _BY_ID.get(claim_id)
    if claim is None:
        raise LawError(f"unknown claim id {claim_id!r}")
    if claim.checker is not None:
        holds, again = claim.checker(inst)
        return not holds and again == witness
    holder = inst.g if claim.needs == "grpd" else inst.sys
    asg = {}
    for v in claim.vars:
        if v[0].isupper():
            asg[v] = holder.mask(witness[v])
        else:
            asg[v] = holder.id(witness[v])
    return not claim.predicate(inst, asg)


def audit_claims(
    sys: RelationalSystem | None = None,
    g: Groupoid | None = None,
    tier: str = "all",
    random_instances: int = 4,
    seed: int = 0,
    limit: int = DEFAULT_ASSIGNMENT_LIMIT,
) -> DeviationReport:
    """Run the registry over the given instance plus deterministic random ones.

    With no inputs the bundled five-element fixture and its companion
    groupoid are used.
    """
    if tier not in ("1", "2", "all"):
        raise LawError(f"unknown tier {tier!r}")
    if sys is None:
        from .fixtures import section6_groupoid, section6_system

        sys = section6_system()
        if g is None:
            g = section6_groupoid()
    if g is None and is_up_directed(sys):
        g = build_updir_groupoid(sys, ChoiceStrategy.min_index())

    instances = [AuditInstance("given", sys, g)]
    for k in range(random_instances):
        n = 3 + mix(seed, 101, k) % 4
        rs = random_updirected_system(mix(seed, 55, k), n)
        rg = build_updir_groupoid(rs, ChoiceStrategy.seeded(mix(seed, 77, k)))
        instances.append(AuditInstance(f"random-{k}", rs, rg))

    results = []
    for claim in CLAIMS:
        if tier != "all" and claim.tier != int(tier):
            continue
        for inst in instances:
            results.append(check_claim(claim, inst, limit, seed))
    return DeviationReport(tuple(results))
