import pytest

from conftest import rand_updirected, sample_masks

from dirough.acp import (
    AcpElement,
    acp_carrier,
    acp_coprod,
    acp_leq,
    acp_neg,
    acp_op,
    audit_acp_laws,
    bottom,
    top,
    validate_element,
)
from dirough.errors import StructureError
from dirough.fixtures import section6_groupoid
from dirough.grpd import ChoiceStrategy, Groupoid, build_updir_groupoid
from dirough.piappr import pg_tuple


@pytest.fixture(scope="module")
def G():
    return section6_groupoid()


def rand_groupoid(seed, n):
    return build_updir_groupoid(rand_updirected(seed, n), ChoiceStrategy.seeded(seed))


def elem(g, lo, hi):
    return AcpElement(g.mask(lo), g.mask(hi))


class TestCarrier:
    def test_formal_contains_example(self, G):
        assert elem(G, ["c"], ["a", "c"]) in acp_carrier(G)

    def test_formal_size(self, G):
        assert len(acp_carrier(G)) == 46

    def test_bounds_in_both_modes(self, G):
        for mode in ("formal", "realized"):
            car = acp_carrier(G, mode)
            assert bottom(G) in car and top(G) in car

    def test_realized_inside_formal(self, G):
        formal = set(acp_carrier(G))
        for x in acp_carrier(G, "realized"):
            assert x in formal

    def test_realized_inside_formal_random(self):
        for seed in range(10):
            g = rand_groupoid(seed, 5)
            formal = set(acp_carrier(g))
            realized = acp_carrier(g, "realized")
            assert set(realized) <= formal

    def test_realized_are_approximation_pairs(self, G):
        reached = set()
        for A in range(1 << G.n):
            reached.add(pg_tuple(G, A).acpg())
        assert {(x.first, x.second) for x in acp_carrier(G, "realized")} == reached

    def test_unknown_mode(self, G):
        with pytest.raises(StructureError):
            acp_carrier(G, "other")


class TestValidation:
    def test_open_component_rejected(self, G):
        with pytest.raises(StructureError):
            validate_element(G, elem(G, ["b"], ["b", "f"]))

    def test_unordered_pair_rejected(self, G):
        with pytest.raises(StructureError):
            validate_element(G, elem(G, ["c", "f"], ["c"]))

    def test_operations_validate_operands(self, G):
        bad = elem(G, ["b"], ["b", "f"])
        with pytest.raises(StructureError):
            acp_op(G, bad, bottom(G), "join")
        with pytest.raises(StructureError):
            acp_neg(G, bad)
        with pytest.raises(StructureError):
            acp_coprod(G, bad)


class TestOperations:
    def test_join_example(self, G):
        got = acp_op(G, elem(G, ["c"], ["c", "f"]), elem(G, ["f"], ["b", "f"]), "join")
        assert got == elem(G, ["c", "f"], ["b", "c", "f"])

    def test_meet_idempotent(self, G):
        for x in acp_carrier(G)[:12]:
            assert acp_op(G, x, x, "meet") == x

    def test_bottom_neutral_for_join(self, G):
        for x in acp_carrier(G)[:12]:
            assert acp_op(G, bottom(G), x, "join") == x

    def test_top_neutral_for_meet(self, G):
        for x in acp_carrier(G)[:12]:
            assert acp_op(G, top(G), x, "meet") == x

    def test_neg_example(self, G):
        # {b,e,f} is not closed (f.e = a), so the flat of {a,c} stops at {b,f}
        got = acp_neg(G, elem(G, ["c"], ["a", "c"]))
        assert got == elem(G, ["b", "f"], ["b", "f"])

    def test_neg_swaps_bounds(self, G):
        assert acp_neg(G, top(G)) == bottom(G)
        assert acp_neg(G, bottom(G)) == top(G)

    def test_coprod_identity(self, G):
        x = elem(G, ["c"], ["a", "c"])
        assert acp_coprod(G, x) == x
        assert acp_coprod(G, bottom(G)) == bottom(G)

    def test_coprod_inflationary(self, G):
        for x in acp_carrier(G):
            assert acp_leq(x, acp_coprod(G, x))

    def test_order(self, G):
        x, y = elem(G, ["c"], ["c", "f"]), elem(G, ["c", "f"], ["b", "c", "f"])
        assert acp_leq(x, y) and not acp_leq(y, x)
        for z in acp_carrier(G)[:12]:
            assert acp_leq(bottom(G), z) and acp_leq(z, top(G))

    def test_order_antisymmetric(self, G):
        car = acp_carrier(G)
        for x in car[:10]:
            for y in car[:10]:
                if acp_leq(x, y) and acp_leq(y, x):
                    assert x == y

    def test_results_stay_valid(self):
        for seed in range(8):
            g = rand_groupoid(seed, 5)
            car = acp_carrier(g)
            for x in car[:8]:
                for y in car[:8]:
                    validate_element(g, acp_op(g, x, y, "join"))
                    validate_element(g, acp_op(g, x, y, "meet"))
                validate_element(g, acp_neg(g, x))
                validate_element(g, acp_coprod(g, x))


class TestAudit:
    def test_fixture_hard_laws(self, G):
        rep = audit_acp_laws(G)
        byname = {v.law: v for v in rep.verdicts}
        for law in ("A1", "A3", "A4", "A5", "well-defined"):
            assert byname[law].holds and byname[law].tier == 1

    def test_fixture_a6_witness(self, G):
        rep = audit_acp_laws(G)
        a6 = next(v for v in rep.verdicts if v.law == "A6")
        assert not a6.holds and a6.tier == 2
        assert a6.witness == {"x": {"first": [], "second": ["c"]}}

    def test_failing_always_carries_witness(self, G):
        for v in audit_acp_laws(G).verdicts:
            assert v.holds or v.witness is not None

    def test_one_element_groupoid(self):
        g = Groupoid(("s",), ((0,),))
        rep = audit_acp_laws(g)
        assert all(v.holds for v in rep.verdicts)

    def test_as_dict_shape(self, G):
        d = audit_acp_laws(G).as_dict()
        assert d["mode"] == "formal"
        assert {row["law"] for row in d["laws"]} >= {"A1", "A2", "A3", "A4", "A5", "A6"}

    def test_deterministic(self, G):
        assert audit_acp_laws(G, seed=5) == audit_acp_laws(G, seed=5)

    def test_hard_laws_on_random_groupoids(self):
        for seed in range(6):
            g = rand_groupoid(seed, 5)
            rep = audit_acp_laws(g, pair_limit=256)
            for v in rep.verdicts:
                if v.tier == 1:
                    assert v.holds, (v.law, v.witness)
