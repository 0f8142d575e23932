import itertools
from math import comb

import pytest

from kconj import groups
from kconj.groups import (
    Factor,
    GroupDescriptor,
    InvalidDescriptor,
    build_group,
    descriptor_to_json,
    generator_inventory,
    parse_descriptor,
)
from kconj.rings import LAURENT, POLYNOMIAL


def G(text):
    return build_group(parse_descriptor(text))


def test_su2_inventory():
    g = G("SU(2)")
    assert g.rank == 1
    (gen,) = g.generators
    assert gen.name == "y1" and gen.kind == POLYNOMIAL and gen.rep_dimension == 2


def test_u2_inventory():
    g = G("U(2)")
    assert g.rank == 2
    names = [(gen.name, gen.kind, gen.rep_dimension) for gen in g.generators]
    assert names == [("y1", POLYNOMIAL, 2), ("t1", LAURENT, 1)]


def test_torus_inventory():
    g = G("T^2")
    assert g.rank == 2
    assert all(gen.kind == LAURENT for gen in g.generators)
    assert [gen.name for gen in g.generators] == ["t1", "t2"]


def test_su3_fundamental_dimensions():
    # oracle: dim Lambda^k(C^3) counted by enumerating k-subsets
    g = G("SU(3)")
    dims = [gen.rep_dimension for gen in g.generators]
    oracle = [
        sum(1 for _ in itertools.combinations(range(3), k)) for k in (1, 2)
    ]
    assert dims == oracle == [3, 3]


def test_sp_fundamental_dimensions():
    g = G("Sp(2)")
    assert [gen.rep_dimension for gen in g.generators] == [4, 5]
    g3 = G("Sp(3)")
    assert [gen.rep_dimension for gen in g3.generators] == [6, 14, 14]


def test_trivial_group_needs_flag():
    with pytest.raises(InvalidDescriptor):
        GroupDescriptor()
    g = G("trivial")
    assert g.rank == 0 and generator_inventory(g) == ()


def test_product_inventory_concatenates():
    g = G("SU(2) x U(1)")
    assert [gen.name for gen in g.generators] == ["y1", "t1"]
    g2 = G("U(2) x T^2")
    assert [gen.name for gen in g2.generators] == ["y1", "t1", "t2", "t3"]


def test_inventory_stable():
    g = G("SU(3) x Sp(2) x U(2) x T^2")
    assert generator_inventory(g) == generator_inventory(g)
    assert generator_inventory(g) is generator_inventory(build_group(g.descriptor))


def test_rank_additive():
    pieces = ["SU(2)", "Sp(1)", "U(3)", "T^2"]
    for a, b in itertools.product(pieces, repeat=2):
        da, db = parse_descriptor(a), parse_descriptor(b)
        combined = GroupDescriptor(da.factors + db.factors, da.torus_rank + db.torus_rank)
        assert build_group(combined).rank == build_group(da).rank + build_group(db).rank


@pytest.mark.parametrize("n", range(1, 7))
def test_per_factor_counts(n):
    if n >= 2:
        g = build_group(GroupDescriptor((Factor("SU", n),)))
        assert sum(1 for x in g.generators if x.kind == POLYNOMIAL) == n - 1
        assert g.rank == n - 1
    g = build_group(GroupDescriptor((Factor("Sp", n),)))
    assert sum(1 for x in g.generators if x.kind == POLYNOMIAL) == n
    g = build_group(GroupDescriptor((Factor("U", n),)))
    poly = sum(1 for x in g.generators if x.kind == POLYNOMIAL)
    laur = sum(1 for x in g.generators if x.kind == LAURENT)
    assert (poly, laur) == (n - 1, 1)
    names = [x.name for x in g.generators]
    assert len(set(names)) == len(names)


def test_u_generator_dimensions_are_binomials():
    g = build_group(GroupDescriptor((Factor("U", 4),)))
    dims = [x.rep_dimension for x in g.generators]
    assert dims == [comb(4, 1), comb(4, 2), comb(4, 3), 1]


def test_descriptor_grammar_variants():
    assert parse_descriptor("su(3) X sp(2)*u(2) x t^2") == parse_descriptor(
        "SU(3) x Sp(2) x U(2) x T^2"
    )
    assert parse_descriptor("T").torus_rank == 1
    assert parse_descriptor("T x T^2").torus_rank == 3
    json_text = '{"factors": ["SU(3)", "Sp(2)"], "torus_rank": 1}'
    assert parse_descriptor(json_text) == parse_descriptor("SU(3) x Sp(2) x T")


def test_descriptor_json_roundtrip():
    desc = parse_descriptor("SU(3) x U(2) x T^2")
    assert groups.descriptor_from_json(descriptor_to_json(desc)) == desc


def test_descriptor_errors():
    for bad in ["SU(1)", "Sp(0)", "U(0)", "SO(3)", "", "SU(2) x x U(1)"]:
        with pytest.raises(InvalidDescriptor):
            parse_descriptor(bad)


def test_ring_model_matches_inventory():
    g = G("U(2) x T^1")
    assert g.ring.names == ("y1", "t1", "t2")
    assert g.ring.kinds == (POLYNOMIAL, LAURENT, LAURENT)
    assert g.doubled_ring.names == ("y1", "t1", "t2", "y1'", "t1'", "t2'")
