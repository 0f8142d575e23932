import random
from itertools import combinations

import pytest

from kconj import exterior, ktheory
from kconj.groups import build_group, parse_descriptor
from kconj.ktheory import (
    DuplicateGenerator,
    GroupMismatch,
    KClass,
    beta_ad,
    forgetful,
    k_generator,
    k_mul,
    k_scalar,
    parse_kclass,
    poincare_ranks,
    presentation,
    structure_isomorphism,
)
from kconj.rings import RingMismatch, augmentation, indecomposable_coordinates
from kconj.verify import random_element


def G(text):
    return build_group(parse_descriptor(text))


def derivative_oracle(g, a, name):
    """Derivative through dual-number arithmetic: pairs (value, derivative)
    multiplied with the product rule only, inverses defined by solving
    (u, du) * (v, dv) = (1, 0).  Independent of the formal power rule."""
    ring = g.ring
    one, zero = ring.one(), ring.zero()

    def dmul(p, q):
        return (p[0] * q[0], p[0] * q[1] + p[1] * q[0])

    def dpow(p, e):
        if e < 0:
            u, du = p
            uinv = u ** -1
            p = (uinv, -(uinv * uinv) * du)
            e = -e
        acc = (one, zero)
        for _ in range(e):
            acc = dmul(acc, p)
        return acc

    total = zero
    for exps, coeff in a.terms.items():
        acc = (ring.const(coeff), zero)
        for gname, e in zip(ring.names, exps):
            if e:
                base = (ring.gen(gname), one if gname == name else zero)
                acc = dmul(acc, dpow(base, e))
        total = total + acc[1]
    return total


def test_basis_classes_square_to_zero():
    g = G("SU(2) x U(1)")
    for gen in g.generators:
        b = k_generator(g, gen.name)
        assert k_mul(b, b).is_zero()


def test_basis_classes_anticommute():
    g = G("SU(2) x U(1)")
    b1, b2 = k_generator(g, "y1"), k_generator(g, "t1")
    assert k_mul(b1, b2) == -k_mul(b2, b1)


def test_module_action():
    g = G("SU(2)")
    y = g.ring.gen("y1")
    assert k_scalar(g, y) * k_generator(g, "y1") == KClass(g, {1: y})


def test_group_mismatch():
    a = k_generator(G("SU(2)"), "y1")
    b = k_generator(G("Sp(1)"), "y1")
    with pytest.raises(GroupMismatch):
        k_mul(a, b)


def test_beta_ad_adjoint():
    g = G("SU(2)")
    y = g.ring.gen("y1")
    rho = y ** 2 + 4 * y + 3
    cls = beta_ad(g, rho)
    assert cls == KClass(g, {1: derivative_oracle(g, rho, "y1")})
    assert cls.coefficient(1) == 2 * y + 4


def test_beta_ad_laurent():
    g = G("U(1)")
    t = g.ring.gen("t1")
    cls = beta_ad(g, t ** -1)
    assert cls.coefficient(1) == derivative_oracle(g, t ** -1, "t1")
    assert cls.coefficient(1) == -(t ** -2)


def test_beta_ad_constant():
    g = G("SU(2)")
    assert beta_ad(g, g.ring.const(7)).is_zero()


def test_beta_ad_matches_derivative_oracle_random():
    g = G("U(2)")
    rng = random.Random(41)
    for _ in range(40):
        a = random_element(rng, g.ring, max_terms=3, max_exp=2)
        cls = beta_ad(g, a)
        for i, name in enumerate(g.ring.names):
            assert cls.coefficient(1 << i) == derivative_oracle(g, a, name)


def test_beta_ad_rejects_doubled_ring():
    g = G("SU(2)")
    with pytest.raises(RingMismatch):
        beta_ad(g, g.doubled_ring.gen("y1"))


def test_forgetful_kills_augmentation_ideal():
    g = G("SU(2)")
    y = g.ring.gen("y1")
    assert forgetful(KClass(g, {1: y})).is_zero()


def test_forgetful_adjoint():
    g = G("SU(2)")
    y = g.ring.gen("y1")
    img = forgetful(KClass(g, {1: 2 * y + 4}))
    assert img.coefficient(1) == 4
    # equals the indecomposable coordinates of the adjoint class
    assert img.degree_one_vector() == indecomposable_coordinates(y ** 2 + 4 * y + 3).coords


def test_forgetful_laurent_generator():
    g = G("U(1)")
    img = forgetful(KClass(g, {1: g.ring.gen("t1")}))
    assert img.coefficient(1) == 1


def test_forgetful_beta_equals_coordinates_random():
    rng = random.Random(42)
    for name in ("SU(2)", "U(2)", "Sp(2)", "T^2"):
        g = G(name)
        for _ in range(50):
            a = random_element(rng, g.ring)
            vec = forgetful(beta_ad(g, a)).degree_one_vector()
            assert vec == indecomposable_coordinates(a).coords


def test_forgetful_is_ring_map():
    g = G("SU(2) x U(1)")
    rng = random.Random(43)
    for _ in range(40):
        comps_a = {m: random_element(rng, g.ring, max_terms=2, max_exp=1)
                   for m in range(4) if rng.random() < 0.8}
        comps_b = {m: random_element(rng, g.ring, max_terms=2, max_exp=1)
                   for m in range(4) if rng.random() < 0.8}
        a, b = KClass(g, comps_a), KClass(g, comps_b)
        assert forgetful(a * b) == forgetful(a) * forgetful(b)


def test_structure_isomorphism_examples():
    g = G("SU(2)")
    cls = structure_isomorphism(g, g.ring.one(), ["y1"])
    assert cls == k_generator(g, "y1")

    gu = G("U(1)")
    assert structure_isomorphism(gu, gu.ring.one(), ["t1"]) == k_generator(gu, "t1")

    g2 = G("SU(2) x U(1)")
    y = g2.ring.gen("y1")
    cls = structure_isomorphism(g2, y, ["y1", "t1"])
    assert cls == KClass(g2, {3: y})


def test_structure_isomorphism_duplicate_rejected():
    g = G("SU(2) x U(1)")
    with pytest.raises(DuplicateGenerator):
        structure_isomorphism(g, g.ring.one(), ["y1", "y1"])


def test_structure_isomorphism_hits_basis_with_unit_coefficients():
    g = G("SU(2) x U(2)")
    names = g.ring.names
    for k in range(g.rank + 1):
        for combo in combinations(range(g.rank), k):
            mask = sum(1 << i for i in combo)
            cls = structure_isomorphism(g, g.ring.one(), [names[i] for i in combo])
            assert set(cls.components) == ({mask} if k else {0})
            assert cls.coefficient(mask) == g.ring.one()


def test_poincare_ranks():
    # oracle: count even/odd subsets explicitly
    for name in ("SU(2)", "SU(3)", "T^3", "trivial"):
        g = G(name)
        even = sum(1 for k in range(0, g.rank + 1, 2) for _ in combinations(range(g.rank), k))
        odd = sum(1 for k in range(1, g.rank + 1, 2) for _ in combinations(range(g.rank), k))
        if g.rank == 0:
            assert poincare_ranks(g) == (1, 0)
        else:
            assert poincare_ranks(g) == (even, odd) == (2 ** (g.rank - 1),) * 2


def test_graded_commutativity_random():
    g = G("SU(3) x U(1)")
    rng = random.Random(44)
    masks_by_degree = {
        k: exterior.subsets(g.rank, k) for k in range(g.rank + 1)
    }
    for _ in range(60):
        da, db = rng.randint(0, g.rank), rng.randint(0, g.rank)
        a = KClass(g, {m: random_element(rng, g.ring, max_terms=2, max_exp=1)
                       for m in masks_by_degree[da] if rng.random() < 0.8})
        b = KClass(g, {m: random_element(rng, g.ring, max_terms=2, max_exp=1)
                       for m in masks_by_degree[db] if rng.random() < 0.8})
        lhs, rhs = a * b, b * a
        if (da * db) % 2:
            rhs = -rhs
        assert lhs == rhs


def test_beta_leibniz_random():
    g = G("U(2)")
    rng = random.Random(45)
    for _ in range(60):
        a = random_element(rng, g.ring)
        b = random_element(rng, g.ring)
        assert beta_ad(g, a * b) == a * beta_ad(g, b) + b * beta_ad(g, a)


def test_presentation_summary():
    pres = presentation(G("SU(2)"))
    assert pres["ring"] == "Z[y1]"
    assert pres["generators"] == ["b[y1]"]
    assert pres["relations"] == ["b^2=0", "anticommute"]
    assert pres["ranks"] == {"K0": 1, "K1": 1}
    pres3 = presentation(G("SU(2) x U(1)"))
    assert pres3["ranks"] == {"K0": 2, "K1": 2}
    assert pres3["k1_basis"] == ["b[y1]", "b[t1]"]


def test_kclass_print_parse_roundtrip():
    g = G("SU(2) x U(1)")
    rng = random.Random(46)
    for _ in range(50):
        comps = {m: random_element(rng, g.ring, max_terms=3, max_exp=2)
                 for m in range(4) if rng.random() < 0.7}
        cls = KClass(g, comps)
        assert parse_kclass(cls.to_text(), g) == cls


def test_parity():
    g = G("SU(2) x U(1)")
    assert k_generator(g, "y1").parity() == 1
    assert k_scalar(g, 3).parity() == 0
    mixed = k_scalar(g, 1) + k_generator(g, "y1")
    assert mixed.parity() is None


def test_filtration_readout():
    g = G("SU(2) x U(1)")
    y = g.ring.gen("y1")
    cls = k_scalar(g, y) + KClass(g, {1: g.ring.one(), 3: y})
    assert cls.filtration(0) == k_scalar(g, y)
    assert cls.filtration(-1) == k_scalar(g, y) + KClass(g, {1: g.ring.one()})
    assert cls.filtration(-g.rank) == cls
    assert cls.filtration(1).is_zero()
