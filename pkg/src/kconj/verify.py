"""Registry of machine-checkable invariants behind the `verify` command.

Every algebraic law the other modules promise is registered here by name
and runs against a chosen group; tests cross-check the registry against
the per-module declarations so a new invariant cannot be added without
also being wired into `verify`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import characters, complexes, differentials, groups, intlinalg, ktheory, rings
from .complexes import ExponentWindow
from .groups import GroupModel
from .rings import LAURENT, POLYNOMIAL, RingElement


@dataclass
class CheckContext:
    group: GroupModel
    rng: random.Random
    window: int = 3
    padding: int = 1
    samples: int = 25


@dataclass
class CheckResult:
    name: str
    module: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    group: str
    checks: list[CheckResult] = field(default_factory=list)
    window_reports: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "ok": self.ok,
            "checks": [
                {"name": c.name, "module": c.module, "ok": c.ok, "detail": c.detail}
                for c in self.checks
            ],
            "windows": {
                label: [rep.to_json() for rep in reps]
                for label, reps in self.window_reports.items()
            },
        }


def random_element(rng, ring, max_terms=4, max_exp=2, coeff_bound=9) -> RingElement:
    terms: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(
            rng.randint(0, max_exp) if kind == POLYNOMIAL else rng.randint(-max_exp, max_exp)
            for kind in ring.kinds
        )
        c = rng.randint(-coeff_bound, coeff_bound)
        if c:
            terms[exps] = terms.get(exps, 0) + c
    return RingElement(ring, {e: c for e, c in terms.items() if c})


def _fail(name, module, detail):
    return CheckResult(name, module, False, detail)


def _ok(name, module, detail=""):
    return CheckResult(name, module, True, detail)


# -- group_model -------------------------------------------------------------


def check_rank_additivity(ctx):
    name, module = "group-rank-additivity", "groups"
    samples = [
        groups.GroupDescriptor((groups.Factor("SU", 2),)),
        groups.GroupDescriptor((groups.Factor("Sp", 2),)),
        groups.GroupDescriptor((groups.Factor("U", 3),)),
        groups.GroupDescriptor((), 2),
    ]
    for a in samples:
        for b in samples:
            combined = groups.GroupDescriptor(
                a.factors + b.factors, a.torus_rank + b.torus_rank
            )
            ra = groups.build_group(a).rank
            rb = groups.build_group(b).rank
            if groups.build_group(combined).rank != ra + rb:
                return _fail(name, module, f"rank not additive for {combined}")
    return _ok(name, module)


def check_generator_counts(ctx):
    name, module = "group-generator-counts", "groups"
    for n in range(1, 7):
        cases = []
        if n >= 2:
            cases.append((groups.Factor("SU", n), n - 1, 0))
        cases.append((groups.Factor("Sp", n), n, 0))
        cases.append((groups.Factor("U", n), n - 1, 1))
        for factor, n_poly, n_laurent in cases:
            g = groups.build_group(groups.GroupDescriptor((factor,)))
            poly = sum(1 for gen in g.generators if gen.kind == POLYNOMIAL)
            laur = sum(1 for gen in g.generators if gen.kind == LAURENT)
            names = [gen.name for gen in g.generators]
            if poly != n_poly or laur != n_laurent or len(set(names)) != len(names):
                return _fail(name, module, f"inventory wrong for {factor}")
        g = groups.build_group(groups.GroupDescriptor((), n))
        if sum(1 for gen in g.generators if gen.kind == LAURENT) != n:
            return _fail(name, module, f"torus rank {n} inventory wrong")
    return _ok(name, module)


# -- rep_ring ----------------------------------------------------------------


def check_augmentation_homomorphism(ctx):
    name, module = "ring-augmentation-homomorphism", "rings"
    ring = ctx.group.ring
    for _ in range(ctx.samples):
        a = random_element(ctx.rng, ring)
        b = random_element(ctx.rng, ring)
        if rings.augmentation(a * b) != rings.augmentation(a) * rings.augmentation(b):
            return _fail(name, module, f"multiplicativity fails on {a}, {b}")
        if rings.augmentation(a + b) != rings.augmentation(a) + rings.augmentation(b):
            return _fail(name, module, f"additivity fails on {a}, {b}")
    return _ok(name, module)


def check_indecomposable_derivation(ctx):
    name, module = "ring-indecomposable-derivation", "rings"
    ring = ctx.group.ring
    for _ in range(ctx.samples):
        a = random_element(ctx.rng, ring)
        b = random_element(ctx.rng, ring)
        ca = rings.indecomposable_coordinates(a)
        cb = rings.indecomposable_coordinates(b)
        cab = rings.indecomposable_coordinates(a * b)
        ea, eb = rings.augmentation(a), rings.augmentation(b)
        expected = tuple(ea * y + eb * x for x, y in zip(ca.coords, cb.coords))
        if cab.coords != expected:
            return _fail(name, module, f"derivation law fails on {a}, {b}")
        csum = rings.indecomposable_coordinates(a + b)
        if csum.coords != tuple(x + y for x, y in zip(ca.coords, cb.coords)):
            return _fail(name, module, f"additivity fails on {a}, {b}")
    return _ok(name, module)


def check_print_parse_roundtrip(ctx):
    name, module = "ring-print-parse-roundtrip", "rings"
    ring = ctx.group.ring
    for _ in range(ctx.samples):
        a = random_element(ctx.rng, ring)
        if rings.parse_element(a.to_text(), ring) != a:
            return _fail(name, module, f"roundtrip fails on {a.to_text()!r}")
        if rings.element_from_json(rings.element_to_json(a), ring) != a:
            return _fail(name, module, f"json roundtrip fails on {a.to_text()!r}")
    return _ok(name, module)


def check_exponent_signs(ctx):
    name, module = "ring-exponent-signs", "rings"
    ring = ctx.group.ring
    poly_slots = [i for i, k in enumerate(ring.kinds) if k == POLYNOMIAL]
    acc = ring.one()
    for _ in range(ctx.samples):
        a = random_element(ctx.rng, ring)
        acc = acc * a + a - ring.const(2) * a
        for exps in acc.terms:
            if any(exps[i] < 0 for i in poly_slots):
                return _fail(name, module, "negative polynomial exponent appeared")
    return _ok(name, module)


# -- characters --------------------------------------------------------------


def check_character_roundtrip(ctx):
    name, module = "character-roundtrip", "characters"
    g = ctx.group
    for _ in range(max(5, ctx.samples // 2)):
        a = random_element(ctx.rng, g.ring, max_terms=3, max_exp=2)
        if characters.from_character(g, characters.to_character(g, a)) != a:
            return _fail(name, module, f"roundtrip fails on {a.to_text()!r}")
    return _ok(name, module)


def check_character_homomorphism(ctx):
    name, module = "character-ring-homomorphism", "characters"
    g = ctx.group
    for _ in range(max(5, ctx.samples // 2)):
        a = random_element(ctx.rng, g.ring, max_terms=2, max_exp=2)
        b = random_element(ctx.rng, g.ring, max_terms=2, max_exp=2)
        if characters.to_character(g, a * b) != characters.to_character(g, a) * characters.to_character(g, b):
            return _fail(name, module, f"not multiplicative on {a}, {b}")
    return _ok(name, module)


def check_character_identity_evaluation(ctx):
    name, module = "character-identity-evaluation", "characters"
    g = ctx.group
    for _ in range(ctx.samples):
        a = random_element(ctx.rng, g.ring, max_terms=3, max_exp=2)
        if characters.to_character(g, a).eval_at_identity() != rings.augmentation(a):
            return _fail(name, module, f"identity evaluation fails on {a}")
    return _ok(name, module)


def check_character_invariance(ctx):
    name, module = "character-weyl-invariance", "characters"
    g = ctx.group
    for _ in range(max(5, ctx.samples // 2)):
        a = random_element(ctx.rng, g.ring, max_terms=2, max_exp=2)
        b = random_element(ctx.rng, g.ring, max_terms=2, max_exp=2)
        ca, cb = characters.to_character(g, a), characters.to_character(g, b)
        if not characters.is_weyl_invariant(ca):
            return _fail(name, module, f"image not invariant: {a}")
        if not characters.is_weyl_invariant(ca * cb) or not characters.is_weyl_invariant(ca + cb):
            return _fail(name, module, "products/sums of invariants not invariant")
    return _ok(name, module)


# -- homological -------------------------------------------------------------


def check_koszul_d_squared(ctx):
    name, module = "koszul-d-squared", "complexes"
    rep = complexes.differential_squared_is_zero(complexes.build_koszul_resolution(ctx.group))
    if not rep.ok:
        return _fail(name, module, f"nonzero composite entries: {rep.failures[:3]}")
    return _ok(name, module)


def check_augmentation_d_squared(ctx):
    name, module = "augmentation-d-squared", "complexes"
    rep = complexes.differential_squared_is_zero(
        complexes.build_augmentation_resolution(ctx.group)
    )
    if not rep.ok:
        return _fail(name, module, f"nonzero composite entries: {rep.failures[:3]}")
    return _ok(name, module)


def _window_suite(ctx, cx):
    window = ExponentWindow.uniform(
        cx.ring, ctx.window, max(ctx.padding, complexes.differential_spread(cx))
    )
    degrees = range(0, cx.rank + 1)
    return complexes.window_homology_suite(
        cx, window, degrees, use_augmentation=True
    )


def check_koszul_window_exactness(ctx):
    name, module = "koszul-window-exactness", "complexes"
    reports = _window_suite(ctx, complexes.build_koszul_resolution(ctx.group))
    bad = [rep for rep in reports if rep.deficit != 0]
    if bad:
        return _fail(name, module, f"nonzero deficit at degrees {[r.degree for r in bad]}")
    result = _ok(name, module, f"degrees 0..{ctx.group.rank} deficit 0")
    return result, reports


def check_augmentation_window_exactness(ctx):
    name, module = "augmentation-window-exactness", "complexes"
    reports = _window_suite(ctx, complexes.build_augmentation_resolution(ctx.group))
    bad = [rep for rep in reports if rep.deficit != 0]
    if bad:
        return _fail(name, module, f"nonzero deficit at degrees {[r.degree for r in bad]}")
    return _ok(name, module, f"degrees 0..{ctx.group.rank} deficit 0"), reports


def check_window_monotonicity(ctx):
    name, module = "window-monotonicity", "complexes"
    g = ctx.group
    cx = complexes.build_koszul_resolution(g)
    if cx.ring.ngens > 6:
        return _ok(name, module, "skipped at this rank; covered by smaller groups")
    degrees = range(1, cx.rank + 1)
    for bound in (1, 2):
        window = ExponentWindow.uniform(cx.ring, bound, padding=1)
        reports = complexes.window_homology_suite(cx, window, degrees)
        if any(rep.deficit != 0 for rep in reports):
            return _fail(name, module, f"certified cycles lost at bound {bound}")
    return _ok(name, module)


def check_tensored_down_zero(ctx):
    name, module = "tensored-down-zero-differential", "complexes"
    if not complexes.tor_window_cross_check(ctx.group):
        return _fail(name, module, "tensored-down ranks disagree with the Tor table")
    return _ok(name, module)


def check_tor_binomial(ctx):
    name, module = "tor-binomial-ranks", "complexes"
    from . import exterior

    table = complexes.tor_ranks(ctx.group)
    expected = tuple(
        len(exterior.subsets(ctx.group.rank, k)) for k in range(ctx.group.rank + 1)
    )
    if table.ranks != expected:
        return _fail(name, module, f"{table.ranks} != exterior dimensions {expected}")
    if table.ranks != tuple(reversed(table.ranks)):
        return _fail(name, module, "binomial row not symmetric")
    return _ok(name, module)


def check_snf_validity(ctx):
    name, module = "snf-validity", "intlinalg"
    rng = ctx.rng
    for _ in range(max(5, ctx.samples // 2)):
        nr = rng.randint(1, 6)
        nc = rng.randint(1, 6)
        m = intlinalg.IntMatrix.from_rows(
            [[rng.randint(-50, 50) for _ in range(nc)] for _ in range(nr)]
        )
        d, u, v = intlinalg.smith_normal_form(m)
        if (u @ m) @ v != d:
            return _fail(name, module, "U m V != D")
        if abs(intlinalg.bareiss_determinant(u)) != 1 or abs(intlinalg.bareiss_determinant(v)) != 1:
            return _fail(name, module, "transform not unimodular")
        diag = d.diagonal()
        for i in range(len(diag) - 1):
            if diag[i + 1] and diag[i] and diag[i + 1] % diag[i]:
                return _fail(name, module, "divisibility chain broken")
            if diag[i] == 0 and diag[i + 1] != 0:
                return _fail(name, module, "zero before nonzero on diagonal")
    return _ok(name, module)


# -- ktheory -----------------------------------------------------------------


def _random_homogeneous(ctx, degree):
    g = ctx.group
    from . import exterior

    masks = exterior.subsets(g.rank, degree)
    comps = {}
    for m in masks:
        if ctx.rng.random() < 0.7:
            comps[m] = random_element(ctx.rng, g.ring, max_terms=2, max_exp=1)
    return ktheory.KClass(g, comps)


def check_graded_commutativity(ctx):
    name, module = "k-graded-commutativity", "ktheory"
    g = ctx.group
    if g.rank == 0:
        return _ok(name, module, "trivial group")
    for _ in range(ctx.samples):
        da = ctx.rng.randint(0, g.rank)
        db = ctx.rng.randint(0, g.rank)
        a = _random_homogeneous(ctx, da)
        b = _random_homogeneous(ctx, db)
        lhs = a * b
        rhs = b * a
        if (da * db) % 2:
            rhs = -rhs
        if lhs != rhs:
            return _fail(name, module, f"fails at degrees {da}, {db}")
    return _ok(name, module)


def check_squares_vanish(ctx):
    name, module = "k-squares-vanish", "ktheory"
    g = ctx.group
    for gen in g.generators:
        b = ktheory.k_generator(g, gen.name)
        if not (b * b).is_zero():
            return _fail(name, module, f"b[{gen.name}]^2 != 0")
    for _ in range(ctx.samples):
        if g.rank == 0:
            break
        a = _random_homogeneous(ctx, 1)
        if not (a * a).is_zero():
            return _fail(name, module, "odd class with nonzero square")
    return _ok(name, module)


def check_beta_leibniz(ctx):
    name, module = "beta-leibniz", "ktheory"
    g = ctx.group
    for _ in range(ctx.samples):
        a = random_element(ctx.rng, g.ring)
        b = random_element(ctx.rng, g.ring)
        lhs = ktheory.beta_ad(g, a * b)
        rhs = a * ktheory.beta_ad(g, b) + b * ktheory.beta_ad(g, a)
        if lhs != rhs:
            return _fail(name, module, f"Leibniz fails on {a}, {b}")
    return _ok(name, module)


def check_forgetful_beta(ctx):
    name, module = "forgetful-beta-coordinates", "ktheory"
    g = ctx.group
    for _ in range(ctx.samples):
        a = random_element(ctx.rng, g.ring)
        vec = ktheory.forgetful(ktheory.beta_ad(g, a)).degree_one_vector()
        if vec != rings.indecomposable_coordinates(a).coords:
            return _fail(name, module, f"coordinate mismatch on {a}")
    return _ok(name, module)


def check_forgetful_ring_map(ctx):
    name, module = "forgetful-ring-map", "ktheory"
    g = ctx.group
    from . import exterior

    for _ in range(max(5, ctx.samples // 2)):
        a = _random_homogeneous(ctx, ctx.rng.randint(0, g.rank)) if g.rank else ktheory.k_scalar(g, 1)
        b = _random_homogeneous(ctx, ctx.rng.randint(0, g.rank)) if g.rank else ktheory.k_scalar(g, 2)
        if ktheory.forgetful(a * b) != ktheory.forgetful(a) * ktheory.forgetful(b):
            return _fail(name, module, "forgetful is not multiplicative")
    # surjectivity: hit every exterior basis element with sigma = 1
    for k in range(g.rank + 1):
        for mask in exterior.subsets(g.rank, k):
            names = [g.ring.names[i] for i in exterior.members(mask)]
            img = ktheory.forgetful(ktheory.structure_isomorphism(g, g.ring.one(), names))
            if img.coefficient(mask) != 1 or len(img.components) != 1:
                return _fail(name, module, f"basis e_{names} not hit cleanly")
    return _ok(name, module)


def check_primitive_basis_identity(ctx):
    name, module = "primitive-basis-identity", "ktheory"
    g = ctx.group
    for i, gen in enumerate(g.generators):
        rho = g.representation_class(gen.name)
        img = ktheory.forgetful(differentials.phi(differentials.d(g, rho)))
        vec = img.degree_one_vector()
        expected = tuple(1 if j == i else 0 for j in range(g.rank))
        if vec != expected or any(m.bit_count() != 1 for m, _ in img.components):
            return _fail(name, module, f"basis image wrong for {gen.name}")
    return _ok(name, module)


def check_structure_isomorphism_unimodular(ctx):
    name, module = "structure-isomorphism-unimodular", "ktheory"
    g = ctx.group
    from . import exterior

    for k in range(g.rank + 1):
        for mask in exterior.subsets(g.rank, k):
            names = [g.ring.names[i] for i in exterior.members(mask)]
            cls = ktheory.structure_isomorphism(g, g.ring.one(), names)
            if set(cls.components) != {mask} or cls.coefficient(mask) != g.ring.one():
                return _fail(name, module, f"leading coefficient not a unit at {names}")
    return _ok(name, module)


# -- differentials -----------------------------------------------------------


def check_differential_derivation(ctx):
    name, module = "differential-derivation", "differentials"
    g = ctx.group
    if not differentials.d(g, g.ring.one()).is_zero():
        return _fail(name, module, "d(1) != 0")
    for _ in range(ctx.samples):
        a = random_element(ctx.rng, g.ring)
        b = random_element(ctx.rng, g.ring)
        if differentials.d(g, a * b) != a * differentials.d(g, b) + b * differentials.d(g, a):
            return _fail(name, module, f"Leibniz fails on {a}, {b}")
    return _ok(name, module)


def check_phi_beta_compatibility(ctx):
    name, module = "phi-beta-compatibility", "differentials"
    g = ctx.group
    for _ in range(ctx.samples):
        a = random_element(ctx.rng, g.ring)
        if differentials.phi(differentials.d(g, a)) != ktheory.beta_ad(g, a):
            return _fail(name, module, f"phi(d a) != beta_ad(a) on {a}")
    return _ok(name, module)


def check_phi_ring_isomorphism(ctx):
    name, module = "phi-ring-isomorphism", "differentials"
    g = ctx.group
    from . import exterior

    for gen in g.generators:
        form = differentials.form_generator(g, gen.name)
        img = differentials.phi(form)
        if img != ktheory.k_generator(g, gen.name):
            return _fail(name, module, f"phi wrong on d{gen.name}")
    for _ in range(max(5, ctx.samples // 2)):
        da = ctx.rng.randint(0, g.rank) if g.rank else 0
        db = ctx.rng.randint(0, g.rank) if g.rank else 0
        a = differentials.DiffForm(g, _random_homogeneous(ctx, da).components)
        b = differentials.DiffForm(g, _random_homogeneous(ctx, db).components)
        if differentials.phi(a * b) != differentials.phi(a) * differentials.phi(b):
            return _fail(name, module, "phi not multiplicative")
    return _ok(name, module)


# -- registry ----------------------------------------------------------------

REGISTRY = (
    ("group-rank-additivity", "groups", check_rank_additivity),
    ("group-generator-counts", "groups", check_generator_counts),
    ("ring-augmentation-homomorphism", "rings", check_augmentation_homomorphism),
    ("ring-indecomposable-derivation", "rings", check_indecomposable_derivation),
    ("ring-print-parse-roundtrip", "rings", check_print_parse_roundtrip),
    ("ring-exponent-signs", "rings", check_exponent_signs),
    ("character-roundtrip", "characters", check_character_roundtrip),
    ("character-ring-homomorphism", "characters", check_character_homomorphism),
    ("character-identity-evaluation", "characters", check_character_identity_evaluation),
    ("character-weyl-invariance", "characters", check_character_invariance),
    ("koszul-d-squared", "complexes", check_koszul_d_squared),
    ("augmentation-d-squared", "complexes", check_augmentation_d_squared),
    ("koszul-window-exactness", "complexes", check_koszul_window_exactness),
    ("augmentation-window-exactness", "complexes", check_augmentation_window_exactness),
    ("window-monotonicity", "complexes", check_window_monotonicity),
    ("tensored-down-zero-differential", "complexes", check_tensored_down_zero),
    ("tor-binomial-ranks", "complexes", check_tor_binomial),
    ("snf-validity", "intlinalg", check_snf_validity),
    ("k-graded-commutativity", "ktheory", check_graded_commutativity),
    ("k-squares-vanish", "ktheory", check_squares_vanish),
    ("beta-leibniz", "ktheory", check_beta_leibniz),
    ("forgetful-beta-coordinates", "ktheory", check_forgetful_beta),
    ("forgetful-ring-map", "ktheory", check_forgetful_ring_map),
    ("primitive-basis-identity", "ktheory", check_primitive_basis_identity),
    ("structure-isomorphism-unimodular", "ktheory", check_structure_isomorphism_unimodular),
    ("differential-derivation", "differentials", check_differential_derivation),
    ("phi-beta-compatibility", "differentials", check_phi_beta_compatibility),
    ("phi-ring-isomorphism", "differentials", check_phi_ring_isomorphism),
)


def registered_names() -> tuple[str, ...]:
    return tuple(name for name, _, _ in REGISTRY)


def run_verification(
    g: GroupModel,
    *,
    window: int = 3,
    padding: int = 1,
    seed: int = 0,
    samples: int = 25,
) -> VerificationReport:
    ctx = CheckContext(
        group=g,
        rng=random.Random(seed),
        window=window,
        padding=padding,
        samples=samples,
    )
    report = VerificationReport(group=str(g.descriptor))
    for name, module, fn in REGISTRY:
        outcome = fn(ctx)
        if isinstance(outcome, tuple):
            result, window_reports = outcome
            report.window_reports[name] = window_reports
        else:
            result = outcome
        report.checks.append(result)
    return report
