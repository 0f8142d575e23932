"""The answer object: K*_G(G^Ad) = R(G) (x) Lambda[b-classes].

K-classes carry an R(G) coefficient for every subset of the degree-1
basis classes b[y_i], b[t_j]; the basis classes square to zero and
anticommute, the R(G)-action is multiplication on coefficients, and the
forgetful map reduces every coefficient by the augmentation.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import exterior
from .exprparse import ParseError, parse_expression
from .groups import GroupModel
from .rings import (
    RingElement,
    RingMismatch,
    augmentation,
    indecomposable_coordinates,
    partial,
)


#: Invariants this module promises; each must be registered in `verify`.
INVARIANT_CHECKS = (
    "k-graded-commutativity",
    "k-squares-vanish",
    "beta-leibniz",
    "forgetful-beta-coordinates",
    "forgetful-ring-map",
    "primitive-basis-identity",
    "structure-isomorphism-unimodular",
)


class GroupMismatch(ValueError):
    """Operands belong to different group models."""


class DuplicateGenerator(ValueError):
    """A product of degree-1 classes repeats a generator and would vanish."""


class KClass(exterior.ExteriorPolynomial):
    _mismatch_error = GroupMismatch

    @classmethod
    def _label(cls, name: str) -> str:
        return f"b[{name}]"


def k_zero(g: GroupModel) -> KClass:
    return KClass(g, {})


def k_scalar(g: GroupModel, value) -> KClass:
    if isinstance(value, int):
        value = g.ring.const(value)
    return KClass(g, {0: value})


def k_generator(g: GroupModel, name: str) -> KClass:
    """The degree-1 basis class b[name]."""
    slot = g.ring.slot(name)
    return KClass(g, {1 << slot: g.ring.one()})


def k_mul(a: KClass, b: KClass) -> KClass:
    return a * b


def beta_ad(g: GroupModel, rho: RingElement) -> KClass:
    """Degree-1 class of a representation class: the sum of its formal
    partial derivatives against the basis classes."""
    if rho.ring.ring_id != g.ring.ring_id:
        raise RingMismatch(
            f"element lives in {rho.ring.ring_id}, not {g.ring.ring_id}"
        )
    comps = {}
    for i, name in enumerate(g.ring.names):
        comps[1 << i] = partial(rho, name)
    return KClass(g, comps)


@dataclass(frozen=True)
class ExteriorClass:
    """Element of Lambda[P] with integer coefficients (a K*(G) class)."""

    group: GroupModel
    components: tuple[tuple[int, int], ...]  # (mask, coefficient), sorted

    @classmethod
    def make(cls, group: GroupModel, comps: dict) -> "ExteriorClass":
        clean = tuple(
            (m, c)
            for m, c in sorted(comps.items(), key=lambda mc: (exterior.degree(mc[0]), exterior.members(mc[0])))
            if c
        )
        return cls(group, clean)

    def coefficient(self, mask: int) -> int:
        for m, c in self.components:
            if m == mask:
                return c
        return 0

    def degree_one_vector(self) -> tuple[int, ...]:
        return tuple(self.coefficient(1 << i) for i in range(self.group.rank))

    def is_zero(self) -> bool:
        return not self.components

    def __mul__(self, other: "ExteriorClass") -> "ExteriorClass":
        if self.group != other.group:
            raise GroupMismatch("operands belong to different groups")
        acc: dict = {}
        for s, a in self.components:
            for t, b in other.components:
                if s & t:
                    continue
                acc[s | t] = acc.get(s | t, 0) + exterior.shuffle_sign(s, t) * a * b
        return ExteriorClass.make(self.group, acc)

    def to_text(self) -> str:
        if not self.components:
            return "0"
        names = self.group.ring.names
        pieces = []
        for mask, coeff in self.components:
            label = "*".join(f"b[{names[i]}]" for i in exterior.members(mask))
            if not label:
                pieces.append(str(coeff))
            elif coeff == 1:
                pieces.append(label)
            elif coeff == -1:
                pieces.append(f"-{label}")
            else:
                pieces.append(f"{coeff}*{label}")
        return " + ".join(pieces)

    __str__ = to_text


def forgetful(a: KClass) -> ExteriorClass:
    """Reduce every coefficient by the augmentation: the image in K*(G)."""
    return ExteriorClass.make(
        a.group, {m: augmentation(c) for m, c in a.components.items()}
    )


def structure_isomorphism(g: GroupModel, sigma: RingElement, reps) -> KClass:
    """sigma times the product of the degree-1 classes of the listed
    generators of Q = {fundamental lifts, circle coordinates}."""
    names = [r if isinstance(r, str) else r.name for r in reps]
    if len(set(names)) != len(names):
        raise DuplicateGenerator(f"repeated generator in {names}; the product vanishes")
    acc = k_scalar(g, sigma)
    for name in names:
        acc = acc * beta_ad(g, g.representation_class(name))
    return acc


def poincare_ranks(g: GroupModel) -> tuple[int, int]:
    """Ranks of K^0 and K^1 as free R(G)-modules."""
    if g.rank == 0:
        return (1, 0)
    half = 1 << (g.rank - 1)
    return (half, half)


def presentation(g: GroupModel) -> dict:
    """Printable summary of the ring presentation."""
    names = [f"b[{gen.name}]" for gen in g.generators]
    ring_gens = []
    for gen in g.generators:
        ring_gens.append(gen.name if gen.kind == "polynomial" else f"{gen.name}^±1")
    k0, k1 = poincare_ranks(g)
    even = [m for k in range(0, g.rank + 1, 2) for m in exterior.subsets(g.rank, k)]
    odd = [m for k in range(1, g.rank + 1, 2) for m in exterior.subsets(g.rank, k)]

    def basis_text(masks):
        out = []
        for m in masks:
            if m == 0:
                out.append("1")
            else:
                out.append("*".join(f"b[{g.generators[i].name}]" for i in exterior.members(m)))
        return out

    return {
        "group": str(g.descriptor),
        "ring": "Z[" + ", ".join(ring_gens) + "]" if ring_gens else "Z",
        "generators": names,
        "relations": ["b^2=0", "anticommute"],
        "ranks": {"K0": k0, "K1": k1},
        "k0_basis": basis_text(even),
        "k1_basis": basis_text(odd),
    }


def parse_kclass(text: str, g: GroupModel) -> KClass:
    """Parse the `(2*y1+4)*b[y1]` grammar over a group model."""
    names = set(g.ring.names)

    def resolve(token, pos):
        if token.startswith("b[") and token.endswith("]"):
            inner = token[2:-1]
            if inner in names:
                return k_generator(g, inner)
            raise ParseError(f"unknown basis class {token!r}", pos)
        if token in names:
            return k_scalar(g, g.ring.gen(token))
        raise ParseError(f"unknown name {token!r}", pos)

    value = parse_expression(text, resolve, lambda c: k_scalar(g, c))
    if not isinstance(value, KClass):
        raise ParseError("expression is not a K-class", 0)
    return value
