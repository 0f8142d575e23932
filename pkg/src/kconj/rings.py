"""Exact sparse arithmetic in R(G) = Z[y_i] (x) Z[t_j^{±1}].

Elements are stored as maps from exponent vectors to nonzero integer
coefficients, one slot per generator of the ambient ring model.  The
doubled ring R(G) (x) R(G) is just another ring model whose generator
list is the unprimed inventory followed by a primed copy, so a single
arithmetic kernel serves both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .exprparse import ParseError, parse_expression

POLYNOMIAL = "polynomial"
LAURENT = "laurent"


#: Invariants this module promises; each must be registered in `verify`.
INVARIANT_CHECKS = (
    "ring-augmentation-homomorphism",
    "ring-indecomposable-derivation",
    "ring-print-parse-roundtrip",
    "ring-exponent-signs",
)


class RingMismatch(ValueError):
    """Operands live in different ring models."""


@dataclass(frozen=True)
class RingModel:
    """Named-generator model of R(G) or R(G) (x) R(G).

    `kinds[i]` is "polynomial" (exponents >= 0, augmentation 0) or
    "laurent" (exponents unrestricted, augmentation 1).  `base_id` is set
    only on doubled models and names the single-copy model they double.
    """

    ring_id: str
    names: tuple[str, ...]
    kinds: tuple[str, ...]
    base_id: str | None = None

    def __post_init__(self):
        if len(self.names) != len(self.kinds):
            raise ValueError("generator names and kinds must align")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be unique")

    @property
    def ngens(self) -> int:
        return len(self.names)

    def slot(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r} in {self.ring_id}") from None

    def doubled(self) -> "RingModel":
        """Model of R (x) R: unprimed generators, then a primed copy."""
        if self.base_id is not None:
            raise ValueError("ring model is already doubled")
        primed = tuple(n + "'" for n in self.names)
        return RingModel(
            ring_id=f"{self.ring_id}(x){self.ring_id}",
            names=self.names + primed,
            kinds=self.kinds + self.kinds,
            base_id=self.ring_id,
        )

    # -- element constructors ------------------------------------------

    def zero(self) -> "RingElement":
        return RingElement(self, {})

    def one(self) -> "RingElement":
        return self.const(1)

    def const(self, c: int) -> "RingElement":
        if c == 0:
            return self.zero()
        return RingElement(self, {(0,) * self.ngens: int(c)})

    def gen(self, name: str) -> "RingElement":
        exps = [0] * self.ngens
        exps[self.slot(name)] = 1
        return RingElement(self, {tuple(exps): 1})

    def monomial(self, exps, coeff: int = 1) -> "RingElement":
        return RingElement(self, {tuple(exps): int(coeff)} if coeff else {})


#: The ring of integers, as the model with no generators.
INTEGERS = RingModel("Z", (), ())


class RingElement:
    """Sparse multivariate Laurent polynomial with integer coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingModel, terms: dict):
        clean = {}
        kinds = ring.kinds
        for exps, coeff in terms.items():
            if coeff == 0:
                continue
            for e, kind in zip(exps, kinds):
                if e < 0 and kind == POLYNOMIAL:
                    raise ValueError(
                        f"negative exponent on polynomial generator in {ring.ring_id}"
                    )
            clean[exps] = coeff
        self.ring = ring
        self.terms = clean

    # -- basics ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.ring.ngens, 0)

    def _coerce(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        if isinstance(other, RingElement):
            if other.ring.ring_id != self.ring.ring_id:
                raise RingMismatch(
                    f"cannot combine elements of {self.ring.ring_id} and {other.ring.ring_id}"
                )
            return other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring.ring_id == other.ring.ring_id and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.ring_id, frozenset(self.terms.items())))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            acc = terms.get(exps, 0) + coeff
            if acc:
                terms[exps] = acc
            else:
                terms.pop(exps, None)
        return RingElement(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        acc: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                exps = tuple(x + y for x, y in zip(e1, e2))
                v = acc.get(exps, 0) + c1 * c2
                if v:
                    acc[exps] = v
                else:
                    del acc[exps]
        return RingElement(self.ring, acc)

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if not isinstance(exp, int):
            return NotImplemented
        if exp < 0:
            inv = self._unit_inverse()
            if inv is None:
                raise ValueError("negative powers only exist for unit monomials")
            return inv ** (-exp)
        result = self.ring.one()
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base_needed = exp > 1
            if base_needed:
                base = base * base
            exp >>= 1
        return result

    def _unit_inverse(self):
        """Inverse of ±(laurent monomial); None when no inverse exists."""
        if len(self.terms) != 1:
            return None
        (exps, coeff), = self.terms.items()
        if coeff not in (1, -1):
            return None
        for e, kind in zip(exps, self.ring.kinds):
            if e != 0 and kind == POLYNOMIAL:
                return None
        return RingElement(self.ring, {tuple(-e for e in exps): coeff})

    # -- printing -------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps in sorted(self.terms, reverse=True):
            coeff = self.terms[exps]
            factors = []
            for name, e in zip(self.ring.names, exps):
                if e == 0:
                    continue
                factors.append(name if e == 1 else f"{name}^{e}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_text

    def __repr__(self):
        return f"<{self.ring.ring_id}: {self.to_text()}>"


# -- the augmentation and the indecomposable quotient ----------------------


def augmentation(a: RingElement) -> int:
    """Ring homomorphism to Z with y_i -> 0 and t_j -> 1."""
    kinds = a.ring.kinds
    total = 0
    for exps, coeff in a.terms.items():
        if all(e == 0 or kind == LAURENT for e, kind in zip(exps, kinds)):
            total += coeff
    return total


@dataclass(frozen=True)
class IndecomposableVector:
    """Coordinates of a - eps(a) in IG/(IG)^2 on the basis {y_i, t_j - 1}."""

    coords: tuple[int, ...]
    constant_part: int


def indecomposable_coordinates(a: RingElement) -> IndecomposableVector:
    """Linear part of `a` after substituting t_j = 1 + s_j, exact mod (IG)^2.

    Works entirely on exponent data: a monomial y^a t^b contributes to
    degree <= 1 only when sum(a) <= 1, and (1+s)^b = 1 + b*s + O(s^2)
    holds for negative b as well.
    """
    ring = a.ring
    if ring.base_id is not None:
        raise RingMismatch("indecomposable coordinates need a single-copy ring element")
    kinds = ring.kinds
    coords = [0] * ring.ngens
    constant = 0
    for exps, coeff in a.terms.items():
        poly_slots = [i for i, e in enumerate(exps) if e != 0 and kinds[i] == POLYNOMIAL]
        poly_degree = sum(exps[i] for i in poly_slots)
        if poly_degree == 0:
            constant += coeff
            for i, e in enumerate(exps):
                if e != 0:
                    coords[i] += coeff * e
        elif poly_degree == 1:
            coords[poly_slots[0]] += coeff
    return IndecomposableVector(tuple(coords), constant)


def partial(a: RingElement, name: str) -> RingElement:
    """Formal partial derivative; Laurent rule for laurent generators."""
    i = a.ring.slot(name)
    terms = {}
    for exps, coeff in a.terms.items():
        e = exps[i]
        if e == 0:
            continue
        new = list(exps)
        new[i] = e - 1
        terms[tuple(new)] = coeff * e
    return RingElement(a.ring, terms)


# -- text and JSON interchange ---------------------------------------------


def parse_element(text: str, ring: RingModel) -> RingElement:
    """Parse the `3*y1^2*t1^-1 - 2` grammar over the given ring model."""

    def resolve(name, pos):
        if name not in ring.names:
            raise ParseError(f"unknown generator {name!r}", pos)
        return ring.gen(name)

    value = parse_expression(text, resolve, ring.const)
    if not isinstance(value, RingElement):
        raise ParseError("expression is not a ring element", 0)
    return value


def element_to_json(a: RingElement) -> list:
    return [
        {"coeff": str(a.terms[exps]), "exps": list(exps)}
        for exps in sorted(a.terms, reverse=True)
    ]


def element_from_json(data, ring: RingModel) -> RingElement:
    if isinstance(data, str):
        data = json.loads(data)
    terms = {}
    for item in data:
        exps = tuple(int(e) for e in item["exps"])
        if len(exps) != ring.ngens:
            raise ValueError("exponent vector length does not match ring model")
        coeff = int(item["coeff"])
        if coeff:
            terms[exps] = terms.get(exps, 0) + coeff
    return RingElement(ring, terms)
