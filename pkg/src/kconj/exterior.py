"""Subset bookkeeping and signs for exterior algebras on the P-generators.

Subsets of the generator set are bitmasks; all sign conventions derive
from listing members in ascending order.  The graded-coefficient
container here is shared by K-classes and differential forms, which keep
distinct semantic tags but identical internals.
"""

from __future__ import annotations

from itertools import combinations


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def degree(mask: int) -> int:
    return mask.bit_count()


def removal_sign(mask: int, i: int) -> int:
    """Sign (-1)^(position of i among ascending members of mask)."""
    below = (mask & ((1 << i) - 1)).bit_count()
    return -1 if below & 1 else 1


def shuffle_sign(s: int, t: int) -> int:
    """Sign of merging ascending lists s and t; requires s & t == 0."""
    inversions = 0
    rest = t
    i = 0
    while rest:
        if rest & 1:
            inversions += (s >> (i + 1)).bit_count()
        rest >>= 1
        i += 1
    return -1 if inversions & 1 else 1


def subsets(rank: int, size: int) -> list[int]:
    """All size-subsets of range(rank) as bitmasks, in lexicographic order."""
    out = []
    for combo in combinations(range(rank), size):
        mask = 0
        for i in combo:
            mask |= 1 << i
        out.append(mask)
    return out


class ExteriorPolynomial:
    """Z/2-graded element: map from generator subsets to ring coefficients.

    Subclasses fix the group, the coefficient ring and the printed basis
    labels; multiplication is the shuffle-sign extension of
    e_S * e_T = sign(S,T) e_{S u T} with e_S * e_T = 0 when S and T meet.
    """

    __slots__ = ("group", "components")

    _mismatch_error: type = ValueError

    def __init__(self, group, components: dict):
        self.group = group
        self.components = {m: c for m, c in components.items() if not c.is_zero()}

    @classmethod
    def _label(cls, name: str) -> str:
        raise NotImplementedError

    def _check(self, other):
        if type(other) is not type(self):
            raise self._mismatch_error(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        if other.group != self.group:
            raise self._mismatch_error("operands belong to different groups")

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.components

    def coefficient(self, mask: int):
        return self.components.get(mask, self.group.ring.zero())

    def homogeneous_degree(self) -> int | None:
        degrees = {degree(m) for m in self.components}
        return degrees.pop() if len(degrees) == 1 else None

    def parity(self) -> int | None:
        parities = {degree(m) & 1 for m in self.components}
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def filtration(self, p: int):
        """Read-only filtration level F_p (p <= 0): the part of exterior
        degree at most -p.  F_0 is the scalar copy of the coefficient ring;
        the associated graded is fixed, a splitting is not chosen."""
        if p > 0:
            return type(self)(self.group, {})
        return type(self)(
            self.group,
            {m: c for m, c in self.components.items() if degree(m) <= -p},
        )

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.group == other.group and self.components == other.components

    def __hash__(self):
        return hash((type(self).__name__, self.group.descriptor,
                     frozenset((m, frozenset(c.terms.items()))
                               for m, c in self.components.items())))

    def __add__(self, other):
        coerced = self._coerce_scalar(other)
        if coerced is not None:
            other = coerced
        self._check(other)
        comps = dict(self.components)
        zero = self.group.ring.zero()
        for m, c in other.components.items():
            comps[m] = comps.get(m, zero) + c
        return type(self)(self.group, comps)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.group, {m: -c for m, c in self.components.items()})

    def __sub__(self, other):
        coerced = self._coerce_scalar(other)
        if coerced is not None:
            other = coerced
        self._check(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _coerce_scalar(self, other):
        """Ring elements and integers act through the empty subset."""
        from .rings import RingElement

        if isinstance(other, int):
            return type(self)(self.group, {0: self.group.ring.const(other)})
        if isinstance(other, RingElement):
            if other.ring.ring_id != self.group.ring.ring_id:
                raise self._mismatch_error(
                    f"scalar lives in {other.ring.ring_id}, not {self.group.ring.ring_id}"
                )
            return type(self)(self.group, {0: other})
        return None

    def __mul__(self, other):
        coerced = self._coerce_scalar(other)
        if coerced is not None:
            other = coerced
        self._check(other)
        acc: dict = {}
        for s, a in self.components.items():
            for t, b in other.components.items():
                if s & t:
                    continue
                term = a * b
                if term.is_zero():
                    continue
                if shuffle_sign(s, t) < 0:
                    term = -term
                u = s | t
                prev = acc.get(u)
                acc[u] = term if prev is None else prev + term
        return type(self)(self.group, acc)

    def __rmul__(self, other):
        coerced = self._coerce_scalar(other)
        if coerced is None:
            return NotImplemented
        return coerced * self

    def __pow__(self, exp: int):
        if not isinstance(exp, int):
            raise ValueError("exterior elements only take integer powers")
        if exp < 0:
            if set(self.components) <= {0}:
                return type(self)(self.group, {0: self.coefficient(0) ** exp})
            raise ValueError("negative powers only exist for scalar units")
        result = type(self)(self.group, {0: self.group.ring.one()})
        for _ in range(exp):
            result = result * self
        return result

    # -- printing ---------------------------------------------------------

    def basis_label(self, mask: int) -> str:
        names = self.group.ring.names
        return "*".join(self._label(names[i]) for i in members(mask))

    def to_text(self) -> str:
        if not self.components:
            return "0"
        pieces = []
        for mask in sorted(self.components, key=lambda m: (degree(m), members(m))):
            coeff = self.components[mask]
            label = self.basis_label(mask)
            if not label:
                body = coeff.to_text()
            elif len(coeff.terms) > 1:
                body = f"({coeff.to_text()})*{label}"
            elif coeff == self.group.ring.one():
                body = label
            else:
                body = f"{coeff.to_text()}*{label}"
            if body.startswith("-"):
                pieces.append(("-", body[1:]))
            else:
                pieces.append(("+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = to_text

    def __repr__(self):
        return f"<{type(self).__name__} {self.group.descriptor}: {self.to_text()}>"

    def to_json(self) -> list:
        from .rings import element_to_json

        names = self.group.ring.names
        out = []
        for mask in sorted(self.components, key=lambda m: (degree(m), members(m))):
            out.append(
                {
                    "basis": [self._label(names[i]) for i in members(mask)],
                    "coeff": element_to_json(self.components[mask]),
                }
            )
        return out
