"""Kähler differentials of R(G) over Z and the comparison map to K-theory.

Omega^1 is free on {dy_i, dt_j} because R(G) is a localization of a
polynomial ring over Z, so forms share the K-class container with d-tagged
basis labels; the comparison map phi renames dy_i -> b[y_i], dt_j -> b[t_j]
and is therefore structurally the identity, which makes phi(d rho) equal
to the degree-1 class of rho an exact, testable statement.
"""

from __future__ import annotations

from . import exterior
from .exprparse import ParseError, parse_expression
from .groups import GroupModel
from .ktheory import GroupMismatch, KClass
from .rings import RingElement, RingMismatch, partial


#: Invariants this module promises; each must be registered in `verify`.
INVARIANT_CHECKS = (
    "differential-derivation",
    "phi-beta-compatibility",
    "phi-ring-isomorphism",
)


class DiffForm(exterior.ExteriorPolynomial):
    _mismatch_error = GroupMismatch

    @classmethod
    def _label(cls, name: str) -> str:
        return f"d{name}"


def form_zero(g: GroupModel) -> DiffForm:
    return DiffForm(g, {})


def form_scalar(g: GroupModel, value) -> DiffForm:
    if isinstance(value, int):
        value = g.ring.const(value)
    return DiffForm(g, {0: value})


def form_generator(g: GroupModel, name: str) -> DiffForm:
    """The basis 1-form d(name)."""
    slot = g.ring.slot(name)
    return DiffForm(g, {1 << slot: g.ring.one()})


def d(g: GroupModel, a: RingElement) -> DiffForm:
    """Universal derivation: Leibniz-linear, Laurent rule on t-generators."""
    if a.ring.ring_id != g.ring.ring_id:
        raise RingMismatch(f"element lives in {a.ring.ring_id}, not {g.ring.ring_id}")
    comps = {}
    for i, name in enumerate(g.ring.names):
        comps[1 << i] = partial(a, name)
    return DiffForm(g, comps)


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    return a * b


def phi(form: DiffForm) -> KClass:
    """R(G)-algebra map sending dy_i, dt_j to the degree-1 basis classes."""
    return KClass(form.group, dict(form.components))


def parse_diffform(text: str, g: GroupModel) -> DiffForm:
    """Parse the `(2*y1+4)*dy1` grammar over a group model."""
    names = set(g.ring.names)

    def resolve(token, pos):
        if token in names:
            return form_scalar(g, g.ring.gen(token))
        if token.startswith("d") and token[1:] in names:
            return form_generator(g, token[1:])
        raise ParseError(f"unknown name {token!r}", pos)

    value = parse_expression(text, resolve, lambda c: form_scalar(g, c))
    if not isinstance(value, DiffForm):
        raise ParseError("expression is not a differential form", 0)
    return value
