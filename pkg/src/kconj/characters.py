"""Characters: R(G) as Weyl-invariant Laurent polynomials on the maximal torus.

Each factor gets a block of torus variables.  SU(n) blocks store n-1
variables, the n-th being eliminated through x_1...x_n = 1, so all
arithmetic happens in an honest Laurent ring; Sp(n) blocks carry the
sign-flip symmetry x <-> 1/x on top of permutations.  Conversion back to
generator form runs leading-orbit elimination against products of
fundamental characters, with the strict decrease of the leading key
asserted at every step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .exprparse import ParseError, parse_expression
from .groups import GroupDescriptor, GroupModel, build_group
from .rings import LAURENT, POLYNOMIAL, RingElement, RingMismatch, RingModel


#: Invariants this module promises; each must be registered in `verify`.
INVARIANT_CHECKS = (
    "character-roundtrip",
    "character-ring-homomorphism",
    "character-identity-evaluation",
    "character-weyl-invariance",
)


class UnknownGenerator(KeyError):
    """Generator does not belong to the given group model."""


class NotWeylInvariant(ValueError):
    """Input fails the block Weyl symmetry check."""


class NotInImage(ValueError):
    """Unreachable for Weyl-invariant inputs; kept as a hard failure guard."""


@dataclass(frozen=True)
class TorusBlock:
    family: str  # "SU", "Sp", "U" or "T"
    full: int    # underlying variable count n (T: number of circles)
    stored: int  # stored variable count (SU: n-1, otherwise full)
    offset: int


@dataclass(frozen=True)
class TorusModel:
    blocks: tuple[TorusBlock, ...]
    ring: RingModel

    @property
    def nvars(self) -> int:
        return self.ring.ngens


class SymmetricLaurent:
    """Laurent polynomial on the torus variables of a group model.

    Invariance under the block Weyl action is a property of the value,
    checked by `is_weyl_invariant`, not enforced per operation; sums and
    products of invariant inputs stay invariant.
    """

    __slots__ = ("model", "poly")

    def __init__(self, model: TorusModel, poly: RingElement):
        self.model = model
        self.poly = poly

    @property
    def terms(self) -> dict:
        return self.poly.terms

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def eval_at_identity(self) -> int:
        return sum(self.poly.terms.values())

    def _coerce(self, other):
        if isinstance(other, int):
            return SymmetricLaurent(self.model, self.poly.ring.const(other))
        return other

    def __eq__(self, other):
        other = self._coerce(other)
        if not isinstance(other, SymmetricLaurent):
            return NotImplemented
        return self.model == other.model and self.poly == other.poly

    def __hash__(self):
        return hash((self.model.ring.ring_id, frozenset(self.poly.terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        return SymmetricLaurent(self.model, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return SymmetricLaurent(self.model, -self.poly)

    def __sub__(self, other):
        other = self._coerce(other)
        return SymmetricLaurent(self.model, self.poly - other.poly)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        return SymmetricLaurent(self.model, self.poly * other.poly)

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        return SymmetricLaurent(self.model, self.poly ** exp)

    def to_text(self) -> str:
        return self.poly.to_text()

    __str__ = to_text

    def __repr__(self):
        return f"<character {self.to_text()}>"


@lru_cache(maxsize=None)
def _torus_model(descriptor: GroupDescriptor) -> TorusModel:
    blocks = []
    names: list[str] = []
    offset = 0

    def add_block(family, full, stored, index):
        nonlocal offset
        blocks.append(TorusBlock(family, full, stored, offset))
        names.extend(f"x{index + 1}_{k + 1}" for k in range(stored))
        offset += stored

    for fi, f in enumerate(descriptor.factors):
        stored = f.n - 1 if f.family == "SU" else f.n
        add_block(f.family, f.n, stored, fi)
    if descriptor.torus_rank:
        add_block("T", descriptor.torus_rank, descriptor.torus_rank, len(descriptor.factors))
    ring = RingModel(
        ring_id=f"X[{descriptor}]",
        names=tuple(names),
        kinds=(LAURENT,) * len(names),
    )
    return TorusModel(tuple(blocks), ring)


def torus_model(g: GroupModel) -> TorusModel:
    return _torus_model(g.descriptor)


def _block_exps(exps, block: TorusBlock):
    return exps[block.offset:block.offset + block.stored]


def _su_reduce(full_vec):
    last = full_vec[-1]
    return tuple(e - last for e in full_vec[:-1])


def _monomial(model: TorusModel, positions, offset):
    exps = [0] * model.nvars
    for p in positions:
        exps[offset + p] = 1
    return SymmetricLaurent(model, model.ring.monomial(tuple(exps)))


def _su_elementary(model: TorusModel, block: TorusBlock, k: int) -> SymmetricLaurent:
    n = block.full
    terms: dict = {}
    for combo in itertools.combinations(range(n), k):
        full = [0] * n
        for i in combo:
            full[i] = 1
        red = _su_reduce(full)
        exps = [0] * model.nvars
        exps[block.offset:block.offset + block.stored] = red
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + 1
    return SymmetricLaurent(model, RingElement(model.ring, terms))


def _u_elementary(model: TorusModel, block: TorusBlock, k: int) -> SymmetricLaurent:
    n = block.full
    acc = SymmetricLaurent(model, model.ring.zero())
    for combo in itertools.combinations(range(n), k):
        acc = acc + _monomial(model, combo, block.offset)
    return acc


@lru_cache(maxsize=None)
def _sp_exterior_characters(descriptor: GroupDescriptor, block_index: int):
    """Characters of Lambda^k of the defining 2n-dim module, k = 0..2n."""
    model = _torus_model(descriptor)
    block = model.blocks[block_index]
    one = SymmetricLaurent(model, model.ring.one())
    levels = [one]
    for i in range(block.full):
        var = model.ring.gen(model.ring.names[block.offset + i])
        x = SymmetricLaurent(model, var)
        xinv = SymmetricLaurent(model, var ** -1)
        for factor in (x, xinv):
            nxt = [levels[0]]
            for j in range(1, len(levels) + 1):
                prev = levels[j] if j < len(levels) else None
                term = factor * levels[j - 1]
                nxt.append(term if prev is None else prev + term)
            levels = nxt
    return tuple(levels)


def _sp_fundamental(descriptor, block_index, k) -> SymmetricLaurent:
    # char of the k-th fundamental module: Lambda^k minus Lambda^(k-2)
    levels = _sp_exterior_characters(descriptor, block_index)
    char = levels[k]
    if k >= 2:
        char = char - levels[k - 2]
    return char


@lru_cache(maxsize=None)
def _fundamental_character_by_name(descriptor: GroupDescriptor, name: str) -> SymmetricLaurent:
    g = build_group(descriptor)
    model = _torus_model(descriptor)
    bi, pos = g.block_position(name)
    block = model.blocks[bi]
    if block.family == "SU":
        return _su_elementary(model, block, pos + 1)
    if block.family == "Sp":
        return _sp_fundamental(descriptor, bi, pos + 1)
    if block.family == "U":
        if pos == block.full - 1:  # determinant
            return _monomial(model, range(block.full), block.offset)
        return _u_elementary(model, block, pos + 1)
    # torus circle coordinate
    return _monomial(model, [pos], block.offset)


def fundamental_character(g: GroupModel, gen) -> SymmetricLaurent:
    """Character of the representation behind a generator (no IG shift)."""
    name = gen if isinstance(gen, str) else gen.name
    if name not in g.ring.names:
        raise UnknownGenerator(f"group {g.descriptor} has no generator {name!r}")
    return _fundamental_character_by_name(g.descriptor, name)


# -- generator form -> character form ---------------------------------------

_char_pow_caches: dict[GroupDescriptor, dict] = {}


def _char_power(g: GroupModel, name: str, e: int) -> SymmetricLaurent:
    cache = _char_pow_caches.setdefault(g.descriptor, {})
    key = (name, e)
    out = cache.get(key)
    if out is None:
        gen = g.generator(name)
        char = fundamental_character(g, name)
        if gen.kind == POLYNOMIAL:
            char = char - gen.rep_dimension
        out = char ** e
        cache[key] = out
    return out


def to_character(g: GroupModel, a: RingElement) -> SymmetricLaurent:
    """Substitute every generator by its shifted fundamental character."""
    if a.ring.ring_id != g.ring.ring_id:
        raise RingMismatch(f"element lives in {a.ring.ring_id}, not {g.ring.ring_id}")
    model = torus_model(g)
    acc = model.ring.zero()
    names = g.ring.names
    for exps, coeff in a.terms.items():
        term = model.ring.const(coeff)
        for name, e in zip(names, exps):
            if e:
                term = term * _char_power(g, name, e).poly
        acc = acc + term
    return SymmetricLaurent(model, acc)


# -- Weyl orbits -------------------------------------------------------------


def _block_canonical(block: TorusBlock, vec):
    if block.family == "SU":
        full = sorted(vec + (0,), reverse=True)
        low = full[-1]
        canon = tuple(e - low for e in full)
    elif block.family == "U":
        canon = tuple(sorted(vec, reverse=True))
    elif block.family == "Sp":
        canon = tuple(sorted((abs(e) for e in vec), reverse=True))
    else:
        canon = tuple(vec)
    return (sum(canon) if block.family != "T" else sum(vec), canon)


def monomial_key(model: TorusModel, exps):
    """Dominance key: per block, (grade, sorted orbit representative)."""
    return tuple(_block_canonical(b, _block_exps(exps, b)) for b in model.blocks)


def _block_orbit(block: TorusBlock, vec):
    if block.family == "SU":
        full = vec + (0,)
        seen = {tuple(_su_reduce(p)) for p in itertools.permutations(full)}
        return seen
    if block.family == "U":
        return set(itertools.permutations(vec))
    if block.family == "Sp":
        out = set()
        for p in itertools.permutations(vec):
            support = [i for i, e in enumerate(p) if e]
            for signs in itertools.product((1, -1), repeat=len(support)):
                q = list(p)
                for i, s in zip(support, signs):
                    q[i] = s * q[i]
                out.add(tuple(q))
        return out
    return {tuple(vec)}


def _orbit_of(model: TorusModel, exps):
    block_orbits = [sorted(_block_orbit(b, _block_exps(exps, b))) for b in model.blocks]
    for choice in itertools.product(*block_orbits):
        yield tuple(e for part in choice for e in part)


def is_weyl_invariant(s: SymmetricLaurent) -> bool:
    terms = s.terms
    done = set()
    for exps, coeff in terms.items():
        key = monomial_key(s.model, exps)
        if key in done:
            continue
        done.add(key)
        for other in _orbit_of(s.model, exps):
            if terms.get(other, 0) != coeff:
                return False
    return True


# -- character form -> generator form ---------------------------------------

_product_caches: dict[GroupDescriptor, dict] = {}


def _block_factor(g: GroupModel, block_index: int, canon) -> tuple[SymmetricLaurent, RingElement]:
    """Invariant with leading orbit `canon` (coefficient 1), and its
    expression through ring generators, for one torus block."""
    cache = _product_caches.setdefault(g.descriptor, {})
    key = (block_index, canon)
    out = cache.get(key)
    if out is not None:
        return out

    model = torus_model(g)
    block = model.blocks[block_index]
    block_gens = [gen for gen in g.generators if g.block_position(gen.name)[0] == block_index]
    char = SymmetricLaurent(model, model.ring.one())
    elem = g.ring.one()

    if block.family == "T":
        exps = [0] * model.nvars
        exps[block.offset:block.offset + block.stored] = canon
        char = SymmetricLaurent(model, model.ring.monomial(tuple(exps)))
        for gen, e in zip(block_gens, canon):
            if e:
                elem = elem * (g.ring.gen(gen.name) ** e)
    elif block.family == "U":
        n = block.full
        for k in range(1, n):
            d = canon[k - 1] - canon[k]
            if d:
                char = char * (_u_elementary(model, block, k) ** d)
                elem = elem * (g.representation_class(block_gens[k - 1].name) ** d)
        det_pow = canon[n - 1]
        if det_pow:
            char = char * (_monomial(model, range(n), block.offset) ** det_pow)
            elem = elem * (g.ring.gen(block_gens[n - 1].name) ** det_pow)
    else:  # SU or Sp: canon has length full, minimum entry 0 for SU
        n = block.full
        padded = list(canon) + [0]
        for k in range(1, n + 1):
            d = padded[k - 1] - (padded[k] if k < n else 0)
            if block.family == "SU" and k == n:
                continue  # e_n = 1 on SU(n); canonical form forces d = 0 anyway
            if d:
                if block.family == "SU":
                    fk = _su_elementary(model, block, k)
                else:
                    fk = _sp_fundamental(g.descriptor, block_index, k)
                char = char * (fk ** d)
                elem = elem * (g.representation_class(block_gens[k - 1].name) ** d)

    cache[key] = (char, elem)
    return char, elem


def from_character(g: GroupModel, s: SymmetricLaurent) -> RingElement:
    """Inverse of `to_character`, by leading-orbit elimination.

    Requires a Weyl-invariant input; every invariant Laurent polynomial
    on the torus model is hit, so `NotInImage` never fires on invariant
    inputs (the elimination key must strictly decrease each round, and a
    violation would be the only way to fail).
    """
    model = torus_model(g)
    if s.model != model:
        raise RingMismatch("character lives on a different torus model")
    if not is_weyl_invariant(s):
        raise NotWeylInvariant(f"not invariant under the Weyl action: {s.to_text()}")

    residual = s
    result = g.ring.zero()
    prev_key = None
    while residual.terms:
        lead = max(residual.terms, key=lambda e: monomial_key(model, e))
        key = monomial_key(model, lead)
        if prev_key is not None and not key < prev_key:
            raise NotInImage(
                f"leading key failed to decrease at {residual.to_text()}"
            )
        prev_key = key
        coeff = residual.terms[lead]
        char = SymmetricLaurent(model, model.ring.one())
        elem = g.ring.one()
        for bi, (grade, canon) in enumerate(key):
            bchar, belem = _block_factor(g, bi, canon)
            char = char * bchar
            elem = elem * belem
        residual = residual - coeff * char
        result = result + coeff * elem
    return result


# -- text and JSON interchange ----------------------------------------------


def parse_character(text: str, g: GroupModel) -> SymmetricLaurent:
    model = torus_model(g)

    def resolve(name, pos):
        if name not in model.ring.names:
            raise ParseError(f"unknown torus variable {name!r}", pos)
        return model.ring.gen(name)

    value = parse_expression(text, resolve, model.ring.const)
    if not isinstance(value, RingElement):
        raise ParseError("expression is not a character", 0)
    return SymmetricLaurent(model, value)


def character_to_json(s: SymmetricLaurent) -> list:
    from .rings import element_to_json

    return element_to_json(s.poly)
