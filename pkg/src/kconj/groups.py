"""Group descriptors and the fixed generator inventory of R(G).

Supported groups are products of SU(n), Sp(n), U(n) and a torus; all of
these have torsion-free fundamental group and a representation ring of
the normal form Z[y_1..y_p] (x) Z[t_1^{±1}..t_q^{±1}], which is what the
rest of the engine indexes against.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from . import rings
from .rings import LAURENT, POLYNOMIAL, RingModel


#: Invariants this module promises; each must be registered in `verify`.
INVARIANT_CHECKS = (
    "group-rank-additivity",
    "group-generator-counts",
)


class InvalidDescriptor(ValueError):
    """Malformed or out-of-range group descriptor."""


FAMILIES = ("SU", "Sp", "U")
_FACTOR_BOUNDS = {"SU": 2, "Sp": 1, "U": 1}


@dataclass(frozen=True)
class Factor:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidDescriptor(f"unsupported factor family {self.family!r}")
        if self.n < _FACTOR_BOUNDS[self.family]:
            raise InvalidDescriptor(
                f"{self.family}(n) needs n >= {_FACTOR_BOUNDS[self.family]}, got {self.n}"
            )

    @property
    def rank(self) -> int:
        return self.n - 1 if self.family == "SU" else self.n

    def __str__(self):
        return f"{self.family}({self.n})"


@dataclass(frozen=True)
class GroupDescriptor:
    factors: tuple[Factor, ...] = ()
    torus_rank: int = 0
    trivial: bool = False

    def __post_init__(self):
        if self.torus_rank < 0:
            raise InvalidDescriptor("torus rank must be nonnegative")
        if self.trivial and (self.factors or self.torus_rank):
            raise InvalidDescriptor("trivial flag excludes factors and torus")
        if not self.trivial and not self.factors and self.torus_rank == 0:
            raise InvalidDescriptor(
                "empty descriptor; request the trivial group explicitly"
            )

    def __str__(self):
        if self.trivial:
            return "1"
        parts = [str(f) for f in self.factors]
        if self.torus_rank:
            parts.append(f"T^{self.torus_rank}")
        return " x ".join(parts)


@dataclass(frozen=True)
class GeneratorInfo:
    """One generator of the R(G) normal form: y_i (polynomial kind) or t_j (laurent)."""

    name: str
    kind: str
    factor_index: int
    rep_dimension: int


def _sp_fundamental_dim(n: int, k: int) -> int:
    # dim of the k-th fundamental module of Sp(n) inside Lambda^k(C^{2n})
    return comb(2 * n, k) - (comb(2 * n, k - 2) if k >= 2 else 0)


class GroupModel:
    """Immutable product-group model with its generator inventory."""

    def __init__(self, descriptor: GroupDescriptor):
        gens: list[GeneratorInfo] = []
        block_pos: dict[str, tuple[int, int]] = {}
        y = t = 0
        for fi, f in enumerate(descriptor.factors):
            if f.family == "SU":
                for k in range(1, f.n):
                    y += 1
                    gens.append(GeneratorInfo(f"y{y}", POLYNOMIAL, fi, comb(f.n, k)))
                    block_pos[f"y{y}"] = (fi, k - 1)
            elif f.family == "Sp":
                for k in range(1, f.n + 1):
                    y += 1
                    gens.append(
                        GeneratorInfo(f"y{y}", POLYNOMIAL, fi, _sp_fundamental_dim(f.n, k))
                    )
                    block_pos[f"y{y}"] = (fi, k - 1)
            else:  # U(n): e_1..e_{n-1} shifted, determinant e_n inverted
                for k in range(1, f.n):
                    y += 1
                    gens.append(GeneratorInfo(f"y{y}", POLYNOMIAL, fi, comb(f.n, k)))
                    block_pos[f"y{y}"] = (fi, k - 1)
                t += 1
                gens.append(GeneratorInfo(f"t{t}", LAURENT, fi, 1))
                block_pos[f"t{t}"] = (fi, f.n - 1)
        torus_block = len(descriptor.factors)
        for k in range(descriptor.torus_rank):
            t += 1
            gens.append(GeneratorInfo(f"t{t}", LAURENT, torus_block, 1))
            block_pos[f"t{t}"] = (torus_block, k)

        self.descriptor = descriptor
        self.generators: tuple[GeneratorInfo, ...] = tuple(gens)
        self.rank = len(gens)
        self.ring = RingModel(
            ring_id=f"R[{descriptor}]",
            names=tuple(g.name for g in gens),
            kinds=tuple(g.kind for g in gens),
        )
        self.doubled_ring = self.ring.doubled()
        self._block_pos = block_pos
        self._by_name = {g.name: g for g in gens}

    def __eq__(self, other):
        return isinstance(other, GroupModel) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"<GroupModel {self.descriptor}>"

    def generator(self, name: str) -> GeneratorInfo:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"group {self.descriptor} has no generator {name!r}") from None

    def block_position(self, name: str) -> tuple[int, int]:
        """(torus block index, position within block) of a generator."""
        return self._block_pos[name]

    def representation_class(self, name: str) -> rings.RingElement:
        """The actual representation class behind a generator.

        Polynomial generators are dimension shifts of fundamental
        representations, so the class is y_i + dim; laurent generators
        are one-dimensional classes, so the class is t_j itself.
        """
        gen = self.generator(name)
        base = self.ring.gen(name)
        if gen.kind == POLYNOMIAL:
            return base + gen.rep_dimension
        return base


@lru_cache(maxsize=None)
def build_group(descriptor: GroupDescriptor) -> GroupModel:
    """Instantiate the generator inventory for a validated descriptor."""
    return GroupModel(descriptor)


def generator_inventory(g: GroupModel) -> tuple[GeneratorInfo, ...]:
    return g.generators


# -- descriptor text / JSON grammar -----------------------------------------

_FACTOR_RE = re.compile(r"^(su|sp|u)\((\d+)\)$", re.IGNORECASE)
_TORUS_RE = re.compile(r"^t(?:\^(\d+))?$", re.IGNORECASE)
_FAMILY_CANON = {"su": "SU", "sp": "Sp", "u": "U"}


def parse_descriptor(text: str) -> GroupDescriptor:
    """Parse `SU(3) x Sp(2) x U(2) x T^2` or the JSON equivalent."""
    text = text.strip()
    if not text:
        raise InvalidDescriptor("empty group descriptor")
    if text.startswith("{"):
        try:
            return descriptor_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidDescriptor(f"bad JSON descriptor: {exc}") from exc
    if text.lower() in ("1", "trivial"):
        return GroupDescriptor(trivial=True)
    factors: list[Factor] = []
    torus = 0
    for raw in re.split(r"[x*×]", text, flags=re.IGNORECASE):
        token = raw.strip()
        if not token:
            raise InvalidDescriptor(f"empty factor in descriptor {text!r}")
        m = _FACTOR_RE.match(token)
        if m:
            factors.append(Factor(_FAMILY_CANON[m.group(1).lower()], int(m.group(2))))
            continue
        m = _TORUS_RE.match(token)
        if m:
            torus += int(m.group(1)) if m.group(1) else 1
            continue
        raise InvalidDescriptor(f"unrecognized factor {token!r}")
    return GroupDescriptor(tuple(factors), torus)


def descriptor_from_json(data: dict) -> GroupDescriptor:
    if not isinstance(data, dict):
        raise InvalidDescriptor("JSON descriptor must be an object")
    factors = []
    for item in data.get("factors", []):
        if isinstance(item, str):
            m = _FACTOR_RE.match(item.strip())
            if not m:
                raise InvalidDescriptor(f"unrecognized factor {item!r}")
            factors.append(Factor(_FAMILY_CANON[m.group(1).lower()], int(m.group(2))))
        elif isinstance(item, dict):
            family = str(item.get("family", ""))
            canon = _FAMILY_CANON.get(family.lower())
            if canon is None:
                raise InvalidDescriptor(f"unrecognized factor family {family!r}")
            factors.append(Factor(canon, int(item.get("n", 0))))
        else:
            raise InvalidDescriptor(f"unrecognized factor entry {item!r}")
    return GroupDescriptor(
        tuple(factors),
        int(data.get("torus_rank", 0)),
        bool(data.get("trivial", False)),
    )


def descriptor_to_json(desc: GroupDescriptor) -> dict:
    return {
        "factors": [str(f) for f in desc.factors],
        "torus_rank": desc.torus_rank,
        "trivial": desc.trivial,
    }
