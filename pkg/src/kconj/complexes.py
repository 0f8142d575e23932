"""Free complexes over ring models: the two resolutions, d^2 = 0 checks,
windowed exactness certification, and Tor rank tables.

Windowed homology restricts chain supports to a finite exponent box and
certifies exactness with exact integer linear algebra: cycles are the
kernel of the differential on inner-window chains (no truncation of the
output), boundaries are the image, intersected with the inner span, of
chains from the padded window.  For the conjugation-action resolutions
the differential is homogeneous for the per-generator total degree that
pairs a generator with its primed copy, so the matrices split into many
small blocks which are eliminated independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb

from . import exterior
from .groups import GroupModel
from .intlinalg import (
    EliminationResult,
    IntMatrix,
    SparseEliminator,
    kernel_basis,
    smith_normal_form,
    solve_exact,
)
from .rings import INTEGERS, LAURENT, POLYNOMIAL, RingElement, RingModel, augmentation


#: Invariants this module promises; each must be registered in `verify`.
INVARIANT_CHECKS = (
    "koszul-d-squared",
    "augmentation-d-squared",
    "koszul-window-exactness",
    "augmentation-window-exactness",
    "window-monotonicity",
    "tensored-down-zero-differential",
    "tor-binomial-ranks",
)


class WindowTooSmall(ValueError):
    """Padding is below the exponent spread of the differential."""


MULTIPLICATION = "multiplication"
COUNIT = "counit"


@dataclass(eq=False)
class FreeComplex:
    """Chain complex of free modules with sparse RingElement differentials.

    `bases[k]` lists the degree-k basis subsets (bitmasks over the P
    generators); `diffs[k]` maps (target_mask, source_mask) to the
    coefficient of d_k.  `augmentation_kind` names the degree-0 structure
    map: multiplication onto the base ring for the doubled-ring
    resolution, the counit onto Z for the single-ring one.
    """

    ring: RingModel
    rank: int
    bases: tuple[tuple[int, ...], ...]
    diffs: dict[int, dict[tuple[int, int], RingElement]]
    augmentation_kind: str | None = None
    pair_graded: bool = False
    group: GroupModel | None = None

    def basis_label(self, mask: int) -> str:
        if mask == 0:
            return "1"
        names = self.ring.names
        return "e[" + ",".join(names[i] for i in exterior.members(mask)) + "]"


def _difference_generator(ring: RingModel, slot: int, primed_slot: int) -> RingElement:
    n = ring.ngens
    up = [0] * n
    up[primed_slot] = 1
    down = [0] * n
    down[slot] = 1
    return RingElement(ring, {tuple(up): 1, tuple(down): -1})


def _gamma(ring: RingModel, slot: int) -> RingElement:
    gen = ring.gen(ring.names[slot])
    if ring.kinds[slot] == LAURENT:
        return gen - 1
    return gen


def _koszul_diffs(ring: RingModel, rank: int, coefficients) -> dict:
    diffs: dict[int, dict] = {}
    for k in range(1, rank + 1):
        layer: dict = {}
        for smask in exterior.subsets(rank, k):
            for z in exterior.members(smask):
                tmask = smask & ~(1 << z)
                coeff = coefficients[z]
                if exterior.removal_sign(smask, z) < 0:
                    coeff = -coeff
                layer[(tmask, smask)] = coeff
        diffs[k] = layer
    return diffs


def build_koszul_resolution(g: GroupModel) -> FreeComplex:
    """Resolution of R(G) over R(G) (x) R(G) on the exterior algebra of P.

    The degree-1 coefficients are the differences gamma(z)' - gamma(z);
    both generator kinds reduce to (primed copy) - (unprimed copy).
    """
    ring = g.doubled_ring
    r = g.rank
    coefficients = [_difference_generator(ring, z, z + r) for z in range(r)]
    return FreeComplex(
        ring=ring,
        rank=r,
        bases=tuple(tuple(exterior.subsets(r, k)) for k in range(r + 1)),
        diffs=_koszul_diffs(ring, r, coefficients),
        augmentation_kind=MULTIPLICATION,
        pair_graded=True,
        group=g,
    )


def build_augmentation_resolution(g: GroupModel) -> FreeComplex:
    """Resolution of Z over R(G): exterior algebra on P with d(e_z) = gamma(z)."""
    ring = g.ring
    r = g.rank
    coefficients = [_gamma(ring, z) for z in range(r)]
    return FreeComplex(
        ring=ring,
        rank=r,
        bases=tuple(tuple(exterior.subsets(r, k)) for k in range(r + 1)),
        diffs=_koszul_diffs(ring, r, coefficients),
        augmentation_kind=COUNIT,
        group=g,
    )


def tensor_down_element(a: RingElement, target: RingModel) -> RingElement:
    """Apply the multiplication map R (x) R -> R to a doubled-ring element."""
    n = target.ngens
    terms: dict = {}
    for exps, coeff in a.terms.items():
        folded = tuple(exps[i] + exps[i + n] for i in range(n))
        v = terms.get(folded, 0) + coeff
        if v:
            terms[folded] = v
        else:
            del terms[folded]
    return RingElement(target, terms)


def tensored_down(cx: FreeComplex) -> FreeComplex:
    """The complex after -(x) base ring (multiplication map) or -(x) Z (counit).

    For the uncorrupted resolutions every differential becomes zero, which
    is exactly what makes the Tor tables read off the module ranks.
    """
    if cx.augmentation_kind == MULTIPLICATION:
        target = cx.group.ring if cx.group is not None else None
        if target is None:
            raise ValueError("complex carries no base group")
        mapper = lambda e: tensor_down_element(e, target)
    elif cx.augmentation_kind == COUNIT:
        target = INTEGERS
        mapper = lambda e: target.const(augmentation(e))
    else:
        raise ValueError("complex has no augmentation to tensor along")
    diffs = {
        k: {key: mapper(e) for key, e in layer.items()}
        for k, layer in cx.diffs.items()
    }
    return FreeComplex(
        ring=target,
        rank=cx.rank,
        bases=cx.bases,
        diffs=diffs,
        augmentation_kind=None,
        group=cx.group,
    )


def with_sign_flipped(cx: FreeComplex, degree: int, target_mask: int, source_mask: int) -> FreeComplex:
    """Negative-control fixture: one differential entry with flipped sign."""
    diffs = {k: dict(layer) for k, layer in cx.diffs.items()}
    key = (target_mask, source_mask)
    diffs[degree][key] = -diffs[degree][key]
    return FreeComplex(
        ring=cx.ring,
        rank=cx.rank,
        bases=cx.bases,
        diffs=diffs,
        augmentation_kind=cx.augmentation_kind,
        pair_graded=cx.pair_graded,
        group=cx.group,
    )


@dataclass(frozen=True)
class ComplexReport:
    ok: bool
    failures: tuple[tuple[int, str, str, str], ...]


def differential_squared_is_zero(cx: FreeComplex) -> ComplexReport:
    """Symbolic check that consecutive differentials compose to zero,
    including the degree-0 structure map against d_1."""
    failures = []
    for k in range(2, cx.rank + 1):
        upper = cx.diffs.get(k, {})
        lower = cx.diffs.get(k - 1, {})
        acc: dict = {}
        for (mid, src), e1 in upper.items():
            for (dst, mid2), e0 in lower.items():
                if mid2 != mid:
                    continue
                key = (dst, src)
                term = e0 * e1
                prev = acc.get(key)
                acc[key] = term if prev is None else prev + term
        for (dst, src), total in acc.items():
            if not total.is_zero():
                failures.append(
                    (k, cx.basis_label(dst), cx.basis_label(src), total.to_text())
                )
    if cx.augmentation_kind is not None and cx.rank >= 1:
        for (dst, src), e in cx.diffs.get(1, {}).items():
            if cx.augmentation_kind == MULTIPLICATION:
                folded = tensor_down_element(e, cx.group.ring)
                bad = not folded.is_zero()
                text = folded.to_text()
            else:
                bad = augmentation(e) != 0
                text = str(augmentation(e))
            if bad:
                failures.append((0, "aug", cx.basis_label(src), text))
    return ComplexReport(not failures, tuple(failures))


@dataclass(frozen=True)
class RegularSequenceFactor:
    """One degree-1 Koszul coefficient written as unit * shifted difference.

    Polynomial pairs give u = y' - y with unit 1, already one variable of
    a polynomial change of coordinates (y, y') -> (y, u).  Laurent pairs
    give t' - t = t * (s - 1) with s = t'/t an invertible monomial, so s
    is a Laurent variable of the rewritten ring and s - 1 is the standard
    regular element.  Either way the coefficients become a textbook
    regular sequence; the windowed check stays as the belt and braces.
    """

    generator: str
    unit: RingElement
    difference: RingElement


def koszul_regular_factorization(cx: FreeComplex) -> list[RegularSequenceFactor]:
    """Certify the change of variables behind the exactness argument.

    Raises ValueError when a degree-1 coefficient fails to factor as
    unit * difference, which only happens on corrupted complexes.
    """
    if cx.group is None or cx.augmentation_kind != MULTIPLICATION:
        raise ValueError("regular factorization applies to the doubled-ring resolution")
    ring = cx.ring
    g = cx.group
    out = []
    for z, gen in enumerate(g.generators):
        coeff = cx.diffs[1][(0, 1 << z)]
        if gen.kind == LAURENT:
            unit = ring.gen(gen.name)
            difference = ring.gen(gen.name + "'") * unit ** -1 - 1
        else:
            unit = ring.one()
            difference = ring.gen(gen.name + "'") - ring.gen(gen.name)
        if unit * difference != coeff:
            raise ValueError(
                f"coefficient for {gen.name} does not factor as unit * difference"
            )
        out.append(RegularSequenceFactor(gen.name, unit, difference))
    return out


# -- exponent windows --------------------------------------------------------


@dataclass(frozen=True)
class ExponentWindow:
    """Per-generator exponent bounds plus padding for the boundary search."""

    bounds: tuple[tuple[int, int], ...]
    padding: int = 1

    @classmethod
    def uniform(cls, ring: RingModel, bound: int, padding: int = 1) -> "ExponentWindow":
        bounds = tuple(
            (0, bound) if kind == POLYNOMIAL else (-bound, bound)
            for kind in ring.kinds
        )
        return cls(bounds, padding)

    def check(self, ring: RingModel) -> None:
        if len(self.bounds) != ring.ngens:
            raise ValueError("window bounds do not match the ring model")
        if self.padding < 0:
            raise ValueError("padding must be nonnegative")
        for (lo, hi), kind in zip(self.bounds, ring.kinds):
            if lo > hi:
                raise ValueError("empty window range")
            if kind == POLYNOMIAL and lo != 0:
                raise ValueError("polynomial generators have window lower bound 0")

    def padded_bounds(self, ring: RingModel) -> tuple[tuple[int, int], ...]:
        out = []
        for (lo, hi), kind in zip(self.bounds, ring.kinds):
            if kind == POLYNOMIAL:
                out.append((0, hi + self.padding))
            else:
                out.append((lo - self.padding, hi + self.padding))
        return tuple(out)


def differential_spread(cx: FreeComplex) -> int:
    """Largest per-generator exponent magnitude in any differential entry."""
    spread = 0
    for layer in cx.diffs.values():
        for elem in layer.values():
            for exps in elem.terms:
                for e in exps:
                    if abs(e) > spread:
                        spread = abs(e)
    return spread


@dataclass(frozen=True)
class HomologyReport:
    degree: int
    inner_window: tuple[tuple[int, int], ...]
    padding: int
    rank_cycles: int
    rank_boundaries: int
    deficit: int
    torsion: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "inner_window": [list(b) for b in self.inner_window],
            "padding": self.padding,
            "rank_cycles": self.rank_cycles,
            "rank_boundaries": self.rank_boundaries,
            "deficit": self.deficit,
            "torsion": list(self.torsion) if self.torsion is not None else None,
        }


class _Box:
    """Dense integer encoding of an exponent box (used as row/column keys)."""

    def __init__(self, bounds):
        self.bounds = bounds
        self.dims = [hi - lo + 1 for lo, hi in bounds]
        strides = []
        acc = 1
        for dim in reversed(self.dims):
            strides.append(acc)
            acc *= dim
        self.strides = list(reversed(strides))
        self.size = acc

    def encode(self, exps) -> int:
        enc = 0
        for e, (lo, _), s in zip(exps, self.bounds, self.strides):
            enc += (e - lo) * s
        return enc

    def decode(self, enc) -> tuple[int, ...]:
        out = []
        for (lo, _), s, dim in zip(self.bounds, self.strides, self.dims):
            out.append(lo + (enc // s) % dim)
        return tuple(out)

    def iter_encoded(self):
        ranges = [range(lo, hi + 1) for lo, hi in self.bounds]
        for exps in product(*ranges):
            yield self.encode(exps), exps


class _WindowEngine:
    """Assembles and eliminates the windowed matrices of one complex.

    Elimination results are cached per (source degree, inner/padded), so
    a sweep over homological degrees factors each matrix exactly once:
    the matrix of d_k over inner sources provides both the cycle rank at
    degree k and the boundary rank at degree k-1.
    """

    def __init__(self, cx: FreeComplex, window: ExponentWindow):
        window.check(cx.ring)
        self.cx = cx
        self.window = window
        self.spread = differential_spread(cx)
        if window.padding < self.spread:
            raise WindowTooSmall(
                f"padding {window.padding} is below the differential spread {self.spread}"
            )
        self.inner_bounds = window.bounds
        self.padded_src = window.padded_bounds(cx.ring)
        self._cache: dict = {}
        r2 = cx.ring.ngens // 2
        self.pairs = r2 if cx.pair_graded else 0

    # .. column generation ..................................................

    def _source_bounds(self, padded: bool):
        return self.padded_src if padded else self.inner_bounds

    def _out_box(self, src_bounds) -> _Box:
        s = self.spread
        out = []
        for (lo, hi), kind in zip(src_bounds, self.cx.ring.kinds):
            blo = lo - s
            if kind == POLYNOMIAL and blo < 0:
                blo = 0
            out.append((blo, hi + s))
        return _Box(tuple(out))

    def _entry_shifts(self, degree: int, box: _Box, target_index: dict):
        per_source: dict[int, list] = {s: [] for s in range(len(self.cx.bases[degree]))}
        source_index = {m: i for i, m in enumerate(self.cx.bases[degree])}
        for (tmask, smask), elem in self.cx.diffs.get(degree, {}).items():
            ti = target_index[tmask]
            si = source_index[smask]
            for exps, coeff in elem.terms.items():
                shift = sum(e * s for e, s in zip(exps, box.strides))
                per_source[si].append((ti, shift, coeff))
        return per_source

    def _is_outer_fn(self, box: _Box, nb: int):
        inner = self.inner_bounds
        cache: dict[int, bool] = {}

        def is_outer(rowkey: int) -> bool:
            flag = cache.get(rowkey)
            if flag is None:
                exps = box.decode(rowkey // nb)
                flag = any(not lo <= e <= hi for e, (lo, hi) in zip(exps, inner))
                cache[rowkey] = flag
            return flag

        return is_outer

    def _block_key(self, exps, smask: int):
        r2 = self.pairs
        key = []
        for z in range(r2):
            w = exps[z] + exps[z + r2]
            if smask >> z & 1:
                w += 1
            key.append(w)
        return tuple(key)

    def eliminate(self, degree: int, padded: bool) -> EliminationResult:
        """Factor the matrix of d_degree on windowed sources.

        Returns column count, total rank, and the rank of the outer row
        block (rows whose monomial leaves the inner window).
        """
        key = (degree, padded)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        cx = self.cx
        if degree < 1 or degree > cx.rank:
            result = EliminationResult(0, 0, 0)
            self._cache[key] = result
            return result
        src_bounds = self._source_bounds(padded)
        box = self._out_box(src_bounds)
        targets = cx.bases[degree - 1]
        nb = len(targets)
        target_index = {m: i for i, m in enumerate(targets)}
        shifts = self._entry_shifts(degree, box, target_index)
        src_box = _Box(src_bounds)
        sources = list(cx.bases[degree])

        if self.pairs:
            buckets: dict = {}
            for _, exps in src_box.iter_encoded():
                out_enc = box.encode(exps)
                for si, smask in enumerate(sources):
                    buckets.setdefault(self._block_key(exps, smask), []).append(
                        (out_enc, si)
                    )
            result = EliminationResult()
            for bucket in buckets.values():
                elim = SparseEliminator(self._is_outer_fn(box, nb))
                for out_enc, si in bucket:
                    base = out_enc * nb
                    col: dict = {}
                    for ti, shift, coeff in shifts[si]:
                        rk = base + shift * nb + ti
                        v = col.get(rk, 0) + coeff
                        if v:
                            col[rk] = v
                        else:
                            del col[rk]
                    elim.add_column(col)
                result.ncols += elim.result.ncols
                result.rank += elim.result.rank
                result.rank_outer += elim.result.rank_outer
            self._cache[key] = result
            return result

        elim = SparseEliminator(self._is_outer_fn(box, nb))
        for _, exps in src_box.iter_encoded():
            base = box.encode(exps) * nb
            for si in range(len(sources)):
                col: dict = {}
                for ti, shift, coeff in shifts[si]:
                    rk = base + shift * nb + ti
                    v = col.get(rk, 0) + coeff
                    if v:
                        col[rk] = v
                    else:
                        del col[rk]
                elim.add_column(col)
        self._cache[key] = elim.result
        return elim.result

    def eliminate_augmentation(self) -> EliminationResult:
        """Rank of the degree-0 structure map on inner-window chains."""
        key = ("aug",)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        cx = self.cx
        src_box = _Box(self.inner_bounds)
        elim = SparseEliminator()
        if cx.augmentation_kind == MULTIPLICATION:
            n = cx.group.ring.ngens
            folded_bounds = tuple(
                (self.inner_bounds[i][0] + self.inner_bounds[i + n][0],
                 self.inner_bounds[i][1] + self.inner_bounds[i + n][1])
                for i in range(n)
            )
            out_box = _Box(folded_bounds)
            for _, exps in src_box.iter_encoded():
                folded = tuple(exps[i] + exps[i + n] for i in range(n))
                elim.add_column({out_box.encode(folded): 1})
        elif cx.augmentation_kind == COUNIT:
            kinds = cx.ring.kinds
            for _, exps in src_box.iter_encoded():
                unit = all(e == 0 or k == LAURENT for e, k in zip(exps, kinds))
                elim.add_column({0: 1} if unit else {})
        else:
            raise ValueError("complex has no augmentation map")
        self._cache[key] = elim.result
        return elim.result

    def monomial_count(self) -> int:
        return _Box(self.inner_bounds).size


def window_homology(
    cx: FreeComplex,
    window: ExponentWindow,
    degree: int,
    *,
    use_augmentation: bool = False,
    with_torsion: bool = False,
    engine: _WindowEngine | None = None,
) -> HomologyReport:
    """Windowed three-term homology measurement at one degree.

    Deficit 0 certifies that every cycle supported in the inner window is
    the boundary of a chain from the padded window.  The boundary rank is
    first computed from inner-window sources; since the padded image is
    sandwiched between the inner image and the cycle space, a zero
    deficit already determines the padded rank exactly, and only a
    nonzero deficit forces the full padded elimination.
    """
    if degree < 0:
        raise ValueError("homological degree must be nonnegative")
    eng = engine if engine is not None else _WindowEngine(cx, window)

    if degree == 0:
        if use_augmentation:
            res = eng.eliminate_augmentation()
            rank_cycles = res.ncols - res.rank
        else:
            rank_cycles = eng.monomial_count() if cx.rank >= 0 else 0
    elif degree > cx.rank:
        rank_cycles = 0
    else:
        res = eng.eliminate(degree, padded=False)
        rank_cycles = res.ncols - res.rank

    if degree >= cx.rank:
        rank_boundaries = 0
    else:
        inner = eng.eliminate(degree + 1, padded=False)
        rank_boundaries = inner.rank - inner.rank_outer
        if rank_cycles - rank_boundaries != 0:
            padded = eng.eliminate(degree + 1, padded=True)
            rank_boundaries = padded.rank - padded.rank_outer

    deficit = rank_cycles - rank_boundaries
    torsion = None
    if with_torsion:
        torsion = _window_torsion(cx, window, degree, use_augmentation, deficit)
    return HomologyReport(
        degree=degree,
        inner_window=window.bounds,
        padding=window.padding,
        rank_cycles=rank_cycles,
        rank_boundaries=rank_boundaries,
        deficit=deficit,
        torsion=torsion,
    )


def window_homology_suite(
    cx: FreeComplex,
    window: ExponentWindow,
    degrees,
    *,
    use_augmentation: bool = False,
    with_torsion: bool = False,
) -> list[HomologyReport]:
    """Window reports for several degrees with one shared factorization cache."""
    eng = _WindowEngine(cx, window)
    return [
        window_homology(
            cx,
            window,
            k,
            use_augmentation=use_augmentation,
            with_torsion=with_torsion,
            engine=eng,
        )
        for k in degrees
    ]


_TORSION_COLUMN_LIMIT = 500


def _windowed_matrix(cx, bounds, degree, inner_bounds):
    """Dense integer matrix of d_degree on the given source bounds.

    Rows are realized output chain keys; returns (matrix, row_keys,
    column chain keys, box) with rows ordered inner-first.
    """
    box_bounds = []
    spread = differential_spread(cx)
    for (lo, hi), kind in zip(bounds, cx.ring.kinds):
        blo = lo - spread
        if kind == POLYNOMIAL and blo < 0:
            blo = 0
        box_bounds.append((blo, hi + spread))
    box = _Box(tuple(box_bounds))
    targets = cx.bases[degree - 1]
    nb = len(targets)
    target_index = {m: i for i, m in enumerate(targets)}
    sources = cx.bases[degree]
    src_box = _Box(tuple(bounds))
    columns = []
    col_keys = []
    shifts: dict[int, list] = {i: [] for i in range(len(sources))}
    source_index = {m: i for i, m in enumerate(sources)}
    for (tmask, smask), elem in cx.diffs.get(degree, {}).items():
        for exps, coeff in elem.terms.items():
            shift = sum(e * s for e, s in zip(exps, box.strides))
            shifts[source_index[smask]].append((target_index[tmask], shift, coeff))
    for _, exps in src_box.iter_encoded():
        base = box.encode(exps) * nb
        for si in range(len(sources)):
            col: dict = {}
            for ti, shift, coeff in shifts[si]:
                rk = base + shift * nb + ti
                col[rk] = col.get(rk, 0) + coeff
            columns.append({k: v for k, v in col.items() if v})
            col_keys.append((tuple(exps), si))
    realized = sorted({rk for col in columns for rk in col})

    def rk_is_inner(rk):
        exps = box.decode(rk // nb)
        return all(lo <= e <= hi for e, (lo, hi) in zip(exps, inner_bounds))

    realized.sort(key=lambda rk: (not rk_is_inner(rk), rk))
    row_pos = {rk: i for i, rk in enumerate(realized)}
    n_inner = sum(1 for rk in realized if rk_is_inner(rk))
    rows = [[0] * len(columns) for _ in realized]
    for j, col in enumerate(columns):
        for rk, v in col.items():
            rows[row_pos[rk]][j] = v
    return IntMatrix(rows, len(columns)), realized, col_keys, box, nb, n_inner


def _window_torsion(cx, window, degree, use_augmentation, deficit):
    """Invariant factors of windowed cycles/boundaries, certified by SNF.

    Only available at desk scale; the window must keep the chain count
    under the torsion column limit.
    """
    if degree > cx.rank:
        return ()
    inner = window.bounds
    n_chain = _Box(inner).size * len(cx.bases[degree])
    if n_chain > _TORSION_COLUMN_LIMIT:
        return None
    if degree == 0:
        src_box = _Box(inner)
        a_cols = [(exps, 0) for _, exps in src_box.iter_encoded()]
        if use_augmentation:
            rows = []
            if cx.augmentation_kind == MULTIPLICATION:
                n = cx.group.ring.ngens
                folded_keys = sorted(
                    {tuple(e[i] + e[i + n] for i in range(n)) for e, _ in a_cols}
                )
                fold_pos = {k: i for i, k in enumerate(folded_keys)}
                rows = [[0] * len(a_cols) for _ in folded_keys]
                for j, (exps, _) in enumerate(a_cols):
                    folded = tuple(exps[i] + exps[i + n] for i in range(n))
                    rows[fold_pos[folded]][j] = 1
            elif cx.augmentation_kind == COUNIT:
                kinds = cx.ring.kinds
                rows = [[
                    1 if all(e == 0 or k == LAURENT for e, k in zip(exps, kinds)) else 0
                    for exps, _ in a_cols
                ]]
            cycles = kernel_basis(IntMatrix([r for r in rows], len(a_cols)))
        else:
            cycles = [
                [1 if i == j else 0 for i in range(len(a_cols))]
                for j in range(len(a_cols))
            ]
    else:
        a_mat, _, a_cols, _, _, _ = _windowed_matrix(cx, inner, degree, inner)
        cycles = kernel_basis(a_mat)
    if not cycles:
        return ()
    if degree >= cx.rank:
        boundary_vectors = []
    else:
        padded = window.padded_bounds(cx.ring)
        b_mat, b_rows, _, b_box, nb, n_inner = _windowed_matrix(
            cx, padded, degree + 1, inner
        )
        outer_rows = IntMatrix([b_mat.rows[i] for i in range(n_inner, b_mat.nrows)],
                               b_mat.ncols)
        if outer_rows.nrows:
            padded_kernel = kernel_basis(outer_rows)
        else:
            padded_kernel = [
                [1 if i == j else 0 for i in range(b_mat.ncols)]
                for j in range(b_mat.ncols)
            ]
        # express boundaries in inner chain coordinates
        chain_index = {key: i for i, key in enumerate(a_cols)}
        boundary_vectors = []
        for vec in padded_kernel:
            img = [0] * len(a_cols)
            ok = True
            for i in range(n_inner):
                total = sum(b_mat.rows[i][j] * vec[j] for j in range(b_mat.ncols))
                if total:
                    exps = b_box.decode(b_rows[i] // nb)
                    key = (exps, b_rows[i] % nb)
                    idx = chain_index.get(key)
                    if idx is None:
                        ok = False
                        break
                    img[idx] = total
            if ok and any(img):
                boundary_vectors.append(img)
    k_mat = IntMatrix([[cycles[j][i] for j in range(len(cycles))]
                       for i in range(len(a_cols))], len(cycles))
    if not boundary_vectors:
        return ()
    sols = solve_exact(k_mat, boundary_vectors)
    if sols is None:
        raise RuntimeError("boundary fell outside the saturated cycle lattice")
    x_mat = IntMatrix([[sols[j][i] for j in range(len(sols))]
                       for i in range(len(cycles))], len(sols))
    d, _, _ = smith_normal_form(x_mat)
    invariants = [x for x in d.diagonal() if x not in (0, 1)]
    return tuple(invariants)


# -- Tor rank tables ---------------------------------------------------------


@dataclass(frozen=True)
class TorRankTable:
    """Binomial rank row shared by Tor over R(G)(x)R(G) and Tor over R(G).

    Index k is the homological degree, displayed as -k; the first table
    is of free R(G)-modules, the second of free abelian groups.
    """

    group_rank: int
    ranks: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "group_rank": self.group_rank,
            "ranks": [
                {"degree": -k, "rank": r, "parity": "odd" if k % 2 else "even"}
                for k, r in enumerate(self.ranks)
            ],
        }


def tor_ranks(g: GroupModel) -> TorRankTable:
    r = g.rank
    return TorRankTable(r, tuple(comb(r, k) for k in range(r + 1)))


def tor_window_cross_check(g: GroupModel, bound: int = 1, max_degree: int | None = None) -> bool:
    """Check the Tor table against windowed homology of the tensored-down
    complexes, whose differentials all vanish."""
    table = tor_ranks(g)
    limit = min(g.rank, 2 if max_degree is None else max_degree)
    for cx in (build_koszul_resolution(g), build_augmentation_resolution(g)):
        down = tensored_down(cx)
        for layer in down.diffs.values():
            for elem in layer.values():
                if not elem.is_zero():
                    return False
        window = ExponentWindow.uniform(down.ring, bound, padding=max(1, differential_spread(down)))
        nmono = _Box(window.bounds).size
        for k in range(limit + 1):
            rep = window_homology(down, window, k)
            if rep.deficit != nmono * table.ranks[k]:
                return False
    return True
