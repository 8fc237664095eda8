"""The category of maps over a quiver algebra.

Objects are morphisms f: M1 -> M2 in mod Lambda, morphisms are commuting
squares.  The category is equivalent to modules over the triangular matrix
algebra of Lambda (both directions implemented and cross-checked), carries
the exact structure S whose admissible sequences have split kernel-,
source- and target-columns, and supports the relative homological algebra
of that structure: F-projective covers, resolutions of length at most two,
and relative Ext.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .algebra import AlgebraPresentation, TriangularAlgebra, triangular_matrix_algebra
from .modules import (
    Module,
    ModuleHom,
    cokernel,
    compose,
    decompose,
    direct_sum,
    hom_add,
    hom_basis,
    hom_scale,
    hom_through_epi,
    hom_into_sub,
    identity_hom,
    image,
    iso_between,
    kernel,
    quotient,
    unvectorize_hom,
    vectorize_hom,
    zero_hom,
    zero_module,
)


class MapObject:
    """An object of maps(mod Lambda): a morphism f: m1 -> m2."""

    def __init__(self, f: ModuleHom, name: str = ""):
        self.f = f
        self.m1 = f.source
        self.m2 = f.target
        self.algebra = f.source.algebra
        self.name = name

    @property
    def total_dim(self) -> int:
        return self.m1.total_dim + self.m2.total_dim

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"MapObject{tag} {self.m1.dims} -> {self.m2.dims}"


class MapMorphism:
    """A morphism of map objects: (h1, h2) with target.f h1 = h2 source.f."""

    def __init__(self, source: MapObject, target: MapObject, h1: ModuleHom, h2: ModuleHom, check: bool = True):
        self.source = source
        self.target = target
        self.h1 = h1
        self.h2 = h2
        if check:
            p = source.algebra.p
            lhs = compose(target.f, h1)
            rhs = compose(h2, source.f)
            if not all((a == b).all() for a, b in zip(lhs.mats, rhs.mats)):
                raise ValueError("the square does not commute")

    def is_zero(self) -> bool:
        return self.h1.is_zero() and self.h2.is_zero()

    def __repr__(self):
        return f"MapMorphism {self.source!r} => {self.target!r}"


# -- elementary morphism algebra ----------------------------------------------


def map_identity(x: MapObject) -> MapMorphism:
    return MapMorphism(x, x, identity_hom(x.m1), identity_hom(x.m2), check=False)


def map_zero(x: MapObject, y: MapObject) -> MapMorphism:
    return MapMorphism(x, y, zero_hom(x.m1, y.m1), zero_hom(x.m2, y.m2), check=False)


def map_compose(g: MapMorphism, f: MapMorphism) -> MapMorphism:
    return MapMorphism(
        f.source, g.target, compose(g.h1, f.h1), compose(g.h2, f.h2), check=False
    )


def map_add(f: MapMorphism, g: MapMorphism) -> MapMorphism:
    return MapMorphism(f.source, f.target, hom_add(f.h1, g.h1), hom_add(f.h2, g.h2), check=False)


def map_scale(c: int, f: MapMorphism) -> MapMorphism:
    return MapMorphism(f.source, f.target, hom_scale(c, f.h1), hom_scale(c, f.h2), check=False)


def map_equal(f: MapMorphism, g: MapMorphism) -> bool:
    return all(
        (a == b).all() for a, b in zip(f.h1.mats + f.h2.mats, g.h1.mats + g.h2.mats)
    )


def vectorize_map_morphism(f: MapMorphism) -> np.ndarray:
    return np.concatenate([vectorize_hom(f.h1), vectorize_hom(f.h2)])


def unvectorize_map_morphism(x: MapObject, y: MapObject, vec: np.ndarray) -> MapMorphism:
    n1 = sum(a * b for a, b in zip(x.m1.dims, y.m1.dims))
    h1 = unvectorize_hom(x.m1, y.m1, vec[:n1])
    h2 = unvectorize_hom(x.m2, y.m2, vec[n1:])
    return MapMorphism(x, y, h1, h2, check=False)


def identity_object(m: Module) -> MapObject:
    return MapObject(identity_hom(m), name=f"({m.name},{m.name},1)" if m.name else "")


def target_only(m: Module) -> MapObject:
    return MapObject(zero_hom(zero_module(m.algebra), m), name=f"(0,{m.name},0)" if m.name else "")


def source_only(m: Module) -> MapObject:
    return MapObject(zero_hom(m, zero_module(m.algebra)), name=f"({m.name},0,0)" if m.name else "")


def zero_map_object(algebra: AlgebraPresentation) -> MapObject:
    z = zero_module(algebra)
    return MapObject(zero_hom(z, z), name="0")


@dataclass
class MapSum:
    object: MapObject
    parts: List[MapObject]
    inclusions: List[MapMorphism]
    projections: List[MapMorphism]


def direct_sum_maps(algebra: AlgebraPresentation, parts: Sequence[MapObject], name: str = "") -> MapSum:
    s1 = direct_sum(algebra, [x.m1 for x in parts])
    s2 = direct_sum(algebra, [x.m2 for x in parts])
    p = algebra.p
    fmats = []
    for v in range(algebra.quiver.n_vertices):
        blocks = [x.f.mats[v] for x in parts]
        total = la.zeros(s2.module.dims[v], s1.module.dims[v])
        r = c = 0
        for b in blocks:
            total[r : r + b.shape[0], c : c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        fmats.append(total)
    obj = MapObject(ModuleHom(s1.module, s2.module, fmats, check=False), name=name)
    incls = [
        MapMorphism(parts[i], obj, s1.inclusions[i], s2.inclusions[i], check=False)
        for i in range(len(parts))
    ]
    projs = [
        MapMorphism(obj, parts[i], s1.projections[i], s2.projections[i], check=False)
        for i in range(len(parts))
    ]
    return MapSum(obj, list(parts), incls, projs)


# -- hom spaces ----------------------------------------------------------------


def hom_maps(x: MapObject, y: MapObject) -> List[MapMorphism]:
    """Canonical basis of the space of commuting squares x -> y."""
    alg = x.algebra
    p = alg.p
    q = alg.quiver
    nv = q.n_vertices
    sizes1 = [x.m1.dims[v] * y.m1.dims[v] for v in range(nv)]
    sizes2 = [x.m2.dims[v] * y.m2.dims[v] for v in range(nv)]
    off1 = np.concatenate([[0], np.cumsum(sizes1)])
    off2 = np.concatenate([[0], np.cumsum(sizes2)]) + off1[-1]
    total = int(off2[-1])
    if total == 0:
        return []
    rows = []

    def arrow_rows(src: Module, tgt: Module, offsets):
        for i, (_, s, t) in enumerate(q.arrows):
            block_rows = tgt.dims[t] * src.dims[s]
            if block_rows == 0:
                continue
            row = la.zeros(block_rows, total)
            row[:, offsets[s] : offsets[s] + src.dims[s] * tgt.dims[s]] = np.kron(
                tgt.mats[i], la.eye(src.dims[s])
            )
            row[:, offsets[t] : offsets[t] + src.dims[t] * tgt.dims[t]] = (
                row[:, offsets[t] : offsets[t] + src.dims[t] * tgt.dims[t]]
                - np.kron(la.eye(tgt.dims[t]), src.mats[i].T)
            ) % p
            rows.append(row)

    arrow_rows(x.m1, y.m1, off1[:-1])
    arrow_rows(x.m2, y.m2, off2[:-1])
    # interchange: y.f h1 = h2 x.f at every vertex
    for v in range(nv):
        block_rows = y.m2.dims[v] * x.m1.dims[v]
        if block_rows == 0:
            continue
        row = la.zeros(block_rows, total)
        row[:, off1[v] : off1[v] + sizes1[v]] = np.kron(y.f.mats[v], la.eye(x.m1.dims[v]))
        row[:, off2[v] : off2[v] + sizes2[v]] = (
            row[:, off2[v] : off2[v] + sizes2[v]]
            - np.kron(la.eye(y.m2.dims[v]), x.f.mats[v].T)
        ) % p
        rows.append(row)
    system = np.vstack(rows) if rows else la.zeros(0, total)
    kern = la.kernel_basis(system, p)
    return [unvectorize_map_morphism(x, y, kern[:, j]) for j in range(kern.shape[1])]


def map_hom_coordinates(mor: MapMorphism, basis: List[MapMorphism]) -> Optional[np.ndarray]:
    if not basis:
        return np.zeros(0, dtype=np.int64) if mor.is_zero() else None
    p = mor.source.algebra.p
    mat = np.stack([vectorize_map_morphism(b) for b in basis], axis=1)
    return la.solve(mat, vectorize_map_morphism(mor), p)


def maps_solve_through(q: MapMorphism, g: MapMorphism) -> Optional[MapMorphism]:
    """h with q o h = g, for g landing where q lands; None if impossible."""
    basis = hom_maps(g.source, q.source)
    if not basis:
        return None if not g.is_zero() else map_zero(g.source, q.source)
    p = g.source.algebra.p
    cols = np.stack([vectorize_map_morphism(map_compose(q, b)) for b in basis], axis=1)
    coords = la.solve(cols, vectorize_map_morphism(g), p)
    if coords is None:
        return None
    out = map_zero(g.source, q.source)
    for c, b in zip(coords, basis):
        out = map_add(out, map_scale(int(c), b))
    return out


def maps_solve_past(u: MapMorphism, g: MapMorphism) -> Optional[MapMorphism]:
    """h with h o u = g, extending g along u; None if impossible."""
    basis = hom_maps(u.target, g.target)
    if not basis:
        return None if not g.is_zero() else map_zero(u.target, g.target)
    p = g.source.algebra.p
    cols = np.stack([vectorize_map_morphism(map_compose(b, u)) for b in basis], axis=1)
    coords = la.solve(cols, vectorize_map_morphism(g), p)
    if coords is None:
        return None
    out = map_zero(u.target, g.target)
    for c, b in zip(coords, basis):
        out = map_add(out, map_scale(int(c), b))
    return out


# -- the triangular matrix algebra bridge --------------------------------------


def gamma_of(algebra: AlgebraPresentation) -> TriangularAlgebra:
    if "gamma" not in algebra._cache:
        algebra._cache["gamma"] = triangular_matrix_algebra(algebra)
    return algebra._cache["gamma"]


def to_gamma_module(x: MapObject) -> Module:
    tri = gamma_of(x.algebra)
    n = x.algebra.quiver.n_vertices
    dims = list(x.m1.dims) + list(x.m2.dims)
    mats = [None] * len(tri.algebra.quiver.arrows)
    for i in range(len(x.algebra.quiver.arrows)):
        mats[tri.copy1_arrows[i]] = x.m1.mats[i]
        mats[tri.copy2_arrows[i]] = x.m2.mats[i]
    for v in range(n):
        mats[tri.connecting[v]] = x.f.mats[v]
    return Module(tri.algebra, dims, mats, name=x.name)


def from_gamma_module(tri: TriangularAlgebra, g: Module) -> MapObject:
    base = tri.base
    n = base.quiver.n_vertices
    m1 = Module(base, g.dims[:n], [g.mats[i] for i in tri.copy1_arrows])
    m2 = Module(base, g.dims[n:], [g.mats[i] for i in tri.copy2_arrows])
    f = ModuleHom(m1, m2, [g.mats[tri.connecting[v]] for v in range(n)])
    return MapObject(f, name=g.name)


def decompose_map_object(x: MapObject, seed: int = 0) -> List[Tuple[MapObject, MapMorphism, MapMorphism]]:
    """Indecomposable summands of x, found on the triangular-algebra side."""
    tri = gamma_of(x.algebra)
    g = to_gamma_module(x)
    out = []
    for part, incl, proj in decompose(g, seed):
        y = from_gamma_module(tri, part)
        n = x.algebra.quiver.n_vertices
        i1 = ModuleHom(y.m1, x.m1, incl.mats[:n], check=False)
        i2 = ModuleHom(y.m2, x.m2, incl.mats[n:], check=False)
        p1 = ModuleHom(x.m1, y.m1, proj.mats[:n], check=False)
        p2 = ModuleHom(x.m2, y.m2, proj.mats[n:], check=False)
        out.append(
            (y, MapMorphism(y, x, i1, i2, check=False), MapMorphism(x, y, p1, p2, check=False))
        )
    return out


def map_iso_between(x: MapObject, y: MapObject) -> Optional[MapMorphism]:
    g = iso_between(to_gamma_module(x), to_gamma_module(y))
    if g is None:
        return None
    n = x.algebra.quiver.n_vertices
    h1 = ModuleHom(x.m1, y.m1, g.mats[:n], check=False)
    h2 = ModuleHom(x.m2, y.m2, g.mats[n:], check=False)
    return MapMorphism(x, y, h1, h2, check=False)


def indec_map_kind(x: MapObject) -> str:
    """Classify an indecomposable map object by its structure map.

    'contractible' for (M,M,1)-type, 'source_only' for (M,0,0)-type,
    'target_only' for (0,M,0)-type, 'generic' otherwise.  Only the first
    two are killed by the cokernel functor.
    """
    p = x.algebra.p
    if x.m2.is_zero():
        return "source_only" if not x.m1.is_zero() else "zero"
    if x.m1.is_zero():
        return "target_only"
    if x.m1.dims == x.m2.dims and all(la.invert(m, p) is not None for m in x.f.mats):
        return "contractible"
    return "generic"


def minimize_presentation(x: MapObject, seed: int = 0) -> MapObject:
    """Split off and drop all contractible and source-only summands.

    The cokernel functor does not see them, so the result presents the
    same functor; what remains is the minimal presentation.
    """
    parts = decompose_map_object(x, seed)
    keep = [y for y, _, _ in parts if indec_map_kind(y) in ("generic", "target_only")]
    if not keep:
        return zero_map_object(x.algebra)
    if len(keep) == 1:
        out = keep[0]
        out.name = x.name
        return out
    out = direct_sum_maps(x.algebra, keep).object
    out.name = x.name
    return out


# -- homotopies and the cokernel functor ---------------------------------------


def null_homotopic_basis(x: MapObject, y: MapObject) -> List[MapMorphism]:
    """Basis of the morphisms killed by the cokernel functor.

    These are the (h1, h2) with h2 = y.f o s for some s: x.m2 -> y.m1;
    they decompose as (s x.f, y.f s) plus pairs (k, 0) with y.f k = 0.
    """
    p = x.algebra.p
    cands: List[MapMorphism] = []
    for s in hom_basis(x.m2, y.m1):
        cands.append(
            MapMorphism(x, y, compose(s, x.f), compose(y.f, s), check=False)
        )
    kbasis = hom_basis(x.m1, y.m1)
    if kbasis:
        cols = np.stack([vectorize_hom(compose(y.f, k)) for k in kbasis], axis=1)
        kern = la.kernel_basis(cols, p)
        for j in range(kern.shape[1]):
            k = None
            for c, b in zip(kern[:, j], kbasis):
                piece = hom_scale(int(c), b)
                k = piece if k is None else hom_add(k, piece)
            cands.append(MapMorphism(x, y, k, zero_hom(x.m2, y.m2), check=False))
    if not cands:
        return []
    mat = np.stack([vectorize_map_morphism(c) for c in cands], axis=1)
    # keep an independent subset, in construction order
    _, pivots = la.rref(mat, p)
    return [cands[j] for j in pivots]


def homotopy_quotient_dim(x: MapObject, y: MapObject) -> int:
    """dim Hom(x,y) modulo homotopy; equals Hom of the induced functors."""
    full = hom_maps(x, y)
    null = null_homotopic_basis(x, y)
    return len(full) - len(null)


def phi_dim_at(x: MapObject, t: Module) -> int:
    """Dimension of the cokernel functor of x evaluated at t."""
    p = x.algebra.p
    into = hom_basis(t, x.m1)
    target = hom_basis(t, x.m2)
    if not target:
        return 0
    if not into:
        return len(target)
    cols = np.stack([vectorize_hom(compose(x.f, h)) for h in into], axis=1)
    return len(target) - la.rank(cols, p)


def phi_op_dim_at(x: MapObject, t: Module) -> int:
    """The dual construction: coker(Hom(m2,t) -> Hom(m1,t)) at t."""
    p = x.algebra.p
    frm = hom_basis(x.m2, t)
    target = hom_basis(x.m1, t)
    if not target:
        return 0
    if not frm:
        return len(target)
    cols = np.stack([vectorize_hom(compose(h, x.f)) for h in frm], axis=1)
    return len(target) - la.rank(cols, p)


# -- exact structure -----------------------------------------------------------


def split_epi_section(v: ModuleHom) -> Optional[ModuleHom]:
    """A section s with v o s = 1, or None."""
    basis = hom_basis(v.target, v.source)
    if not basis:
        return identity_hom(v.target) if v.target.is_zero() else None
    p = v.source.algebra.p
    cols = np.stack([vectorize_hom(compose(v, b)) for b in basis], axis=1)
    coords = la.solve(cols, vectorize_hom(identity_hom(v.target)), p)
    if coords is None:
        return None
    out = zero_hom(v.target, v.source)
    for c, b in zip(coords, basis):
        out = hom_add(out, hom_scale(int(c), b))
    return out


def split_mono_retraction(u: ModuleHom) -> Optional[ModuleHom]:
    """A retraction r with r o u = 1, or None."""
    basis = hom_basis(u.target, u.source)
    if not basis:
        return identity_hom(u.source) if u.source.is_zero() else None
    p = u.source.algebra.p
    cols = np.stack([vectorize_hom(compose(b, u)) for b in basis], axis=1)
    coords = la.solve(cols, vectorize_hom(identity_hom(u.source)), p)
    if coords is None:
        return None
    out = zero_hom(u.target, u.source)
    for c, b in zip(coords, basis):
        out = hom_add(out, hom_scale(int(c), b))
    return out


def is_short_exact(u: ModuleHom, v: ModuleHom) -> bool:
    """Exactness of 0 -> A -u-> B -v-> C -> 0 over the algebra."""
    p = u.source.algebra.p
    for x in range(len(u.mats)):
        if la.rank(u.mats[x], p) != u.source.dims[x]:
            return False
        if la.rank(v.mats[x], p) != v.target.dims[x]:
            return False
    comp = compose(v, u)
    if not comp.is_zero():
        return False
    return all(
        u.source.dims[x] + v.target.dims[x] == u.target.dims[x]
        for x in range(len(u.mats))
    )


def structure_kernel(x: MapObject) -> Tuple[Module, ModuleHom]:
    """ker(x.f) with its inclusion into x.m1."""
    return kernel(x.f)


@dataclass
class SExactness:
    """Verdict of membership in the exact structure S.

    The three columns of the kernel diagram are the kernel column
    0 -> ker g -> ker h -> ker f -> 0 and the two level columns; membership
    requires the kernel column to be exact and all three to split.
    """

    rows_exact: bool
    kernel_column_exact: bool
    columns_split: Tuple[bool, bool, bool]  # kernel, level-1, level-2
    verdict: bool


def induced_kernel_hom(mor: MapMorphism, src_ker: Tuple[Module, ModuleHom], tgt_ker: Tuple[Module, ModuleHom]) -> ModuleHom:
    """Restriction of mor.h1 to the structure kernels."""
    k_src, incl_src = src_ker
    _, incl_tgt = tgt_ker
    return hom_into_sub(incl_tgt, compose(mor.h1, incl_src))


def is_S_exact(u: MapMorphism, v: MapMorphism) -> SExactness:
    """Test a short exact pair of map-object morphisms for membership in S.

    Raises when the two level rows are not short exact (precondition);
    everything else is reported in the verdict.
    """
    if not (is_short_exact(u.h1, v.h1) and is_short_exact(u.h2, v.h2)):
        raise ValueError("the given pair is not a short exact sequence")
    kn = structure_kernel(u.source)
    ke = structure_kernel(v.source)
    km = structure_kernel(v.target)
    k_in = induced_kernel_hom(u, kn, ke)
    k_out = induced_kernel_hom(v, ke, km)
    kernel_exact = is_short_exact(k_in, k_out)
    splits = (
        kernel_exact and split_epi_section(k_out) is not None,
        split_epi_section(v.h1) is not None,
        split_epi_section(v.h2) is not None,
    )
    verdict = kernel_exact and all(splits)
    return SExactness(True, kernel_exact, splits, verdict)


def maps_sequence_splits(u: MapMorphism, v: MapMorphism) -> bool:
    """Whether 0 -> y -u-> e -v-> x -> 0 splits in the maps category."""
    section = maps_solve_through(v, map_identity(v.target))
    return section is not None


# -- F-projective covers and relative Ext ---------------------------------------


@dataclass
class FCover:
    cover: MapObject
    epi: MapMorphism
    tags: List[str]  # one per retained structural summand


def f_projective_cover(x: MapObject, minimize: bool = False) -> FCover:
    """An S-admissible epi onto x from an F-projective.

    Built from three structural summands: (ker f, 0, 0), (m1, m1, 1) and
    (0, m2, 0); zero summands are dropped.  With minimize=True, summands
    are further trimmed greedily as long as the restricted epi stays
    S-admissible.
    """
    alg = x.algebra
    k, k_incl = structure_kernel(x)
    pieces: List[Tuple[str, MapObject, MapMorphism]] = []
    if not k.is_zero():
        src = source_only(k)
        pieces.append(("kernel", src, MapMorphism(src, x, k_incl, zero_hom(src.m2, x.m2), check=False)))
    if not x.m1.is_zero():
        ident = identity_object(x.m1)
        pieces.append(("identity", ident, MapMorphism(ident, x, identity_hom(x.m1), x.f, check=False)))
    if not x.m2.is_zero():
        tgt = target_only(x.m2)
        pieces.append(("target", tgt, MapMorphism(tgt, x, zero_hom(tgt.m1, x.m1), identity_hom(x.m2), check=False)))
    if minimize:
        pieces = _trim_cover_pieces(x, pieces)
    if not pieces:
        z = zero_map_object(alg)
        return FCover(z, map_zero(z, x), [])
    sum_data = direct_sum_maps(alg, [obj for _, obj, _ in pieces])
    epi = None
    for i, (_, _, comp) in enumerate(pieces):
        term = map_compose(comp, sum_data.projections[i])
        epi = term if epi is None else map_add(epi, term)
    epi = MapMorphism(sum_data.object, x, epi.h1, epi.h2, check=True)
    _assert_admissible_epi(epi)
    tags = [tag for tag, _, _ in pieces]
    if minimize and sum_data.object.total_dim == x.total_dim:
        # the trimmed epi is an iso, so x was F-projective already
        return FCover(x, map_identity(x), tags)
    return FCover(sum_data.object, epi, tags)


def _epi_is_admissible(epi: MapMorphism) -> bool:
    p = epi.source.algebra.p
    for h in (epi.h1, epi.h2):
        for v in range(len(h.mats)):
            if la.rank(h.mats[v], p) != h.target.dims[v]:
                return False
    ker_obj, ker_incl = morphism_kernel(epi)
    verdict = is_S_exact(ker_incl, epi)
    return verdict.verdict


def _assert_admissible_epi(epi: MapMorphism):
    if not _epi_is_admissible(epi):
        raise AssertionError("constructed cover epi is not S-admissible")


def _trim_cover_pieces(x, pieces):
    """Greedily drop indecomposable cover summands while the epi stays
    S-admissible, preferring to drop later tags first."""
    expanded = []
    for tag, obj, comp in pieces:
        for part, incl, _ in decompose_map_object(obj):
            expanded.append((tag, part, map_compose(comp, incl)))
    changed = True
    while changed:
        changed = False
        for i in range(len(expanded) - 1, -1, -1):
            trial = expanded[:i] + expanded[i + 1 :]
            if not trial:
                if x.is_zero():
                    return []
                continue
            sum_data = direct_sum_maps(x.algebra, [obj for _, obj, _ in trial])
            epi = None
            for j, (_, _, comp) in enumerate(trial):
                term = map_compose(comp, sum_data.projections[j])
                epi = term if epi is None else map_add(epi, term)
            if _epi_is_admissible(epi):
                expanded = trial
                changed = True
                break
    return expanded


def morphism_kernel(mor: MapMorphism) -> Tuple[MapObject, MapMorphism]:
    """Kernel of a morphism of map objects, with its inclusion."""
    k1, incl1 = kernel(mor.h1)
    k2, incl2 = kernel(mor.h2)
    struct = hom_into_sub(incl2, compose(mor.source.f, incl1))
    kobj = MapObject(struct)
    return kobj, MapMorphism(kobj, mor.source, incl1, incl2, check=False)


def morphism_image(mor: MapMorphism) -> Tuple[MapObject, MapMorphism, MapMorphism]:
    """Image object with inclusion into the target and epi from the source."""
    i1, incl1, epi1 = image(mor.h1)
    i2, incl2, epi2 = image(mor.h2)
    struct = hom_into_sub(incl2, compose(mor.target.f, incl1))
    iobj = MapObject(struct)
    return (
        iobj,
        MapMorphism(iobj, mor.target, incl1, incl2, check=False),
        MapMorphism(mor.source, iobj, epi1, epi2, check=False),
    )


def morphism_cokernel(mor: MapMorphism) -> Tuple[MapObject, MapMorphism]:
    """Cokernel of a morphism of map objects, with its projection."""
    c1, proj1 = cokernel(mor.h1)
    c2, proj2 = cokernel(mor.h2)
    struct = hom_through_epi(proj1, compose(proj2, mor.target.f))
    cobj = MapObject(struct)
    return cobj, MapMorphism(mor.target, cobj, proj1, proj2, check=False)


@dataclass
class FResolution:
    """F-projective resolution Q2 -> Q1 -> Q0 -> x (length at most 2)."""

    x: MapObject
    covers: List[FCover]
    diffs: List[MapMorphism]  # diffs[i]: covers[i+1] -> covers[i]


def f_resolution(x: MapObject) -> FResolution:
    covers = []
    diffs = []
    cur = x
    cover = f_projective_cover(cur)
    covers.append(cover)
    for _ in range(3):
        ker_obj, ker_incl = morphism_kernel(covers[-1].epi)
        if ker_obj.is_zero():
            break
        nxt = f_projective_cover(ker_obj)
        diffs.append(map_compose(ker_incl, nxt.epi))
        covers.append(nxt)
    else:
        raise AssertionError("relative resolution did not stop within length 2")
    return FResolution(x, covers, diffs)


def _map_hom_matrix(d: MapMorphism, source_basis: List[MapMorphism], target_basis: List[MapMorphism]) -> np.ndarray:
    """Matrix of (- o d): Hom(d.target, y) -> Hom(d.source, y)."""
    p = d.source.algebra.p
    if not target_basis:
        return la.zeros(0, len(source_basis))
    mat = np.stack([vectorize_map_morphism(b) for b in target_basis], axis=1)
    cols = []
    for b in source_basis:
        coords = la.solve(mat, vectorize_map_morphism(map_compose(b, d)), p)
        assert coords is not None
        cols.append(coords)
    return np.stack(cols, axis=1) if cols else la.zeros(len(target_basis), 0)


def relative_ext_dim(x: MapObject, y: MapObject, k: int) -> int:
    """dim Ext_F^k(x, y) for k in {1, 2}, from the F-projective resolution."""
    if k not in (1, 2):
        raise ValueError("relative Ext implemented for k = 1, 2 only")
    res = f_resolution(x)
    p = x.algebra.p
    bases = [hom_maps(c.cover, y) for c in res.covers]
    while len(bases) < k + 2:
        bases.append([])
    diffs = list(res.diffs)
    while len(diffs) < k + 1:
        src = res.covers[len(diffs) + 1].cover if len(diffs) + 1 < len(res.covers) else zero_map_object(x.algebra)
        tgt = res.covers[len(diffs)].cover if len(diffs) < len(res.covers) else zero_map_object(x.algebra)
        diffs.append(map_zero(src, tgt))
    mat_in = _map_hom_matrix(diffs[k - 1], bases[k - 1], bases[k])
    mat_out = _map_hom_matrix(diffs[k], bases[k], bases[k + 1])
    ker_dim = len(bases[k]) - la.rank(mat_out, p)
    return ker_dim - la.rank(mat_in, p)


# -- extensions from cocycles (independent Ext^1 oracle) ------------------------


@dataclass
class Ext1Data:
    """Cocycle description of Ext_F^1(x, y).

    cocycles is a basis of Hom(N0, y) for N0 the first relative syzygy;
    a cocycle's class is zero exactly when it lies in the column space of
    coboundary_matrix (restrictions of Hom(Q0, y)).  dim Ext_F^1 =
    len(cocycles) - rank(coboundary_matrix).
    """

    x: MapObject
    y: MapObject
    cover: FCover
    syzygy: MapObject
    syzygy_incl: MapMorphism
    cocycles: List[MapMorphism]
    coboundary_matrix: np.ndarray

    @property
    def dim(self) -> int:
        p = self.x.algebra.p
        return len(self.cocycles) - la.rank(self.coboundary_matrix, p)

    def class_is_zero(self, cocycle: MapMorphism) -> bool:
        coords = map_hom_coordinates(cocycle, self.cocycles)
        assert coords is not None
        if self.coboundary_matrix.shape[1] == 0:
            return not coords.any()
        return la.solve(self.coboundary_matrix, coords, self.x.algebra.p) is not None


def ext1_data(x: MapObject, y: MapObject) -> Ext1Data:
    cover = f_projective_cover(x)
    n0, incl = morphism_kernel(cover.epi)
    cocycles = hom_maps(n0, y)
    from_q0 = hom_maps(cover.cover, y)
    if cocycles:
        cols = []
        for h in from_q0:
            coords = map_hom_coordinates(map_compose(h, incl), cocycles)
            assert coords is not None
            cols.append(coords)
        mat = np.stack(cols, axis=1) if cols else la.zeros(len(cocycles), 0)
    else:
        mat = la.zeros(0, len(from_q0))
    return Ext1Data(x, y, cover, n0, incl, cocycles, mat)


def pushout_extension(data: Ext1Data, cocycle: MapMorphism) -> Tuple[MapObject, MapMorphism, MapMorphism]:
    """The extension 0 -> y -> E -> x -> 0 given by a cocycle N0 -> y.

    Pushout of the cover sequence along the cocycle, built levelwise as
    (y (+) Q0) / {(phi n, -n)}.
    """
    x, y = data.x, data.y
    alg = x.algebra
    p = alg.p
    cover = data.cover
    levels = []
    for phi, incl, ymod, qmod in (
        (cocycle.h1, data.syzygy_incl.h1, y.m1, cover.cover.m1),
        (cocycle.h2, data.syzygy_incl.h2, y.m2, cover.cover.m2),
    ):
        sd = direct_sum(alg, [ymod, qmod])
        w_bases = []
        for v in range(alg.quiver.n_vertices):
            stacked = np.vstack([phi.mats[v], (-incl.mats[v]) % p])
            w_bases.append(la.column_space_basis(stacked, p))
        quot, proj = quotient(sd.module, w_bases)
        levels.append((sd, proj))
    (sd1, pr1), (sd2, pr2) = levels
    big_struct_mats = []
    for v in range(alg.quiver.n_vertices):
        blk = la.zeros(sd2.module.dims[v], sd1.module.dims[v])
        blk[: y.m2.dims[v], : y.m1.dims[v]] = y.f.mats[v]
        blk[y.m2.dims[v] :, y.m1.dims[v] :] = cover.cover.f.mats[v]
        big_struct_mats.append(blk)
    big_struct = ModuleHom(sd1.module, sd2.module, big_struct_mats, check=False)
    e_struct = hom_through_epi(pr1, compose(pr2, big_struct))
    e_obj = MapObject(e_struct)
    incl_y = MapMorphism(
        y, e_obj, compose(pr1, sd1.inclusions[0]), compose(pr2, sd2.inclusions[0]), check=True
    )
    raw1 = compose(cover.epi.h1, sd1.projections[1])
    raw2 = compose(cover.epi.h2, sd2.projections[1])
    proj_x = MapMorphism(
        e_obj, x, hom_through_epi(pr1, raw1), hom_through_epi(pr2, raw2), check=True
    )
    return e_obj, incl_y, proj_x


# -- complexes of projectives ---------------------------------------------------


class ProjComplex:
    """A bounded complex A_n -> ... -> A_1 -> A_0 (degree 0 last).

    modules[k] is the degree-k term; diffs[k]: modules[k+1] -> modules[k].
    Composites of consecutive differentials must vanish; the stronger
    resolution invariant (exactness of Hom(X, -) in degrees > 0) is
    checked against a corpus by validate_hom_exactness.
    """

    def __init__(self, modules: Sequence[Module], diffs: Sequence[ModuleHom]):
        if len(diffs) != len(modules) - 1:
            raise ValueError("need one differential between consecutive terms")
        self.modules = list(modules)
        self.diffs = list(diffs)
        for k in range(len(self.diffs) - 1):
            if not compose(self.diffs[k], self.diffs[k + 1]).is_zero():
                raise ValueError("consecutive differentials do not compose to zero")

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def __repr__(self):
        return "ProjComplex " + " <- ".join(str(m.dims) for m in self.modules)


def validate_hom_exactness(cpx: ProjComplex, corpus: Sequence[Module]) -> bool:
    """The resolution invariant: (X, cpx) exact in all degrees > 0."""
    p = cpx.modules[0].algebra.p
    n = cpx.length
    if n == 0:
        return True
    for x in corpus:
        prev_rank = None
        for k in range(n, 0, -1):
            basis_k = hom_basis(x, cpx.modules[k])
            down = cpx.diffs[k - 1]
            cols = [vectorize_hom(compose(down, h)) for h in basis_k]
            mat = np.stack(cols, axis=1) if cols else la.zeros(0, 0)
            rank_down = la.rank(mat, p) if mat.size else 0
            ker_dim = len(basis_k) - rank_down
            incoming = prev_rank if prev_rank is not None else 0
            if k == n:
                if ker_dim != 0:  # top differential must be injective on (X,-)
                    return False
            elif ker_dim != incoming:
                return False
            prev_rank = rank_down
        # no condition at degree 0
    return True


def theta_presentation(cpx: ProjComplex) -> MapObject:
    """The map object presenting the functor of the complex."""
    if cpx.length == 0:
        return target_only(cpx.modules[0])
    return MapObject(cpx.diffs[0])


def relative_syzygy(cpx: ProjComplex, i: int) -> ProjComplex:
    """Truncation dropping degrees 0..i.

    relative_syzygy(p, 0) is the first syzygy (bottom term removed).
    """
    n = cpx.length
    if not 0 <= i <= n - 1:
        raise ValueError(f"syzygy index must lie in [0, {n - 1}]")
    return ProjComplex(cpx.modules[i + 1 :], cpx.diffs[i + 1 :])


def disk_cover(cpx: ProjComplex):
    """The relative projective cover of a complex: disks plus a stalk.

    Degree k < n gets A_{k+1} (+) A_k with shift differentials; degree n
    gets A_n alone.  The covering chain map is (d_{k+1}, 1) degreewise.
    """
    alg = cpx.modules[0].algebra
    n = cpx.length
    if n == 0:
        m = cpx.modules[0]
        return ProjComplex([m], []), [identity_hom(m)], None
    sums = [direct_sum(alg, [cpx.modules[k + 1], cpx.modules[k]]) for k in range(n)]
    q_modules = [sums[k].module for k in range(n)] + [cpx.modules[n]]
    q_diffs = []
    for k in range(1, n):
        # (a_{k+1}, a_k) |-> (a_k, 0)
        q_diffs.append(compose(sums[k - 1].inclusions[0], sums[k].projections[1]))
    q_diffs.append(sums[n - 1].inclusions[0])
    pis = []
    for k in range(n):
        pi = hom_add(
            compose(cpx.diffs[k], sums[k].projections[0]), sums[k].projections[1]
        )
        pis.append(pi)
    pis.append(identity_hom(cpx.modules[n]))
    return ProjComplex(q_modules, q_diffs), pis, sums


def _chain_maps_basis(src: ProjComplex, tgt: ProjComplex) -> List[List[ModuleHom]]:
    """Basis of chain maps src -> tgt (equal lengths assumed)."""
    alg = src.modules[0].algebra
    p = alg.p
    q = alg.quiver
    nv = q.n_vertices
    n = src.length
    assert tgt.length == n
    blocks = []  # (degree, vertex) -> (offset, rows=tgt dim, cols=src dim)
    offset = 0
    index = {}
    for k in range(n + 1):
        for v in range(nv):
            size = src.modules[k].dims[v] * tgt.modules[k].dims[v]
            index[(k, v)] = (offset, tgt.modules[k].dims[v], src.modules[k].dims[v])
            offset += size
    total = offset
    if total == 0:
        return []
    rows = []
    for k in range(n + 1):
        sm, tm = src.modules[k], tgt.modules[k]
        for i, (_, s, t) in enumerate(q.arrows):
            brows = tm.dims[t] * sm.dims[s]
            if brows == 0:
                continue
            row = la.zeros(brows, total)
            off_s, _, _ = index[(k, s)]
            off_t, _, _ = index[(k, t)]
            row[:, off_s : off_s + sm.dims[s] * tm.dims[s]] = np.kron(tm.mats[i], la.eye(sm.dims[s]))
            row[:, off_t : off_t + sm.dims[t] * tm.dims[t]] = (
                row[:, off_t : off_t + sm.dims[t] * tm.dims[t]]
                - np.kron(la.eye(tm.dims[t]), sm.mats[i].T)
            ) % p
            rows.append(row)
    for k in range(1, n + 1):
        # tgt.diff sigma_k = sigma_{k-1} src.diff at every vertex
        for v in range(nv):
            brows = tgt.modules[k - 1].dims[v] * src.modules[k].dims[v]
            if brows == 0:
                continue
            row = la.zeros(brows, total)
            off_k, _, _ = index[(k, v)]
            off_km, _, _ = index[(k - 1, v)]
            sz_k = src.modules[k].dims[v] * tgt.modules[k].dims[v]
            sz_km = src.modules[k - 1].dims[v] * tgt.modules[k - 1].dims[v]
            row[:, off_k : off_k + sz_k] = np.kron(tgt.diffs[k - 1].mats[v], la.eye(src.modules[k].dims[v]))
            row[:, off_km : off_km + sz_km] = (
                row[:, off_km : off_km + sz_km]
                - np.kron(la.eye(tgt.modules[k - 1].dims[v]), src.diffs[k - 1].mats[v].T)
            ) % p
            rows.append(row)
    system = np.vstack(rows) if rows else la.zeros(0, total)
    kern = la.kernel_basis(system, p)
    out = []
    for j in range(kern.shape[1]):
        vec = kern[:, j]
        sigma = []
        for k in range(n + 1):
            mats = []
            for v in range(nv):
                off, r, c = index[(k, v)]
                mats.append(vec[off : off + r * c].reshape(r, c))
            sigma.append(ModuleHom(src.modules[k], tgt.modules[k], mats, check=False))
        out.append(sigma)
    return out


def _cover_splits(cpx: ProjComplex) -> bool:
    """Does the disk cover of cpx admit a chain section?"""
    qcpx, pis, _ = disk_cover(cpx)
    if cpx.length == 0:
        return True
    p = cpx.modules[0].algebra.p
    basis = _chain_maps_basis(cpx, qcpx)
    if not basis:
        return all(m.is_zero() for m in cpx.modules)
    cols = []
    for sigma in basis:
        comp = [compose(pis[k], sigma[k]) for k in range(cpx.length + 1)]
        cols.append(np.concatenate([vectorize_hom(h) for h in comp]))
    target = np.concatenate([vectorize_hom(identity_hom(m)) for m in cpx.modules])
    return la.solve(np.stack(cols, axis=1), target, p) is not None


def rpdim(cpx: ProjComplex) -> int:
    """Relative projective dimension, by iterated syzygy truncation."""
    cur = cpx
    r = 0
    while True:
        if _cover_splits(cur):
            return r
        if cur.length == 0:
            raise AssertionError("stalk complex failed to split off its cover")
        cur = ProjComplex(cur.modules[1:], cur.diffs[1:])
        r += 1
        if r > cpx.length + 1:
            raise ArithmeticError("relative dimension loop exceeded the length bound")
