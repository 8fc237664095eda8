"""Finitely presented functors on mod Lambda.

A functor F is presented by a map object f: M1 -> M2; its value at X is
coker(Hom(X, M1) -> Hom(X, M2)).  Three layers live here:

* evaluation of presented functors and of the natural transformations
  induced by morphisms of map objects,
* a realization of the functor category as modules over the endomorphism
  algebra of the additive generator (presented from the AR quiver), used
  as an independent oracle for almost split sequences, Ext and tilting,
* tilting checks and the approximation constructions in the maps
  category, certified against explicit corpora of test objects.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .algebra import AlgebraPresentation, algebra_from_spec
from .modules import (
    CertificationError,
    Module,
    ModuleHom,
    cokernel,
    compose,
    decompose,
    direct_sum,
    end_radical,
    hom_add,
    hom_basis,
    hom_coordinates,
    hom_scale,
    identity_hom,
    image,
    indecomposable_projective,
    injective_envelope,
    is_projective_indec,
    kernel,
    modules_isomorphic,
    projective_cover,
    radical_submodule,
    vectorize_hom,
    zero_hom,
)
from .maps import (
    MapMorphism,
    MapObject,
    ProjComplex,
    decompose_map_object,
    direct_sum_maps,
    from_gamma_module,
    gamma_of,
    hom_maps,
    identity_object,
    is_S_exact,
    map_add,
    map_compose,
    map_identity,
    map_iso_between,
    map_scale,
    map_zero,
    maps_solve_past,
    maps_solve_through,
    minimize_presentation,
    morphism_cokernel,
    relative_ext_dim,
    source_only,
    structure_kernel,
    target_only,
    theta_presentation,
    zero_map_object,
)
from .ar import (
    ArQuiver,
    ShortExactSeq,
    almost_split_ending_at,
    is_almost_split,
    knit_ar_quiver,
    s_theorem_hypothesis,
    seq_of_modules,
)


# -- evaluation ------------------------------------------------------------------


@dataclass
class EvalData:
    """Coker(Hom(X,M1) -> Hom(X,M2)) with coordinates.

    proj maps Hom(X,M2)-coordinates onto F(X)-coordinates; section is a
    right inverse of proj, picking representatives.
    """

    dim: int
    into_source: List[ModuleHom]
    into_target: List[ModuleHom]
    action: np.ndarray
    proj: np.ndarray
    section: np.ndarray


def _eval_at(x: MapObject, t: Module) -> EvalData:
    p = x.algebra.p
    b1 = hom_basis(t, x.m1)
    b2 = hom_basis(t, x.m2)
    cols = []
    for b in b1:
        coords = hom_coordinates(compose(x.f, b), b2)
        cols.append(coords)
    action = np.stack(cols, axis=1) if cols else la.zeros(len(b2), 0)
    proj = la.kernel_basis(action.T, p).T
    dim = proj.shape[0]
    section = la.zeros(len(b2), dim)
    for i in range(dim):
        e = la.zeros(dim, 1)[:, 0]
        e[i] = 1
        sol = la.solve(proj, e, p)
        assert sol is not None, "projection lost full row rank"
        section[:, i] = sol
    return EvalData(dim, b1, b2, action, proj, section)


class FpFunctor:
    """A finitely presented functor, stored by a minimal presentation."""

    def __init__(self, presentation: MapObject, name: str = "", seed: int = 0):
        self.presentation = minimize_presentation(presentation, seed)
        self.algebra = presentation.algebra
        self.name = name
        self._eval: Dict[int, EvalData] = {}

    def eval_data(self, t: Module) -> EvalData:
        key = id(t)
        if key not in self._eval:
            self._eval[key] = _eval_at(self.presentation, t)
        return self._eval[key]

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        q = self.presentation
        return f"FpFunctor{tag} {q.m1.dims} -> {q.m2.dims}"


def evaluate(f: FpFunctor, x: Module) -> int:
    return f.eval_data(x).dim


def functor_is_zero(f: FpFunctor) -> bool:
    return f.presentation.is_zero()


def functors_isomorphic(f: FpFunctor, g: FpFunctor) -> bool:
    # minimal presentations are unique up to isomorphism of map objects
    return map_iso_between(f.presentation, g.presentation) is not None


def representable_functor(m: Module) -> FpFunctor:
    return FpFunctor(target_only(m), name=f"(-,{m.name or m.dims})")


def simple_functor(m: Module) -> FpFunctor:
    """S_M, presented by the sink map of M.

    For projective M the sink map is the radical inclusion; otherwise it
    is the right almost split epi from the middle of the sequence ending at M.
    """
    if is_projective_indec(m):
        _, incl = radical_submodule(m)
        return FpFunctor(MapObject(incl), name=f"S_{m.name or m.dims}")
    seq = almost_split_ending_at(m)
    return FpFunctor(MapObject(seq.surj), name=f"S_{m.name or m.dims}")


def theta_functor(cpx: ProjComplex) -> FpFunctor:
    return FpFunctor(theta_presentation(cpx))


def functor_syzygy(f: FpFunctor) -> FpFunctor:
    """Omega F, presented by the kernel inclusion of the presentation map."""
    _, k_incl = kernel(f.presentation.f)
    return FpFunctor(MapObject(k_incl), name=f"syz {f.name}" if f.name else "")


def pdim(f: FpFunctor) -> int:
    """Projective dimension, always 0, 1 or 2."""
    q = f.presentation
    if q.m1.is_zero():
        return 0
    k, _ = kernel(q.f)
    return 1 if k.is_zero() else 2


def torsion_radical(f: FpFunctor) -> FpFunctor:
    """The largest subfunctor with finite-length composition factors.

    Computed as the kernel of the canonical map onto the image-inclusion
    functor, which is presented by M1 -> Im f.
    """
    q = f.presentation
    if q.m1.is_zero():
        return FpFunctor(zero_map_object(q.algebra), name=f"t({f.name})")
    _, _, onto = image(q.f)
    return FpFunctor(MapObject(onto), name=f"t({f.name})")


def is_torsion_free(f: FpFunctor) -> bool:
    """Three independent tests, asserted to agree."""
    by_radical = functor_is_zero(torsion_radical(f))
    by_pdim = pdim(f) <= 1
    q = f.presentation
    by_mono = q.m1.is_zero() or kernel(q.f)[0].is_zero()
    if not (by_radical == by_pdim == by_mono):
        raise AssertionError(
            f"torsion-free tests disagree: radical {by_radical}, pdim {by_pdim}, mono {by_mono}"
        )
    return by_radical


def vanishes_on_projectives(f: FpFunctor) -> bool:
    alg = f.algebra
    for v in range(alg.quiver.n_vertices):
        if evaluate(f, indecomposable_projective(alg, v)) != 0:
            return False
    return True


# -- realization over the endomorphism algebra ------------------------------------


@dataclass
class FunctorRealization:
    """mod(mod Lambda) as modules over End(additive generator)^op.

    Arrow k of delta runs j -> i and carries the irreducible hom
    corpus[i] -> corpus[j]; a path j -> ... -> i evaluates to a hom
    corpus[i] -> corpus[j] by composing along the way.
    """

    base: AlgebraPresentation
    quiver: ArQuiver
    corpus: List[Module]
    delta: AlgebraPresentation
    arrow_homs: List[ModuleHom]
    _delta_quiver: Optional[ArQuiver] = field(default=None, repr=False)

    def delta_ar_quiver(self, dim_bound: int = 60) -> ArQuiver:
        if self._delta_quiver is None:
            self._delta_quiver = knit_ar_quiver(self.delta, dim_bound=dim_bound)
        return self._delta_quiver


def _rad_basis(reps: List[Module], i: int, j: int) -> List[ModuleHom]:
    return end_radical(reps[i]) if i == j else hom_basis(reps[i], reps[j])


def functor_realization(algebra: AlgebraPresentation, dim_bound: int = 40) -> FunctorRealization:
    p = algebra.p
    q = knit_ar_quiver(algebra, dim_bound=dim_bound)
    if not q.complete:
        raise CertificationError(f"realization needs the complete corpus; {q.warning}")
    reps = q.vertices
    n = len(reps)
    for m in reps:
        if len(hom_basis(m, m)) - len(end_radical(m)) != 1:
            raise CertificationError("an endomorphism ring has residue field larger than the base field")

    arrow_specs: List[Tuple[str, int, int]] = []
    arrow_homs: List[ModuleHom] = []
    for (i, j) in sorted(q.arrows):
        basis = _rad_basis(reps, i, j)
        ambient = len(vectorize_hom(basis[0])) if basis else 0
        rad2 = []
        for z in range(n):
            for u in _rad_basis(reps, i, z):
                for v in _rad_basis(reps, z, j):
                    rad2.append(vectorize_hom(compose(v, u)))
        acc = list(rad2)
        rank = la.rank(np.stack(acc, axis=1), p) if acc else 0
        picked = []
        for b in basis:
            trial = acc + [vectorize_hom(b)]
            r2 = la.rank(np.stack(trial, axis=1), p)
            if r2 > rank:
                picked.append(b)
                acc = trial
                rank = r2
        if len(picked) != q.arrows[(i, j)]:
            raise CertificationError("arrow multiplicity disagrees with the knitted quiver")
        for r in picked:
            arrow_specs.append((f"a{len(arrow_specs)}", j, i))
            arrow_homs.append(r)

    # relations: kernels of the path-value map, degree by degree
    names = [s[0] for s in arrow_specs]
    by_source: Dict[int, List[int]] = {}
    for k, (_, src, _) in enumerate(arrow_specs):
        by_source.setdefault(src, []).append(k)
    relation_specs: List[List[Tuple[int, List[str]]]] = []
    frontier: List[Tuple[int, Tuple[int, ...], int, ModuleHom]] = [
        (arrow_specs[k][1], (k,), arrow_specs[k][2], arrow_homs[k]) for k in range(len(arrow_homs))
    ]
    degree = 1
    while frontier:
        degree += 1
        if degree > 60:
            raise CertificationError("path enumeration did not terminate; radical not nilpotent?")
        groups: Dict[Tuple[int, int], List[Tuple[Tuple[int, ...], ModuleHom]]] = {}
        for (v, idxs, w, val) in frontier:
            for k in by_source.get(w, []):
                new_val = compose(val, arrow_homs[k])
                groups.setdefault((v, arrow_specs[k][2]), []).append((idxs + (k,), new_val))
        frontier = []
        for (v, w), paths in sorted(groups.items()):
            mat = np.stack([vectorize_hom(val) for _, val in paths], axis=1)
            ker = la.kernel_basis(mat, p)
            for c in range(ker.shape[1]):
                terms = [
                    (int(ker[r, c]), [names[k] for k in paths[r][0]])
                    for r in range(len(paths))
                    if ker[r, c] % p
                ]
                relation_specs.append(terms)
            for idxs, val in paths:
                if not val.is_zero():
                    frontier.append((v, idxs, w, val))

    delta = algebra_from_spec(p, n, arrow_specs, relation_specs)
    real = FunctorRealization(algebra, q, reps, delta, arrow_homs)

    total = sum(len(hom_basis(a, b)) for a in reps for b in reps)
    if delta.dim != total:
        raise CertificationError(
            f"realized algebra has dimension {delta.dim}, expected {total}; "
            "the hom category is not graded by the chosen arrows"
        )
    for v in range(n):
        fv = realize_map_object(real, target_only(reps[v]))
        if not modules_isomorphic(fv, indecomposable_projective(delta, v)):
            raise CertificationError(f"representable at corpus object {v} is not the indecomposable projective")
    return real


def realize_map_object(real: FunctorRealization, x: MapObject) -> Module:
    """The module over real.delta with fibers coker(Hom(X_v, f))."""
    evs = [_eval_at(x, t) for t in real.corpus]
    dims = [e.dim for e in evs]
    p = real.delta.p
    mats = []
    for k, r in enumerate(real.arrow_homs):
        src = real.delta.quiver.source(k)
        tgt = real.delta.quiver.target(k)
        pre = la.zeros(len(evs[tgt].into_target), len(evs[src].into_target))
        for c, b in enumerate(evs[src].into_target):
            coords = hom_coordinates(compose(b, r), evs[tgt].into_target)
            pre[:, c] = coords
        mat = la.matmul(evs[tgt].proj, la.matmul(pre, evs[src].section, p), p)
        mats.append(mat)
    return Module(real.delta, dims, mats, name=f"Phi({x.name})" if x.name else "")


def functor_to_module(real: FunctorRealization, f: FpFunctor) -> Module:
    return realize_map_object(real, f.presentation)


def map_morphism_to_hom(real: FunctorRealization, u: MapMorphism) -> ModuleHom:
    """The natural transformation Phi(u) as a hom of realized modules."""
    p = real.delta.p
    src_mod = realize_map_object(real, u.source)
    tgt_mod = realize_map_object(real, u.target)
    mats = []
    for v, t in enumerate(real.corpus):
        ex = _eval_at(u.source, t)
        ey = _eval_at(u.target, t)
        post = la.zeros(len(ey.into_target), len(ex.into_target))
        for c, b in enumerate(ex.into_target):
            coords = hom_coordinates(compose(u.h2, b), ey.into_target)
            post[:, c] = coords
        mats.append(la.matmul(ey.proj, la.matmul(post, ex.section, p), p))
    return ModuleHom(src_mod, tgt_mod, mats)


@dataclass
class PhiArImage:
    left: FpFunctor
    middle: FpFunctor
    right: FpFunctor
    realized: ShortExactSeq
    certificate: object
    corpus_complete: bool


def phi_image_of_ar(real: FunctorRealization, s: ShortExactSeq, dim_bound: int = 60) -> PhiArImage:
    """Push an almost split sequence of map objects through Phi and certify it.

    The sequence must be certified almost split and both end structure maps
    must be neither split epi nor split mono; violations raise by name.
    """
    if not s.is_maps_level():
        raise ValueError("expected an almost split sequence of map objects")
    ok, reason = s_theorem_hypothesis(s)
    if not ok:
        raise ValueError(f"structure-map hypothesis fails: {reason}")
    if not s.verified:
        raise ValueError("sequence is not certified almost split; verify it against a corpus first")
    inj = map_morphism_to_hom(real, s.inj)
    surj = map_morphism_to_hom(real, s.surj)
    try:
        realized = seq_of_modules(inj, surj, verified="")
    except ValueError as e:
        raise CertificationError(f"realized sequence is not short exact: {e}")
    dq = real.delta_ar_quiver(dim_bound=dim_bound)
    cert = is_almost_split(realized, dq.vertices)
    if not cert:
        raise CertificationError("realized sequence fails the almost-split test: " + "; ".join(cert.reasons))
    return PhiArImage(
        FpFunctor(s.left, name="Phi(left)"),
        FpFunctor(s.middle, name="Phi(middle)"),
        FpFunctor(s.right, name="Phi(right)"),
        realized,
        cert,
        dq.complete,
    )


# -- coresolutions and tilting reports ---------------------------------------------


@dataclass
class CheckResult:
    status: str  # "pass" | "fail" | "unresolved"
    witnesses: List[dict] = field(default_factory=list)


@dataclass
class TiltingReport:
    category: List[MapObject]
    checks: Dict[str, CheckResult]

    @property
    def verdict(self) -> bool:
        return all(c.status == "pass" for c in self.checks.values())

    @property
    def conclusive(self) -> bool:
        return all(c.status != "unresolved" for c in self.checks.values())


def _describe_map_object(x: MapObject) -> dict:
    return {"name": x.name, "dims": [list(x.m1.dims), list(x.m2.dims)]}


def tilting_report_json(r: TiltingReport) -> dict:
    return {
        "category": [_describe_map_object(x) for x in r.category],
        "checks": {
            key: {"status": c.status, "witnesses": c.witnesses} for key, c in sorted(r.checks.items())
        },
        "verdict": r.verdict,
        "conclusive": r.conclusive,
    }


def _category_closure(ts: Sequence[MapObject], seed: int = 0) -> List[MapObject]:
    """Indecomposable summand representatives, deduplicated and sorted."""
    reps: List[MapObject] = []
    for x in ts:
        if x.is_zero():
            continue
        for part, _, _ in decompose_map_object(x, seed):
            if all(map_iso_between(part, r) is None for r in reps):
                reps.append(part)
    reps.sort(key=lambda x: (x.total_dim, x.m1.dims, x.m2.dims))
    return reps


def _in_add_maps(x: MapObject, reps: List[MapObject], seed: int = 0) -> bool:
    if x.is_zero():
        return True
    for part, _, _ in decompose_map_object(x, seed):
        if all(map_iso_between(part, r) is None for r in reps):
            return False
    return True


def _left_add_approx_maps(
    w: MapObject, reps: List[MapObject], cap: int = 3
) -> Tuple[Optional[MapMorphism], bool]:
    """The canonical map from w into a sum of reps, hom-multiplicity capped."""
    pieces: List[Tuple[MapObject, MapMorphism]] = []
    capped = False
    for r in reps:
        basis = hom_maps(w, r)
        if len(basis) > cap:
            basis = basis[:cap]
            capped = True
        pieces.extend((r, b) for b in basis)
    if not pieces:
        return None, capped
    sm = direct_sum_maps(w.algebra, [r for r, _ in pieces])
    u = None
    for k, (_, b) in enumerate(pieces):
        leg = map_compose(sm.inclusions[k], b)
        u = leg if u is None else map_add(u, leg)
    return u, capped


@dataclass
class Coresolution:
    terms: List[MapObject]  # middle terms, then the final cokernel (in add)
    status: str  # "pass" | "fail" | "unresolved"
    detail: dict


def relative_coresolution(w: MapObject, reps: List[MapObject], max_len: int, cap: int = 3, seed: int = 0) -> Coresolution:
    """Search for an S-exact coresolution 0 -> w -> T0 -> ... of length <= max_len.

    The canonical capped approximation is forced at every step, so a failed
    step with no capping disproves existence; with capping the verdict is
    left unresolved.
    """
    terms: List[MapObject] = []
    cur = w
    for step in range(max_len + 1):
        if _in_add_maps(cur, reps, seed):
            return Coresolution(terms + [cur], "pass", {"length": step})
        if step == max_len:
            return Coresolution(terms, "unresolved", {"reason": "not found within bound", "step": step})
        u, capped = _left_add_approx_maps(cur, reps, cap)
        soft = "unresolved" if capped else "fail"
        if u is None:
            return Coresolution(terms, soft, {"reason": "no maps into the category", "step": step})
        if not all(kernel(h)[0].is_zero() for h in (u.h1, u.h2)):
            return Coresolution(terms, soft, {"reason": "approximation not levelwise mono", "step": step})
        coker, proj = morphism_cokernel(u)
        sx = is_S_exact(u, proj)
        if not sx.verdict:
            return Coresolution(terms, soft, {"reason": "canonical sequence leaves S", "step": step})
        terms.append(u.target)
        cur = coker
    return Coresolution(terms, "unresolved", {"reason": "not found within bound"})


def _aggregate(parts: List[str]) -> str:
    if any(s == "fail" for s in parts):
        return "fail"
    if any(s == "unresolved" for s in parts):
        return "unresolved"
    return "pass"


def _lambda_corpus(algebra: AlgebraPresentation, corpus: Optional[Sequence[Module]], dim_bound: int = 40) -> List[Module]:
    if corpus is not None:
        return list(corpus)
    return knit_ar_quiver(algebra, dim_bound=dim_bound).vertices


def _mono_check(reps: List[MapObject]) -> CheckResult:
    wit = []
    for k, t in enumerate(reps):
        kdims = kernel(t.f)[0].dims
        if any(kdims):
            wit.append({"object": _describe_map_object(t), "kernel_dims": list(kdims)})
    return CheckResult("pass" if not wit else "fail", wit)


def _ext_check(reps: List[MapObject], degrees: Sequence[int]) -> CheckResult:
    wit = []
    for a, x in enumerate(reps):
        for b, y in enumerate(reps):
            for k in degrees:
                d = relative_ext_dim(x, y, k)
                if d:
                    wit.append({"source": a, "target": b, "degree": k, "dim": d})
    return CheckResult("pass" if not wit else "fail", wit)


def _coresolution_check(
    reps: List[MapObject], lam: List[Module], max_len: int, seed: int
) -> CheckResult:
    statuses = []
    wit = []
    for c in lam:
        cr = relative_coresolution(target_only(c), reps, max_len, seed=seed)
        statuses.append(cr.status)
        wit.append(
            {
                "module": {"name": c.name, "dims": list(c.dims)},
                "status": cr.status,
                "terms": [_describe_map_object(t) for t in cr.terms],
                "detail": cr.detail,
            }
        )
    return CheckResult(_aggregate(statuses), wit)


def check_classical_tilting(
    ts: Sequence[MapObject], corpus: Optional[Sequence[Module]] = None, seed: int = 0
) -> TiltingReport:
    """Structure maps mono, Ext_F^1 vanishing, and coresolved projectives."""
    reps = _category_closure(ts, seed)
    if not reps:
        raise ValueError("the tilting candidate is empty")
    lam = _lambda_corpus(reps[0].algebra, corpus)
    checks = {
        "structure-maps-mono": _mono_check(reps),
        "ext1-vanishes": _ext_check(reps, [1]),
        "projectives-coresolved": _coresolution_check(reps, lam, 1, seed),
    }
    return TiltingReport(reps, checks)


# -- module-side analogues, used as the independent oracle --------------------------


def _in_add_modules(x: Module, reps: List[Module], seed: int = 0) -> bool:
    if x.is_zero():
        return True
    for part, _, _ in decompose(x, seed):
        if not any(modules_isomorphic(part, r) for r in reps):
            return False
    return True


def _left_add_approx_modules(w: Module, reps: List[Module], cap: int = 3) -> Tuple[Optional[ModuleHom], bool]:
    pieces: List[Tuple[Module, ModuleHom]] = []
    capped = False
    for r in reps:
        basis = hom_basis(w, r)
        if len(basis) > cap:
            basis = basis[:cap]
            capped = True
        pieces.extend((r, b) for b in basis)
    if not pieces:
        return None, capped
    sm = direct_sum(w.algebra, [r for r, _ in pieces])
    u = None
    for k, (_, b) in enumerate(pieces):
        leg = compose(sm.inclusions[k], b)
        u = leg if u is None else hom_add(u, leg)
    return u, capped


def module_coresolution(w: Module, reps: List[Module], max_len: int, cap: int = 3, seed: int = 0) -> Coresolution:
    """Plain-exact coresolution of w by add(reps), mirroring the relative search."""
    terms: List[Module] = []
    cur = w
    for step in range(max_len + 1):
        if _in_add_modules(cur, reps, seed):
            return Coresolution(terms + [cur], "pass", {"length": step})
        if step == max_len:
            return Coresolution(terms, "unresolved", {"reason": "not found within bound", "step": step})
        u, capped = _left_add_approx_modules(cur, reps, cap)
        soft = "unresolved" if capped else "fail"
        if u is None:
            return Coresolution(terms, soft, {"reason": "no maps into the category", "step": step})
        if not kernel(u)[0].is_zero():
            return Coresolution(terms, soft, {"reason": "approximation not mono", "step": step})
        coker, _ = cokernel(u)
        terms.append(u.target)
        cur = coker
    return Coresolution(terms, "unresolved", {"reason": "not found within bound"})


def _module_tilting_status(tmods: List[Module], delta: AlgebraPresentation, degrees: Sequence[int], max_len: int, seed: int) -> Tuple[str, List[dict]]:
    from .modules import ext_dim

    wit = []
    statuses = []
    for a, x in enumerate(tmods):
        for b, y in enumerate(tmods):
            for k in degrees:
                d = ext_dim(x, y, k)
                if d:
                    wit.append({"source": a, "target": b, "degree": k, "dim": d})
                    statuses.append("fail")
    for v in range(delta.quiver.n_vertices):
        cr = module_coresolution(indecomposable_projective(delta, v), tmods, max_len, seed=seed)
        statuses.append(cr.status)
        if cr.status != "pass":
            wit.append({"projective": v, "status": cr.status, "detail": cr.detail})
    return _aggregate(statuses), wit


def check_generalized_tilting(
    ts: Sequence[MapObject],
    corpus: Optional[Sequence[Module]] = None,
    realization: Optional[FunctorRealization] = None,
    cross_check: bool = True,
    seed: int = 0,
) -> TiltingReport:
    """Ext_F^{1,2} vanishing and length-2 coresolutions, with an oracle cross-check.

    The cross-check realizes Phi of the category over the endomorphism
    algebra and runs the plain tilting test there; the two verdicts must
    agree whenever both are conclusive.
    """
    reps = _category_closure(ts, seed)
    if not reps:
        raise ValueError("the tilting candidate is empty")
    lam = _lambda_corpus(reps[0].algebra, corpus)
    checks = {
        "ext-vanishes": _ext_check(reps, [1, 2]),
        "projectives-coresolved": _coresolution_check(reps, lam, 2, seed),
    }
    if cross_check:
        real = realization if realization is not None else functor_realization(reps[0].algebra)
        tmods: List[Module] = []
        for t in reps:
            m = realize_map_object(real, t)
            if not m.is_zero() and not any(modules_isomorphic(m, s) for s in tmods):
                tmods.append(m)
        maps_side = _aggregate([checks["ext-vanishes"].status, checks["projectives-coresolved"].status])
        mod_side, wit = _module_tilting_status(tmods, real.delta, [1, 2], 2, seed)
        if "unresolved" in (maps_side, mod_side):
            status = "unresolved"
        else:
            status = "pass" if maps_side == mod_side else "fail"
        wit.insert(0, {"maps_side": maps_side, "realized_side": mod_side})
        checks["realized-agreement"] = CheckResult(status, wit)
    return TiltingReport(reps, checks)


# -- approximations ------------------------------------------------------------------


@dataclass
class ApproxCertificate:
    side: str  # "right" | "left"
    test_factorizations: List[Tuple[int, int, MapMorphism]]
    complete: bool
    failures: List[Tuple[int, int]]

    def __bool__(self) -> bool:
        return self.complete and not self.failures


def certify_right_approx(approx: MapMorphism, corpus: Sequence[MapObject]) -> ApproxCertificate:
    """Factor every corpus hom into the target through the approximation."""
    found = []
    failures = []
    for k, c in enumerate(corpus):
        for i, g in enumerate(hom_maps(c, approx.target)):
            h = maps_solve_through(approx, g)
            if h is None:
                failures.append((k, i))
            else:
                found.append((k, i, h))
    return ApproxCertificate("right", found, True, failures)


def certify_left_approx(approx: MapMorphism, corpus: Sequence[MapObject]) -> ApproxCertificate:
    found = []
    failures = []
    for k, c in enumerate(corpus):
        for i, g in enumerate(hom_maps(approx.source, c)):
            h = maps_solve_past(approx, g)
            if h is None:
                failures.append((k, i))
            else:
                found.append((k, i, h))
    return ApproxCertificate("left", found, True, failures)


def _is_epimap(x: MapObject) -> bool:
    return all(la.rank(m, x.algebra.p) == x.m2.dims[v] for v, m in enumerate(x.f.mats))


def _is_monomap(x: MapObject) -> bool:
    return kernel(x.f)[0].is_zero()


def epimap_corpus(algebra: AlgebraPresentation, dim_bound: int = 40) -> List[MapObject]:
    """All indecomposable map objects with epi structure map."""
    tri = gamma_of(algebra)
    q = knit_ar_quiver(tri.algebra, dim_bound=dim_bound)
    out = []
    for m in q.vertices:
        x = from_gamma_module(tri, m)
        if _is_epimap(x):
            out.append(x)
    return out


def monomap_corpus(algebra: AlgebraPresentation, dim_bound: int = 40) -> List[MapObject]:
    tri = gamma_of(algebra)
    q = knit_ar_quiver(tri.algebra, dim_bound=dim_bound)
    out = []
    for m in q.vertices:
        x = from_gamma_module(tri, m)
        if _is_monomap(x):
            out.append(x)
    return out


def right_approx_epimaps(x: MapObject, corpus: Optional[Sequence[MapObject]] = None) -> Tuple[MapMorphism, ApproxCertificate]:
    """Right approximation of x by epimaps: factor through the image."""
    if corpus is None:
        corpus = epimap_corpus(x.algebra)
    if _is_epimap(x):
        approx = map_identity(x)
    else:
        _, incl, onto = image(x.f)
        z = MapObject(onto, name=f"{x.name}-epi" if x.name else "")
        approx = MapMorphism(z, x, identity_hom(x.m1), incl)
    return approx, certify_right_approx(approx, corpus)


def left_approx_epimaps(x: MapObject, corpus: Optional[Sequence[MapObject]] = None) -> Tuple[MapMorphism, ApproxCertificate]:
    """Left approximation of x by epimaps: absorb a projective cover of the target."""
    if corpus is None:
        corpus = epimap_corpus(x.algebra)
    if _is_epimap(x):
        approx = map_identity(x)
    else:
        pc = projective_cover(x.m2)
        sm = direct_sum(x.algebra, [x.m1, pc.sum.module])
        h = hom_add(
            compose(x.f, sm.projections[0]),
            compose(pc.epi, sm.projections[1]),
        )
        z = MapObject(h, name=f"{x.name}-epi" if x.name else "")
        approx = MapMorphism(x, z, sm.inclusions[0], identity_hom(x.m2))
    return approx, certify_left_approx(approx, corpus)


def right_approx_monomaps(x: MapObject, corpus: Optional[Sequence[MapObject]] = None) -> Tuple[MapMorphism, ApproxCertificate]:
    """Right approximation of x by monomaps: absorb an injective envelope of the source."""
    if corpus is None:
        corpus = monomap_corpus(x.algebra)
    if _is_monomap(x):
        approx = map_identity(x)
    else:
        env, mono = injective_envelope(x.m1)
        sm = direct_sum(x.algebra, [x.m2, env])
        h = hom_add(
            compose(sm.inclusions[0], x.f),
            compose(sm.inclusions[1], mono),
        )
        z = MapObject(h, name=f"{x.name}-mono" if x.name else "")
        approx = MapMorphism(z, x, identity_hom(x.m1), sm.projections[0])
    return approx, certify_right_approx(approx, corpus)


def left_approx_monomaps(x: MapObject, corpus: Optional[Sequence[MapObject]] = None) -> Tuple[MapMorphism, ApproxCertificate]:
    """Left approximation of x by monomaps: pass to the image inclusion."""
    if corpus is None:
        corpus = monomap_corpus(x.algebra)
    if _is_monomap(x):
        approx = map_identity(x)
    else:
        _, incl, onto = image(x.f)
        z = MapObject(incl, name=f"{x.name}-mono" if x.name else "")
        approx = MapMorphism(x, z, onto, identity_hom(x.m2))
    return approx, certify_left_approx(approx, corpus)


def transport_approx_via_phi(
    real: FunctorRealization, approx: MapMorphism, corpus: Sequence[MapObject]
) -> Tuple[ModuleHom, ApproxCertificate]:
    """Phi of a right approximation, certified against Phi of the corpus.

    Raises when some realized corpus hom fails to factor, naming it.
    """
    p = real.delta.p
    rho = map_morphism_to_hom(real, approx)
    found = []
    for k, c in enumerate(corpus):
        fc = realize_map_object(real, c)
        through = hom_basis(fc, rho.source)
        cols = [vectorize_hom(compose(rho, b)) for b in through]
        ambient = sum(rho.target.dims[v] * fc.dims[v] for v in range(len(fc.dims)))
        mat = np.stack(cols, axis=1) if cols else la.zeros(ambient, 0)
        for i, h in enumerate(hom_basis(fc, rho.target)):
            sol = la.solve(mat, vectorize_hom(h), p)
            if sol is None:
                raise CertificationError(
                    f"hom {i} from corpus object {k} does not factor through the transported approximation"
                )
            lift = zero_hom(fc, rho.source)
            for j, b in enumerate(through):
                if sol[j] % p:
                    lift = hom_add(lift, hom_scale(int(sol[j]), b))
            found.append((k, i, lift))
    return rho, ApproxCertificate("right", found, True, [])


def reconstruct_maps_approx_from_phi(
    real: FunctorRealization,
    m: MapObject,
    corpus: Sequence[MapObject],
    z: MapObject,
    rho: ModuleHom,
    seed: int = 0,
) -> Tuple[MapMorphism, ApproxCertificate]:
    """Rebuild a right corpus-approximation of m from a functor-level one.

    rho: Phi(z) -> Phi(m) over the realization.  The result has source
    z + (ker f, 0, 0) + (M1, M1, 1) and restricts to a lift of rho on z;
    the corpus must contain those two auxiliary forms.
    """
    p = real.delta.p
    k_mod, k_incl = structure_kernel(m)
    for part, _, _ in (decompose(k_mod, seed) if not k_mod.is_zero() else []):
        want = source_only(part)
        if all(map_iso_between(want, c) is None for c in corpus):
            raise CertificationError(
                f"corpus lacks the object ({part.dims}, 0, 0) required by the reconstruction"
            )
    for part, _, _ in (decompose(m.m1, seed) if not m.m1.is_zero() else []):
        want = identity_object(part)
        if all(map_iso_between(want, c) is None for c in corpus):
            raise CertificationError(
                f"corpus lacks the object ({part.dims}, {part.dims}, 1) required by the reconstruction"
            )

    basis = hom_maps(z, m)
    cols = [vectorize_hom(map_morphism_to_hom(real, b)) for b in basis]
    ambient = len(vectorize_hom(rho))
    mat = np.stack(cols, axis=1) if cols else la.zeros(ambient, 0)
    sol = la.solve(mat, vectorize_hom(rho), p)
    if sol is None:
        raise CertificationError("the functor approximation does not lift to the maps category")
    r = map_zero(z, m)
    for j, b in enumerate(basis):
        if sol[j] % p:
            r = map_add(r, map_scale(int(sol[j]), b))

    s1 = direct_sum(m.algebra, [z.m1, k_mod, m.m1])
    s2 = direct_sum(m.algebra, [z.m2, m.m1])
    wmap = hom_add(
        compose(s2.inclusions[0], compose(z.f, s1.projections[0])),
        compose(s2.inclusions[1], s1.projections[2]),
    )
    w = MapObject(wmap, name=f"w({m.name})" if m.name else "")
    n1 = hom_add(
        hom_add(compose(r.h1, s1.projections[0]), compose(k_incl, s1.projections[1])),
        s1.projections[2],
    )
    n2 = hom_add(compose(r.h2, s2.projections[0]), compose(m.f, s2.projections[1]))
    n = MapMorphism(w, m, n1, n2)
    return n, certify_right_approx(n, corpus)
