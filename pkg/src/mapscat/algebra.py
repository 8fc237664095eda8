"""Presentations of finite-dimensional quiver algebras KQ/I over F_p.

A path is stored as (source_vertex, arrow_tuple) with arrows listed in
application order: in (v, (a, b)) the arrow a acts first.  Relations are
linear combinations of parallel paths of length >= 2.  The monomial basis
of KQ/I is computed length by length together with exact reduction data,
so projective modules and multiplication come out of one table.

Vertices are 0-based everywhere in the library; the file format used by
the command line shifts to 1-based labels at the boundary.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from sympy import isprime

from . import linalg as la

Path = Tuple[int, Tuple[int, ...]]  # (source vertex, arrows in application order)

# growth guards for the basis computation; admissible presentations at desk
# scale stay far below these
MAX_PATHS_PER_LENGTH = 4000
MAX_TOTAL_PATHS = 50000


@dataclass(frozen=True)
class Quiver:
    """A finite quiver: vertex count plus named arrows."""

    n_vertices: int
    arrows: Tuple[Tuple[str, int, int], ...]  # (name, source, target)

    def __post_init__(self):
        if self.n_vertices < 1:
            raise ValueError("quiver needs at least one vertex")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be distinct")
        for name, s, t in self.arrows:
            if not name:
                raise ValueError("empty arrow name")
            if not (0 <= s < self.n_vertices and 0 <= t < self.n_vertices):
                raise ValueError(f"arrow {name}: endpoint out of range")

    def arrow_index(self, name: str) -> int:
        for i, (n, _, _) in enumerate(self.arrows):
            if n == name:
                return i
        raise KeyError(f"no arrow named {name}")

    def source(self, i: int) -> int:
        return self.arrows[i][1]

    def target(self, i: int) -> int:
        return self.arrows[i][2]


def path_source(p: Path) -> int:
    return p[0]


def path_target(q: Quiver, p: Path) -> int:
    v, arrows = p
    for a in arrows:
        v = q.target(a)
    return v


def _check_path(q: Quiver, p: Path) -> None:
    v, arrows = p
    if not (0 <= v < q.n_vertices):
        raise ValueError(f"path source {v} out of range")
    for a in arrows:
        if q.source(a) != v:
            raise ValueError(f"path not composable at arrow {q.arrows[a][0]}")
        v = q.target(a)


@dataclass(frozen=True)
class Relation:
    """Sum of coefficient * path, required to vanish in the algebra.

    All paths must be parallel (shared source and target) and of length
    >= 2.  Mixed lengths inside one relation are rejected: the basis
    computation is graded by path length and relies on homogeneity.
    """

    terms: Tuple[Tuple[int, Path], ...]

    def validated(self, q: Quiver, p: int) -> "Relation":
        if not self.terms:
            raise ValueError("empty relation")
        lengths = set()
        endpoints = set()
        terms = []
        for c, path in self.terms:
            _check_path(q, path)
            if len(path[1]) < 2:
                raise ValueError("relation paths must have length >= 2")
            lengths.add(len(path[1]))
            endpoints.add((path_source(path), path_target(q, path)))
            terms.append((c % p, path))
        if len(endpoints) > 1:
            raise ValueError("relation paths are not parallel")
        if len(lengths) > 1:
            raise ValueError("paths of unequal length in one relation are not supported")
        if all(c == 0 for c, _ in terms):
            raise ValueError("relation is identically zero")
        return Relation(tuple(terms))

    def degree(self) -> int:
        return len(self.terms[0][1][1])


class PathBasis:
    """Monomial basis of KQ/I with reduction and action tables.

    monomials: surviving paths, ordered by (length, source, arrow tuple).
    index: path -> position in monomials.
    reductions: path -> coefficient dict over monomials (only for
        enumerated non-basis paths; longer paths reduce to zero).
    left_action[a]: for each arrow a, dict monomial-index ->
        {monomial-index: coeff} describing (arrow a) o monomial.
    """

    def __init__(self, monomials, index, reductions, left_action, max_len):
        self.monomials: List[Path] = monomials
        self.index: Dict[Path, int] = index
        self.reductions: Dict[Path, Dict[int, int]] = reductions
        self.left_action: List[Dict[int, Dict[int, int]]] = left_action
        self.max_len = max_len

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def reduce_path(self, p: Path) -> Dict[int, int]:
        """Image of an arbitrary path in the quotient, as {index: coeff}."""
        if p in self.index:
            return {self.index[p]: 1}
        if p in self.reductions:
            return dict(self.reductions[p])
        return {}

    def multiply(self, later: Path, first: Path, q: Quiver, p: int) -> Dict[int, int]:
        """Product (later) o (first) of two basis paths, reduced."""
        if path_source(later) != path_target(q, first):
            return {}
        vec = self.reduce_path(first)
        for a in later[1]:
            nxt: Dict[int, int] = {}
            for mi, c in vec.items():
                for ti, c2 in self.left_action[a].get(mi, {}).items():
                    nxt[ti] = (nxt.get(ti, 0) + c * c2) % p
            vec = {k: v for k, v in nxt.items() if v}
        return vec

    def mult_table(self, q: Quiver, p: int) -> Dict[Tuple[int, int], Dict[int, int]]:
        """Structure constants: (i, j) -> reduction of monomial_i o monomial_j."""
        table = {}
        for i, mi in enumerate(self.monomials):
            for j, mj in enumerate(self.monomials):
                prod = self.multiply(mi, mj, q, p)
                if prod:
                    table[(i, j)] = prod
        return table


class AlgebraPresentation:
    """A quiver algebra KQ/I over F_p with an admissible ideal.

    Args:
        p: field characteristic, a prime.
        quiver: the quiver.
        relations: generators of the ideal.
        max_path_len: admissibility cutoff; if paths survive reduction past
            this length the presentation is rejected.
    """

    def __init__(
        self,
        p: int,
        quiver: Quiver,
        relations: Sequence[Relation] = (),
        max_path_len: int = 30,
    ):
        if not isprime(p):
            raise ValueError(f"p = {p} is not prime")
        if p >= 2**20:
            raise ValueError("p too large for exact int64 arithmetic")
        self.p = int(p)
        self.quiver = quiver
        self.relations = tuple(r.validated(quiver, p) for r in relations)
        self.max_path_len = max_path_len
        self._cache: Dict = {}

    # -- basis -------------------------------------------------------------

    @property
    def basis(self) -> PathBasis:
        if "basis" not in self._cache:
            self._cache["basis"] = self._compute_basis()
        return self._cache["basis"]

    @property
    def dim(self) -> int:
        return self.basis.dim

    def _compute_basis(self) -> PathBasis:
        q, p = self.quiver, self.p
        rel_by_deg: Dict[int, List[Relation]] = {}
        for r in self.relations:
            rel_by_deg.setdefault(r.degree(), []).append(r)

        trivial = [(v, ()) for v in range(q.n_vertices)]
        paths_at = {0: trivial, 1: [(q.source(a), (a,)) for a in range(len(q.arrows))]}
        retained = {0: list(trivial), 1: list(paths_at[1])}
        ideal_vecs: Dict[int, np.ndarray] = {}  # length -> rows over paths_at[length]
        reductions: Dict[Path, Dict[int, int]] = {}
        # reductions are kept per length as {path: {path: coeff}} first, then
        # re-indexed against the final monomial list
        red_paths: Dict[Path, Dict[Path, int]] = {}

        total = q.n_vertices + len(q.arrows)
        d = 1
        while retained.get(d):
            d += 1
            if d > self.max_path_len:
                raise ValueError(
                    f"paths still survive at length {self.max_path_len}: "
                    "ideal is not admissible within the cutoff"
                )
            prev = paths_at[d - 1]
            cur = []
            for v, arrows in prev:
                last_target = path_target(q, (v, arrows))
                for a in range(len(q.arrows)):
                    if q.source(a) == last_target:
                        cur.append((v, arrows + (a,)))
            cur.sort(key=lambda path: (path[0], path[1]))
            if len(cur) > MAX_PATHS_PER_LENGTH or total + len(cur) > MAX_TOTAL_PATHS:
                raise ValueError("path growth exceeds the enumeration guard")
            total += len(cur)
            paths_at[d] = cur
            if not cur:
                retained[d] = []
                break
            pos = {path: i for i, path in enumerate(cur)}

            rows: List[np.ndarray] = []
            prev_ideal = ideal_vecs.get(d - 1)
            if prev_ideal is not None and prev_ideal.size:
                prev_pos = {path: i for i, path in enumerate(prev)}
                for vec in prev_ideal:
                    # arrow acting on the left and on the right of ideal elements
                    for a in range(len(q.arrows)):
                        left = np.zeros(len(cur), dtype=np.int64)
                        right = np.zeros(len(cur), dtype=np.int64)
                        any_l = any_r = False
                        for path, i in prev_pos.items():
                            c = int(vec[i])
                            if not c:
                                continue
                            v, arrows = path
                            if q.source(a) == path_target(q, path):
                                left[pos[(v, arrows + (a,))]] += c
                                any_l = True
                            if q.target(a) == v:
                                right[pos[(q.source(a), (a,) + arrows)]] += c
                                any_r = True
                        if any_l:
                            rows.append(left % p)
                        if any_r:
                            rows.append(right % p)
            for r in rel_by_deg.get(d, []):
                row = np.zeros(len(cur), dtype=np.int64)
                for c, path in r.terms:
                    row[pos[path]] = (row[pos[path]] + c) % p
                rows.append(row)

            if rows:
                mat = np.stack(rows)
                red, pivots = la.rref(mat, p)
                ideal_vecs[d] = red[: len(pivots)]
                keep = [i for i in range(len(cur)) if i not in pivots]
                retained[d] = [cur[i] for i in keep]
                for rix, piv in enumerate(pivots):
                    expr = {}
                    for i in keep:
                        c = int((-red[rix, i]) % p)
                        if c:
                            expr[cur[i]] = c
                    red_paths[cur[piv]] = expr
            else:
                ideal_vecs[d] = np.zeros((0, len(cur)), dtype=np.int64)
                retained[d] = list(cur)

        monomials: List[Path] = []
        for length in sorted(k for k in retained if retained[k]):
            monomials.extend(retained[length])
        index = {m: i for i, m in enumerate(monomials)}
        for path, expr in red_paths.items():
            reductions[path] = {index[m]: c for m, c in expr.items() if m in index}
            # every surviving path in a reduction is retained at its length,
            # so the lookup above never drops terms
            assert len(reductions[path]) == len(expr)

        max_len = max((len(m[1]) for m in monomials), default=0)
        left_action: List[Dict[int, Dict[int, int]]] = []
        for a in range(len(q.arrows)):
            table: Dict[int, Dict[int, int]] = {}
            for i, m in enumerate(monomials):
                if q.source(a) != path_target(q, m):
                    continue
                ext = (m[0], m[1] + (a,))
                if ext in index:
                    table[i] = {index[ext]: 1}
                elif ext in reductions:
                    entry = {k: v for k, v in reductions[ext].items() if v}
                    if entry:
                        table[i] = entry
            left_action.append(table)
        return PathBasis(monomials, index, reductions, left_action, max_len)

    # -- derived presentations ----------------------------------------------

    def opposite(self) -> "AlgebraPresentation":
        """The opposite algebra: arrows and relation paths reversed."""
        q = self.quiver
        op_arrows = tuple((name, t, s) for name, s, t in q.arrows)
        opq = Quiver(q.n_vertices, op_arrows)
        op_rels = []
        for r in self.relations:
            terms = []
            for c, (v, arrows) in r.terms:
                src = path_target(q, (v, arrows))
                terms.append((c, (src, tuple(reversed(arrows)))))
            op_rels.append(Relation(tuple(terms)))
        return AlgebraPresentation(self.p, opq, op_rels, self.max_path_len)

    def __repr__(self):
        return (
            f"AlgebraPresentation(p={self.p}, vertices={self.quiver.n_vertices}, "
            f"arrows={len(self.quiver.arrows)}, relations={len(self.relations)})"
        )


@dataclass
class TriangularAlgebra:
    """The triangular matrix algebra of ``base`` with translation tables.

    Vertex v of the base quiver appears twice: as v (first copy, the
    source side of a map) and as v + n (second copy, the target side).
    copy1_arrows / copy2_arrows align with base.quiver.arrows; connecting[v]
    is the index of the arrow v -> v + n.
    """

    base: AlgebraPresentation
    algebra: AlgebraPresentation
    copy1_arrows: List[int]
    copy2_arrows: List[int]
    connecting: List[int]


def triangular_matrix_algebra(a: AlgebraPresentation) -> TriangularAlgebra:
    """Build [[L, 0], [L, L]] for L = a as a quiver algebra.

    The quiver is two copies of the base quiver joined by one connecting
    arrow per vertex, with both copies of the base relations plus the
    square-commutativity relation for every base arrow.  The dimension
    always comes out to 3 * dim(a); this is asserted.
    """
    q = a.quiver
    n = q.n_vertices
    used = {name for name, _, _ in q.arrows}

    def fresh(candidate: str) -> str:
        while candidate in used:
            candidate = "_" + candidate
        used.add(candidate)
        return candidate

    arrows: List[Tuple[str, int, int]] = []
    copy1 = []
    for name, s, t in q.arrows:
        copy1.append(len(arrows))
        arrows.append((name, s, t))
    copy2 = []
    for name, s, t in q.arrows:
        copy2.append(len(arrows))
        arrows.append((fresh(name + "'"), s + n, t + n))
    connecting = []
    for v in range(n):
        connecting.append(len(arrows))
        arrows.append((fresh(f"c{v + 1}"), v, v + n))

    gq = Quiver(2 * n, tuple(arrows))
    rels: List[Relation] = []
    for r in a.relations:
        for table, shift in ((copy1, 0), (copy2, n)):
            terms = []
            for c, (v, pa) in r.terms:
                terms.append((c, (v + shift, tuple(table[x] for x in pa))))
            rels.append(Relation(tuple(terms)))
    for i, (name, s, t) in enumerate(q.arrows):
        # c_t o alpha = alpha' o c_s  (application order: first entry acts first)
        lhs = (s, (copy1[i], connecting[t]))
        rhs = (s, (connecting[s], copy2[i]))
        rels.append(Relation(((1, lhs), (-1, rhs))))

    gamma = AlgebraPresentation(a.p, gq, rels, a.max_path_len)
    assert gamma.dim == 3 * a.dim, (gamma.dim, a.dim)
    return TriangularAlgebra(a, gamma, copy1, copy2, connecting)


# -- convenience constructors used all over the tests ------------------------


def linear_quiver_algebra(p: int, n: int) -> AlgebraPresentation:
    """The path algebra of 1 -> 2 -> ... -> n (vertices 0-based internally)."""
    arrows = tuple((f"a{i + 1}", i, i + 1) for i in range(n - 1))
    return AlgebraPresentation(p, Quiver(n, arrows))


def algebra_from_spec(
    p: int,
    n_vertices: int,
    arrow_specs: Sequence[Tuple[str, int, int]],
    relation_specs: Sequence[Sequence[Tuple[int, Sequence[str]]]] = (),
    max_path_len: int = 30,
) -> AlgebraPresentation:
    """Build a presentation from arrow names.

    relation_specs lists relations as [(coeff, [name1, name2, ...]), ...]
    with arrow names in application order (name1 acts first).
    """
    quiver = Quiver(n_vertices, tuple(arrow_specs))
    rels = []
    for spec in relation_specs:
        terms = []
        for c, names in spec:
            idxs = tuple(quiver.arrow_index(nm) for nm in names)
            terms.append((c, (quiver.source(idxs[0]), idxs)))
        rels.append(Relation(tuple(terms)))
    return AlgebraPresentation(p, quiver, rels, max_path_len)
