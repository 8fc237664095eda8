"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced to [0, p).  Every
routine here is exact: no floating point anywhere.  Row reduction is the
workhorse; everything else (kernels, solving, pullbacks, minimal
polynomials) is phrased through it.
"""

from typing import List, Optional, Tuple

import numpy as np


def normalize(a: np.ndarray, p: int) -> np.ndarray:
    """Return a copy of ``a`` as int64 with entries reduced mod p."""
    return np.asarray(a, dtype=np.int64) % p


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product a @ b mod p.

    int64 accumulation is exact as long as inner_dim * (p-1)^2 stays below
    2**63; with p < 2**20 that allows inner dimensions in the millions,
    far beyond desk scale.
    """
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    return (a @ b) % p


def inv_mod(x: int, p: int) -> int:
    return pow(int(x), p - 2, p)


def rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over F_p.

    Returns (R, pivot_cols).  R has the same shape as ``a``, pivots are 1,
    pivot columns are cleared above and below, zero rows sit at the bottom.
    The pair (R, pivot_cols) is the unique RREF, so callers may rely on it
    for canonical forms.
    """
    m = normalize(a, p)
    rows, cols = m.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * inv_mod(m[r, c], p)) % p
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            m[other] = (m[other] - np.outer(m[other, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel {x : a x = 0}, as columns.

    Canonical form: one basis column per free column of the RREF, ordered
    by ascending free-column index, with a 1 in the free coordinate.  The
    canonical choice matters: downstream code freezes kernel output into
    expected values.
    """
    m = normalize(a, p)
    rows, cols = m.shape
    if cols == 0:
        return zeros(0, 0)
    r, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = zeros(cols, len(free))
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-r[i, fc]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution x of a x = b, or None when the system is inconsistent.

    ``b`` may be a vector or a matrix of stacked right-hand sides; the
    result matches its shape.  The particular solution is the one with
    zeros in all free coordinates.
    """
    m = normalize(a, p)
    vec = b.ndim == 1
    rhs = normalize(b.reshape(-1, 1) if vec else b, p)
    if m.shape[0] != rhs.shape[0]:
        raise ValueError(f"solve: {m.shape} vs rhs {rhs.shape}")
    aug, pivots = rref(np.hstack([m, rhs]), p)
    ncols = m.shape[1]
    if any(c >= ncols for c in pivots):
        return None
    x = zeros(ncols, rhs.shape[1])
    for i, c in enumerate(pivots):
        x[c] = aug[i, ncols:]
    return x[:, 0] if vec else x


def column_space_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``a`` restricted to a basis of the column space.

    Picks the pivot columns of the RREF, so the output is a subset of the
    input columns in their original order.
    """
    m = normalize(a, p)
    if m.size == 0:
        return m.reshape(m.shape[0], 0)
    _, pivots = rref(m, p)
    return m[:, pivots]


def row_space_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Nonzero rows of the RREF: the canonical basis of the row space."""
    m = normalize(a, p)
    r, pivots = rref(m, p)
    return r[: len(pivots)]


def in_column_space(a: np.ndarray, v: np.ndarray, p: int) -> bool:
    return solve(a, v, p) is not None


def intersect_column_spaces(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Basis (as columns) of im(a) meet im(b)."""
    if a.shape[0] != b.shape[0]:
        raise ValueError("ambient dimensions differ")
    k = kernel_basis(np.hstack([a, -b % p]), p)
    vecs = matmul(a, k[: a.shape[1]], p)
    return column_space_basis(vecs, p)


def pullback(f: np.ndarray, g: np.ndarray, p: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pullback of f: X -> Z and g: Y -> Z.

    Returns (basis, proj_x, proj_y) where basis spans
    {(x, y) : f x = g y} inside X (+) Y and proj_x, proj_y read off the
    two coordinates, so f @ proj_x == g @ proj_y on the pullback space.
    """
    if f.shape[0] != g.shape[0]:
        raise ValueError(f"targets differ: {f.shape[0]} vs {g.shape[0]}")
    k = kernel_basis(np.hstack([f, -g % p]), p)
    nx = f.shape[1]
    return k, k[:nx], k[nx:]


def invert(a: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Inverse of a square matrix, or None if singular."""
    if a.shape[0] != a.shape[1]:
        raise ValueError("not square")
    n = a.shape[0]
    if n == 0:
        return zeros(0, 0)
    aug, pivots = rref(np.hstack([normalize(a, p), eye(n)]), p)
    if len(pivots) < n or pivots != list(range(n)):
        return None
    return aug[:, n:]


def minimal_polynomial(a: np.ndarray, p: int) -> List[int]:
    """Minimal polynomial of a square matrix, low-degree coefficients first.

    Monic; found as the first linear dependence among I, a, a^2, ... in the
    n^2-dimensional matrix space.
    """
    if a.shape[0] != a.shape[1]:
        raise ValueError("not square")
    n = a.shape[0]
    if n == 0:
        return [1]  # every polynomial annihilates the empty operator
    power = eye(n)
    flats = [power.flatten()]
    m = normalize(a, p)
    for _ in range(n):
        power = matmul(power, m, p)
        flats.append(power.flatten())
        stacked = np.stack(flats, axis=1)
        k = kernel_basis(stacked, p)
        if k.shape[1] > 0:
            rel = k[:, 0]
            lead = len(flats) - 1
            c = inv_mod(rel[lead], p)
            return [int(x * c % p) for x in rel]
    raise AssertionError("no dependence found below degree n+1")


def poly_eval_matrix(coeffs: List[int], a: np.ndarray, p: int) -> np.ndarray:
    """Evaluate a polynomial (low-degree first) at a square matrix."""
    n = a.shape[0]
    out = zeros(n, n)
    power = eye(n)
    m = normalize(a, p)
    for c in coeffs:
        out = (out + c * power) % p
        power = matmul(power, m, p)
    return out


def is_nilpotent(a: np.ndarray, p: int) -> bool:
    coeffs = minimal_polynomial(a, p)
    return all(c == 0 for c in coeffs[:-1])
