"""Dense numerical kernels: spectra, nullspaces, pseudo-inverse, expm, RK4.

Integer matrices get exact treatment where it matters (rank / kernel
dimension via rational elimination); spectra are always floating point.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import scipy.linalg

DEFAULT_KERNEL_TOL = 1e-8


class LinalgError(ValueError):
    """Invalid matrix input."""


def _check_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise LinalgError(f"expected a square matrix, got shape {a.shape}")
    return a


def is_exact(a: np.ndarray) -> bool:
    """True when the matrix carries exact (integer) entries."""
    return np.issubdtype(np.asarray(a).dtype, np.integer)


def eigenvalues(a) -> np.ndarray:
    """All eigenvalues with algebraic multiplicity, sorted by (Re, Im)."""
    a = _check_square(a).astype(complex)
    if not np.all(np.isfinite(a)):
        raise LinalgError("matrix entries must be finite")
    ev = np.linalg.eigvals(a)
    return np.array(sorted(ev, key=lambda z: (z.real, z.imag)))


def exact_rank(a) -> int:
    """Rank over the rationals by fraction-free Gaussian elimination."""
    rows = [[Fraction(int(x)) for x in row] for row in np.asarray(a)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                factor = rows[r][col] / prow[col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], prow)]
        rank += 1
    return rank


def rank(a, tol: float = DEFAULT_KERNEL_TOL) -> int:
    """Numerical rank; exact rational rank for integer matrices."""
    a = np.asarray(a)
    if is_exact(a):
        return exact_rank(a)
    if a.size == 0:
        return 0
    sv = np.linalg.svd(a, compute_uv=False)
    if sv.size == 0:
        return 0
    return int(np.sum(sv > tol * max(1.0, sv[0])))


def kernel_dimension(a, tol: float = DEFAULT_KERNEL_TOL) -> int:
    """Dimension of the right nullspace of a square matrix."""
    a = _check_square(a)
    return a.shape[0] - rank(a, tol)


def apply_pseudo_inverse(a, v) -> np.ndarray:
    """Minimal-norm least-squares solution of A x = v."""
    a = _check_square(a).astype(complex)
    v = np.asarray(v, dtype=complex)
    if v.shape != (a.shape[0],):
        raise LinalgError(f"vector length {v.shape} does not match order {a.shape[0]}")
    x, *_ = np.linalg.lstsq(a, v, rcond=None)
    return x


def matrix_exponential(a) -> np.ndarray:
    """exp(A) by Pade scaling-and-squaring."""
    a = _check_square(a)
    return scipy.linalg.expm(np.asarray(a, dtype=complex if np.iscomplexobj(a) else float))


def rk4_step(f, x, h):
    """One classical 4th-order Runge-Kutta step for x' = f(x)."""
    u = h * f(x)
    v = h * f(x + u / 2)
    w = h * f(x + v / 2)
    q = h * f(x + w)
    return x + (u + 2 * v + 2 * w + q) / 6


def pair_spectra(s1, s2, tol: float) -> tuple[bool, float]:
    """Compare two eigenvalue multisets by greedy nearest-neighbor pairing.

    Sorting both lists and zipping them is unstable when roundoff reorders
    near-degenerate values (e.g. a conjugate pair whose real parts agree only
    to machine precision), so each value of `s1` is matched against the
    closest still-unmatched value of `s2` instead.

    Returns (matched, max pairing distance).
    """
    s1 = np.asarray(sorted(np.asarray(s1, dtype=complex).ravel(), key=lambda z: (z.real, z.imag)))
    s2 = np.asarray(sorted(np.asarray(s2, dtype=complex).ravel(), key=lambda z: (z.real, z.imag)))
    if s1.shape != s2.shape:
        return False, float("inf")
    if s1.size == 0:
        return True, 0.0
    remaining = list(s2)
    worst = 0.0
    for z in s1:
        j = min(range(len(remaining)), key=lambda k: abs(remaining[k] - z))
        worst = max(worst, float(abs(remaining.pop(j) - z)))
    return worst <= tol, worst


def matrix_to_json(a) -> str:
    a = np.asarray(a)
    if np.iscomplexobj(a):
        payload = [[[float(z.real), float(z.imag)] for z in row] for row in a]
    else:
        payload = [[float(x) for x in row] for row in a]
    return json.dumps(payload)


def spectrum_to_csv(ev) -> str:
    lines = ["re,im"]
    for z in np.asarray(ev, dtype=complex):
        lines.append(f"{z.real:.12g},{z.imag:.12g}")
    return "\n".join(lines) + "\n"
