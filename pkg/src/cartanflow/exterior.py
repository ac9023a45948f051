"""Signed exterior derivative, Dirac operator and Hodge Laplacian."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import Complex, ComplexError, _as_simplex

LOWERS = "lowers-degree"
RAISES = "raises-degree"
PRESERVES = "preserves-degree"
MIXED = "mixed"


@dataclass(frozen=True)
class GradedOperator:
    """Dense square operator over a complex's basis, tagged by how it grades."""

    matrix: np.ndarray
    complex_ref: Complex
    grading_action: str

    def __post_init__(self):
        n = self.complex_ref.n
        if self.matrix.shape != (n, n):
            raise ComplexError(
                f"operator shape {self.matrix.shape} does not match basis size {n}"
            )

    def block(self, p: int, q: int) -> np.ndarray:
        """Sub-block mapping degree-q forms to degree-p forms."""
        c = self.complex_ref
        return self.matrix[c.block(p), c.block(q)]


def classify_grading(matrix: np.ndarray, c: Complex) -> str:
    """Scan degree blocks and name the operator's grading action."""
    deg = c.degrees()
    rows, cols = np.nonzero(matrix)
    if len(rows) == 0:
        return PRESERVES
    shifts = set(int(deg[i] - deg[j]) for i, j in zip(rows, cols))
    if shifts == {0}:
        return PRESERVES
    if shifts == {1}:
        return RAISES
    if shifts == {-1}:
        return LOWERS
    return MIXED


def incidence_sign(a, b) -> int:
    """+/-1 if b is a facet of a (sign of the missing vertex's position), else 0."""
    a = _as_simplex(a)
    b = _as_simplex(b)
    if len(a) != len(b) + 1 or not set(b) <= set(a):
        return 0
    (z,) = set(a) - set(b)
    return (-1) ** a.index(z)


def exterior_derivative(c: Complex) -> GradedOperator:
    """The signed incidence operator d; integer entries, d @ d == 0."""
    n = c.n
    d = np.zeros((n, n), dtype=int)
    for i, s in enumerate(c.simplices):
        if len(s) == 1:
            continue
        for pos in range(len(s)):
            facet = s[:pos] + s[pos + 1 :]
            d[i, c.index(facet)] = (-1) ** pos
    return GradedOperator(d, c, RAISES)


def dirac_and_hodge(d: GradedOperator) -> tuple[GradedOperator, GradedOperator]:
    """D = d + d^T and the Hodge Laplacian L = D^2 (unit simplex weights)."""
    c = d.complex_ref
    dd = d.matrix + d.matrix.T
    return GradedOperator(dd, c, MIXED), GradedOperator(dd @ dd, c, PRESERVES)


def degree_block(a: GradedOperator, p: int) -> np.ndarray:
    """The f_p x f_p diagonal block of a degree-preserving operator."""
    if a.grading_action != PRESERVES:
        raise ComplexError("degree_block requires a degree-preserving operator")
    return a.block(p, p)
