"""Dense Gaussian elimination over any exact field.

Entries only need ``+``, ``-``, ``*``, ``/`` and truthiness (zero test), so
the same code serves ``Q(t)`` (sympy field elements) and the algebraic
extension fields of :mod:`ctsep.algebraic.tower`.
"""
from __future__ import annotations

from typing import Sequence


def rref(rows: Sequence[Sequence], zero, one):
    """Reduced row echelon form.  Returns ``(matrix, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = one / m[r][c]
        m[r] = [e * inv if e else zero for e in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int, zero, one) -> list[list]:
    """Basis of ``{v : M v = 0}``, one vector per free column."""
    red, pivots = rref(rows, zero, one) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(red, pivots):
            if row[fc]:
                v[pc] = -row[fc]
        basis.append(v)
    return basis


def first_dependency(vectors: Sequence[Sequence], zero, one):
    """Smallest ``N`` with ``vectors[0..N]`` dependent and the relation.

    Returns ``(N, coeffs)`` where ``sum(coeffs[k] * vectors[k]) == 0`` and
    ``coeffs[N] == one``, or ``None`` when all given vectors are independent.
    """
    basis = []  # (pivot, reduced vector, combination of the inputs)
    for n, v in enumerate(vectors):
        vec = list(v)
        combo = [zero] * n + [one]
        for piv, bv, bc in basis:
            c = vec[piv]
            if c:
                vec = [a - c * b if b else a for a, b in zip(vec, bv)]
                for i, e in enumerate(bc):
                    if e:
                        combo[i] = combo[i] - c * e
        piv = next((i for i, e in enumerate(vec) if e), None)
        if piv is None:
            return n, combo
        inv = one / vec[piv]
        basis.append((piv, [e * inv if e else zero for e in vec], [e * inv if e else zero for e in combo]))
    return None


def det(rows: Sequence[Sequence], zero, one):
    """Determinant by Gaussian elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    out = one
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        p = m[c][c]
        out = out * p
        inv = one / p
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b if b else a for a, b in zip(m[i], m[c])]
    return out


def inverse(rows: Sequence[Sequence], zero, one):
    """Inverse of a square matrix; raises ``ZeroDivisionError`` when singular."""
    n = len(rows)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug, zero, one)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]
