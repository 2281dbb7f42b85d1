"""Dense linear algebra over GF(2^m).

Matrices are lists of rows; entries are the integer codes of field
elements (see ``GF2m``), so addition is XOR.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .coeffring import GF2m

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(F: GF2m, A: Matrix, B: Matrix) -> Matrix:
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        r = [0] * cols
        for k, a in enumerate(row):
            if a:
                bk = B[k]
                for j in range(cols):
                    if bk[j]:
                        r[j] ^= F.mul_int(a, bk[j])
        out.append(r)
    return out


def vecmat(F: GF2m, v: Sequence[int], A: Matrix) -> List[int]:
    return matmul(F, [list(v)], A)[0]


def add(A: Matrix, B: Matrix) -> Matrix:
    return [[x ^ y for x, y in zip(r, s)] for r, s in zip(A, B)]


def scale(F: GF2m, c: int, A: Matrix) -> Matrix:
    return [[F.mul_int(c, x) for x in row] for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)] if A else []


def row_reduce(F: GF2m, rows: Sequence[Sequence[int]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    M = [list(r) for r in rows]
    pivots: List[int] = []
    if not M:
        return [], pivots
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv_int(M[r][c])
        M[r] = [F.mul_int(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x ^ F.mul_int(f, y) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F: GF2m, rows: Sequence[Sequence[int]]) -> int:
    return len(row_reduce(F, rows)[0])


def nullspace(F: GF2m, A: Matrix) -> Matrix:
    """Basis of {x : A x = 0} (column vectors returned as rows)."""
    if not A:
        return []
    n = len(A[0])
    R, pivots = row_reduce(F, A)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for row, p in zip(R, pivots):
            x[p] = row[f]  # char 2: -row[f] == row[f]
        basis.append(x)
    return basis


def left_nullspace(F: GF2m, A: Matrix) -> Matrix:
    """Basis of {x : x A = 0}."""
    return nullspace(F, transpose(A))


def solve(F: GF2m, A: Matrix, b: Sequence[int]) -> Optional[List[int]]:
    """One solution of A x = b, or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = row_reduce(F, aug)
    if n in pivots:
        return None
    x = [0] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def in_span(F: GF2m, rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return rank(F, list(rows) + [list(v)]) == rank(F, rows)


def inverse(F: GF2m, A: Matrix) -> Matrix:
    n = len(A)
    R, pivots = row_reduce(F, [list(row) + identity(n)[i] for i, row in enumerate(A)])
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def power(F: GF2m, A: Matrix, k: int) -> Matrix:
    result = identity(len(A))
    base = A
    while k:
        if k & 1:
            result = matmul(F, result, base)
        base = matmul(F, base, base)
        k >>= 1
    return result


def is_zero(A: Matrix) -> bool:
    return all(not x for row in A for x in row)
