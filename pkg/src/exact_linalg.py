"""Exact rational linear algebra on top of sympy's DomainMatrix."""

from fractions import Fraction
from typing import Sequence, Union

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix


Scalar = Union[int, Fraction]


def to_qq(x: Scalar):
    """Fraction/int -> QQ element."""
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def from_domain(x, domain=QQ) -> Fraction:
    """Domain element -> Fraction."""
    r = domain.to_sympy(x)
    return Fraction(int(r.p), int(r.q))


def dense(rows: Sequence[Sequence[Scalar]]) -> DomainMatrix:
    """Dense DomainMatrix over QQ from nested rows."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    return DomainMatrix([[to_qq(x) for x in row] for row in rows], (m, n), QQ)


def sparse_integer(entries: dict[int, dict[int, int]], shape: tuple[int, int]) -> DomainMatrix:
    """Sparse DomainMatrix over ZZ from a dict of nonzero rows."""
    dod = {}
    for i, row in entries.items():
        cleaned = {j: ZZ(v) for j, v in row.items() if v}
        if cleaned:
            dod[i] = cleaned
    return DomainMatrix(dod, shape, ZZ)


def to_rows(M: DomainMatrix) -> list[list[Fraction]]:
    """DomainMatrix -> nested Fractions."""
    matrix = M.to_Matrix()
    return [
        [Fraction(int(matrix[i, j].p), int(matrix[i, j].q)) for j in range(matrix.cols)]
        for i in range(matrix.rows)
    ]


def rank(M: DomainMatrix) -> int:
    """Exact rank; integer matrices are eliminated over QQ."""
    if M.domain != QQ:
        M = M.convert_to(QQ)
    return M.rank()


def power_ranks(M: DomainMatrix, p_max: int) -> list[int]:
    """rank(M^p) for p = 0..p_max, stopping early once the rank stops changing."""
    ranks = [M.shape[0]]
    power = M
    for p in range(1, p_max + 1):
        ranks.append(rank(power))
        if ranks[-1] == ranks[-2] or ranks[-1] == 0:
            break
        power = power * M
    return ranks


def nullspace(M: DomainMatrix) -> list[list[Fraction]]:
    """Basis of the right nullspace as Fraction vectors."""
    if M.domain != QQ:
        M = M.convert_to(QQ)
    basis = M.nullspace()
    if basis.shape[0] == 0:
        return []
    return to_rows(basis)


def inverse(rows: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    return to_rows(dense(rows).inv())


def charpoly(rows: Sequence[Sequence[Scalar]]) -> list[Fraction]:
    """Coefficients of det(x*1 - M), lowest degree first."""
    coefficients = dense(rows).charpoly()
    return [from_domain(c) for c in reversed(coefficients)]


def matvec(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in rows]


def transpose(rows: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    return [list(col) for col in zip(*rows)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]
