"""Exact integer and rational arithmetic primitives.

Python integers are already arbitrary precision and ``fractions.Fraction``
keeps a reduced numerator over a positive denominator, so these wrappers
only add the input contracts the rest of the package relies on, plus an
exact determinant.  No floating point anywhere.
"""

from fractions import Fraction
from math import gcd, lcm

from .errors import InputError


def gcd_list(xs):
    """Positive generator of the integer ideal spanned by ``xs``.

    Returns the gcd of the absolute values; 0 only when every input is 0.
    The empty generating set is not permitted here: callers that mean the
    unit ideal must pass [1] explicitly.
    """
    xs = list(xs)
    if not xs:
        raise InputError("gcd_list: empty list")
    return gcd(*xs)


def lcm_list(xs):
    """Least common multiple of positive integers."""
    xs = list(xs)
    if not xs:
        raise InputError("lcm_list: empty list")
    for x in xs:
        if x <= 0:
            raise InputError(f"lcm_list: nonpositive input {x}")
    return lcm(*xs)


def divides(d, x):
    """Whether d divides x, with 0 dividing only 0."""
    if d == 0:
        return x == 0
    return x % d == 0


def exact_determinant(rows):
    """Exact determinant of a square matrix of ints or Fractions.

    Gaussian elimination over Fraction with the first nonzero entry in each
    column (by row order) as pivot, so the result is deterministic.  Returns
    a Fraction; the 0x0 matrix has determinant 1.
    """
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise InputError("exact_determinant: matrix is not square")
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot_row = r
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            det = -det
        pivot = m[col][col]
        det *= pivot
        for r in range(col + 1, n):
            factor = m[r][col] / pivot
            if factor == 0:
                continue
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det


def leading_principal_minors(rows):
    """All n leading principal minors of a square integer matrix.

    Fraction-free (Bareiss) elimination without pivoting: the k-th pivot of
    the reduced matrix *is* the k-th leading minor.  A zero pivot means the
    corresponding minor is 0, which is all definiteness checks need, so the
    remaining minors are reported as 0 and elimination stops there.
    """
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise InputError("leading_principal_minors: matrix is not square")
    m = [list(row) for row in rows]
    minors = []
    prev = 1
    for k in range(n):
        pivot = m[k][k]
        minors.append(pivot)
        if pivot == 0:
            minors.extend([0] * (n - k - 1))
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
        prev = pivot
    return minors


def is_negative_definite(rows):
    """Exact negative-definiteness test: leading minors alternate in sign."""
    minors = leading_principal_minors(rows)
    return all((-1) ** (k + 1) * mk > 0 for k, mk in enumerate(minors))
