"""Exact integer linear algebra used as an independent test oracle."""

from fractions import Fraction


def eigenvalue_multiplicity(a_rows, lam):
    """dim ker(A - lam*I) over the rationals, by Gauss elimination.

    a_rows: integer matrix as nested lists; lam: integer candidate
    eigenvalue.  Exact, so the returned multiplicity is authoritative.
    """
    n = len(a_rows)
    m = [
        [Fraction(a_rows[i][j]) - (Fraction(lam) if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    rank = 0
    for col in range(n):
        piv = None
        for r in range(rank, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = Fraction(1) / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(n):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return n - rank
