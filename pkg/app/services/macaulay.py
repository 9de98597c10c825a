"""
Macaulay-matrix membership oracle over F_p.

f lies in I up to degree D when f is in the span of all products m*g, g a
generator and m a monomial with deg(m*g) <= D. The test compares the rank of
that matrix with and without the row of f. Independent of Buchberger, so it is
used to cross-check normal forms.
"""

from itertools import combinations_with_replacement

import numpy as np

from app.errors import CharacteristicError


def monomials_up_to(n, degree):
    """All exponent tuples in n variables of total degree <= degree."""
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            exp = [0] * n
            for i in combo:
                exp[i] += 1
            out.append(tuple(exp))
    return out


def rank_mod_p(matrix, p):
    """Row rank of an integer matrix over F_p."""
    A = np.array(matrix, dtype=np.int64) % p
    if A.size == 0:
        return 0
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pivot = r + nz[0]
        if pivot != r:
            A[[r, pivot]] = A[[pivot, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        mask = A[:, c] != 0
        mask[r] = False
        if mask.any():
            A[mask] = (A[mask] - np.outer(A[mask, c], A[r])) % p
        r += 1
        if r == rows:
            break
    return r


def macaulay_rows(ideal, degree):
    """Monomial multiples of the generators up to degree, plus the column index."""
    ring = ideal.ring
    columns = {m: i for i, m in enumerate(monomials_up_to(ring.ngens, degree))}
    rows = []
    for g in ideal.generators:
        dg = g.total_degree()
        for m in monomials_up_to(ring.ngens, degree - dg) if dg <= degree else []:
            row = [0] * len(columns)
            for gm, c in g.items():
                row[columns[tuple(a + b for a, b in zip(gm, m))]] = int(c)
            rows.append(row)
    return rows, columns


def macaulay_member(f, ideal, degree=None):
    """Degree-truncated membership test by linear algebra mod p."""
    p = ideal.ring.field.characteristic
    if p == 0:
        raise CharacteristicError("the Macaulay oracle works over F_p only")
    if f.is_zero():
        return True
    degree = max(degree or 0, f.total_degree())
    rows, columns = macaulay_rows(ideal, degree)
    target = [0] * len(columns)
    for m, c in f.items():
        target[columns[m]] = int(c)
    if not rows:
        return False
    return rank_mod_p(rows, p) == rank_mod_p(rows + [target], p)
