"""
Hilbert series of monomial quotients and the invariants read off them:
Krull dimension, graded multiplicity and colength.
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

from app.errors import NotHomogeneousError, NotMonomialError, PreconditionError, UnitIdealError
from app.services.groebner import Ideal, radical_member
from app.services.poly import MonomialOrder, mono_divides

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HilbertData:
    numerator: tuple          # N(t) with HS = N(t) / (1-t)^nvars
    nvars: int
    dimension: int
    degree: int
    reduced: tuple            # N(t) after cancelling every (1-t) factor

    def series(self, upto):
        return series_coefficients(self.numerator, self.nvars, upto)


# =========================
# INTEGER POLYNOMIALS IN t (coefficient lists, lowest degree first)
# =========================

def _trim(a):
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _padd(a, b):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pmul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _shift(a, k):
    return _trim([0] * k + list(a))


def _one_minus_t_power(d):
    out = [0] * (d + 1)
    out[0] += 1
    out[d] -= 1
    return _trim(out)


# =========================
# MONOMIAL IDEALS
# =========================

def _minimal(gens):
    out = []
    for m in sorted(set(gens), key=lambda e: (sum(e), e)):
        if all(not mono_divides(g, m) for g in out):
            out.append(m)
    return tuple(sorted(out))


def _numerator(gens, n, memo):
    gens = _minimal(gens)
    if gens in memo:
        return memo[gens]
    counts = [sum(1 for m in gens if m[i]) for i in range(n)]
    pivot = max(range(n), key=lambda i: (counts[i], -i)) if n else None
    if pivot is None or counts[pivot] <= 1:
        # pairwise coprime generators
        result = [1]
        for m in gens:
            result = _pmul(result, _one_minus_t_power(sum(m)))
    else:
        x = tuple(1 if i == pivot else 0 for i in range(n))
        plus = [m for m in gens if not m[pivot]] + [x]
        quotient = [tuple(max(a - b, 0) for a, b in zip(m, x)) for m in gens]
        result = _padd(_numerator(plus, n, memo), _shift(_numerator(quotient, n, memo), 1))
    memo[gens] = result
    return result


def _exponents(M):
    out = []
    for g in M.generators:
        if not g.is_monomial():
            raise NotMonomialError(f"{g} is not a monomial")
        out.append(next(iter(g.monomials())))
    return out


def leading_ideal(G):
    """Monomial ideal of the leading monomials of a Groebner basis."""
    ring = G.ideal.ring
    return Ideal(ring, tuple(ring.monomial(m) for m in G.leading_monomials()))


def hilbert_numerator(M):
    """N(t) with HS(k[x]/M) = N(t) / (1-t)^n, as an integer coefficient list."""
    n = M.ring.ngens
    gens = _exponents(M)
    if not gens:
        return [1]
    return _numerator(gens, n, {})


def _cancel(numerator, n):
    q, k = list(numerator), 0
    while k < n and sum(q) == 0:
        # q(t) = (1 - t) * r(t) with r_i the partial sums of q
        acc, r = 0, []
        for c in q[:-1]:
            acc += c
            r.append(acc)
        q, k = _trim(r or [0]), k + 1
    return q, k


def hilbert_data_monomial(M):
    numerator = hilbert_numerator(M)
    n = M.ring.ngens
    if numerator == [0]:
        raise UnitIdealError("the quotient by the unit ideal is zero")
    reduced, k = _cancel(numerator, n)
    return HilbertData(tuple(numerator), n, n - k, sum(reduced), tuple(reduced))


def hilbert_data(ideal):
    """HilbertData of ring/I through the degrevlex leading ideal."""
    G = ideal.groebner(MonomialOrder.degrevlex())
    if G.is_unit():
        raise UnitIdealError(f"{ideal} is the unit ideal")
    return hilbert_data_monomial(leading_ideal(G))


def krull_dim(ideal):
    """Krull dimension of ring/I; -1 for the unit ideal (empty spectrum)."""
    G = ideal.groebner(MonomialOrder.degrevlex())
    if G.is_unit():
        return -1
    return hilbert_data_monomial(leading_ideal(G)).dimension


def multiplicity_graded(ideal):
    if not ideal.is_homogeneous():
        raise NotHomogeneousError(f"{ideal} is not homogeneous; use the local multiplicity")
    data = hilbert_data(ideal)
    logger.debug("graded multiplicity: dim %d, degree %d", data.dimension, data.degree)
    return data.degree


def supported_at_origin(ideal):
    """Every variable lies in rad(I), so V(I) is the origin alone."""
    return all(radical_member(x, ideal) for x in ideal.ring.gens())


def colength(ideal, at_origin=False):
    """dim_k ring/I, i.e. the number of standard monomials; math.inf when dim > 0.

    With at_origin the count is the length of the local quotient at the origin,
    which requires I to vanish only there (PreconditionError otherwise).
    """
    G = ideal.groebner(MonomialOrder.degrevlex())
    if G.is_unit():
        return 0
    data = hilbert_data_monomial(leading_ideal(G))
    if data.dimension > 0:
        return math.inf
    if at_origin and not supported_at_origin(ideal):
        raise PreconditionError(f"{ideal} has zeros away from the origin; use local_colength")
    return data.degree


# =========================
# BRUTE-FORCE COUNTERPARTS
# =========================

def hilbert_function(M, d):
    """Number of degree-d monomials outside the monomial ideal M."""
    n = M.ring.ngens
    gens = _exponents(M)
    count = 0
    for combo in combinations_with_replacement(range(n), d):
        exp = tuple(combo.count(i) for i in range(n))
        if not any(mono_divides(g, exp) for g in gens):
            count += 1
    return count


def series_coefficients(numerator, n, upto):
    """Coefficients of N(t) / (1-t)^n in degrees 0..upto."""
    out = []
    for d in range(upto + 1):
        total = 0
        for i, c in enumerate(numerator):
            if i <= d:
                total += c * (comb(d - i + n - 1, n - 1) if n else int(d == i))
        out.append(total)
    return out
