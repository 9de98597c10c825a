import math
from itertools import combinations

import numpy as np
import pytest

from app.errors import NotHomogeneousError, NotMonomialError, PreconditionError, UnitIdealError
from app.services.coeff import Field
from app.services.groebner import Ideal
from app.services.hilbert import (
    colength,
    hilbert_data,
    hilbert_function,
    hilbert_numerator,
    krull_dim,
    leading_ideal,
    multiplicity_graded,
    series_coefficients,
    supported_at_origin,
)
from app.services.poly import MonomialOrder, Ring

Q = Field.rationals()
R2 = Ring(Q, ('x', 'y'))
R3 = Ring(Q, ('x', 'y', 'z'))
COORDS = ('x11', 'x12', 'x21', 'y11', 'y12', 'y21')

SPLIT_V0 = (
    "-x11^2 - x12*x21",
    "x11^2*y12 - 2*x11*x12*y11 - x12^2*y21",
    "x21^2*y12 + 2*x11*x21*y11 - x11^2*y21",
    "x11*x21*y12 - 2*x12*x21*y11 + x11*x12*y21",
)


def split_ideal(p):
    return Ideal.parse(Ring(Field.prime(p), COORDS), *SPLIT_V0)


def test_leading_ideal():
    G = Ideal.parse(R2, "x^2 - y").groebner(MonomialOrder.degrevlex())
    assert leading_ideal(G).generators == (R2.parse("x^2"),)
    G = Ideal.parse(R2, "x", "y").groebner()
    assert set(leading_ideal(G).generators) == {R2.parse("x"), R2.parse("y")}


def test_hilbert_numerators():
    assert hilbert_numerator(Ideal.parse(R2, "x*y")) == [1, 0, -1]
    assert hilbert_numerator(Ideal.parse(R2, "x^2", "x*y", "y^2")) == [1, 0, -3, 2]
    assert hilbert_numerator(Ideal(R3, ())) == [1]
    with pytest.raises(NotMonomialError):
        hilbert_numerator(Ideal.parse(R2, "x + y"))


@pytest.mark.parametrize("texts", [
    ("x^2", "x*y", "y^2"),
    ("x*y", "y*z", "x*z"),
    ("x^3", "y^2*z", "x*z^2"),
    ("x^2*y", "y^3", "z^4", "x*y*z"),
])
def test_numerator_matches_brute_force(texts):
    M = Ideal.parse(R3, *texts)
    coefficients = series_coefficients(hilbert_numerator(M), 3, 8)
    assert coefficients == [hilbert_function(M, d) for d in range(9)]


def test_krull_dim():
    assert krull_dim(Ideal(Ring(Q, COORDS), ())) == 6
    assert krull_dim(Ideal.parse(R2, "1")) == -1
    assert krull_dim(Ideal.parse(R3, "x*y", "x*z")) == 2
    assert krull_dim(split_ideal(5)) == 4


def test_annihilator_generators_drop_dimension():
    ring = Ring(Field.prime(5), COORDS)
    ideal = Ideal.parse(ring, *SPLIT_V0, "x11", "x12", "x21")
    assert krull_dim(ideal) <= 3


def test_multiplicity_graded():
    data = hilbert_data(Ideal.parse(R2, "x^2"))
    assert (data.dimension, data.degree) == (1, 2)
    assert multiplicity_graded(Ideal.parse(R3, "x^2 - y*z")) == 2
    with pytest.raises(NotHomogeneousError):
        multiplicity_graded(Ideal.parse(R2, "x^2 - y"))
    with pytest.raises(UnitIdealError):
        hilbert_data(Ideal.parse(R2, "1"))


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_split_multiplicity_is_four(p):
    assert multiplicity_graded(split_ideal(p)) == 4


def test_colength():
    ring = Ring(Q, ('x11', 'x12'))
    assert colength(Ideal.parse(ring, "x11^2", "x12^2")) == 4
    assert colength(Ideal.parse(Ring(Q, ('x11',)), "x11^2")) == 2
    assert colength(Ideal.parse(R2, "x")) == math.inf
    assert colength(Ideal.parse(R2, "1")) == 0


def test_hilbert_series_of_quadric():
    data = hilbert_data(Ideal.parse(R3, "x^2 - y*z"))
    # 1, 3, 5, 7, ...
    assert data.series(4) == [1, 3, 5, 7, 9]


def test_colength_at_origin_needs_origin_support():
    fat_point = Ideal.parse(R2, "x^2", "y^2")
    assert supported_at_origin(fat_point)
    assert colength(fat_point, at_origin=True) == 4
    two_points = Ideal.parse(R2, "x^2 - x", "y^2")
    assert colength(two_points) == 4
    assert not supported_at_origin(two_points)
    with pytest.raises(PreconditionError):
        colength(two_points, at_origin=True)


# =========================
# RANDOMIZED PROPERTIES (seeded)
# =========================

def random_monomial_ideal(rng, ring, max_gens=4, max_degree=4):
    gens = []
    for _ in range(int(rng.integers(1, max_gens + 1))):
        exp = tuple(int(e) for e in rng.integers(0, max_degree + 1, size=ring.ngens))
        if sum(exp) == 0:
            exp = (1,) + exp[1:]
        gens.append(ring.monomial(exp))
    return Ideal(ring, tuple(gens))


def independent_dimension(M):
    """Largest set of variables carrying no generator of the monomial ideal M."""
    n = M.ring.ngens
    supports = [{i for i, e in enumerate(g.leading_monomial()) if e} for g in M.generators]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            if not any(s <= set(subset) for s in supports):
                return size
    return -1


def test_random_numerators_match_brute_force():
    rng = np.random.default_rng(31)
    for _ in range(120):
        M = random_monomial_ideal(rng, R3)
        coefficients = series_coefficients(hilbert_numerator(M), 3, 9)
        assert coefficients == [hilbert_function(M, d) for d in range(10)], str(M)


def test_krull_dim_matches_subset_search():
    rng = np.random.default_rng(32)
    for _ in range(100):
        M = random_monomial_ideal(rng, R3)
        assert krull_dim(M) == independent_dimension(M), str(M)


def test_colength_finite_exactly_in_dimension_zero():
    rng = np.random.default_rng(33)
    seen = set()
    for _ in range(100):
        M = random_monomial_ideal(rng, R2, max_gens=3)
        finite = colength(M) != math.inf
        assert finite == (krull_dim(M) == 0), str(M)
        seen.add(finite)
    assert seen == {True, False}


@pytest.mark.parametrize("p", [5, 13])
def test_split_multiplicity_survives_linear_change_of_coordinates(p):
    rng = np.random.default_rng(p)
    ideal = split_ideal(p)
    ring = ideal.ring
    # unipotent triangular change: x_i -> x_i + sum_{j > i} c_ij x_j
    bindings = {}
    for i, name in enumerate(COORDS):
        image = ring.gen(name)
        for other in COORDS[i + 1:]:
            image = image + ring.gen(other) * int(rng.integers(0, p))
        bindings[name] = image
    moved = Ideal(ring, tuple(g.substitute(bindings) for g in ideal.generators))
    assert krull_dim(moved) == 4
    assert multiplicity_graded(moved) == 4
