"""Core arithmetic, norms, positivity, and the order structure."""

import numpy as np
import pytest

from vnalg import (adjoint, add, equal, imag_part, is_effect,
                   is_positive, is_self_adjoint, leq, make_algebra, mul,
                   operator_norm, orthosupplement, real_part, scalar_mul)
from vnalg.errors import AlgebraMismatch
from vnalg.sampling import random_element, random_positive, random_self_adjoint


def test_make_algebra_dimensions():
    assert make_algebra([2]).dim == 4
    assert make_algebra([2, 3]).dim == 13
    assert make_algebra([1, 1]).dims == (1, 1)  # the classical bit


def test_make_algebra_rejects_bad_dims():
    with pytest.raises(ValueError):
        make_algebra([0])
    with pytest.raises(ValueError):
        make_algebra([2, -1])


def test_basis_enumeration_order():
    alg = make_algebra([2, 1])
    basis = alg.basis()
    assert len(basis) == 5
    # Block-major, then row-major within each block.
    assert basis[1].blocks[0][0, 1] == 1.0
    assert basis[4].blocks[1][0, 0] == 1.0


def test_real_part_of_nilpotent():
    alg = make_algebra([2])
    a = alg.element([np.array([[0, 1], [0, 0]])])
    expected = alg.element([0.5 * np.array([[0, 1], [1, 0]])])
    assert equal(real_part(a), expected)


@pytest.mark.parametrize("seed", range(5))
def test_sum_of_squares_identity(seed):
    # a*a + aa* = 2(Re(a)^2 + Im(a)^2)
    alg = make_algebra([3, 2])
    a = random_element(alg, np.random.default_rng(seed))
    lhs = add(mul(adjoint(a), a), mul(a, adjoint(a)))
    re, im = real_part(a), imag_part(a)
    rhs = scalar_mul(2.0, add(mul(re, re), mul(im, im)))
    assert equal(lhs, rhs)


@pytest.mark.parametrize("seed", range(5))
def test_adjoint_involution(seed):
    alg = make_algebra([2, 2])
    a = random_element(alg, np.random.default_rng(seed))
    assert equal(adjoint(adjoint(a)), a)


def test_operator_norm_examples():
    alg = make_algebra([2])
    assert operator_norm(alg.element([np.array([[0, 2], [0, 0]])])) == pytest.approx(2.0)
    assert operator_norm(make_algebra([3]).unit()) == pytest.approx(1.0)
    assert operator_norm(alg.element([np.diag([3.0, -4.0])])) == pytest.approx(4.0)


@pytest.mark.parametrize("seed", range(8))
def test_cstar_identity_and_submultiplicativity(seed):
    rng = np.random.default_rng(seed)
    alg = make_algebra([3, 1])
    a = random_element(alg, rng)
    b = random_element(alg, rng)
    na = operator_norm(a)
    assert abs(operator_norm(mul(adjoint(a), a)) - na * na) <= 1e-9 * (1 + na * na)
    assert operator_norm(mul(a, b)) <= na * operator_norm(b) + 1e-9


@pytest.mark.parametrize("seed", range(6))
def test_astar_a_positive(seed):
    alg = make_algebra([2, 3])
    a = random_element(alg, np.random.default_rng(seed))
    assert is_positive(mul(adjoint(a), a))


def test_positivity_rejects_clear_negatives():
    alg = make_algebra([2])
    assert not is_positive(alg.element([np.diag([1.0, -0.01])]))
    assert not is_positive(alg.element([np.array([[0, 1], [0, 0]])]))


def test_square_not_monotone_hint_instance():
    # a <= b yet a^2 is not below b^2.
    alg = make_algebra([2])
    a = alg.element([np.diag([1.0, 0.0])])
    b = add(a, alg.element([0.5 * np.ones((2, 2))]))
    assert leq(a, b)
    assert not leq(mul(a, a), mul(b, b))


@pytest.mark.parametrize("seed", range(5))
def test_order_unit_bound(seed):
    alg = make_algebra([3])
    a = random_self_adjoint(alg, np.random.default_rng(seed))
    n = operator_norm(a)
    assert leq(a, alg.scalar(n)) and leq(alg.scalar(-n), a)


@pytest.mark.parametrize("seed", range(5))
def test_positive_cone(seed):
    rng = np.random.default_rng(seed)
    alg = make_algebra([2, 2])
    a = random_positive(alg, rng)
    b = random_positive(alg, rng)
    assert is_positive(add(a, b))
    assert is_positive(scalar_mul(3.5, a))


@pytest.mark.parametrize("seed", range(5))
def test_order_respected_by_conjugation(seed):
    rng = np.random.default_rng(seed)
    alg = make_algebra([3])
    a = random_positive(alg, rng)
    b = add(a, random_positive(alg, rng))
    c = random_element(alg, rng)
    assert leq(mul(mul(adjoint(c), a), c), mul(mul(adjoint(c), b), c))


def test_effects_and_orthosupplement():
    alg = make_algebra([2])
    a = alg.element([np.diag([0.25, 0.75])])
    assert is_effect(a)
    assert equal(orthosupplement(a), alg.element([np.diag([0.75, 0.25])]))
    assert not is_effect(alg.element([np.diag([1.5, 0.0])]))


def test_algebra_mismatch_raises():
    a = make_algebra([2]).unit()
    b = make_algebra([3]).unit()
    with pytest.raises(AlgebraMismatch):
        add(a, b)


def test_empty_algebra_vacuous_truth():
    alg = make_algebra([])
    zero = alg.zero()
    assert operator_norm(zero) == 0.0
    assert is_positive(zero)
    assert is_effect(zero)
    assert is_self_adjoint(zero)
    assert equal(zero, alg.unit())


def test_coords_round_trip():
    alg = make_algebra([2, 3])
    rng = np.random.default_rng(0)
    a = random_element(alg, rng)
    assert equal(alg.from_coords(a.coords()), a)
