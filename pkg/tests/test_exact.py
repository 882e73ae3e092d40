import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError
from sympy.ntheory import n_order

from discriminators.engine import discriminator_profile
from discriminators.exact import (
    CollisionWitness,
    PartitionedFactorization,
    closed_form_discriminator,
    collision_witness,
    order_of_t_squared,
    partition_factorization,
    recombine_components,
    scaled_discriminator_transfer,
    verify_lemma1,
    verify_lemma2,
    verify_lemma4,
    witness_components,
    within_linear_bound,
)
from discriminators.families import find_b, make_exp_sequence, make_reference_sequence
from tests.conftest import ODD_T
from utils.errors import DomainError

GRID_T = [3, 5, 7, 9, 11, 15, 17]


@pytest.mark.parametrize("n,d", [(1, 1), (2, 2), (3, 4), (4, 4), (5, 8), (1024, 1024), (1025, 2048)])
def test_closed_form(n, d):
    assert closed_form_discriminator(n) == d


def test_closed_form_rejects_zero():
    with pytest.raises(DomainError):
        closed_form_discriminator(0)


@pytest.mark.parametrize("t", ODD_T)
def test_t_squared_congruences(t):
    assert verify_lemma1(t)
    for k in range(1, 13):
        assert verify_lemma2(t, k)


@pytest.mark.parametrize("t", GRID_T)
def test_order_of_t_squared(t):
    b = find_b(t)
    for k in range(1, 11):
        assert order_of_t_squared(t, k) == 1 << k
        assert n_order(t * t, 1 << (k + b)) == 1 << k


def test_k_lower_bounds():
    with pytest.raises(DomainError):
        verify_lemma2(3, 0)
    with pytest.raises(DomainError):
        order_of_t_squared(3, 0)
    with pytest.raises(DomainError):
        verify_lemma4(3, 0, -1)


@pytest.mark.parametrize("t", [3, 7, 9, -5])
def test_power_of_two_discriminates_consecutive_windows(t):
    for start in range(0, 17):
        for k in range(0, 6):
            assert verify_lemma4(t, start, k)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(ODD_T),
    st.integers(-9, 9).filter(lambda a: a % 2 == 1),
    st.integers(0, 6),
)
def test_brute_force_matches_closed_form(t, a, c):
    s = make_exp_sequence(a, t, c)
    for r in discriminator_profile(s, 64):
        assert r.d == closed_form_discriminator(r.n)


@pytest.mark.slow
@pytest.mark.parametrize("t", GRID_T)
def test_brute_force_matches_closed_form_full_grid(t):
    for a in (1, 3, 5, -3):
        for c in range(9):
            s = make_exp_sequence(a, t, c)
            assert [r.d for r in discriminator_profile(s, 256)] == [
                closed_form_discriminator(n) for n in range(1, 257)
            ]


@pytest.mark.parametrize(
    "t,k,m,i,j,full",
    [(3, 2, 6, 1, 3, 48), (3, 2, 5, 0, 2, 40), (3, 0, 1, 0, 1, 8), (9, 4, 27, 1, 2, 432)],
)
def test_collision_witness_values(t, k, m, i, j, full):
    w = collision_witness(t, k, m)
    assert (w.i, w.j, w.modulus_full) == (i, j, full)
    assert w.verified
    assert w.model_dump() == {"t": t, "b": find_b(t), "k": k, "m": m, "i": i, "j": j, "modulus_full": full, "verified": True}


@pytest.mark.parametrize("t", GRID_T)
def test_witness_exists_below_the_boundary(t):
    for k in range(0, 9):
        for m in range(1, 1 << (k + 1)):
            w = collision_witness(t, k, m)
            assert 0 <= w.i < w.j <= 1 << k
            g = t * t
            assert pow(g, w.i, w.modulus_full) == pow(g, w.j, w.modulus_full)


@pytest.mark.parametrize("t", [3, 5, 9, -7])
def test_no_witness_at_the_boundary(t):
    for k in range(0, 6):
        with pytest.raises(DomainError, match="no colliding pair"):
            collision_witness(t, k, 1 << (k + 1))


@pytest.mark.parametrize("t,k,m", [(3, 2, 9), (3, 2, 0), (3, -1, 1), (4, 2, 3), (1, 2, 3)])
def test_witness_rejects(t, k, m):
    with pytest.raises(DomainError):
        collision_witness(t, k, m)


@given(st.sampled_from(ODD_T), st.integers(0, 7), st.data())
def test_witness_components_recombine(t, k, data):
    m = data.draw(st.integers(1, (1 << (k + 1)) - 1))
    w = collision_witness(t, k, m)
    part = partition_factorization(m, t)
    parts = witness_components(w, part)
    assert all(lhs == rhs for _, lhs, rhs in parts)
    assert recombine_components(parts) == (pow(t * t, w.i, w.modulus_full), w.modulus_full)


def test_partition_factorization():
    part = partition_factorization(2 ** 2 * 3 ** 3 * 5, 15)
    assert part.x == 2
    assert part.p_part == ((3, 3, 1), (5, 1, 1))
    assert part.q_part == ()
    part = partition_factorization(7 * 49, 9)
    assert part.p_part == ()
    assert part.q_part == ((7, 3),)


def test_partition_and_witness_models_validate():
    with pytest.raises(ValidationError):
        PartitionedFactorization(m=12, t=3, x=1, p_part=((3, 1, 1),))
    with pytest.raises(ValidationError):
        PartitionedFactorization(m=5, t=5, x=0, q_part=((5, 1),))
    with pytest.raises(ValidationError):
        CollisionWitness(t=3, b=3, k=2, m=6, i=1, j=2, modulus_full=48)
    with pytest.raises(ValidationError):
        CollisionWitness(t=3, b=3, k=2, m=6, i=1, j=3, modulus_full=24)


def test_scaled_discriminator_transfer():
    assert scaled_discriminator_transfer(8, 3)
    assert scaled_discriminator_transfer(8, -5)
    assert not scaled_discriminator_transfer(6, 3)
    with pytest.raises(DomainError):
        scaled_discriminator_transfer(4, 0)


@pytest.mark.parametrize("scale", [-3, 3, 5, 7])
def test_odd_scaling_keeps_the_power_of_two(scale):
    from discriminators.families import scale_sequence

    base = make_exp_sequence(1, 3)
    scaled = scale_sequence(base, scale)
    assert [r.d for r in discriminator_profile(scaled, 40)] == [r.d for r in discriminator_profile(base, 40)]


def test_within_linear_bound():
    exp_profile = discriminator_profile(make_exp_sequence(1, 5), 100)
    assert within_linear_bound(exp_profile)
    squares = discriminator_profile(make_reference_sequence("squares"), 30)
    assert not within_linear_bound(squares, factor=1)
