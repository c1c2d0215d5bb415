import itertools
from fractions import Fraction

import pytest

from braidregions.arrangement import ArrangementSpec, SplitMix64, preset, random_spec
from braidregions.boxed import bernardi_sum_brute
from braidregions.oracle import (
    IntPolynomial,
    _interpolate,
    characteristic_polynomial,
    complement_count_mod_q,
    default_prime_bound,
    is_prime,
    region_count_zaslavsky,
)


def naive_count(spec, q):
    total = 0
    for x in itertools.product(range(q), repeat=spec.n):
        if all((x[i - 1] - x[j - 1] - s) % q for (i, j), offs in spec.pairs().items() for s in offs):
            total += 1
    return total


def test_point_counts_match_naive():
    rng = SplitMix64(4)
    for _ in range(25):
        spec = random_spec(3, 2, 0.3, rng)
        for q in (7, 11):
            assert complement_count_mod_q(spec, q) == naive_count(spec, q), spec.to_json()
    spec = random_spec(4, 1, 0.4, rng)
    assert complement_count_mod_q(spec, 5) == naive_count(spec, 5)


def test_known_polynomials():
    assert str(characteristic_polynomial(preset("braid", 3))) == "q^3 - 3q^2 + 2q"
    # q (q - n)^(n - 1) for Shi and Ish
    assert characteristic_polynomial(preset("shi", 3)) == IntPolynomial([0, 9, -6, 1])
    assert characteristic_polynomial(preset("ish", 4)) == IntPolynomial([0, -64, 48, -12, 1])
    assert characteristic_polynomial(ArrangementSpec(2, {})) == IntPolynomial([0, 0, 1])


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 3), (3, 16), (4, 125), (5, 1296)])
def test_ish_regions(n, expected):
    assert region_count_zaslavsky(preset("ish", n)) == expected


def test_agrees_with_brute():
    rng = SplitMix64(21)
    for _ in range(20):
        spec = random_spec(3, 1, 0.4, rng)
        assert region_count_zaslavsky(spec) == bernardi_sum_brute(spec)


def test_workers_and_bounds():
    spec = preset("shi", 4)
    base = region_count_zaslavsky(spec)
    assert base == 125
    assert region_count_zaslavsky(spec, workers=3) == base
    assert region_count_zaslavsky(spec, prime_bound=200) == base
    assert default_prime_bound(spec) == 16


def test_bad_primes():
    spec = preset("ish", 3)
    with pytest.raises(ValueError):
        complement_count_mod_q(spec, 15)
    with pytest.raises(ValueError):
        complement_count_mod_q(spec, 5)


def test_interpolation_exact():
    pts = [(x, 3 * x**3 - x + 7) for x in (2, 5, 11, 13)]
    assert _interpolate(pts) == [Fraction(7), Fraction(-1), Fraction(0), Fraction(3)]


def test_polynomial_helpers():
    p = IntPolynomial([2, 0, -1, 0, 0])
    assert p.degree == 2 and p(3) == -7
    assert str(p) == "-q^2 + 2"
    assert str(IntPolynomial([0])) == "0" and IntPolynomial([0]).degree == -1
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]
