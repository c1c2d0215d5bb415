"""Region counts from point counts over prime fields.

For a large prime ``q`` the number of points of ``(Z/q)^n`` avoiding every
hyperplane is the characteristic polynomial evaluated at ``q``.  Counting at
``n + 1`` primes pins the polynomial down; the region count is
``(-1)^n * chi(-1)``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Sequence

import numpy as np
from numba import njit

from .arrangement import ArrangementSpec

__all__ = [
    "IntPolynomial",
    "InterpolationError",
    "characteristic_polynomial",
    "complement_count_mod_q",
    "default_prime_bound",
    "is_prime",
    "region_count_zaslavsky",
]


class InterpolationError(ArithmeticError):
    """Point counts did not come from a monic integer polynomial of the right degree."""


class IntPolynomial:
    """Exact integer polynomial; ``coeffs[d]`` is the coefficient of ``q^d``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(int(x) for x in c) or (0,)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            mag = abs(c)
            body = "q" if d == 1 else (f"q^{d}" if d else "")
            if body and mag == 1:
                term = body
            else:
                term = f"{mag}{body}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, term))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in terms[1:]:
            out += f" {sign} {term}"
        return out


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def default_prime_bound(spec: ArrangementSpec) -> int:
    return max(spec.n * (2 * spec.m + 2), 2 * spec.n + 1)


def _primes_above(bound: int, count: int) -> list[int]:
    out = []
    q = bound + 1
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q += 1
    return out


@njit(cache=True, nogil=True)
def _apply(i, a, delta, q, cstart, ctarget, coffset, forb, nforb):
    for c in range(cstart[i], cstart[i + 1]):
        j = ctarget[c]
        t = a - coffset[c]
        if t < 0:
            t += q
        if delta > 0:
            if forb[j, t] == 0:
                nforb[j] += 1
            forb[j, t] += 1
        else:
            forb[j, t] -= 1
            if forb[j, t] == 0:
                nforb[j] -= 1


@njit(cache=True, nogil=True)
def _count_with_first_fixed(n, q, cstart, ctarget, coffset):
    # depth-first over x_2..x_{n-1}; the last coordinate is counted directly
    if n == 1:
        return 1
    forb = np.zeros((n, q), np.int32)
    nforb = np.zeros(n, np.int64)
    val = np.full(n, -1, np.int64)
    _apply(0, 0, 1, q, cstart, ctarget, coffset, forb, nforb)
    total = 0
    level = 1
    while True:
        if level == n - 1:
            total += q - nforb[level]
            level -= 1
            if level == 0:
                break
            _apply(level, val[level], -1, q, cstart, ctarget, coffset, forb, nforb)
            continue
        v = val[level] + 1
        while v < q and forb[level, v] > 0:
            v += 1
        if v == q:
            val[level] = -1
            level -= 1
            if level == 0:
                break
            _apply(level, val[level], -1, q, cstart, ctarget, coffset, forb, nforb)
            continue
        val[level] = v
        _apply(level, v, 1, q, cstart, ctarget, coffset, forb, nforb)
        level += 1
    return total


def _constraint_arrays(spec: ArrangementSpec, q: int):
    # constraint (i, j, s) with i < j forbids x_j = x_i - s once x_i is known
    starts = [0]
    targets: list[int] = []
    offsets: list[int] = []
    for i in range(1, spec.n + 1):
        for j in range(i + 1, spec.n + 1):
            for s in spec.offsets(i, j):
                targets.append(j - 1)
                offsets.append(s % q)
        starts.append(len(targets))
    return (
        np.array(starts, dtype=np.int64),
        np.array(targets, dtype=np.int64),
        np.array(offsets, dtype=np.int64),
    )


def complement_count_mod_q(spec: ArrangementSpec, q: int, *, check: bool = True) -> int:
    """Points of ``(Z/q)^n`` on none of the hyperplanes.

    Differences are translation invariant, so ``x_1`` is fixed to 0 and the
    result multiplied by ``q``.
    """
    if check:
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        if q <= 2 * spec.m + 2:
            raise ValueError(f"prime {q} is too small for offsets up to {spec.m}")
    cstart, ctarget, coffset = _constraint_arrays(spec, q)
    return q * int(_count_with_first_fixed(spec.n, q, cstart, ctarget, coffset))


def _interpolate(points: list[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (low to high) of the polynomial through ``points``."""
    size = len(points)
    coeffs = [Fraction(0)] * size
    for idx, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = 1
        for jdx, (xj, _) in enumerate(points):
            if jdx == idx:
                continue
            # multiply basis by (x - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for d, c in enumerate(basis):
                nxt[d] -= c * xj
                nxt[d + 1] += c
            basis = nxt
            denom *= xi - xj
        scale = Fraction(yi, denom)
        for d, c in enumerate(basis):
            coeffs[d] += c * scale
    return coeffs


def _fit(spec: ArrangementSpec, primes: list[int], workers: int) -> IntPolynomial:
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(lambda q: complement_count_mod_q(spec, q), primes))
    else:
        counts = [complement_count_mod_q(spec, q) for q in primes]
    coeffs = _interpolate(list(zip(primes, counts)))
    if any(c.denominator != 1 for c in coeffs):
        raise InterpolationError("interpolated coefficients are not integers")
    poly = IntPolynomial([int(c) for c in coeffs])
    if poly.degree != spec.n or poly.coeffs[-1] != 1:
        raise InterpolationError(f"expected a monic polynomial of degree {spec.n}, got {poly}")
    return poly


def characteristic_polynomial(
    spec: ArrangementSpec, *, prime_bound: int | None = None, workers: int = 1
) -> IntPolynomial:
    """Interpolate from ``n + 1`` primes and confirm with a disjoint set.

    On disagreement the bound is doubled once before giving up.
    """
    bound = default_prime_bound(spec) if prime_bound is None else prime_bound
    last_error: Exception | None = None
    for _ in range(2):
        primes = _primes_above(bound, 2 * (spec.n + 1))
        try:
            first = _fit(spec, primes[: spec.n + 1], workers)
            second = _fit(spec, primes[spec.n + 1:], workers)
        except InterpolationError as exc:
            last_error = exc
        else:
            if first == second:
                return first
            last_error = InterpolationError(f"unstable interpolation: {first} vs {second}")
        bound *= 2
    raise InterpolationError(str(last_error))


def region_count_zaslavsky(spec: ArrangementSpec, *, prime_bound: int | None = None, workers: int = 1) -> int:
    """``(-1)^n * chi(-1)``."""
    poly = characteristic_polynomial(spec, prime_bound=prime_bound, workers=workers)
    value = poly(-1)
    return -value if spec.n & 1 else value
