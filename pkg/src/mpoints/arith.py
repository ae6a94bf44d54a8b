"""Integer factorization and quadratic-order valuations.

Factorization is trial division up to a sieved bound followed by Brent's
cycle-finding rho on the survivors, with a deterministic Miller-Rabin
certificate (valid below 3.317e24; larger inputs are rejected).  Results
are cached by absolute value; the cache behaves as a pure function.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass, field
from typing import Optional

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


class ArithError(Exception):
    pass


def _trial_bound() -> int:
    return int(os.environ.get("MPOINTS_FACTOR_BOUND", "10000"))


def _small_primes(limit: int):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p:: p] = bytearray(len(sieve[p * p:: p]))
    return [i for i in range(limit + 1) if sieve[i]]


_primes_cache = {}


def small_primes(limit: int):
    if limit not in _primes_cache:
        _primes_cache[limit] = _small_primes(limit)
    return _primes_cache[limit]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below 3.317e24."""
    if n < 2:
        return False
    if n >= _MR_LIMIT:
        raise ArithError("input %d exceeds the deterministic primality range" % n)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int) -> int:
    """One nontrivial factor of a composite n (Brent's improvement of rho)."""
    if n % 2 == 0:
        return 2
    seed = 1
    while True:
        y, c, m = (seed * 2) % n or 1, (seed * 3) % n or 1, 128
        g, r, q = 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        seed += 1


@dataclass(frozen=True)
class Factorization:
    sign: int
    exponents: tuple   # ((prime, exponent), ...) with primes strictly increasing

    def as_dict(self):
        return dict(self.exponents)

    def value(self) -> int:
        out = self.sign
        for p, e in self.exponents:
            out *= p ** e
        return out


_cache = {}
_cache_lock = threading.Lock()


def factorize(n: int) -> Factorization:
    """Complete factorization of a nonzero integer."""
    if n == 0:
        raise ArithError("cannot factor 0")
    sign = -1 if n < 0 else 1
    m = abs(n)
    cached = _cache.get(m)
    if cached is None:
        cached = _factor_abs(m)
        with _cache_lock:
            prev = _cache.setdefault(m, cached)
            if prev != cached:  # pragma: no cover - pure function invariant
                raise ArithError("factor cache corruption at %d" % m)
    return Factorization(sign, cached)


def _factor_abs(m: int):
    exps = {}
    bound = _trial_bound()
    for p in small_primes(bound):
        if p * p > m:
            break
        while m % p == 0:
            exps[p] = exps.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        x = stack.pop()
        if x == 1:
            continue
        if is_prime(x):
            exps[x] = exps.get(x, 0) + 1
            continue
        # perfect powers first: rho is slow on them
        root = math.isqrt(x)
        if root * root == x:
            stack.extend([root, root])
            continue
        d = _brent(x)
        stack.extend([d, x // d])
    return tuple(sorted(exps.items()))


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ArithError("valuation of 0")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# quadratic places

@dataclass(frozen=True)
class QuadraticPlace:
    p: int
    behavior: str                      # "split" | "inert" | "ramified"
    d: int
    pi: Optional[tuple] = None         # split: (a, b) meaning a + b*sqrt(d), norm +-p


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def _split_generator(p: int, d: int):
    """An element of Z[sqrt(d)] of norm ±p, for the class-number-one d < 0
    shipped with the tool.  Other fields need a user-supplied generator."""
    if d >= 0:
        raise ArithError("real quadratic fields need a user-supplied place generator")
    for b in range(1, math.isqrt(p // (-d)) + 2):
        rem = p + d * b * b
        if rem <= 0:
            continue
        a = math.isqrt(rem)
        if a * a == rem:
            return (a, b)
    raise ArithError("no norm-%d element found; field of class number > 1?" % p)


def quadratic_place(p: int, d: int, pi: Optional[tuple] = None) -> QuadraticPlace:
    """Classify an odd prime in Q(sqrt d) and pick a split generator."""
    if d % 4 == 1:
        raise ArithError("orders Z[sqrt d] with d = 1 mod 4 are not maximal; unsupported")
    if p == 2 or d % p == 0:
        return QuadraticPlace(p, "ramified", d)
    sym = _legendre(d % p, p)
    if sym == 1:
        gen = tuple(pi) if pi is not None else _split_generator(p, d)
        a, b = gen
        if abs(a * a - d * b * b) != p:
            raise ArithError("supplied generator does not have norm ±%d" % p)
        return QuadraticPlace(p, "split", d, gen)
    return QuadraticPlace(p, "inert", d)


def _qdiv(z, w, d):
    """Exact division (a+b sqrt d)/(c+e sqrt d) in Z[sqrt d], or None."""
    a, b = z
    c, e = w
    n = c * c - d * e * e
    re = a * c - d * b * e
    im = b * c - a * e
    if re % n == 0 and im % n == 0:
        return (re // n, im // n)
    return None


def quadratic_valuations(x: int, y: int, place: QuadraticPlace, d: int):
    """Valuations of x + y*sqrt(d) at the two places above place.p.

    Split places return (v_pi, v_conj) by repeated exact division; inert
    places return the common value v_p(norm)/2 twice.  Ramified primes must
    be exempted upstream.
    """
    if place.d != d:
        raise ArithError("place does not belong to Q(sqrt %d)" % d)
    if x == 0 and y == 0:
        raise ArithError("valuation of 0")
    if place.behavior == "ramified":
        raise ArithError("prime %d ramifies; it must be in the exemption set" % place.p)
    norm = x * x - d * y * y
    if place.behavior == "inert":
        v = vp(norm, place.p)
        if v % 2 != 0:
            raise ArithError("odd inert valuation; impossible for a norm")
        return (v // 2, v // 2)
    pi = place.pi
    pibar = (pi[0], -pi[1])
    z = (x, y)
    v1 = 0
    while True:
        q = _qdiv(z, pi, d)
        if q is None:
            break
        z = q
        v1 += 1
    z = (x, y)
    v2 = 0
    while True:
        q = _qdiv(z, pibar, d)
        if q is None:
            break
        z = q
        v2 += 1
    if v1 + v2 != vp(norm, place.p):
        raise ArithError("split valuations do not add up to the norm valuation")
    return (v1, v2)


# ---------------------------------------------------------------------------
# multiplicity profiles of points against forms

@dataclass(frozen=True)
class MultiplicityProfile:
    """Per-prime valuation vectors of the boundary forms at a point."""
    entries: tuple       # ((p, vector), ...) sorted by p
    boundary: bool = False

    def as_dict(self):
        return dict(self.entries)


def evaluate_form(form, point):
    """Value of a homogeneous integer form, given as ((coeff, exps), ...)."""
    total = 0
    for coeff, exps in form:
        term = coeff
        for x, e in zip(point, exps):
            if e:
                term *= x ** e
        total += term
    return total


def valuation_vector(point, forms, exempt=()) -> MultiplicityProfile:
    """Valuation vectors (one slot per form) at all primes outside the
    exemption set dividing some form value.  A vanishing form marks the
    point as a boundary point."""
    values = [evaluate_form(f, point) for f in forms]
    if any(v == 0 for v in values):
        return MultiplicityProfile((), boundary=True)
    primes = set()
    for v in values:
        primes.update(p for p, _ in factorize(v).exponents)
    primes -= set(exempt)
    entries = []
    for p in sorted(primes):
        entries.append((p, tuple(vp(v, p) for v in values)))
    return MultiplicityProfile(tuple(entries))
