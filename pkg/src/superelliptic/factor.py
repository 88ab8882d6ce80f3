"""Polynomial factorization over finite fields.

Distinct-degree factorization followed by Cantor-Zassenhaus equal-degree
splitting (trace splitting in characteristic 2).  The randomized splitting
draws from a ``random.Random`` seeded by the caller, so runs are
reproducible.  Factorization over Q is out of scope; only squarefree parts
and linear-factor extraction are available there (see ``poly``).
"""

from __future__ import annotations

import random
from math import lcm

from .errors import DomainError
from .fields import ExtensionField, PrimeField
from .poly import Poly


def _require_finite(f):
    if not isinstance(f.field, (PrimeField, ExtensionField)):
        raise DomainError("factorization requires a finite coefficient field")


def factor(f, seed=0):
    """Factor f into monic irreducibles: [(g, multiplicity)], sorted
    canonically.  The leading coefficient is dropped; multiply it back with
    ``f.leading`` if you need the exact product."""
    _require_finite(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    rng = random.Random(f"factor:{seed}")
    out = []
    for g, m in f.squarefree_decomposition():
        for d, h in _distinct_degree(g):
            for irr in _equal_degree(h, d, rng):
                out.append((irr, m))
    out.sort(key=lambda t: t[0].sort_key())
    return out


def _distinct_degree(f):
    """[(d, product of irreducible factors of degree d)] for squarefree monic f."""
    q = f.field.order
    x = Poly.x(f.field)
    out = []
    h = x
    fstar = f
    d = 0
    while fstar.degree > 2 * (d + 1) - 1:
        d += 1
        h = h.powmod(q, fstar)
        g = (h - x).gcd(fstar)
        if g.degree > 0:
            out.append((d, g))
            fstar = fstar.exact_div(g)
            h = h % fstar
    if fstar.degree > 0:
        out.append((fstar.degree, fstar))
    return out


def _equal_degree(f, d, rng):
    """Split a product of degree-d irreducibles into its factors."""
    if f.degree == d:
        return [f.monic()]
    field = f.field
    q = field.order
    while True:
        r = Poly(field, [field.random(rng) for _ in range(f.degree)])
        if r.degree < 1:
            continue
        if q % 2 == 1:
            s = r.powmod((q**d - 1) // 2, f) - Poly(field, [field.one])
        else:
            s = Poly(field)
            t = r % f
            for _ in range(d * _abs_degree(field)):
                s = (s + t) % f
                t = t.powmod(2, f)
        g = s.gcd(f)
        if 0 < g.degree < f.degree:
            return _equal_degree(g, d, rng) + _equal_degree(f.exact_div(g), d, rng)


def _abs_degree(field):
    return field.k if isinstance(field, ExtensionField) else 1


def is_irreducible(f):
    """Rabin's test: x^(q^k) = x mod f and gcd(x^(q^(k/l)) - x, f) = 1 for
    the prime divisors l of k."""
    _require_finite(f)
    k = f.degree
    if k <= 0:
        return False
    if k == 1:
        return True
    q = f.field.order
    x = Poly.x(f.field)
    if (x.powmod(q**k, f) - x) % f:
        return False
    kk, primes, d = k, [], 2
    while d * d <= kk:
        if kk % d == 0:
            primes.append(d)
            while kk % d == 0:
                kk //= d
        d += 1
    if kk > 1:
        primes.append(kk)
    for ell in primes:
        g = (x.powmod(q ** (k // ell), f) - x).gcd(f)
        if g.degree != 0:
            return False
    return True


def roots(f, seed=0):
    """[(root, multiplicity)] of f in its own coefficient field, sorted."""
    out = []
    for g, m in factor(f, seed=seed):
        if g.degree == 1:
            out.append((-g[0], m))
    out.sort(key=lambda t: f.field.sort_key(t[0]))
    return out


def splitting_degree(f, seed=0):
    """Degree of the smallest extension of the coefficient field where f
    splits into linear factors."""
    return lcm(*(g.degree for g, _ in factor(f, seed=seed)))


def monic_irreducible(field, degree, rng):
    """Random monic irreducible of the given degree."""
    while True:
        cand = Poly(field, [field.random(rng) for _ in range(degree)] + [field.one])
        if is_irreducible(cand):
            return cand
