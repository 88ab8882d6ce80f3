"""Exact field arithmetic: rationals, prime fields and their extensions.

Every element is immutable and carries a reference to its field descriptor.
Supported domains:

  * ``RationalField`` -- arbitrary-precision rationals backed by
    ``fractions.Fraction`` (always in lowest terms, positive denominator).
  * ``PrimeField(p)`` -- residues stored as ints in ``[0, p)``.
  * ``ExtensionField(p, k)`` -- GF(p^k), elements stored as coefficient
    tuples of length <= k (constant first, no trailing zeros), reduced
    modulo a fixed monic irreducible of degree k.  The defining modulus is
    found by seeded random search and kept in the descriptor, so every
    element of one field shares it and serialized output pins it down.

Mixing elements of different descriptors raises ``DomainError``.  All
operations are pure; elements may be shared freely between threads.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .errors import DomainError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _int_nth_root(m, n):
    """Largest r with r**n <= m, for m >= 0."""
    if m < 2:
        return m
    r = int(round(m ** (1.0 / n)))
    while r > 0 and r**n > m:
        r -= 1
    while (r + 1) ** n <= m:
        r += 1
    return r


# ---------------------------------------------------------------------------
# int-coefficient polynomial helpers over Z/p (used by ExtensionField; kept
# free of the Poly class so this module has no circular dependencies)
# ---------------------------------------------------------------------------

_KRONECKER_MIN = 16


def _ipoly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _ipoly_mul(a, b, p):
    """Product of coefficient lists over Z/p; Kronecker-packed when large."""
    if not a or not b:
        return []
    if min(len(a), len(b)) >= _KRONECKER_MIN:
        slot = (min(len(a), len(b)) * (p - 1) * (p - 1)).bit_length() + 1
        mask = (1 << slot) - 1
        pa = sum(ci << (i * slot) for i, ci in enumerate(a))
        pb = sum(ci << (i * slot) for i, ci in enumerate(b))
        prod = pa * pb
        out = []
        for _ in range(len(a) + len(b) - 1):
            out.append((prod & mask) % p)
            prod >>= slot
        return _ipoly_trim(out)
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _ipoly_trim([c % p for c in out])


def _ipoly_series_inv(f, m, p):
    """Inverse of f (constant term 1) modulo x^m over Z/p, by Newton doubling."""
    inv = [1]
    prec = 1
    while prec < m:
        prec = min(2 * prec, m)
        t = _ipoly_mul(f[:prec], inv, p)[:prec]
        t = [(-c) % p for c in t]
        t[0] = (t[0] + 2) % p
        inv = _ipoly_mul(inv, t, p)[:prec]
    return inv + [0] * (m - len(inv))


def _ipoly_rem(c, f, p, inv_rev=None):
    """Remainder of c modulo monic f over Z/p.

    With ``inv_rev`` (series inverse of the reversed modulus) the quotient is
    obtained from two multiplications instead of schoolbook division.
    """
    k = len(f) - 1
    c = list(c)
    if len(c) <= k:
        return _ipoly_trim(c)
    if inv_rev is not None:
        dq = len(c) - 1 - k
        rc = c[::-1][: dq + 1]
        q = _ipoly_mul(rc, inv_rev[: dq + 1], p)[: dq + 1]
        q += [0] * (dq + 1 - len(q))
        q.reverse()
        qf = _ipoly_mul(q, f, p)
        rem = [(ci - (qf[i] if i < len(qf) else 0)) % p for i, ci in enumerate(c[:k])]
        return _ipoly_trim(rem)
    for i in range(len(c) - 1, k - 1, -1):
        t = c[i]
        if t:
            c[i] = 0
            for j in range(k):
                c[i - k + j] = (c[i - k + j] - t * f[j]) % p
    return _ipoly_trim(c[:k])


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class FieldElement:
    """Common behaviour for elements of all field descriptors."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise DomainError(f"mixed field domains: {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._add(self, self.field._neg(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._add(other, self.field._neg(self))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._mul(self, self.field._inv(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.field._mul(other, self.field._inv(self))

    def __neg__(self):
        return self.field._neg(self)

    def __pow__(self, e):
        if e < 0:
            return self.field._inv(self) ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        return self.field._inv(self)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field.key, self.value))

    def __bool__(self):
        return not self.field._is_zero(self)

    def __repr__(self):
        return self.field.element_to_str(self)


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------


class Field:
    """Base descriptor; concrete fields implement the _-prefixed kernel ops."""

    key = None

    def __call__(self, value):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    characteristic = 0
    order = None  # None means infinite

    def _is_zero(self, a):
        raise NotImplementedError

    def nth_root(self, a, n, seed=0):
        """An n-th root of a in this field, or None.  Deterministic for a
        fixed seed: among several roots the smallest in canonical order is
        returned."""
        raise NotImplementedError

    def sqrt(self, a, seed=0):
        return self.nth_root(a, 2, seed=seed)

    def sort_key(self, a):
        raise NotImplementedError

    def random(self, rng):
        raise NotImplementedError

    def elements(self):
        """Iterate all elements (finite fields only)."""
        raise NotImplementedError

    def to_obj(self):
        raise NotImplementedError

    def element_to_str(self, a):
        raise NotImplementedError

    def element_to_obj(self, a):
        return self.element_to_str(a)

    def element_from_obj(self, obj):
        raise NotImplementedError

    def __repr__(self):
        return str(self.key)


class RationalField(Field):
    """The rational numbers; elements wrap Fraction (canonical reduced form)."""

    key = ("Q",)
    characteristic = 0
    order = None

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DomainError("not a rational element")
            return value
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, Fraction(value))
        if isinstance(value, str):
            return FieldElement(self, Fraction(value))
        raise DomainError(f"cannot coerce {value!r} into Q")

    def _add(self, a, b):
        return FieldElement(self, a.value + b.value)

    def _neg(self, a):
        return FieldElement(self, -a.value)

    def _mul(self, a, b):
        return FieldElement(self, a.value * b.value)

    def _inv(self, a):
        if not a.value:
            raise ZeroDivisionError("division by zero in Q")
        return FieldElement(self, 1 / a.value)

    def _is_zero(self, a):
        return not a.value

    def nth_root(self, a, n, seed=0):
        v = a.value
        if n == 1 or not v:
            return a
        neg = v < 0
        if neg and n % 2 == 0:
            return None
        num, den = abs(v.numerator), v.denominator
        rn, rd = _int_nth_root(num, n), _int_nth_root(den, n)
        if rn**n != num or rd**n != den:
            return None
        r = Fraction(-rn if neg else rn, rd)
        return FieldElement(self, r)

    def sort_key(self, a):
        return a.value

    def random(self, rng):
        return FieldElement(self, Fraction(rng.randint(-20, 20), rng.randint(1, 12)))

    def to_obj(self):
        return {"type": "Q"}

    def element_to_str(self, a):
        v = a.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def element_from_obj(self, obj):
        return self(Fraction(obj))


#: The rationals, as a shared singleton.
QQ = RationalField()


class PrimeField(Field):
    """GF(p) with residues normalized to [0, p)."""

    def __init__(self, p):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        self.p = p
        self.key = ("Fp", p)

    characteristic = property(lambda self: self.p)
    order = property(lambda self: self.p)

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise DomainError("element of a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        if isinstance(value, str):
            return FieldElement(self, int(value) % self.p)
        raise DomainError(f"cannot coerce {value!r} into GF({self.p})")

    def _add(self, a, b):
        return FieldElement(self, (a.value + b.value) % self.p)

    def _neg(self, a):
        return FieldElement(self, -a.value % self.p)

    def _mul(self, a, b):
        return FieldElement(self, a.value * b.value % self.p)

    def _inv(self, a):
        if not a.value:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return FieldElement(self, pow(a.value, -1, self.p))

    def _is_zero(self, a):
        return not a.value

    def frobenius(self, a):
        return a

    def nth_root(self, a, n, seed=0):
        return _finite_nth_root(self, a, n, seed)

    def is_square(self, a):
        if not a.value:
            return True
        return pow(a.value, (self.p - 1) // 2, self.p) == 1

    def sort_key(self, a):
        return a.value

    def random(self, rng):
        return FieldElement(self, rng.randrange(self.p))

    def elements(self):
        for r in range(self.p):
            yield FieldElement(self, r)

    def to_obj(self):
        return {"type": "Fp", "p": self.p}

    def element_to_str(self, a):
        return str(a.value)

    def element_from_obj(self, obj):
        return self(int(obj))


class ExtensionField(Field):
    """GF(p^k), k >= 2, as GF(p)[x] modulo a fixed monic irreducible.

    Elements are tuples of residues (constant first, trailing zeros
    stripped).  For moduli of large degree, multiplication packs the
    operands into big integers (Kronecker substitution) and reduces with a
    precomputed series inverse of the reversed modulus.
    """

    def __init__(self, p, k, modulus=None, seed=0):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if k < 2:
            raise DomainError("extension degree must be >= 2 (use PrimeField)")
        self.p = p
        self.k = k
        if modulus is None:
            modulus = _search_irreducible(p, k, seed)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise DomainError("modulus must be monic of degree k")
            if not _is_irreducible_int(list(modulus), p):
                raise DomainError("modulus is not irreducible")
        self.modulus = modulus
        self.key = ("Fq", p, k, modulus)
        self._inv_rev = None
        if k >= _KRONECKER_MIN:
            rev = list(modulus[::-1])
            self._inv_rev = _ipoly_series_inv(rev, k, p)

    characteristic = property(lambda self: self.p)
    order = property(lambda self: self.p**self.k)

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            if isinstance(value.field, PrimeField) and value.field.p == self.p:
                return FieldElement(self, (value.value,) if value.value else ())
            raise DomainError("element of a different field")
        if isinstance(value, int):
            v = value % self.p
            return FieldElement(self, (v,) if v else ())
        if isinstance(value, (tuple, list)):
            c = [int(x) % self.p for x in value]
            c = _ipoly_rem(c, list(self.modulus), self.p, self._inv_rev)
            return FieldElement(self, tuple(c))
        raise DomainError(f"cannot coerce {value!r} into GF({self.p}^{self.k})")

    @property
    def generator(self):
        """The residue class of x."""
        return FieldElement(self, (0, 1))

    def _add(self, a, b):
        x, y = a.value, b.value
        if len(x) < len(y):
            x, y = y, x
        out = list(x)
        for i, c in enumerate(y):
            out[i] = (out[i] + c) % self.p
        return FieldElement(self, tuple(_ipoly_trim(out)))

    def _neg(self, a):
        return FieldElement(self, tuple((-c) % self.p for c in a.value))

    def _mul(self, a, b):
        prod = _ipoly_mul(list(a.value), list(b.value), self.p)
        prod = _ipoly_rem(prod, list(self.modulus), self.p, self._inv_rev)
        return FieldElement(self, tuple(prod))

    def _inv(self, a):
        if not a.value:
            raise ZeroDivisionError("division by zero in extension field")
        # extended Euclid on coefficient lists over Z/p
        p = self.p
        r0, r1 = list(self.modulus), list(a.value)
        s0, s1 = [], [1]
        while True:
            if len(r1) == 1:
                c = pow(r1[0], -1, p)
                out = [x * c % p for x in s1]
                out = _ipoly_rem(out, list(self.modulus), p, self._inv_rev)
                return FieldElement(self, tuple(out))
            q, r = _ipoly_divmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _ipoly_sub(s0, _ipoly_mul(q, s1, p), p)
            if not r1:
                raise ZeroDivisionError("non-invertible element (modulus not irreducible?)")

    def _is_zero(self, a):
        return not a.value

    def frobenius(self, a):
        return a**self.p

    def nth_root(self, a, n, seed=0):
        return _finite_nth_root(self, a, n, seed)

    def sort_key(self, a):
        return (len(a.value), a.value)

    def random(self, rng):
        c = [rng.randrange(self.p) for _ in range(self.k)]
        return FieldElement(self, tuple(_ipoly_trim(c)))

    def elements(self):
        for tup in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, tuple(_ipoly_trim(list(tup))))

    def to_obj(self):
        return {"type": "Fq", "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def element_to_str(self, a):
        return "[" + ",".join(str(c) for c in a.value) + "]"

    def element_to_obj(self, a):
        return [str(c) for c in a.value]

    def element_from_obj(self, obj):
        if isinstance(obj, str):
            obj = obj.strip("[]")
            parts = [s for s in obj.split(",") if s]
            return self(tuple(int(s) for s in parts))
        return self(tuple(int(s) for s in obj))

    def __repr__(self):
        return f"GF({self.p}^{self.k})"


def _ipoly_sub(a, b, p):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _ipoly_trim(out)


def _ipoly_divmod(a, b, p):
    a, b = list(a), list(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        d = len(a) - len(b)
        q[d] = c
        for i, bc in enumerate(b):
            a[d + i] = (a[d + i] - c * bc) % p
        _ipoly_trim(a)
        if not a:
            break
    return _ipoly_trim(q), a


def _ipoly_powmod(base, e, f, p):
    result = [1]
    base = _ipoly_divmod(base, f, p)[1]
    while e:
        if e & 1:
            result = _ipoly_divmod(_ipoly_mul(result, base, p), f, p)[1]
        base = _ipoly_divmod(_ipoly_mul(base, base, p), f, p)[1]
        e >>= 1
    return result


def _is_irreducible_int(f, p):
    """Rabin irreducibility test on an int-coefficient monic polynomial."""
    k = len(f) - 1
    if k <= 0:
        return False
    if k == 1:
        return True
    x = [0, 1]
    xq = _ipoly_powmod(x, p**k, f, p)
    if _ipoly_sub(xq, x, p):
        return False
    kk = k
    primes = set()
    d = 2
    while d * d <= kk:
        if kk % d == 0:
            primes.add(d)
            while kk % d == 0:
                kk //= d
        d += 1
    if kk > 1:
        primes.add(kk)
    for ell in primes:
        xq = _ipoly_powmod(x, p ** (k // ell), f, p)
        g = _ipoly_gcd(_ipoly_sub(xq, x, p), f, p)
        if len(g) != 1:
            return False
    return True


def _ipoly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _ipoly_divmod(a, b, p)[1]
    if a:
        c = pow(a[-1], -1, p)
        a = [x * c % p for x in a]
    return a


def _search_irreducible(p, k, seed):
    """Seeded random search for a monic irreducible of degree k over GF(p)."""
    rng = random.Random(f"modulus:{p}:{k}:{seed}")
    while True:
        cand = [rng.randrange(p) for _ in range(k)] + [1]
        if _is_irreducible_int(cand, p):
            return tuple(cand)


def _finite_nth_root(field, a, n, seed):
    """n-th root in a finite field, or None; smallest root in canonical order."""
    if n == 1 or field._is_zero(a):
        return a
    q = field.order
    u = q - 1
    from math import gcd

    g = gcd(n, u)
    if (a ** (u // g)) != field.one:
        return None
    if g == 1:
        return a ** pow(n % u, -1, u)
    # several roots exist; split z^n - a and take the canonically smallest
    from .poly import Poly
    from .factor import roots as poly_roots

    zpoly = Poly(field, [-a] + [field.zero] * (n - 1) + [field.one])
    rts = poly_roots(zpoly, seed=seed)
    if not rts:
        return None
    return min((r for r, _ in rts), key=field.sort_key)


def embedding(src, dst, seed=0):
    """A field homomorphism src -> dst as a callable, for the supported pairs:
    identity, GF(p) into GF(p^k), and GF(p^j) into GF(p^k) with j | k."""
    if src == dst:
        return lambda a: a
    if isinstance(src, PrimeField) and isinstance(dst, ExtensionField) and src.p == dst.p:
        return lambda a: dst(a.value)
    if (
        isinstance(src, ExtensionField)
        and isinstance(dst, ExtensionField)
        and src.p == dst.p
        and dst.k % src.k == 0
    ):
        from .poly import Poly
        from .factor import roots as poly_roots

        mod = Poly(dst, [dst(c) for c in src.modulus])
        rts = poly_roots(mod, seed=seed)
        if not rts:
            raise DomainError("modulus does not split in the target field")
        img = min((r for r, _ in rts), key=dst.sort_key)

        def emb(a, img=img, dst=dst):
            acc = dst.zero
            for c in reversed(a.value):
                acc = acc * img + dst(c)
            return acc

        return emb
    raise DomainError(f"no embedding {src} -> {dst}")


def reduction_map(p):
    """Reduction Q -> GF(p) on elements with p-unit denominator."""
    fp = PrimeField(p)

    def red(a):
        v = a.value
        if v.denominator % p == 0:
            raise DomainError(f"denominator divisible by {p}")
        return fp(v.numerator * pow(v.denominator, -1, p))

    return red


def field_from_obj(obj, seed=0):
    """Rebuild a field descriptor from its canonical JSON form."""
    t = obj.get("type")
    if t == "Q":
        return QQ
    if t == "Fp":
        return PrimeField(int(obj["p"]))
    if t == "Fq":
        mod = obj.get("modulus")
        return ExtensionField(int(obj["p"]), int(obj["k"]), modulus=mod, seed=seed)
    raise DomainError(f"unknown field descriptor {obj!r}")
