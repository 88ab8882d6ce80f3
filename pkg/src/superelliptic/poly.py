"""Dense univariate polynomials over one exact field.

A polynomial is a tuple of coefficients, constant term first, with no
trailing zeros; the zero polynomial is the empty tuple and has degree -1.
All coefficients share one field descriptor.

The module also provides

  * ``RationalFunction`` -- reduced fractions of polynomials (monic
    denominator, coprime numerator),
  * ``QuotientRing`` -- K[x]/(S) with inversion through the extended
    Euclidean algorithm.  When S turns out to be reducible an inversion can
    hit a zero divisor; that raises ``SplitDetected`` carrying the factor,
    so callers can refine S and recurse,
  * gcd / squarefree machinery.  Over Q the gcd runs on integer
    coefficients with a primitive polynomial remainder sequence, because a
    naive Euclid over Fraction coefficients explodes.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .errors import DomainError
from .fields import QQ, FieldElement


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        cs = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise DomainError("coefficient from a different field")
                cs.append(c)
            else:
                cs.append(field(c))
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field, c):
        return cls(field, [c])

    @classmethod
    def from_roots(cls, field, roots):
        f = cls(field, [field.one])
        for r in roots:
            f = f * cls(field, [-field(r), field.one])
        return f

    # -- basics -------------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one

    @property
    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero

    def __eq__(self, other):
        if isinstance(other, int):
            return self == Poly(self.field, [other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.key, self.coeffs))

    def _check(self, other):
        if isinstance(other, FieldElement):
            other = Poly(self.field, [other])
        elif isinstance(other, int):
            other = Poly(self.field, [other])
        if not isinstance(other, Poly) or other.field != self.field:
            raise DomainError("polynomials over different fields")
        return other

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (FieldElement, int)):
            c = self.field(other) if isinstance(other, int) else other
            return Poly(self.field, [a * c for a in self.coeffs])
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(self.field)
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = other.leading.inverse()
        zero = self.field.zero
        q = [zero] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            c = rem[-1] * inv_lead
            d = len(rem) - 1 - db
            q[d] = c
            for i, bc in enumerate(other.coeffs):
                rem[d + i] = rem[d + i] - c * bc
            while rem and not rem[-1]:
                rem.pop()
        return Poly(self.field, q), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if r:
            raise ValueError("division is not exact")
        return q

    def __pow__(self, e):
        result = Poly(self.field, [self.field.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e, modulus):
        result = Poly(self.field, [self.field.one])
        base = self % modulus
        while e:
            if e & 1:
                result = result * base % modulus
            base = base * base % modulus
            e >>= 1
        return result

    def monic(self):
        if not self:
            return self
        return self * self.leading.inverse()

    def derivative(self):
        f = self.field
        return Poly(f, [f(i) * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, v):
        if isinstance(v, int):
            v = self.field(v)
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * v + c
        if acc is None:
            return self.field.zero if isinstance(v, FieldElement) else v * 0
        return acc

    def compose(self, other):
        other = self._check(other)
        acc = Poly(self.field)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly(self.field, [c])
        return acc

    def shift(self, k):
        """Multiply by x^k."""
        if not self or k == 0:
            return self if k >= 0 else self._shift_down(-k)
        if k < 0:
            return self._shift_down(-k)
        return Poly(self.field, (self.field.zero,) * k + self.coeffs)

    def _shift_down(self, k):
        if any(self.coeffs[:k]):
            raise ValueError("negative shift would truncate")
        return Poly(self.field, self.coeffs[k:])

    def reverse(self, degree=None):
        d = self.degree if degree is None else degree
        zero = self.field.zero
        cs = list(self.coeffs) + [zero] * (d + 1 - len(self.coeffs))
        return Poly(self.field, cs[::-1])

    def map_coeffs(self, fn, field):
        return Poly(field, [fn(c) for c in self.coeffs])

    # -- gcd and squarefree machinery ----------------------------------------

    def gcd(self, other):
        other = self._check(other)
        if self.field == QQ:
            return _gcd_rational(self, other)
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def xgcd(self, other):
        """(g, s, t) with s*self + t*other = g, g monic (or zero)."""
        other = self._check(other)
        f = self.field
        r0, r1 = self, other
        s0, s1 = Poly(f, [f.one]), Poly(f)
        t0, t1 = Poly(f), Poly(f, [f.one])
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0:
            c = r0.leading.inverse()
            return r0 * c, s0 * c, t0 * c
        return r0, s0, t0

    def squarefree_part(self):
        """The radical: product of the distinct irreducible factors, monic."""
        return Poly(self.field, [self.field.one]) if self.degree <= 0 else _radical(self)

    def squarefree_decomposition(self):
        """[(g_i, i)] with self = lc * prod g_i^i, the g_i squarefree, monic,
        pairwise coprime."""
        if not self:
            raise ValueError("zero polynomial")
        if self.field.characteristic == 0:
            return _yun(self.monic())
        return _squarefree_char_p(self.monic())

    def taylor(self, c, count=None):
        """Coefficients of self(c + t) as a list, lowest first.  Synthetic
        division, so valid in any characteristic."""
        f = self.field
        if isinstance(c, int):
            c = f(c)
        rem = list(self.coeffs)
        n = len(rem) if count is None else min(count, len(rem))
        out = []
        for _ in range(max(n, 1)):
            if not rem:
                out.append(f.zero)
                continue
            # divide rem by (x - c): remainder is rem(c)
            acc = f.zero
            newrem = [f.zero] * (len(rem) - 1)
            for i in range(len(rem) - 1, -1, -1):
                coef = rem[i] + acc * c
                if i > 0:
                    newrem[i - 1] = coef
                    acc = coef
                else:
                    out.append(coef)
            rem = newrem
            while rem and not rem[-1]:
                rem.pop()
        if count is not None:
            out = out + [f.zero] * (count - len(out))
            out = out[:count]
        return out

    def factor_multiplicity(self, s):
        """Largest m with s^m dividing self (s nonconstant)."""
        m = 0
        f = self
        while f:
            q, r = divmod(f, s)
            if r:
                break
            m += 1
            f = q
        return m

    def sort_key(self):
        return (len(self.coeffs), tuple(self.field.sort_key(c) for c in self.coeffs))

    # -- serialization -------------------------------------------------------

    def to_obj(self):
        return [self.field.element_to_obj(c) for c in self.coeffs]

    @classmethod
    def from_obj(cls, field, obj):
        return cls(field, [field.element_from_obj(c) for c in obj])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = repr(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(xs if cs == "1" else f"{cs}*{xs}")
        return " + ".join(reversed(parts))


# ---------------------------------------------------------------------------
# rational gcd via integer primitive remainder sequences
# ---------------------------------------------------------------------------


def _to_int_coeffs(f):
    """Scale a Q-polynomial to integer coefficients (content removed)."""
    den = 1
    for c in f.coeffs:
        den = den * c.value.denominator // int_gcd(den, c.value.denominator)
    ints = [int(c.value * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = int_gcd(g, abs(c))
    if g > 1:
        ints = [c // g for c in ints]
    return ints


def _int_content(c):
    g = 0
    for x in c:
        g = int_gcd(g, abs(x))
    return g or 1


def _int_primitive(c):
    g = _int_content(c)
    out = [x // g for x in c]
    if out and out[-1] < 0:
        out = [-x for x in out]
    return out


def _int_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    while out and not out[-1]:
        out.pop()
    return out


def _int_pseudo_rem(a, b):
    """Pseudo-remainder of integer coefficient lists (b nonzero)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        d = len(a) - 1 - db
        la = a[-1]
        a = [c * lb for c in a]
        for i, bc in enumerate(b):
            a[d + i] -= la * bc
        while a and not a[-1]:
            a.pop()
    return a


def _int_gcd_poly(a, b):
    a, b = _int_primitive(a), _int_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _int_primitive(_int_pseudo_rem(a, b))
        a, b = b, r
    return a


def _gcd_rational(f, g):
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    ints = _int_gcd_poly(_to_int_coeffs(f), _to_int_coeffs(g))
    return Poly(QQ, [Fraction(c) for c in ints]).monic()


def _radical(f):
    parts = f.squarefree_decomposition()
    out = Poly(f.field, [f.field.one])
    for g, _ in parts:
        out = out * g
    return out.monic()


def _yun(f):
    """Yun's squarefree decomposition (characteristic zero), f monic."""
    df = f.derivative()
    a = f.gcd(df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    out = []
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = b.gcd(d)
        if g.degree > 0:
            out.append((g, i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        i += 1
    return out


def _squarefree_char_p(f):
    p = f.field.characteristic
    out = {}
    df = f.derivative()
    if df:
        a = f.gcd(df)
        b = f.exact_div(a)
        i = 1
        while b.degree > 0:
            g = a.gcd(b)
            piece = b.exact_div(g)
            if piece.degree > 0:
                out[i] = out.get(i, Poly(f.field, [f.field.one])) * piece
            b = g
            a = a.exact_div(g)
            i += 1
        if a.degree > 0:
            for g, m in _squarefree_char_p(_pth_root(a)):
                out[m * p] = out.get(m * p, Poly(f.field, [f.field.one])) * g
    else:
        for g, m in _squarefree_char_p(_pth_root(f)):
            out[m * p] = out.get(m * p, Poly(f.field, [f.field.one])) * g
    return sorted(((g.monic(), m) for m, g in out.items() if g.degree > 0), key=lambda t: t[1])


def _pth_root(f):
    """Inverse of Frobenius on a polynomial of the shape g(x^p)."""
    p = f.field.characteristic
    q = f.field.order
    cs = []
    for i in range(0, f.degree + 1, p):
        cs.append(f[i] ** (q // p))
    return Poly(f.field, cs)


def rational_roots(f, cap=50000):
    """Rational roots of a Q-polynomial by the rational root theorem:
    [(root, multiplicity)].  Gives up (returns []) when the divisor
    enumeration would exceed ``cap`` candidates; callers treat the result as
    opportunistic, not exhaustive, in that case."""
    if f.field != QQ or not f or f.degree == 0:
        return []
    ints = _to_int_coeffs(f)
    shift = 0
    while ints and ints[0] == 0:
        ints = ints[1:]
        shift += 1
    out = []
    if shift:
        out.append((QQ(0), shift))
    if not ints or len(ints) == 1:
        return out
    a0, ad = abs(ints[0]), abs(ints[-1])
    num_divs = _divisors(a0, cap)
    den_divs = _divisors(ad, cap)
    if num_divs is None or den_divs is None or len(num_divs) * len(den_divs) * 2 > cap:
        return out
    g = Poly(QQ, [Fraction(c) for c in ints])
    for p in num_divs:
        for q in den_divs:
            for r in (Fraction(p, q), Fraction(-p, q)):
                if not g(QQ(r)):
                    m = g.factor_multiplicity(Poly(QQ, [-r, Fraction(1)]))
                    if m:
                        out.append((QQ(r), m))
    # dedupe (p/q not reduced can repeat)
    seen, uniq = set(), []
    for r, m in out:
        if r.value not in seen:
            seen.add(r.value)
            uniq.append((r, m))
    uniq.sort(key=lambda t: QQ.sort_key(t[0]))
    return uniq


def _divisors(n, cap):
    if n == 0:
        return [1]
    if n.bit_length() > 44:
        return None  # trial division up to sqrt(n) would not terminate
    out = []
    d = 1
    steps = 0
    while d * d <= n:
        steps += 1
        if steps > cap:
            return None
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
            if len(out) > cap:
                return None
        d += 1
    return sorted(out)


def coprime_refine(polys):
    """A gcd-free basis: pairwise-coprime monic nonconstant polynomials such
    that every input is a product of powers of basis elements (times a
    constant).  Inputs must be squarefree for the result to stay squarefree."""
    basis = []
    for f in polys:
        f = f.monic() if f.degree > 0 else None
        if f is None:
            continue
        queue = [f]
        while queue:
            g = queue.pop()
            if g.degree == 0:
                continue
            for i, b in enumerate(basis):
                d = g.gcd(b)
                if d.degree > 0:
                    if d.degree < b.degree:
                        basis[i] = d
                        basis.append(b.exact_div(d))
                    rest = g.exact_div(d)
                    if rest.degree > 0:
                        queue.append(rest)
                    break
            else:
                basis.append(g)
    basis.sort(key=lambda b: b.sort_key())
    return basis


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """num/den with monic denominator and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = Poly(num.field, [num.field.one])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.leading.inverse()
            num, den = num * lc, den * lc
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def from_poly(cls, f):
        return cls(f, Poly(f.field, [f.field.one]), reduce=False)

    @classmethod
    def constant(cls, field, c):
        return cls(Poly(field, [c]), Poly(field, [field.one]), reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction.from_poly(other)
        if isinstance(other, (FieldElement, int)):
            return RationalFunction.constant(self.field, self.field(other) if isinstance(other, int) else other)
        raise DomainError(f"cannot combine rational function with {other!r}")

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def degree(self):
        """Degree as a map to P^1 would see it: deg num - deg den."""
        return self.num.degree - self.den.degree

    def multiplicity_at(self, s):
        """Order of vanishing along the monic factor s (negative for poles)."""
        return self.num.factor_multiplicity(s) - self.den.factor_multiplicity(s)

    def __call__(self, v):
        dv = self.den(v)
        if not dv:
            raise ZeroDivisionError("pole of rational function")
        return self.num(v) / dv

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


# ---------------------------------------------------------------------------
# quotient rings K[x]/(S) with split detection
# ---------------------------------------------------------------------------


class SplitDetected(ArithmeticError):
    """Inverting a zero divisor of K[x]/(S) exposed a proper factor of S."""

    def __init__(self, factor):
        super().__init__(f"modulus splits off {factor!r}")
        self.factor = factor


class QuotientRing:
    """K[x]/(S) for monic S; a field when S is irreducible.

    Implements the same descriptor protocol as the field classes so series
    and row reduction can run over it unchanged.  Inversion of a nonzero
    zero divisor raises SplitDetected with a proper factor of S.
    """

    def __init__(self, modulus):
        if not modulus or modulus.degree < 1:
            raise DomainError("modulus must be nonconstant")
        self.modulus = modulus.monic()
        self.base = modulus.field
        self.key = ("Quot", self.base.key, self.modulus.coeffs)

    @property
    def characteristic(self):
        return self.base.characteristic

    def __eq__(self, other):
        return isinstance(other, QuotientRing) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __call__(self, value):
        if isinstance(value, QuotientElement):
            if value.ring != self:
                raise DomainError("element of a different quotient ring")
            return value
        if isinstance(value, Poly):
            return QuotientElement(self, value % self.modulus)
        if isinstance(value, (FieldElement, int)):
            return QuotientElement(self, Poly(self.base, [value]))
        raise DomainError(f"cannot coerce {value!r}")

    @property
    def zero(self):
        return self(Poly(self.base))

    @property
    def one(self):
        return self(Poly(self.base, [self.base.one]))

    @property
    def generator(self):
        return self(Poly.x(self.base))

    def _is_zero(self, a):
        return a.rep.is_zero()

    def sort_key(self, a):
        return a.rep.sort_key()

    def __repr__(self):
        return f"{self.base}[x]/({self.modulus!r})"


class QuotientElement:
    __slots__ = ("ring", "rep")

    def __init__(self, ring, rep):
        self.ring = ring
        self.rep = rep

    @property
    def field(self):
        return self.ring

    def _coerce(self, other):
        if isinstance(other, QuotientElement):
            if other.ring != self.ring:
                raise DomainError("mixed quotient rings")
            return other
        return self.ring(other)

    def __add__(self, other):
        return QuotientElement(self.ring, (self.rep + self._coerce(other).rep) % self.ring.modulus)

    __radd__ = __add__

    def __neg__(self):
        return QuotientElement(self.ring, -self.rep)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        return QuotientElement(self.ring, (self.rep * self._coerce(other).rep) % self.ring.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if self.rep.is_zero():
            raise ZeroDivisionError("zero in quotient ring")
        g, s, _ = self.rep.xgcd(self.ring.modulus)
        if g.degree > 0:
            raise SplitDetected(g)
        return QuotientElement(self.ring, (s * g.leading.inverse()) % self.ring.modulus)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, QuotientElement):
            return NotImplemented
        return self.ring == other.ring and self.rep == other.rep

    def __hash__(self):
        return hash((self.ring.key, self.rep.coeffs))

    def __bool__(self):
        return bool(self.rep)

    def __repr__(self):
        return f"[{self.rep!r}]"
