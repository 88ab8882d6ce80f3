"""Function field arithmetic and local analysis on a superelliptic curve.

Elements of K(C) = K(x)[y]/(y^n - h) are stored as coefficient tuples of
rational functions, grade i holding the y^i component.  Differentiation with
respect to x preserves the grading because y' = h'(x) y / (n h(x)).

Local expansions use the canonical parameters fixed by the model:

  * off-branch rational point (x0, y0):   x = x0 + t, y by Hensel lifting;
  * totally ramified branch point over c: x = c + t^n, y = theta t^m (1+...)
    with theta^n = (h/(x-c)^m)(c);
  * infinite places: x = t^{-e_inf} and y = lam t^{-m_inf/d_inf} (1+...)
    where lam^{e_inf} is the root of the place's z-factor.

Expansions at closed points of residue degree > 1 run over the quotient ring
K[x]/(q) (or K[z]/(F) at infinity) where that is enough; coordinates that
live in a proper extension (theta, lam, y0) raise NeedsFieldExtension over
finite fields and UnsupportedOverRationals over Q, where no such extension
exists in the element types.

``divisor_of`` returns the exact principal divisor.  It handles arbitrary
elements over finite fields (splitting closed points through extensions
internally and reporting over the base field) and y-graded elements
r(x) * y^i over any base field, which covers every divisor the torsion and
Weierstrass machinery needs over Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import (
    DomainError,
    InternalError,
    NeedsFieldExtension,
    PrecisionError,
    UnsupportedOverRationals,
)
from .fields import QQ, ExtensionField, PrimeField, embedding
from .poly import Poly, QuotientRing, RationalFunction, coprime_refine
from .series import TruncatedSeries
from .curve import AFFINE, BRANCH, INFINITE, Divisor, Place, SuperellipticCurve


class _Dx:
    """Marker for the differential dx in local_expansion."""

    def __repr__(self):
        return "dx"


DX = _Dx()


# ---------------------------------------------------------------------------
# function field elements
# ---------------------------------------------------------------------------


class FunctionFieldElement:
    """sum_i r_i(x) y^i with r_i rational functions, reduced mod y^n - h."""

    __slots__ = ("curve", "coeffs")

    def __init__(self, curve, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > curve.n:
            raise ValueError("too many y-grades")
        one = Poly(curve.field, [curve.field.one])
        while len(coeffs) < curve.n:
            coeffs.append(RationalFunction(Poly(curve.field), one, reduce=False))
        self.curve = curve
        self.coeffs = tuple(coeffs)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_ratfunc(cls, curve, r):
        return cls(curve, [r])

    @classmethod
    def from_poly(cls, curve, f):
        return cls(curve, [RationalFunction.from_poly(f)])

    @classmethod
    def from_x_fraction(cls, curve, num, den):
        return cls(curve, [RationalFunction(num, den)])

    @classmethod
    def y(cls, curve):
        zero = RationalFunction(Poly(curve.field))
        return cls(curve, [zero, RationalFunction.from_poly(Poly(curve.field, [curve.field.one]))])

    @classmethod
    def constant(cls, curve, c):
        return cls(curve, [RationalFunction.from_poly(Poly(curve.field, [c]))])

    @classmethod
    def zero(cls, curve):
        return cls(curve, [])

    @classmethod
    def one(cls, curve):
        return cls.constant(curve, curve.field.one)

    # -- structure ------------------------------------------------------------

    def is_zero(self):
        return all(r.is_zero() for r in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def graded(self):
        """(i, r_i) if exactly one grade is nonzero, else None."""
        nz = [(i, r) for i, r in enumerate(self.coeffs) if not r.is_zero()]
        if len(nz) == 1:
            return nz[0]
        return None

    def __eq__(self, other):
        if not isinstance(other, FunctionFieldElement):
            return NotImplemented
        return self.curve == other.curve and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.curve.key, self.coeffs))

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FunctionFieldElement):
            if other.curve != self.curve:
                raise DomainError("elements of different function fields")
            return other
        if isinstance(other, (int, RationalFunction, Poly)):
            if isinstance(other, int):
                return FunctionFieldElement.constant(self.curve, self.curve.field(other))
            if isinstance(other, Poly):
                return FunctionFieldElement.from_poly(self.curve, other)
            return FunctionFieldElement.from_ratfunc(self.curve, other)
        raise DomainError(f"cannot coerce {other!r}")

    def __add__(self, other):
        other = self._coerce(other)
        return FunctionFieldElement(
            self.curve, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self):
        return FunctionFieldElement(self.curve, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        n = self.curve.n
        h = RationalFunction.from_poly(self.curve.h)
        zero = RationalFunction(Poly(self.curve.field))
        out = [zero] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        for k in range(2 * n - 2, n - 1, -1):
            if not out[k].is_zero():
                out[k - n] = out[k - n] + out[k] * h
        return FunctionFieldElement(self.curve, out[:n])

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero function")
        field = self.curve.field
        one = RationalFunction.from_poly(Poly(field, [field.one]))
        zero = RationalFunction(Poly(field))
        # y^n - h as a z-polynomial over K(x)
        modulus = [RationalFunction.from_poly(-self.curve.h)] + [zero] * (self.curve.n - 1) + [one]
        a = list(self.coeffs)
        g, s = _zpoly_half_xgcd(a, modulus, zero, one)
        if len(_zpoly_trim(g)) != 1:
            raise InternalError("y^n - h not irreducible over K(x)?")
        inv_lead = one / g[0]
        s = [c * inv_lead for c in s]
        return FunctionFieldElement(self.curve, _zpoly_rem(s, modulus, zero)[: self.curve.n])

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = FunctionFieldElement.one(self.curve)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self):
        """d/dx, using y' = h' y / (n h)."""
        c = self.curve
        corr = RationalFunction(c.h.derivative(), c.h * Poly(c.field, [c.field(c.n)]))
        out = []
        for i, r in enumerate(self.coeffs):
            term = r.derivative()
            if i and not r.is_zero():
                term = term + r * corr * i
            out.append(term)
        return FunctionFieldElement(c, out)

    def denominator_lcm(self):
        field = self.curve.field
        d = Poly(field, [field.one])
        for r in self.coeffs:
            g = d.gcd(r.den)
            d = d * r.den.exact_div(g)
        return d

    def __repr__(self):
        parts = []
        for i, r in enumerate(self.coeffs):
            if r.is_zero():
                continue
            ys = "" if i == 0 else ("*y" if i == 1 else f"*y^{i}")
            parts.append(f"({r!r}){ys}")
        return " + ".join(parts) if parts else "0"


def _zpoly_trim(a):
    a = list(a)
    while a and a[-1].is_zero():
        a.pop()
    return a


def _zpoly_rem(a, b, zero):
    a, b = _zpoly_trim(a), _zpoly_trim(b)
    while a and len(a) >= len(b):
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        for i, bc in enumerate(b):
            a[d + i] = a[d + i] - c * bc
        a = _zpoly_trim(a)
    return a if a else [zero]


def _zpoly_half_xgcd(a, b, zero, one):
    """(g, s) with s*a = g mod b, by the extended Euclidean algorithm."""
    r0, r1 = _zpoly_trim(b), _zpoly_trim(a)
    s0, s1 = [zero], [one]
    while r1:
        q, r = _zpoly_divmod(r0, r1, zero)
        r0, r1 = r1, r
        qs = _zpoly_mul(q, s1, zero)
        s0, s1 = s1, _zpoly_trim([x - y for x, y in _zpoly_zip(s0, qs, zero)])
    return r0, s0


def _zpoly_zip(a, b, zero):
    m = max(len(a), len(b))
    a = list(a) + [zero] * (m - len(a))
    b = list(b) + [zero] * (m - len(b))
    return zip(a, b)


def _zpoly_mul(a, b, zero):
    if not a or not b:
        return []
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x.is_zero():
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return _zpoly_trim(out)


def _zpoly_divmod(a, b, zero):
    a, b = _zpoly_trim(a), _zpoly_trim(b)
    q = [zero] * max(len(a) - len(b) + 1, 0)
    while a and len(a) >= len(b):
        c = a[-1] / b[-1]
        d = len(a) - len(b)
        q[d] = c
        for i, bc in enumerate(b):
            a[d + i] = a[d + i] - c * bc
        a = _zpoly_trim(a)
    return q, a


# ---------------------------------------------------------------------------
# holomorphic differentials
# ---------------------------------------------------------------------------


class HolomorphicDifferential:
    """numer(x) * y^(-b) dx where numer = x^a * prod_m S_m^{floor(b m / n)}.

    The (a, b) exponent pair labels the basis element; the branch correction
    factor is forced by holomorphy at multiple branch values and is monomial
    in x only when every branch value is simple.
    """

    __slots__ = ("a", "b", "numer")

    def __init__(self, a, b, numer):
        self.a = a
        self.b = b
        self.numer = numer

    def as_function(self, curve):
        """The coefficient function numer * y^(n-b) / h of dx."""
        r = RationalFunction(self.numer, curve.h)
        f = FunctionFieldElement(curve, [])
        coeffs = list(f.coeffs)
        coeffs[curve.n - self.b] = r
        return FunctionFieldElement(curve, coeffs)

    def to_obj(self):
        return {"a": self.a, "b": self.b}

    def __repr__(self):
        return f"({self.numer!r}) y^-{self.b} dx"


def differential_basis(curve):
    """The g holomorphic monomial differentials of the model.

    For each y-exponent b in 1..n-1 the branch correction C_b =
    prod S_m^{floor(bm/n)} clears the poles at multiple branch values, and
    x^a ranges over the powers that keep the order at infinity nonnegative.
    """
    n = curve.n
    field = curve.field
    out = []
    for b in range(1, n):
        cb = Poly(field, [field.one])
        for s, m in curve.branch:
            k = (b * m) // n
            if k:
                cb = cb * s**k
        # order at infinity: e_inf*(b*m_inf/n - a - deg C_b - 1) - 1 >= 0
        bound = Fraction(b * curve.m_inf, n) - cb.degree - 1 - Fraction(1, curve.e_inf)
        amax = _floor_fraction(bound)
        for a in range(amax + 1):
            out.append(HolomorphicDifferential(a, b, Poly.x(field) ** a * cb))
    if len(out) != curve.genus:
        raise InternalError(
            f"monomial differential count {len(out)} != genus {curve.genus}"
        )
    return out


def _floor_fraction(fr):
    return fr.numerator // fr.denominator


# ---------------------------------------------------------------------------
# canonical local expansions
# ---------------------------------------------------------------------------


class _LocalContext:
    """Series coordinates of one place at one working precision.

    The y-series is built lazily: expanding x-only data at a place whose
    y-coordinate would need a field extension must still work.
    """

    __slots__ = ("curve", "place", "dom", "prec", "x_expand", "_y_thunk", "_y", "_y_inv", "dx")

    def __init__(self, curve, place, dom, prec, x_expand, y_thunk, dx):
        self.curve = curve
        self.place = place
        self.dom = dom
        self.prec = prec
        self.x_expand = x_expand  # Poly over base -> TruncatedSeries
        self._y_thunk = y_thunk
        self._y = None
        self._y_inv = None
        self.dx = dx

    @property
    def y_pos(self):
        if self._y is None:
            self._y = self._y_thunk()
        return self._y

    @property
    def y_neg(self):
        if self._y_inv is None:
            self._y_inv = self.y_pos.inverse()
        return self._y_inv

    def ratfunc(self, r):
        num = self.x_expand(r.num)
        den = self.x_expand(r.den)
        return num * den.inverse()

    def element(self, f):
        if isinstance(f, FunctionFieldElement):
            acc = None
            for i, r in enumerate(f.coeffs):
                if r.is_zero():
                    continue
                term = self.ratfunc(r)
                if i:
                    term = term * self.y_pos**i
                acc = term if acc is None else acc + term
            if acc is None:
                raise ValueError("expansion of the zero function is undefined")
            return acc
        if isinstance(f, HolomorphicDifferential):
            return self.x_expand(f.numer) * (self.y_neg**f.b) * self.dx
        if isinstance(f, _Dx):
            return self.dx
        if isinstance(f, RationalFunction):
            return self.ratfunc(f)
        if isinstance(f, Poly):
            return self.x_expand(f)
        raise DomainError(f"cannot expand {f!r}")


def _poly_taylor_series(f, center, dom, spread, prec):
    """Series of f(center + t^spread) over dom, to absolute precision prec."""
    count = prec // spread + 1
    if isinstance(dom, QuotientRing):
        fd = Poly(dom, [dom(c) for c in f.coeffs])
        tay = fd.taylor(center, count=count)
    else:
        tay = f.taylor(center, count=count)
    coeffs = []
    for c in tay:
        coeffs.append(c)
        coeffs.extend([dom.zero] * (spread - 1))
    return TruncatedSeries(dom, coeffs[:prec], 0, prec)


def _poly_at_infinity_series(f, dom, e, prec_low):
    """Series of f(t^-e) over dom: finite Laurent sum, exact."""
    coeffs = []
    for j in range(f.degree, -1, -1):
        coeffs.append(dom(f[j]))
        if j:
            coeffs.extend([dom.zero] * (e - 1))
    return TruncatedSeries(dom, coeffs, -e * f.degree, prec_low)


def local_context(curve, place, prec, seed=0):
    """Build the canonical series coordinates (x, y, dx) of a place.

    Raises NeedsFieldExtension when a required coordinate (Hensel y-value,
    branch-unit n-th root, or infinity root) is missing from the base field;
    over Q the same condition raises UnsupportedOverRationals since no
    extension type exists.
    """
    field = curve.field
    n = curve.n

    def missing(msg, degree_hint=None):
        if field == QQ:
            return UnsupportedOverRationals(msg + " (needs a number field)")
        return NeedsFieldExtension(msg, degree=degree_hint)

    if place.kind == BRANCH:
        m = place.m
        if place.degree == 1:
            dom = field
            c = -place.x_poly[0]
        else:
            dom = QuotientRing(place.x_poly)
            c = dom.generator
        pad = prec + 2 * n * (m + 1) + 4
        dx = TruncatedSeries(dom, [dom(n)], n - 1, pad)

        def y_thunk(curve=curve, c=c, dom=dom, m=m, pad=pad, missing=missing):
            count = pad // n + m + 2
            tay = _taylor_list(curve.h, c, dom, count)
            for k in range(m):
                if tay[k]:
                    raise InternalError("branch multiplicity mismatch in taylor data")
            t_m = tay[m]
            if not t_m:
                raise InternalError("branch multiplicity higher than recorded")
            theta = _nth_root_in(dom, t_m, n, seed)
            if theta is None:
                raise missing(f"no {n}-th root of {t_m!r} at a branch place", degree_hint=n)
            inv_tm = t_m.inverse()
            # h(c + t^n) = t^(n m) * t_m * unit(t), unit(0) = 1, unit in dom[[t^n]]
            ucoeffs = []
            for ck in tay[m:]:
                ucoeffs.append(ck * inv_tm)
                ucoeffs.extend([dom.zero] * (n - 1))
            unit = TruncatedSeries(dom, ucoeffs[:pad], 0, pad)
            return unit.nth_root(n, seed=seed).scale(theta).shift(m)

        def x_expand(f, c=c, dom=dom, p=pad):
            return _poly_taylor_series(f, c, dom, n, p)

        return _LocalContext(curve, place, dom, pad, x_expand, y_thunk, dx)

    if place.kind == AFFINE:
        if place.y_data[0] != "value":
            raise missing(
                "expansion at an unsplit affine closed point", degree_hint=place.degree
            )
        x0 = -place.x_poly[0]
        y0 = place.y_data[1]
        dom = field
        pad = prec + 2 * n + 4
        dx = TruncatedSeries(dom, [dom.one], 0, pad)

        def y_thunk(curve=curve, x0=x0, y0=y0, dom=dom, pad=pad):
            hx0 = curve.h(x0)
            if not hx0:
                raise InternalError("off-branch place over a branch value")
            u = _poly_taylor_series(curve.h, x0, dom, 1, pad).scale(hx0.inverse())
            return u.nth_root(n, seed=seed).scale(y0)

        def x_expand(f, x0=x0, dom=dom, p=pad):
            return _poly_taylor_series(f, x0, dom, 1, p)

        return _LocalContext(curve, place, dom, pad, x_expand, y_thunk, dx)

    # infinite place: x = t^(-e) exactly, y = lam t^(-m_inf/d_inf) W(t)^(1/n)
    if place.degree == 1:
        dom = field
        z0 = -place.x_poly[0]
    else:
        dom = QuotientRing(place.x_poly)
        z0 = dom.generator
    e = curve.e_inf
    m_inf = curve.m_inf
    pad = prec + 2 * (e * m_inf + 2 * n + 2) + 4
    dx = TruncatedSeries(dom, [dom(-e)], -e - 1, pad)

    def y_thunk(curve=curve, dom=dom, z0=z0, e=e, m_inf=m_inf, pad=pad, missing=missing):
        if e == 1:
            lam = z0
        else:
            if isinstance(dom, QuotientRing):
                raise missing("ramified infinite closed point of degree > 1", degree_hint=e)
            lam = field.nth_root(z0, e, seed=seed)
            if lam is None:
                raise missing(f"no {e}-th root of {z0!r} for the infinite place", degree_hint=e)
        inv_lc = dom(curve.lc).inverse()
        w_coeffs = []
        for j in range(m_inf, -1, -1):
            w_coeffs.append(dom(curve.h[j]) * inv_lc)
            if j:
                w_coeffs.extend([dom.zero] * (e - 1))
        w = TruncatedSeries(dom, w_coeffs[:pad], 0, pad)
        return w.nth_root(n, seed=seed).scale(lam).shift(-(m_inf // curve.d_inf))

    def x_expand(f, dom=dom, e=e, p=pad):
        return _poly_at_infinity_series(f, dom, e, p)

    return _LocalContext(curve, place, dom, pad, x_expand, y_thunk, dx)


def _taylor_list(f, c, dom, count):
    if isinstance(dom, QuotientRing):
        fd = Poly(dom, [dom(cf) for cf in f.coeffs])
        return fd.taylor(c, count=count)
    return f.taylor(c, count=count)


def local_expansion(curve, place, elt, prec, seed=0):
    """Expansion of a function field element (or dx, or a holomorphic
    differential) in the canonical local parameter of the place."""
    if prec < 1:
        raise ValueError("precision must be >= 1")
    if isinstance(elt, FunctionFieldElement) and elt.is_zero():
        raise ValueError("expansion of the zero function is undefined")
    pad = prec
    for _ in range(12):
        ctx = local_context(curve, place, pad, seed=seed)
        try:
            s = ctx.element(elt)
        except PrecisionError:
            pad *= 2
            continue
        if s.prec >= prec:
            return s.truncate(prec)
        pad *= 2
    raise PrecisionError(f"could not reach precision {prec} at {place!r}")


def _eval_in(f, c, dom):
    if isinstance(dom, QuotientRing):
        return Poly(dom, [dom(cf) for cf in f.coeffs])(c)
    return f(c)


def _nth_root_in(dom, a, n, seed):
    if isinstance(dom, QuotientRing):
        # only the trivial root is available without factoring over the ring
        if a == dom.one:
            return dom.one
        return None
    return dom.nth_root(a, n, seed=seed)


# ---------------------------------------------------------------------------
# divisors of distinguished functions
# ---------------------------------------------------------------------------


def as_element(curve, f):
    """Coerce a Poly or RationalFunction into the function field."""
    if isinstance(f, FunctionFieldElement):
        return f
    if isinstance(f, Poly):
        return FunctionFieldElement.from_poly(curve, f)
    if isinstance(f, RationalFunction):
        return FunctionFieldElement.from_ratfunc(curve, f)
    raise DomainError(f"cannot coerce {f!r} into the function field")


def div_y(curve):
    """The exact divisor of the coordinate function y."""
    entries = [(p, p.m) for p in curve.branch_places()]
    w = curve.m_inf // curve.d_inf
    entries += [(p, -w) for p in curve.infinite_places()]
    d = Divisor(entries)
    if d.degree != 0:
        raise InternalError("div(y) has nonzero degree")
    return d


def div_dx(curve):
    """The exact divisor of dx; its degree is 2g - 2."""
    entries = [(p, curve.n - 1) for p in curve.branch_places()]
    entries += [(p, -curve.e_inf - 1) for p in curve.infinite_places()]
    d = Divisor(entries)
    if d.degree != 2 * curve.genus - 2:
        raise InternalError("deg div(dx) != 2g - 2")
    return d


def divisor_of(curve, f, seed=0):
    """The principal divisor of a nonzero function, over the base field.

    y-graded elements r(x) y^i work over every supported base field (over Q
    possibly with uncertified bundle places when roots are irrational).
    General elements are supported over finite fields, where closed points
    can be split by base change; the valuations are computed at one
    representative place per conjugacy class and reported over the base.
    """
    if isinstance(f, (Poly, RationalFunction)):
        f = as_element(curve, f)
    if f.is_zero():
        raise ValueError("the zero function has no divisor")
    graded = f.graded()
    if graded is not None:
        d = _divisor_graded(curve, *graded)
    else:
        if curve.field == QQ:
            raise UnsupportedOverRationals(
                "divisors of y-mixed functions need closed-point splitting; "
                "work over a finite field"
            )
        d = _divisor_general_finite(curve, f, seed=seed)
    if d.degree != 0:
        raise InternalError(f"principal divisor of degree {d.degree}")
    return d


def _x_support_pieces(curve, extra):
    """Pairwise-coprime squarefree pieces covering the branch locus and the
    given polynomials; over finite fields these are irreducible."""
    field = curve.field
    polys = [s for s, _ in curve.branch] + [e for e in extra if e.degree > 0]
    if isinstance(field, (PrimeField, ExtensionField)):
        from .factor import factor

        seen = {}
        for f in polys:
            for q, _ in factor(f):
                seen[q.coeffs] = q
        pieces = sorted(seen.values(), key=lambda q: q.sort_key())
        return [(q, True) for q in pieces]
    basis = coprime_refine(polys)
    out = []
    for b in basis:
        from .curve import _split_x_poly

        out.extend(_split_x_poly(field, b))
    out.sort(key=lambda t: t[0].sort_key())
    return out


def _places_over_piece(curve, piece, certified, seed=0):
    """Places above one x-piece, tolerating uncertified pieces over Q."""
    m = curve.multiplicity_of(piece)
    if m:
        return [Place(BRANCH, curve, piece, None, curve.n, piece.degree, m=m, certified=certified)]
    if certified or piece.degree == 1:
        from .curve import places_over

        return places_over(curve, piece, seed=seed)
    return [
        Place(AFFINE, curve, piece, ("fiber", 0, curve.n), 1, piece.degree * curve.n, certified=False)
    ]


def _divisor_graded(curve, i, r):
    """Divisor of r(x) * y^i; valuations are forced by the x-data alone."""
    num, den = r.num.monic(), r.den
    pieces = _x_support_pieces(curve, [num.squarefree_part(), den.squarefree_part()])
    entries = []
    for piece, certified in pieces:
        mu = num.factor_multiplicity(piece) - den.factor_multiplicity(piece)
        for place in _places_over_piece(curve, piece, certified):
            v = place.e * mu
            if place.kind == BRANCH and i:
                v += i * place.m
            if v:
                # bundle places cover deg(piece)*n residue degree with e=1
                entries.append((place, v))
    v_inf = -curve.e_inf * (num.degree - den.degree) - (
        i * (curve.m_inf // curve.d_inf)
    )
    if v_inf:
        entries += [(p, v_inf) for p in curve.infinite_places()]
    return Divisor(entries)


# -- general elements over finite fields -------------------------------------


def norm_to_x(curve, f):
    """Norm of an integral element down to K[x]: the determinant of
    multiplication by f on the basis 1, y, ..., y^(n-1)."""
    n = curve.n
    field = curve.field
    rows = []
    acc = f
    for j in range(n):
        # acc = f * y^j; its coefficients must be polynomials
        row = []
        for r in acc.coeffs:
            if r.den.degree != 0:
                raise ValueError("norm_to_x needs an integral element")
            row.append(r.num * r.den[0].inverse())
        rows.append(row)
        if j < n - 1:
            acc = acc * FunctionFieldElement.y(curve)
    # columns index the y-grade, rows index f*y^j
    return _poly_det([[rows[j][i] for j in range(n)] for i in range(n)], field)


def _poly_det(mat, field):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    det = Poly(field)
    for j in range(n):
        if not mat[0][j]:
            continue
        minor = [[mat[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = mat[0][j] * _poly_det(minor, field)
        det = det + term if j % 2 == 0 else det - term
    return det


def _divisor_general_finite(curve, f, seed=0):
    from .factor import factor

    den = f.denominator_lcm()
    d_den = _divisor_graded(curve, 0, RationalFunction.from_poly(den))
    fint = f * FunctionFieldElement.from_poly(curve, den)
    nf = norm_to_x(curve, fint)
    if not nf:
        raise InternalError("zero norm of a nonzero element")
    entries = []
    for q, mult in factor(nf, seed=seed):
        if curve.multiplicity_of(q):
            place = _places_over_piece(curve, q, True, seed=seed)[0]
            v = _valuation_at_branch_rep(curve, place, fint, seed=seed)
            if v:
                entries.append((place, v))
            continue
        from .curve import places_over

        places = places_over(curve, q, seed=seed)
        vals = _valuations_at_affine_fiber(curve, q, places, fint, seed=seed)
        for place, v in vals:
            if v:
                entries.append((place, v))
    for place in curve.infinite_places():
        v = _valuation_at_infinite_rep(curve, place, fint, seed=seed)
        if v:
            entries.append((place, v))
    return Divisor(entries) + (-d_den)


def _prime_subfield_tower(field):
    if isinstance(field, PrimeField):
        return field.p, 1
    if isinstance(field, ExtensionField):
        return field.p, field.k
    raise DomainError("finite base field required")


def _base_change_element(f, curve2, emb):
    coeffs = []
    for r in f.coeffs:
        coeffs.append(
            RationalFunction(r.num.map_coeffs(emb, curve2.field), r.den.map_coeffs(emb, curve2.field))
        )
    return FunctionFieldElement(curve2, coeffs)


def _valuation_bound(curve, f):
    """Crude bound on |v_P(f)| at any place, from degrees alone."""
    b = 0
    for i, r in enumerate(f.coeffs):
        if not r.is_zero():
            cand = curve.n * (max(r.num.degree, r.den.degree, 1)) + i * curve.m_inf + curve.n
            b = max(b, cand)
    return b + 2 * curve.n + 4


def _expand_nonzero(curve, place, f, bound, seed=0):
    """Valuation of f at a degree-1 place, growing precision up to a bound
    that f's degree data guarantees is enough."""
    prec = min(16, bound + 4)
    while True:
        s = local_expansion(curve, place, f, prec, seed=seed)
        if s.coeffs:
            return s.valuation()
        if prec > 2 * bound + 8:
            raise InternalError(f"function indistinguishable from zero at {place!r}")
        prec = min(2 * prec, 2 * bound + 9)


def _valuation_at_branch_rep(curve, place, f, seed=0):
    """Valuation at the branch place over an irreducible q, computed at one
    root in a splitting extension."""
    p, k = _prime_subfield_tower(curve.field)
    degq = place.x_poly.degree
    target = k * degq
    bound = _valuation_bound(curve, f)
    for extra in range(1, curve.n + 2):
        L = ExtensionField(p, target * extra) if target * extra > 1 else PrimeField(p)
        try:
            curve2, emb = curve.base_change(L, seed=seed)
        except DomainError:
            continue
        xq = place.x_poly.map_coeffs(emb, L)
        from .factor import roots as proots

        rts = proots(xq, seed=seed)
        if not rts:
            continue
        c = min((r for r, _ in rts), key=L.sort_key)
        place2 = curve2.branch_place_over(c)
        try:
            return _expand_nonzero(curve2, place2, _base_change_element(f, curve2, emb), bound, seed=seed)
        except (NeedsFieldExtension, UnsupportedOverRationals):
            continue
    raise InternalError("could not split a branch place")


def _valuations_at_affine_fiber(curve, q, places, f, seed=0):
    """[(place, v)] for the affine places over irreducible q, via one value
    place per y-factor in a common splitting extension."""
    p, k = _prime_subfield_tower(curve.field)
    fdegs = [pl.y_data[2] if pl.y_data[0] == "factor" else 1 for pl in places]
    target = k * q.degree * lcm(*fdegs)
    bound = _valuation_bound(curve, f)
    L = ExtensionField(p, target) if target > 1 else PrimeField(p)
    curve2, emb = curve.base_change(L, seed=seed)
    from .factor import roots as proots

    xq = q.map_coeffs(emb, L)
    x0 = min((r for r, _ in proots(xq, seed=seed)), key=L.sort_key)
    hx0 = curve2.h(x0)
    zpoly = Poly(L, [-hx0] + [L.zero] * (curve.n - 1) + [L.one])
    yroots = [r for r, _ in proots(zpoly, seed=seed)]
    residue_emb = None
    out = []
    for pl in places:
        if pl.y_data[0] == "value":
            y0 = emb(pl.y_data[1])
            out.append((pl, _value_place_valuation(curve2, x0, y0, f, emb, bound, seed)))
            continue
        if residue_emb is None:
            if q.degree == 1:
                residue_emb = emb
            else:
                residue = ExtensionField(p, q.degree, modulus=[c.value for c in q.coeffs])
                residue_emb = embedding(residue, L, seed=seed)
        gfac = _y_factor_of(curve, q, pl.y_data[1], seed=seed)
        gl = gfac.map_coeffs(residue_emb, L)
        match = [y for y in yroots if not gl(y)]
        if not match:
            raise InternalError("no root matches the place's y-factor")
        y0 = min(match, key=L.sort_key)
        out.append((pl, _value_place_valuation(curve2, x0, y0, f, emb, bound, seed)))
    return out


def _y_factor_of(curve, q, idx, seed=0):
    """The idx-th canonical factor of z^n - h over the residue field of q."""
    from .factor import factor

    field = curve.field
    if q.degree == 1:
        v = curve.h(-q[0])
        zpoly = Poly(field, [-v] + [field.zero] * (curve.n - 1) + [field.one])
        return factor(zpoly, seed=seed)[idx][0]
    p, k = _prime_subfield_tower(field)
    if k != 1:
        raise NeedsFieldExtension("closed points over extension bases are unsupported")
    residue = ExtensionField(p, q.degree, modulus=[c.value for c in q.coeffs])
    xbar = residue.generator
    v = Poly(residue, [residue(c.value) for c in curve.h.coeffs])(xbar)
    zpoly = Poly(residue, [-v] + [residue.zero] * (curve.n - 1) + [residue.one])
    return factor(zpoly, seed=seed)[idx][0]


def _value_place_valuation(curve2, x0, y0, f, emb, bound, seed):
    xp = Poly(curve2.field, [-x0, curve2.field.one])
    place = Place(AFFINE, curve2, xp, ("value", y0), 1, 1)
    return _expand_nonzero(curve2, place, _base_change_element(f, curve2, emb), bound, seed=seed)


def _valuation_at_infinite_rep(curve, place, f, seed=0):
    """Valuation of f at an infinite place, via a representative in an
    extension where the place's z-factor has a root and lam exists."""
    bound = _valuation_bound(curve, f)
    try:
        return _expand_nonzero(curve, place, f, bound, seed=seed)
    except NeedsFieldExtension:
        pass
    p, k = _prime_subfield_tower(curve.field)
    base = k * place.degree
    for extra in range(1, 2 * curve.n + 2):
        deg = base * extra
        L = ExtensionField(p, deg) if deg > 1 else PrimeField(p)
        try:
            curve2, emb = curve.base_change(L, seed=seed)
        except DomainError:
            continue
        zl = place.x_poly.map_coeffs(emb, L)
        from .factor import roots as proots

        rts = proots(zl, seed=seed)
        if not rts:
            continue
        z0 = min((r for r, _ in rts), key=L.sort_key)
        # find the infinite place of curve2 with this root
        target = None
        for pl2 in curve2.infinite_places():
            if pl2.degree == 1 and -pl2.x_poly[0] == z0:
                target = pl2
                break
        if target is None:
            continue
        try:
            return _expand_nonzero(curve2, target, _base_change_element(f, curve2, emb), bound, seed=seed)
        except NeedsFieldExtension:
            continue
    raise InternalError("could not reach a representative infinite place")
