"""Truncated Laurent series in one local parameter.

A series holds coefficients for exponents ``offset .. offset+len-1`` and an
absolute precision ``prec`` (exclusive): nothing is claimed about
coefficients at exponents >= prec.  The leading stored coefficient is
nonzero unless the series is indistinguishable from zero at this precision,
in which case ``valuation`` raises ``PrecisionError`` and the caller is
expected to retry with more terms.

Precision propagates pessimistically: sums keep the smaller precision,
products keep ``min(a.offset + b.prec, b.offset + a.prec)``, and inversion
of a series of valuation v costs 2v of absolute precision.

Coefficients may come from any descriptor implementing the small field
protocol (``__call__``, ``zero``, ``one``); in particular
``poly.QuotientRing`` works, which is how expansions at closed points of
degree > 1 are computed without leaving the base field.
"""

from __future__ import annotations

from .errors import PrecisionError, RootExtractionError


class TruncatedSeries:
    __slots__ = ("dom", "offset", "coeffs", "prec")

    def __init__(self, dom, coeffs, offset, prec):
        coeffs = list(coeffs)
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
            offset += 1
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if len(coeffs) > prec - offset:
            coeffs = coeffs[: prec - offset]
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        if not coeffs:
            offset = prec
        self.dom = dom
        self.offset = offset
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero_to(cls, dom, prec):
        return cls(dom, (), prec, prec)

    @classmethod
    def constant(cls, dom, c, prec):
        return cls(dom, (dom(c),), 0, prec)

    @classmethod
    def monomial(cls, dom, c, exponent, prec):
        return cls(dom, (dom(c),), exponent, prec)

    @classmethod
    def from_poly(cls, f, prec, dom=None):
        """Series of a polynomial in its own variable, truncated at prec."""
        d = dom if dom is not None else f.field
        return cls(d, [d(c) for c in f.coeffs], 0, prec)

    # -- inspection -----------------------------------------------------------

    def is_zero_to_precision(self):
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            raise PrecisionError(
                f"series is zero to precision O(t^{self.prec}); retry with more terms"
            )
        return self.offset

    def coefficient(self, k):
        """Coefficient of t^k; k must be below the precision."""
        if k >= self.prec:
            raise PrecisionError(f"coefficient t^{k} beyond precision O(t^{self.prec})")
        if self.offset <= k < self.offset + len(self.coeffs):
            return self.coeffs[k - self.offset]
        return self.dom.zero

    def leading_coefficient(self):
        self.valuation()
        return self.coeffs[0]

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.offset == other.offset
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __repr__(self):
        if not self.coeffs:
            return f"O(t^{self.prec})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            e = self.offset + i
            ts = "1" if e == 0 else ("t" if e == 1 else f"t^{e}")
            terms.append(f"({c!r})*{ts}")
            if len(terms) >= 8:
                terms.append("...")
                break
        return " + ".join(terms) + f" + O(t^{self.prec})"

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        prec = min(self.prec, other.prec)
        lo = min(self.offset, other.offset, prec)
        zero = self.dom.zero
        out = [zero] * (prec - lo)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.offset + i
                if k < prec:
                    out[k - lo] = out[k - lo] + c
        return TruncatedSeries(self.dom, out, lo, prec)

    def __neg__(self):
        return TruncatedSeries(self.dom, [-c for c in self.coeffs], self.offset, self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        prec = min(self.offset + other.prec, other.offset + self.prec)
        lo = self.offset + other.offset
        n = prec - lo
        if n <= 0 or not self.coeffs or not other.coeffs:
            return TruncatedSeries.zero_to(self.dom, prec)
        zero = self.dom.zero
        out = [zero] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            jmax = min(len(other.coeffs), n - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.dom, out, lo, prec)

    def scale(self, c):
        return TruncatedSeries(self.dom, [c * a for a in self.coeffs], self.offset, self.prec)

    def shift(self, k):
        """Multiply by t^k."""
        return TruncatedSeries(self.dom, self.coeffs, self.offset + k, self.prec + k)

    def truncate(self, prec):
        return TruncatedSeries(self.dom, self.coeffs, self.offset, min(self.prec, prec))

    def inverse(self):
        if not self.coeffs:
            raise PrecisionError("cannot invert a series that is zero to precision")
        v = self.offset
        rel = self.prec - v
        a = list(self.coeffs) + [self.dom.zero] * (rel - len(self.coeffs))
        b0 = self.dom.one / a[0]
        out = [b0]
        for k in range(1, rel):
            acc = self.dom.zero
            for i in range(1, min(k, len(a) - 1) + 1):
                if a[i] and out[k - i]:
                    acc = acc + a[i] * out[k - i]
            out.append(-b0 * acc)
        return TruncatedSeries(self.dom, out, -v, rel - v)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        # working precision padded so the square chain does not lose more
        # than the final mul rule demands
        pad = self.prec + abs(self.offset) * (e.bit_length() + 1)
        result = TruncatedSeries.constant(self.dom, self.dom.one, pad)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def derivative(self):
        f = self.dom
        out = []
        for i, c in enumerate(self.coeffs):
            k = self.offset + i
            out.append(f(k) * c)
        return TruncatedSeries(self.dom, out, self.offset - 1, self.prec - 1)

    def compose(self, inner):
        """self(inner); requires valuation(inner) >= 1."""
        if inner.coeffs and inner.offset < 1:
            raise ValueError("composition needs a series of positive valuation")
        if self.offset < 0:
            raise ValueError("cannot compose a Laurent series with a principal part")
        dom = self.dom
        v = inner.offset if inner.coeffs else max(inner.prec, 1)
        prec = min(inner.prec, self.prec * max(v, 1))
        inner = inner.truncate(prec)
        acc = TruncatedSeries.zero_to(dom, prec)
        top = min(self.offset + len(self.coeffs), self.prec)
        for k in range(top - 1, -1, -1):
            acc = (acc * inner + TruncatedSeries.constant(dom, self.coefficient(k), prec)).truncate(prec)
        return acc

    def nth_root(self, n, seed=0):
        """A series r with r**n = self (to precision).

        The valuation must be divisible by n and the leading coefficient
        must have an n-th root in the coefficient domain; n must be
        invertible there."""
        v = self.valuation()
        if v % n:
            raise RootExtractionError(f"valuation {v} not divisible by {n}")
        lead = self.coeffs[0]
        dom = self.dom
        if lead == dom.one:
            theta = dom.one
        else:
            root = getattr(dom, "nth_root", None)
            theta = root(lead, n, seed=seed) if root else None
            if theta is None:
                raise RootExtractionError(f"leading coefficient {lead!r} has no {n}-th root")
        rel = self.prec - v
        unit = TruncatedSeries(dom, [c / lead for c in self.coeffs], 0, rel)
        r = _unit_nth_root(unit, n, rel)
        return r.scale(theta).shift(v // n)


def _unit_nth_root(u, n, rel):
    """Newton iteration for the n-th root of a unit series with u(0) = 1."""
    dom = u.dom
    inv_n = dom.one / dom(n)
    r = TruncatedSeries.constant(dom, dom.one, 1)
    prec = 1
    while prec < rel:
        prec = min(2 * prec, rel)
        # the iterate is a polynomial we chose, so it is "known" to any
        # precision; re-tag it at the new target
        rt = TruncatedSeries(dom, r.coeffs, r.offset, prec)
        # r <- r - (r^n - u) / (n r^(n-1))
        rn1 = _pow_to(rt, n - 1, prec)
        err = (rn1 * rt - u.truncate(prec))
        if err.coeffs:
            corr = err * (rn1.inverse()).truncate(prec)
            r = rt - corr.scale(inv_n).truncate(prec)
        else:
            r = rt
    return TruncatedSeries(dom, r.coeffs, r.offset, rel)


def _pow_to(s, e, prec):
    result = TruncatedSeries.constant(s.dom, s.dom.one, prec)
    base = s.truncate(prec)
    while e:
        if e & 1:
            result = (result * base).truncate(prec)
        base = (base * base).truncate(prec)
        e >>= 1
    return result
