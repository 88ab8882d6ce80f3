"""Superelliptic curve models y^n = h(x): branch data, genus, places, divisors.

A curve is stored as the cover degree n, the base field, and the squarefree
decomposition h = lc * prod S_m(x)^m into monic pairwise-coprime pieces; all
roots of S_m are branch values of multiplicity m.  Supported models have
gcd(n, m) = 1 at every finite branch value (total ramification there), any
behaviour at infinity, and in finite characteristic p require p not dividing
n and p > 2g.

Places are closed points of the smooth model.  Over the rationals a closed
point whose residue field is a proper number field cannot be represented
element-wise, so places carry a ``certified`` flag: an uncertified place
stands for the full set of points above one squarefree piece (their local
data is identical, so divisor bookkeeping stays exact).  places_over an
irreducible x-polynomial returns genuinely certified places over finite
fields, where factorization is available.

Infinite places correspond to the monic irreducible factors of
z^{d_inf} - lc, each with ramification e_inf = n / d_inf; their fixed
ordering (canonical sort of the factors) makes divisor reports reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import (
    DomainError,
    ModelError,
    NeedsFieldExtension,
    BadReductionError,
    UnsupportedOverRationals,
)
from .fields import QQ, ExtensionField, PrimeField, embedding, reduction_map
from .poly import Poly, coprime_refine, rational_roots

#: marker for the fiber over x = infinity in places_over
AT_INFINITY = "infinity"

BRANCH = "branch"
AFFINE = "affine"
INFINITE = "infinite"

_KIND_RANK = {BRANCH: 0, AFFINE: 1, INFINITE: 2}


class Place:
    """A closed point of the curve (or, if not certified, a bundle of closed
    points sharing identical local data)."""

    __slots__ = ("kind", "x_poly", "y_data", "e", "degree", "m", "certified", "_curve_key")

    def __init__(self, kind, curve, x_poly, y_data, e, degree, m=0, certified=True):
        self.kind = kind
        self.x_poly = x_poly
        self.y_data = y_data
        self.e = e
        self.degree = degree
        self.m = m
        self.certified = certified
        self._curve_key = curve.key

    def _key(self):
        x = self.x_poly.coeffs if self.x_poly is not None else None
        return (self._curve_key, self.kind, x, self.y_data, self.e, self.degree)

    def __eq__(self, other):
        if not isinstance(other, Place):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def sort_key(self):
        xkey = self.x_poly.sort_key() if self.x_poly is not None else ()
        ydata = self.y_data
        if ydata is None:
            ykey = ()
        elif ydata[0] == "value":
            ykey = (0, self.x_poly.field.sort_key(ydata[1]) if self.x_poly is not None else 0)
        else:
            ykey = (1,) + tuple(v for v in ydata[1:] if isinstance(v, int))
        return (_KIND_RANK[self.kind], xkey, ykey)

    def is_infinite(self):
        return self.kind == INFINITE

    def to_obj(self):
        obj = {
            "kind": self.kind,
            "e": self.e,
            "degree": self.degree,
            "certified": self.certified,
        }
        if self.kind == INFINITE:
            obj["index"] = self.y_data[1]
            obj["z_factor"] = self.x_poly.to_obj()
        else:
            obj["x"] = self.x_poly.to_obj()
            if self.kind == BRANCH:
                obj["multiplicity"] = self.m
            elif self.y_data[0] == "value":
                obj["y"] = self.x_poly.field.element_to_obj(self.y_data[1])
            else:
                obj["y_factor_index"] = self.y_data[1]
                obj["y_factor_degree"] = self.y_data[2]
        return obj

    def __repr__(self):
        if self.kind == INFINITE:
            return f"Place(inf[{self.y_data[1]}], e={self.e}, deg={self.degree})"
        if self.kind == BRANCH:
            return f"Place(branch {self.x_poly!r}, m={self.m}, e={self.e}, deg={self.degree})"
        if self.y_data[0] == "value":
            return f"Place(x: {self.x_poly!r}, y={self.y_data[1]!r})"
        return f"Place(x: {self.x_poly!r}, y-branch {self.y_data[1]}, deg={self.degree})"


class Divisor:
    """Finite formal sum of places with integer multiplicities."""

    __slots__ = ("_d",)

    def __init__(self, items=()):
        d = {}
        if isinstance(items, dict):
            items = items.items()
        for place, m in items:
            if m:
                d[place] = d.get(place, 0) + m
                if not d[place]:
                    del d[place]
        self._d = d

    @classmethod
    def of_place(cls, place, mult=1):
        return cls([(place, mult)])

    def items(self):
        return sorted(self._d.items(), key=lambda t: t[0].sort_key())

    def __getitem__(self, place):
        return self._d.get(place, 0)

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._d)

    @property
    def degree(self):
        return sum(m * p.degree for p, m in self._d.items())

    def __add__(self, other):
        out = dict(self._d)
        for p, m in other._d.items():
            out[p] = out.get(p, 0) + m
            if not out[p]:
                del out[p]
        return Divisor(out)

    def __neg__(self):
        return Divisor({p: -m for p, m in self._d.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        return Divisor({p: k * m for p, m in self._d.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self._d == other._d

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def is_effective(self):
        return all(m > 0 for m in self._d.values())

    def to_obj(self):
        return [
            {"place": p.to_obj(), "mult": m, "degree": p.degree} for p, m in self.items()
        ]

    def __repr__(self):
        if not self._d:
            return "0"
        return " + ".join(f"{m}*{p!r}" for p, m in self.items())


class TrigonalParams:
    """Branch data of the cyclic trigonal family: s simple values alpha_i and
    t double values beta_j with s + 2t = 0 mod 3 and t < s."""

    __slots__ = ("s", "t", "alphas", "betas")

    def __init__(self, alphas, betas):
        alphas, betas = list(alphas), list(betas)
        s, t = len(alphas), len(betas)
        if (s + 2 * t) % 3 != 0:
            raise ModelError("need s + 2t = 0 (mod 3)")
        if not t < s:
            raise ModelError("need t < s")
        seen = set()
        for v in alphas + betas:
            if v in seen:
                raise ModelError("branch values must be pairwise distinct")
            seen.add(v)
        self.s, self.t = s, t
        self.alphas, self.betas = alphas, betas


class SuperellipticCurve:
    """y^n = h(x) with its branch decomposition and derived invariants."""

    __slots__ = (
        "n",
        "field",
        "h",
        "lc",
        "branch",
        "genus",
        "m_inf",
        "d_inf",
        "e_inf",
        "branch_values",
        "key",
        "_inf_places",
        "_branch_places",
    )

    def __init__(self, n, h, branch_values=None):
        if n < 2:
            raise ModelError("cover degree n must be >= 2")
        if not isinstance(h, Poly) or h.degree < 1:
            raise ModelError("h must be a nonconstant polynomial")
        field = h.field
        p = field.characteristic
        if p and n % p == 0:
            raise ModelError(f"characteristic {p} divides the cover degree {n}")
        self.n = n
        self.field = field
        self.h = h
        self.lc = h.leading
        decomp = h.monic().squarefree_decomposition()
        mults = [m for _, m in decomp]
        if _gcd_all([n] + mults) != 1:
            raise ModelError("y^n = h is reducible: gcd(n, multiplicities) > 1")
        for s, m in decomp:
            d = gcd(n, m)
            if d == n:
                raise ModelError(
                    f"branch multiplicity {m} divisible by n={n}: reduce the model first"
                )
            if d != 1:
                raise ModelError(
                    f"finite branch values with gcd(n, m) = {d} are unsupported "
                    "(split finite branch places need Puiseux machinery)"
                )
        self.branch = tuple(sorted(decomp, key=lambda t: (t[1], t[0].sort_key())))
        self.m_inf = h.degree
        self.d_inf = gcd(n, self.m_inf)
        self.e_inf = n // self.d_inf
        r = sum(s.degree for s, _ in decomp)
        num = (n - 1) * (r - 1) + 1 - self.d_inf
        if num % 2:
            raise ModelError("inconsistent ramification data")  # cannot happen
        g = num // 2
        if g < 0:
            raise ModelError("negative genus")
        self.genus = g
        if p and p <= 2 * g:
            raise ModelError(
                f"characteristic {p} <= 2g = {2 * g}: classical Weierstrass theory "
                "degenerates; use a larger prime"
            )
        self.branch_values = tuple(branch_values) if branch_values else None
        self.key = (field.key, n, h.coeffs)
        self._inf_places = None
        self._branch_places = None

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_branch(cls, n, field, values_mults, lc=1):
        """Build from explicit branch values [(value, multiplicity), ...]."""
        vals = [(field(v), int(m)) for v, m in values_mults]
        h = Poly(field, [field(lc)])
        for v, m in vals:
            h = h * Poly(field, [-v, field.one]) ** m
        return cls(n, h, branch_values=vals)

    # -- branch and infinite places --------------------------------------------

    def branch_pieces(self):
        """[(piece, m, certified)]: the branch locus split as finely as the
        base field allows."""
        out = []
        for s, m in self.branch:
            for piece, certified in _split_x_poly(self.field, s):
                out.append((piece, m, certified))
        return out

    def branch_places(self):
        if self._branch_places is None:
            places = []
            for piece, m, certified in self.branch_pieces():
                places.append(
                    Place(BRANCH, self, piece, None, self.n, piece.degree, m=m, certified=certified)
                )
            self._branch_places = places
        return list(self._branch_places)

    def branch_place_over(self, value):
        """The unique place over a rational branch value."""
        v = self.field(value)
        for s, m in self.branch:
            if not s(v):
                xp = Poly(self.field, [-v, self.field.one])
                return Place(BRANCH, self, xp, None, self.n, 1, m=m)
        raise ValueError(f"{value!r} is not a branch value")

    def infinite_places(self):
        """Places over x = infinity: factors of z^{d_inf} - lc, in canonical
        order; each has ramification e_inf."""
        if self._inf_places is None:
            zpoly = Poly(self.field, [-self.lc] + [self.field.zero] * (self.d_inf - 1) + [self.field.one])
            pieces = _split_x_poly(self.field, zpoly)
            places = []
            for i, (piece, certified) in enumerate(pieces):
                places.append(
                    Place(INFINITE, self, piece, ("index", i), self.e_inf, piece.degree, certified=certified)
                )
            self._inf_places = places
        return list(self._inf_places)

    def multiplicity_of(self, x_piece):
        """Branch multiplicity shared by the roots of x_piece (0 off the
        branch locus; raises if x_piece straddles the boundary)."""
        for s, m in self.branch:
            d = x_piece.gcd(s)
            if d.degree == x_piece.degree:
                return m
            if d.degree > 0:
                raise ValueError("x-polynomial mixes branch and non-branch roots")
        return 0

    # -- base change and reduction ---------------------------------------------

    def base_change(self, newfield, emb=None, seed=0):
        """The same model over a larger field; emb defaults to the canonical
        embedding."""
        if emb is None:
            emb = embedding(self.field, newfield, seed=seed)
        h2 = self.h.map_coeffs(emb, newfield)
        vals = None
        if self.branch_values is not None:
            vals = [(emb(v), m) for v, m in self.branch_values]
        return SuperellipticCurve(self.n, h2, branch_values=vals), emb

    def reduce_mod(self, p):
        """Good reduction of a curve over Q at the prime p, or BadReductionError."""
        if self.field != QQ:
            raise DomainError("reduce_mod applies to curves over Q")
        red = reduction_map(p)
        if self.lc.value.numerator % p == 0:
            raise BadReductionError(f"leading coefficient vanishes mod {p}")
        try:
            h2 = self.h.map_coeffs(red, PrimeField(p))
        except DomainError as exc:
            raise BadReductionError(str(exc)) from exc
        if h2.degree != self.h.degree:
            raise BadReductionError(f"degree of h drops mod {p}")
        try:
            curve2 = SuperellipticCurve(self.n, h2)
        except ModelError as exc:
            raise BadReductionError(f"model degenerates mod {p}: {exc}") from exc
        # branch structure must be preserved piece by piece
        if [(s.degree, m) for s, m in curve2.branch] != [(s.degree, m) for s, m in self.branch]:
            raise BadReductionError(f"branch values collide mod {p}")
        return curve2, red

    def to_obj(self):
        return {"n": self.n, "h": self.h.to_obj(), "field": self.field.to_obj()}

    @classmethod
    def from_obj(cls, obj, seed=0):
        from .fields import field_from_obj

        field = field_from_obj(obj["field"], seed=seed)
        hspec = obj["h"]
        if isinstance(hspec, dict):
            branch = [(field.element_from_obj(v), int(m)) for v, m in hspec["branch"]]
            lc = field.element_from_obj(hspec.get("lc", "1"))
            return cls.from_branch(obj["n"], field, branch, lc=lc)
        return cls(int(obj["n"]), Poly.from_obj(field, hspec))

    def __eq__(self, other):
        return isinstance(other, SuperellipticCurve) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"SuperellipticCurve(y^{self.n} = {self.h!r} over {self.field}, genus {self.genus})"


def _gcd_all(ns):
    g = 0
    for v in ns:
        g = gcd(g, v)
    return g


def genus(curve):
    """Genus from Riemann-Hurwitz over the x-line (tame everywhere by the
    model restrictions)."""
    return curve.genus


# ---------------------------------------------------------------------------
# splitting x-polynomials into closed-point pieces
# ---------------------------------------------------------------------------


def _split_x_poly(field, f):
    """Split a squarefree monic polynomial into closed-point pieces:
    [(piece, certified)].  Full factorization over finite fields; over Q,
    rational roots are extracted and the cofactor is kept whole (certified
    only when its irreducibility is forced by degree)."""
    if f.degree == 0:
        return []
    if isinstance(field, (PrimeField, ExtensionField)):
        from .factor import factor

        return [(g, True) for g, _ in factor(f)]
    pieces = []
    rest = f.monic()
    for r, m in rational_roots(f):
        lin = Poly(field, [-r, field.one])
        pieces.append((lin, True))
        rest = rest.exact_div(lin**m)
    if rest.degree == 1:
        pieces.append((rest, True))
    elif rest.degree == 2:
        pieces.append((rest, True))  # no rational root: irreducible quadratic
    elif rest.degree == 3:
        pieces.append((rest, True))  # no rational root: irreducible cubic
    elif rest.degree > 3:
        pieces.append((rest, False))
    pieces.sort(key=lambda t: t[0].sort_key())
    return pieces


def _binomial_split_q(n, v):
    """Closed-point pieces of z^n - v over Q: [(piece, certified)].
    Exact for n <= 4; for larger n rational roots are split off and the
    cofactor is left as one uncertified piece."""
    f = Poly(QQ, [-v] + [QQ.zero] * (n - 1) + [QQ.one])
    if n <= 1:
        return [(f, True)]
    pieces = []
    rest = f
    for r, m in rational_roots(f):
        lin = Poly(QQ, [-r, QQ.one])
        pieces.append((lin, True))
        rest = rest.exact_div(lin**m)
    if rest.degree == 0:
        pass
    elif rest.degree <= 3:
        pieces.append((rest, True))  # no rational root left: irreducible
    elif n == 4 and rest.degree == 4:
        # z^4 - v with no rational 4th root: splits iff v = b^2 or -v/4 = b^4
        sq = QQ.nth_root(v, 2)
        if sq is not None:
            for sgn in (1, -1):
                gq = Poly(QQ, [QQ(-sgn) * sq, QQ(0), QQ(1)])
                pieces.extend(_split_x_poly(QQ, gq))
        else:
            b4 = QQ.nth_root(QQ(-v.value / 4), 4)
            if b4 is not None:
                b = b4.value
                pieces.append((Poly(QQ, [2 * b * b, -2 * b, 1]), True))
                pieces.append((Poly(QQ, [2 * b * b, 2 * b, 1]), True))
            else:
                pieces.append((rest, True))  # irreducible binomial quartic
    else:
        pieces.append((rest, False))
    pieces.sort(key=lambda t: t[0].sort_key())
    return pieces


# ---------------------------------------------------------------------------
# places over a given x
# ---------------------------------------------------------------------------


def places_over(curve, x0, seed=0):
    """All places of the curve above one closed point of the x-line.

    ``x0`` is a monic irreducible polynomial over the base field (or the
    AT_INFINITY marker).  The ramification indices and residue degrees
    satisfy sum(e * f) = n * deg(x0).
    """
    if x0 == AT_INFINITY:
        return curve.infinite_places()
    if not isinstance(x0, Poly) or x0.degree < 1:
        raise ValueError("x0 must be a nonconstant monic polynomial or AT_INFINITY")
    x0 = x0.monic()
    field = curve.field
    if isinstance(field, (PrimeField, ExtensionField)):
        from .factor import is_irreducible

        if not is_irreducible(x0):
            raise ValueError(f"{x0!r} is reducible over {field}")
    else:
        if rational_roots(x0) and x0.degree > 1:
            raise ValueError(f"{x0!r} is reducible over Q")
    # branch?
    for s, m in curve.branch:
        d = x0.gcd(s)
        if d.degree == x0.degree:
            return [Place(BRANCH, curve, x0, None, curve.n, x0.degree, m=m)]
        if d.degree > 0:
            raise ValueError("x0 mixes branch and non-branch roots")
    if x0.degree == 1:
        v = curve.h(-x0[0])
        return _affine_places_rational_x(curve, x0, v)
    return _affine_places_closed_point(curve, x0, seed=seed)


def _affine_places_rational_x(curve, x0, v):
    """Places over a degree-1 off-branch x-value with h(x0) = v != 0."""
    field = curve.field
    n = curve.n
    places = []
    if isinstance(field, (PrimeField, ExtensionField)):
        from .factor import factor

        zpoly = Poly(field, [-v] + [field.zero] * (n - 1) + [field.one])
        pieces = [(g, True) for g, _ in factor(zpoly)]
    else:
        pieces = _binomial_split_q(n, v)
    for j, (g, certified) in enumerate(pieces):
        if g.degree == 1 and certified:
            places.append(Place(AFFINE, curve, x0, ("value", -g[0]), 1, x0.degree))
        else:
            places.append(
                Place(AFFINE, curve, x0, ("factor", j, g.degree), 1, x0.degree * g.degree, certified=certified)
            )
    return places


def _affine_places_closed_point(curve, x0, seed=0):
    """Places over an off-branch closed point of degree > 1."""
    field = curve.field
    if field == QQ:
        # the residue field is a proper number field; report the whole fiber
        return [
            Place(AFFINE, curve, x0, ("fiber", 0, curve.n), 1, x0.degree * curve.n, certified=False)
        ]
    if not isinstance(field, PrimeField):
        raise NeedsFieldExtension(
            "places over closed points of degree > 1 are supported over prime fields; "
            "base-change to split the point first",
            degree=x0.degree,
        )
    from .factor import factor

    residue = ExtensionField(field.p, x0.degree, modulus=[c.value for c in x0.coeffs])
    xbar = residue.generator
    v = Poly(residue, [residue(c.value) for c in curve.h.coeffs])(xbar)
    zpoly = Poly(residue, [-v] + [residue.zero] * (curve.n - 1) + [residue.one])
    places = []
    for j, (g, _) in enumerate(factor(zpoly, seed=seed)):
        places.append(
            Place(AFFINE, curve, x0, ("factor", j, g.degree), 1, x0.degree * g.degree)
        )
    return places


# ---------------------------------------------------------------------------
# the cyclic trigonal family
# ---------------------------------------------------------------------------


def build_trigonal(g, field=QQ, alphas=None, betas=None):
    """A cyclic trigonal curve of genus g >= 3 with two totally ramified
    rational branch points over alpha_1, alpha_2.

    Chooses t in {0,1,2} with t = 1 - g (mod 3) and s = g - t + 2; branch
    values default to 0, 1, 2, ...  Returns (curve, params, P1, P2).
    """
    if g < 3:
        raise ModelError("the trigonal family needs genus >= 3")
    t = (1 - g) % 3
    s = g - t + 2
    if alphas is None and betas is None:
        alphas = [field(i) for i in range(s)]
        betas = [field(s + j) for j in range(t)]
        if field.characteristic:
            vals = set()
            for v in alphas + betas:
                if v.value in vals:
                    raise ModelError(
                        f"field {field} has too few elements for {s + t} distinct branch values"
                    )
                vals.add(v.value)
    else:
        alphas = [field(a) for a in (alphas or [])]
        betas = [field(b) for b in (betas or [])]
        if len(alphas) != s or len(betas) != t:
            raise ModelError(f"genus {g} needs s={s} simple and t={t} double branch values")
    params = TrigonalParams(alphas, betas)
    values = [(a, 1) for a in params.alphas] + [(b, 2) for b in params.betas]
    curve = SuperellipticCurve.from_branch(3, field, values)
    if curve.genus != g:
        raise ModelError(f"constructed genus {curve.genus} != requested {g}")  # cannot happen
    p1 = curve.branch_place_over(params.alphas[0])
    p2 = curve.branch_place_over(params.alphas[1])
    return curve, params, p1, p2
