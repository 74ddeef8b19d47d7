"""Superelliptic function fields K = F_q(x)[y]/(y^m - f(x)).

Model validation (tame, squarefree), the constant-field certificate, genus,
decomposition of places over every base prime and over infinity, exact
element arithmetic, normalized valuations via truncated local expansions,
and minimal polynomials over F_q(x).

Only tame Kummer models over the rational base field are accepted: with
gcd(m, q) = 1 and f squarefree nonconstant the constant field of K is F_q
itself (f is not an l-th power for any prime l | m, and -4*h^4 always has
repeated multiplicities), so the geometric degree of K over F_q(x) equals
m.  Wild models are rejected as out of modeled scope.
"""

from __future__ import annotations

import math

from . import series
from .errors import InputError, PrecisionCapError
from .gf import FieldElement, embed, field_make
from .poly import Poly, RationalFunction, is_irreducible, is_squarefree, factor, roots_in

#: Marker accepted everywhere a base place is named: the place at infinity.
INFINITY = "inf"

ORD_INFINITY = math.inf


class Place:
    """A closed point of K: base prime (or infinity), ramification index,
    residue degree over the base place, branch label in the deterministic
    decomposition order."""

    __slots__ = ("kind", "base", "e", "f_res", "branch", "residue_field", "_key")

    def __init__(self, kind, base, e, f_res, branch, residue_field):
        self.kind = kind
        self.base = base
        self.e = e
        self.f_res = f_res
        self.branch = branch
        self.residue_field = residue_field
        self._key = (kind, None if base is None else base.c, branch)

    @property
    def degree(self):
        """Degree over K: residue degree times the base-prime degree (the
        infinite base place has degree one)."""
        if self.kind == "infinite":
            return self.f_res
        return self.f_res * self.base.degree

    def is_infinite(self):
        return self.kind == "infinite"

    def text(self):
        base = INFINITY if self.base is None else str(self.base)
        return "(%s; branch %d)" % (base, self.branch)

    def __eq__(self, other):
        return isinstance(other, Place) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def sort_key(self):
        # finite places first by (base degree, base lex, branch); infinite last
        if self.kind == "infinite":
            return (1, (), self.branch)
        return (0, self.base.sort_key(), self.branch)

    def __repr__(self):
        return "Place%s[e=%d,f=%d]" % (self.text(), self.e, self.f_res)


class CurveModel:
    """Validated model of K = F_q(x)[y]/(y^m - f(x)); immutable."""

    def __init__(self, base_field, m, f, _selfcheck=True):
        if not isinstance(m, int) or m < 2:
            raise InputError("the exponent m must be an integer >= 2, got %r" % (m,))
        if f.field is not base_field:
            raise InputError("f is not a polynomial over the base field")
        if math.gcd(m, base_field.p) != 1:
            raise InputError(
                "wild ramification out of modeled scope: gcd(m, q) = gcd(%d, %d) > 1"
                % (m, base_field.order)
            )
        if f.degree < 1:
            raise InputError("f must be nonconstant")
        if not is_squarefree(f):
            raise InputError("f must be squarefree; repeated factors change the model class")
        self.base_field = base_field
        self.m = m
        self.f = f
        self.n = f.degree
        self.d_inf = math.gcd(m, self.n)
        gg = (m - 1) * (self.n - 1) + 1 - self.d_inf
        assert gg % 2 == 0, "genus formula parity violated"
        self.genus = gg // 2
        #: geometric degree d(K/k); equals m because the constant field is F_q
        self.ext_degree = m
        self.constant_field_certificate = {
            "tame": True,
            "f_squarefree": True,
            "f_nonconstant": True,
            "constant_field_order": base_field.order,
        }
        self._place_cache = {}
        self._prime_cache = {}
        self._local_cache = {}
        self._g_pows = {}
        self.infinite_places = self._build_infinite_places()
        if _selfcheck:
            self._genus_selfcheck()

    # -- basic elements --------------------------------------------------------

    def element(self, coeffs):
        """Build an element from up to m coordinates in the y-power basis."""
        coords = []
        for co in coeffs:
            if isinstance(co, RationalFunction):
                coords.append(co)
            elif isinstance(co, Poly):
                coords.append(RationalFunction(co))
            else:
                coords.append(RationalFunction(Poly(self.base_field, [co])))
        if len(coords) > self.m:
            raise InputError("at most m coordinates allowed")
        coords += [RationalFunction.zero(self.base_field)] * (self.m - len(coords))
        return FFElement(self, tuple(coords))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    @property
    def x(self):
        return self.element([Poly.x(self.base_field)])

    @property
    def y(self):
        return self.element([0, 1])

    def constant(self, value):
        return self.element([value])

    # -- place decomposition ------------------------------------------------------

    def _residue_field(self, degree_over_base):
        return field_make(self.base_field.p, self.base_field.k * degree_over_base)

    def _prime_data(self, p):
        got = self._prime_cache.get(p.c)
        if got is None:
            R = self._residue_field(p.degree)
            xbar = roots_in(p, R)[0]
            fbar = self.f.eval_at(xbar)
            got = (R, xbar, fbar)
            self._prime_cache[p.c] = got
        return got

    def _build_infinite_places(self):
        F = self.base_field
        lc = self.f.leading()
        t_poly = Poly(F, [-lc] + [0] * (self.d_inf - 1) + [1])  # T^d - lc(f)
        places = []
        for branch, (fac, _mult) in enumerate(factor(t_poly)):
            places.append(
                Place("infinite", None, self.m // self.d_inf, fac.degree, branch,
                      self._residue_field(fac.degree))
            )
            self._place_cache.setdefault("inf_factors", []).append(fac)
        return tuple(places)

    def places_above(self, base):
        """All places of K above a monic irreducible base prime, or above
        infinity; deterministic branch order (factor lex order)."""
        if base is None or base == INFINITY:
            return self.infinite_places
        got = self._place_cache.get(base.c)
        if got is not None:
            return got
        if not base.is_monic() or not is_irreducible(base):
            raise InputError("base prime must be monic irreducible, got %s" % base)
        if (self.f % base).is_zero():
            # totally ramified above a squarefree-f prime under tameness
            places = (
                Place("finite", base, self.m, 1, 0, self._residue_field(base.degree)),
            )
        else:
            R, _xbar, fbar = self._prime_data(base)
            t_poly = Poly(R, [-fbar] + [0] * (self.m - 1) + [1])  # T^m - fbar
            places = []
            factors = []
            for branch, (fac, _mult) in enumerate(factor(t_poly)):
                places.append(
                    Place("finite", base, 1, fac.degree, branch,
                          self._residue_field(base.degree * fac.degree))
                )
                factors.append(fac)
            self._place_cache[("factors", base.c)] = factors
            places = tuple(places)
        self._place_cache[base.c] = places
        return places

    def branch_factor(self, place):
        """The irreducible factor labeling an unramified finite place."""
        self.places_above(place.base)
        return self._place_cache[("factors", place.base.c)][place.branch]

    # -- local expansion data --------------------------------------------------

    def _local(self, place):
        got = self._local_cache.get(place._key)
        if got is None:
            if place.kind == "infinite":
                got = _InfiniteLocal(self, place)
            elif place.e == 1:
                got = _UnramifiedLocal(self, place)
            else:
                got = _RamifiedLocal(self, place)
            self._local_cache[place._key] = got
        return got

    def _g_series(self, b, prec):
        """Truncation of G^b over F_q, where G is the m-th root of the
        reversed-and-normalized f used by every expansion at infinity."""
        got = self._g_pows.get((b, prec))
        if got is not None:
            return got
        F = self.base_field
        c_inv = F.raw_inv(self.f.c[-1])
        rev = [F.raw_mul(c_inv, self.f.c[self.n - j]) for j in range(self.n + 1)]
        g1 = series.nth_root(F, rev, self.m, F.raw_one(), prec)
        gb = series.powr(F, g1, b, prec)
        self._g_pows[(b, prec)] = gb
        return gb

    # -- valuations ------------------------------------------------------------------

    def ord(self, z, place):
        """Normalized valuation of z at the place (image in Z, and +inf at 0)."""
        if z.is_zero():
            return ORD_INFINITY
        cleared, denom = z.clear_denominators()
        value = self._ord_integral(cleared, place)
        return value - self._ord_base_poly(denom, place)

    def ord_vector(self, zs, place):
        """Valuation of a tuple: the minimum over its coordinates."""
        vals = [self.ord(z, place) for z in zs]
        finite = [v for v in vals if v is not ORD_INFINITY]
        if not finite:
            raise InputError("ord of the all-zero tuple is undefined")
        return min(finite)

    def _ord_base_poly(self, poly, place):
        """Valuation at the place of a nonzero polynomial in x alone."""
        if place.kind == "infinite":
            return -place.e * poly.degree
        mult = 0
        while True:
            q, r = divmod(poly, place.base)
            if not r.is_zero():
                return place.e * mult
            poly = q
            mult += 1

    def _ord_integral(self, coeffs, place):
        """Valuation of sum(coeffs[b] * y^b) with polynomial coefficients."""
        if place.kind == "finite" and place.e > 1:
            best = None
            for b, cb in enumerate(coeffs):
                if cb.is_zero():
                    continue
                v = self.m * self._mult_of(cb, place.base) + b
                if best is None or v < best:
                    best = v
            return best
        local = self._local(place)
        maxdeg = max(cb.degree for cb in coeffs if not cb.is_zero())
        cap = self.m * (1 + self.n + maxdeg)
        return local.ord_integral(coeffs, cap)

    def _mult_of(self, poly, prime):
        mult = 0
        while True:
            q, r = divmod(poly, prime)
            if not r.is_zero():
                return mult
            poly = q
            mult += 1

    # -- minimal polynomials ------------------------------------------------------

    def minimal_polynomial(self, z):
        """Monic minimal polynomial of z over F_q(x), as a low-first list of
        rational-function coefficients; its degree always divides m."""
        powers = [self.one()]
        for _ in range(self.m):
            powers.append(powers[-1] * z)
        for t in range(1, self.m + 1):
            cols = [powers[j].coords for j in range(t)]
            rhs = powers[t].coords
            sol = _solve_rational(self.base_field, cols, rhs, self.m)
            if sol is not None:
                out = [-co for co in sol]
                out.append(RationalFunction.one(self.base_field))
                return out
        raise AssertionError("no dependency among 1, z, ..., z^m")

    def is_generator(self, z):
        """True iff z generates K over F_q(x), i.e. its minimal polynomial
        has degree exactly m."""
        return len(self.minimal_polynomial(z)) - 1 == self.m

    def norm_of_integral(self, coeffs):
        """Determinant of multiplication by sum(coeffs[b] y^b) on the y-power
        basis, for polynomial coefficients; a polynomial in x."""
        m = self.m
        F = self.base_field
        cols = []
        padded = list(coeffs) + [Poly.zero(F)] * (m - len(coeffs))
        for j in range(m):
            col = [Poly.zero(F) for _ in range(m)]
            for b, cb in enumerate(padded):
                if cb.is_zero():
                    continue
                t = b + j
                if t < m:
                    col[t] = col[t] + cb
                else:
                    col[t - m] = col[t - m] + cb * self.f
            cols.append(col)
        return _poly_det(F, cols, m)

    # -- self-test ------------------------------------------------------------------

    def _genus_selfcheck(self):
        """Executable certificate for the genus value: dimensions of spaces
        of pole order bounded at infinity must match the Riemann-Roch count
        once the degree passes 2g - 1."""
        from .divisor import Divisor
        from .rr import rr_dim

        pole = Divisor(self, {v: v.e for v in self.infinite_places})
        n0 = max(1, -(-(2 * self.genus - 1) // self.m))
        for nn in (n0, n0 + 1):
            want = nn * self.m + 1 - self.genus
            got = rr_dim(self, pole * nn)
            if got != want:
                raise AssertionError(
                    "genus certificate failed: l(%d * pole(x)) = %d, expected %d"
                    % (nn, got, want)
                )

    def __repr__(self):
        return "CurveModel(y^%d = %s over %r)" % (self.m, self.f, self.base_field)

    def label(self):
        return "y^%d=%s/GF(%d)" % (self.m, self.f, self.base_field.order)


def curve_new(base_field, m, f):
    """Validate and construct the model, running the genus self-test."""
    return CurveModel(base_field, m, f)


# ---------------------------------------------------------------------------
# Local expansion providers, one per place kind.


class _RamifiedLocal:
    """Totally ramified finite place above p | f: y is a uniformizer and the
    monomial valuations m*ord_p(c_b) + b are pairwise distinct mod m, so the
    minimum is exact.  (Kept for interface symmetry.)"""

    def __init__(self, curve, place):
        self.curve = curve
        self.place = place

    def ord_integral(self, coeffs, cap):
        best = None
        for b, cb in enumerate(coeffs):
            if cb.is_zero():
                continue
            v = self.curve.m * self.curve._mult_of(cb, self.place.base) + b
            if best is None or v < best:
                best = v
        return best


class _UnramifiedLocal:
    """Finite place with e = 1: work in the completion as power series in
    tau = x - x0 over the residue field, with y Hensel-lifted from the
    branch root."""

    def __init__(self, curve, place):
        self.curve = curve
        self.place = place
        big = place.residue_field
        R, xbar, _fbar = curve._prime_data(place.base)
        psi = curve.branch_factor(place)
        self.big = big
        self.x0 = embed(xbar, big)
        self.y0 = roots_in(psi, big)[0]
        self._y_series = {}

    def y_series(self, prec):
        got = self._y_series.get(prec)
        if got is None:
            big = self.big
            shifted = series.poly_shift(
                big, self.curve.f.raw_coeffs_in(big), self.x0.c, prec
            )
            got = series.nth_root(big, shifted, self.curve.m, self.y0.c, prec)
            self._y_series[prec] = got
        return got

    def element_series(self, coeffs, prec):
        big = self.big
        out = [big.raw_zero()] * prec
        yb = series.fit(big, [big.raw_one()], prec)
        ys = self.y_series(prec)
        for b, cb in enumerate(coeffs):
            if b:
                yb = series.mul(big, yb, ys, prec)
            if cb.is_zero():
                continue
            cs = series.poly_shift(big, cb.raw_coeffs_in(big), self.x0.c, prec)
            out = series.add(big, out, series.mul(big, cs, yb, prec), prec)
        return out

    def ord_integral(self, coeffs, cap):
        # residue evaluation settles almost every query
        big = self.big
        acc = big.raw_zero()
        ypow = big.raw_one()
        for b, cb in enumerate(coeffs):
            if b:
                ypow = big.raw_mul(ypow, self.y0.c)
            if not cb.is_zero():
                acc = big.raw_add(acc, big.raw_mul(cb.eval_at(self.x0).c, ypow))
        if any(acc):
            return 0
        prec = 4
        while True:
            out = self.element_series(coeffs, prec)
            for i, co in enumerate(out):
                if any(co):
                    return i
            if prec > cap:
                raise PrecisionCapError(
                    "no valuation below the proven cap %d at %s" % (cap, self.place.text())
                )
            prec *= 2


class _InfiniteLocal:
    """Place above infinity.  With m' = m/d, n' = n/d and theta the branch
    root of T^d - lc(f), the exact relations x = theta^a * s^(-m') and
    y = theta^b * s^(-n') * G(theta^(-a) s^(m')) hold for the Bezout pair
    (a, b) with b*m' - a*n' = 1, where G^m equals the reversed normalized f.
    Monomials therefore expand exactly, and only ties between monomial
    leading exponents ever require reading deeper coefficients."""

    def __init__(self, curve, place):
        self.curve = curve
        self.place = place
        d = curve.d_inf
        self.mp = curve.m // d
        self.np = curve.n // d
        fac = curve._place_cache["inf_factors"][place.branch]
        self.theta = roots_in(fac, place.residue_field)[0]
        a, b = _bezout_pair(self.mp, self.np)
        self.alpha = a
        self.beta = b
        self._emb_g = {}

    def _g_embedded(self, b, prec):
        got = self._emb_g.get((b, prec))
        if got is None:
            big = self.place.residue_field
            raw = self.curve._g_series(b, prec)
            if big is self.curve.base_field:
                got = raw
            else:
                got = [
                    embed(FieldElement(self.curve.base_field, co), big).c for co in raw
                ]
            self._emb_g[(b, prec)] = got
        return got

    def monomial_lead(self, a, b):
        """Exponent of the leading term of x^a y^b at this place."""
        return -(a * self.mp + b * self.np)

    def coeff_of(self, monomials, exponent, g_prec):
        """Coefficient of s^exponent of sum(c * x^a * y^b); monomials is a
        list of (a, b, raw coefficient over the base field)."""
        big = self.place.residue_field
        theta = self.theta.c
        acc = big.raw_zero()
        for a, b, co in monomials:
            rel = exponent + a * self.mp + b * self.np
            if rel < 0 or rel % self.mp:
                continue
            j = rel // self.mp
            gb = self._g_embedded(b, max(g_prec, j + 1))
            if j >= len(gb) or not any(gb[j]):
                continue
            unit = big.raw_pow(theta, self.alpha * a + self.beta * b - self.alpha * j)
            term = big.raw_mul(unit, gb[j])
            if self.curve.base_field is big:
                term = big.raw_mul(term, co)
            else:
                term = big.raw_mul(term, embed(FieldElement(self.curve.base_field, co), big).c)
            acc = big.raw_add(acc, term)
        return acc

    def ord_integral(self, coeffs, cap):
        monomials = []
        lead = None
        lead_count = 0
        for b, cb in enumerate(coeffs):
            if cb.is_zero():
                continue
            for a, co in enumerate(cb.c):
                if any(co):
                    monomials.append((a, b, co))
                    ex = self.monomial_lead(a, b)
                    if lead is None or ex < lead:
                        lead, lead_count = ex, 1
                    elif ex == lead:
                        lead_count += 1
        if lead_count == 1:
            return lead
        width = 8
        while True:
            for e in range(lead, lead + width):
                if any(self.coeff_of(monomials, e, width)):
                    return e
            if lead + width > cap:
                raise PrecisionCapError(
                    "no valuation below the proven cap %d at %s" % (cap, self.place.text())
                )
            width *= 2


def _bezout_pair(mp, np_):
    """(a, b) with b*mp - a*np_ = 1 and 0 <= a < mp."""
    # extended euclid: u*mp + v*np_ = 1
    old_r, r = mp, np_
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_u, u = u, old_u - qt * u
        old_v, v = v, old_v - qt * v
    assert old_r == 1
    b, a = old_u, -old_v
    t = a % mp
    b += ((t - a) // mp) * np_
    a = t
    assert b * mp - a * np_ == 1
    return a, b


# ---------------------------------------------------------------------------
# Elements of K


class FFElement:
    """Element of K in the y-power basis: sum of coords[i] * y^i with
    rational-function coordinates, kept canonical coordinatewise."""

    __slots__ = ("curve", "coords")

    def __init__(self, curve, coords):
        self.curve = curve
        self.coords = coords

    def _coerce(self, other):
        if isinstance(other, FFElement):
            if other.curve is not self.curve:
                raise InputError("elements of different curve models")
            return other
        if isinstance(other, (int, FieldElement, Poly, RationalFunction)):
            return self.curve.element([other])
        return None

    def is_zero(self):
        return all(co.is_zero() for co in self.coords)

    def is_constant(self):
        """True iff the element lies in the constant field F_q."""
        return self.coords[0].is_constant() and all(
            co.is_zero() for co in self.coords[1:]
        )

    def in_base(self):
        """True iff the element lies in F_q(x)."""
        return all(co.is_zero() for co in self.coords[1:])

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FFElement(
            self.curve, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.curve, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        m = self.curve.m
        F = self.curve.base_field
        full = [RationalFunction.zero(F) for _ in range(2 * m - 1)]
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coords):
                if not b.is_zero():
                    full[i + j] = full[i + j] + a * b
        out = list(full[:m])
        for t in range(m, 2 * m - 1):
            if not full[t].is_zero():
                out[t - m] = out[t - m] + full[t] * self.curve.f
        return FFElement(self.curve, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in the function field")
        mu = self.curve.minimal_polynomial(self)
        # z * sum_{j=1..t} mu_j z^(j-1) = -mu_0, with mu_t = 1
        t = len(mu) - 1
        total = self.curve.zero()
        power = self.curve.one()
        for j in range(1, t + 1):
            co = mu[j]
            if not co.is_zero():
                total = total + FFElement(
                    self.curve, tuple(c * co for c in power.coords)
                )
            if j < t:
                power = power * self
        neg_inv = RationalFunction.one(self.curve.base_field) / (-mu[0])
        return FFElement(self.curve, tuple(c * neg_inv for c in total.coords))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.curve.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((id(self.curve), self.coords))

    def sort_key(self):
        return tuple(co.sort_key() for co in self.coords)

    def clear_denominators(self):
        """(integral coefficients, common denominator): self equals
        sum(coeffs[b] y^b) / denominator with polynomial coeffs."""
        F = self.curve.base_field
        denom = Poly.one(F)
        for co in self.coords:
            g = denom.gcd(co.den)
            denom = denom * (co.den // g)
        cleared = [co.num * (denom // co.den) for co in self.coords]
        return cleared, denom

    def norm(self):
        """Field norm down to F_q(x)."""
        cleared, denom = self.clear_denominators()
        nm = self.curve.norm_of_integral(cleared)
        return RationalFunction(nm, denom ** self.curve.m)

    def __str__(self):
        return format_ff(self)

    def __repr__(self):
        return "<%s on %s>" % (format_ff(self), self.curve.label())


def _solve_rational(field, cols, rhs, nrows):
    """Solve sum(a_j cols[j]) = rhs over F_q(x); None when inconsistent."""
    t = len(cols)
    matrix = [
        [cols[j][i] for j in range(t)] + [rhs[i]] for i in range(nrows)
    ]
    pivots = []
    row = 0
    for col in range(t):
        pivot = None
        for r in range(row, nrows):
            if not matrix[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        matrix[row], matrix[pivot] = matrix[pivot], matrix[row]
        inv = RationalFunction.one(field) / matrix[row][col]
        matrix[row] = [v * inv for v in matrix[row]]
        for r in range(nrows):
            if r != row and not matrix[r][col].is_zero():
                co = matrix[r][col]
                matrix[r] = [v - co * w for v, w in zip(matrix[r], matrix[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    # consistency
    for r in range(row, nrows):
        if not matrix[r][t].is_zero():
            return None
    if len(pivots) < t:
        # underdetermined only if the columns were dependent, which the
        # ascending-degree caller rules out
        return None
    sol = [RationalFunction.zero(field) for _ in range(t)]
    for r, col in enumerate(pivots):
        sol[col] = matrix[r][t]
    return sol


def _poly_det(field, cols, m):
    """Determinant of an m x m matrix of polynomials (columns given)."""
    if m == 1:
        return cols[0][0]
    if m == 2:
        return cols[0][0] * cols[1][1] - cols[1][0] * cols[0][1]
    if m == 3:
        a, b, c = cols[0]
        d, e, fz = cols[1]
        g, h, i = cols[2]
        return a * (e * i - fz * h) - d * (b * i - c * h) + g * (b * fz - c * e)
    # Bareiss fraction-free elimination for the general case
    mat = [[cols[j][i] for j in range(m)] for i in range(m)]
    sign = 1
    prev = Poly.one(field)
    for k in range(m - 1):
        if mat[k][k].is_zero():
            for r in range(k + 1, m):
                if not mat[r][k].is_zero():
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(field)
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                num = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]
                mat[i][j] = num // prev
            mat[i][k] = Poly.zero(field)
        prev = mat[k][k]
    det = mat[m - 1][m - 1]
    return det if sign > 0 else -det


# ---------------------------------------------------------------------------
# FFElement text form: coefficients in x (parenthesized, optionally as a
# quotient), powers of y ascending, e.g. (x^2+1)/(x+2)*y + (2)


def format_ff(z):
    terms = []
    for i, co in enumerate(z.coords):
        if co.is_zero():
            continue
        if co.is_poly():
            cs = "(%s)" % co.num
        else:
            cs = "(%s)/(%s)" % (co.num, co.den)
        if i == 0:
            terms.append(cs)
        elif i == 1:
            terms.append("%s*y" % cs)
        else:
            terms.append("%s*y^%d" % (cs, i))
    return " + ".join(terms) if terms else "0"


def parse_ff(curve, text):
    """Inverse of format_ff."""
    from .poly import parse_poly

    text = text.strip()
    if text == "0":
        return curve.zero()
    coords = [RationalFunction.zero(curve.base_field) for _ in range(curve.m)]
    for chunk in _split_top_level(text, "+"):
        chunk = chunk.strip()
        power = 0
        if "*y" in chunk:
            body, _, tail = chunk.rpartition("*y")
            if tail.startswith("^"):
                power = int(tail[1:])
            elif tail == "":
                power = 1
            else:
                raise InputError("bad y-power suffix in %r" % chunk)
            chunk = body
        parts = _split_top_level(chunk, "/")
        if len(parts) == 1:
            num, den = parts[0], None
        elif len(parts) == 2:
            num, den = parts
        else:
            raise InputError("too many '/' in coefficient %r" % chunk)
        num_poly = parse_poly(curve.base_field, _strip_parens(num))
        if den is None:
            rf = RationalFunction(num_poly)
        else:
            rf = RationalFunction(num_poly, parse_poly(curve.base_field, _strip_parens(den)))
        if power >= curve.m:
            raise InputError("y-power %d exceeds the basis" % power)
        coords[power] = coords[power] + rf
    return FFElement(curve, tuple(coords))


def _split_top_level(text, sep):
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _strip_parens(text):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        depth = 0
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0 and i < len(text) - 1:
                    return text  # outer parens do not wrap the whole string
        return text[1:-1]
    return text
