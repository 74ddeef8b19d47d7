"""Divisors on a curve model, principal divisors of coordinate tuples, the
projective height, and the conorm of base divisors.

Heights are exact rationals end to end; nothing in this module touches
floating point.  Support discovery for principal divisors is closed form:
poles of a tuple live above denominator primes and infinity (y is integral
over F_q[x]), while common zeros live above primes dividing the norm of a
cleared coordinate, so the candidate set below is provably complete.
"""

from __future__ import annotations

from fractions import Fraction

from .curve import INFINITY, FFElement, ORD_INFINITY
from .errors import InputError
from .poly import Poly, RationalFunction, factor


class Divisor:
    """Finite formal integer combination of places, stored sparsely."""

    __slots__ = ("curve", "support")

    def __init__(self, curve, support):
        self.curve = curve
        self.support = {p: c for p, c in support.items() if c}

    @classmethod
    def zero(cls, curve):
        return cls(curve, {})

    def degree(self):
        return sum(c * p.degree for p, c in self.support.items())

    def coefficient(self, place):
        return self.support.get(place, 0)

    def places(self):
        return sorted(self.support, key=lambda p: p.sort_key())

    def is_zero(self):
        return not self.support

    def is_effective(self):
        return all(c >= 0 for c in self.support.values())

    def __add__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        if other.curve is not self.curve:
            raise InputError("divisors on different curves")
        out = dict(self.support)
        for p, c in other.support.items():
            out[p] = out.get(p, 0) + c
        return Divisor(self.curve, out)

    def __neg__(self):
        return Divisor(self.curve, {p: -c for p, c in self.support.items()})

    def __sub__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, int):
            return NotImplemented
        return Divisor(self.curve, {p: scalar * c for p, c in self.support.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.curve is other.curve and self.support == other.support

    def __hash__(self):
        return hash((id(self.curve), tuple(sorted(
            (p._key, c) for p, c in self.support.items()
        ))))

    def __le__(self, other):
        return (other - self).is_effective()

    def __ge__(self, other):
        return (self - other).is_effective()

    def to_json(self):
        rows = []
        for p in self.places():
            base = INFINITY if p.base is None else str(p.base)
            rows.append({"base": base, "branch": p.branch, "coeff": self.support[p]})
        return rows

    @classmethod
    def from_json(cls, curve, rows):
        from .poly import parse_poly

        support = {}
        for row in rows:
            base = row["base"]
            prime = None if base == INFINITY else parse_poly(curve.base_field, base)
            places = curve.places_above(prime)
            branch = row["branch"]
            if not 0 <= branch < len(places):
                raise InputError("no branch %d above %s" % (branch, base))
            place = places[branch]
            support[place] = support.get(place, 0) + int(row["coeff"])
        return cls(curve, support)

    def __repr__(self):
        if not self.support:
            return "Divisor(0)"
        bits = []
        for p in self.places():
            bits.append("%+d*%s" % (self.support[p], p.text()))
        return "Divisor(%s)" % " ".join(bits)


def _as_tuple(zs):
    if isinstance(zs, FFElement):
        return (zs,)
    return tuple(zs)


def _pole_candidate_places(curve, zs):
    """Places that can carry a pole of any coordinate."""
    places = list(curve.infinite_places)
    seen = set()
    for z in zs:
        for co in z.coords:
            if co.den.degree > 0:
                for prime, _mult in factor(co.den):
                    if prime.c not in seen:
                        seen.add(prime.c)
                        places.extend(curve.places_above(prime))
    return places


def _zero_candidate_places(curve, zs):
    """Places that can carry a common zero of all coordinates: zeros of the
    first nonzero coordinate suffice, located through its norm."""
    z0 = next((z for z in zs if not z.is_zero()), None)
    if z0 is None:
        return []
    cleared, _denom = z0.clear_denominators()
    norm = curve.norm_of_integral(cleared)
    places = []
    if norm.degree > 0:
        for prime, _mult in factor(norm):
            places.extend(curve.places_above(prime))
    return places


def principal_divisor(curve, zs):
    """The divisor of a nonzero coordinate tuple: ord_vector at every place,
    computed over the complete closed-form candidate set."""
    zs = _as_tuple(zs)
    if all(z.is_zero() for z in zs):
        raise InputError("principal divisor of the all-zero tuple is undefined")
    candidates = {}
    for place in _pole_candidate_places(curve, zs):
        candidates[place] = True
    for place in _zero_candidate_places(curve, zs):
        candidates[place] = True
    for prime, _mult in factor(curve.f):
        for place in curve.places_above(prime):
            candidates[place] = True
    support = {}
    for place in candidates:
        v = curve.ord_vector(zs, place)
        if v:
            support[place] = v
    return Divisor(curve, support)


def height(curve, zs):
    """Projective height of a nonzero tuple: minus the degree of its divisor
    over the geometric extension degree, as an exact rational."""
    div = principal_divisor(curve, zs)
    return Fraction(-div.degree(), curve.ext_degree)


def base_height(rf):
    """Height of (1, z) for z in F_q(x), computed inside the base field:
    the degree of the pole divisor of z there."""
    if isinstance(rf, Poly):
        rf = RationalFunction(rf)
    if rf.is_zero():
        return Fraction(0)
    return Fraction(max(rf.num.degree, rf.den.degree))


def conorm(curve, base_map):
    """Pull a divisor of F_q(x) back to K, weighting each place above by
    its ramification index."""
    support = {}
    for base, coeff in base_map.items():
        if base is None or base == INFINITY:
            places = curve.places_above(None)
        else:
            places = curve.places_above(base)
        for place in places:
            support[place] = support.get(place, 0) + coeff * place.e
    return Divisor(curve, support)


def tuple_in_space(curve, zs, bound):
    """Membership of a tuple in the Riemann-Roch space of the divisor: the
    tuple divisor plus the bound must be effective.  Checked at the support
    of the bound and at every candidate pole place of the tuple."""
    zs = _as_tuple(zs)
    if all(z.is_zero() for z in zs):
        return True
    candidates = set(bound.support)
    candidates.update(_pole_candidate_places(curve, zs))
    for place in candidates:
        v = curve.ord_vector(zs, place)
        if v is not ORD_INFINITY and v + bound.coefficient(place) < 0:
            return False
    return True


def height_bound_check(curve, zs, bound):
    """Verify the defining height inequality for a member of L(bound):
    h(zs) <= deg(bound) / d(K/k).  Raises if zs is not a member."""
    zs = _as_tuple(zs)
    if not tuple_in_space(curve, zs, bound):
        raise InputError("tuple is not in the Riemann-Roch space of the divisor")
    return height(curve, zs) <= Fraction(bound.degree(), curve.ext_degree)
