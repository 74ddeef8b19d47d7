"""The generator-construction pipeline and its certificates.

Searches for an admissible divisor (places with residue degree one over
distinct base places, multiplicity one), extracts a nonconstant element of
its Riemann-Roch space, certifies that the element generates the whole
extension, and reports its exact height together with the constructive
upper bound deg(A)/d(K/k) and the Castelnuovo-type lower bound
g/(d(d-1)) + 1/d.

The place-count lower bound is evaluated with exact integer arithmetic on
fourth-root-separated terms; no floating point enters any comparison.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .curve import CurveModel, FFElement, curve_new, parse_ff
from .divisor import Divisor, height, tuple_in_space
from .errors import InputError, SearchExhaustedError
from .gf import field_make, is_prime
from .poly import Poly, factor, irreducibles, parse_poly
from .rr import rr_space

CERTIFICATE_SCHEMA = "smallgen/1"

#: Extra degrees tried above genus+1 before the multi-place fallback.
DEFAULT_EXTRA_DEGREES = 8


# ---------------------------------------------------------------------------
# Exact arithmetic on v - c2*sqrt(v) - c1*v^(1/4)


def _iroot4(x):
    return isqrt(isqrt(x))


class RootSeparatedBound:
    """The exact real number (v - c2*v^(1/2) - c1*v^(1/4)) / denom for a
    positive integer v and nonnegative integers c2, c1.

    Signs, floors and comparisons against exact rationals are decided with
    integer arithmetic only: either the algebraic relation collapses (the
    candidate value is a root of the same quartic, detected by polynomial
    division) or adaptive integer bracketing of the fourth root separates
    the values.
    """

    def __init__(self, v, c2, c1, denom):
        if v <= 0 or c2 < 0 or c1 < 0 or denom <= 0:
            raise InputError("bound parameters out of range")
        self.v = v
        self.c2 = c2
        self.c1 = c1
        self.denom = denom

    # -- exact coincidence test -------------------------------------------------

    def _equals_target(self, w):
        """Whether c2*u^2 + c1*u == w exactly, for u = v^(1/4) and a
        rational w."""
        a, b, v = Fraction(self.c2), Fraction(self.c1), self.v
        if a == 0 and b == 0:
            return w == 0
        if w <= 0:
            return False  # the left side is strictly positive
        if a == 0:
            return (w / b) ** 4 == v
        if b == 0:
            return (w / a) ** 2 == v
        # divide X^4 - v by X^2 + (b/a)X - (w/a); u is a common root iff the
        # remainder vanishes at u
        p1 = b / a
        p0 = -(w / a)
        # X^4 - v mod (X^2 + p1 X + p0):
        # X^2 == -p1 X - p0
        # X^3 == (p1^2 - p0) X + p1 p0
        # X^4 == (-p1^3 + 2 p1 p0) X + (p0^2 - p1^2 p0)
        r1 = -(p1**3) + 2 * p1 * p0
        r0 = p0**2 - p1**2 * p0 - v
        if r1 == 0:
            if r0 != 0:
                return False
            # the quadratic divides X^4 - v; its positive root is u
            return True
        z = -r0 / r1
        return z > 0 and z**4 == self.v and a * z * z + b * z == w

    def compare(self, target):
        """Sign of (self - target) for an exact rational target."""
        target = Fraction(target)
        w = self.v - target * self.denom
        if self._equals_target(w):
            return 0
        shift = 8
        while True:
            scale = 1 << shift
            lo4 = _iroot4(self.v * scale**4)
            u_lo = Fraction(lo4, scale)
            u_hi = Fraction(lo4 + 1, scale)
            lhs_lo = self.c2 * u_lo * u_lo + self.c1 * u_lo
            lhs_hi = self.c2 * u_hi * u_hi + self.c1 * u_hi
            if lhs_hi < w:
                return 1
            if lhs_lo > w:
                return -1
            shift *= 2

    def sign(self):
        return self.compare(0)

    def floor(self):
        shift = 8
        while True:
            scale = 1 << shift
            lo4 = _iroot4(self.v * scale**4)
            u_lo = Fraction(lo4, scale)
            u_hi = Fraction(lo4 + 1, scale)
            val_hi = Fraction(self.v) - self.c2 * u_lo * u_lo - self.c1 * u_lo
            val_lo = Fraction(self.v) - self.c2 * u_hi * u_hi - self.c1 * u_hi
            f_lo = (val_lo / self.denom).__floor__()
            f_hi = (val_hi / self.denom).__floor__()
            if f_lo == f_hi:
                return f_lo
            if f_hi == f_lo + 1:
                c = self.compare(f_hi)
                if c >= 0:
                    return f_hi
                return f_lo
            shift *= 2

    def at_least(self, value):
        return self.compare(value) >= 0

    def describe(self):
        return {
            "v": self.v,
            "sqrt_coefficient": self.c2,
            "fourth_root_coefficient": self.c1,
            "denominator": self.denom,
            "sign": self.sign(),
            "floor": str(self.floor()),
        }


def place_count_lower_bound(q_const, l, g_top, g_base=0, const_ratio=1, ext_deg=1):
    """Lower bound for the number of places of degree l whose residue
    degree over the base field is one: the Weil-type count of all degree-l
    places minus the places sitting above small base places with residue
    degree above one.  Exact comparison object."""
    if l < 1:
        raise InputError("the place degree must be positive")
    v = q_const**l
    c2 = (2 + 7 * g_top) + l * l * const_ratio * ext_deg
    c1 = l * l * const_ratio * ext_deg * (2 + 7 * g_base)
    return RootSeparatedBound(v, c2, c1, l)


def weil_total_lower_bound(q_const, l, g_top):
    """Lower bound for the total number of degree-l places of a function
    field with full constant field of the given order."""
    if l < 1:
        raise InputError("the place degree must be positive")
    return RootSeparatedBound(q_const**l, 2 + 7 * g_top, 0, l)


# ---------------------------------------------------------------------------
# Admissible divisors


@dataclass(frozen=True)
class AdmissibleDivisor:
    """Ordered multiplicity-one places: pairwise distinct base places, each
    with residue degree one over its base place."""

    curve: CurveModel
    places: tuple

    def divisor(self):
        return Divisor(self.curve, {p: 1 for p in self.places})

    def degree(self):
        return sum(p.degree for p in self.places)

    def to_json(self):
        return self.divisor().to_json()

    @classmethod
    def from_json(cls, curve, rows):
        div = Divisor.from_json(curve, rows)
        places = tuple(sorted(div.support, key=lambda p: p.sort_key()))
        if any(div.support[p] != 1 for p in places):
            raise InputError("admissible divisors carry multiplicity one only")
        return cls(curve, places)


def admissible_check(curve, places):
    """(ok, report): validates the two admissibility conditions and names
    the first violation."""
    seen = {}
    for p in places:
        base_key = (p.kind, None if p.base is None else p.base.c)
        if base_key in seen:
            return False, (
                "condition (i) violated: %s and %s lie above the same base place"
                % (seen[base_key].text(), p.text())
            )
        seen[base_key] = p
    for p in places:
        if p.f_res != 1:
            return False, (
                "condition (ii) violated: %s has residue degree %d over its base place"
                % (p.text(), p.f_res)
            )
    return True, None


def _residue_one_place(curve, prime):
    """The degree-one-residue place above an unramified prime with the
    smallest branch root, or None."""
    candidates = []
    for place in curve.places_above(prime):
        if place.f_res == 1:
            psi = curve.branch_factor(place)
            root = -psi.coefficient(0)
            candidates.append((root.c, place))
    if not candidates:
        return None
    candidates.sort(key=lambda rc: rc[0])
    return candidates[0][1]


def _has_residue_one_branch(curve, prime):
    """Cheap m-th power test of f modulo the prime, without building the
    residue field."""
    fbar = curve.f % prime
    t = curve.base_field.order ** prime.degree - 1
    g = gcd(curve.m, t)
    if g == 1:
        return True
    h = fbar.powmod(t // g, prime)
    return h == Poly.one(curve.base_field)


def find_admissible_place(curve, l, log=None):
    """First admissible place of degree l: ramified places over degree-l
    factors of f in factor lex order, then monic irreducibles of degree l
    in lex order, returning the branch with the smallest residue root.
    Returns None when no prime of degree l works."""
    if l < 1:
        raise InputError("the place degree must be positive")
    ramified = 0
    for prime, _mult in factor(curve.f):
        if prime.degree == l:
            ramified += 1
            place = curve.places_above(prime)[0]
            if log is not None:
                log.append(
                    {"degree": l, "ramified_checked": ramified,
                     "primes_scanned": 0, "found": True}
                )
            return place
    scanned = 0
    for prime in irreducibles(curve.base_field, l):
        if (curve.f % prime).is_zero():
            continue
        scanned += 1
        if _has_residue_one_branch(curve, prime):
            place = _residue_one_place(curve, prime)
            if place is not None:
                if log is not None:
                    log.append(
                        {"degree": l, "ramified_checked": ramified,
                         "primes_scanned": scanned, "found": True}
                    )
                return place
    if log is not None:
        log.append(
            {"degree": l, "ramified_checked": ramified,
             "primes_scanned": scanned, "found": False}
        )
    return None


def _greedy_admissible(curve, target, log):
    """Accumulate residue-degree-one places over distinct base primes in
    (degree, lex) order until the divisor degree passes the target;
    infinite places are considered last."""
    picked = []
    total = 0
    hard_stop = 2 * target + 16
    for l in range(1, hard_stop + 1):
        for prime, _mult in factor(curve.f):
            if prime.degree == l:
                picked.append(curve.places_above(prime)[0])
                total += l
                if total >= target:
                    break
        if total >= target:
            break
        for prime in irreducibles(curve.base_field, l):
            if (curve.f % prime).is_zero():
                continue
            if _has_residue_one_branch(curve, prime):
                place = _residue_one_place(curve, prime)
                if place is not None:
                    picked.append(place)
                    total += l
                    if total >= target:
                        break
        if total >= target:
            break
    if total < target:
        for place in curve.infinite_places:
            if place.f_res == 1:
                picked.append(place)
                total += place.degree
                break
    log.append({"degree": 0, "greedy_places": len(picked),
                "greedy_degree": total, "found": total >= target})
    if total < target:
        raise SearchExhaustedError(
            "could not accumulate an admissible divisor of degree %d" % target,
            search_log=log,
        )
    return AdmissibleDivisor(curve, tuple(picked))


def castelnuovo_lower_bound(curve):
    """Exact rational lower bound g/(d(d-1)) + 1/d for the height of any
    generator; the rational base field contributes no genus term."""
    d = curve.ext_degree
    if d < 2:
        raise InputError("the lower bound is vacuous for trivial extensions")
    return Fraction(curve.genus, d * (d - 1)) + Fraction(1, d)


# ---------------------------------------------------------------------------
# Certificates


@dataclass
class GeneratorCertificate:
    alpha: FFElement
    admissible: AdmissibleDivisor
    height: Fraction
    upper_bound: Fraction
    lower_bound: Fraction
    minpoly_degree: int
    genus: int
    search_log: list
    strategy: str

    def to_json(self, curve):
        return {
            "schema": CERTIFICATE_SCHEMA,
            "input": {
                "q": curve.base_field.order,
                "m": curve.m,
                "f": str(curve.f),
            },
            "genus": self.genus,
            "ext_degree": curve.ext_degree,
            "d_inf": curve.d_inf,
            "alpha": str(self.alpha),
            "admissible_divisor": self.admissible.to_json(),
            "height": _frac_str(self.height),
            "upper_bound": _frac_str(self.upper_bound),
            "lower_bound": _frac_str(self.lower_bound),
            "minpoly_degree": self.minpoly_degree,
            "strategy": self.strategy,
            "search_log": self.search_log,
        }


def _frac_str(fr):
    return str(Fraction(fr))


def parse_prime_power(q):
    """Split a prime power into (p, k)."""
    if not isinstance(q, int) or q < 2:
        raise InputError("q must be a prime power >= 2, got %r" % (q,))
    if is_prime(q):
        return q, 1
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            qq = q
            while qq % p == 0:
                qq //= p
                k += 1
            if qq != 1:
                raise InputError("%d is not a prime power" % q)
            return p, k
        p += 1
    raise InputError("%d is not a prime power" % q)


def curve_from_input(q, m, f_text):
    p, k = parse_prime_power(q)
    base = field_make(p, k)
    f = parse_poly(base, f_text)
    return curve_new(base, m, f)


def certificate_from_json(doc):
    """Rebuild (curve, certificate) from a certificate document."""
    if doc.get("schema") != CERTIFICATE_SCHEMA:
        raise InputError("unknown certificate schema %r" % doc.get("schema"))
    inp = doc["input"]
    curve = curve_from_input(int(inp["q"]), int(inp["m"]), inp["f"])
    alpha = parse_ff(curve, doc["alpha"])
    adm = AdmissibleDivisor.from_json(curve, doc["admissible_divisor"])
    cert = GeneratorCertificate(
        alpha=alpha,
        admissible=adm,
        height=Fraction(doc["height"]),
        upper_bound=Fraction(doc["upper_bound"]),
        lower_bound=Fraction(doc["lower_bound"]),
        minpoly_degree=int(doc["minpoly_degree"]),
        genus=int(doc["genus"]),
        search_log=doc.get("search_log", []),
        strategy=doc.get("strategy", ""),
    )
    return curve, cert


def small_generator(curve, extra_degrees=DEFAULT_EXTRA_DEGREES):
    """Run the full pipeline and return a verified GeneratorCertificate.

    Ladder: one place of degree genus+1; failing that, single places of the
    next few degrees; failing that, a greedy multi-place admissible divisor.
    Either way the divisor degree exceeds the genus, so the Riemann-Roch
    space contains a nonconstant element, every nonconstant element of it
    generates K, and the winner is the one of minimal height (ties decided
    by echelon order)."""
    log = []
    target = curve.genus + 1
    strategy = "single-place"
    place = find_admissible_place(curve, target, log)
    if place is None:
        strategy = "single-place-extended"
        for l in range(target + 1, target + 1 + extra_degrees):
            place = find_admissible_place(curve, l, log)
            if place is not None:
                break
    if place is not None:
        adm = AdmissibleDivisor(curve, (place,))
    else:
        strategy = "greedy-multi-place"
        adm = _greedy_admissible(curve, target, log)
    bound = adm.divisor()
    space = rr_space(curve, bound)
    if space.dimension < 2:
        raise AssertionError(
            "Riemann-Roch guarantee failed: deg A = %d > g = %d but dim = %d"
            % (bound.degree(), curve.genus, space.dimension)
        )
    one = curve.one()
    best = None
    for idx, z in enumerate(space.basis):
        if z.is_constant():
            continue
        h = height(curve, (one, z))
        if best is None or (h, idx) < (best[0], best[1]):
            best = (h, idx, z)
    if best is None:
        raise AssertionError("no nonconstant element in a space of dimension >= 2")
    h, _idx, alpha = best
    minpoly_degree = len(curve.minimal_polynomial(alpha)) - 1
    cert = GeneratorCertificate(
        alpha=alpha,
        admissible=adm,
        height=h,
        upper_bound=Fraction(bound.degree(), curve.ext_degree),
        lower_bound=castelnuovo_lower_bound(curve),
        minpoly_degree=minpoly_degree,
        genus=curve.genus,
        search_log=log,
        strategy=strategy,
    )
    ok, report = verify_certificate(curve, cert)
    if not ok:
        raise AssertionError(
            "freshly produced certificate failed verification: %s"
            % json.dumps(report)
        )
    return cert


def verify_certificate(curve, cert):
    """Re-derive every certificate field independently.

    Returns (ok, itemized report).  Checks: admissibility of the divisor,
    membership of (1, alpha) in L(A), the minimal-polynomial degree, the
    exact height, and both bound values and comparisons."""
    report = []

    def item(name, passed, detail=""):
        report.append({"check": name, "pass": bool(passed), "detail": detail})
        return passed

    ok = True
    adm_ok, adm_report = admissible_check(curve, cert.admissible.places)
    ok &= item("admissible-divisor", adm_ok, adm_report or "")
    bound = cert.admissible.divisor()
    one = curve.one()
    member = tuple_in_space(curve, (one, cert.alpha), bound)
    ok &= item("membership", member,
               "(1, alpha) in L(A)" if member else "(1, alpha) not in L(A)")
    mp_deg = len(curve.minimal_polynomial(cert.alpha)) - 1
    ok &= item(
        "minpoly-degree",
        mp_deg == curve.m and cert.minpoly_degree == mp_deg,
        "degree %d, extension degree %d" % (mp_deg, curve.m),
    )
    h = height(curve, (one, cert.alpha))
    ok &= item("height", h == cert.height,
               "recomputed %s, certified %s" % (h, cert.height))
    upper = Fraction(bound.degree(), curve.ext_degree)
    ok &= item("upper-bound-value", upper == cert.upper_bound,
               "deg(A)/d = %s" % upper)
    ok &= item("upper-bound", h <= upper, "%s <= %s" % (h, upper))
    lower = castelnuovo_lower_bound(curve)
    ok &= item("lower-bound-value", lower == cert.lower_bound,
               "g/(d(d-1)) + 1/d = %s" % lower)
    ok &= item("lower-bound", lower <= h, "%s <= %s" % (lower, h))
    ok &= item("genus", cert.genus == curve.genus,
               "certified %d, model %d" % (cert.genus, curve.genus))
    return bool(ok), report
