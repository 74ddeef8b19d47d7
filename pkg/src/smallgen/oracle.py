"""Independent brute-force oracles validating the kernel on tiny instances.

Three oracles: exhaustive place counts through affine point counting,
exhaustive Riemann-Roch dimensions through membership enumeration (or an
independently assembled naive rank), and exhaustive minimal-generator
search over a provably sufficient coefficient envelope.

The oracles deliberately avoid the kernel's decomposition and elimination
code paths: place counts use nothing but field arithmetic and Moebius-style
peeling, and finite-place valuations are recomputed here with a direct
term-by-term lift.  Expansions at infinite places and the scalar-restriction
glue are shared low-level primitives.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .curve import FFElement
from .errors import EnumerationCapError, InputError
from .gf import field_make
from .poly import Poly, RationalFunction, factor

ENUM_CAP = 10**7
AMBIENT_CAP = 10**4
MEMBER_ENUM_CAP = 10**5


@dataclass
class OracleReport:
    """Outcome of one oracle-versus-kernel comparison."""

    instance: str
    oracle_value: object
    kernel_value: object
    match: bool
    enumeration_size: int
    elapsed_seconds: float

    def to_json(self):
        return {
            "instance": self.instance,
            "oracle_value": _jsonable(self.oracle_value),
            "kernel_value": _jsonable(self.kernel_value),
            "match": self.match,
            "enumeration_size": self.enumeration_size,
            "elapsed_seconds": round(self.elapsed_seconds, 6),
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, FFElement):
        return str(v)
    return v


# ---------------------------------------------------------------------------
# Exhaustive place counting


def _mth_root_count(field, u_raw, m):
    """Number of solutions of t^m = u in the field."""
    if not any(u_raw):
        return 1
    t = field.order - 1
    g = math.gcd(m, t)
    if g == 1:
        return 1
    probe = field.raw_pow(u_raw, t // g)
    return g if probe == field.raw_one() else 0


def _horner(field, raw_coeffs, x_raw):
    acc = field.raw_zero()
    for co in reversed(raw_coeffs):
        acc = field.raw_mul(acc, x_raw)
        acc = field.raw_add(acc, co)
    return acc


def count_places_exhaustive(curve, l):
    """(total places of degree l, those with residue degree one), counted
    through affine points over F_{q^j} for j | l and exact peeling; no place
    decomposition code involved."""
    if l < 1:
        raise InputError("place degree must be positive")
    base = curve.base_field
    q = base.order
    if q**l > ENUM_CAP:
        raise EnumerationCapError(
            "q^l = %d^%d exceeds the enumeration cap %d" % (q, l, ENUM_CAP)
        )
    divisors = [j for j in range(1, l + 1) if l % j == 0]
    finite_counts = {}
    infinite_counts = {}
    lc = curve.f.leading()
    for j in divisors:
        Fj = field_make(base.p, base.k * j)
        f_raw = curve.f.raw_coeffs_in(Fj)
        points = 0
        for x0 in Fj.elements():
            u = _horner(Fj, f_raw, x0.c)
            points += _mth_root_count(Fj, u, curve.m)
        acc = sum(i * finite_counts[i] for i in divisors if i < j and j % i == 0)
        assert (points - acc) % j == 0, "point-count peeling failed"
        finite_counts[j] = (points - acc) // j
        # infinite places: solutions of w^d = lc(f)
        from .gf import embed

        lc_j = embed(lc, Fj)
        wsols = _mth_root_count(Fj, lc_j.c, curve.d_inf)
        acc = sum(i * infinite_counts[i] for i in divisors if i < j and j % i == 0)
        assert (wsols - acc) % j == 0
        infinite_counts[j] = (wsols - acc) // j
    total = finite_counts[l] + infinite_counts[l]

    # residue-degree-one places of degree l: points whose x-coordinate has
    # degree exactly l, plus the degree-one infinite places when l = 1
    Fl = field_make(base.p, base.k * l)
    f_raw = curve.f.raw_coeffs_in(Fl)
    prime_divisors = sorted({r for r in range(2, l + 1) if l % r == 0 and _isprime(r)})
    pairs = 0
    for x0 in Fl.elements():
        if _subfield_degree_below(Fl, x0.c, q, l, prime_divisors):
            continue
        u = _horner(Fl, f_raw, x0.c)
        pairs += _mth_root_count(Fl, u, curve.m)
    assert pairs % l == 0
    fres1 = pairs // l
    if l == 1:
        fres1 += infinite_counts[1]
    return total, fres1


def _isprime(r):
    return r >= 2 and all(r % d for d in range(2, int(r**0.5) + 1))


def _subfield_degree_below(field, x_raw, q, l, prime_divisors):
    for r in prime_divisors:
        probe = x_raw
        for _ in range(l // r):
            probe = field.raw_pow(probe, q)
        if probe == x_raw:
            return True
    return False


def kernel_place_counts(curve, l):
    """The same two counts read off the kernel's place decomposition, for
    comparison against the exhaustive tally."""
    from .poly import irreducibles

    total = 0
    fres1 = 0
    for d in range(1, l + 1):
        if l % d:
            continue
        t_needed = l // d
        for prime in irreducibles(curve.base_field, d):
            for place in curve.places_above(prime):
                if place.f_res == t_needed:
                    total += 1
                    if t_needed == 1 and place.f_res == 1:
                        fres1 += 1
    for place in curve.infinite_places:
        if place.degree == l:
            total += 1
            if l == 1 and place.f_res == 1:
                fres1 += 1
    return total, fres1


# ---------------------------------------------------------------------------
# Independent valuations at finite places (term-by-term lift)


class _OwnFiniteData:
    def __init__(self, curve, place):
        from .gf import embed
        from .poly import roots_in

        big = place.residue_field
        R, xbar, _fbar = curve._prime_data(place.base)
        psi = curve.branch_factor(place)
        self.big = big
        self.x0 = embed(xbar, big).c
        self.y0 = roots_in(psi, big)[0].c
        self.f_raw = curve.f.raw_coeffs_in(big)
        self.m = curve.m
        self._y = None

    def _shift(self, raw_coeffs, prec):
        big = self.big
        out = [big.raw_zero()] * prec
        for co in reversed(raw_coeffs):
            carry = big.raw_zero()
            for i in range(prec):
                cur = out[i]
                out[i] = big.raw_add(big.raw_mul(cur, self.x0), carry)
                carry = cur
            out[0] = big.raw_add(out[0], co)
        return out

    def y_series(self, prec):
        if self._y is not None and len(self._y) >= prec:
            return self._y[:prec]
        big = self.big
        fs = self._shift(self.f_raw, prec)
        y = [self.y0]
        lead_inv = big.raw_inv(
            big.raw_mul(big.raw_from_int(self.m), big.raw_pow(self.y0, self.m - 1))
        )
        for t in range(1, prec):
            padded = y + [big.raw_zero()]
            ym = self._power_coeffs(padded, self.m, t + 1)
            rhs = big.raw_sub(fs[t], ym[t])
            y.append(big.raw_mul(lead_inv, rhs))
        self._y = y
        return y

    def _power_coeffs(self, seq, e, prec):
        big = self.big
        out = [big.raw_one()] + [big.raw_zero()] * (prec - 1)
        for _ in range(e):
            new = [big.raw_zero()] * prec
            for i, a in enumerate(out):
                if not any(a):
                    continue
                for j, b in enumerate(seq):
                    if i + j >= prec:
                        break
                    if any(b):
                        new[i + j] = big.raw_add(new[i + j], big.raw_mul(a, b))
            out = new
        return out

    def ord_integral(self, coeffs, cap):
        big = self.big
        # residue probe
        acc = big.raw_zero()
        ypow = big.raw_one()
        for b, cb in enumerate(coeffs):
            if b:
                ypow = big.raw_mul(ypow, self.y0)
            if not cb.is_zero():
                acc = big.raw_add(acc, big.raw_mul(_horner(big, cb.raw_coeffs_in(big), self.x0), ypow))
        if any(acc):
            return 0
        prec = 4
        while True:
            ys = self.y_series(prec)
            total = [big.raw_zero()] * prec
            ypows = [big.raw_one()] + [big.raw_zero()] * (prec - 1)
            ypows = [ypows]
            for _ in range(len(coeffs) - 1):
                prev = ypows[-1]
                nxt = [big.raw_zero()] * prec
                for i, a in enumerate(prev):
                    if not any(a):
                        continue
                    for j, b in enumerate(ys):
                        if i + j >= prec:
                            break
                        nxt[i + j] = big.raw_add(nxt[i + j], big.raw_mul(a, b))
                ypows.append(nxt)
            for b, cb in enumerate(coeffs):
                if cb.is_zero():
                    continue
                cs = self._shift(cb.raw_coeffs_in(big), prec)
                for i, a in enumerate(cs):
                    if not any(a):
                        continue
                    for j, yb in enumerate(ypows[b]):
                        if i + j >= prec:
                            break
                        if any(yb):
                            total[i + j] = big.raw_add(total[i + j], big.raw_mul(a, yb))
            for i, co in enumerate(total):
                if any(co):
                    return i
            if prec > cap:
                raise AssertionError("oracle expansion exceeded its cap")
            prec *= 2


_OWN_CACHE = {}


def _own_ord_integral(curve, coeffs, place, cap):
    """Valuation of sum(coeffs[b] y^b) with the oracle's own finite-place
    machinery; infinite places fall back to the curve primitive."""
    if place.kind == "infinite":
        return curve._ord_integral(coeffs, place)
    if place.e > 1:
        best = None
        for b, cb in enumerate(coeffs):
            if cb.is_zero():
                continue
            mult = 0
            poly = cb
            while True:
                quo, rem = divmod(poly, place.base)
                if not rem.is_zero():
                    break
                poly = quo
                mult += 1
            v = curve.m * mult + b
            if best is None or v < best:
                best = v
        return best
    key = (id(curve), place._key)
    data = _OWN_CACHE.get(key)
    if data is None:
        data = _OwnFiniteData(curve, place)
        _OWN_CACHE[key] = data
    return data.ord_integral(coeffs, cap)


# ---------------------------------------------------------------------------
# Exhaustive Riemann-Roch dimension


def _own_clearing(curve, divisor):
    primes = {}
    for place in divisor.support:
        if place.kind == "finite":
            primes[place.base.c] = place.base
    t_exp = {}
    clearing = Poly.one(curve.base_field)
    for key in sorted(primes):
        prime = primes[key]
        ram = (curve.f % prime).is_zero()
        e = curve.m if ram else 1
        t_p = max(0, max(
            -(-divisor.coefficient(pl) // e) for pl in curve.places_above(prime)
        ))
        t_exp[key] = (prime, t_p)
        clearing = clearing * prime**t_p
    mp = curve.m // curve.d_inf
    budgets = {
        v: divisor.coefficient(v) + mp * clearing.degree
        for v in curve.infinite_places
    }
    return t_exp, clearing, budgets


def rr_dim_exhaustive(curve, divisor):
    """Dimension of L(divisor) by brute force: either full membership
    enumeration of the ambient coefficient space, or an independently
    assembled constraint matrix reduced by a textbook rank routine."""
    base = curve.base_field
    q = base.order
    t_exp, clearing, budgets = _own_clearing(curve, divisor)
    budget_max = max(budgets.values())
    if budget_max < 0:
        return 0
    mp = curve.m // curve.d_inf
    np_ = curve.n // curve.d_inf
    pairs = []
    for b in range(curve.m):
        if budget_max < b * np_:
            continue
        for a in range((budget_max - b * np_) // mp + 1):
            pairs.append((b, a))
    if len(pairs) > AMBIENT_CAP:
        raise EnumerationCapError(
            "ambient dimension %d exceeds the cap %d" % (len(pairs), AMBIENT_CAP)
        )
    conditions = []  # (place, minimum valuation of the cleared numerator)
    for _key, (prime, t_p) in sorted(t_exp.items()):
        for place in curve.places_above(prime):
            need = place.e * t_p - divisor.coefficient(place)
            if need > 0:
                conditions.append((place, need))
    for place, budget in sorted(budgets.items(), key=lambda kv: kv[0].branch):
        if budget < budget_max:
            conditions.append((place, -budget))
    cap = curve.m * (1 + curve.n + max(budget_max // mp, 1))

    if q ** len(pairs) <= MEMBER_ENUM_CAP:
        count = 0
        for vec in _vectors(base, len(pairs)):
            coeffs = _vec_to_coeffs(curve, pairs, vec)
            if all(co.is_zero() for co in coeffs):
                count += 1
                continue
            if _member(curve, coeffs, conditions, cap):
                count += 1
        dim = round(math.log(count, q))
        assert q**dim == count, "member count is not a power of the field order"
        return dim

    # naive rank over an independently assembled matrix
    rows = []
    from .rr import _restriction

    for place, minimum in conditions:
        if place.kind == "infinite":
            local = curve._local(place)
            restrict = _restriction(base, place.residue_field)
            gprec = budget_max + curve.n + 2
            for expo in range(-budget_max, minimum):
                row_big = [
                    local.coeff_of([(a, b, base.raw_one())], expo, gprec)
                    for (b, a) in pairs
                ]
                rows.extend(_expand_restricted(restrict, row_big))
        elif place.e > 1:
            for b in range(curve.m):
                r_b = -(-(minimum - b) // curve.m)
                if r_b <= 0:
                    continue
                modulus = place.base**r_b
                for i in range(modulus.degree):
                    row = []
                    for (bb, a) in pairs:
                        if bb != b:
                            row.append(base.raw_zero())
                        else:
                            rem = Poly(base, [0] * a + [1]) % modulus
                            row.append(rem.c[i] if i <= rem.degree else base.raw_zero())
                    rows.append(row)
        else:
            data_key = (id(curve), place._key)
            data = _OWN_CACHE.get(data_key)
            if data is None:
                data = _OwnFiniteData(curve, place)
                _OWN_CACHE[data_key] = data
            restrict = _restriction(base, place.residue_field)
            big = data.big
            prec = minimum
            ys = data.y_series(prec)
            for i in range(prec):
                row_big = [
                    _mono_coeff(data, a, b, i, prec, ys) for (b, a) in pairs
                ]
                rows.extend(_expand_restricted(restrict, row_big))
    rank = _naive_rank(base, rows, len(pairs))
    return len(pairs) - rank


def _mono_coeff(data, a, b, index, prec, ys):
    big = data.big
    xs = [data.x0, big.raw_one()]
    cur = [big.raw_one()]
    for _ in range(a):
        nxt = [big.raw_zero()] * min(prec, len(cur) + 1)
        for i, co in enumerate(cur):
            if i < len(nxt):
                nxt[i] = big.raw_add(nxt[i], big.raw_mul(co, xs[0]))
            if i + 1 < len(nxt):
                nxt[i + 1] = big.raw_add(nxt[i + 1], co)
        cur = nxt
    for _ in range(b):
        nxt = [big.raw_zero()] * prec
        for i, co in enumerate(cur):
            if not any(co):
                continue
            for j, yb in enumerate(ys):
                if i + j >= prec:
                    break
                nxt[i + j] = big.raw_add(nxt[i + j], big.raw_mul(co, yb))
        cur = nxt
    return cur[index] if index < len(cur) else big.raw_zero()


def _expand_restricted(restrict, row_big):
    if restrict is None:
        return [row_big]
    pieces = [restrict(v) for v in row_big]
    t = len(pieces[0])
    return [[piece[j] for piece in pieces] for j in range(t)]


def _vectors(field, length):
    import itertools

    elems = [e.c for e in field.elements()]
    return itertools.product(elems, repeat=length)


def _vec_to_coeffs(curve, pairs, vec):
    base = curve.base_field
    per_b = [[] for _ in range(curve.m)]
    for (b, a), co in zip(pairs, vec):
        while len(per_b[b]) <= a:
            per_b[b].append(base.raw_zero())
        per_b[b][a] = co
    return [Poly(base, cb) for cb in per_b]


def _member(curve, coeffs, conditions, cap):
    for place, minimum in conditions:
        if _own_ord_integral(curve, coeffs, place, cap) < minimum:
            return False
    return True


def _naive_rank(field, rows, ncols):
    rank = 0
    rows = [list(r) for r in rows]
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if any(rows[i][col]):
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = field.raw_inv(rows[rank][col])
        rows[rank] = [field.raw_mul(inv, v) for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and any(rows[i][col]):
                c = rows[i][col]
                rows[i] = [
                    field.raw_sub(v, field.raw_mul(c, w))
                    for v, w in zip(rows[i], rows[rank])
                ]
        rank += 1
        if rank == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# Exhaustive minimal-generator search


def min_generator_exhaustive(curve, height_cap):
    """Exact minimum height among generators with height at most the cap,
    with a canonical witness; (None, None, size) when no generator fits.

    Coefficient envelope: a generator of height at most H has pole degree
    at most P = floor(H*d); its reduced denominator degree is bounded by P,
    and the numerator degrees by deg(e) + (P - i*n)/m (conjugate-averaging
    supplies the extra P/m margin needed when gcd(m, n) > 1).
    """
    cap = Fraction(height_cap)
    base = curve.base_field
    q = base.order
    m, n = curve.m, curve.n
    P = math.floor(cap * curve.ext_degree)
    if P < 0:
        return None, None, 0
    slack = P * (m - 1) if curve.d_inf > 1 else 0
    num_bound = [
        (P + slack - i * n) // m for i in range(m)
    ]
    size = 0
    for de in range(P + 1):
        block = q**de
        for i in range(m):
            bb = de + num_bound[i]
            block *= q ** (bb + 1) if bb >= 0 else 1
        size += block
    if size > ENUM_CAP:
        raise EnumerationCapError(
            "minimal-generator envelope of size %d exceeds the cap %d" % (size, ENUM_CAP)
        )
    m_prime = _isprime(m)
    best_h = None
    best_key = None
    best_witness = None
    enumerated = 0
    for de in range(P + 1):
        for e in _monics(base, de):
            ctx = _DenContext(curve, e)
            bounds = [de + num_bound[i] for i in range(m)]
            for numerators in _numerator_tuples(base, bounds):
                enumerated += 1
                if all(p.is_zero() for p in numerators):
                    continue
                if m_prime:
                    if all(numerators[i].is_zero() for i in range(1, m)):
                        continue
                pole = ctx.pole_degree(numerators, P)
                if pole is None or pole > P:
                    continue
                h = Fraction(pole, curve.ext_degree)
                if h > cap:
                    continue
                alpha = curve.element(
                    [RationalFunction(c, e) for c in numerators]
                )
                if not m_prime and not curve.is_generator(alpha):
                    continue
                key = alpha.sort_key()
                if (
                    best_h is None
                    or h < best_h
                    or (h == best_h and key < best_key)
                ):
                    best_h, best_key, best_witness = h, key, alpha
    return best_h, best_witness, enumerated


def _monics(field, degree):
    import itertools

    elems = [e.c for e in field.elements()]
    one = field.raw_one()
    for low in itertools.product(elems, repeat=degree):
        yield Poly(field, list(low) + [one])


def _numerator_tuples(field, bounds):
    import itertools

    elems = [e.c for e in field.elements()]
    pools = []
    for bb in bounds:
        if bb < 0:
            pools.append([Poly.zero(field)])
        else:
            pools.append(
                [Poly(field, co) for co in itertools.product(elems, repeat=bb + 1)]
            )
    return itertools.product(*pools)


class _DenContext:
    """Cached pole bookkeeping for one denominator polynomial."""

    def __init__(self, curve, e):
        from .gf import embed

        self.curve = curve
        self.e = e
        self.places = []  # (place, j, x0pows, y0, emb)
        if e.degree > 0:
            for prime, j in factor(e):
                for place in curve.places_above(prime):
                    if place.e > 1:
                        self.places.append((place, j, None, None, None))
                        continue
                    big = place.residue_field
                    R, xbar, _ = curve._prime_data(prime)
                    psi = curve.branch_factor(place)
                    from .poly import roots_in

                    x0 = embed(xbar, big).c
                    y0 = roots_in(psi, big)[0].c
                    emb = {el.c: embed(el, big).c for el in curve.base_field.elements()}
                    maxpow = 64
                    x0pows = [big.raw_one()]
                    for _n in range(maxpow):
                        x0pows.append(big.raw_mul(x0pows[-1], x0))
                    self.places.append((place, j, x0pows, y0, emb))

    def pole_degree(self, numerators, limit):
        """Total pole degree of sum(numerators[i] y^i) / e, or None when it
        certainly exceeds the limit."""
        curve = self.curve
        m = curve.m
        de = self.e.degree
        pole = 0
        if curve.d_inf == 1:
            worst = None
            for i, c in enumerate(numerators):
                if c.is_zero():
                    continue
                val = m * (c.degree - de) + i * curve.n
                if worst is None or val > worst:
                    worst = val
            pole += max(0, worst)
            if pole > limit:
                return None
        else:
            alpha = curve.element(
                [RationalFunction(c, self.e) for c in numerators]
            )
            for place in curve.infinite_places:
                v = curve.ord(alpha, place)
                if v < 0:
                    pole += -v * place.degree
            if pole > limit:
                return None
        for place, j, x0pows, y0, emb in self.places:
            if place.e > 1:
                vw = _own_ord_integral(curve, list(numerators), place,
                                       m * (1 + curve.n + max(c.degree for c in numerators if not c.is_zero())))
                v = vw - m * j
            else:
                big = place.residue_field
                acc = big.raw_zero()
                ypow = big.raw_one()
                nonzero = False
                for b, cb in enumerate(numerators):
                    if b:
                        ypow = big.raw_mul(ypow, y0)
                    if cb.is_zero():
                        continue
                    nonzero = True
                    ceval = big.raw_zero()
                    for idx, co in enumerate(cb.c):
                        if any(co):
                            ceval = big.raw_add(ceval, big.raw_mul(emb[co], x0pows[idx]))
                    acc = big.raw_add(acc, big.raw_mul(ceval, ypow))
                if any(acc):
                    vw = 0
                elif not nonzero:
                    vw = None
                else:
                    maxdeg = max(c.degree for c in numerators if not c.is_zero())
                    vw = _own_ord_integral(
                        curve, list(numerators), place,
                        m * (1 + curve.n + maxdeg),
                    )
                v = (vw - j) if vw is not None else None
            if v is not None and v < 0:
                pole += -v * place.degree
                if pole > limit:
                    return None
        return pole


# ---------------------------------------------------------------------------
# Comparison wrappers


def compare_place_counts(curve, l):
    start = time.perf_counter()
    oracle_val = count_places_exhaustive(curve, l)
    kernel_val = kernel_place_counts(curve, l)
    return OracleReport(
        instance="places degree %d on %s" % (l, curve.label()),
        oracle_value=oracle_val,
        kernel_value=kernel_val,
        match=oracle_val == kernel_val,
        enumeration_size=curve.base_field.order**l,
        elapsed_seconds=time.perf_counter() - start,
    )


def compare_rr_dim(curve, divisor):
    from .rr import rr_dim

    start = time.perf_counter()
    oracle_val = rr_dim_exhaustive(curve, divisor)
    kernel_val = rr_dim(curve, divisor)
    return OracleReport(
        instance="rr dimension of %r on %s" % (divisor, curve.label()),
        oracle_value=oracle_val,
        kernel_value=kernel_val,
        match=oracle_val == kernel_val,
        enumeration_size=0,
        elapsed_seconds=time.perf_counter() - start,
    )


def compare_min_generator(curve, height_cap, certificate_height):
    start = time.perf_counter()
    best, witness, size = min_generator_exhaustive(curve, height_cap)
    cap = Fraction(height_cap)
    if best is None:
        match = cap < certificate_height
    else:
        from .pipeline import castelnuovo_lower_bound

        match = castelnuovo_lower_bound(curve) <= best <= certificate_height
    return OracleReport(
        instance="minimal generator under %s on %s" % (cap, curve.label()),
        oracle_value=(best, witness),
        kernel_value=certificate_height,
        match=match,
        enumeration_size=size,
        elapsed_seconds=time.perf_counter() - start,
    )
