"""Exact Riemann-Roch spaces L(A) and their dimensions.

The algorithm clears finite denominators with M(x) = prod p^t_p, spans the
integral candidates by monomials x^a y^b (0 <= b < m) bounded through the
largest infinite-place budget, and imposes vanishing conditions as
F_q-linear constraints: local expansion coefficients at finite places and
at infinite places whose budget is below the maximum, with residue-field
values scalar-restricted to the base field.  Conditions at totally ramified
places decouple per power of y into divisibility by powers of the base
prime, so no expansion is needed there.  The kernel is returned in reduced
echelon form with columns ordered by (b, a), which makes every basis
canonical and reproducible.
"""

from __future__ import annotations

from .curve import FFElement, ORD_INFINITY
from .divisor import Divisor, tuple_in_space
from .errors import InputError
from .gf import FieldElement, embed
from .poly import Poly, RationalFunction


class RRSpace:
    """A computed Riemann-Roch space: divisor, canonical basis, dimension."""

    __slots__ = ("curve", "divisor", "basis")

    def __init__(self, curve, divisor, basis):
        self.curve = curve
        self.divisor = divisor
        self.basis = basis

    @property
    def dimension(self):
        return len(self.basis)

    def __repr__(self):
        return "RRSpace(dim=%d over %s)" % (self.dimension, self.curve.label())


def _clearing_data(curve, divisor):
    """Per-prime clearing exponents, the clearing polynomial, and the
    infinite budgets."""
    primes = {}
    for place, coeff in divisor.support.items():
        if place.kind == "finite":
            primes.setdefault(place.base.c, place.base)
    t_exponents = {}
    clearing = Poly.one(curve.base_field)
    for key, prime in sorted(primes.items()):
        t_p = 0
        for place in curve.places_above(prime):
            c = divisor.coefficient(place)
            t_p = max(t_p, -(-c // place.e))
        t_p = max(0, t_p)
        t_exponents[key] = (prime, t_p)
        clearing = clearing * prime**t_p
    deg_m = clearing.degree
    mp = curve.m // curve.d_inf
    budgets = {
        v: divisor.coefficient(v) + mp * deg_m for v in curve.infinite_places
    }
    return t_exponents, clearing, budgets


def _ambient_monomials(curve, budget_max):
    mp = curve.m // curve.d_inf
    np_ = curve.n // curve.d_inf
    pairs = []
    for b in range(curve.m):
        top = (budget_max - b * np_) // mp if budget_max >= b * np_ else -1
        for a in range(top + 1):
            pairs.append((b, a))
    return pairs


def _assemble(curve, divisor):
    """(ambient pairs, constraint rows over F_q, clearing polynomial)."""
    t_exponents, clearing, budgets = _clearing_data(curve, divisor)
    budget_max = max(budgets.values())
    if budget_max < 0:
        return [], [], clearing
    pairs = _ambient_monomials(curve, budget_max)
    base = curve.base_field
    one_raw = base.raw_one()
    rows = []

    # infinite places with a budget below the maximum
    for place, budget in sorted(budgets.items(), key=lambda kv: kv[0].branch):
        if budget >= budget_max:
            continue
        local = curve._local(place)
        restrict = _restriction(base, place.residue_field)
        gprec = budget_max + curve.n + 2
        for expo in range(-budget_max, -budget):
            row_big = [
                local.coeff_of([(a, b, one_raw)], expo, gprec) for (b, a) in pairs
            ]
            rows.extend(_restrict_row(restrict, row_big))

    # finite places above the clearing primes
    for _key, (prime, t_p) in sorted(t_exponents.items()):
        for place in curve.places_above(prime):
            need = place.e * t_p - divisor.coefficient(place)
            if need <= 0:
                continue
            if place.e > 1:
                rows.extend(_ramified_rows(curve, pairs, prime, place, need))
            else:
                rows.extend(_unramified_rows(curve, pairs, place, need))
    return pairs, rows, clearing


def _ramified_rows(curve, pairs, prime, place, need):
    """Divisibility of the y^b coefficient by prime^ceil((need-b)/m),
    expressed on x-power columns."""
    base = curve.base_field
    rows = []
    for b in range(curve.m):
        r_b = -(-(need - b) // curve.m)
        if r_b <= 0:
            continue
        modulus = prime**r_b
        dm = modulus.degree
        rem_cols = {}
        for (bb, a) in pairs:
            if bb != b:
                rem_cols[(bb, a)] = None
                continue
            rem = Poly(base, [0] * a + [1]) % modulus
            rem_cols[(bb, a)] = rem
        for i in range(dm):
            row = []
            for pair in pairs:
                rem = rem_cols[pair]
                if rem is None or i > rem.degree:
                    row.append(base.raw_zero())
                else:
                    row.append(rem.c[i])
            rows.append(row)
    return rows


def _unramified_rows(curve, pairs, place, need):
    """Taylor coefficients tau^0..tau^(need-1) of each monomial at the
    place, scalar-restricted to the base field."""
    base = curve.base_field
    big = place.residue_field
    local = curve._local(place)
    restrict = _restriction(base, big)
    from . import series

    ys = local.y_series(need)
    max_b = max(b for (b, _a) in pairs)
    ypows = [series.fit(big, [big.raw_one()], need)]
    for _ in range(max_b):
        ypows.append(series.mul(big, ypows[-1], ys, need))
    max_a = max(a for (_b, a) in pairs)
    xpows = [series.fit(big, [big.raw_one()], need)]
    xs = series.fit(big, [local.x0.c, big.raw_one()], need)
    for _ in range(max_a):
        xpows.append(series.mul(big, xpows[-1], xs, need))
    columns = [series.mul(big, xpows[a], ypows[b], need) for (b, a) in pairs]
    rows = []
    for i in range(need):
        row_big = [col[i] for col in columns]
        rows.extend(_restrict_row(restrict, row_big))
    return rows


def _restrict_row(restrict, row_big):
    if restrict is None:
        return [row_big]
    pieces = [restrict(v) for v in row_big]
    t = len(pieces[0])
    return [[piece[j] for piece in pieces] for j in range(t)]


_RESTRICTION_CACHE = {}


def _restriction(base, big):
    """Decomposition of the big field over the embedded base field in the
    basis of powers of the big field's generator; None when trivial."""
    if big is base:
        return None
    key = ((base.p, base.k), (big.p, big.k))
    got = _RESTRICTION_CACHE.get(key)
    if got is not None:
        return got
    t = big.k // base.k
    kk = big.k
    cols = []
    ugen = big.generator()
    upow = big.one()
    for j in range(t):
        for i in range(base.k):
            e_i = base.element([0] * i + [1])
            cols.append((embed(e_i, big) * upow).c)
        upow = upow * ugen
    inverse = _invert_fp_matrix(big.p, cols, kk)

    def restrict(value_raw):
        coords = [0] * kk
        for j in range(kk):
            row = inverse[j]
            coords[j] = sum(row[i] * value_raw[i] for i in range(kk)) % big.p
        return [tuple(coords[j * base.k : (j + 1) * base.k]) for j in range(t)]

    _RESTRICTION_CACHE[key] = restrict
    return restrict


def _invert_fp_matrix(p, cols, n):
    mat = [[cols[j][i] % p for j in range(n)] + [1 if i == j else 0 for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col] % p)
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = pow(mat[col][col], p - 2, p)
        mat[col] = [v * inv % p for v in mat[col]]
        for r in range(n):
            if r != col and mat[r][col]:
                c = mat[r][col]
                mat[r] = [(v - c * w) % p for v, w in zip(mat[r], mat[col])]
    return [row[n:] for row in mat]


def _rref(field, rows, ncols):
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if any(rows[i][col]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.raw_inv(rows[r][col])
        rows[r] = [field.raw_mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and any(rows[i][col]):
                c = rows[i][col]
                rows[i] = [
                    field.raw_sub(v, field.raw_mul(c, w))
                    for v, w in zip(rows[i], rows[r])
                ]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _kernel_basis(field, rows, ncols):
    reduced, pivots = _rref(field, [list(r) for r in rows], ncols)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for fc in free:
        vec = [field.raw_zero()] * ncols
        vec[fc] = field.raw_one()
        for ri, pc in enumerate(pivots):
            val = reduced[ri][fc]
            if any(val):
                vec[pc] = field.raw_neg(val)
        basis.append(vec)
    return basis


def rr_space(curve, divisor):
    """The space L(divisor) with its canonical basis."""
    if not isinstance(divisor, Divisor) or divisor.curve is not curve:
        raise InputError("divisor does not belong to this curve")
    pairs, rows, clearing = _assemble(curve, divisor)
    base = curve.base_field
    if not pairs:
        return RRSpace(curve, divisor, [])
    vectors = _kernel_basis(base, rows, len(pairs))
    basis = []
    for vec in vectors:
        coeffs = [[] for _ in range(curve.m)]
        for (b, a), co in zip(pairs, vec):
            while len(coeffs[b]) <= a:
                coeffs[b].append(base.raw_zero())
            coeffs[b][a] = co
        coords = tuple(
            RationalFunction(Poly(base, cb), clearing) for cb in coeffs
        )
        basis.append(FFElement(curve, coords))
    return RRSpace(curve, divisor, basis)


def rr_dim(curve, divisor):
    """Dimension of L(divisor), skipping basis extraction."""
    if not isinstance(divisor, Divisor) or divisor.curve is not curve:
        raise InputError("divisor does not belong to this curve")
    pairs, rows, _clearing = _assemble(curve, divisor)
    if not pairs:
        return 0
    _reduced, pivots = _rref(curve.base_field, rows, len(pairs))
    return len(pairs) - len(pivots)


def rr_contains(curve, z, divisor):
    """Membership test (z) + divisor >= 0; accepts a single element or a
    coordinate tuple (the zero element belongs to every space)."""
    if isinstance(z, FFElement):
        z = (z,)
    return tuple_in_space(curve, z, divisor)
