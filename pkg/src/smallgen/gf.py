"""Finite fields F_{p^k} with a deterministic, reproducible structure.

The defining modulus of F_{p^k} is the lexicographically smallest monic
irreducible polynomial of degree k over F_p, comparing coefficient tuples
(c_0, ..., c_{k-1}) elementwise as integers with c_0 most significant.  The
same tuple comparison is the canonical order on field elements, and every
deterministic tie-break downstream (smallest root, factor order, branch
labels) reduces to it.

Fields are cached per (p, k) and immutable after construction; all element
operations are pure, so instances can be shared across concurrent workers.
Elements are stored as dense coefficient tuples.  No discrete-log or
Montgomery tables are kept; that is a documented performance extension
point, unnecessary at the scale this package targets.
"""

from __future__ import annotations

import itertools

from .errors import InputError

#: Hard caps for field construction.  Everything downstream assumes desk
#: scale; these keep accidental huge inputs from hanging the process.
FIELD_DEGREE_CAP = 16
FIELD_ORDER_CAP = 2**40

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin; exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# Dense polynomials over F_p as plain int lists, low degree first.  Only the
# modulus search needs these; everything richer lives in the poly module.


def _pp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        off = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[off + i] = (a[off + i] - c * mc) % p
        _pp_trim(a)
    return a


def _pp_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _pp_mod(out, m, p)


def _pp_powmod(a, e, m, p):
    result = [1]
    base = _pp_mod(a, m, p)
    while e:
        if e & 1:
            result = _pp_mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = _pp_mulmod(base, base, m, p)
    return result


def _pp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a = _pp_mod(a, b, p)
        a, b = b, a
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def _pp_is_irreducible(f, p):
    """Rabin irreducibility test for a monic f over F_p (degree >= 1)."""
    d = len(f) - 1
    if d == 1:
        return True
    x = [0, 1]
    # x^(p^d) == x mod f
    xq = _pp_powmod(x, p**d, f, p)
    if _pp_trim([(a - b) % p for a, b in itertools.zip_longest(xq, x, fillvalue=0)]):
        return False
    # no root of x^(p^(d/r)) - x for prime r | d
    r = 2
    dd = d
    checked = set()
    while dd > 1:
        while dd % r:
            r += 1
        if r not in checked:
            checked.add(r)
            xe = _pp_powmod(x, p ** (d // r), f, p)
            diff = _pp_trim(
                [(a - b) % p for a, b in itertools.zip_longest(xe, x, fillvalue=0)]
            )
            g = _pp_gcd(f, diff, p) if diff else list(f)
            if len(g) != 1:
                return False
        dd //= r
    return True


def _lex_min_irreducible(p, k):
    """First monic irreducible of degree k over F_p in coefficient-tuple
    lex order (c_0 most significant)."""
    if k == 1:
        return (0, 1)  # the polynomial x
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if f[0] == 0:
            continue  # divisible by x
        if _pp_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible of degree %d over F_%d" % (k, p))


_FIELD_CACHE = {}
_EMBED_CACHE = {}


def field_make(p, k=1):
    """Return the cached field F_{p^k} with its deterministic modulus.

    Raises InputError for non-prime p or sizes beyond the desk-scale caps.
    """
    key = (p, k)
    got = _FIELD_CACHE.get(key)
    if got is not None:
        return got
    if not isinstance(p, int) or not is_prime(p):
        raise InputError("field characteristic must be prime, got %r" % (p,))
    if not isinstance(k, int) or not 1 <= k <= FIELD_DEGREE_CAP:
        raise InputError("extension degree must be in 1..%d, got %r" % (FIELD_DEGREE_CAP, k))
    if p**k > FIELD_ORDER_CAP:
        raise InputError("field order %d^%d exceeds the 2^40 cap" % (p, k))
    field = FiniteField(p, k, _lex_min_irreducible(p, k))
    _FIELD_CACHE[key] = field
    return field


class FiniteField:
    """F_{p^k} acting on raw coefficient tuples; use field_make(), not the
    constructor, so instances stay canonical and cached."""

    __slots__ = ("p", "k", "modulus", "order", "_reductions")

    def __init__(self, p, k, modulus):
        self.p = p
        self.k = k
        self.modulus = modulus
        self.order = p**k
        # x^(k+i) mod modulus for i = 0..k-2, used to fold products
        reds = []
        if k > 1:
            cur = [(-c) % p for c in modulus[:-1]]  # x^k
            reds.append(tuple(cur))
            for _ in range(k - 2):
                cur = [0] + cur
                lead = cur.pop()
                if lead:
                    cur = [(c - lead * m) % p for c, m in zip(cur, modulus[:-1])]
                reds.append(tuple(cur))
        self._reductions = tuple(reds)

    # -- raw tuple arithmetic ------------------------------------------------

    def raw_zero(self):
        return (0,) * self.k

    def raw_one(self):
        return (1,) + (0,) * (self.k - 1)

    def raw_from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def raw_add(self, a, b):
        p = self.p
        if self.k == 1:
            return ((a[0] + b[0]) % p,)
        return tuple((x + y) % p for x, y in zip(a, b))

    def raw_sub(self, a, b):
        p = self.p
        if self.k == 1:
            return ((a[0] - b[0]) % p,)
        return tuple((x - y) % p for x, y in zip(a, b))

    def raw_neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def raw_mul(self, a, b):
        p = self.p
        k = self.k
        if k == 1:
            return (a[0] * b[0] % p,)
        full = [0] * (2 * k - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    full[i + j] += ca * cb
        out = [c % p for c in full[:k]]
        for i, red in enumerate(self._reductions):
            hi = full[k + i] % p
            if hi:
                for j, rc in enumerate(red):
                    out[j] = (out[j] + hi * rc) % p
        return tuple(out)

    def raw_pow(self, a, e):
        if e < 0:
            a = self.raw_inv(a)
            e = -e
        result = self.raw_one()
        while e:
            if e & 1:
                result = self.raw_mul(result, a)
            e >>= 1
            if e:
                a = self.raw_mul(a, a)
        return result

    def raw_inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero in %s" % self)
        if self.k == 1:
            return (pow(a[0], self.p - 2, self.p),)
        return self.raw_pow(a, self.order - 2)

    def raw_div(self, a, b):
        return self.raw_mul(a, self.raw_inv(b))

    # -- element interface -----------------------------------------------------

    def element(self, value):
        """Coerce an int (multiple of 1) or coefficient sequence into the field."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise InputError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, self.raw_from_int(value))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.k:
            raise InputError("coefficient tuple longer than field degree")
        coeffs = coeffs + (0,) * (self.k - len(coeffs))
        return FieldElement(self, coeffs)

    def zero(self):
        return FieldElement(self, self.raw_zero())

    def one(self):
        return FieldElement(self, self.raw_one())

    def generator(self):
        """The class of u (= x mod modulus); a generator of the F_p-algebra,
        not necessarily of the multiplicative group."""
        if self.k == 1:
            return self.one()
        return FieldElement(self, (0, 1) + (0,) * (self.k - 2))

    def elements(self):
        """All field elements in canonical (coefficient-lex) order."""
        for c in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, c)

    def __len__(self):
        return self.order

    def __repr__(self):
        if self.k == 1:
            return "GF(%d)" % self.p
        return "GF(%d^%d)" % (self.p, self.k)

    def __reduce__(self):
        return (field_make, (self.p, self.k))


class FieldElement:
    """Immutable element of a FiniteField; supports the usual operators.

    The total order (comparison operators) is the canonical coefficient-lex
    order used for every deterministic choice in the package.
    """

    __slots__ = ("field", "c")

    def __init__(self, field, c):
        self.field = field
        self.c = c

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise InputError("mixed-field arithmetic between %r and %r" % (self.field, other.field))
            return other
        if isinstance(other, int):
            return FieldElement(self.field, self.field.raw_from_int(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.raw_add(self.c, other.c))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.raw_sub(self.c, other.c))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.raw_sub(other.c, self.c))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.raw_mul(self.c, other.c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.raw_div(self.c, other.c))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return FieldElement(self.field, self.field.raw_div(other.c, self.c))

    def __neg__(self):
        return FieldElement(self.field, self.field.raw_neg(self.c))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.raw_pow(self.c, e))

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.c == other.c
        if isinstance(other, int):
            return self.c == self.field.raw_from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.c))

    def __lt__(self, other):
        return self.c < self._coerce(other).c

    def __le__(self, other):
        return self.c <= self._coerce(other).c

    def __gt__(self, other):
        return self.c > self._coerce(other).c

    def __ge__(self, other):
        return self.c >= self._coerce(other).c

    def frobenius(self, times=1):
        """The image under the p-power map applied `times` times."""
        k = self.field.k
        t = times % k
        if t == 0:
            return self
        return FieldElement(self.field, self.field.raw_pow(self.c, self.field.p**t))

    def is_constant(self):
        """True when the element lies in the prime subfield."""
        return not any(self.c[1:])

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return "<%s in %r>" % (format_element(self), self.field)


def frobenius(a, times=1):
    return a.frobenius(times)


def embed(a, target):
    """Map a into the larger field via the fixed embedding that sends the
    source generator to the smallest root of the source modulus in the
    target.  Composed embeddings along towers rooted in a prime field agree
    with the direct one.
    """
    field = a.field
    if field is target:
        return a
    if field.p != target.p or target.k % field.k != 0:
        raise InputError("no embedding of %r into %r" % (field, target))
    if field.k == 1:
        return target.element(a.c[0])
    root = _embedding_root(field, target)
    # Horner evaluation of the coefficient polynomial at the root.
    acc = target.raw_zero()
    for coeff in reversed(a.c):
        acc = target.raw_mul(acc, root)
        if coeff:
            acc = target.raw_add(acc, target.raw_from_int(coeff))
    return FieldElement(target, acc)


def _embedding_root(field, target):
    key = ((field.p, field.k), (target.p, target.k))
    got = _EMBED_CACHE.get(key)
    if got is not None:
        return got
    from .poly import Poly, roots_in

    modulus = Poly(field_make(field.p, 1), [(c,) for c in field.modulus])
    roots = roots_in(modulus, target)
    if not roots:
        raise AssertionError("modulus of %r has no root in %r" % (field, target))
    root = roots[0].c  # roots_in returns canonical order; take the smallest
    _EMBED_CACHE[key] = root
    return root


# ---------------------------------------------------------------------------
# Element text form: polynomial in u with integer coefficients, e.g. 2*u+1;
# prime-field elements print as bare integers.


def format_element(a):
    if a.field.k == 1 or a.is_constant():
        return str(a.c[0])
    terms = []
    for i in range(a.field.k - 1, -1, -1):
        coeff = a.c[i]
        if not coeff:
            continue
        if i == 0:
            terms.append(str(coeff))
        else:
            var = "u" if i == 1 else "u^%d" % i
            terms.append(var if coeff == 1 else "%d*%s" % (coeff, var))
    return "+".join(terms) if terms else "0"


def parse_element(field, text):
    """Parse the u-notation produced by format_element."""
    from .poly import _parse_poly_text

    coeffs = _parse_poly_text(text, "u", max_degree=field.k - 1)
    return field.element([c % field.p for c in coeffs])
