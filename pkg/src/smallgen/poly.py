"""Univariate polynomials and rational functions over a finite field.

Covers exact arithmetic, squarefreeness, irreducibility, full factorization
(squarefree decomposition, then distinct-degree, then equal-degree
splitting) and lazy enumeration of monic irreducibles in lex order.

Equal-degree splitting draws its trial elements from a fixed-seed
deterministic generator so that factor() output is bit-identical across
runs and platforms.  Both the odd-characteristic power-map variant and the
characteristic-2 trace-map variant are implemented.
"""

from __future__ import annotations

import itertools

from .errors import InputError
from .gf import FieldElement, field_make

#: Seed of the deterministic trial-element stream used by equal-degree
#: splitting.  The 8 ASCII bytes "5ma11gen", read big-endian, give exactly
#: 64 bits.
SPLIT_SEED = int.from_bytes(b"5ma11gen", "big")

_MASK64 = (1 << 64) - 1


class _SplitMix64:
    """Tiny deterministic 64-bit generator (splitmix64 step function)."""

    def __init__(self, seed=SPLIT_SEED):
        self.state = seed & _MASK64

    def next64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n):
        return self.next64() % n


class Poly:
    """Dense univariate polynomial; coefficients stored low degree first as
    raw tuples of the owning field."""

    __slots__ = ("field", "c", "_embcache")

    def __init__(self, field, coeffs):
        # coeffs: iterable of raw tuples / FieldElements / ints
        raw = []
        for co in coeffs:
            if isinstance(co, FieldElement):
                raw.append(co.c)
            elif isinstance(co, int):
                raw.append(field.raw_from_int(co))
            else:
                raw.append(tuple(co))
        while raw and not any(raw[-1]):
            raw.pop()
        self.field = field
        self.c = tuple(raw)
        self._embcache = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, [])

    @classmethod
    def one(cls, field):
        return cls(field, [1])

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, element):
        return cls(element.field, [element])

    # -- structure -------------------------------------------------------------

    @property
    def degree(self):
        """Degree, with the zero polynomial at -1."""
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def is_constant(self):
        return len(self.c) <= 1

    def leading(self):
        if not self.c:
            return self.field.zero()
        return FieldElement(self.field, self.c[-1])

    def is_monic(self):
        return bool(self.c) and self.c[-1] == self.field.raw_one()

    def coefficient(self, i):
        if 0 <= i < len(self.c):
            return FieldElement(self.field, self.c[i])
        return self.field.zero()

    def coefficients(self):
        return [FieldElement(self.field, co) for co in self.c]

    def sort_key(self):
        """Canonical (degree, coefficient-lex) key shared by every
        deterministic ordering of polynomials."""
        return (len(self.c), self.c)

    # -- arithmetic --------------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, (int, FieldElement)):
                return Poly(self.field, [other])
            return None
        if other.field is not self.field:
            raise InputError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        F = self.field
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, co in enumerate(b):
            out[i] = F.raw_add(out[i], co)
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Poly(F, [F.raw_neg(co) for co in self.c])

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        F = self.field
        a, b = self.c, other.c
        if not a or not b:
            return Poly.zero(F)
        out = [F.raw_zero()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if any(ca):
                for j, cb in enumerate(b):
                    if any(cb):
                        out[i + j] = F.raw_add(out[i + j], F.raw_mul(ca, cb))
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.c)
        db = other.degree
        inv_lead = F.raw_inv(other.c[-1])
        quot = [F.raw_zero()] * max(0, len(rem) - db)
        while len(rem) - 1 >= db and rem:
            co = F.raw_mul(rem[-1], inv_lead)
            off = len(rem) - 1 - db
            quot[off] = co
            for i, bc in enumerate(other.c):
                rem[off + i] = F.raw_sub(rem[off + i], F.raw_mul(co, bc))
            while rem and not any(rem[-1]):
                rem.pop()
        return Poly(F, quot), Poly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        F = self.field
        inv = F.raw_inv(self.c[-1])
        return Poly(F, [F.raw_mul(co, inv) for co in self.c])

    def gcd(self, other):
        """Monic greatest common divisor."""
        a, b = self, self._check(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        F = self.field
        out = []
        for i in range(1, len(self.c)):
            out.append(F.raw_mul(F.raw_from_int(i), self.c[i]))
        return Poly(F, out)

    def powmod(self, e, modulus):
        result = Poly.one(self.field) % modulus
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            e >>= 1
            if e:
                base = (base * base) % modulus
        return result

    # -- evaluation ------------------------------------------------------------

    def raw_coeffs_in(self, target):
        """Coefficients embedded into a target extension field, cached."""
        if target is self.field:
            return self.c
        from .gf import embed

        if self._embcache is None:
            self._embcache = {}
        key = (target.p, target.k)
        got = self._embcache.get(key)
        if got is None:
            got = tuple(
                embed(FieldElement(self.field, co), target).c for co in self.c
            )
            self._embcache[key] = got
        return got

    def eval_at(self, point):
        """Evaluate at a point of the same field or an extension of it."""
        T = point.field
        coeffs = self.raw_coeffs_in(T)
        acc = T.raw_zero()
        for co in reversed(coeffs):
            acc = T.raw_mul(acc, point.c)
            acc = T.raw_add(acc, co)
        return FieldElement(T, acc)

    # -- misc --------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self.c == other.c
        if isinstance(other, int):
            return self == Poly(self.field, [other])
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.c))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __bool__(self):
        return bool(self.c)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "Poly(%s)" % format_poly(self)


class RationalFunction:
    """Quotient of polynomials in canonical form: the denominator is monic
    and coprime to the numerator, so equality is structural."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly.zero(num.field), Poly.one(num.field)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading()
            if den.c[-1] != num.field.raw_one():
                F = num.field
                inv = F.raw_inv(lead.c)
                num = Poly(F, [F.raw_mul(co, inv) for co in num.c])
                den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @classmethod
    def zero(cls, field):
        return cls(Poly.zero(field))

    @classmethod
    def one(cls, field):
        return cls(Poly.one(field))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_poly(self):
        return self.den.degree == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

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
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        if isinstance(other, (int, FieldElement)):
            return RationalFunction(Poly(self.field, [other]))
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def sort_key(self):
        return (self.num.sort_key(), self.den.sort_key())

    def __str__(self):
        if self.is_poly():
            return format_poly(self.num)
        return "(%s)/(%s)" % (format_poly(self.num), format_poly(self.den))

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Squarefreeness and factorization


def is_squarefree(a):
    """True iff a has no repeated irreducible factor.

    gcd(a, a') constant is not enough in characteristic p: a' = 0 means a is
    a p-th power, which the descent branch of the decomposition catches.
    """
    if a.is_zero():
        raise InputError("squarefreeness of the zero polynomial is undefined")
    if a.degree <= 0:
        return True
    d = a.derivative()
    if d.is_zero():
        return False
    return a.gcd(d).degree == 0


def _pth_root_poly(a):
    """For a = h(x^p), return the p-th root of a (characteristic p only)."""
    F = a.field
    p = F.p
    out = []
    for i in range(0, len(a.c), p):
        co = a.c[i]
        # p-th root in F_{p^k} is the (k-1)-fold Frobenius
        out.append(F.raw_pow(co, p ** (F.k - 1)))
    return Poly(F, out)


def _squarefree_parts(a):
    """Yield (squarefree monic factor, multiplicity); a monic nonconstant."""
    p = a.field.p
    parts = {}

    def accumulate(g, mult):
        if g.degree > 0:
            parts[mult] = parts.get(mult, Poly.one(a.field)) * g

    def descend(f, scale):
        d = f.derivative()
        if d.is_zero():
            descend(_pth_root_poly(f), scale * p)
            return
        c = f.gcd(d)
        w = f // c
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            accumulate(w // y, i * scale)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            descend(_pth_root_poly(c), scale * p)

    descend(a, 1)
    return [(part, mult) for mult, part in sorted(parts.items())]


def _distinct_degree(a):
    """Split a squarefree monic a into (product-of-degree-d-factors, d)."""
    F = a.field
    q = F.order
    out = []
    x = Poly.x(F)
    h = x
    f = a
    d = 0
    while f.degree > 2 * d:
        d += 1
        h = h.powmod(q, f)
        g = f.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _equal_degree_split(g, d, rng):
    """Cantor-Zassenhaus split of g (product of degree-d irreducibles)."""
    F = g.field
    if g.degree == d:
        return [g]
    while True:
        trial = Poly(
            F,
            [
                tuple(rng.below(F.p) for _ in range(F.k))
                for _ in range(g.degree)
            ],
        )
        if trial.degree < 1:
            continue
        if F.p == 2:
            # trace map of the degree-(k*d) extension of F_2
            t = trial
            acc = trial
            for _ in range(F.k * d - 1):
                t = (t * t) % g
                acc = (acc + t) % g
            candidate = acc
        else:
            b = trial.powmod((F.order**d - 1) // 2, g)
            candidate = b - Poly.one(F)
        t = g.gcd(candidate)
        if 0 < t.degree < g.degree:
            return _equal_degree_split(t, d, rng) + _equal_degree_split(g // t, d, rng)


def factor(a):
    """Factor a into monic irreducibles.

    Returns a list of (factor, multiplicity) in canonical (degree, lex)
    order; the product of factor^multiplicity times the leading coefficient
    of a reproduces a exactly.
    """
    if a.is_zero():
        raise InputError("cannot factor the zero polynomial")
    if a.degree == 0:
        return []
    rng = _SplitMix64()
    out = []
    for part, mult in _squarefree_parts(a.monic()):
        for block, d in _distinct_degree(part):
            for irr in _equal_degree_split(block, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda fm: fm[0].sort_key())
    return out


def is_irreducible(a):
    """Rabin test over the coefficient field."""
    if a.degree < 1:
        return False
    if a.degree == 1:
        return True
    F = a.field
    q = F.order
    f = a.monic()
    x = Poly.x(F)
    xq = x.powmod(q**f.degree, f)
    if not (xq - x).is_zero():
        return False
    d = f.degree
    checked = set()
    dd, r = d, 2
    while dd > 1:
        while dd % r:
            r += 1
        if r not in checked:
            checked.add(r)
            xe = x.powmod(q ** (d // r), f)
            if f.gcd(xe - x).degree != 0:
                return False
        dd //= r
    return True


def irreducibles(field, degree):
    """Lazily yield every monic irreducible of the given degree, in lex
    order on the coefficient tuple (c_0, ..., c_{degree-1}).

    The stream supports range partitioning: islice chunks can be handed to
    independent workers and the results merged back in order.
    """
    if degree < 1:
        raise InputError("irreducible enumeration needs degree >= 1")
    one = field.raw_one()
    for low in itertools.product(
        [e.c for e in field.elements()], repeat=degree
    ):
        cand = Poly(field, list(low) + [one])
        if degree == 1:
            yield cand
        elif any(low[0]) and is_irreducible(cand):
            yield cand


def roots_in(a, target):
    """All roots of a in the target field, in canonical element order.

    The target must contain the coefficient field of a.
    """
    if a.is_zero():
        raise InputError("every element is a root of the zero polynomial")
    if target.p != a.field.p or target.k % a.field.k != 0:
        raise InputError("target field does not extend the coefficient field")
    g = Poly(target, a.raw_coeffs_in(target)).monic()
    if g.degree == 0:
        return []
    x = Poly.x(target)
    xq = x.powmod(target.order, g)
    lin = g.gcd(xq - x)
    if lin.degree == 0:
        return []
    rng = _SplitMix64()
    roots = [
        FieldElement(target, target.raw_neg(fac.c[0]))
        for fac in _equal_degree_split(lin, 1, rng)
    ]
    roots.sort()
    return roots


# ---------------------------------------------------------------------------
# Text grammar, both directions:  term (('+'|'-') term)*, with
# term = [c '*'] 'x' ['^' e] or a bare constant; constants are integers or
# parenthesized u-notation elements.


def format_poly(a, var="x"):
    if a.is_zero():
        return "0"
    F = a.field
    one = F.raw_one()
    terms = []
    for i in range(a.degree, -1, -1):
        co = a.c[i]
        if not any(co):
            continue
        elem = FieldElement(F, co)
        if elem.is_constant():
            cs = str(co[0])
            plain_one = co == one
        else:
            cs = "(%s)" % format_element_for_poly(elem)
            plain_one = False
        if i == 0:
            terms.append(cs)
        else:
            v = var if i == 1 else "%s^%d" % (var, i)
            terms.append(v if plain_one else "%s*%s" % (cs, v))
    return "+".join(terms)


def format_element_for_poly(elem):
    from .gf import format_element

    return format_element(elem)


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise InputError("parse error at position %d: %s (in %r)" % (self.pos, msg, self.text))

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take(self, ch):
        if self.peek() != ch:
            self.error("expected %r" % ch)
        self.pos += 1

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected an integer")
        return int(self.text[start : self.pos])


def _parse_terms(tok, var, coeff_parser, zero, add, mul_x_power):
    """Shared term-list walk for the polynomial grammars."""
    total = zero
    sign = 1
    ch = tok.peek()
    if ch == "+" or ch == "-":
        tok.pos += 1
        sign = -1 if ch == "-" else 1
    while True:
        total = add(total, _parse_term(tok, var, coeff_parser, mul_x_power), sign)
        ch = tok.peek()
        if ch == "+" or ch == "-":
            tok.pos += 1
            sign = -1 if ch == "-" else 1
            continue
        if ch is None:
            return total
        tok.error("unexpected character %r" % ch)


def _parse_term(tok, var, coeff_parser, mul_x_power):
    ch = tok.peek()
    coeff = None
    if ch is None:
        tok.error("expected a term")
    if ch.isdigit() or ch == "(":
        coeff = coeff_parser(tok)
        ch = tok.peek()
        if ch == "*":
            tok.pos += 1
            ch = tok.peek()
            if ch != var:
                tok.error("expected %r after '*'" % var)
        elif ch == var:
            tok.error("missing '*' between coefficient and %r" % var)
        else:
            return mul_x_power(coeff, 0)
    if tok.peek() != var:
        tok.error("expected %r or a constant" % var)
    tok.pos += 1
    e = 1
    if tok.peek() == "^":
        tok.pos += 1
        e = tok.integer()
    return mul_x_power(coeff, e)


def _parse_poly_text(text, var, max_degree=None):
    """Integer-coefficient polynomial in var; returns a low-first int list."""
    tok = _Tokens(text)
    coeffs = {}

    def coeff_parser(t):
        if t.peek() == "(":
            t.take("(")
            v = t.integer()
            t.take(")")
            return v
        return t.integer()

    def add(total, term, sign):
        e, c = term
        coeffs[e] = coeffs.get(e, 0) + sign * c
        return total

    def mul_x_power(co, e):
        return (e, 1 if co is None else co)

    _parse_terms(tok, var, coeff_parser, None, add, mul_x_power)
    deg = max(coeffs) if coeffs else 0
    if max_degree is not None and deg > max_degree:
        raise InputError("degree %d exceeds the allowed %d in %r" % (deg, max_degree, text))
    return [coeffs.get(i, 0) for i in range(deg + 1)]


def parse_poly(field, text):
    """Parse the x-polynomial grammar over the given field."""
    tok = _Tokens(text)

    def coeff_parser(t):
        if t.peek() == "(":
            depth = 0
            start = t.pos
            while t.pos < len(t.text):
                ch = t.text[t.pos]
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                    if depth == 0:
                        inner = t.text[start + 1 : t.pos]
                        t.pos += 1
                        ints = _parse_poly_text(inner, "u", max_degree=field.k - 1)
                        return field.element(ints)
                t.pos += 1
            t.error("unbalanced parenthesis")
        return field.element(t.integer())

    def add(total, term, sign):
        e, c = term
        mono = [field.zero()] * e + [c if sign > 0 else -c]
        return total + Poly(field, mono)

    def mul_x_power(co, e):
        return (e, field.one() if co is None else co)

    return _parse_terms(tok, "x", coeff_parser, Poly.zero(field), add, mul_x_power)
