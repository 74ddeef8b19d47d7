"""Truncated power-series arithmetic over a finite field (internal).

A series is a plain list of raw coefficient tuples indexed by exponent;
callers pass the working precision explicitly and lists are kept at exactly
that length.
"""

from __future__ import annotations


def fit(field, a, n):
    if len(a) >= n:
        return a[:n]
    return list(a) + [field.raw_zero()] * (n - len(a))


def add(field, a, b, n):
    a = fit(field, a, n)
    b = fit(field, b, n)
    return [field.raw_add(x, y) for x, y in zip(a, b)]


def mul(field, a, b, n):
    out = [field.raw_zero()] * n
    for i, ca in enumerate(a):
        if i >= n:
            break
        if any(ca):
            top = min(n - i, len(b))
            for j in range(top):
                cb = b[j]
                if any(cb):
                    out[i + j] = field.raw_add(out[i + j], field.raw_mul(ca, cb))
    return out


def scale(field, a, co, n):
    return [field.raw_mul(co, x) for x in fit(field, a, n)]


def powr(field, a, e, n):
    result = fit(field, [field.raw_one()], n)
    base = fit(field, a, n)
    while e:
        if e & 1:
            result = mul(field, result, base, n)
        e >>= 1
        if e:
            base = mul(field, base, base, n)
    return result


def inv(field, a, n):
    """Inverse of a unit series, by triangular back-substitution."""
    a = fit(field, a, n)
    lead_inv = field.raw_inv(a[0])
    out = [lead_inv] + [field.raw_zero()] * (n - 1)
    for i in range(1, n):
        acc = field.raw_zero()
        for j in range(1, i + 1):
            if any(a[j]) and any(out[i - j]):
                acc = field.raw_add(acc, field.raw_mul(a[j], out[i - j]))
        out[i] = field.raw_neg(field.raw_mul(lead_inv, acc))
    return out


def nth_root(field, a, m, root0, n):
    """The unique series g with g^m = a and g(0) = root0.

    Requires root0^m = a(0) and m invertible in the field (the tameness
    hypothesis); Newton iteration with doubling precision.
    """
    g = [root0]
    prec = 1
    m_inv = field.raw_inv(field.raw_from_int(m))
    while prec < n:
        prec = min(2 * prec, n)
        g = fit(field, g, prec)
        gm1 = powr(field, g, m - 1, prec)
        gm = mul(field, gm1, g, prec)
        num = [field.raw_sub(x, y) for x, y in zip(gm, fit(field, a, prec))]
        denom_inv = inv(field, gm1, prec)
        corr = mul(field, num, denom_inv, prec)
        g = [
            field.raw_sub(x, field.raw_mul(m_inv, y)) for x, y in zip(g, corr)
        ]
    return g


def poly_shift(field, raw_coeffs, x0, n):
    """Coefficients of P(x0 + t) mod t^n, P given by raw coefficients in
    the target field."""
    out = [field.raw_zero()] * n
    for co in reversed(raw_coeffs):
        # out <- out * (x0 + t) + co
        carry = field.raw_zero()
        for i in range(min(len(out), n)):
            cur = out[i]
            out[i] = field.raw_add(field.raw_mul(cur, x0), carry)
            carry = cur
        out[0] = field.raw_add(out[0], co)
    return out
