"""Integer polynomial kernels used by the scalar/series/cyclotomic layers.

Polynomials are lists of ints in [0, mod).  Multiplication goes through
Kronecker substitution (pack into one big integer, multiply, unpack) so
the heavy lifting happens in CPython's bignum core.  Reduction modulo a
monic polynomial uses Barrett-style division with a Newton-inverted
reversed modulus; this is exact over Z/mod since the modulus is monic.
"""
from __future__ import annotations


def vp(n: int, p: int) -> int:
    """Valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def inv_mod(a: int, mod: int) -> int:
    return pow(a, -1, mod)


def _pack(a, slot_bytes):
    return int.from_bytes(
        b"".join(c.to_bytes(slot_bytes, "little") for c in a), "little"
    )


def _unpack(x, n, slot_bytes):
    raw = x.to_bytes(n * slot_bytes, "little")
    return [
        int.from_bytes(raw[i * slot_bytes : (i + 1) * slot_bytes], "little")
        for i in range(n)
    ]


def polymul(a, b, mod, trunc=None):
    """Product of two coefficient lists, reduced mod `mod`.

    `trunc` caps the number of returned coefficients.
    """
    if not a or not b:
        return []
    n = len(a) + len(b) - 1
    if trunc is not None:
        n = min(n, trunc)
        a = a[:n]
        b = b[:n]
    if len(a) == 1:
        c = a[0]
        return [(c * x) % mod for x in b[:n]]
    if len(b) == 1:
        c = b[0]
        return [(c * x) % mod for x in a[:n]]
    if any(c < 0 or c >= mod for c in a):
        a = [c % mod for c in a]
    if any(c < 0 or c >= mod for c in b):
        b = [c % mod for c in b]
    bound = min(len(a), len(b)) * (mod - 1) * (mod - 1) + 1
    slot_bytes = (bound.bit_length() + 7) // 8
    prod = _pack(a, slot_bytes) * _pack(b, slot_bytes)
    out = _unpack(prod, len(a) + len(b) - 1, slot_bytes)[:n]
    return [c % mod for c in out]


def taylor_shift1(a, sign, mod):
    """Coefficients of f(x + sign) for sign in {+1, -1}; O(n^2) additions."""
    b = list(a)
    n = len(b)
    if sign == 1:
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                b[j] = (b[j] + b[j + 1]) % mod
    elif sign == -1:
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                b[j] = (b[j] - b[j + 1]) % mod
    else:
        raise ValueError("sign must be +1 or -1")
    return b


def series_inv(f, k, mod):
    """Inverse of f mod x^k; f[0] must be invertible mod `mod`."""
    g = [inv_mod(f[0], mod)]
    t = 1
    while t < k:
        t = min(2 * t, k)
        fg = polymul(f[:t], g, mod, trunc=t)
        two_minus = [(-c) % mod for c in fg]
        two_minus[0] = (two_minus[0] + 2) % mod
        g = polymul(g, two_minus, mod, trunc=t)
    return g


class MonicReducer:
    """Barrett reduction modulo a monic polynomial over Z/mod."""

    def __init__(self, phi, mod):
        if phi[-1] != 1:
            raise ValueError("modulus polynomial must be monic")
        self.phi = list(phi)
        self.mod = mod
        self.d = len(phi) - 1
        self._rev = list(reversed(self.phi))
        self._inv_cache_len = 0
        self._inv = []

    def _inv_rev(self, k):
        if k > self._inv_cache_len:
            self._inv = series_inv(self._rev, k, self.mod)
            self._inv_cache_len = k
        return self._inv[:k]

    def reduce(self, u):
        """Remainder of u modulo phi, as a list of length d."""
        mod, d = self.mod, self.d
        u = [c % mod for c in u]
        while len(u) > d and u[-1] == 0:
            u.pop()
        m = len(u) - 1 - d
        if m < 0:
            return u + [0] * (d - len(u))
        ru = list(reversed(u))
        q_rev = polymul(ru, self._inv_rev(m + 1), mod, trunc=m + 1)
        q = list(reversed(q_rev))
        qphi = polymul(q, self.phi, mod)
        r = [(u[i] - (qphi[i] if i < len(qphi) else 0)) % mod for i in range(d)]
        return r

    def mulmod(self, a, b):
        return self.reduce(polymul(a, b, self.mod))
