"""Fixed-precision scalars of Q_p with explicit precision tracking.

A scalar is stored as p^val * unit with the unit kept modulo
p^(prec - val); `prec` is the absolute precision (the value is known
modulo p^prec).  An "unknown zero at precision M" has unit == 0 and
val == prec == M, meaning only that the value is O(p^M).  Values
created from plain integers carry the sentinel precision INF and behave
as exact.

Precision propagation (documented contract, deterministic):

  add/sub   prec = min(prec_a, prec_b)
  mul       prec = min(prec_a, prec_b, val_a + prec_b, val_b + prec_a)
  div       relative precision = min of relative precisions, so that
            dividing by p^k lowers the absolute precision by k

Multiplication never claims more than the smaller operand precision,
and with a negative-valuation operand it drops below it, which is the
sound bound.  All instances are immutable and safe to share.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._intpoly import vp, inv_mod
from .errors import DomainError, PrecisionError

INF = 10**9

DEFAULT_M = 24
DEFAULT_GUARD = 16
_EXACT_DIV_REL = DEFAULT_M + DEFAULT_GUARD + 24


def is_inf(prec: int) -> bool:
    return prec >= INF // 2


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> None:
    if p == 2 or not _is_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")


@dataclass(frozen=True)
class PadicScalar:
    p: int
    val: int
    unit: int
    prec: int

    # -- construction -------------------------------------------------

    @staticmethod
    def zero(p: int, prec: int = INF) -> "PadicScalar":
        return PadicScalar(p, prec, 0, prec)

    @staticmethod
    def from_int(n: int, p: int, prec: int = INF) -> "PadicScalar":
        if n == 0:
            return PadicScalar.zero(p, prec)
        v = vp(n, p)
        u = n // p**v
        if not is_inf(prec):
            r = prec - v
            if r <= 0:
                return PadicScalar.zero(p, prec)
            u %= p**r
            if u == 0:
                return PadicScalar.zero(p, prec)
        return PadicScalar(p, v, u, prec)

    @staticmethod
    def from_fraction(q, p: int, prec: int) -> "PadicScalar":
        q = Fraction(q)
        if q == 0:
            return PadicScalar.zero(p, prec)
        if is_inf(prec):
            raise PrecisionError("a fraction needs a finite target precision")
        num, den = q.numerator, q.denominator
        vn = vp(num, p)
        vd = vp(den, p)
        v = vn - vd
        r = prec - v
        if r <= 0:
            return PadicScalar.zero(p, prec)
        u = (num // p**vn) * inv_mod(den // p**vd, p**r) % p**r
        if u == 0:
            return PadicScalar.zero(p, prec)
        return PadicScalar(p, v, u, prec)

    # -- predicates / views -------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True when the value is indistinguishable from 0 at its precision."""
        return self.unit == 0

    @property
    def is_exact_zero(self) -> bool:
        return self.unit == 0 and is_inf(self.prec)

    def lower_valuation(self) -> int:
        """Valuation if nonzero, else the precision floor (a lower bound)."""
        return self.prec if self.unit == 0 else self.val

    @property
    def rel(self) -> int:
        if self.unit == 0:
            return 0
        return INF if is_inf(self.prec) else self.prec - self.val

    def residue(self, digits: int) -> int:
        """Integer representative modulo p^digits; requires val >= 0."""
        if self.unit == 0:
            if self.prec < digits:
                raise PrecisionError(
                    f"residue mod p^{digits} requested at precision {self.prec}"
                )
            return 0
        if self.val < 0:
            raise DomainError("negative valuation has no integer residue")
        if self.prec < digits:
            raise PrecisionError(
                f"residue mod p^{digits} requested at precision {self.prec}"
            )
        return self.unit * self.p**self.val % self.p**digits

    def reduce(self, prec: int) -> "PadicScalar":
        """Forget digits beyond absolute precision `prec`."""
        if prec >= self.prec:
            return self
        if self.unit == 0 or self.val >= prec:
            return PadicScalar.zero(self.p, prec)
        u = self.unit % self.p ** (prec - self.val)
        if u == 0:
            return PadicScalar.zero(self.p, prec)
        return PadicScalar(self.p, self.val, u, prec)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PadicScalar):
            if other.p != self.p:
                raise DomainError("mixed primes")
            return other
        if isinstance(other, int):
            return PadicScalar.from_int(other, self.p)
        if isinstance(other, Fraction):
            tgt = self.prec + 64 if not is_inf(self.prec) else DEFAULT_M + DEFAULT_GUARD
            return PadicScalar.from_fraction(other, self.p, tgt)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        p = self.p
        prec = min(self.prec, b.prec)
        if self.unit == 0 and b.unit == 0:
            return PadicScalar.zero(p, prec)
        if self.unit == 0 or b.unit == 0:
            nz = self if self.unit else b
            return nz.reduce(prec)
        vmin = min(self.val, b.val)
        s = self.unit * p ** (self.val - vmin) + b.unit * p ** (b.val - vmin)
        if not is_inf(prec):
            if prec - vmin <= 0:
                return PadicScalar.zero(p, prec)
            s %= p ** (prec - vmin)
        if s == 0:
            return PadicScalar.zero(p, prec)
        w = vp(s, p)
        val = vmin + w
        if val >= prec:
            return PadicScalar.zero(p, prec)
        u = s // p**w
        if not is_inf(prec):
            u %= p ** (prec - val)
        return PadicScalar(p, val, u, prec)

    __radd__ = __add__

    def __neg__(self):
        if self.unit == 0:
            return self
        u = -self.unit
        if not is_inf(self.prec):
            u %= self.p ** (self.prec - self.val)
        return PadicScalar(self.p, self.val, u, self.prec)

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self + (-b)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        p = self.p
        if self.unit == 0 or b.unit == 0:
            if self.unit == 0 and b.unit == 0:
                prec = self.prec + b.prec
            elif self.unit == 0:
                prec = self.prec + b.val
            else:
                prec = b.prec + self.val
            prec = INF if is_inf(prec) else max(prec, 0)
            return PadicScalar.zero(p, prec)
        val = self.val + b.val
        prec = min(self.prec, b.prec, self.val + b.prec, b.val + self.prec)
        u = self.unit * b.unit
        if is_inf(prec):
            return PadicScalar(p, val, u, INF)
        r = prec - val
        if r <= 0:
            return PadicScalar.zero(p, prec)
        u %= p**r
        if u == 0:
            return PadicScalar.zero(p, prec)
        return PadicScalar(p, val, u, prec)

    __rmul__ = __mul__

    def inverse(self) -> "PadicScalar":
        if self.unit == 0:
            if self.is_exact_zero:
                raise DomainError("division by exact zero")
            raise PrecisionError(
                f"division by a scalar indistinguishable from 0 (O(p^{self.prec}))"
            )
        if is_inf(self.prec):
            if self.unit in (1, -1):
                return PadicScalar(self.p, -self.val, self.unit, INF)
            r = _EXACT_DIV_REL
        else:
            r = self.prec - self.val
        u = inv_mod(self.unit, self.p**r)
        return PadicScalar(self.p, -self.val, u, -self.val + r)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return self * b.inverse()

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return b / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = PadicScalar.from_int(1, self.p)
        base = self
        while n > 0:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- comparison at precision --------------------------------------

    def agrees(self, other, floor: int | None = None) -> bool:
        """Equality modulo p^min(prec) (or modulo p^floor when given)."""
        b = self._coerce(other)
        d = self - b
        bound = d.prec if floor is None else min(floor, d.prec)
        return d.lower_valuation() >= bound

    def __str__(self):
        p = self.p
        if self.unit == 0:
            return "0" if is_inf(self.prec) else f"0 + O({p}^{self.prec})"
        if is_inf(self.prec):
            if self.val >= 0:
                return str(self.unit * p**self.val)
            return f"{self.unit}/{p**(-self.val)}"
        digits = []
        u = self.unit
        for _ in range(self.prec - self.val):
            u, d = divmod(u, p)
            digits.append(d)
            if u == 0:
                break
        parts = []
        for i, d in enumerate(digits):
            if d == 0:
                continue
            if i == 0:
                parts.append(f"{d}")
            elif i == 1:
                parts.append(f"{d}*{p}")
            else:
                parts.append(f"{d}*{p}^{i}")
        body = " + ".join(parts) if parts else "0"
        return f"{p}^{self.val} * ({body}) + O({p}^{self.prec})"

    def __repr__(self):
        return f"PadicScalar({self})"


# -- convenience wrappers ---------------------------------------------


def padic(n, p, prec=INF):
    if isinstance(n, PadicScalar):
        return n.reduce(prec)
    if isinstance(n, Fraction):
        return PadicScalar.from_fraction(
            n, p, prec if not is_inf(prec) else DEFAULT_M + DEFAULT_GUARD
        )
    return PadicScalar.from_int(n, p, prec)


def padic_exp(x: PadicScalar) -> PadicScalar:
    """Exponential series; requires v_p(x) >= 1 (p odd)."""
    prec = x.prec if not is_inf(x.prec) else DEFAULT_M + DEFAULT_GUARD
    if x.unit == 0:
        return PadicScalar.from_int(1, x.p, prec)
    if x.val < 1:
        raise DomainError("exp converges only for valuation >= 1 (p odd)")
    p = x.p
    # v_p(k!) <= k/(p-1), so term valuation >= k(val - 1/(p-1)); this bound
    # makes every dropped term O(p^prec).
    kmax = 2 * prec // max(2 * x.val - 1, 1) + 4
    out = PadicScalar.from_int(1, p, prec)
    term = PadicScalar.from_int(1, p)
    for k in range(1, kmax + 1):
        term = term * x / k
        if term.unit != 0 and term.val < prec:
            out = out + term
    return out.reduce(prec)


def padic_log(x: PadicScalar) -> PadicScalar:
    """Logarithm series; requires x in 1 + pZ_p."""
    prec = x.prec if not is_inf(x.prec) else DEFAULT_M + DEFAULT_GUARD
    u = x - 1
    if u.unit == 0:
        return PadicScalar.zero(x.p, prec)
    if u.val < 1:
        raise DomainError("log converges only on 1 + pZ_p")
    p = x.p
    kmax = prec // u.val + 1
    while kmax * u.val - _ilog(kmax, p) < prec:
        kmax += 1
    out = PadicScalar.zero(x.p, prec)
    power = PadicScalar.from_int(1, p)
    for k in range(1, kmax + 1):
        power = power * u
        term = power / k
        if term.unit != 0 and term.val < prec:
            out = out + (term if k % 2 == 1 else -term)
    return out.reduce(prec)


def _ilog(n, p):
    e = 0
    while p**e <= n:
        e += 1
    return e


def padic_log0(x: PadicScalar) -> PadicScalar:
    """Normalized logarithm: log(x) divided by p^(its valuation), a unit."""
    lx = padic_log(x)
    if lx.unit == 0:
        raise PrecisionError("log(x) indistinguishable from 0")
    return PadicScalar(x.p, 0, lx.unit, lx.prec - lx.val)
