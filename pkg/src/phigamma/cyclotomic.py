"""Arithmetic in the cyclotomic tower F_n = Q_p(mu_{p^n}).

Elements are stored in the power basis of pi_n = zeta_{p^n} - 1, i.e. as
polynomials of degree < (p-1)p^(n-1) reduced modulo the Eisenstein
polynomial Phi_{p^n}(1+x).  Level 0 is Q_p itself.  The per-(p, n) field
object caches integer tables (powers of pi, powers of 1+pi, trace rows)
that are built once and then only read, so shared use is safe.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import math

from ._intpoly import MonicReducer, polymul, taylor_shift1, vp
from .errors import ConsistencyError, DomainError, PrecisionError
from .padic import INF, PadicScalar, check_prime, is_inf

# Joint digit cap when lifting exact coefficient vectors to integers.
EXACT_DIGITS = 160

TABLE_DIGITS = 160


def lift_vector(coeffs, p, cap=EXACT_DIGITS):
    """PadicScalar vector -> (shift, digits, int vector).

    The integer vector holds (value * p^-shift) mod p^digits per slot,
    with shift = min(0, smallest valuation).  `digits` collapses to the
    smallest coefficient precision (precision coarsening is documented
    behaviour of the vector kernels).
    """
    shift = 0
    digits = cap
    for c in coeffs:
        if c.unit:
            shift = min(shift, c.val)
        if not is_inf(c.prec):
            digits = min(digits, c.prec)
    digits -= shift
    if digits <= 0:
        raise PrecisionError("vector has no joint digits left")
    ints = []
    for c in coeffs:
        if c.unit == 0:
            ints.append(0)
        else:
            ints.append(c.unit * p ** (c.val - shift) % p**digits)
    return shift, digits, ints


def restore_vector(ints, p, shift, digits):
    out = []
    for v in ints:
        s = PadicScalar.from_int(v % p**digits, p, digits)
        if shift:
            s = PadicScalar(p, s.val + shift, s.unit, s.prec + shift) if s.unit else PadicScalar.zero(p, digits + shift)
        out.append(s)
    return out


def ramanujan_sum(p: int, ell: int, k: int) -> int:
    """Sum of zeta^k over the primitive p^ell-th roots of unity."""
    if ell == 0:
        return 1
    q = p**ell
    if k % q == 0:
        return q - q // p
    if k % (q // p) == 0:
        return -(q // p)
    return 0


class CycloField:
    """Cached context for F_n: modulus polynomial and integer tables."""

    def __init__(self, p: int, n: int):
        check_prime(p)
        if n < 0:
            raise DomainError("level must be >= 0")
        self.p = p
        self.n = n
        self.degree = 1 if n == 0 else (p - 1) * p ** (n - 1)
        self.mod = p**TABLE_DIGITS
        self.phi = self._eisenstein()
        self.reducer = MonicReducer(self.phi, self.mod) if n >= 1 else None
        self._pi_powers = None
        self._z_powers = None
        self._trace_qp = None
        self._inv_pi = None

    def _eisenstein(self):
        """Phi_{p^n}(1+x) as an integer vector mod p^TABLE_DIGITS (monic)."""
        p, n, mod = self.p, self.n, self.mod
        if n == 0:
            return [0, 1]
        num = [math.comb(p**n, k) % mod for k in range(p**n + 1)]
        num[0] = 0
        den = [math.comb(p ** (n - 1), k) % mod for k in range(p ** (n - 1) + 1)]
        den[0] = 0
        # exact synthetic division by the monic divisor
        q = [0] * (len(num) - len(den) + 1)
        rem = list(num)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + len(den) - 1]
            q[i] = c
            if c:
                for j, dcf in enumerate(den):
                    rem[i + j] = (rem[i + j] - c * dcf) % mod
        assert all(r == 0 for r in rem)
        return q

    # -- tables ---------------------------------------------------------

    def pi_powers(self, maxdeg: int):
        """Rows pi^j mod Phi for j = 0..maxdeg, as integer vectors."""
        if self._pi_powers is None or len(self._pi_powers) <= maxdeg:
            d, mod = self.degree, self.mod
            rows = [[1] + [0] * (d - 1)]
            if d > 1:
                pi_vec = [0, 1] + [0] * (d - 2)
                rows.append(pi_vec)
            top = [(-c) % mod for c in self.phi[:-1]]  # pi^d mod Phi
            while len(rows) <= maxdeg:
                prev = rows[-1]
                nxt = [0] + prev[:-1]
                lead = prev[-1]
                if lead:
                    nxt = [(a + lead * b) % mod for a, b in zip(nxt, top)]
                rows.append(nxt)
            self._pi_powers = rows
        return self._pi_powers

    def z_powers(self):
        """Rows (1+pi)^e mod Phi for e = 0..p^n - 1."""
        if self._z_powers is None:
            p, n, d, mod = self.p, self.n, self.degree, self.mod
            rows = [[1] + [0] * (d - 1)]
            top = [(-c) % mod for c in self.phi[:-1]]
            for _ in range(p**n - 1):
                prev = rows[-1]
                # multiply by (1 + pi): shift-add, then reduce the overflow
                nxt = [0] + prev[:-1]
                nxt = [(a + b) % mod for a, b in zip(nxt, prev)]
                lead = prev[-1]
                if lead:
                    nxt = [(a + lead * b) % mod for a, b in zip(nxt, top)]
                rows.append(nxt)
            self._z_powers = rows
        return self._z_powers

    def trace_qp_row(self, maxdeg: int):
        """Integers Tr_{F_n/Q_p}(pi^j) for j = 0..maxdeg."""
        if self._trace_qp is None or len(self._trace_qp) <= maxdeg:
            p, n = self.p, self.n
            if n == 0:
                self._trace_qp = [1] * (maxdeg + 1)
            else:
                row = []
                for j in range(maxdeg + 1):
                    acc = 0
                    for k in range(j + 1):
                        cs = ramanujan_sum(p, n, k)
                        if cs:
                            acc += (-1) ** (j - k) * math.comb(j, k) * cs
                    row.append(acc)
                self._trace_qp = row
        return self._trace_qp

    def inv_pi_vec(self):
        """pi^-1 expressed as p^-1 times an integer vector (from Phi)."""
        if self._inv_pi is None:
            # Phi(1+x) = x^d + ... + a_1 x + p  =>  pi^-1 = -(pi^(d-1)+...+a_1)/p
            mod = self.mod
            a = self.phi
            assert a[0] % self.p == 0 and a[0] // self.p % self.p != 0
            vec = [(-a[j + 1]) % mod for j in range(self.degree)]
            self._inv_pi = vec
        return self._inv_pi


@lru_cache(maxsize=None)
def cyclo_field(p: int, n: int) -> CycloField:
    return CycloField(p, n)


@dataclass(frozen=True)
class CycloElement:
    field: CycloField
    coeffs: tuple

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_coeffs(field, coeffs) -> "CycloElement":
        coeffs = list(coeffs)
        if len(coeffs) > field.degree:
            raise DomainError("coefficient list longer than the field degree")
        pad = [PadicScalar.zero(field.p)] * (field.degree - len(coeffs))
        return CycloElement(field, tuple(coeffs) + tuple(pad))

    @staticmethod
    def from_scalar(field, s: PadicScalar) -> "CycloElement":
        return CycloElement.from_coeffs(field, [s])

    @staticmethod
    def zero(field) -> "CycloElement":
        return CycloElement.from_coeffs(field, [])

    @staticmethod
    def one(field, prec=INF) -> "CycloElement":
        return CycloElement.from_coeffs(field, [PadicScalar.from_int(1, field.p, prec)])

    @staticmethod
    def pi(field, prec=INF) -> "CycloElement":
        if field.n == 0:
            return CycloElement.zero(field)
        return CycloElement.from_coeffs(
            field, [PadicScalar.zero(field.p, prec), PadicScalar.from_int(1, field.p, prec)]
        )

    # -- views ----------------------------------------------------------

    @property
    def p(self):
        return self.field.p

    @property
    def level(self):
        return self.field.n

    def as_scalar(self) -> PadicScalar:
        if self.field.n != 0:
            raise DomainError("only level-0 elements are plain scalars")
        return self.coeffs[0]

    def constant_scalar(self, floor=None) -> PadicScalar:
        """The rational part; requires the other coordinates to vanish."""
        for c in self.coeffs[1:]:
            bound = c.prec if floor is None else min(floor, c.prec)
            if c.lower_valuation() < bound:
                raise ConsistencyError("element is not rational at this precision")
        return self.coeffs[0]

    @property
    def is_zero(self):
        return all(c.unit == 0 for c in self.coeffs)

    def min_prec(self):
        return min((c.prec for c in self.coeffs), default=INF)

    def lower_valuation(self):
        return min(c.lower_valuation() for c in self.coeffs)

    def reduce(self, prec):
        return CycloElement(self.field, tuple(c.reduce(prec) for c in self.coeffs))

    def agrees(self, other, floor=None):
        if self.field is not other.field:
            raise DomainError("level mismatch")
        return all(
            a.agrees(b, floor=floor) for a, b in zip(self.coeffs, other.coeffs)
        )

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        return CycloElement(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return CycloElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def _coerce(self, other):
        if isinstance(other, CycloElement):
            if other.field is not self.field:
                raise DomainError("level mismatch")
            return other
        if isinstance(other, (int, PadicScalar)):
            s = other if isinstance(other, PadicScalar) else PadicScalar.from_int(other, self.p)
            return CycloElement.from_scalar(self.field, s)
        raise DomainError(f"cannot coerce {type(other)}")

    def scalar_mul(self, s: PadicScalar) -> "CycloElement":
        return CycloElement(self.field, tuple(c * s for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, PadicScalar)):
            s = other if isinstance(other, PadicScalar) else PadicScalar.from_int(other, self.p)
            return self.scalar_mul(s)
        other = self._coerce(other)
        if self.field.n == 0:
            return CycloElement.from_scalar(self.field, self.coeffs[0] * other.coeffs[0])
        if self.is_zero or other.is_zero:
            if self.is_zero and other.is_zero:
                prec = self.min_prec() + other.min_prec()
            elif self.is_zero:
                prec = self.min_prec() + min(0, other.lower_valuation())
            else:
                prec = other.min_prec() + min(0, self.lower_valuation())
            z = PadicScalar.zero(self.p, INF if is_inf(prec) else prec)
            return CycloElement(self.field, tuple(z for _ in range(self.field.degree)))
        p = self.p
        sa, da, ia = lift_vector(self.coeffs, p)
        sb, db, ib = lift_vector(other.coeffs, p)
        digits = min(da, db, TABLE_DIGITS)
        prod = polymul(ia, ib, p**digits)
        red = self.field.reducer.reduce(prod)
        out = restore_vector(red, p, sa + sb, digits)
        return CycloElement(self.field, tuple(out))

    __rmul__ = __mul__

    def mul_pi_inverse(self) -> "CycloElement":
        """Multiply by pi^-1 using the closed form from the modulus."""
        if self.field.n == 0:
            raise DomainError("pi is 0 at level 0")
        p = self.p
        inv_vec = self.field.inv_pi_vec()
        sa, da, ia = lift_vector(self.coeffs, p)
        digits = min(da, TABLE_DIGITS)
        prod = polymul(ia, inv_vec, p**digits)
        red = self.field.reducer.reduce(prod)
        out = restore_vector(red, p, sa - 1, digits)
        return CycloElement(self.field, tuple(out))

    def invert(self) -> "CycloElement":
        """Field inverse by solving the d x d multiplication system."""
        if self.field.n == 0:
            return CycloElement.from_scalar(self.field, self.coeffs[0].inverse())
        d = self.field.degree
        # columns: self * pi^j in the power basis
        cols = []
        base = self
        for j in range(d):
            cols.append(base.coeffs)
            if j < d - 1:
                base = base.mul_shift_pi()
        mat = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [PadicScalar.from_int(1 if i == 0 else 0, self.p) for i in range(d)]
        sol = solve_padic_linear(mat, rhs, self.p)
        return CycloElement(self.field, tuple(sol))

    def mul_shift_pi(self) -> "CycloElement":
        """Multiply by pi (shift plus one reduction row)."""
        d = self.field.degree
        p = self.p
        top = self.field.pi_powers(d)[d]
        lead = self.coeffs[-1]
        shifted = [PadicScalar.zero(p)] + list(self.coeffs[:-1])
        if lead.unit:
            digits = min(lead.prec - min(lead.val, 0), TABLE_DIGITS)
            out = []
            for a, t in zip(shifted, top):
                out.append(a + lead * PadicScalar.from_int(t % p**digits, p, digits))
            return CycloElement(self.field, tuple(out))
        return CycloElement(self.field, tuple(shifted))

    # -- tower structure --------------------------------------------------

    def to_unit_basis_ints(self):
        """Coefficients over the basis (1+pi)^k, as (shift, digits, ints)."""
        s, dgt, ints = lift_vector(self.coeffs, self.p)
        return s, dgt, taylor_shift1(ints, -1, self.p**dgt)

    @staticmethod
    def from_unit_basis_ints(field, shift, digits, ints):
        vec = taylor_shift1(list(ints), 1, field.p**digits)
        return CycloElement(field, tuple(restore_vector(vec, field.p, shift, digits)))

    def galois(self, a: int) -> "CycloElement":
        """The automorphism zeta -> zeta^a for a prime to p."""
        p, n = self.p, self.level
        if n == 0:
            return self
        if math.gcd(a, p) != 1:
            raise DomainError("galois action needs a unit exponent")
        a %= p**n
        s, dgt, zc = self.to_unit_basis_ints()
        mod = p**dgt
        ztab = self.field.z_powers()
        d = self.field.degree
        acc = [0] * d
        for k, c in enumerate(zc):
            if c:
                row = ztab[a * k % p**n]
                for i in range(d):
                    acc[i] = (acc[i] + c * row[i]) % mod
        return CycloElement(self.field, tuple(restore_vector(acc, p, s, dgt)))

    def embed(self, m: int) -> "CycloElement":
        """Image under F_n -> F_m for m >= n."""
        p, n = self.p, self.level
        if m < n:
            raise DomainError("embed goes up the tower")
        if m == n:
            return self
        target = cyclo_field(p, m)
        table = _embed_powers(p, n, m)
        d = target.degree
        acc = [PadicScalar.zero(p) for _ in range(d)]
        for j, c in enumerate(self.coeffs):
            if c.unit:
                dgt = min(c.prec - min(c.val, 0), TABLE_DIGITS)
                row = table[j]
                for i in range(d):
                    if row[i]:
                        acc[i] = acc[i] + c * PadicScalar.from_int(
                            row[i] % p**dgt, p, dgt
                        )
        return CycloElement(target, tuple(acc))

    def subfield_slots_check(self, target_n: int, floor: int):
        """Valuation floor certifying membership in the level-target subfield.

        In the (1+pi)-basis, the level-target subfield is spanned by the
        exponents divisible by p^(n - target); all other slots must vanish.
        """
        p, n = self.p, self.level
        step = p ** (n - target_n)
        s, dgt, zc = self.to_unit_basis_ints()
        worst = INF
        for k, c in enumerate(zc):
            if k % step:
                v = vp(c, p) if c else dgt
                worst = min(worst, v + s)
        return worst >= floor, worst

    def __str__(self):
        return f"F({self.p},{self.level})[" + ", ".join(str(c) for c in self.coeffs) + "]"


@lru_cache(maxsize=None)
def _embed_powers(p, n, m):
    """pi_n^j inside F_m, for j < deg(F_n), as integer vectors."""
    src = cyclo_field(p, n)
    tgt = cyclo_field(p, m)
    mod = tgt.mod
    ztab = tgt.z_powers()
    step = p ** (m - n)
    pin = [(a - b) % mod for a, b in zip(ztab[step], ztab[0])]
    rows = [[1] + [0] * (tgt.degree - 1)]
    for _ in range(1, src.degree):
        rows.append(tgt.reducer.reduce(polymul(rows[-1], pin, mod)))
    return rows


# -- traces -------------------------------------------------------------


@lru_cache(maxsize=None)
def _relative_trace_rows(p, m, n, maxdeg):
    """Tr_{F_m/F_n}(pi_m^j) for j <= maxdeg, as level-n elements (n >= 1).

    Power sums of the roots of G(y) = (1+y)^q - (1+pi_n) over F_n,
    q = p^(m-n), via Newton's identities.
    """
    fld = cyclo_field(p, n)
    q = p ** (m - n)
    pi_n = CycloElement.pi(fld)
    # After folding the alternating signs of Newton's identities into the
    # binomial coefficients of G, the power sums satisfy
    #   p_k = - sum_{i=1..min(k-1, q-1)} C(q, q-i) p_{k-i}
    #         + pi_n * p_{k-q}          (when k > q)
    #         - k * C(q, q-k)           (when k < q)
    #         + q * pi_n                (when k == q)
    sums = [CycloElement.from_scalar(fld, PadicScalar.from_int(q, p))]
    for k in range(1, maxdeg + 1):
        acc = CycloElement.zero(fld)
        for i in range(1, min(k - 1, q - 1) + 1):
            acc = acc - sums[k - i] * math.comb(q, q - i)
        if k > q:
            acc = acc + pi_n * sums[k - q]
        if k < q:
            acc = acc - CycloElement.one(fld) * (k * math.comb(q, q - k))
        if k == q:
            acc = acc + pi_n * q
        sums.append(acc)
    return tuple(sums)


def cyclo_trace(x: CycloElement, target_n: int) -> CycloElement:
    """Trace from level m down to level target_n <= m (table route)."""
    p, m = x.p, x.level
    if target_n > m or target_n < 0:
        raise DomainError("invalid target level")
    if target_n == m:
        return x
    d = x.field.degree
    if target_n == 0:
        row = x.field.trace_qp_row(d - 1)
        acc = PadicScalar.zero(p)
        for j, c in enumerate(x.coeffs):
            if c.unit:
                acc = acc + c * row[j]
        out = CycloElement.from_scalar(cyclo_field(p, 0), acc)
        return out
    rows = _relative_trace_rows(p, m, target_n, d - 1)
    fld = cyclo_field(p, target_n)
    acc = CycloElement.zero(fld)
    for j, c in enumerate(x.coeffs):
        if c.unit:
            acc = acc + rows[j].scalar_mul(c)
    return acc


def trace_by_conjugates(x: CycloElement, target_n: int, floor=None) -> CycloElement:
    """Trace computed as an explicit sum over the kernel conjugates.

    Slow reference route: sums sigma_a(x) over a = 1 mod p^target, then
    verifies the result lies in the level-target subfield and converts.
    Raises ConsistencyError if the membership test fails beyond `floor`.
    """
    p, m = x.p, x.level
    if target_n > m or target_n < 0:
        raise DomainError("invalid target level")
    if target_n == m:
        return x
    step = p**target_n if target_n else 1
    total = CycloElement.zero(x.field)
    for a in range(1, p**m, step):
        if math.gcd(a, p) != 1:
            continue
        total = total + x.galois(a)
    if target_n == 0:
        row_floor = floor if floor is not None else max(total.min_prec() - 4, 1)
        ok, worst = total.subfield_slots_check(0, row_floor) if m else (True, INF)
        # level-0 membership: all pi-coordinates vanish
        for c in total.coeffs[1:]:
            if c.lower_valuation() < row_floor:
                raise ConsistencyError(
                    f"trace result not rational (valuation {c.lower_valuation()})"
                )
        return CycloElement.from_scalar(cyclo_field(p, 0), total.coeffs[0])
    row_floor = floor if floor is not None else max(total.min_prec() - 4, 1)
    ok, worst = total.subfield_slots_check(target_n, row_floor)
    if not ok:
        raise ConsistencyError(
            f"trace result leaves the level-{target_n} subfield (floor {worst})"
        )
    # project: keep the (1+pi)-slots divisible by p^(m - target)
    s, dgt, zc = total.to_unit_basis_ints()
    stepz = p ** (m - target_n)
    sub = [zc[k * stepz] for k in range(cyclo_field(p, target_n).degree)]
    return CycloElement.from_unit_basis_ints(cyclo_field(p, target_n), s, dgt, sub)


def solve_padic_linear(mat, rhs, p):
    """Solve a square system over PadicScalar by valuation-pivoted elimination."""
    n = len(mat)
    a = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    perm = list(range(n))
    for col in range(n):
        piv, best = None, None
        for r in range(col, n):
            entry = a[r][col]
            if entry.unit:
                if best is None or entry.val < best:
                    piv, best = r, entry.val
        if piv is None:
            raise PrecisionError(f"singular system at column {col}")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col].unit:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]
