"""Dense univariate polynomials over Z or Z/m, with the exact machinery
used everywhere else: resultants, discriminants, squarefree decomposition,
and factorization over prime fields."""

from __future__ import annotations

import random
from math import gcd, prod

from .errors import (
    BothZeroError,
    ConstantPolynomialError,
    QpdenseError,
    ZeroFormError,
)
from .modular import inv_mod, require_prime

NEG_INFINITY = float("-inf")


class UniPoly:
    """Immutable dense univariate polynomial.

    Coefficients are arbitrary-precision integers; an optional modulus m
    keeps every coefficient as a canonical residue in [0, m).  The zero
    polynomial has an empty coefficient tuple and degree NEG_INFINITY.
    """

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs, modulus: int | None = None):
        if modulus is not None and modulus < 2:
            raise QpdenseError("modulus must be >= 2")
        cs = [int(c) for c in coeffs]
        if modulus is not None:
            cs = [c % modulus for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, *args):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, modulus=None) -> "UniPoly":
        return cls((), modulus)

    @classmethod
    def one(cls, modulus=None) -> "UniPoly":
        return cls((1,), modulus)

    @classmethod
    def x(cls, modulus=None) -> "UniPoly":
        return cls((0, 1), modulus)

    @classmethod
    def monomial(cls, coeff: int, exp: int, modulus=None) -> "UniPoly":
        return cls((0,) * exp + (coeff,), modulus)

    @classmethod
    def from_roots(cls, roots, modulus=None) -> "UniPoly":
        f = cls.one(modulus)
        for r in roots:
            f = f * cls((-r, 1), modulus)
        return f

    # -- basic structure ----------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise ZeroFormError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.coeffs == other.coeffs
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.coeffs, self.modulus))

    def __repr__(self):
        if self.is_zero:
            return "UniPoly(0)"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{e}" if c != 1 else f"x^{e}")
        s = " + ".join(parts).replace("+ -", "- ")
        return f"UniPoly({s})" + (f" mod {self.modulus}" if self.modulus else "")

    def _check_compat(self, other: "UniPoly") -> None:
        if self.modulus != other.modulus:
            raise QpdenseError("mixed moduli in polynomial arithmetic")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check_compat(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [self[i] + other[i] for i in range(n)], self.modulus
        )

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        self._check_compat(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [self[i] - other[i] for i in range(n)], self.modulus
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.modulus)

    def __mul__(self, other):
        if isinstance(other, int):
            return UniPoly([c * other for c in self.coeffs], self.modulus)
        self._check_compat(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(self.modulus)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise QpdenseError("negative polynomial power")
        result = UniPoly.one(self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def evaluate(self, x: int, modulus: int | None = None) -> int:
        """Horner evaluation; reduced mod `modulus` when given."""
        acc = 0
        if modulus is None:
            for c in reversed(self.coeffs):
                acc = acc * x + c
        else:
            x %= modulus
            for c in reversed(self.coeffs):
                acc = (acc * x + c) % modulus
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(
            [i * c for i, c in enumerate(self.coeffs)][1:], self.modulus
        )

    def reduce(self, m: int) -> "UniPoly":
        """Image with coefficients reduced into [0, m)."""
        return UniPoly(self.coeffs, m)

    def lift(self) -> "UniPoly":
        """Forget the modulus, keeping canonical residues as integers."""
        return UniPoly(self.coeffs, None)

    def shift_scale(self, a: int, b: int) -> "UniPoly":
        """Compose with the affine map x -> a*x + b."""
        acc = UniPoly.zero(self.modulus)
        lin = UniPoly((b, a), self.modulus)
        for c in reversed(self.coeffs):
            acc = acc * lin + UniPoly((c,), self.modulus)
        return acc

    # -- integer content ------------------------------------------------

    def content(self) -> int:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "UniPoly":
        """Divide out the content, keeping the leading sign."""
        if self.is_zero:
            return self
        g = self.content()
        return UniPoly([c // g for c in self.coeffs], self.modulus)

    def div_exact_int(self, d: int) -> "UniPoly":
        for c in self.coeffs:
            if c % d:
                raise QpdenseError("inexact integer division of polynomial")
        return UniPoly([c // d for c in self.coeffs], self.modulus)


# ---------------------------------------------------------------------------
# Division over Z and over prime fields
# ---------------------------------------------------------------------------


def pseudo_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Pseudo-division over Z: lc(b)^(da-db+1) * a = q*b + r, deg r < deg b."""
    if b.is_zero:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    da, db = a.degree, b.degree
    if a.is_zero or da < db:
        return UniPoly.zero(), a
    da, db = int(da), int(db)
    r = list(a.coeffs)
    q = [0] * (da - db + 1)
    lb = b.leading
    for k in range(da - db, -1, -1):
        # invariant step: r <- lb*r - r[db+k]*x^k*b, q <- lb*q + r[db+k]*x^k
        qk = r[db + k]
        for i in range(len(r)):
            r[i] *= lb
        for i in range(len(q)):
            q[i] *= lb
        q[k] += qk
        if qk:
            for i in range(db + 1):
                r[i + k] -= qk * b.coeffs[i]
    return UniPoly(q), UniPoly(r[:db])


def prem(a: UniPoly, b: UniPoly) -> UniPoly:
    return pseudo_divmod(a, b)[1]


def div_exact(a: UniPoly, b: UniPoly) -> UniPoly:
    """Exact division over Z; raises when b does not divide a."""
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero:
        return a
    if a.modulus is not None or b.modulus is not None:
        raise QpdenseError("exact division is an integer-coefficient operation")
    r = list(a.coeffs)
    db = int(b.degree)
    da = int(a.degree)
    if da < db:
        raise QpdenseError("inexact polynomial division")
    q = [0] * (da - db + 1)
    lb = b.leading
    for k in range(da - db, -1, -1):
        coef = r[db + k]
        if coef % lb:
            raise QpdenseError("inexact polynomial division")
        c = coef // lb
        q[k] = c
        if c:
            for i in range(db + 1):
                r[i + k] -= c * b.coeffs[i]
    if any(r):
        raise QpdenseError("inexact polynomial division")
    return UniPoly(q)


def divmod_mod_p(a: UniPoly, b: UniPoly, p: int) -> tuple[UniPoly, UniPoly]:
    """Division with remainder in F_p[x]."""
    ac = [c % p for c in a.coeffs]
    bc = [c % p for c in b.coeffs]
    while bc and bc[-1] == 0:
        bc.pop()
    if not bc:
        raise ZeroDivisionError("division by zero polynomial mod p")
    while ac and ac[-1] == 0:
        ac.pop()
    db = len(bc) - 1
    if len(ac) - 1 < db:
        return UniPoly.zero(p), UniPoly(ac, p)
    inv_lb = inv_mod(bc[-1], p)
    q = [0] * (len(ac) - db)
    for k in range(len(ac) - db - 1, -1, -1):
        c = ac[db + k] * inv_lb % p
        q[k] = c
        if c:
            for i in range(db + 1):
                ac[i + k] = (ac[i + k] - c * bc[i]) % p
    return UniPoly(q, p), UniPoly(ac[:db], p)


def gcd_mod_p(a: UniPoly, b: UniPoly, p: int) -> UniPoly:
    """Monic gcd in F_p[x]."""
    a = a.reduce(p)
    b = b.reduce(p)
    while not b.is_zero:
        a, b = b, divmod_mod_p(a, b, p)[1]
    if a.is_zero:
        return a
    return a * inv_mod(a.leading, p)


def gcd_z(a: UniPoly, b: UniPoly) -> UniPoly:
    """Primitive gcd over Z (positive leading coefficient) scaled by the
    gcd of the contents."""
    if a.is_zero:
        return b if b.is_zero or b.leading > 0 else -b
    if b.is_zero:
        return a if a.leading > 0 else -a
    ca, cb = a.content(), b.content()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        r = prem(a, b)
        a, b = b, r.primitive() if not r.is_zero else r
    if a.leading < 0:
        a = -a
    return a * gcd(ca, cb)


# ---------------------------------------------------------------------------
# Resultant and discriminant
# ---------------------------------------------------------------------------


def sylvester_matrix(f: UniPoly, g: UniPoly) -> list[list[int]]:
    m, n = int(f.degree), int(g.degree)
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return rows


def det_bareiss(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def sylvester_resultant(f: UniPoly, g: UniPoly) -> int:
    """Resultant as the Sylvester determinant (test oracle path)."""
    if f.is_zero and g.is_zero:
        raise BothZeroError("resultant of two zero polynomials")
    if f.is_zero or g.is_zero:
        return 0
    if f.degree == 0 and g.degree == 0:
        return 1
    if f.degree == 0:
        return f.leading ** int(g.degree)
    if g.degree == 0:
        return g.leading ** int(f.degree)
    return det_bareiss(sylvester_matrix(f, g))


def resultant(f: UniPoly, g: UniPoly) -> int:
    """Resultant over Z by the fraction-free subresultant PRS."""
    if f.modulus is not None or g.modulus is not None:
        raise QpdenseError("resultant is an integer-coefficient operation")
    if f.is_zero and g.is_zero:
        raise BothZeroError("resultant of two zero polynomials")
    if f.is_zero or g.is_zero:
        return 0
    if f.degree == 0 and g.degree == 0:
        return 1
    if f.degree == 0:
        return f.leading ** int(g.degree)
    if g.degree == 0:
        return g.leading ** int(f.degree)
    A, B = f, g
    s = 1
    if A.degree < B.degree:
        if (int(A.degree) * int(B.degree)) % 2 == 1:
            s = -1
        A, B = B, A
    ca, cb = A.content(), B.content()
    A, B = A.primitive(), B.primitive()
    t = s * ca ** int(B.degree) * cb ** int(A.degree)
    g_, h = 1, 1
    while True:
        dA, dB = int(A.degree), int(B.degree)
        delta = dA - dB
        if (dA * dB) % 2 == 1:
            t = -t
        R = prem(A, B)
        if R.is_zero:
            return 0
        A = B
        denom = g_ * h**delta
        B = R.div_exact_int(denom)
        g_ = A.leading
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            num = g_**delta
            if num % (h ** (delta - 1)):
                raise QpdenseError("subresultant bookkeeping failure")
            h = num // h ** (delta - 1)
        if B.degree == 0:
            dA2 = int(A.degree)
            num = B.leading ** dA2
            if dA2 >= 1:
                if num % (h ** (dA2 - 1)):
                    raise QpdenseError("subresultant bookkeeping failure")
                final = num // h ** (dA2 - 1)
            else:
                final = num
            return t * final


def discriminant(f: UniPoly) -> int:
    """D(f) = (-1)^(n(n-1)/2) * Res(f, f') / lc(f); zero iff repeated roots."""
    if f.modulus is not None:
        raise QpdenseError("discriminant is an integer-coefficient operation")
    if f.is_zero or f.degree < 1:
        raise ConstantPolynomialError("discriminant needs degree >= 1")
    n = int(f.degree)
    r = resultant(f, f.derivative())
    lc = f.leading
    if r % lc:
        raise QpdenseError("resultant not divisible by leading coefficient")
    return (-1) ** (n * (n - 1) // 2) * (r // lc)


# ---------------------------------------------------------------------------
# Squarefree decomposition over Z (Yun)
# ---------------------------------------------------------------------------


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Write f = content * prod g_i^(e_i) with the g_i primitive, squarefree
    and pairwise coprime; returns the [(g_i, e_i)] part."""
    if f.is_zero:
        raise ZeroFormError("squarefree decomposition of zero")
    if f.modulus is not None:
        raise QpdenseError("squarefree decomposition over Z only")
    if f.degree == 0:
        return []
    fp = f.primitive()
    if fp.leading < 0:
        fp = -fp
    d = fp.derivative()
    g = gcd_z(fp, d)
    if g.degree == 0:
        return [(fp, 1)]
    out = []
    w = div_exact(fp, g)
    y = div_exact(d, g)
    z = y - w.derivative()
    i = 1
    while w.degree > 0:
        gi = gcd_z(w, z)
        if gi.degree > 0:
            out.append((gi, i))
            w = div_exact(w, gi)
            y = div_exact(z, gi)
        else:
            y = z
        z = y - w.derivative()
        i += 1
    return out


def content_of(f: UniPoly) -> int:
    """Signed content so that f = content_of(f) * prod of positive-leading
    primitive squarefree factors."""
    if f.is_zero:
        return 0
    c = f.content()
    return c if f.leading > 0 else -c


# ---------------------------------------------------------------------------
# Arithmetic mod p on raw coefficient lists (hot paths)
# ---------------------------------------------------------------------------


def _gf_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _gf_monic(c: list[int], p: int) -> list[int]:
    if not c:
        return c
    inv = inv_mod(c[-1], p)
    return [x * inv % p for x in c]


def _gf_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _gf_trim([c % p for c in out])


def _gf_rem(a: list[int], f: list[int], p: int) -> list[int]:
    """Remainder of a by monic f, coefficients mod p."""
    a = a[:]
    df = len(f) - 1
    for k in range(len(a) - 1 - df, -1, -1):
        c = a[df + k] % p
        if c:
            for i in range(df):
                a[i + k] = (a[i + k] - c * f[i]) % p
        a[df + k] = 0
    return _gf_trim([c % p for c in a[:df]])


def _gf_mulmod(a, b, f, p):
    return _gf_rem(_gf_mul(a, b, p), f, p)


def _gf_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _gf_rem(base, f, p)
    while e:
        if e & 1:
            result = _gf_mulmod(result, base, f, p)
        base = _gf_mulmod(base, base, f, p)
        e >>= 1
    return result


def _gf_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        bm = _gf_monic(b, p)
        a, b = b, _gf_rem(a, bm, p)
    return _gf_monic(a, p)


def gf_roots(coeffs: list[int], p: int, seed: int = 0) -> list[int]:
    """Distinct roots in F_p of the polynomial with the given coefficients.

    Uses gcd(x^p - x, f) followed by equal-degree splitting; built for the
    prime-scanner hot loop, so it works on raw lists.
    """
    c = _gf_trim([x % p for x in coeffs])
    if not c:
        raise ZeroFormError("polynomial vanishes mod p")
    if len(c) == 1:
        return []
    f = _gf_monic(c, p)
    if p <= 3 or len(f) <= 2:
        if len(f) == 2:
            return [(-f[0]) % p]
        return sorted(r for r in range(p) if _gf_eval(f, r, p) == 0)
    xp = _gf_powmod([0, 1], p, f, p)
    xp_minus_x = xp[:]
    while len(xp_minus_x) < 2:
        xp_minus_x.append(0)
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _gf_gcd(f, _gf_trim(xp_minus_x), p)
    if len(g) <= 1:
        return []
    roots: list[int] = []
    rng = random.Random(seed)
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) == 2:
            roots.append((-h[0]) % p)
            continue
        if h[0] == 0:
            roots.append(0)
            h = _gf_trim(h[1:])
            if len(h) >= 2:
                stack.append(_gf_monic(h, p))
            continue
        while True:
            a = rng.randrange(p)
            t = _gf_powmod([a, 1], (p - 1) // 2, h, p)
            if t:
                t = t[:]
                t[0] = (t[0] - 1) % p
            else:
                t = [p - 1]
            d = _gf_gcd(h, _gf_trim(t), p)
            if 1 <= len(d) - 1 < len(h) - 1:
                stack.append(d)
                stack.append(_gf_monic(_gf_rem_exact(h, d, p), p))
                break
    return sorted(roots)


def _gf_rem_exact(a: list[int], b: list[int], p: int) -> list[int]:
    """Quotient a / b in F_p[x] assuming exact division, b monic."""
    q, r = _gf_divmod(a, b, p)
    if r:
        raise QpdenseError("inexact division in F_p[x]")
    return q


def _gf_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = a[:]
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    inv_lb = inv_mod(b[-1], p)
    q = [0] * (len(a) - db)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[db + k] * inv_lb % p
        q[k] = c
        if c:
            for i in range(db + 1):
                a[i + k] = (a[i + k] - c * b[i]) % p
    return _gf_trim(q), _gf_trim(a[:db])


def _gf_eval(c: list[int], x: int, p: int) -> int:
    acc = 0
    for coef in reversed(c):
        acc = (acc * x + coef) % p
    return acc


# ---------------------------------------------------------------------------
# Factorization over F_p
# ---------------------------------------------------------------------------


def _sqf_mod_p(f: UniPoly, p: int) -> list[tuple[UniPoly, int]]:
    """Squarefree decomposition of a monic polynomial in F_p[x]."""
    out: dict[UniPoly, int] = {}
    c = gcd_mod_p(f, f.derivative(), p)
    w = divmod_mod_p(f, c, p)[0]
    i = 1
    while not (w.degree == 0):
        y = gcd_mod_p(w, c, p)
        fac = divmod_mod_p(w, y, p)[0]
        if fac.degree > 0:
            out[fac] = out.get(fac, 0) + i
        w = y
        c = divmod_mod_p(c, y, p)[0]
        i += 1
    if c.degree > 0:
        # c = v(x^p): take the p-th root coefficientwise (Frobenius is the
        # identity on F_p) and recurse
        root_coeffs = [c[j] for j in range(0, int(c.degree) + 1, p)]
        for fac, m in _sqf_mod_p(UniPoly(root_coeffs, p), p):
            out[fac] = out.get(fac, 0) + m * p
    return sorted(out.items(), key=lambda t: (t[0].degree, t[0].coeffs))


def _ddf(f: UniPoly, p: int) -> list[tuple[UniPoly, int]]:
    """Distinct-degree factorization of a monic squarefree f in F_p[x]."""
    out = []
    fl = list(f.coeffs)
    h = [0, 1]
    d = 0
    while len(fl) - 1 >= 2 * (d + 1):
        d += 1
        h = _gf_powmod(h, p, fl, p)
        hx = h[:]
        while len(hx) < 2:
            hx.append(0)
        hx[1] = (hx[1] - 1) % p
        g = _gf_gcd(fl, _gf_trim(hx), p)
        if len(g) > 1:
            out.append((UniPoly(g, p), d))
            fl = _gf_rem_exact(fl, g, p)
            h = _gf_rem(h, fl, p) if len(fl) > 1 else []
    if len(fl) > 1:
        out.append((UniPoly(fl, p), len(fl) - 1))
    return out


def _edf(f: UniPoly, d: int, p: int, rng: random.Random) -> list[UniPoly]:
    """Equal-degree splitting (Cantor-Zassenhaus) of monic f, all of whose
    irreducible factors have degree d."""
    n = int(f.degree)
    if n == d:
        return [f]
    fl = list(f.coeffs)
    while True:
        r = [rng.randrange(p) for _ in range(n - 1)] + [1]
        if p == 2:
            t = r[:]
            acc = r[:]
            for _ in range(d - 1):
                acc = _gf_mulmod(acc, acc, fl, p)
                t = _gf_trim([(a + b) % p for a, b in
                              zip(t + [0] * len(acc), acc + [0] * len(t))])
            g = _gf_gcd(fl, t, p)
        else:
            s = _gf_powmod(r, (p**d - 1) // 2, fl, p)
            if s:
                s = s[:]
                s[0] = (s[0] - 1) % p
            else:
                s = [p - 1]
            g = _gf_gcd(fl, _gf_trim(s), p)
        if 1 <= len(g) - 1 < n:
            left = UniPoly(g, p)
            right = UniPoly(_gf_monic(_gf_rem_exact(fl, g, p), p), p)
            return _edf(left, d, p, rng) + _edf(right, d, p, rng)


def factor_mod_p(
    f: UniPoly, p: int, seed: int | None = 0
) -> tuple[int, list[tuple[UniPoly, int]]]:
    """Full factorization of f mod p into monic irreducibles.

    Returns (leading unit, [(factor, multiplicity)]); the product of the
    factors times the unit reproduces f mod p.  `seed` fixes the
    equal-degree splitting randomness; pass None for fresh randomness.
    """
    require_prime(p)
    fbar = f.reduce(p)
    if fbar.is_zero:
        raise ZeroFormError("polynomial vanishes mod p")
    unit = fbar.leading
    if fbar.degree == 0:
        return unit, []
    monic = fbar * inv_mod(unit, p)
    rng = random.Random(seed) if seed is not None else random.Random()
    out = []
    for sq_factor, mult in _sqf_mod_p(monic, p):
        for dd_factor, d in _ddf(sq_factor, p):
            for irr in _edf(dd_factor, d, p, rng):
                out.append((irr, mult))
    out.sort(key=lambda t: (t[0].degree, t[0].coeffs))
    return unit, out


def roots_mod_p(f: UniPoly, p: int) -> list[tuple[int, int]]:
    """Roots of f in F_p with multiplicities, from the linear factors."""
    _, factors = factor_mod_p(f, p)
    roots = [((-g[0]) % p, m) for g, m in factors if g.degree == 1]
    return sorted(roots)


def cyclotomic_poly(q: int) -> UniPoly:
    """1 + t + ... + t^(q-1) for prime q."""
    require_prime(q)
    return UniPoly((1,) * q)


def poly_from_factored(content: int, factors) -> UniPoly:
    """Expand content * prod (a*x + b)^mult given [( (a, b), mult ), ...]."""
    f = UniPoly((content,))
    for (a, b), mult in factors:
        f = f * (UniPoly((b, a)) ** mult)
    return f
