"""p-adic valuations, Hensel lifting, and certified Z_p root finding."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DerivativeVanishesError,
    NonCoprimeFactorsError,
    NotARootError,
    PrecisionInsufficientError,
    QpdenseError,
    ZeroFormError,
)
from .modular import inv_mod, require_prime, valuation_int
from .unipoly import (
    UniPoly,
    divmod_mod_p,
    gcd_mod_p,
    resultant,
    roots_mod_p,
    squarefree_decomposition,
)

INFINITY = float("inf")


def valuation(x, p: int):
    """Exact nu_p of an integer or Fraction; nu_p(0) is +infinity."""
    require_prime(p)
    if isinstance(x, Fraction):
        if x == 0:
            return INFINITY
        return valuation_int(x.numerator, p) - valuation_int(x.denominator, p)
    if x == 0:
        return INFINITY
    return valuation_int(int(x), p)


@dataclass(frozen=True)
class PadicContext:
    """A prime together with the working precision k: unit parts are
    carried modulo p^k."""

    p: int
    precision: int = 20

    def __post_init__(self):
        require_prime(self.p)
        if self.precision < 1:
            raise QpdenseError("precision must be >= 1")

    @property
    def modulus(self) -> int:
        return self.p**self.precision


@dataclass(frozen=True)
class PadicApprox:
    """p^valuation * unit known to absolute precision p^(valuation + k)."""

    valuation: int | float
    unit: int | None
    context: PadicContext

    def __post_init__(self):
        if self.valuation == INFINITY:
            if self.unit is not None:
                raise QpdenseError("infinite valuation carries no unit part")
            return
        if self.unit is None or self.unit % self.context.p == 0:
            raise QpdenseError("unit part must be coprime to p")
        if not 0 <= self.unit < self.context.modulus:
            raise QpdenseError("unit part out of range")

    @classmethod
    def from_rational(cls, x, ctx: PadicContext) -> "PadicApprox":
        v = valuation(x, ctx.p)
        if v == INFINITY:
            return cls(INFINITY, None, ctx)
        if isinstance(x, Fraction):
            num = x.numerator // ctx.p ** valuation_int(x.numerator, ctx.p)
            den = x.denominator // ctx.p ** valuation_int(x.denominator, ctx.p)
            unit = num * inv_mod(den, ctx.modulus) % ctx.modulus
        else:
            unit = (int(x) // ctx.p**v) % ctx.modulus
        return cls(v, unit, ctx)

    @property
    def is_zero(self) -> bool:
        return self.valuation == INFINITY

    def __mul__(self, other: "PadicApprox") -> "PadicApprox":
        if self.context != other.context:
            raise QpdenseError("mixed p-adic contexts")
        if self.is_zero or other.is_zero:
            return PadicApprox(INFINITY, None, self.context)
        return PadicApprox(
            self.valuation + other.valuation,
            self.unit * other.unit % self.context.modulus,
            self.context,
        )

    def __repr__(self):
        if self.is_zero:
            return "PadicApprox(0)"
        return f"PadicApprox({self.context.p}^{self.valuation} * {self.unit})"


@dataclass(frozen=True)
class ZpRoot:
    """A Z_p root of an integer polynomial, carried mod p^k."""

    residue: int
    multiplicity: int
    context: PadicContext
    separation_certified: bool = True

    def as_padic(self) -> PadicApprox:
        return PadicApprox.from_rational(self.residue, self.context)


def hensel_lift_simple(f: UniPoly, r0: int, ctx: PadicContext) -> int:
    """Newton-lift a simple root mod p to a root mod p^k.

    Requires f(r0) = 0 mod p and f'(r0) != 0 mod p; the result is the
    unique root of f mod p^k congruent to r0 mod p.
    """
    p, k = ctx.p, ctx.precision
    r0 %= p
    if f.evaluate(r0, p) != 0:
        raise NotARootError(f"{r0} is not a root of f modulo {p}")
    deriv = f.derivative()
    if deriv.evaluate(r0, p) == 0:
        raise DerivativeVanishesError(f"f'({r0}) vanishes modulo {p}")
    r = r0
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        m = p**prec
        r = (r - f.evaluate(r, m) * inv_mod(deriv.evaluate(r, m), m)) % m
    return r


def hensel_factor(
    f: UniPoly, g0: UniPoly, h0: UniPoly, ctx: PadicContext
) -> tuple[UniPoly, UniPoly]:
    """Lift a coprime factorization f = g0*h0 mod p to mod p^k.

    g0 must be monic mod p; returns (G, H) with G monic, G = g0 and
    H = h0 mod p, and G*H = f mod p^k.
    """
    p, k = ctx.p, ctx.precision
    g0 = g0.reduce(p)
    h0 = h0.reduce(p)
    if g0.is_zero or g0.leading != 1:
        raise QpdenseError("g0 must be monic mod p")
    if not (f.reduce(p) == (g0 * h0).reduce(p)):
        raise QpdenseError("f does not reduce to g0*h0 mod p")
    if gcd_mod_p(g0, h0, p).degree != 0:
        raise NonCoprimeFactorsError("seed factors share a common factor mod p")
    # Bezout: a*g0 + b*h0 = 1 mod p
    a, b = _bezout_mod_p(g0, h0, p)
    G = g0.lift()
    H = h0.lift()
    fz = f.lift()
    for i in range(1, k):
        m = p**i
        mm = p ** (i + 1)
        diff = fz - G * H
        d = UniPoly([(c // m) % p for c in diff.coeffs], p)
        q, s = divmod_mod_p(b * d, g0, p)
        t = (a.lift() * d.lift() + q.lift() * h0.lift()).reduce(p)
        G = UniPoly([(cg + m * cs) % mm for cg, cs in _zip_coeffs(G, s.lift())])
        H = UniPoly([(ch + m * ct) % mm for ch, ct in _zip_coeffs(H, t.lift())])
    modulus = ctx.modulus
    return G.reduce(modulus), H.reduce(modulus)


def _zip_coeffs(a: UniPoly, b: UniPoly):
    n = max(len(a.coeffs), len(b.coeffs))
    return [(a[i], b[i]) for i in range(n)]


def _bezout_mod_p(g: UniPoly, h: UniPoly, p: int) -> tuple[UniPoly, UniPoly]:
    """a, b with a*g + b*h = 1 in F_p[x]."""
    r0, r1 = g.reduce(p), h.reduce(p)
    a0, a1 = UniPoly.one(p), UniPoly.zero(p)
    b0, b1 = UniPoly.zero(p), UniPoly.one(p)
    while not r1.is_zero:
        q, r = divmod_mod_p(r0, r1, p)
        r0, r1 = r1, r
        a0, a1 = a1, a0 - q * a1
        b0, b1 = b1, b0 - q * b1
    if r0.degree != 0:
        raise NonCoprimeFactorsError("polynomials are not coprime mod p")
    inv = inv_mod(r0.leading, p)
    return a0 * inv, b0 * inv


def _refine_certified(g: UniPoly, a: int, mu: int, p: int, k: int) -> int:
    """Newton refinement of a candidate a with nu(g(a)) > 2*mu where
    mu = nu(g'(a)); returns the root residue mod p^k."""
    work = p ** (k + 2 * mu + 1)
    pmu = p**mu
    r = a % work
    deriv = g.derivative()
    target = p ** (k + mu)
    for _ in range(64):
        val = g.evaluate(r) % work
        if val % target == 0:
            return r % p**k
        dv = deriv.evaluate(r) % work
        r = (r - (val // pmu) * inv_mod(dv // pmu, work)) % work
    raise QpdenseError("Newton refinement failed to converge")


def zp_roots(f: UniPoly, ctx: PadicContext) -> list[ZpRoot]:
    """All roots of f in Z_p with multiplicities, certified mod p^k.

    Squarefree-decompose over Z; for each squarefree factor g run a
    breadth-first refinement of residues mod p^j.  A candidate class is
    certified once its level j exceeds twice nu_p(g'(a)) (the generalized
    Newton condition), which guarantees a unique root in the class; the
    refinement depth is capped by 2*nu_p(Res(g, g')) + 1, past which no
    uncertified class can contain a root.  The multiplicity of each root
    is the multiplicity of its squarefree factor.
    """
    if f.is_zero:
        raise ZeroFormError("zero polynomial")
    if f.modulus is not None:
        raise QpdenseError("zp_roots expects integer coefficients")
    p, k = ctx.p, ctx.precision
    roots: list[ZpRoot] = []
    for g, mult in squarefree_decomposition(f):
        if g.degree == 0:
            continue
        res = resultant(g, g.derivative())
        if res == 0:
            raise QpdenseError("squarefree factor with vanishing discriminant")
        delta = valuation_int(res, p)
        # BFS depth needed to certify every Z_p root of g, independent of
        # the output precision; distinct roots of g differ mod p^(delta+1),
        # so refining to that depth makes deduplication exact (a certified
        # class can Newton-converge to a root outside the class)
        depth_cap = 2 * delta + 1
        refine_prec = max(k, delta + 1)
        deriv = g.derivative()
        found: dict[int, int] = {}
        level = [(r, 1) for r, _ in roots_mod_p(g, p)]
        while level:
            a, j = level.pop(0)
            dva = deriv.evaluate(a)
            # g squarefree: g(a) = 0 exactly forces g'(a) != 0, so mu is
            # finite on every class that still contains a root
            mu = INFINITY if dva == 0 else valuation_int(dva, p)
            if mu != INFINITY and j > 2 * mu:
                r_full = _refine_certified(g, a, mu, p, refine_prec)
                found.setdefault(r_full, mult)
                continue
            if j >= depth_cap:
                continue
            step = p**j
            nxt = p ** (j + 1)
            for t in range(p):
                cand = a + t * step
                if g.evaluate(cand, nxt) == 0:
                    level.append((cand, j + 1))
        for r_full, m in found.items():
            roots.append(ZpRoot(r_full % ctx.modulus, m, ctx))
    roots.sort(key=lambda r: r.residue)
    if len({r.residue for r in roots}) != len(roots):
        raise PrecisionInsufficientError(
            f"distinct Z_p roots coincide mod {p}^{k}; raise the precision"
        )
    return roots


def simple_zero_in_zp(f: UniPoly, ctx: PadicContext) -> ZpRoot | None:
    """First multiplicity-1 root from zp_roots, or None."""
    for root in zp_roots(f, ctx):
        if root.multiplicity == 1:
            return root
    return None
