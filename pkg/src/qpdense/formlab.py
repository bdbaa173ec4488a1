"""Structural analysis of forms: order via the partials rank, anisotropy
and smooth-point search over F_p by projective enumeration, linear factors
of reductions, and linear-split recognition for binary forms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .errors import (
    BudgetExceededError,
    CharacteristicDividesDegreeError,
    QpdenseError,
    ZeroFormError,
)
from .forms import (
    IntegralForm,
    LinearSplitForm,
    normalize_linear,
)
from .modular import inv_mod, require_prime, valuation_int
from .padic import PadicContext, zp_roots
from .unipoly import UniPoly, div_exact, squarefree_decomposition


@dataclass(frozen=True)
class PartialsMatrix:
    """Rows = coefficient vectors of the partial derivatives over the
    monomial basis of degree deg(F) - 1."""

    monomials: tuple
    rows: tuple


@dataclass(frozen=True)
class Fp_PointReport:
    """A normalized projective point over F_p with smoothness data."""

    point: tuple[int, ...]
    is_zero_of_F: bool
    nonvanishing_partial_index: int | None


@dataclass(frozen=True)
class AnisotropyReport:
    anisotropic: bool
    points_checked: int
    isotropic_witness: tuple[int, ...] | None = None


def partials_matrix(F: IntegralForm) -> PartialsMatrix:
    partials = [F.partial_derivative(i) for i in range(F.n_vars)]
    monos = sorted({e for g in partials for e in g.terms})
    rows = tuple(
        tuple(g.terms.get(m, 0) for m in monos) for g in partials
    )
    return PartialsMatrix(tuple(monos), rows)


def _rank_rational(rows) -> int:
    mat = [[Fraction(c) for c in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = 1 / mat[row][col]
        for r in range(row + 1, len(mat)):
            if mat[r][col]:
                factor = mat[r][col] * inv
                for c in range(col, cols):
                    mat[r][c] -= factor * mat[row][c]
        rank += 1
        row += 1
        if row == len(mat):
            break
    return rank


def _rank_mod_p(rows, p: int) -> int:
    mat = [[c % p for c in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(cols):
        pivot = next((r for r in range(row, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = inv_mod(mat[row][col], p)
        for r in range(row + 1, len(mat)):
            if mat[r][col]:
                factor = mat[r][col] * inv % p
                for c in range(col, cols):
                    mat[r][c] = (mat[r][c] - factor * mat[row][c]) % p
        rank += 1
        row += 1
        if row == len(mat):
            break
    return rank


def order_of_form(F: IntegralForm, p: int | None = None) -> int:
    """o(F) = rank of the matrix of partial-derivative coefficient vectors,
    over Q (p=None) or over F_p (requires p not dividing deg F)."""
    if F.is_zero or F.degree < 1:
        raise ZeroFormError("order needs a non-zero form of degree >= 1")
    if p is not None:
        require_prime(p)
        if F.degree % p == 0:
            raise CharacteristicDividesDegreeError(
                f"p={p} divides deg(F)={F.degree}: rank criterion unreliable"
            )
    pm = partials_matrix(F)
    if p is None:
        return _rank_rational(pm.rows)
    return _rank_mod_p(pm.rows, p)


def projective_points(n_vars: int, p: int):
    """Normalized projective representatives over F_p in lexicographic
    order on the coordinate tuples (first non-zero coordinate = 1)."""
    for lead in range(n_vars - 1, -1, -1):
        # points (0, ..., 0, 1, *, ..., *) with the 1 in position `lead`
        for rest in product(range(p), repeat=n_vars - 1 - lead):
            yield (0,) * lead + (1,) + rest


def projective_point_count(n_vars: int, p: int) -> int:
    return (p**n_vars - 1) // (p - 1)


def _pow_table(p: int, max_exp: int) -> list[list[int]]:
    table = [[1] * (max_exp + 1) for _ in range(p)]
    for v in range(p):
        for e in range(1, max_exp + 1):
            table[v][e] = table[v][e - 1] * v % p
    return table


def _make_evaluator(F: IntegralForm, p: int):
    """Fast mod-p evaluator using precomputed power tables."""
    table = _pow_table(p, F.degree)
    terms = [(coeff % p, exps) for exps, coeff in F.terms.items() if coeff % p]

    def ev(point):
        total = 0
        for coeff, exps in terms:
            t = coeff
            for v, e in zip(point, exps):
                if e:
                    t = t * table[v][e] % p
            total += t
        return total % p

    return ev


def is_anisotropic_mod_p(
    F: IntegralForm, p: int, budget: int = 10**8
) -> AnisotropyReport:
    """Exhaustive projective check that F has no non-trivial zero mod p."""
    require_prime(p)
    if p**F.n_vars > budget:
        raise BudgetExceededError(
            f"{p}^{F.n_vars} exceeds the enumeration budget {budget}"
        )
    ev = _make_evaluator(F, p)
    count = 0
    for point in projective_points(F.n_vars, p):
        count += 1
        if ev(point) == 0:
            return AnisotropyReport(False, count, point)
    return AnisotropyReport(True, count)


def smooth_point_mod_p(
    F: IntegralForm, p: int, budget: int = 10**8
) -> Fp_PointReport | None:
    """First projective point (in enumeration order) where F vanishes and
    some partial derivative does not; None when no such point exists."""
    require_prime(p)
    if projective_point_count(F.n_vars, p) > budget:
        raise BudgetExceededError("projective enumeration exceeds budget")
    ev = _make_evaluator(F, p)
    partial_evs = [
        _make_evaluator(F.partial_derivative(i), p) for i in range(F.n_vars)
    ]
    for point in projective_points(F.n_vars, p):
        if ev(point) != 0:
            continue
        for i, pev in enumerate(partial_evs):
            if pev(point) != 0:
                return Fp_PointReport(point, True, i)
    return None


# ---------------------------------------------------------------------------
# Linear factors of F mod p
# ---------------------------------------------------------------------------


def _substitute_hyperplane(terms, coeffs, pivot, p, n_vars):
    """Image of the term dict under x_pivot -> -(sum of other coords), mod p.

    Returns a dict over exponent vectors with the pivot slot forced to 0;
    zero dict iff the linear form divides F mod p.
    """
    # replacement polynomial for x_pivot (coeffs normalized, coeffs[pivot]=1)
    repl = {}
    for i, c in enumerate(coeffs):
        if i != pivot and c % p:
            e = [0] * n_vars
            e[i] = 1
            repl[tuple(e)] = (-c) % p
    out: dict[tuple, int] = {}
    for exps, coeff in terms.items():
        piece = {tuple(0 if i == pivot else e for i, e in enumerate(exps)): coeff % p}
        for _ in range(exps[pivot]):
            nxt: dict[tuple, int] = {}
            for e1, c1 in piece.items():
                for e2, c2 in repl.items():
                    key = tuple(a + b for a, b in zip(e1, e2))
                    nxt[key] = (nxt.get(key, 0) + c1 * c2) % p
            piece = nxt
        for e, c in piece.items():
            out[e] = (out.get(e, 0) + c) % p
    return {e: c for e, c in out.items() if c}


def _divide_by_linear_mod_p(terms, coeffs, pivot, p, n_vars):
    """Exact quotient of the term dict by the linear form, as a term dict.

    Synthetic division in the pivot variable: works whenever the linear
    form divides F mod p (checked by the caller via substitution).
    """
    max_deg = max((e[pivot] for e in terms), default=0)
    # layers[d] = terms of pivot-degree d with the pivot exponent dropped
    layers: list[dict] = [dict() for _ in range(max_deg + 1)]
    for exps, coeff in terms.items():
        reduced = exps[:pivot] + (0,) + exps[pivot + 1 :]
        layers[exps[pivot]][reduced] = (
            layers[exps[pivot]].get(reduced, 0) + coeff
        ) % p
    rest = {}
    for i, c in enumerate(coeffs):
        if i != pivot and c % p:
            e = [0] * n_vars
            e[i] = 1
            rest[tuple(e)] = c % p
    quot_layers: list[dict] = [dict() for _ in range(max_deg)]
    carry: dict = {}
    for d in range(max_deg, 0, -1):
        cur = dict(layers[d])
        for e, c in carry.items():
            cur[e] = (cur.get(e, 0) + c) % p
        quot_layers[d - 1] = {e: c % p for e, c in cur.items() if c % p}
        carry = {}
        for e1, c1 in quot_layers[d - 1].items():
            for e2, c2 in rest.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                carry[key] = (carry.get(key, 0) - c1 * c2) % p
    out = {}
    for d, layer in enumerate(quot_layers):
        for e, c in layer.items():
            exps = list(e)
            exps[pivot] = d
            out[tuple(exps)] = c
    return {e: c for e, c in out.items() if c}


def linear_factors_mod_p(
    F: IntegralForm, p: int, budget: int = 10**8
) -> list[tuple[tuple[int, ...], int]]:
    """All linear factors of F mod p with exact multiplicities.

    Candidates are the normalized hyperplanes (first non-zero coefficient 1);
    divisibility is tested by substitution and multiplicities by repeated
    exact division.
    """
    require_prime(p)
    terms = F.reduce_terms_mod(p)
    if not terms:
        raise ZeroFormError("form vanishes mod p")
    if projective_point_count(F.n_vars, p) > budget:
        raise BudgetExceededError("hyperplane candidate count exceeds budget")
    n = F.n_vars
    out = []
    for coeffs in projective_points(n, p):
        pivot = next(i for i, c in enumerate(coeffs) if c)
        if _substitute_hyperplane(terms, coeffs, pivot, p, n):
            continue
        mult = 0
        current = terms
        while True:
            current = _divide_by_linear_mod_p(current, coeffs, pivot, p, n)
            mult += 1
            if not current or _substitute_hyperplane(current, coeffs, pivot, p, n):
                break
        out.append((coeffs, mult))
    return out


def cofactor_of_linear_mod_p(
    F: IntegralForm, coeffs: tuple[int, ...], p: int
) -> dict | None:
    """Quotient terms of F by the linear form mod p, or None if it does
    not divide."""
    terms = F.reduce_terms_mod(p)
    pivot = next((i for i, c in enumerate(coeffs) if c % p), None)
    if pivot is None:
        return None
    if _substitute_hyperplane(terms, coeffs, pivot, p, F.n_vars):
        return None
    return _divide_by_linear_mod_p(terms, coeffs, pivot, p, F.n_vars)


# ---------------------------------------------------------------------------
# Binary linear-split recognition
# ---------------------------------------------------------------------------


def _integer_roots(g: UniPoly) -> list[int]:
    """Integer roots of a squarefree integer polynomial, without factoring
    coefficients: roots mod a good prime are lifted past the Cauchy bound
    and checked exactly."""
    from .modular import is_prime
    from .unipoly import resultant as _resultant

    if g.degree < 1:
        return []
    if g[0] == 0:
        rest = UniPoly(g.coeffs[1:])
        roots = _integer_roots(rest) if rest.degree >= 1 else []
        return sorted(set(roots) | {0})
    bound = 2 + max(abs(c) for c in g.coeffs) // abs(g.leading)
    disc = _resultant(g, g.derivative())
    p = 3
    while not is_prime(p) or disc % p == 0 or g.leading % p == 0:
        p += 2
    k = 1
    while p**k <= 2 * bound:
        k += 1
    ctx = PadicContext(p, max(k, 2))
    roots = []
    for zr in zp_roots(g, ctx):
        r = zr.residue
        if r > ctx.modulus // 2:
            r -= ctx.modulus
        if abs(r) <= bound and g.evaluate(r) == 0:
            roots.append(r)
    return sorted(set(roots))


def _rational_roots(g: UniPoly) -> list[tuple[int, int]]:
    """Rational roots n/d (lowest terms, d > 0) of a squarefree integer
    polynomial, via monicization h(z) = lc^(deg-1) * g(z/lc)."""
    lc = g.leading
    d = int(g.degree)
    h = UniPoly([c * lc ** (d - 1 - i) for i, c in enumerate(g.coeffs)])
    roots = []
    for z0 in _integer_roots(h):
        den = lc
        num = z0
        cd = gcd(num, den)
        num, den = num // cd, den // cd
        if den < 0:
            num, den = -num, -den
        roots.append((num, den))
    return sorted(set(roots))


def binary_linear_split(F: IntegralForm) -> LinearSplitForm | None:
    """Split a binary form into integer linear factors, or None when an
    irreducible factor of degree >= 2 remains over Q."""
    if F.n_vars != 2:
        raise QpdenseError("binary_linear_split needs a binary form")
    if F.is_zero:
        raise ZeroFormError("zero form")
    content, prim = F.content_and_primitive()
    # multiplicity of the factor y = gap between deg F and deg F(x, 1)
    u = prim.specialize(0, (1,))
    y_mult = F.degree - int(u.degree)
    factors: list[tuple[tuple[int, int], int]] = []
    if y_mult:
        factors.append(((0, 1), y_mult))
    for g, mult in squarefree_decomposition(u):
        roots = _rational_roots(g)
        if len(roots) < g.degree:
            return None
        for num, den in roots:
            _, prim_lin = normalize_linear((den, -num))
            factors.append((prim_lin, mult))
    for c in (content, -content):
        split = LinearSplitForm(c, factors, 2)
        if split.expand() == F:
            return split
    return None
