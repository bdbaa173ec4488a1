"""Sparse homogeneous multivariate polynomials over Z (integral forms)."""

from __future__ import annotations

from math import gcd

from .errors import DimensionMismatchError, QpdenseError, ZeroFormError
from .unipoly import UniPoly

Exponent = tuple[int, ...]
TermDict = dict[Exponent, int]


def _dict_add(a: TermDict, b: TermDict) -> TermDict:
    out = dict(a)
    for e, c in b.items():
        nc = out.get(e, 0) + c
        if nc:
            out[e] = nc
        else:
            out.pop(e, None)
    return out


def _dict_mul(a: TermDict, b: TermDict) -> TermDict:
    out: TermDict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            nc = out.get(e, 0) + ca * cb
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
    return out


def _dict_pow(a: TermDict, n: int, n_vars: int) -> TermDict:
    result: TermDict = {(0,) * n_vars: 1}
    base = a
    while n:
        if n & 1:
            result = _dict_mul(result, base)
        base = _dict_mul(base, base)
        n >>= 1
    return result


def grlex_key(exps: Exponent):
    """Graded lexicographic sort key (ascending)."""
    return (sum(exps), exps)


class IntegralForm:
    """Homogeneous polynomial with integer coefficients.

    Terms map exponent vectors (length n_vars, summing to `degree`) to
    non-zero coefficients.  Instances are immutable; equality and hashing
    are on the canonical term association.
    """

    __slots__ = ("n_vars", "degree", "terms")

    def __init__(self, n_vars: int, degree: int, terms):
        if n_vars < 1:
            raise QpdenseError("a form needs at least one variable")
        if degree < 0:
            raise QpdenseError("degree must be non-negative")
        clean: TermDict = {}
        for exps, coeff in dict(terms).items():
            coeff = int(coeff)
            if coeff == 0:
                continue
            exps = tuple(int(e) for e in exps)
            if len(exps) != n_vars:
                raise DimensionMismatchError(
                    f"exponent vector {exps} has length {len(exps)}, expected {n_vars}"
                )
            if any(e < 0 for e in exps):
                raise QpdenseError(f"negative exponent in {exps}")
            if sum(exps) != degree:
                raise QpdenseError(
                    f"monomial {exps} has degree {sum(exps)}, form degree is {degree}"
                )
            clean[exps] = clean.get(exps, 0) + coeff
        clean = {e: c for e, c in clean.items() if c}
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", dict(clean))

    def __setattr__(self, *args):
        raise AttributeError("IntegralForm is immutable")

    @classmethod
    def from_terms(cls, n_vars: int, terms: TermDict) -> "IntegralForm":
        """Build a form inferring the degree from the terms (non-empty)."""
        degs = {sum(e) for e in terms if terms[e]}
        if not degs:
            raise ZeroFormError("cannot infer the degree of an empty form")
        if len(degs) > 1:
            raise QpdenseError(f"mixed degrees {sorted(degs)}: not homogeneous")
        return cls(n_vars, degs.pop(), terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        """Terms in descending graded-lex order (canonical)."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, IntegralForm)
            and self.n_vars == other.n_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n_vars, tuple(self.sorted_terms())))

    def __repr__(self):
        from .parser import format_form

        return f"IntegralForm({format_form(self)})"

    # -- ring-ish helpers ------------------------------------------------

    def __add__(self, other: "IntegralForm") -> "IntegralForm":
        if self.n_vars != other.n_vars:
            raise DimensionMismatchError("variable count mismatch")
        if not self.is_zero and not other.is_zero and self.degree != other.degree:
            raise QpdenseError("adding forms of different degrees")
        deg = other.degree if self.is_zero else self.degree
        return IntegralForm(self.n_vars, deg, _dict_add(self.terms, other.terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntegralForm(
                self.n_vars,
                self.degree,
                {e: c * other for e, c in self.terms.items()},
            )
        if self.n_vars != other.n_vars:
            raise DimensionMismatchError("variable count mismatch")
        return IntegralForm(
            self.n_vars,
            self.degree + other.degree,
            _dict_mul(self.terms, other.terms),
        )

    __rmul__ = __mul__

    def __neg__(self) -> "IntegralForm":
        return self * -1

    def __pow__(self, n: int) -> "IntegralForm":
        if n < 0:
            raise QpdenseError("negative form power")
        return IntegralForm(
            self.n_vars, self.degree * n, _dict_pow(self.terms, n, self.n_vars)
        )

    # -- operations ------------------------------------------------------

    def evaluate(self, point, modulus: int | None = None) -> int:
        """Exact value at an integer point, reduced mod `modulus` if given."""
        point = tuple(point)
        if len(point) != self.n_vars:
            raise DimensionMismatchError(
                f"point has {len(point)} coordinates, form has {self.n_vars} variables"
            )
        total = 0
        if modulus is None:
            for exps, coeff in self.terms.items():
                term = coeff
                for v, e in zip(point, exps):
                    if e:
                        term *= v**e
                total += term
            return total
        for exps, coeff in self.terms.items():
            term = coeff % modulus
            for v, e in zip(point, exps):
                if e:
                    term = term * pow(v, e, modulus) % modulus
            total = (total + term) % modulus
        return total

    def partial_derivative(self, i: int) -> "IntegralForm":
        """Formal d/dx_i; may be the zero form (of degree max(d-1, 0))."""
        if not 0 <= i < self.n_vars:
            raise DimensionMismatchError(f"variable index {i} out of range")
        terms: TermDict = {}
        for exps, coeff in self.terms.items():
            if exps[i] == 0:
                continue
            new = list(exps)
            new[i] -= 1
            terms[tuple(new)] = coeff * exps[i]
        return IntegralForm(self.n_vars, max(self.degree - 1, 0), terms)

    def specialize(self, free_var: int, values) -> UniPoly:
        """Fix all variables except `free_var` at the given integers."""
        values = tuple(values)
        if len(values) != self.n_vars - 1:
            raise DimensionMismatchError(
                f"need {self.n_vars - 1} values, got {len(values)}"
            )
        if not 0 <= free_var < self.n_vars:
            raise DimensionMismatchError(f"variable index {free_var} out of range")
        point = list(values[:free_var]) + [0] + list(values[free_var:])
        coeffs = [0] * (self.degree + 1)
        for exps, coeff in self.terms.items():
            term = coeff
            for j, e in enumerate(exps):
                if j != free_var and e:
                    term *= point[j] ** e
            coeffs[exps[free_var]] += term
        return UniPoly(coeffs)

    def content_and_primitive(self) -> tuple[int, "IntegralForm"]:
        """Positive content and the primitive part (sign stays on the form)."""
        if self.is_zero:
            raise ZeroFormError("content of the zero form")
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        prim = IntegralForm(
            self.n_vars, self.degree, {e: c // g for e, c in self.terms.items()}
        )
        return g, prim

    def reduce_terms_mod(self, p: int) -> TermDict:
        """Non-zero terms of the reduction mod p."""
        out = {}
        for e, c in self.terms.items():
            r = c % p
            if r:
                out[e] = r
        return out

    def max_coordinate_degree(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)


def form_from_unipoly_binary(f: UniPoly, degree: int) -> IntegralForm:
    """Homogenize a univariate polynomial of degree <= `degree` into a
    binary form: sum c_j x^j y^(degree-j)."""
    if f.degree > degree:
        raise QpdenseError("polynomial degree exceeds target form degree")
    terms = {(j, degree - j): c for j, c in enumerate(f.coeffs) if c}
    return IntegralForm(2, degree, terms)


def linear_form(n_vars: int, coeffs) -> IntegralForm:
    coeffs = tuple(coeffs)
    if len(coeffs) != n_vars:
        raise DimensionMismatchError("coefficient vector length mismatch")
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * n_vars
            e[i] = 1
            terms[tuple(e)] = c
    return IntegralForm(n_vars, 1, terms)


def monomial_form(n_vars: int, exps, coeff: int = 1) -> IntegralForm:
    exps = tuple(exps)
    return IntegralForm(n_vars, sum(exps), {exps: coeff})


def normalize_linear(coeffs: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Primitive, sign-normalized linear coefficients: returns (unit, coeffs)
    with unit in {1, -1} so that unit * coeffs == input / content."""
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g == 0:
        raise ZeroFormError("zero linear form")
    prim = tuple(c // g for c in coeffs)
    lead = next(c for c in prim if c)
    if lead < 0:
        return -1, tuple(-c for c in prim)
    return 1, prim


class LinearSplitForm:
    """A form kept as content * prod of (primitive linear form)^multiplicity.

    Used both for families born in factored shape and for splits recognized
    on binary forms; expansion reproduces the IntegralForm exactly.
    """

    __slots__ = ("content", "factors", "n_vars")

    def __init__(self, content: int, factors, n_vars: int):
        if content == 0:
            raise ZeroFormError("zero content in a split form")
        norm = []
        for coeffs, mult in factors:
            coeffs = tuple(int(c) for c in coeffs)
            if len(coeffs) != n_vars:
                raise DimensionMismatchError("linear factor length mismatch")
            if mult < 1:
                raise QpdenseError("factor multiplicity must be positive")
            unit, prim = normalize_linear(coeffs)
            if unit != 1 or prim != coeffs:
                raise QpdenseError(
                    f"factor {coeffs} is not primitive and sign-normalized"
                )
            norm.append((coeffs, int(mult)))
        object.__setattr__(self, "content", int(content))
        object.__setattr__(self, "factors", tuple(norm))
        object.__setattr__(self, "n_vars", n_vars)

    def __setattr__(self, *args):
        raise AttributeError("LinearSplitForm is immutable")

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    def expand(self) -> IntegralForm:
        acc: TermDict = {(0,) * self.n_vars: self.content}
        for coeffs, mult in self.factors:
            lf = linear_form(self.n_vars, coeffs)
            acc = _dict_mul(acc, _dict_pow(lf.terms, mult, self.n_vars))
        return IntegralForm(self.n_vars, self.degree, acc)

    def evaluate(self, point, modulus: int | None = None) -> int:
        point = tuple(point)
        if len(point) != self.n_vars:
            raise DimensionMismatchError("point length mismatch")
        total = self.content
        for coeffs, mult in self.factors:
            v = sum(c * x for c, x in zip(coeffs, point))
            if modulus is None:
                total *= v**mult
            else:
                total = total * pow(v, mult, modulus) % modulus
        return total % modulus if modulus is not None else total

    def __eq__(self, other):
        return (
            isinstance(other, LinearSplitForm)
            and self.content == other.content
            and sorted(self.factors) == sorted(other.factors)
            and self.n_vars == other.n_vars
        )

    def __repr__(self):
        facs = " * ".join(f"{c}^{m}" for c, m in self.factors)
        return f"LinearSplitForm({self.content} * {facs})"


class SplitPolynomial:
    """A univariate polynomial kept as content * prod (a*x + b)^multiplicity."""

    __slots__ = ("content", "factors")

    def __init__(self, content: int, factors):
        if content == 0:
            raise ZeroFormError("zero content in a split polynomial")
        norm = []
        for (a, b), mult in factors:
            if mult < 1:
                raise QpdenseError("factor multiplicity must be positive")
            unit, prim = normalize_linear((int(a), int(b)))
            if unit != 1 or prim != (a, b):
                raise QpdenseError(f"factor ({a}, {b}) is not normalized")
            norm.append(((int(a), int(b)), int(mult)))
        object.__setattr__(self, "content", int(content))
        object.__setattr__(self, "factors", tuple(norm))

    def __setattr__(self, *args):
        raise AttributeError("SplitPolynomial is immutable")

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.factors)

    def expand(self) -> UniPoly:
        f = UniPoly((self.content,))
        for (a, b), mult in self.factors:
            f = f * (UniPoly((b, a)) ** mult)
        return f

    def evaluate(self, x: int, modulus: int | None = None) -> int:
        total = self.content
        for (a, b), mult in self.factors:
            v = a * x + b
            if modulus is None:
                total *= v**mult
            else:
                total = total * pow(v, mult, modulus) % modulus
        return total % modulus if modulus is not None else total

    def __eq__(self, other):
        return (
            isinstance(other, SplitPolynomial)
            and self.content == other.content
            and sorted(self.factors) == sorted(other.factors)
        )

    def __repr__(self):
        facs = " * ".join(f"({a}*x+{b})^{m}" for (a, b), m in self.factors)
        return f"SplitPolynomial({self.content} * {facs})"
