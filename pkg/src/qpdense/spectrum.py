"""Exact valuation spectra of linear-split forms and integer-rooted
polynomials, and the "no quotient of valuation 1" obstruction.

The spectrum of nu_q over the inputs is represented as a union of
components (base, strides): the set {base + sum strides_i * t_i, t_i >= 0}.
For binary forms the spectrum describes primitive inputs and the
homogeneity shift deg(F) is recorded separately; for polynomials the
enumeration runs over all of Z_q and the shift is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .certificates import UnivariateNonvanishing, ValuationObstruction
from .errors import BudgetExceededError, QpdenseError
from .forms import LinearSplitForm, SplitPolynomial
from .modular import require_prime, valuation_int
from .unipoly import UniPoly


@dataclass(frozen=True)
class ValuationSpectrum:
    """components: sorted tuple of (base, strides); homogeneity_stride is
    deg(F) for spectra over primitive form inputs (scaling the input by q
    shifts the valuation by deg F), 0 when already over all inputs."""

    q: int
    components: tuple
    homogeneity_stride: int
    exhaustive_depth: int

    @property
    def finite_values(self) -> tuple[int, ...]:
        return tuple(sorted(b for b, s in self.components if not s))

    @property
    def tails(self) -> tuple:
        return tuple((b, s) for b, s in self.components if s)

    def contains(self, value: int, with_scaling: bool = True) -> bool:
        """Membership of a valuation in the spectrum (over all inputs when
        with_scaling, over primitive inputs otherwise)."""
        for base, strides in self.components:
            s = set(strides)
            if with_scaling and self.homogeneity_stride:
                s.add(self.homogeneity_stride)
            if value == base:
                return True
            if s and value > base and _semigroup_reaches(value - base, tuple(s)):
                return True
        return False


def _semigroup_reaches(target: int, strides: tuple[int, ...]) -> bool:
    """Is target a non-negative integer combination of the strides?"""
    if target == 0:
        return True
    if target < 0 or not strides:
        return False
    reach = bytearray(target + 1)
    reach[0] = 1
    for s in strides:
        for v in range(s, target + 1):
            if reach[v - s]:
                reach[v] = 1
    return bool(reach[target])


def _merge_duplicate_factors(factors):
    merged: dict[tuple, int] = {}
    for coeffs, mult in factors:
        merged[tuple(coeffs)] = merged.get(tuple(coeffs), 0) + mult
    return sorted(merged.items())


def _pairwise_depth(factors, q: int) -> int:
    """1 + max nu_q over pairwise resultants of the linear factors."""
    rho = 0
    for i in range(len(factors)):
        (a1, b1), _ = factors[i]
        for j in range(i + 1, len(factors)):
            (a2, b2), _ = factors[j]
            res = a1 * b2 - a2 * b1
            if res == 0:
                raise QpdenseError("duplicate linear factors after merging")
            rho = max(rho, valuation_int(res, q))
    return rho + 1


def _spectrum_poly(split: SplitPolynomial, q: int, budget: int) -> ValuationSpectrum:
    if split.content % q == 0:
        raise QpdenseError(f"{q} divides the content")
    factors = _merge_duplicate_factors(split.factors)
    K = _pairwise_depth(factors, q)
    qK = q**K
    if qK * len(factors) > budget:
        raise BudgetExceededError(f"spectrum enumeration {qK} exceeds budget")
    comps = set()
    for x in range(qK):
        fixed = 0
        branch = None
        for (a, b), mult in factors:
            v = (a * x + b) % qK
            if v == 0:
                if branch is not None:
                    raise QpdenseError("two factors deep in one class")
                branch = mult
            else:
                fixed += mult * valuation_int(v, q)
        if branch is None:
            comps.add((fixed, ()))
        else:
            comps.add((fixed + branch * K, (branch,)))
    return ValuationSpectrum(q, tuple(sorted(comps)), 0, K)


def _spectrum_binary(split: LinearSplitForm, q: int, budget: int) -> ValuationSpectrum:
    if split.content % q == 0:
        raise QpdenseError(f"{q} divides the content")
    factors = _merge_duplicate_factors(split.factors)
    K = _pairwise_depth(factors, q)
    qK = q**K
    if qK * qK * len(factors) > budget:
        raise BudgetExceededError(f"spectrum enumeration {qK}^2 exceeds budget")
    comps = set()
    for x in range(qK):
        x_unit = x % q != 0
        for y in range(qK):
            if not x_unit and y % q == 0:
                continue
            fixed = 0
            branch = None
            for (a, b), mult in factors:
                v = (a * x + b * y) % qK
                if v == 0:
                    if branch is not None:
                        raise QpdenseError("two factors deep in one class")
                    branch = mult
                else:
                    fixed += mult * valuation_int(v, q)
            if branch is None:
                comps.add((fixed, ()))
            else:
                comps.add((fixed + branch * K, (branch,)))
    return ValuationSpectrum(q, tuple(sorted(comps)), split.degree, K)


def _separable_blocks(split: LinearSplitForm):
    """Split factors into a binary block on variables (0, 1) and singleton
    variables; None when the structure is not separable."""
    binary = []
    singles = []
    for coeffs, mult in split.factors:
        support = tuple(i for i, c in enumerate(coeffs) if c)
        if all(i <= 1 for i in support):
            binary.append(((coeffs[0], coeffs[1]), mult))
        elif len(support) == 1:
            singles.append((support[0], mult))
        else:
            return None
    return binary, singles


def _spectrum_separable(split: LinearSplitForm, q: int, budget: int) -> ValuationSpectrum:
    """Spectrum of g(x0, x1) * prod x_i^(m_i) over ALL non-vanishing inputs,
    composed from the binary block's primitive spectrum: the block scales by
    its own degree, each singleton variable contributes an independent
    stride."""
    parts = _separable_blocks(split)
    if parts is None:
        raise QpdenseError(
            "spectrum supports binary forms, polynomials, and binary-times-"
            "monomial products only"
        )
    binary, singles = parts
    block = LinearSplitForm(split.content, binary, 2)
    base_spec = _spectrum_binary(block, q, budget)
    extra = set(m for _, m in singles)
    comps = set()
    for b, s in base_spec.components:
        strides = set(s) | extra
        if base_spec.homogeneity_stride:
            strides.add(base_spec.homogeneity_stride)
        comps.add((b, tuple(sorted(strides))))
    return ValuationSpectrum(q, tuple(sorted(comps)), 0, base_spec.exhaustive_depth)


def derive_spectrum(split, q: int, budget: int = 4_000_000) -> ValuationSpectrum:
    """Exact spectrum of nu_q(F(x)) for a split polynomial or form."""
    require_prime(q)
    if isinstance(split, SplitPolynomial):
        return _spectrum_poly(split, q, budget)
    if isinstance(split, LinearSplitForm):
        if split.n_vars == 2:
            return _spectrum_binary(split, q, budget)
        if split.n_vars == 1:
            poly = SplitPolynomial(
                split.content, [((c[0], 0), m) for c, m in split.factors]
            )
            return _spectrum_poly(poly, q, budget)
        return _spectrum_separable(split, q, budget)
    raise QpdenseError(f"cannot derive a spectrum from {type(split).__name__}")


def valuation_spectrum(split, q: int, budget: int = 4_000_000) -> ValuationSpectrum:
    return derive_spectrum(split, q, budget)


def spectrum_difference_contains_one(spec: ValuationSpectrum) -> bool:
    """Decide 1 in {v - w : v, w in spectrum}, scaling shifts included."""
    h = spec.homogeneity_stride
    comps = [
        (b, tuple(sorted(set(s) | ({h} if h else set())))) for b, s in spec.components
    ]
    for b1, s1 in comps:
        for b2, s2 in comps:
            target = 1 - b1 + b2
            if s1 and s2:
                # {sum(a_i e_i) - sum(b_j f_j) : a, b >= 0} is the full
                # lattice gcd(e, f) * Z once both sides are non-empty
                g = 0
                for s in s1 + s2:
                    g = gcd(g, s)
                if target % g == 0:
                    return True
            elif not s1 and not s2:
                if target == 0:
                    return True
            elif s1:
                if target >= 0 and _semigroup_reaches(target, s1):
                    return True
            else:
                if target <= 0 and _semigroup_reaches(-target, s2):
                    return True
    return False


def obstruction_from_spectrum(spec: ValuationSpectrum, split) -> ValuationObstruction | None:
    """NotDense certificate iff 1 is not a difference of spectrum values."""
    if spectrum_difference_contains_one(spec):
        return None
    return ValuationObstruction(spectrum=spec, split=split)


def univariate_nonvanishing_obstruction(
    f: UniPoly, p: int
) -> UnivariateNonvanishing | None:
    """Certificate that f(r) != 0 mod p for every residue r (so the ratio
    set of f over the integers avoids a neighbourhood of 0 p-adically)."""
    require_prime(p)
    values = tuple(f.evaluate(r, p) for r in range(p))
    if any(v == 0 for v in values):
        return None
    return UnivariateNonvanishing(values=values)
