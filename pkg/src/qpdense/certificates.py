"""Verdicts and self-contained certificates.

Every Dense/NotDense verdict carries a certificate that an independent
checker re-validates from the certificate data plus (F, p) alone, without
re-running the search that found it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any

from .errors import QpdenseError
from .forms import IntegralForm, LinearSplitForm, SplitPolynomial
from .modular import legendre_symbol, valuation_int
from .unipoly import UniPoly


class Status(enum.Enum):
    DENSE = "dense"
    NOT_DENSE = "not_dense"
    UNKNOWN = "unknown"


class Certificate:
    """Marker base class for certificate variants."""

    kind: str = "abstract"


@dataclass(frozen=True)
class SimpleZeroSpecialization(Certificate):
    """A specialization of F with a certified simple zero in Z_p.

    The root is carried mod p^precision; validity needs
    f(root) = 0 mod p^precision and precision > 2*nu_p(f'(root)), which
    pins a unique simple Z_p zero near the root.
    """

    free_var: int
    values: tuple[int, ...]
    root: int
    precision: int
    kind = "simple_zero_specialization"


@dataclass(frozen=True)
class CoprimeMultiplicities(Certificate):
    """Two specializations with Z_p zeros of coprime multiplicities."""

    free_var1: int
    values1: tuple[int, ...]
    root1: int
    mult1: int
    free_var2: int
    values2: tuple[int, ...]
    root2: int
    mult2: int
    precision: int
    kind = "coprime_multiplicities"


@dataclass(frozen=True)
class SimpleLinearFactorModP(Certificate):
    """F mod p = L * G with L linear, L not dividing G; the witness point
    lies on L = 0 but not on G = 0."""

    linear: tuple[int, ...]
    witness: tuple[int, ...]
    kind = "simple_linear_factor_mod_p"


@dataclass(frozen=True)
class SmoothPointModP(Certificate):
    """A projective zero of F mod p where some partial does not vanish."""

    point: tuple[int, ...]
    partial_index: int
    kind = "smooth_point_mod_p"


@dataclass(frozen=True)
class CubicCriterion(Certificate):
    """Binary cubic with non-residue discriminant-type invariant D."""

    discriminant_value: int
    legendre: int
    kind = "cubic_criterion"


@dataclass(frozen=True)
class QuarticCriterion(Certificate):
    """Binary quartic criterion, by recurrence match (case 2) or cubic
    non-residue (case 1)."""

    case: int
    data: dict
    kind = "quartic_criterion"


@dataclass(frozen=True)
class AnisotropicModP(Certificate):
    """F has no non-trivial zero mod p (exhaustive projective check)."""

    points_checked: int
    kind = "anisotropic_mod_p"


@dataclass(frozen=True)
class UnivariateNonvanishing(Certificate):
    """Residue table showing f never vanishes mod p."""

    values: tuple[int, ...]
    kind = "univariate_nonvanishing"


@dataclass(frozen=True)
class ValuationObstruction(Certificate):
    """Exact valuation spectrum whose difference set omits 1."""

    spectrum: Any  # ValuationSpectrum
    split: Any  # LinearSplitForm | SplitPolynomial used to derive it
    kind = "valuation_obstruction"


@dataclass(frozen=True)
class FamilyObstruction(Certificate):
    """Family-specific parameter check transcript."""

    family: str
    params: dict
    checks: dict
    kind = "family_obstruction"


@dataclass(frozen=True)
class DensityVerdict:
    status: Status
    prime: int
    form: Any
    certificate: Certificate | None = None
    evidence: dict | None = None
    config: dict = field(default_factory=dict)

    @property
    def is_dense(self) -> bool:
        return self.status is Status.DENSE

    @property
    def is_not_dense(self) -> bool:
        return self.status is Status.NOT_DENSE


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def _check_simple_zero(F, p, free_var, values, root, precision) -> bool:
    if isinstance(F, UniPoly):
        f = F
    else:
        f = F.specialize(free_var, tuple(values))
    if f.is_zero:
        return False
    m = p**precision
    if not 0 <= root < m:
        return False
    if f.evaluate(root, m) != 0:
        return False
    dv = f.derivative().evaluate(root)
    if dv == 0:
        return False
    return precision > 2 * valuation_int(dv, p)


def _check_mult_zero(F, p, free_var, values, root, mult, precision) -> bool:
    """Root of exact multiplicity `mult`: a certified simple zero of the
    squarefree factor carrying that multiplicity."""
    from .unipoly import squarefree_decomposition

    f = F.specialize(free_var, tuple(values))
    if f.is_zero:
        return False
    m = p**precision
    for g, gm in squarefree_decomposition(f):
        if gm != mult:
            continue
        if g.evaluate(root, m) != 0:
            continue
        dv = g.derivative().evaluate(root)
        if dv != 0 and precision > 2 * valuation_int(dv, p):
            return True
    return False


def verify_certificate(F, p: int, cert: Certificate, budget: int = 10**8) -> bool:
    """Re-check only the certified facts; False on any mismatch."""
    try:
        return _verify(F, p, cert, budget)
    except QpdenseError:
        return False


def _verify(F, p, cert, budget) -> bool:
    from . import families as fam
    from .formlab import cofactor_of_linear_mod_p, is_anisotropic_mod_p
    from .spectrum import (
        derive_spectrum,
        spectrum_difference_contains_one,
    )

    if isinstance(cert, SimpleZeroSpecialization):
        return _check_simple_zero(
            F, p, cert.free_var, cert.values, cert.root, cert.precision
        )

    if isinstance(cert, CoprimeMultiplicities):
        from math import gcd

        if gcd(cert.mult1, cert.mult2) != 1:
            return False
        ok1 = _check_mult_zero(
            F, p, cert.free_var1, cert.values1, cert.root1, cert.mult1, cert.precision
        )
        ok2 = _check_mult_zero(
            F, p, cert.free_var2, cert.values2, cert.root2, cert.mult2, cert.precision
        )
        same_leg = (
            cert.free_var1 == cert.free_var2
            and cert.values1 == cert.values2
            and cert.root1 == cert.root2
        )
        return ok1 and ok2 and not same_leg

    if isinstance(cert, SimpleLinearFactorModP):
        if not isinstance(F, IntegralForm):
            return False
        cof = cofactor_of_linear_mod_p(F, cert.linear, p)
        if cof is None:
            return False
        lin_val = sum(c * x for c, x in zip(cert.linear, cert.witness)) % p
        if lin_val != 0:
            return False
        g_val = 0
        for exps, coeff in cof.items():
            t = coeff
            for v, e in zip(cert.witness, exps):
                if e:
                    t = t * pow(v, e, p) % p
            g_val = (g_val + t) % p
        return g_val != 0

    if isinstance(cert, SmoothPointModP):
        if not isinstance(F, IntegralForm):
            return False
        pt = cert.point
        if len(pt) != F.n_vars or all(v % p == 0 for v in pt):
            return False
        if F.evaluate(pt, p) != 0:
            return False
        return F.partial_derivative(cert.partial_index).evaluate(pt, p) != 0

    if isinstance(cert, CubicCriterion):
        if not isinstance(F, IntegralForm) or F.n_vars != 2 or F.degree != 3:
            return False
        a = F.terms.get((3, 0), 0)
        b = F.terms.get((2, 1), 0)
        c = F.terms.get((1, 2), 0)
        d = F.terms.get((0, 3), 0)
        if a == 0 or p <= 3:
            return False
        D = (
            a**2 * b**2 * c**2
            - 4 * a**3 * c**3
            - 4 * a**2 * b**3 * d
            - 27 * a**4 * d**2
            + 18 * a**3 * b * c * d
        )
        if D != cert.discriminant_value or cert.legendre != -1:
            return False
        return legendre_symbol(D, p) == -1

    if isinstance(cert, QuarticCriterion):
        from .density import _quartic_case_data

        if not isinstance(F, IntegralForm) or F.n_vars != 2 or F.degree != 4:
            return False
        outcome = _quartic_case_data(F, p)
        if outcome is None:
            return False
        case, data, holds = outcome
        return holds and case == cert.case and data == cert.data

    if isinstance(cert, AnisotropicModP):
        if not isinstance(F, IntegralForm):
            return False
        rep = is_anisotropic_mod_p(F, p, budget)
        return rep.anisotropic and rep.points_checked == cert.points_checked

    if isinstance(cert, UnivariateNonvanishing):
        f = F if isinstance(F, UniPoly) else None
        if f is None and isinstance(F, SplitPolynomial):
            f = F.expand()
        if f is None:
            return False
        if len(cert.values) != p:
            return False
        for r in range(p):
            v = f.evaluate(r, p)
            if v != cert.values[r] or v == 0:
                return False
        return True

    if isinstance(cert, ValuationObstruction):
        split = cert.split
        if isinstance(F, IntegralForm):
            if not isinstance(split, LinearSplitForm) or split.expand() != F:
                return False
        elif isinstance(F, UniPoly):
            if not isinstance(split, SplitPolynomial) or split.expand() != F:
                return False
        elif isinstance(F, (LinearSplitForm, SplitPolynomial)):
            if split != F:
                return False
        else:
            return False
        spec = derive_spectrum(split, p, budget=budget)
        if spec.components != cert.spectrum.components:
            return False
        return not spectrum_difference_contains_one(spec)

    if isinstance(cert, FamilyObstruction):
        return fam.verify_family_obstruction(F, p, cert, budget=budget)

    raise QpdenseError(f"unknown certificate kind {type(cert).__name__}")
