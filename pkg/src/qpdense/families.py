"""Generators and checkers for the explicit constructions: cyclotomic norm
forms, composite-degree counterexamples, and the family that is dense at
one prime but at almost no other."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .certificates import FamilyObstruction, ValuationObstruction
from .errors import ParameterError, QpdenseError
from .forms import IntegralForm, LinearSplitForm, SplitPolynomial, TermDict, _dict_mul, _dict_pow
from .formlab import is_anisotropic_mod_p
from .modular import inv_mod, is_prime, is_qth_power_residue, primes_upto
from .spectrum import derive_spectrum, obstruction_from_spectrum

_FAMILIES = (
    "cyclotomic",
    "composite",
    "finitely_dense_f",
    "finitely_dense_g2",
    "finitely_dense_gn",
)


@dataclass(frozen=True)
class FamilySpec:
    """Which construction, with which parameters."""

    family: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}")
        p = self.params
        if self.family == "cyclotomic":
            if not is_prime(p.get("q", 0)):
                raise ParameterError("cyclotomic family needs a prime q")
        elif self.family == "composite":
            if not is_prime(p.get("q", 0)):
                raise ParameterError("composite family needs a prime q")
            if p.get("k", 0) < 1 or p.get("m", 0) < 1:
                raise ParameterError("composite family needs k >= 1 and m >= 1")
        else:
            _validate_finitely_dense(
                p.get("p", 0), p.get("q1", 0), p.get("q2", 0), p.get("q3", 0)
            )
            if self.family == "finitely_dense_gn" and p.get("n", 0) <= 2:
                raise ParameterError("g_n needs n > 2")


def _validate_finitely_dense(p: int, q1: int, q2: int, q3: int) -> None:
    if not is_prime(p):
        raise ParameterError(f"p = {p} is not prime")
    for q in (q1, q2, q3):
        if not is_prime(q):
            raise ParameterError(f"q_i = {q} is not prime")
    if not q1 < q2 < q3:
        raise ParameterError(f"need q1 < q2 < q3, got {(q1, q2, q3)}")
    if gcd(q1 * q2 * q3, p * (p - 1)) != 1:
        raise ParameterError(
            f"q1*q2*q3 = {q1 * q2 * q3} must be coprime to p(p-1) = {p * (p - 1)}"
        )


# ---------------------------------------------------------------------------
# Cyclotomic norm forms
# ---------------------------------------------------------------------------


def _norm_det(columns: list[list[TermDict]], n: int, n_vars: int) -> TermDict:
    """Determinant of an n x n matrix of linear term-dicts by Laplace
    expansion with memoization on column subsets (division-free)."""
    from functools import lru_cache

    cols = tuple(range(n))

    @lru_cache(maxsize=None)
    def minor(colset: tuple) -> tuple:
        r = len(colset) - 1  # expand along row r
        if r == 0:
            return tuple(sorted(columns[colset[0]][0].items()))
        total: TermDict = {}
        for idx, c in enumerate(colset):
            entry = columns[c][r]
            if not entry:
                continue
            sub = dict(minor(tuple(x for x in colset if x != c)))
            piece = _dict_mul(entry, sub)
            sign = (-1) ** (r + idx)
            for e, v in piece.items():
                nv = total.get(e, 0) + sign * v
                if nv:
                    total[e] = nv
                else:
                    total.pop(e, None)
        return tuple(sorted(total.items()))

    return dict(minor(cols))


def cyclotomic_norm_form(q: int) -> IntegralForm:
    """Norm form of x0 + x1*z + ... + x_(q-2)*z^(q-2) for a primitive q-th
    root of unity z, computed exactly as the resultant of the q-th
    cyclotomic polynomial with the generic linear expression: equivalently
    the determinant of the multiplication endomorphism on Z[z]."""
    if not is_prime(q):
        raise ParameterError(f"q = {q} must be prime")
    n = q - 1
    if q == 2:
        return IntegralForm(1, 1, {(1,): 1})
    # columns[j][r] = coefficient of z^r in z^j * (x0 + x1 z + ...), as a
    # linear term-dict; uses z^q = 1 and z^(q-1) = -(1 + z + ... + z^(q-2))
    columns: list[list[TermDict]] = []
    for j in range(n):
        col: list[TermDict] = [dict() for _ in range(n)]
        for i in range(n):
            e = [0] * n
            e[i] = 1
            key = tuple(e)
            m = i + j
            if m < n:
                col[m][key] = col[m].get(key, 0) + 1
            elif m == n:
                for r in range(n):
                    col[r][key] = col[r].get(key, 0) - 1
            else:
                col[m - q][key] = col[m - q].get(key, 0) + 1
        columns.append([{k: v for k, v in layer.items() if v} for layer in col])
    det = _norm_det(columns, n, n)
    form = IntegralForm(n, n, det)
    lead = form.terms.get((n,) + (0,) * (n - 1), 0)
    if lead < 0:
        form = -form
    if form.terms.get((n,) + (0,) * (n - 1), 0) != 1:
        raise QpdenseError("norm form normalization failed")
    return form


def cyclotomic_not_dense_primes(
    q: int, bound: int, budget: int = 10**8
) -> list[tuple[int, FamilyObstruction]]:
    """Primes p <= bound where the norm form is verified anisotropic mod p,
    each with an enumeration certificate.

    Candidates are the p != q with q not dividing p-1; anisotropy is then
    checked directly rather than assumed, because it is equivalent to p
    generating the full group of residues mod q (for q = 3 every candidate
    qualifies, for larger q some candidates are genuinely isotropic, e.g.
    q = 5, p = 19 with zero (0, 1, 5, 1)).
    """
    spec = FamilySpec("cyclotomic", {"q": q})
    form = cyclotomic_norm_form(q)
    out = []
    for p in primes_upto(bound):
        if p == q or (p - 1) % q == 0:
            continue
        rep = is_anisotropic_mod_p(form, p, budget)
        if not rep.anisotropic:
            continue
        cert = FamilyObstruction(
            family="cyclotomic",
            params=dict(spec.params),
            checks={
                "prime": p,
                "congruence_ok": True,
                "anisotropic": True,
                "points_checked": rep.points_checked,
            },
        )
        out.append((p, cert))
    return out


# ---------------------------------------------------------------------------
# Composite-degree counterexamples
# ---------------------------------------------------------------------------


def composite_counterexample(q: int, k: int, m: int) -> IntegralForm:
    """x0^(k*q) + 2*(x1^k + ... + xm^k)^q, expanded exactly."""
    FamilySpec("composite", {"q": q, "k": k, "m": m})
    n = m + 1
    inner: TermDict = {}
    for i in range(1, n):
        e = [0] * n
        e[i] = k
        inner[tuple(e)] = 1
    terms = _dict_pow(inner, q, n)
    terms = {e: 2 * c for e, c in terms.items()}
    lead = [0] * n
    lead[0] = k * q
    terms[tuple(lead)] = terms.get(tuple(lead), 0) + 1
    return IntegralForm(n, k * q, terms)


def composite_not_dense_primes(
    q: int, k: int, m: int, bound: int
) -> list[tuple[int, FamilyObstruction]]:
    """Primes p <= bound, coprime to 2kq, where 2 is not a q-th power in
    F_p^* (forcing q | nu_p on all values of the family form)."""
    spec = FamilySpec("composite", {"q": q, "k": k, "m": m})
    out = []
    for p in primes_upto(bound):
        if (2 * k * q) % p == 0:
            continue
        if is_qth_power_residue(2, q, p):
            continue
        g = gcd(q, p - 1)
        cert = FamilyObstruction(
            family="composite",
            params=dict(spec.params),
            checks={
                "prime": p,
                "power_test": pow(2, (p - 1) // g, p),
                "is_qth_power": False,
            },
        )
        out.append((p, cert))
    return out


# ---------------------------------------------------------------------------
# Dense at p, not dense for almost all q
# ---------------------------------------------------------------------------


def finitely_dense_f(p: int, q1: int, q2: int, q3: int) -> SplitPolynomial:
    """x^(q1 q2) * prod_(i=1..q1) (x + p^i)^(q1 q3) * (x + p^(q1+1))^(q2 q3),
    kept factored; .expand() gives the dense polynomial."""
    _validate_finitely_dense(p, q1, q2, q3)
    factors = [((1, 0), q1 * q2)]
    for i in range(1, q1 + 1):
        factors.append(((1, p**i), q1 * q3))
    factors.append(((1, p ** (q1 + 1)), q2 * q3))
    return SplitPolynomial(1, factors)


def finitely_dense_g(n: int, p: int, q1: int, q2: int, q3: int) -> LinearSplitForm:
    """g_2 (n = 2) or g_n = g_2 * (x3...xn)^(q1 q2 q3) for n > 2, factored."""
    _validate_finitely_dense(p, q1, q2, q3)
    if n < 2:
        raise ParameterError("g_n needs n >= 2")

    def vec(a: int, b: int) -> tuple[int, ...]:
        return (a, b) + (0,) * (n - 2)

    factors: list[tuple[tuple[int, ...], int]] = [(vec(1, 0), q1 * q2)]
    for i in range(1, q1 + 1):
        factors.append((vec(1, p**i), q1 * q3))
    factors.append((vec(1, p ** (q1 + 1)), q2 * q3))
    for i in range(1, q3 - 1 + 1):
        factors.append((vec(p**i, 1), q1 * q2))
    for i in range(q3, q3 + q2 - q1 - 1 + 1):
        factors.append((vec(p**i, 1), q1 * q3))
    for i in range(q3 + q2 - q1, q3 + q2 - 2 + 1):
        factors.append((vec(p**i, 1), q2 * q3))
    for j in range(2, n):
        e = [0] * n
        e[j] = 1
        factors.append((tuple(e), q1 * q2 * q3))
    return LinearSplitForm(1, factors, n)


@dataclass(frozen=True)
class FamilyDensityReport:
    """Transcript of the two-sided checks for a finitely-dense family
    member: denseness evidence at p, obstructions at sampled q."""

    spec: FamilySpec
    prime: int
    unit_equation: dict
    probe_valuations: tuple[int, ...]
    probe_window: int
    obstructions: dict
    notes: dict


def _unit_equation_transcript(p: int, q1: int, q2: int, q3: int) -> dict:
    """Solvability of x^(q1 q2) = +-v * y^(q2 q3) mod p for every unit v:
    the power map is a bijection on F_p^* because gcd(q1 q2, p-1) = 1."""
    e = q1 * q2
    g = gcd(e, p - 1)
    transcript = {"exponent": e, "gcd_with_p_minus_1": g, "bijective": g == 1}
    if g == 1 and p > 2:
        inv_e = inv_mod(e, p - 1)
        samples = {}
        for v in range(1, min(p, 12)):
            x = pow(v, inv_e, p)
            samples[v] = x
            if pow(x, e, p) != v % p:
                raise QpdenseError("unit equation sample failed")
        transcript["samples"] = samples
    return transcript


def finitely_dense_checks(
    spec: FamilySpec,
    probe_depth: int = 3,
    q_samples=None,
    q_bound: int = 120,
    budget: int = 4_000_000,
    probe_budget: int = 200_000,
    seed: int = 0,
) -> FamilyDensityReport:
    """(i) empirical denseness evidence in Q_p (probe coverage of quotient
    valuations plus the unit-equation transcript); (ii) per-q spectrum
    obstructions for sampled primes q, reported case by case."""
    from .probe import quotient_probe

    params = spec.params
    p, q1, q2, q3 = params["p"], params["q1"], params["q2"], params["q3"]
    if spec.family == "finitely_dense_f":
        member = finitely_dense_f(p, q1, q2, q3)
    elif spec.family == "finitely_dense_g2":
        member = finitely_dense_g(2, p, q1, q2, q3)
    elif spec.family == "finitely_dense_gn":
        member = finitely_dense_g(params["n"], p, q1, q2, q3)
    else:
        raise ParameterError(f"{spec.family} is not a finitely-dense family")

    unit_eq = _unit_equation_transcript(p, q1, q2, q3)
    report = quotient_probe(
        member,
        p,
        unit_depth=1,
        window=probe_depth,
        budget=probe_budget,
        seed=seed,
    )
    seen_vals = tuple(sorted({v for v, _ in report.reachable}))

    if q_samples is None:
        q_samples = [q for q in primes_upto(q_bound) if q != p][:12]
    obstructions = {}
    notes = {}
    for q in q_samples:
        if q == p:
            notes[q] = "dense prime itself"
            continue
        if (q1 * q2 * q3) % q == 0:
            notes[q] = "outside theorem range (q divides q1*q2*q3)"
            continue
        spectrum = derive_spectrum(member, q, budget)
        obstructions[q] = obstruction_from_spectrum(spectrum, member)
    return FamilyDensityReport(
        spec=spec,
        prime=p,
        unit_equation=unit_eq,
        probe_valuations=seen_vals,
        probe_window=probe_depth,
        obstructions=obstructions,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# Certificate verification hooks
# ---------------------------------------------------------------------------


def verify_family_obstruction(F, p: int, cert: FamilyObstruction, budget: int = 10**8) -> bool:
    if cert.family == "cyclotomic":
        q = cert.params["q"]
        if not is_prime(q) or p == q or (p - 1) % q == 0:
            return False
        form = cyclotomic_norm_form(q)
        if isinstance(F, IntegralForm) and F != form:
            return False
        rep = is_anisotropic_mod_p(form, p, budget)
        return rep.anisotropic
    if cert.family == "composite":
        q, k, m = cert.params["q"], cert.params["k"], cert.params["m"]
        if (2 * k * q) % p == 0:
            return False
        if isinstance(F, IntegralForm) and F != composite_counterexample(q, k, m):
            return False
        return not is_qth_power_residue(2, q, p)
    return False
