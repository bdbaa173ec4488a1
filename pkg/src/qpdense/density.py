"""The verdict engine: per-prime decision pipeline, the specialization
prime scanner, and the binary cubic/quartic criteria."""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .certificates import (
    AnisotropicModP,
    CoprimeMultiplicities,
    CubicCriterion,
    DensityVerdict,
    QuarticCriterion,
    SimpleLinearFactorModP,
    SimpleZeroSpecialization,
    SmoothPointModP,
    Status,
    ValuationObstruction,
    verify_certificate,
)
from .errors import (
    BudgetExceededError,
    DegenerateSpecializationError,
    PrecisionInsufficientError,
    QpdenseError,
    ZeroFormError,
)
from .forms import IntegralForm, LinearSplitForm
from .formlab import (
    binary_linear_split,
    cofactor_of_linear_mod_p,
    is_anisotropic_mod_p,
    linear_factors_mod_p,
    projective_points,
    smooth_point_mod_p,
)
from .modular import is_qth_power_residue, legendre_symbol, primes_upto, require_prime
from .padic import PadicContext, hensel_lift_simple, valuation, zp_roots
from .spectrum import derive_spectrum, obstruction_from_spectrum
from .unipoly import UniPoly, discriminant, gf_roots


@dataclass(frozen=True)
class DecideConfig:
    """Budgets, seeds and precision for the decision pipeline; carried on
    every verdict so Unknown outcomes are reproducible."""

    precision: int = 20
    anisotropy_budget: int = 10**8
    linear_factor_budget: int = 200_000
    smooth_point_budget: int = 300_000
    sweep_enabled: bool = True
    sweep_box_radius: int = 5
    sweep_random_count: int = 100
    sweep_random_radius: int = 50
    spectrum_budget: int = 4_000_000
    probe_budget: int = 20_000
    seed: int = 0

    def snapshot(self) -> dict:
        return {
            "precision": self.precision,
            "anisotropy_budget": self.anisotropy_budget,
            "linear_factor_budget": self.linear_factor_budget,
            "smooth_point_budget": self.smooth_point_budget,
            "sweep_enabled": self.sweep_enabled,
            "sweep_box_radius": self.sweep_box_radius,
            "sweep_random_count": self.sweep_random_count,
            "sweep_random_radius": self.sweep_random_radius,
            "spectrum_budget": self.spectrum_budget,
            "probe_budget": self.probe_budget,
            "seed": self.seed,
        }


CHEAP_FALLBACK = DecideConfig(
    precision=8,
    anisotropy_budget=20_000,
    linear_factor_budget=5_000,
    smooth_point_budget=5_000,
    sweep_enabled=False,
    probe_budget=0,
)


@dataclass(frozen=True)
class ScanConfig:
    """Configuration for the prime scanner."""

    precision: int = 2
    fallback: DecideConfig = field(default_factory=lambda: CHEAP_FALLBACK)
    threads: int = 1
    verify: bool = True


def _verified(F, p, status, cert, config, evidence=None) -> DensityVerdict:
    if not verify_certificate(F, p, cert):
        raise QpdenseError(
            f"internal error: {type(cert).__name__} failed self-verification"
        )
    return DensityVerdict(status, p, F, cert, evidence, config.snapshot())


def _find_simple_linear_certificate(F, p, config):
    """Stage 2: a multiplicity-1 linear factor of F mod p with a witness
    point on the hyperplane where the cofactor does not vanish."""
    try:
        factors = linear_factors_mod_p(F, p, config.linear_factor_budget)
    except BudgetExceededError:
        return None, "budget"
    for coeffs, mult in factors:
        if mult != 1:
            continue
        cof = cofactor_of_linear_mod_p(F, coeffs, p)
        for point in projective_points(F.n_vars, p):
            if sum(c * x for c, x in zip(coeffs, point)) % p != 0:
                continue
            val = 0
            for exps, coeff in cof.items():
                t = coeff
                for v, e in zip(point, exps):
                    if e:
                        t = t * pow(v, e, p) % p
                val = (val + t) % p
            if val:
                return SimpleLinearFactorModP(coeffs, point), None
    return None, None


def _sweep_tuples(n_minus_1: int, config: DecideConfig):
    r = config.sweep_box_radius
    seen = set()
    for tup in product(range(-r, r + 1), repeat=n_minus_1):
        seen.add(tup)
        yield tup
    rng = random.Random(config.seed)
    rr = config.sweep_random_radius
    for _ in range(config.sweep_random_count):
        tup = tuple(rng.randint(-rr, rr) for _ in range(n_minus_1))
        if tup not in seen:
            seen.add(tup)
            yield tup


def _certificate_precision(f: UniPoly, root: int, p: int, k: int) -> int:
    """Smallest usable precision for a simple-zero certificate at `root`."""
    dv = f.derivative().evaluate(root)
    if dv == 0:
        return k
    mu = valuation(dv, p)
    return max(int(2 * mu) + 1, 1)


def _sweep_stage(F, p, config):
    """Stage 5: specialize over small tuples; a multiplicity-1 Z_p zero
    gives a Dense certificate, otherwise collect roots for a coprime-
    multiplicity pair."""
    ctx = PadicContext(p, config.precision)
    collected = []
    skipped = 0
    for free_var in range(F.n_vars):
        for values in _sweep_tuples(F.n_vars - 1, config):
            f = F.specialize(free_var, values)
            if f.is_zero or f.degree < 1:
                continue
            try:
                roots = zp_roots(f, ctx)
            except PrecisionInsufficientError:
                skipped += 1
                continue
            for root in roots:
                if root.multiplicity == 1:
                    cert = SimpleZeroSpecialization(
                        free_var, tuple(values), root.residue, ctx.precision
                    )
                    return cert, collected, skipped
                collected.append((free_var, tuple(values), root))
            for i, (fv1, vals1, r1) in enumerate(collected):
                for fv2, vals2, r2 in collected[i + 1 :]:
                    if gcd(r1.multiplicity, r2.multiplicity) != 1:
                        continue
                    if (fv1, vals1, r1.residue) == (fv2, vals2, r2.residue):
                        continue
                    cert = CoprimeMultiplicities(
                        fv1,
                        vals1,
                        r1.residue,
                        r1.multiplicity,
                        fv2,
                        vals2,
                        r2.residue,
                        r2.multiplicity,
                        ctx.precision,
                    )
                    return cert, collected, skipped
    return None, collected, skipped


def decide(F: IntegralForm, p: int, config: DecideConfig | None = None) -> DensityVerdict:
    """Run the decision pipeline for R(F) in Q_p.

    Stage order: primitive part; simple linear factor mod p (Dense);
    anisotropy mod p (NotDense); smooth point mod p (Dense); specialization
    sweep (Dense via simple zero or coprime multiplicities); linear-split
    valuation obstruction (NotDense); probe evidence (Unknown).  Budget
    exhaustion skips a stage, never flips a verdict.
    """
    require_prime(p)
    if F.is_zero:
        raise ZeroFormError("cannot decide the zero form")
    config = config or DecideConfig()
    evidence: dict = {"stages": []}
    content, G = F.content_and_primitive()
    if content != 1:
        evidence["content"] = content

    cert, note = _find_simple_linear_certificate(G, p, config)
    if cert is not None:
        return _verified(G, p, Status.DENSE, cert, config)
    evidence["stages"].append(
        "linear_factor: skipped (budget)" if note == "budget" else "linear_factor: none"
    )

    try:
        rep = is_anisotropic_mod_p(G, p, config.anisotropy_budget)
        if rep.anisotropic:
            cert = AnisotropicModP(rep.points_checked)
            return _verified(G, p, Status.NOT_DENSE, cert, config)
        evidence["stages"].append(f"anisotropy: isotropic at {rep.isotropic_witness}")
    except BudgetExceededError:
        evidence["stages"].append("anisotropy: skipped (budget)")

    try:
        report = smooth_point_mod_p(G, p, config.smooth_point_budget)
        if report is not None:
            cert = SmoothPointModP(report.point, report.nonvanishing_partial_index)
            return _verified(G, p, Status.DENSE, cert, config)
        evidence["stages"].append("smooth_point: none")
    except BudgetExceededError:
        evidence["stages"].append("smooth_point: skipped (budget)")

    if config.sweep_enabled:
        cert, collected, skipped = _sweep_stage(G, p, config)
        if cert is not None:
            return _verified(G, p, Status.DENSE, cert, config)
        evidence["stages"].append(
            f"sweep: {len(collected)} multiple roots, {skipped} skipped"
        )
    else:
        evidence["stages"].append("sweep: disabled")

    if G.n_vars <= 2:
        try:
            if G.n_vars == 1:
                d = G.degree
                split = LinearSplitForm(next(iter(G.terms.values())), [((1,), d)], 1)
            else:
                split = binary_linear_split(G)
            if split is not None:
                spec = derive_spectrum(split, p, config.spectrum_budget)
                obstruction = obstruction_from_spectrum(spec, split)
                if obstruction is not None:
                    return _verified(G, p, Status.NOT_DENSE, obstruction, config)
                evidence["stages"].append("spectrum: difference set contains 1")
            else:
                evidence["stages"].append("spectrum: no linear split over Q")
        except BudgetExceededError:
            evidence["stages"].append("spectrum: skipped (budget)")

    if config.probe_budget:
        from .probe import quotient_probe

        report = quotient_probe(
            G, p, unit_depth=1, window=2, budget=config.probe_budget, seed=config.seed
        )
        evidence["probe"] = {
            "reachable_valuations": sorted({v for v, _ in report.reachable}),
            "coverage": report.coverage,
            "budget_used": report.budget_used,
        }
    return DensityVerdict(Status.UNKNOWN, p, G, None, evidence, config.snapshot())


# ---------------------------------------------------------------------------
# Theorem-1.1-style prime scanner
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanResult:
    form: IntegralForm
    free_var: int
    values: tuple[int, ...]
    specialization: UniPoly
    disc: int
    prime_bound: int
    table: dict

    def dense_primes(self) -> list[int]:
        return sorted(p for p, v in self.table.items() if v.status is Status.DENSE)

    def verdicts(self, status: Status) -> list[int]:
        return sorted(p for p, v in self.table.items() if v.status is status)


def _scan_one(F, f, fderiv, values, free_var, p, config: ScanConfig):
    roots = gf_roots(list(f.coeffs), p)
    for r in roots:
        if fderiv.evaluate(r, p) == 0:
            continue  # cannot happen when p does not divide disc; defensive
        ctx = PadicContext(p, config.precision)
        lifted = hensel_lift_simple(f, r, ctx)
        cert = SimpleZeroSpecialization(free_var, values, lifted, config.precision)
        if config.verify and not verify_certificate(F, p, cert):
            raise QpdenseError("scanner certificate failed self-verification")
        return DensityVerdict(
            Status.DENSE, p, F, cert, None, {"scan_precision": config.precision}
        )
    return decide(F, p, config.fallback)


def scan_primes(
    F: IntegralForm,
    free_var: int,
    values,
    prime_bound: int,
    config: ScanConfig | None = None,
) -> ScanResult:
    """For each prime p <= bound: when the specialization has a root mod p
    (necessarily simple because p does not divide its discriminant), certify
    Dense by Hensel lifting; primes dividing the discriminant or with no
    root fall back to the full pipeline."""
    config = config or ScanConfig()
    values = tuple(values)
    f = F.specialize(free_var, values)
    if f.is_zero or f.degree < 1:
        raise DegenerateSpecializationError(
            "specialization is constant; choose other values"
        )
    D = discriminant(f)
    if D == 0:
        raise DegenerateSpecializationError(
            "specialization has zero discriminant; choose other values"
        )
    fderiv = f.derivative()
    primes = primes_upto(prime_bound)

    def work(p):
        if D % p == 0:
            return p, decide(F, p, config.fallback)
        return p, _scan_one(F, f, fderiv, values, free_var, p, config)

    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = dict(pool.map(work, primes))
    else:
        results = dict(work(p) for p in primes)
    return ScanResult(F, free_var, values, f, D, prime_bound, results)


# ---------------------------------------------------------------------------
# Binary cubic / quartic criteria
# ---------------------------------------------------------------------------


def _binary_coeffs(F: IntegralForm, degree: int) -> list[int]:
    if F.n_vars != 2 or F.degree != degree:
        raise QpdenseError(f"expected a binary form of degree {degree}")
    return [F.terms.get((degree - i, i), 0) for i in range(degree + 1)]


def cubic_verdict(F: IntegralForm, p: int, config: DecideConfig | None = None) -> DensityVerdict:
    """One-directional criterion for binary cubics: a = 0 cases are Dense
    outright; otherwise D a quadratic non-residue mod p (p > 3) certifies
    Dense, anything else is Unknown (the converse fails)."""
    require_prime(p)
    config = config or DecideConfig()
    a, b, c, d = _binary_coeffs(F, 3)
    if a == 0 and b == 0 and c == 0:
        raise QpdenseError("degenerate cubic: a = b = c = 0")
    if a == 0:
        # y divides F; one of the two canonical specializations has a
        # certified simple zero in Z_p
        ctx = PadicContext(p, config.precision)
        for free_var in (1, 0):
            f = F.specialize(free_var, (1,))
            if f.is_zero or f.degree < 1:
                continue
            for root in zp_roots(f, ctx):
                if root.multiplicity == 1:
                    cert = SimpleZeroSpecialization(
                        free_var, (1,), root.residue, ctx.precision
                    )
                    return _verified(F, p, Status.DENSE, cert, config)
        raise QpdenseError("internal error: a=0 cubic without a simple zero")
    if p <= 3:
        return DensityVerdict(
            Status.UNKNOWN,
            p,
            F,
            None,
            {"note": "criterion requires p > 3"},
            config.snapshot(),
        )
    D = (
        a**2 * b**2 * c**2
        - 4 * a**3 * c**3
        - 4 * a**2 * b**3 * d
        - 27 * a**4 * d**2
        + 18 * a**3 * b * c * d
    )
    leg = legendre_symbol(D, p)
    if leg == -1:
        cert = CubicCriterion(D, -1)
        return _verified(F, p, Status.DENSE, cert, config)
    return DensityVerdict(
        Status.UNKNOWN,
        p,
        F,
        None,
        {"D": D, "legendre": leg, "note": "criterion inconclusive"},
        config.snapshot(),
    )


def _mat_mul_mod(A, B, p):
    return [
        [sum(A[i][k] * B[k][j] for k in range(3)) % p for j in range(3)]
        for i in range(3)
    ]


def _mat_pow_mod(M, e, p):
    R = [[1 if i == j else 0 for j in range(3)] for i in range(3)]
    while e:
        if e & 1:
            R = _mat_mul_mod(R, M, p)
        M = _mat_mul_mod(M, M, p)
        e >>= 1
    return R


def _quartic_recurrence_value(a, c, d, e, p) -> int:
    """s_(p+1) mod p for s_0=3, s_1=-2ac, s_2=2a^2c^2+8a^3e,
    s_(n+3) = -2ac*s_(n+2) + (4a^3e - a^2c^2)*s_(n+1) + a^4d^2*s_n."""
    s0, s1, s2 = 3 % p, (-2 * a * c) % p, (2 * a**2 * c**2 + 8 * a**3 * e) % p
    M = [
        [0, 1, 0],
        [0, 0, 1],
        [(a**4 * d**2) % p, (4 * a**3 * e - a**2 * c**2) % p, (-2 * a * c) % p],
    ]
    Mp = _mat_pow_mod(M, p - 1, p)
    return (Mp[2][0] * s0 + Mp[2][1] * s1 + Mp[2][2] * s2) % p


def _quartic_case_data(F: IntegralForm, p: int):
    """(case, data, criterion_holds) for the quartic criterion, or None
    when the preconditions fail."""
    a, b, c, d, e = _binary_coeffs(F, 4)
    if a == 0 or b == 0:
        return None
    if p <= 3 or valuation(b, p) == 0:
        return None
    head = (a**2 * c**2 + 12 * a**3 * e) % p
    if head != 0:
        target = (a**2 * c**2 - 4 * a**3 * e) % p
        s = _quartic_recurrence_value(a, c, d, e, p)
        return 2, {"s_p_plus_1": s, "target": target}, s == target
    value = (8 * a**3 * c**3 + 27 * a**4 * d**2) % p
    holds = (
        p % 3 == 1 and value != 0 and not is_qth_power_residue(value, 3, p)
    )
    return 1, {"cubic_value": value, "p_mod_3": p % 3}, holds


def quartic_verdict(F: IntegralForm, p: int, config: DecideConfig | None = None) -> DensityVerdict:
    """One-directional criterion for binary quartics a*x^4 + ... + e*y^4
    with a, b != 0, p > 3 and p | b; Dense on a recurrence match (case 2)
    or a cubic non-residue (case 1), Unknown otherwise."""
    require_prime(p)
    config = config or DecideConfig()
    a, b, c, d, e = _binary_coeffs(F, 4)
    if a == 0 or b == 0:
        raise QpdenseError("quartic criterion requires a != 0 and b != 0")
    if p <= 3:
        raise QpdenseError("quartic criterion requires p > 3")
    if valuation(b, p) == 0:
        raise QpdenseError("quartic criterion requires p | b")
    case, data, holds = _quartic_case_data(F, p)
    if holds:
        cert = QuarticCriterion(case, data)
        return _verified(F, p, Status.DENSE, cert, config)
    return DensityVerdict(
        Status.UNKNOWN,
        p,
        F,
        None,
        {"case": case, **data, "note": "criterion inconclusive"},
        config.snapshot(),
    )
