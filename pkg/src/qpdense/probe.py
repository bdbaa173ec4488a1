"""Brute-force empirical oracle: enumerate values of F over integer boxes
plus seeded random points, reduce to (valuation, unit class) pairs, and
report which quotient classes are reachable.  Probes report evidence only;
verdicts are the density module's job."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import ceil, log2

from .errors import QpdenseError
from .forms import IntegralForm, LinearSplitForm, SplitPolynomial
from .modular import inv_mod, require_prime, valuation_int
from .unipoly import UniPoly


@dataclass(frozen=True)
class ProbeReport:
    prime: int
    unit_depth: int
    window: int
    reachable: frozenset
    coverage: float
    budget_used: int
    seed: int
    witnesses: dict

    def has_valuation(self, v: int) -> bool:
        return any(val == v for val, _ in self.reachable)


def _n_inputs(F) -> int:
    if isinstance(F, IntegralForm):
        return F.n_vars
    if isinstance(F, LinearSplitForm):
        return F.n_vars
    if isinstance(F, (UniPoly, SplitPolynomial)):
        return 1
    raise QpdenseError(f"cannot probe a {type(F).__name__}")


def _evaluator(F):
    """Closure mapping a point tuple to the exact value of F."""
    if isinstance(F, (UniPoly, SplitPolynomial)):
        return lambda pt: F.evaluate(pt[0])
    if isinstance(F, (IntegralForm, LinearSplitForm)):
        return lambda pt: F.evaluate(pt)
    raise QpdenseError(f"cannot probe a {type(F).__name__}")


def _box_points(n: int, radius: int, cap: int):
    if n == 1:
        for x in range(-radius, radius + 1):
            yield (x,)
        return
    count = 0
    for pt in product(range(-radius, radius + 1), repeat=n):
        yield pt
        count += 1
        if count >= cap:
            return


def quotient_probe(
    F,
    p: int,
    unit_depth: int = 1,
    window: int = 1,
    budget: int = 20_000,
    seed: int = 0,
    box_radius: int | None = None,
) -> ProbeReport:
    """Deterministic box sweep then seeded random sampling; values are
    binned by (nu_p, unit mod p^unit_depth) and all pairwise quotient
    classes inside the valuation window are reported, with one witness
    pair retained per class."""
    require_prime(p)
    if budget < 1:
        raise QpdenseError("probe budget must be >= 1")
    n = _n_inputs(F)
    ev = _evaluator(F)
    pj = p**unit_depth

    if box_radius is None:
        # keep at least half the budget for the random phase when the
        # default box would swallow it (a truncated lex box samples badly)
        box_cap = min(budget // 2 + 1, 10**6)
        box_radius = p * p
        while box_radius > 1 and (2 * box_radius + 1) ** n > box_cap:
            box_radius = max(1, int(box_radius * 0.7))
    bins: dict = {}
    used = 0
    for pt in _box_points(n, box_radius, min(budget, 10**6)):
        used += 1
        val = ev(pt)
        if val == 0:
            continue
        nu = valuation_int(val, p)
        unit = (val // p**nu) % pj
        bins.setdefault((nu, unit), pt)
        if used >= budget:
            break

    rng = random.Random(seed)
    # random range deep enough that shifted-factor valuations up to ~14
    # p-adic digits appear with workable frequency
    M = p ** max(4, ceil(14 / log2(p)))
    while used < budget:
        pt = tuple(rng.randint(-M, M) for _ in range(n))
        used += 1
        val = ev(pt)
        if val == 0:
            continue
        nu = valuation_int(val, p)
        unit = (val // p**nu) % pj
        bins.setdefault((nu, unit), pt)

    by_val: dict[int, list] = {}
    for (nu, unit), wit in bins.items():
        by_val.setdefault(nu, []).append((unit, wit))
    reachable = set()
    witnesses = {}
    for nu1, group1 in by_val.items():
        for d in range(-window, window + 1):
            group2 = by_val.get(nu1 - d)
            if not group2:
                continue
            for u1, w1 in group1:
                for u2, w2 in group2:
                    cls = (d, u1 * inv_mod(u2, pj) % pj)
                    if cls not in reachable:
                        reachable.add(cls)
                        witnesses[cls] = (w1, w2)
    phi = pj - pj // p
    coverage = len(reachable) / ((2 * window + 1) * phi)
    return ProbeReport(
        prime=p,
        unit_depth=unit_depth,
        window=window,
        reachable=frozenset(reachable),
        coverage=coverage,
        budget_used=used,
        seed=seed,
        witnesses=witnesses,
    )


def valuation_census(
    F, p: int, depth: int, budget: int = 2_000_000
) -> tuple[Counter, bool]:
    """Multiset of nu_p(F(x)) over x in [0, p^depth)^n with F(x) != 0.

    Exhaustive when the box fits the budget; otherwise a seeded sample of
    the same size as the budget, flagged by the second return value.
    """
    require_prime(p)
    n = _n_inputs(F)
    ev = _evaluator(F)
    pk = p**depth
    total = pk**n
    census: Counter = Counter()
    if total <= budget:
        for pt in product(range(pk), repeat=n):
            val = ev(pt)
            if val:
                census[valuation_int(val, p)] += 1
        return census, True
    rng = random.Random(0)
    for _ in range(budget):
        pt = tuple(rng.randrange(pk) for _ in range(n))
        val = ev(pt)
        if val:
            census[valuation_int(val, p)] += 1
    return census, False
