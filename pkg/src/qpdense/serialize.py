"""Stable structured schema (JSON-compatible dicts) for verdicts,
certificates, spectra and probe reports.

Schema id "qpdense/1".  Every payload round-trips: loading a serialized
verdict reconstructs objects that verify_certificate accepts.
"""

from __future__ import annotations

from typing import Any

from .certificates import (
    AnisotropicModP,
    Certificate,
    CoprimeMultiplicities,
    CubicCriterion,
    DensityVerdict,
    FamilyObstruction,
    QuarticCriterion,
    SimpleLinearFactorModP,
    SimpleZeroSpecialization,
    SmoothPointModP,
    Status,
    UnivariateNonvanishing,
    ValuationObstruction,
)
from .errors import QpdenseError
from .forms import IntegralForm, LinearSplitForm, SplitPolynomial
from .parser import format_form, format_unipoly
from .probe import ProbeReport
from .spectrum import ValuationSpectrum
from .unipoly import UniPoly

SCHEMA = "qpdense/1"


def form_to_dict(F) -> dict:
    if isinstance(F, IntegralForm):
        return {
            "type": "form",
            "n_vars": F.n_vars,
            "degree": F.degree,
            "terms": [[list(e), c] for e, c in F.sorted_terms()],
            "text": format_form(F),
        }
    if isinstance(F, LinearSplitForm):
        return {
            "type": "split_form",
            "n_vars": F.n_vars,
            "content": F.content,
            "factors": [[list(c), m] for c, m in F.factors],
        }
    if isinstance(F, SplitPolynomial):
        return {
            "type": "split_poly",
            "content": F.content,
            "factors": [[list(c), m] for c, m in F.factors],
        }
    if isinstance(F, UniPoly):
        return {
            "type": "poly",
            "coeffs": list(F.coeffs),
            "modulus": F.modulus,
            "text": format_unipoly(F.coeffs),
        }
    raise QpdenseError(f"cannot serialize {type(F).__name__}")


def form_from_dict(d: dict):
    t = d["type"]
    if t == "form":
        return IntegralForm(
            d["n_vars"], d["degree"], {tuple(e): c for e, c in d["terms"]}
        )
    if t == "split_form":
        return LinearSplitForm(
            d["content"], [(tuple(c), m) for c, m in d["factors"]], d["n_vars"]
        )
    if t == "split_poly":
        return SplitPolynomial(
            d["content"], [(tuple(c), m) for c, m in d["factors"]]
        )
    if t == "poly":
        return UniPoly(d["coeffs"], d.get("modulus"))
    raise QpdenseError(f"unknown form payload {t!r}")


def spectrum_to_dict(s: ValuationSpectrum) -> dict:
    return {
        "q": s.q,
        "components": [[b, list(strides)] for b, strides in s.components],
        "finite_values": list(s.finite_values),
        "tails": [[b, list(strides)] for b, strides in s.tails],
        "homogeneity_stride": s.homogeneity_stride,
        "exhaustive_depth": s.exhaustive_depth,
    }


def spectrum_from_dict(d: dict) -> ValuationSpectrum:
    return ValuationSpectrum(
        q=d["q"],
        components=tuple((b, tuple(s)) for b, s in d["components"]),
        homogeneity_stride=d["homogeneity_stride"],
        exhaustive_depth=d["exhaustive_depth"],
    )


def certificate_to_dict(cert: Certificate) -> dict:
    base: dict[str, Any] = {"kind": cert.kind}
    if isinstance(cert, SimpleZeroSpecialization):
        base.update(
            free_var=cert.free_var,
            values=list(cert.values),
            root=cert.root,
            precision=cert.precision,
        )
    elif isinstance(cert, CoprimeMultiplicities):
        base.update(
            free_var1=cert.free_var1,
            values1=list(cert.values1),
            root1=cert.root1,
            mult1=cert.mult1,
            free_var2=cert.free_var2,
            values2=list(cert.values2),
            root2=cert.root2,
            mult2=cert.mult2,
            precision=cert.precision,
        )
    elif isinstance(cert, SimpleLinearFactorModP):
        base.update(linear=list(cert.linear), witness=list(cert.witness))
    elif isinstance(cert, SmoothPointModP):
        base.update(point=list(cert.point), partial_index=cert.partial_index)
    elif isinstance(cert, CubicCriterion):
        base.update(
            discriminant_value=cert.discriminant_value, legendre=cert.legendre
        )
    elif isinstance(cert, QuarticCriterion):
        base.update(case=cert.case, data=dict(cert.data))
    elif isinstance(cert, AnisotropicModP):
        base.update(points_checked=cert.points_checked)
    elif isinstance(cert, UnivariateNonvanishing):
        base.update(values=list(cert.values))
    elif isinstance(cert, ValuationObstruction):
        base.update(
            spectrum=spectrum_to_dict(cert.spectrum),
            split=form_to_dict(cert.split),
        )
    elif isinstance(cert, FamilyObstruction):
        base.update(
            family=cert.family, params=dict(cert.params), checks=dict(cert.checks)
        )
    else:
        raise QpdenseError(f"cannot serialize certificate {type(cert).__name__}")
    return base


def certificate_from_dict(d: dict) -> Certificate:
    kind = d["kind"]
    if kind == "simple_zero_specialization":
        return SimpleZeroSpecialization(
            d["free_var"], tuple(d["values"]), d["root"], d["precision"]
        )
    if kind == "coprime_multiplicities":
        return CoprimeMultiplicities(
            d["free_var1"],
            tuple(d["values1"]),
            d["root1"],
            d["mult1"],
            d["free_var2"],
            tuple(d["values2"]),
            d["root2"],
            d["mult2"],
            d["precision"],
        )
    if kind == "simple_linear_factor_mod_p":
        return SimpleLinearFactorModP(tuple(d["linear"]), tuple(d["witness"]))
    if kind == "smooth_point_mod_p":
        return SmoothPointModP(tuple(d["point"]), d["partial_index"])
    if kind == "cubic_criterion":
        return CubicCriterion(d["discriminant_value"], d["legendre"])
    if kind == "quartic_criterion":
        return QuarticCriterion(d["case"], dict(d["data"]))
    if kind == "anisotropic_mod_p":
        return AnisotropicModP(d["points_checked"])
    if kind == "univariate_nonvanishing":
        return UnivariateNonvanishing(tuple(d["values"]))
    if kind == "valuation_obstruction":
        return ValuationObstruction(
            spectrum_from_dict(d["spectrum"]), form_from_dict(d["split"])
        )
    if kind == "family_obstruction":
        return FamilyObstruction(d["family"], dict(d["params"]), dict(d["checks"]))
    raise QpdenseError(f"unknown certificate kind {kind!r}")


def verdict_to_dict(v: DensityVerdict) -> dict:
    return {
        "schema": SCHEMA,
        "object": "verdict",
        "status": v.status.value,
        "prime": v.prime,
        "form": form_to_dict(v.form),
        "certificate": certificate_to_dict(v.certificate) if v.certificate else None,
        "evidence": v.evidence,
        "config": v.config,
    }


def verdict_from_dict(d: dict) -> DensityVerdict:
    if d.get("schema") != SCHEMA or d.get("object") != "verdict":
        raise QpdenseError("not a qpdense/1 verdict payload")
    return DensityVerdict(
        Status(d["status"]),
        d["prime"],
        form_from_dict(d["form"]),
        certificate_from_dict(d["certificate"]) if d["certificate"] else None,
        d.get("evidence"),
        d.get("config") or {},
    )


def probe_report_to_dict(r: ProbeReport) -> dict:
    return {
        "schema": SCHEMA,
        "object": "probe_report",
        "prime": r.prime,
        "unit_depth": r.unit_depth,
        "window": r.window,
        "reachable": sorted([v, u] for v, u in r.reachable),
        "coverage": r.coverage,
        "budget_used": r.budget_used,
        "seed": r.seed,
        "witnesses": {
            f"{v},{u}": [list(w1), list(w2)]
            for (v, u), (w1, w2) in sorted(r.witnesses.items())
        },
    }


def scan_result_to_dict(result) -> dict:
    return {
        "schema": SCHEMA,
        "object": "scan_result",
        "form": form_to_dict(result.form),
        "free_var": result.free_var,
        "values": list(result.values),
        "specialization": form_to_dict(result.specialization),
        "discriminant": result.disc,
        "prime_bound": result.prime_bound,
        "verdicts": [verdict_to_dict(result.table[p]) for p in sorted(result.table)],
    }
