"""Built-in regression catalog: germs and families with frozen expectations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import GermlabError, UnsupportedCaseError
from .families import conservation_report, excellence_verdict, semicontinuity_check
from .germs import GermSpec, UnfoldingSpec, germ, unfolding
from .ideals import DEFAULT_LIMITS, Limits
from .milnor import mu_image, mu_image_curve, mu_zero_via_radical
from .multipoints import NOT_A_FINITE, STABLE, marar_mond_report


def crosscap() -> GermSpec:
    return germ("cross-cap", 2, [["x", "y^2", "x*y"]])


def s_series(k: int) -> GermSpec:
    return germ(f"S{k}", 2, [["x", "y^2", f"y^3 + x^{k + 1}*y"]])


def bump() -> GermSpec:
    return germ("B2", 2, [["x", "y^2", "x^2*y + y^5"]])


def cuspidal_edge() -> GermSpec:
    return germ("cuspidal-edge", 2, [["x", "y^2", "y^3"]])


def plane_cusp() -> GermSpec:
    return germ("cusp", 1, [["y^2", "y^3"]])


def tacnode_pair() -> GermSpec:
    return germ("tacnode", 1, [["y", "y^2"], ["y", "-y^2"]])


def triple_lines() -> GermSpec:
    return germ("triple-lines", 1, [["y", "0"], ["0", "y"], ["y", "y"]])


def tacnode_plus_line() -> GermSpec:
    return germ("tacnode+line", 1, [["y", "y^2"], ["y", "-y^2"], ["y", "3*y"]])


def s2_family() -> UnfoldingSpec:
    """The S2 germ with its singular point translated along the x-axis.

    The fiber at parameter u carries one unstable point at (u, 0) whose local
    germ is again S2, so conservation holds with defect zero at every sample.
    """
    return unfolding(s_series(2), ["u"],
                     [["0", "0", "-3*u*x^2*y + 3*u^2*x*y - u^3*y"]])


def trivially_deformed_s2_family() -> UnfoldingSpec:
    return unfolding(s_series(2), ["t"], [["0", "0", "t*x^4*y"]])


def pt_family() -> UnfoldingSpec:
    """f_t(x, y) = (x, y^2, y*((x - t/2)^2 + (y^2 - t/2)^2 - t^2/8))."""
    return unfolding(bump(), ["t"], [["0", "0", "-t*x*y - t*y^3 + 3/8*t^2*y"]])


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str


@dataclass
class CatalogEntry:
    name: str
    kind: str  # "germ" or "family"
    build: Callable[[], GermSpec | UnfoldingSpec]
    run: Callable[[Limits], list[CheckResult]]


def _check(name: str, got, expected) -> CheckResult:
    ok = got == expected
    return CheckResult(name, ok, f"expected {expected!r}, got {got!r}")


def _germ_checks(build: Callable[[], GermSpec], verdict: str,
                 mu: int | None, delta: int | None = None) -> Callable[[Limits], list[CheckResult]]:
    def run(limits: Limits) -> list[CheckResult]:
        g = build()
        out = [
            _check("marar-mond verdict", marar_mond_report(g, limits).verdict, verdict)]
        if mu is not None:
            out.append(_check("mu_I", mu_image(g, limits).mu_i, mu))
        else:
            try:
                mu_image(g, limits)
                out.append(CheckResult("mu_I rejected", False,
                                       "expected an A-finiteness rejection"))
            except (UnsupportedCaseError, GermlabError):
                out.append(CheckResult("mu_I rejected", True, "rejected as expected"))
        if delta is not None:
            curve = mu_image_curve(g, limits)
            out.append(_check("delta", curve.delta, delta))
            out.append(_check("mu via delta", curve.mu_i, mu))
        return out

    return run


def _s2_family_checks(limits: Limits) -> list[CheckResult]:
    fam = s2_family()
    rep = conservation_report(fam, Fraction(-3), limits)
    out = [
        _check("mu_total", rep.mu_total, 2),
        _check("local_sum", rep.local_sum, 2),
        _check("defect", rep.defect, 0),
        _check("complete", rep.partial, False),
    ]
    ok, _w = semicontinuity_check(fam, [Fraction(-3), Fraction(1)], limits)
    out.append(_check("semicontinuity", ok, True))
    v = excellence_verdict(fam, [Fraction(-3), Fraction(1)], limits)
    out.append(_check("good", v.good, "no"))
    out.append(_check("excellent", v.excellent, "no"))
    return out


def _trivial_family_checks(limits: Limits) -> list[CheckResult]:
    fam = trivially_deformed_s2_family()
    v = excellence_verdict(fam, [Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-3)],
                           limits)
    out = [
        _check("excellent", v.excellent, "yes"),
        _check("good", v.good, "yes"),
        _check("constancy applied", v.houston, "constant-mu applied"),
    ]
    rep = conservation_report(fam, Fraction(1), limits)
    out.append(_check("defect", rep.defect, 0))
    return out


def _pt_family_checks(limits: Limits) -> list[CheckResult]:
    fam = pt_family()
    rep = conservation_report(fam, Fraction(1), limits)
    out = [
        _check("mu_total", rep.mu_total, 2),
        _check("local_sum", rep.local_sum, 0),
        _check("defect", rep.defect, 2),
    ]
    v = excellence_verdict(fam, [Fraction(1), Fraction(-1), Fraction(1, 2)], limits)
    out.append(_check("good", v.good, "yes"))
    out.append(_check("excellent", v.excellent, "no"))
    sample_notes = [e for e in v.evidence if "zero-stable-residuals" in e]
    no_real = all(r["real_roots"] == 0
                  for e in sample_notes for r in e["zero-stable-residuals"])
    out.append(_check("candidates all non-real (excellent over R)", no_real, True))
    ok, _w = semicontinuity_check(fam, [Fraction(1)], limits)
    out.append(_check("semicontinuity", ok, True))
    return out


def _radical_checks(limits: Limits) -> list[CheckResult]:
    from .germs import build_one_param_stable_unfolding

    out = []
    F = build_one_param_stable_unfolding(crosscap())
    out.append(_check("cross-cap radical route", mu_zero_via_radical(F, limits), True))
    F = build_one_param_stable_unfolding(s_series(1))
    out.append(_check("S1 radical route", mu_zero_via_radical(F, limits), False))
    return out


def entries() -> list[CatalogEntry]:
    out: list[CatalogEntry] = [
        CatalogEntry("cross-cap", "germ", crosscap, _germ_checks(crosscap, STABLE, 0)),
    ]
    for k in range(1, 5):
        out.append(CatalogEntry(
            f"S{k}", "germ", (lambda k=k: s_series(k)),
            _germ_checks(lambda k=k: s_series(k), "a-finite", k)))
    out.append(CatalogEntry("B2", "germ", bump, _germ_checks(bump, "a-finite", 2)))
    out.append(CatalogEntry("cuspidal-edge", "germ", cuspidal_edge,
                            _germ_checks(cuspidal_edge, NOT_A_FINITE, None)))
    out.append(CatalogEntry("cusp", "germ", plane_cusp,
                            _germ_checks(plane_cusp, "a-finite", 1, delta=1)))
    out.append(CatalogEntry("tacnode", "germ", tacnode_pair,
                            _germ_checks(tacnode_pair, "a-finite", 1, delta=2)))
    out.append(CatalogEntry("triple-lines", "germ", triple_lines,
                            _germ_checks(triple_lines, "a-finite", 1, delta=3)))
    out.append(CatalogEntry("tacnode+line", "germ", tacnode_plus_line,
                            _germ_checks(tacnode_plus_line, "a-finite", 2, delta=4)))
    out.append(CatalogEntry("radical-route", "germ", crosscap, _radical_checks))
    out.append(CatalogEntry("S2-family", "family", s2_family, _s2_family_checks))
    out.append(CatalogEntry("trivially-deformed-S2-family", "family",
                            trivially_deformed_s2_family, _trivial_family_checks))
    out.append(CatalogEntry("pt-family", "family", pt_family, _pt_family_checks))
    return out


def all_germ_entries() -> list[tuple[str, GermSpec]]:
    """Catalog germs (not families), for property suites."""
    named = [
        ("cross-cap", crosscap()),
        ("S1", s_series(1)),
        ("S2", s_series(2)),
        ("S3", s_series(3)),
        ("S4", s_series(4)),
        ("B2", bump()),
        ("cuspidal-edge", cuspidal_edge()),
        ("cusp", plane_cusp()),
        ("tacnode", tacnode_pair()),
        ("triple-lines", triple_lines()),
        ("tacnode+line", tacnode_plus_line()),
    ]
    return named
