"""Registered verification cases, one per checked claim.

Each case recomputes a claimed outcome and returns a RunReport.  ``covers``
lists the topic keys of the claim; the test suite checks that every topic in
:data:`TOPICS` has at least one case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import conic_bundle as cb
from . import dpf, enumeration, genus, screens
from .complete_intersection import dpf2_residual_dot_L, dpf3_residual, quadric_threefold, threefold_numbers
from .invariants import (
    OddDegree,
    Surface4Invariants,
    Threefold5Invariants,
    check_ghit,
    check_s3_nonneg,
    k2l,
    k3,
    kl2,
    known_pairs,
    lookup,
    surface_k2,
    threefold_invariants,
)
from .rational import render
from .report import RunReport


class UnknownCaseId(KeyError):
    pass


TOPICS = (
    "dpf2", "dpf3", "surface_dpf", "adjoint_numbers", "s3_ghit", "degeven", "classification_table",
    "coreasybound", "boundasep", "epas", "numericaldpf", "secondreduction", "divisorial_mori", "fano_d22",
    "delpezzo_variety", "quadric_bundle_curve", "mukai", "quadric_fibration_surface", "noveronese",
    "delpezzo_fibration_delta", "relvan", "socrelle", "notinp4", "delpezzofibr", "fano_fibration",
    "quadric_fibration_curve", "conicbundle_system", "conicbundle_solution", "conicbundle_triangle",
    "superbound", "degree_cascade", "maple_enumeration",
)


@dataclass(frozen=True)
class VerificationCase:
    id: str
    claim: str
    covers: tuple[str, ...]
    run: Callable[[], tuple[str, list[str], object, object]]

    def execute(self) -> RunReport:
        verdict, trail, expected, observed = self.run()
        return RunReport(self.id, verdict, trail, self.claim, expected, observed, self.covers)


_CASES: dict[str, VerificationCase] = {}


def case(case_id: str, claim: str, *covers: str):
    def register(fn):
        if case_id in _CASES:
            raise ValueError(f"duplicate case {case_id}")
        _CASES[case_id] = VerificationCase(case_id, claim, covers, fn)
        return fn

    return register


def _cmp(expected, observed, trail: list[str], mismatch: str = "fail"):
    verdict = "pass" if expected == observed else mismatch
    trail = trail + [f"expected {expected!r}, observed {observed!r}"]
    return verdict, trail, expected, observed


# -- double point relations on complete intersections ----------------------

_CI_TYPES = {"A": (1, 1), "B": (1, 2), "E": (1, 3), "H": (1, 4), "I": (2, 2), "M": (1, 5)}


def _ci_numbers():
    for label, extra in _CI_TYPES.items():
        yield label, threefold_numbers(quadric_threefold(*extra))


@case("dpf.identity", "with all Chern data zero and L^2 = 1 the relation gives d = n^2 - n + 2", "dpf2")
def _():
    trail, observed = [], {}
    for n in (5, 6):
        data = dpf.SurfaceRestrictionData(n=n, L2=1, c1T_L=0, c1T_sq=0, c2T=0)
        sol = dpf.solve_degree(dpf.dpf2_equation(data), dpf.DegreeConstraints(even=False))
        observed[n] = sorted(sol.degrees)
        trail.append(f"n={n}: {sol.trail[0]}")
    return _cmp({5: [22], 6: [32]}, observed, trail)


@case("dpf.complete_intersections", "both double point relations vanish on the complete-intersection types", "dpf2", "dpf3")
def _():
    trail, bad = [], []
    for label, t in _ci_numbers():
        r2, r3 = dpf2_residual_dot_L(t), dpf3_residual(t)
        trail.append(f"type {label}: d={t.d}, degree-two residual {render(r2)}, degree-three residual {render(r3)}")
        if r2 or r3:
            bad.append(label)
    return _cmp([], bad, trail)


@case("adjoint.complete_intersections", "K.L^2, K^2.L, K^3 closed forms agree with Chern numbers", "adjoint_numbers")
def _():
    trail, bad = [], []
    for label, t in _ci_numbers():
        inv = Threefold5Invariants(t.d, t.g, int(t.chi_OS), int(t.chi_OX))
        actual = (-t.x1L2, t.x1sqL, -t.x1cube)
        closed = (kl2(inv), k2l(inv), k3(inv))
        trail.append(f"type {label}: (K.L^2, K^2.L, K^3) = {tuple(map(render, actual))}, closed forms {tuple(map(render, closed))}")
        if tuple(map(Fraction, actual)) != closed:
            bad.append(label)
    return _cmp([], bad, trail)


@case("surface_dpf.sections", "K_S^2 from (d, g, chi) equals the actual K_S^2 of the surface sections", "surface_dpf")
def _():
    trail, bad = [], []
    for label, extra in _CI_TYPES.items():
        X = quadric_threefold(*extra)
        t = threefold_numbers(X)
        S = X.hyperplane_section()
        actual = Fraction(S.integrate(1, 1))
        forced = surface_k2(Surface4Invariants(t.d, t.g, int(t.chi_OS)))
        trail.append(f"type {label}: K_S^2 = {render(actual)}, relation gives {render(forced)}")
        if actual != forced:
            bad.append(label)
    return _cmp([], bad, trail)


@case("s3.known_pairs", "s3 >= 0 and the Hodge-index bound on chi(O_S) hold for the known threefolds", "s3_ghit")
def _():
    trail, bad = [], []
    for rec in known_pairs():
        inv = threefold_invariants(rec)
        if inv is None:
            continue
        s3, gh = check_s3_nonneg(inv), check_ghit(inv)
        trail.append(f"type {rec.type_label}: s3 residual {render(s3.residual)}, ghit residual {render(gh.residual)}")
        if not (s3 and gh):
            bad.append(rec.type_label)
    return _cmp([], bad, trail)


@case("degeven", "odd degrees are rejected", "degeven")
def _():
    rejected = []
    for d in (3, 5, 7, 99):
        try:
            Threefold5Invariants(d, 0, 0, 0)
        except OddDegree:
            rejected.append(d)
    return _cmp([3, 5, 7, 99], rejected, ["constructing invariants with odd d"])


@case("classification.table", "the low-degree table is consistent: even degrees, integral adjoint numbers", "classification_table", "relvan")
def _():
    trail = []
    degrees_even = all(r.d % 2 == 0 for r in known_pairs())
    integral = []
    for rec in known_pairs():
        inv = threefold_invariants(rec)
        if inv is None:
            continue
        vals = (kl2(inv), k2l(inv), k3(inv))
        trail.append(f"type {rec.type_label}: chi(O_X) = {inv.chi_OX}, (K.L^2, K^2.L, K^3) = {tuple(map(render, vals))}")
        integral.append(all(v.denominator == 1 for v in vals))
    trail.append("lookup(d=6, n=5): " + ", ".join(r.type_label for r in lookup(6, 5)))
    observed = (len(known_pairs()), degrees_even, all(integral), [r.type_label for r in lookup(6, 5)])
    return _cmp((13, True, True, ["F", "G"]), observed, trail)


# -- genus bounds -----------------------------------------------------------


@case("coreasybound", "bound for curves on a surface of degree 2k", "coreasybound")
def _():
    obs = (genus.contained_bound(44, 3), genus.contained_bound(98, 11))
    return _cmp((Fraction(484, 3), Fraction(2401, 11) + 392), obs, ["d=44, k=3 and d=98, k=11"])


@case("boundasep", "bound for curves on no surface of degree < 2k", "boundasep")
def _():
    obs = genus.notcontained_bound(20, 11)
    return _cmp(Fraction(400, 22) + 70, obs, ["d=20, k=11"])


@case("epas", "0 <= mu_s <= s^2 d and the incremental identity for mu", "epas")
def _():
    trail = [f"mu(8,5,2) = {render(genus.mu(8, 5, 2))}"]
    ok = genus.epas_check(8, 5, 2).ok
    ident = all(
        genus.mu(d, g, s + t) == genus.mu(d, g, s) + s * t * d + t * (s + t - 3) * d - 2 * t * (g - 1)
        for d in (10, 20, 44) for g in (0, 7, 50) for s in (1, 2, 3) for t in (1, 2)
    )
    trail.append(f"identity checked on a grid: {ident}")
    return _cmp((True, True), (ok, ident), trail)


@case("castelnuovo.p4", "genus bound for degree-12 curves in P^4", "delpezzofibr")
def _():
    return _cmp(13, genus.castelnuovo_p4(12), [f"classical bound {genus.castelnuovo_classical(12)}, refined bound {genus.castelnuovo_p4(12)}"])


# -- restriction presets ----------------------------------------------------


def _preset_case(case_id: str, preset: str, covers: tuple[str, ...], mismatch: str = "fail"):
    p = dpf.preset(preset)

    def run():
        sol = p.solve()
        return _cmp(sorted(p.expected_degrees, key=repr), sorted(sol.solutions, key=repr), list(sol.trail), mismatch)

    _CASES[case_id] = VerificationCase(case_id, f"{p.citation}: degrees {list(p.expected_degrees)}", covers, run)


for _id, _preset, _covers in (
    ("numericaldpf.main", "numericaldpf_main", ("numericaldpf",)),
    ("numericaldpf.main_n6", "numericaldpf_main_n6", ("numericaldpf",)),
    ("numericaldpf.1", "numericaldpf_1", ("numericaldpf",)),
    ("numericaldpf.2", "numericaldpf_2", ("numericaldpf",)),
    ("numericaldpf.3", "numericaldpf_3", ("numericaldpf",)),
    ("numericaldpf.4", "numericaldpf_4", ("numericaldpf",)),
    ("numericaldpf.scroll", "scroll_plane_on_Q6", ("numericaldpf",)),
    ("secondreduction.blowup", "blowup_plane_in_fourfold", ("secondreduction",)),
    ("divisorialmori.1", "mori_1", ("divisorial_mori",)),
    ("divisorialmori.4", "mori_4", ("divisorial_mori",)),
    ("quadricbundle.curve_n5", "quadric_surface_fiber_n5", ("quadric_bundle_curve", "quadric_fibration_curve")),
    ("quadricfibration.curve_n6", "quadric_threefold_fiber_n6", ("quadric_fibration_curve",)),
    ("quadricfibration.surface_n6", "quadric_fiber_over_surface_n6", ("quadric_fibration_surface",)),
    ("delpezzofibration.delta", "delpezzo_surface_fiber", ("delpezzo_fibration_delta",)),
):
    _preset_case(_id, _preset, _covers)

# the printed degrees for this preset are not reproduced; see the trail
_preset_case("divisorialmori.2", "mori_2", ("divisorial_mori",), mismatch="discrepancy")


@case("secondreduction.cap", "the blow-up equation bounds the degree by 30", "secondreduction")
def _():
    sol = dpf.preset("blowup_plane_in_fourfold").solve()
    return _cmp(30, sol.degree_cap, list(sol.trail))


@case("divisorialmori.3", "on F_0 with L = pE + qf the degree is at most 20", "divisorial_mori")
def _():
    bound, sols = dpf.mori_3_bound()
    trail = ["(22 - d) pq = 5(p + q) - 2 > 0", "solutions (d, p, q): " + ", ".join(map(str, sols))]
    return _cmp(20, max([bound] + [s[0] for s in sols]), trail)


# -- screens ----------------------------------------------------------------


@case("fanod22", "no Fano threefold of degree >= 22", "fano_d22")
def _():
    feasible = [d for d in range(22, 202, 2) if screens.fano_threefold_feasible(d)[0]]
    return _cmp([], feasible, ["exhaustive search over (lambda, mu, -K^3) for even d in [22, 200]"])


@case("delpezzo.variety", "Del Pezzo threefolds have d = 4 or 6", "delpezzo_variety")
def _():
    p = screens.del_pezzo_variety_polynomial()
    return _cmp({4, 6}, screens.del_pezzo_variety_degrees(), [f"{p.format('d')} = 0"])


@case("mukai", "Mukai threefolds have (d, g) = (6, 4) or (8, 5)", "mukai")
def _():
    p = screens.mukai_polynomial()
    return _cmp({(6, 4), (8, 5)}, screens.mukai_degrees(), [f"{p.format('d')} = 0"])


@case("noveronese.pairs", "(P^4, O(2)) and (Q^3, O(2)) violate the surface relation", "noveronese", "surface_dpf")
def _():
    checks = screens.veronese_pair_checks()
    trail = [f"{c.name}: d={c.d}, g={c.g}, chi={render(c.chi)}, K^2 = {render(c.k2_actual)} but the relation forces {render(c.k2_forced)}" for c in checks]
    return _cmp([True, True], [c.excluded for c in checks], trail)


@case("noveronese.bundle", "a Veronese bundle would need d = 10 divisible by 4", "noveronese")
def _():
    sol = dpf.preset("veronese_fiber_n5").solve()
    trail = list(sol.trail) + [f"d = 10 divisible by 4: {dpf.veronese_mod4_check(10)}"]
    return _cmp(({10}, False), (sol.degrees, dpf.veronese_mod4_check(10)), trail)


@case("notinp4", "surface sections for d = 8, 10, 12 cannot lie in P^4", "notinp4", "socrelle")
def _():
    results = [screens.notinp4_check(d) for d in (8, 10, 12)]
    trail = [line for r in results for line in r.trail]
    d12 = results[2]
    return _cmp(([True, True, True], (25, 13)), ([r.excluded for r in results], (int(d12.g), int(d12.chi))), trail)


@case("delpezzofibr.d12", "degree-12 Del Pezzo fibration: g = 10, chi = 3, p_g = 2, q = 0", "delpezzofibr", "socrelle", "relvan")
def _():
    sol, trail = screens.resolve_delpezzo_fibration_invariants(12)
    return _cmp((12, 10, 3, 2, 0, 0), (sol.d, sol.g, sol.chi_OS, sol.p_g, sol.q, sol.base_genus), trail)


@case("delpezzofibr.x3", "on Q^6 the degree-three relation forces x3(F) = 24, excluding both fibers", "delpezzofibr", "dpf3")
def _():
    dp = dpf.delpezzo_threefold_fiber("Del Pezzo", 24)
    forced = dpf.dpf3_x3_forced(dp, 12).forced
    trail = [f"x3 forced = {render(forced)}"]
    flags = []
    for name, euler in (("P1xP1xP1", 8), ("P(T_P2)", 6)):
        chk = dpf.dpf3_x3_forced(dpf.delpezzo_threefold_fiber(name, euler), 12)
        trail.append(f"{name}: x3 = {euler}, contradiction {chk.contradiction}")
        flags.append(chk.contradiction)
    return _cmp((Fraction(24), [True, True]), (forced, flags), trail)


@case("fanofibration.n5", "Fano fibrations on Q^5 have d <= 20", "fano_fibration")
def _():
    b = screens.fano_fibration_bound(5)
    return _cmp(20, b.bound, b.trail)


@case("fanofibration.n6", "Fano fibrations on Q^6 have d <= 30 (recorded constant)", "fano_fibration")
def _():
    b = screens.fano_fibration_bound(6)
    return _cmp(30, b.bound, b.trail)


# -- conic bundles ----------------------------------------------------------

_GRID = range(20, 277, 2)


@case("conicbundle.P", "-det(M)/2 = 3d^3 - 27d^2 - 1520d + 18976", "conicbundle_system")
def _():
    bad = [d for d in _GRID if cb.P_from_determinant(d) != cb.P(d)]
    return _cmp([], bad, [f"P(20) = {render(cb.P(20))}", "checked every even d in [20, 276]"])


@case("conicbundle.system", "the printed system agrees with the one derived from intersection rules", "conicbundle_system")
def _():
    comp = cb.compare_with_derivation(44, printed_rhs=True)
    fixed = cb.compare_with_derivation(44, printed_rhs=False)
    trail = [
        f"printed rows = T * derived rows with T = {comp.transform!r}",
        f"printed right side: rows with residual {comp.faulty_rows}; residual of row 4 = "
        + ", ".join(f"{k}: {render(v)}" for k, v in comp.residual[3].items()),
        f"with the x term of c[4] negated: rows with residual {fixed.faulty_rows}",
    ]
    return _cmp([], comp.faulty_rows, trail, mismatch="discrepancy")


@case("conicbundle.closed_forms", "the printed solution, e2, e1.D and g-1 polynomials match the exact solve", "conicbundle_solution")
def _():
    found = []
    for d in (20, 44, 98, 276):
        for x, y in ((0, 0), (7, 3), (330, 54)):
            try:
                cb.solve_point((d, x, y), strict=True)
                cb.e2_scaled(d, x, y)
                cb.e1D_scaled(d, x, y)
                cb.genus_of_point(d, x, y)
            except cb.PrintedFormulaDiscrepancy as exc:
                found.extend(exc.discrepancies)
    return _cmp([], found, ["d in {20, 44, 98, 276}, (x, y) in {(0,0), (7,3), (330,54)}"], mismatch="discrepancy")


@case("conicbundle.triangle", "x1 < x2, the e2 line rises and the e1.D line falls, for even d in [20, 276]", "conicbundle_triangle")
def _():
    bad = []
    for d in _GRID:
        t = cb.triangle(d)
        s1, s2 = t.slopes
        printed = (cb.printed_vertex("x1", d), cb.printed_vertex("x2", d))
        if not (t.v1[0] < t.v2[0] and s1 > 0 and s2 < 0 and printed == (t.v1[0], t.v2[0])):
            bad.append(d)
    t = cb.triangle(20)
    return _cmp([], bad, [f"d=20: v1 = ({render(t.v1[0])}, 0), v2 = ({render(t.v2[0])}, 0), v3 = ({render(t.v3[0])}, {render(t.v3[1])})"])


@case("conicbundle.superbound", "the genus range is attained at the two base vertices", "superbound")
def _():
    bad = []
    for d in _GRID:
        try:
            lo, hi = cb.superbound(d, strict=True)
        except cb.PrintedFormulaDiscrepancy:
            bad.append(d)
            continue
        if lo > hi:
            bad.append(d)
    lo, hi = cb.superbound(20)
    apex = [d for d in _GRID if cb.genus_range(d)[1] > cb.superbound(d, strict=False)[1]]
    trail = [
        f"d=20: {render(lo)} <= g-1 <= {render(hi)}",
        f"the apex exceeds the upper end for d in {apex}; the triangle maximum at d=20 is {render(cb.genus_range(20)[1])}",
    ]
    return _cmp([], bad, trail)


@case("conicbundle.cascade", "degree bounds 98; 64, 58, 54, 48, 44, 40, 40, 276; 42; contradiction", "degree_cascade")
def _():
    c = cb.degree_bound_cascade()
    trail = [f"{r.case}: max d = {r.max_d} ({r.trail})" for r in c.rows]
    observed = [r.max_d for r in c.rows[:-1]] + [cb.cascade_contradiction(c.rows[-1])]
    expected = [98, 64, 58, 54, 48, 44, 40, 40, 276, 42, True]
    trail.append(f"degree two: printed d <= {c.rows[-1].printed}; recomputation leaves no even d >= 14")
    return _cmp(expected, observed, trail)


@case("maple.enumeration", "the lattice sweep over 20 <= d <= 276 leaves d = 44", "maple_enumeration")
def _():
    report = enumeration.run(enumeration.FilterConfig())
    trail = [f"survivors without the external genus bound: {report.survivors}"]
    for d in report.survivors:
        for w in report.witnesses(d):
            trail.append(f"d={d}: x={w['x']}, y={w['y']}, g={w['g']}, chi(O_Y)={w['chiY']}, chi(O_S)={w['chiS']}")
    return _cmp(True, 44 in report.survivors, trail)


def cases() -> dict[str, VerificationCase]:
    return dict(sorted(_CASES.items()))


def resolve(ids: list[str] | str) -> list[VerificationCase]:
    if ids == "all" or ids == ["all"]:
        return list(cases().values())
    if isinstance(ids, str):
        ids = [ids]
    out = []
    for i in ids:
        if i not in _CASES:
            raise UnknownCaseId(i)
        out.append(_CASES[i])
    return out


def verify(ids: list[str] | str = "all", jobs: int = 1) -> list[RunReport]:
    selected = resolve(ids)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda c: c.execute(), selected))
    else:
        reports = [c.execute() for c in selected]
    return sorted(reports, key=lambda r: r.case_id)


def covered_topics() -> set[str]:
    return {t for c in _CASES.values() for t in c.covers}



# Each claim topic is owned by exactly one case; other cases may touch it too.
PRIMARY_CASE = {
    "dpf2": "dpf.complete_intersections",
    "dpf3": "dpf.complete_intersections",
    "surface_dpf": "surface_dpf.sections",
    "adjoint_numbers": "adjoint.complete_intersections",
    "s3_ghit": "s3.known_pairs",
    "degeven": "degeven",
    "classification_table": "classification.table",
    "coreasybound": "coreasybound",
    "boundasep": "boundasep",
    "epas": "epas",
    "numericaldpf": "numericaldpf.main",
    "secondreduction": "secondreduction.blowup",
    "divisorial_mori": "divisorialmori.1",
    "fano_d22": "fanod22",
    "delpezzo_variety": "delpezzo.variety",
    "quadric_bundle_curve": "quadricbundle.curve_n5",
    "mukai": "mukai",
    "quadric_fibration_surface": "quadricfibration.surface_n6",
    "noveronese": "noveronese.pairs",
    "delpezzo_fibration_delta": "delpezzofibration.delta",
    "relvan": "classification.table",
    "socrelle": "delpezzofibr.d12",
    "notinp4": "notinp4",
    "delpezzofibr": "delpezzofibr.d12",
    "fano_fibration": "fanofibration.n5",
    "quadric_fibration_curve": "quadricfibration.curve_n6",
    "conicbundle_system": "conicbundle.system",
    "conicbundle_solution": "conicbundle.closed_forms",
    "conicbundle_triangle": "conicbundle.triangle",
    "superbound": "conicbundle.superbound",
    "degree_cascade": "conicbundle.cascade",
    "maple_enumeration": "maple.enumeration",
}


def coverage_gaps() -> list[str]:
    """Topics without a registered owning case (empty when complete)."""
    gaps = []
    for topic in TOPICS:
        cid = PRIMARY_CASE.get(topic)
        if cid is None or cid not in _CASES or topic not in _CASES[cid].covers:
            gaps.append(topic)
    return gaps
