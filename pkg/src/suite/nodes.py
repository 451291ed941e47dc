"""Command nodes for the suite graph.

Each method of Nodes is a graph node named after a command in COMMANDS (dashes become
underscores). A node reads ``state["config"]``, writes its CSV/OBJ artifacts into the run's
output directory and returns ``{"report": SuiteReport}``. Library errors are handled by the
middleware in src.core.middleware.

To add a command:
1. Add it to COMMANDS in constants.py
2. Add a method here
3. Add argparse wiring in main.py if it needs new flags
"""

import math

import numpy as np
from langgraph.runtime import Runtime
from pydantic import ValidationError

from src.core.constants import cantor_config, tolerances
from src.core.context import RunContext
from src.core.errors import DomainError, FlowError
from src.core.settings import logger
from src.core.workers import parallel_map
from src.export import graph_mesh, max_graph_deviation, strip_mesh, write_csv, write_obj
from src.heisenberg import HPoint, dilate
from src.lagrangian import (
    area_formula_check,
    bernstein_verdict,
    build_parametrization,
    change_of_variables_check,
    check_axioms,
    fit_quadratic,
    lagrangian_first_variation,
    profile_constraints_check,
)
from src.numerics import (
    RayleighProblem,
    flow_batch,
    flow_semigroup_check,
    flow_separation_check,
    ode_flow,
    rayleigh_closed_form,
    rayleigh_min,
)
from src.strips import (
    calibration_check,
    nu_divergence,
    sample_points,
    strip_field,
    strip_second_variation_terms,
)
from src.suite.fields import select_field, select_profile
from src.suite.state import Check, RunConfig, SuiteReport, SuiteState
from src.surfaces import (
    cantor_a,
    cantor_convergence,
    cantor_l2_distance,
    cantor_level,
    cantor_profile,
    cantor_sv_quantities,
    cone_calibration_check,
    cone_contains,
    cone_convergence,
    cone_eps,
    cone_field,
    cone_stability_bound,
    cy_sets,
    g3_lp_integral,
)
from src.variation import (
    ScalarField,
    TestBump,
    bump_grid,
    custom_field,
    graph_area_result,
    linear_t_field,
    plane_field,
    variation_fd_check,
    variation_report,
)

# Anchors quoted in reports.
ANCHOR_AREA = "A_f(E) = ∫_E √(1 + (∇^f f)²)"
ANCHOR_STATIONARY = "I_f(φ) = 0 for every test function"
ANCHOR_STABLE = "II_f(φ) ≥ 0 for every test function"
ANCHOR_QUADRATIC = "χ(s, τ) = a(τ)s²/2 + b(τ)s + τ"
ANCHOR_PROFILE = "2(a₁-a₂)(τ₁-τ₂) > (b₁-b₂)² or (a₁, b₁) = (a₂, b₂)"
ANCHOR_RULED = "Γ_f = {(0,0,τ) + s(a(τ),1,0)}"
ANCHOR_CONE = "Γ₁ ∪ Γ₂ ∪ Γ₃ is invariant under dilations"
ANCHOR_TAU_INTEGRAL = "∫₀¹ a_n'/(1+a_n²)^{3/2} dτ = 1/√2"
ANCHOR_CANTOR_L2 = "‖∂_t f_n - ∂_t f‖²_{L²} = 2√2 q^{n/2} arctan(ℓ q^{-n/2}/√2)"

# Bumps in (s, τ) whose τ-support covers the nonconstant part of the profile.
LAGRANGIAN_BUMP = TestBump(center=(0.0, 0.5), radii=(1.0, 0.5))
CANTOR_BUMP = TestBump(center=(0.0, 0.5), radii=(1.0, 0.6))
# Graph-side test function for the area formula and change of variables.
GRAPH_BUMP = TestBump(center=(0.0, 0.5), radii=(0.8, 0.3))

# Exact characteristics of fields without a closed-form flow.
REFERENCE_FLOWS = {
    "t": lambda s, tau: tau * math.exp(s),
    "t2": lambda s, tau: tau / (1.0 - tau * s),
}


def upper(name: str, value: float, threshold: float, anchor: str = "") -> Check:
    passed = value <= threshold
    return Check(name=name, value=value, threshold=threshold, passed=passed, anchor=anchor)


def lower(name: str, value: float, threshold: float, anchor: str = "") -> Check:
    passed = value >= threshold
    return Check(name=name, value=value, threshold=threshold, passed=passed, anchor=anchor)


def flag(name: str, passed: bool, value=None, anchor: str = "") -> Check:
    return Check(name=name, value=value, passed=bool(passed), anchor=anchor)


def _context(runtime: Runtime[RunContext]) -> RunContext:
    return runtime.context or RunContext()


def _report(config: RunConfig, runtime: Runtime[RunContext], checks, artifacts=()) -> dict:
    report = SuiteReport(
        command=config.command,
        field=config.field,
        config_hash=_context(runtime).config_hash,
        checks=list(checks),
        artifacts=list(artifacts),
    )
    for check in report.checks:
        if not check.passed:
            logger.warning(f"[{config.command}] failed: {check.name} = {check.value}")
    return {"report": report}


def _bumps(config: RunConfig) -> list[TestBump]:
    b = config.bumps
    return bump_grid(b.region, b.ny, b.nt, b.radius, b.amplitude)


def _variation_rows(f: ScalarField, bumps: list[TestBump], spec) -> list[dict]:
    reports = parallel_map(lambda phi: variation_report(f, phi, spec), bumps)
    return [
        {
            "bump": r.bump,
            "I": r.I_value,
            "II": r.II_value,
            "I_err": r.I_err,
            "II_err": r.II_err,
            "converged": r.converged,
        }
        for r in reports
    ]


def _tau_grid(config: RunConfig) -> np.ndarray:
    return np.linspace(*config.tau_range, config.tau_samples)


def _strip_gap(config: RunConfig, f: ScalarField, profile) -> float:
    """sup |f - strip_field(profile)| on a grid over the config region."""
    r = config.region
    Y, T = np.meshgrid(np.linspace(r.y0, r.y1, 41), np.linspace(r.t0, r.t1, 41))
    return float(np.max(np.abs(f(Y, T) - strip_field(profile)(Y, T))))


class Nodes:
    """One method per command."""

    # -------------------------------------------------------------------------
    # Variation functionals
    # -------------------------------------------------------------------------

    def area(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        f = select_field(config)
        result = graph_area_result(f, config.region, config.quadrature)
        checks = [flag("area", result.converged, result.value, ANCHOR_AREA)]
        if config.field == "plane":
            closed = math.sqrt(1.0 + config.a**2) * config.region.area
            tol = config.tol or 1e-8 * (1.0 + closed)
            gap = abs(result.value - closed)
            checks.append(upper("plane_closed_form", gap, tol, "√(1+a²)·|E|"))
        return _report(config, runtime, checks)

    def first_variation(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        f = select_field(config)
        bumps = _bumps(config)
        rows = _variation_rows(f, bumps, config.quadrature)
        worst = max(abs(r["I"]) for r in rows)
        tol = config.tol or tolerances.stationarity
        # Finite differences on the bump closest to the centre of the family.
        centre = config.bumps.region
        mid = ((centre.y0 + centre.y1) / 2, (centre.t0 + centre.t1) / 2)
        bump = min(bumps, key=lambda b: math.dist(b.center, mid))
        err_first, err_second = variation_fd_check(f, bump, spec=config.quadrature)
        path = write_csv(rows, _context(runtime).path("variations.csv"))
        checks = [
            upper("max_abs_first_variation", worst, tol, ANCHOR_STATIONARY),
            flag("quadrature_converged", all(r["converged"] for r in rows)),
            upper("fd_first_variation", err_first, tolerances.plane),
            upper("fd_second_variation", err_second, tolerances.plane),
        ]
        return _report(config, runtime, checks, [path.name])

    def second_variation(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        f = select_field(config)
        rows = _variation_rows(f, _bumps(config), config.quadrature)
        tol = config.tol or tolerances.stationarity
        path = write_csv(rows, _context(runtime).path("variations.csv"))
        checks = [
            lower("min_second_variation", min(r["II"] for r in rows), -tol, ANCHOR_STABLE),
            flag("quadrature_converged", all(r["converged"] for r in rows)),
        ]
        return _report(config, runtime, checks, [path.name])

    # -------------------------------------------------------------------------
    # Characteristics
    # -------------------------------------------------------------------------

    def flow(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        f = select_field(config)
        tau, to = config.tau, config.to
        horizon = config.horizon if config.horizon is not None else 2.0 * to
        curve = ode_flow(f, 0.0, tau, to, config.steps)
        checks = [flag("flow_finite", not curve.blowup_flag, curve.end)]

        reference = f.flow if f.flow is not None else REFERENCE_FLOWS.get(config.field)
        if reference is not None and not curve.blowup_flag:
            expected = float(reference(to, tau))
            tol = config.tol or 1e-6 * (1.0 + abs(expected))
            checks.append(upper("flow_vs_exact", abs(curve.end - expected), tol))

        trajectory = ode_flow(f, 0.0, tau, horizon, config.steps)
        blowup_at = float(trajectory.s[-1]) if trajectory.blowup_flag else None
        if config.field == "t2":
            expected_blowup = tau > 0 and 1.0 / tau <= horizon
            detected = trajectory.blowup_flag == expected_blowup
            checks.append(flag("blowup_detected", detected, blowup_at, "γ = τ/(1 - τs)"))
            if trajectory.blowup_flag:
                checks.append(upper("blowup_before_pole", blowup_at, 1.0 / tau))
        else:
            # Fields that are Lipschitz in t have global characteristics.
            expected_blowup = f.lipschitz_t is None and trajectory.blowup_flag
            checks.append(flag("blowup_detected", trajectory.blowup_flag == expected_blowup, blowup_at))

        if not curve.blowup_flag:
            difference, allowance = flow_semigroup_check(f, tau, 0.0, 0.5 * to, to, config.steps)
            checks.append(upper("semigroup", difference, allowance))

        if f.lipschitz_t is not None:
            checks.append(self._separation(config, f))
        checks.append(self._family_separation(config))

        rows = [{"s": s, "gamma": g} for s, g in zip(trajectory.s, trajectory.values, strict=True)]
        path = write_csv(rows, _context(runtime).path("flow.csv"))
        return _report(config, runtime, checks, [path.name])

    @staticmethod
    def _separation(config: RunConfig, f: ScalarField) -> Check:
        """Grönwall bound |γ_a - γ_b| ≤ |τ_a - τ_b|·e^{L|s|} on seeded pairs, one batch."""
        rng = np.random.default_rng(config.seed)
        pairs = rng.uniform(config.tau - 1.0, config.tau + 1.0, size=(config.samples, 2))
        _, values, blown, _ = flow_batch(f, 0.0, pairs.ravel(), config.to, config.steps)
        if np.any(blown):
            raise FlowError("separation trials blew up; lower --to")
        ends = values[:, -1].reshape(-1, 2)
        measured = np.abs(ends[:, 0] - ends[:, 1])
        bound = np.abs(pairs[:, 0] - pairs[:, 1]) * math.exp(f.lipschitz_t * abs(config.to))
        violations = int(np.count_nonzero(measured > bound * (1.0 + 1e-9) + 1e-12))
        return upper("separation_violations", violations, 0, "Grönwall")

    @staticmethod
    def _family_separation(config: RunConfig) -> Check:
        """The same bound on a seeded family of fields Lipschitz in t, one τ pair per field.

        Trials cycle through a·y + b, c·t and c·sin(t) + d·y with coefficients in [-2, 2].
        """
        rng = np.random.default_rng(config.seed + 1)
        coeffs = rng.uniform(-2.0, 2.0, size=(config.samples, 2))
        pairs = rng.uniform(-1.0, 1.0, size=(config.samples, 2))

        def violated(i: int) -> bool:
            c, d = (float(v) for v in coeffs[i])
            match i % 3:
                case 0:
                    f = plane_field(c, d)
                case 1:
                    f = linear_t_field(c)
                case _:
                    f = custom_field(
                        "sine", lambda y, t: c * np.sin(t) + d * np.asarray(y), lipschitz_t=abs(c)
                    )
            tau_a, tau_b = pairs[i]
            measured, bound = flow_separation_check(
                f, f.lipschitz_t, tau_a, tau_b, 0.0, config.to, config.steps
            )
            # c·t attains the bound exactly.
            return measured > bound * (1.0 + 1e-7) + 1e-12

        violations = sum(parallel_map(violated, range(config.samples)))
        return upper("family_separation_violations", violations, 0, "Grönwall")

    # -------------------------------------------------------------------------
    # Lagrangian parametrizations
    # -------------------------------------------------------------------------

    @staticmethod
    def _fit(config: RunConfig, f: ScalarField):
        m = build_parametrization(
            f, config.s_range, _tau_grid(config), config.steps, exact=config.exact
        )
        return m, check_axioms(m), fit_quadratic(m)

    def fit_quadratic(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        f = select_field(config)
        m, axioms, profile = self._fit(config, f)
        constraints = profile_constraints_check(profile)
        tol = config.tol or tolerances.fit_residual
        checks = [
            upper("fit_residual", profile.max_residual, tol, ANCHOR_QUADRATIC),
            upper("monotone_violations", axioms.monotone_violations, 0),
            upper("ode_residual", axioms.ode_residual, tolerances.axiom_residual),
            flag("normalized", axioms.normalized),
            upper("profile_violating_pairs", constraints.violating_pairs, 0, ANCHOR_PROFILE),
            upper("profile_flagged_samples", int(constraints.flagged_samples.size), 0),
        ]

        if config.field == "plane":
            a_ref = np.full_like(profile.tau, config.a)
            b_ref = np.full_like(profile.tau, config.b)
        elif (strip := select_profile(config)) is not None:
            a_ref, b_ref = strip(profile.tau), np.zeros_like(profile.tau)
        else:
            a_ref = b_ref = None
        if a_ref is not None:
            checks.append(upper("a_recovery", float(np.max(np.abs(profile.a - a_ref))), tol))
            checks.append(upper("b_recovery", float(np.max(np.abs(profile.b - b_ref))), tol))

        if not f.refuse_variation:
            checks.extend(self._parametrization_checks(config, m))

        path = profile.write_csv(_context(runtime).path("profile.csv"))
        return _report(config, runtime, checks, [path.name])

    @staticmethod
    def _parametrization_checks(config: RunConfig, m) -> list[Check]:
        lhs, rhs = area_formula_check(m, GRAPH_BUMP.value, GRAPH_BUMP.support, config.quadrature)
        cov = change_of_variables_check(m, GRAPH_BUMP)
        reduced = lagrangian_first_variation(m, LAGRANGIAN_BUMP, config.quadrature)
        return [
            upper("area_formula", abs(lhs - rhs), 1e-5, "∫η(Ψ)∂_τχ = ∫η"),
            upper("change_of_variables_dt", cov.dt_rule, 1e-4),
            upper("change_of_variables_dy", cov.dy_rule, 1e-4),
            upper("change_of_variables_gradient", cov.gradient_rule, 1e-4),
            upper("change_of_variables_jacobian", cov.jacobian_rule, 1e-4),
            upper("lagrangian_first_variation", abs(reduced), tolerances.stationarity),
        ]

    def verdict(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        _, axioms, profile = self._fit(config, select_field(config))
        result = bernstein_verdict(profile, config.tol or tolerances.plane)
        checks = [
            flag("verdict", True, result, "stable Lipschitz graphs are planes"),
            upper("fit_residual", profile.max_residual, tolerances.fit_residual, ANCHOR_QUADRATIC),
            upper("monotone_violations", axioms.monotone_violations, 0),
        ]
        path = profile.write_csv(_context(runtime).path("profile.csv"))
        return _report(config, runtime, checks, [path.name])

    # -------------------------------------------------------------------------
    # Calibrations
    # -------------------------------------------------------------------------

    def calibration(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        points = sample_points(config.seed, config.samples)
        rng = np.random.default_rng(config.seed + 1)
        if config.field == "cone":
            return _report(config, runtime, self._cone_calibration(config, points, rng))

        profile = select_profile(config)
        if profile is None:
            raise DomainError(f"calibration needs a strip field, got {config.field}")
        s = rng.uniform(*config.s_range, config.samples)
        tau = rng.uniform(*config.tau_range, config.samples)
        report = calibration_check(profile, points, np.column_stack([s, tau]))
        negatives = int(np.count_nonzero(s < 0))
        checks = [
            upper("max_divergence", report.max_divergence, tolerances.divergence, "div ν = 0"),
            upper("max_normal_error", report.max_normal_error, tolerances.normal, "ν = n_Γ"),
            flag("orientation_flips", report.orientation_flips == negatives, negatives),
        ]
        return _report(config, runtime, checks)

    @staticmethod
    def _cone_calibration(
        config: RunConfig, points: np.ndarray, rng: np.random.Generator
    ) -> list[Check]:
        r = config.region
        y = rng.uniform(r.y0, r.y1, 4 * config.samples)
        t = rng.uniform(r.t0, r.t1, 4 * config.samples)
        away = (np.abs(y) > 1e-3) & (np.abs(t) > 1e-6) & (np.abs(t - 0.5 * y * y) > 1e-6)
        samples = np.column_stack([y[away], t[away]])[: config.samples]
        report = cone_calibration_check(samples)
        divergence = float(np.max(np.abs(nu_divergence(points))))
        return [
            upper("max_divergence", divergence, tolerances.divergence, "div ν = 0"),
            upper("max_normal_error", report.max_error, tolerances.normal, "ν, X, (X-Y)/√2"),
            lower("comparisons", report.comparisons, report.samples),
        ]

    # -------------------------------------------------------------------------
    # Example suites
    # -------------------------------------------------------------------------

    def cone_suite(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        context = _context(runtime)
        spec = config.quadrature
        bumps = _bumps(config)
        tol = config.tol or tolerances.stationarity
        cone = cone_field()

        rows = _variation_rows(cone, bumps, spec)
        checks = [
            upper("cone_stationarity", max(abs(r["I"]) for r in rows), tol, ANCHOR_STATIONARY)
        ]

        ladder, ratios = [], []
        for eps in sorted(config.eps_ladder, reverse=True):
            f_eps, profile = cone_eps(eps)
            second = min(r["II"] for r in _variation_rows(f_eps, bumps, spec))
            negative, bound = cone_stability_bound(eps, spec=spec)
            ratio = negative / bound
            ratios.append(ratio)
            ladder.append(
                {"eps": eps, "min_II": second, "negative": negative, "bound": bound, "ratio": ratio}
            )
            checks.append(lower(f"min_II[eps={eps:g}]", second, -tol, ANCHOR_STABLE))
            checks.append(upper(f"negative_term[eps={eps:g}]", negative, bound, "≤ Mπ√ε"))
            gap = _strip_gap(config, f_eps, profile)
            checks.append(upper(f"strip_identity[eps={eps:g}]", gap, 1e-10, "f_ε = strip of a_ε"))
        non_increasing = bool(np.all(np.diff(ratios) <= 1e-12))
        checks.append(flag("ratio_non_increasing", non_increasing, ratios[-1]))

        convergence = cone_convergence(
            config.eps_ladder, config.p, config.region, spec, config.seed, config.samples
        )
        checks.append(flag("convergence_decreasing", convergence.decreasing, f"p={config.p:g}"))
        checks.append(upper("domination_violations", convergence.domination_violations, 0))
        checks.append(flag("convergence_quadrature", convergence.converged))

        for p in sorted({1.5, config.p}):
            closed, quad = g3_lp_integral(p, 1.0, spec)
            rel = abs(closed - quad) / abs(closed)
            checks.append(upper(f"g3_integral[p={p:g}]", rel, 1e-3, "g₃ ∈ L^p"))

        artifacts = [
            write_csv(ladder, context.path("stability.csv")).name,
            write_csv(convergence.rows(), context.path("convergence.csv")).name,
        ]
        return _report(config, runtime, checks, artifacts)

    def cantor_suite(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        context = _context(runtime)
        spec = config.quadrature
        checks = []

        for n in range(1, cantor_config.dense_n_cap + 1):
            tau_integral, _, _ = cantor_sv_quantities(n)
            error = abs(tau_integral - 1.0 / math.sqrt(2.0))
            checks.append(
                Check(
                    name=f"tau_integral[n={n}]",
                    value=tau_integral,
                    threshold=1e-12,
                    passed=error <= 1e-12,
                    anchor=ANCHOR_TAU_INTEGRAL,
                )
            )

        for n in range(1, 11):
            level = cantor_level(n)
            lo, hi = level.intervals()
            length = math.fsum((hi - lo).tolist())
            ok = level.indices.size == 2**n and abs(length - level.total_length) <= 1e-12
            checks.append(flag(f"level_combinatorics[n={n}]", ok, length))

        for n in (n for n in config.n_ladder if n <= 6):
            closed, quad = cantor_l2_distance(n, 1.0, spec)
            rel = abs(quad - closed) / closed
            checks.append(upper(f"l2_distance[n={n}]", rel, 1e-4, ANCHOR_CANTOR_L2))

        n = config.n if config.n is not None else cantor_config.dense_n_cap
        n = min(n, cantor_config.dense_n_cap)
        checks.extend(self._cantor_level_checks(n, spec))

        convergence = cantor_convergence(config.n_ladder, 1.0, spec)
        checks.append(flag("convergence_decreasing", convergence.decreasing))
        checks.append(upper("sup_norm_violations", convergence.domination_violations, 0, "≤ 2⁻ⁿ"))

        path = write_csv(convergence.rows(), context.path("cantor.csv"))
        return _report(config, runtime, checks, [path.name])

    @staticmethod
    def _cantor_level_checks(n: int, spec) -> list[Check]:
        level = cantor_level(n)
        lo, hi = level.intervals()
        ranks = np.arange(level.count) / level.count
        gaps = 0.5 * (hi[:-1] + lo[1:])
        # The limit is compared on gap midpoints only, where it is locally constant.
        endpoint_gap = max(
            float(np.max(np.abs(cantor_a(n, lo) - ranks))),
            float(np.max(np.abs(cantor_a(n, gaps) - cantor_a(None, gaps)))),
        )
        cy = cy_sets(n, 1.3)
        positive, negative = strip_second_variation_terms(cantor_profile(n), CANTOR_BUMP, spec)
        _, _, bound = cantor_sv_quantities(n, M=CANTOR_BUMP.sup_squared)
        return [
            upper(f"staircase_nodes[n={n}]", endpoint_gap, 1e-12, "a(k/3ⁿ) = j/2ⁿ"),
            upper(
                f"cy_measure[n={n}]",
                abs(cy.measure - cy.measure_formula),
                1e-12 * cy.measure_formula,
                "|C_y(n)| = y²/2 + qⁿ",
            ),
            upper(f"negative_term[n={n}]", negative, bound, "≤ Mπq^{n/2}"),
            lower(
                f"second_variation[n={n}]",
                positive - 2.0 * negative,
                -2.0 * bound,
                "II ≥ -2Mπq^{n/2}",
            ),
        ]

    # -------------------------------------------------------------------------
    # Reduced quotient and meshes
    # -------------------------------------------------------------------------

    def rayleigh(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        params = config.rayleigh
        try:
            prob = RayleighProblem(A=params.A, B=params.B, R=params.R, N=params.N)
        except ValidationError as e:
            raise DomainError(str(e)) from e
        lam = rayleigh_min(prob)
        checks = [lower("lambda_min", lam, -1e-10, "∫φ'²h ≥ λ∫φ²/h")]
        if params.B == 0.0 and params.A > 0:
            closed = rayleigh_closed_form(params.A, params.R)
            checks.append(upper("closed_form", abs(lam - closed) / closed, 1e-3))
            checks.append(upper("below_two", lam, 2.0 - 1e-12, "λ < 2 when B² < 2A"))
        return _report(config, runtime, checks)

    def mesh(self, state: SuiteState, runtime: Runtime[RunContext]) -> dict:
        config = state["config"]
        context = _context(runtime)
        f = select_field(config)
        profile = select_profile(config)
        if profile is not None and config.field != "plane":
            mesh = strip_mesh(
                profile, config.s_range, config.tau_range, config.grid, context.config_hash
            )
            name, anchor = "ruled_vs_graph", ANCHOR_RULED
        else:
            mesh = graph_mesh(f, config.region, config.grid, context.config_hash)
            name, anchor = "graph_vs_field", ""
        deviation = upper(name, max_graph_deviation(mesh, f), tolerances.mesh_membership, anchor)
        nu, nv = config.grid
        checks = [
            deviation,
            flag("vertex_count", mesh.vertices.shape[0] == nu * nv, mesh.vertices.shape[0]),
            flag(
                "triangle_count",
                mesh.triangles.shape[0] == 2 * (nu - 1) * (nv - 1),
                mesh.triangles.shape[0],
            ),
            upper("degenerate_triangles", mesh.degenerate_count(), 0),
        ]
        if config.field == "cone":
            outside = sum(
                not cone_contains(dilate(2.0, HPoint(*map(float, v))), tolerances.mesh_membership)
                for v in mesh.vertices
            )
            checks.append(upper("dilation_invariance", outside, 0, ANCHOR_CONE))
        path = write_obj(mesh, context.path("mesh.obj"))
        return _report(config, runtime, checks, [path.name])


nodes = Nodes()
