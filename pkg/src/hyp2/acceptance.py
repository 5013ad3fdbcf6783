"""Desk-scale acceptance suite shared by the test module and `hyp2 selftest`.

Each criterion is a standalone callable returning a CriterionResult; run_all
executes them in order.  Budgets, sample counts and tolerances are the
contract and are deliberately hard-coded as defaults.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .dmodule import DSubmodule, DVector, linear_dependent
from .hahn_banach import (
    ExtensionProblem,
    corollary_functional,
    full_extend,
    gap_interval,
    gap_interval_grid,
)
from .hyperbolic import Hyperbolic, OrderResult, inf_d, sup_d
from .two_functional import DBilinear2Functional, norm_bruteforce, norm_spectral
from .two_norm import D2Norm, GramDet2Norm, axiom_check, decompose


class BrokenTriangle2Norm:
    """Area 2-norm pushed through g -> g^2/(1+g).

    The outer map is convex through the origin, hence superadditive, so the
    composite violates subadditivity in the first slot while staying
    symmetric and vanishing exactly on dependent pairs.
    """

    kind = "broken"

    def __call__(self, x, y) -> float:
        g = GramDet2Norm()(x, y)
        return g * g / (1.0 + g)


@dataclass
class CriterionResult:
    name: str
    passed: bool
    runtime: float
    budget: float | None = None
    detail: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = f"/{self.budget:.0f}s" if self.budget else ""
        keys = ", ".join(f"{k}={v:.3g}" for k, v in self.detail.items() if isinstance(v, float))
        return f"[{status}] {self.name} ({self.runtime:.2f}s{budget}) {keys}"


def _rand_scalar(rng) -> Hyperbolic:
    return Hyperbolic(*rng.standard_normal(2))


def criterion_ring_order(pairs: int = 10_000, seed: int = 0) -> CriterionResult:
    """Ring axioms, conjugation laws, modulus laws and lattice properties
    on random scalar pairs, each to 1e-12, in under 5 seconds."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    tol = 1e-12
    worst = 0.0
    lattice_ok = True
    order_ok = True
    for _ in range(pairs):
        x, y, z = _rand_scalar(rng), _rand_scalar(rng), _rand_scalar(rng)
        # ring axioms
        worst = max(worst, ((x + y) + z - (x + (y + z))).max_abs())
        worst = max(worst, ((x * y) * z - (x * (y * z))).max_abs())
        worst = max(worst, (x * y - y * x).max_abs())
        worst = max(worst, (x * (y + z) - (x * y + x * z)).max_abs())
        # conjugation laws
        worst = max(worst, (x.dagger().dagger() - x).max_abs())
        worst = max(worst, ((x + y).dagger() - (x.dagger() + y.dagger())).max_abs())
        worst = max(worst, ((x * y).dagger() - x.dagger() * y.dagger()).max_abs())
        prod = x * x.dagger()
        worst = max(worst, abs(prod.p - prod.q))
        # modulus laws
        worst = max(worst, ((x * y).modulus() - x.modulus() * y.modulus()).max_abs())
        tri = x.modulus() + y.modulus() - (x + y).modulus()
        worst = max(worst, max(0.0, -tri.p, -tri.q))
        # order restricted to reals agrees with the real total order
        s, t = rng.standard_normal(2)
        rel = Hyperbolic.from_real(s).compare(Hyperbolic.from_real(t))
        want = (
            OrderResult.EQUAL
            if abs(s - t) <= tol
            else (OrderResult.LESS_EQ if s < t else OrderResult.GREATER_EQ)
        )
        order_ok = order_ok and rel is want
        # lattice: sup/inf bound the sample and any dominating candidate
        s_up = sup_d([x, y, z])
        s_lo = inf_d([x, y, z])
        lattice_ok = lattice_ok and all(v.leq(s_up) and s_lo.leq(v) for v in (x, y, z))
        bound = s_up + Hyperbolic(abs(rng.standard_normal()), abs(rng.standard_normal()))
        lattice_ok = lattice_ok and s_up.leq(bound)
        shaved = Hyperbolic(s_up.p - 1e-6, s_up.q)
        lattice_ok = lattice_ok and not all(v.leq(shaved) for v in (x, y, z))
    runtime = time.perf_counter() - start
    passed = worst <= tol and order_ok and lattice_ok and runtime < 5.0
    return CriterionResult(
        "ring-and-order-suite",
        passed,
        runtime,
        budget=5.0,
        detail={"worst_violation": worst, "pairs": float(pairs)},
    )


def criterion_two_norm_axioms(samples: int = 1000, seed: int = 0) -> CriterionResult:
    """Area lift passes all four 2-norm axioms at 1e-9 for n in {2,3,4};
    the corrupted fixture must fail the subadditivity axiom."""
    start = time.perf_counter()
    tol = 1e-9
    worst = 0.0
    for n in (2, 3, 4):
        report = axiom_check(D2Norm(), n, samples=samples, rng=seed + n)
        worst = max(worst, *report.worst.values())
    broken = D2Norm(GramDet2Norm(), BrokenTriangle2Norm())
    broken_report = axiom_check(broken, 3, samples=max(100, samples // 4), rng=seed)
    broken_iv = broken_report.worst["iv"]
    runtime = time.perf_counter() - start
    passed = worst <= tol and broken_iv > tol
    return CriterionResult(
        "two-norm-axiom-suite",
        passed,
        runtime,
        detail={"worst_violation": worst, "broken_fixture_iv": broken_iv},
    )


def criterion_decomposition(samples: int = 1000, seed: int = 0) -> CriterionResult:
    """Coordinate-split reconstruction of the lifted 2-norm at 1e-12, with
    the off-component coordinate vanishing exactly on pure pairs."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    norm = D2Norm()
    n = 3
    phi, psi = decompose(norm, n, rng=seed)
    worst = 0.0
    exact_zero = True
    for _ in range(samples):
        x = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        y = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        rebuilt = Hyperbolic(phi(x.e1_part(), y.e1_part()), psi(x.e2_part(), y.e2_part()))
        worst = max(worst, (rebuilt - norm(x, y)).max_abs())
        exact_zero = exact_zero and psi(x.e1_part(), y.e1_part()) == 0.0
    runtime = time.perf_counter() - start
    passed = worst <= 1e-12 and exact_zero
    return CriterionResult(
        "decomposition-identity",
        passed,
        runtime,
        detail={"worst_violation": worst},
    )


def criterion_functional_norms(
    count: int = 200, budget: int = 100_000, seed: int = 0
) -> CriterionResult:
    """Brute-force norm within 2% below the spectral value and never above
    it by more than 1e-9; the two supremum formulas agree; under 30 s."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst_below = 0.0  # largest relative shortfall of the brute-force value
    worst_above = 0.0  # largest absolute excess over the spectral value
    worst_formula_gap = 0.0
    for i in range(count):
        n = int(rng.integers(2, 5))
        f = DBilinear2Functional.random(n, int(rng.integers(0, 2**31)))
        spectral = norm_spectral(f)
        quot = norm_bruteforce(f, budget=budget, seed=seed * 1000 + i, formula="quotient")
        unit = norm_bruteforce(f, budget=budget, seed=seed * 1000 + i, formula="unit")
        for s_val, b_val, u_val in (
            (spectral.value.p, quot.value.p, unit.value.p),
            (spectral.value.q, quot.value.q, unit.value.q),
        ):
            worst_above = max(worst_above, b_val - s_val, u_val - s_val)
            scale = max(s_val, 1e-12)
            worst_below = max(worst_below, (s_val - b_val) / scale)
            worst_formula_gap = max(worst_formula_gap, abs(b_val - u_val) / (1.0 + s_val))
    runtime = time.perf_counter() - start
    passed = (
        worst_below <= 0.02
        and worst_above <= 1e-9
        and worst_formula_gap <= 1e-4
        and runtime < 30.0
    )
    return CriterionResult(
        "functional-norm-equivalence",
        passed,
        runtime,
        budget=30.0,
        detail={
            "worst_rel_shortfall": worst_below,
            "worst_excess": worst_above,
            "worst_formula_gap": worst_formula_gap,
        },
    )


def criterion_k_decomposition(samples: int = 1000, seed: int = 0) -> CriterionResult:
    """Real/k-part identities f = phi + k*psi, f = phi(x,y) + k*phi(kx,y)
    and f = phi(x,y) + k*phi(x,ky) at 1e-12 on random (f, x, y)."""
    from hyp2.hyperbolic import K

    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        n = int(rng.integers(2, 5))
        f = DBilinear2Functional.random(n, int(rng.integers(0, 2**31)))
        phi, psi = f.k_parts()
        x = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        y = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        val = f(x, y)
        worst = max(worst, (Hyperbolic.from_cartesian(phi(x, y), psi(x, y)) - val).max_abs())
        worst = max(
            worst, (Hyperbolic.from_cartesian(phi(x, y), phi(K * x, y)) - val).max_abs()
        )
        worst = max(
            worst, (Hyperbolic.from_cartesian(phi(x, y), phi(x, K * y)) - val).max_abs()
        )
        worst = max(worst, abs(phi(K * x, y) - psi(x, y)))
        worst = max(worst, abs(psi(K * x, y) - phi(x, y)))
    runtime = time.perf_counter() - start
    return CriterionResult(
        "k-decomposition-identities",
        worst <= 1e-12,
        runtime,
        detail={"worst_violation": worst},
    )


def _random_problem(rng, degenerate: bool) -> ExtensionProblem:
    n = int(rng.integers(2, 5))
    k1 = int(rng.integers(0, n))
    k2 = int(rng.integers(0, n))
    M = DSubmodule(n, rng.standard_normal((k1, n)), rng.standard_normal((k2, n)))
    if degenerate:
        z = DVector.from_components(rng.standard_normal(n), np.zeros(n))
    else:
        z = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
    f = DBilinear2Functional.random(n, int(rng.integers(0, 2**31)))
    return ExtensionProblem(n, M, z, f)


def _first_missing_basis_vector(problem: ExtensionProblem) -> DVector | None:
    n = problem.n
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        need1 = not problem.M.component_contains(0, e)
        need2 = not problem.M.component_contains(1, e)
        if need1 or need2:
            return DVector.from_components(
                e if need1 else np.zeros(n), e if need2 else np.zeros(n)
            )
    return None


def criterion_extension_engine(count: int = 100, seed: int = 0) -> CriterionResult:
    """Full extensions on random problems: restriction agreement at 1e-10,
    norm preservation at 1e-5 relative per component, every bracket holds,
    and the dense-grid oracle confirms the gap endpoints at 1e-4 for
    component dimensions <= 2.  Under 60 s."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst_restr = 0.0
    worst_norm_rel = 0.0
    brackets_ok = True
    worst_oracle = 0.0
    oracle_runs = 0
    for i in range(count):
        problem = _random_problem(rng, degenerate=(i % 4 == 3))
        trace = full_extend(problem)
        audit = trace.audit(samples=1000, seed=seed * 100 + i)
        worst_restr = max(worst_restr, audit["restriction_max_err"])
        worst_norm_rel = max(worst_norm_rel, *audit["norm_rel_err"])
        brackets_ok = brackets_ok and audit["brackets_ok"]
        if max(problem.M.dims) <= 2 and oracle_runs < 25 and not problem.z_is_degenerate():
            xp = _first_missing_basis_vector(problem)
            if xp is not None:
                m0, m = gap_interval(problem, xp)
                g0, gm = gap_interval_grid(problem, xp)
                worst_oracle = max(
                    worst_oracle,
                    (g0 - m0).max_abs(),
                    (gm - m).max_abs(),
                )
                oracle_runs += 1
    runtime = time.perf_counter() - start
    passed = (
        worst_restr <= 1e-10
        and worst_norm_rel <= 1e-5
        and brackets_ok
        and worst_oracle <= 1e-4
        and oracle_runs > 0
        and runtime < 60.0
    )
    return CriterionResult(
        "extension-engine",
        passed,
        runtime,
        budget=60.0,
        detail={
            "worst_restriction_err": worst_restr,
            "worst_norm_rel_err": worst_norm_rel,
            "worst_oracle_gap": worst_oracle,
            "oracle_runs": float(oracle_runs),
        },
    )


def corollary_case_table(f0, x0: DVector, y0: DVector, norm: D2Norm, rng) -> list[dict]:
    """The zero-pattern cases of the attaining functional's bound.

    Enumerates scalar pairs (alpha, beta) with the four support patterns
    (e1 x e2, e1 x e1, full x full, e2 x e1) and reports the modulus of the
    value against the 2-norm of the scaled pair.
    """
    a1, a2, b1, b2 = (float(abs(v) + 0.25) for v in rng.standard_normal(4))
    patterns = [
        ("e1-alpha x e2-beta", Hyperbolic(a1, 0.0), Hyperbolic(0.0, b2), "zero"),
        ("e1-alpha x e1-beta", Hyperbolic(a1, 0.0), Hyperbolic(b1, 0.0), "equal"),
        ("full x full", Hyperbolic(a1, a2), Hyperbolic(b1, b2), "equal"),
        ("e2-alpha x e1-beta", Hyperbolic(0.0, a2), Hyperbolic(b1, 0.0), "zero"),
    ]
    rows = []
    for name, alpha, beta, expect in patterns:
        lhs = f0.evaluate(alpha * x0, beta * y0, check_domain=False).modulus()
        rhs = norm(alpha * x0, beta * y0)
        rows.append(
            {
                "case": name,
                "lhs": lhs.to_json(),
                "rhs": rhs.to_json(),
                "expect": expect,
                "bounded": bool((lhs - rhs).leq(Hyperbolic(1e-9, 1e-9))),
                "matched": bool(
                    lhs.max_abs() <= 1e-9 if expect == "zero" else (lhs - rhs).max_abs() <= 1e-9
                ),
            }
        )
    return rows


def criterion_corollary(count: int = 50, seed: int = 0) -> CriterionResult:
    """Attaining functionals: norm exactly one (1e-9), value agreement at
    1e-10, and the four zero-pattern cases of the bound."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    norm = D2Norm()
    worst_norm = 0.0
    worst_value = 0.0
    cases_ok = True
    done = 0
    while done < count:
        n = int(rng.integers(2, 5))
        x0 = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        y0 = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        if linear_dependent(x0, y0):
            continue
        target = norm(x0, y0)
        if min(target.p, target.q) <= 1e-6:
            continue
        f0, trace = corollary_functional(x0, y0, norm)
        done += 1
        worst_norm = max(
            worst_norm,
            (f0.norm() - Hyperbolic(1.0, 1.0)).max_abs(),
            (trace.final.norm() - Hyperbolic(1.0, 1.0)).max_abs(),
        )
        worst_value = max(worst_value, (trace.final.evaluate(x0, y0) - target).max_abs())
        for row in corollary_case_table(f0, x0, y0, norm, rng):
            cases_ok = cases_ok and row["bounded"] and row["matched"]
    runtime = time.perf_counter() - start
    passed = worst_norm <= 1e-9 and worst_value <= 1e-10 and cases_ok
    return CriterionResult(
        "norm-attaining-corollary",
        passed,
        runtime,
        detail={"worst_norm_err": worst_norm, "worst_value_err": worst_value},
    )


def criterion_componentwise_decoupling(trials: int = 40, seed: int = 0) -> CriterionResult:
    """Metamorphic decoupling: duplicating one component's data into both
    slots and re-running reproduces that component of every D-level result
    (2-norms, functional norms, gap endpoints, full extensions) to 1e-12."""
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    norm = D2Norm()
    worst = 0.0
    for i in range(trials):
        n = int(rng.integers(2, 5))
        x = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        y = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        # 2-norm evaluation
        dup = norm(
            DVector.from_components(x.c1, x.c1), DVector.from_components(y.c1, y.c1)
        )
        worst = max(worst, abs(norm(x, y).p - dup.p))
        # functional norms, both routes
        f = DBilinear2Functional.random(n, int(rng.integers(0, 2**31)))
        f_dup = DBilinear2Functional(f.C1, f.C1.copy())
        worst = max(worst, abs(norm_spectral(f).value.p - norm_spectral(f_dup).value.p))
        bf = norm_bruteforce(f, budget=2000, seed=i, climb_steps=20)
        bf_dup = norm_bruteforce(f_dup, budget=2000, seed=i, climb_steps=20)
        worst = max(worst, abs(bf.value.p - bf_dup.value.p))
        # gap endpoints and the full extension
        k1 = int(rng.integers(0, n))
        k2 = int(rng.integers(0, n))
        b1 = rng.standard_normal((k1, n))
        b2 = rng.standard_normal((k2, n))
        z1 = rng.standard_normal(n)
        z2 = rng.standard_normal(n)
        problem = ExtensionProblem(
            n, DSubmodule(n, b1, b2), DVector.from_components(z1, z2), f
        )
        problem_dup = ExtensionProblem(
            n, DSubmodule(n, b1, b1.copy()), DVector.from_components(z1, z1.copy()), f_dup
        )
        xp = _first_missing_basis_vector(problem)
        if xp is not None:
            xp_dup = DVector.from_components(xp.c1, xp.c1.copy())
            m0, m = gap_interval(problem, xp)
            d0, dm = gap_interval(problem_dup, xp_dup)
            worst = max(worst, abs(m0.p - d0.p), abs(m.p - dm.p))
        tr = full_extend(problem)
        tr_dup = full_extend(problem_dup)
        worst = max(worst, float(np.max(np.abs(tr.final.w1 - tr_dup.final.w1), initial=0.0)))
        worst = max(worst, abs(tr.norm_F.p - tr_dup.norm_F.p))
    runtime = time.perf_counter() - start
    return CriterionResult(
        "componentwise-decoupling",
        worst <= 1e-12,
        runtime,
        detail={"worst_violation": worst},
    )


ALL = [
    criterion_ring_order,
    criterion_two_norm_axioms,
    criterion_decomposition,
    criterion_functional_norms,
    criterion_k_decomposition,
    criterion_extension_engine,
    criterion_corollary,
    criterion_componentwise_decoupling,
]


def run_all(only: str | None = None) -> list[CriterionResult]:
    results = []
    for fn in ALL:
        name = fn.__name__.removeprefix("criterion_").replace("_", "-")
        if only and only not in name:
            continue
        results.append(fn())
    return results
