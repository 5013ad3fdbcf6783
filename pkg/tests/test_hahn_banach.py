import numpy as np
import pytest

from hyp2 import (
    D2Norm,
    DBilinear2Functional,
    DSubmodule,
    DVector,
    DegenerateZ,
    DependentPair,
    ExtensionProblem,
    Hyperbolic,
    NotDegenerate,
    RestrictedFunctional,
    ZeroDivisorInput,
    corollary_functional,
    full_extend,
    gap_interval,
    gap_interval_grid,
    gap_interval_subgradient,
    normalize_degenerate_z,
    one_step_extend,
)

NORM = D2Norm()


def dvec(c1, c2) -> DVector:
    return DVector.from_components(np.asarray(c1, float), np.asarray(c2, float))


def rand_dvec(rng, n) -> DVector:
    return dvec(rng.standard_normal(n), rng.standard_normal(n))


def random_problem(rng, n=None, dims=None, degenerate=False) -> ExtensionProblem:
    n = n if n is not None else int(rng.integers(2, 5))
    k1, k2 = dims if dims is not None else (int(rng.integers(0, n)), int(rng.integers(0, n)))
    M = DSubmodule(n, rng.standard_normal((k1, n)), rng.standard_normal((k2, n)))
    z2 = np.zeros(n) if degenerate else rng.standard_normal(n)
    z = dvec(rng.standard_normal(n), z2)
    f = DBilinear2Functional.random(n, int(rng.integers(0, 2**31)))
    return ExtensionProblem(n, M, z, f)


def outside_vector(rng, M: DSubmodule) -> DVector:
    while True:
        xp = rand_dvec(rng, M.n)
        if not M.contains(xp):
            return xp


class TestRestrictedFunctional:
    def test_norm_formula_matches_sampled_supremum(self):
        rng = np.random.default_rng(0)
        problem = random_problem(rng, n=3, dims=(2, 1))
        rf = problem.restriction()
        nf = rf.norm()
        # sampled supremum over the domain never exceeds the formula value
        worst = Hyperbolic(0.0, 0.0)
        for _ in range(3000):
            x = problem.M.random_element(rng)
            val = rf.evaluate(x, problem.z).modulus()
            scale = NORM(x, problem.z)
            ratios = [0.0, 0.0]
            for comp, (v, s) in enumerate(((val.p, scale.p), (val.q, scale.q))):
                if s > 1e-9:
                    ratios[comp] = v / s
            worst = Hyperbolic(max(worst.p, ratios[0]), max(worst.q, ratios[1]))
        assert worst.p <= nf.p + 1e-9 and worst.q <= nf.q + 1e-9
        assert worst.p >= 0.5 * nf.p  # sampling gets within sight of the sup

    def test_evaluate_matches_matrix_data_on_domain(self):
        rng = np.random.default_rng(1)
        problem = random_problem(rng, n=4, dims=(2, 3))
        rf = problem.restriction()
        for _ in range(200):
            x = problem.M.random_element(rng)
            alpha = Hyperbolic(*rng.standard_normal(2))
            got = rf.evaluate(x, alpha * problem.z)
            want = problem.functional(x, alpha * problem.z)
            assert (got - want).max_abs() <= 1e-10

    def test_evaluate_rejects_outside_domain(self):
        rng = np.random.default_rng(2)
        problem = random_problem(rng, n=3, dims=(1, 1))
        rf = problem.restriction()
        with pytest.raises(ValueError, match="outside the domain"):
            rf.evaluate(outside_vector(rng, problem.M), problem.z)

    def test_evaluate_rejects_outside_cyclic_domain(self):
        rng = np.random.default_rng(3)
        problem = random_problem(rng, n=3, dims=(2, 2))
        rf = problem.restriction()
        x = problem.M.random_element(rng)
        with pytest.raises(ValueError, match="cyclic"):
            rf.evaluate(x, rand_dvec(rng, 3))

    def test_as_functional_restricts_to_self(self):
        rng = np.random.default_rng(4)
        problem = random_problem(rng, n=3, dims=(2, 1))
        rf = problem.restriction()
        g = rf.as_functional()
        for _ in range(100):
            x = problem.M.random_element(rng)
            alpha = Hyperbolic(*rng.standard_normal(2))
            assert (g(x, alpha * problem.z) - rf.evaluate(x, alpha * problem.z)).max_abs() <= 1e-10


class TestGapInterval:
    def test_zero_submodule_formula(self):
        rng = np.random.default_rng(5)
        n = 3
        problem = ExtensionProblem(
            n,
            DSubmodule.zero(n),
            rand_dvec(rng, n),
            DBilinear2Functional.random(n, 50),
        )
        xp = rand_dvec(rng, n)
        m0, m = gap_interval(problem, xp)
        nf = problem.norm_f()
        lo = -1.0 * nf * NORM(xp, problem.z)
        hi = nf * NORM(xp, problem.z)
        assert (m0 - lo).max_abs() <= 1e-12
        assert (m - hi).max_abs() <= 1e-12

    def test_pairwise_inequality(self):
        # -|f| |y+x',z| - f(y,z) <=' |f| |x+x',z| - f(x,z) over samples
        rng = np.random.default_rng(6)
        problem = random_problem(rng, n=3, dims=(2, 2))
        xp = outside_vector(rng, problem.M)
        nf = problem.norm_f()
        f = problem.functional
        for _ in range(300):
            x = problem.M.random_element(rng)
            y = problem.M.random_element(rng)
            lhs = -1.0 * nf * NORM(y + xp, problem.z) - f(y, problem.z)
            rhs = nf * NORM(x + xp, problem.z) - f(x, problem.z)
            assert lhs.leq(rhs + Hyperbolic(1e-9, 1e-9))

    def test_endpoints_inside_pairwise_bounds(self):
        rng = np.random.default_rng(7)
        problem = random_problem(rng, n=3, dims=(1, 2))
        xp = outside_vector(rng, problem.M)
        m0, m = gap_interval(problem, xp)
        nf = problem.norm_f()
        f = problem.functional
        assert m0.leq(m)
        for _ in range(300):
            x = problem.M.random_element(rng)
            upper = nf * NORM(x + xp, problem.z) - f(x, problem.z)
            lower = -1.0 * nf * NORM(x + xp, problem.z) - f(x, problem.z)
            assert m.leq(upper + Hyperbolic(1e-9, 1e-9))
            assert (lower - Hyperbolic(1e-9, 1e-9)).leq(m0)

    def test_grid_oracle_agreement_small_dims(self):
        rng = np.random.default_rng(8)
        for dims in ((0, 0), (1, 0), (1, 1), (2, 1), (2, 2)):
            problem = random_problem(rng, n=3, dims=dims)
            xp = outside_vector(rng, problem.M)
            m0, m = gap_interval(problem, xp)
            g0, gm = gap_interval_grid(problem, xp)
            assert (g0 - m0).max_abs() <= 1e-4
            assert (gm - m).max_abs() <= 1e-4

    def test_subgradient_outer_bracket(self):
        rng = np.random.default_rng(9)
        for trial in range(5):
            problem = random_problem(rng, n=3)
            xp = outside_vector(rng, problem.M)
            m0, m = gap_interval(problem, xp)
            s0, sm = gap_interval_subgradient(problem, xp, seed=trial)
            slack = Hyperbolic(1e-9, 1e-9)
            assert (s0 - slack).leq(m0)
            assert m.leq(sm + slack)
            # and the estimate is not vacuous
            assert (sm - s0).max_abs() <= 2.0 * (1.0 + m.max_abs())


class TestOneStepExtend:
    def test_zero_functional_extends_by_zero(self):
        rng = np.random.default_rng(10)
        n = 3
        problem = ExtensionProblem(
            n,
            DSubmodule(n, rng.standard_normal((1, n)), rng.standard_normal((1, n))),
            rand_dvec(rng, n),
            DBilinear2Functional.zero(n),
        )
        xp = outside_vector(rng, problem.M)
        step = one_step_extend(problem, xp)
        assert step.r == Hyperbolic(0.0, 0.0)
        assert step.g.norm() == Hyperbolic(0.0, 0.0)

    def test_full_domain_identity_step(self):
        rng = np.random.default_rng(11)
        n = 3
        problem = ExtensionProblem(
            n, DSubmodule.full(n), rand_dvec(rng, n), DBilinear2Functional.random(n, 60)
        )
        xp = rand_dvec(rng, n)
        step = one_step_extend(problem, xp)
        assert step.grew == (False, False)
        assert step.g.domain is problem.M or step.g.domain.is_full()
        # forced value: r = f(x', z)
        want = problem.functional(xp, problem.z)
        assert (step.r - want).max_abs() <= 1e-10

    def test_norm_preserved_and_restriction_kept(self):
        rng = np.random.default_rng(12)
        problem = random_problem(rng, n=3, dims=(1, 2))
        xp = outside_vector(rng, problem.M)
        rf = problem.restriction()
        step = one_step_extend(problem, xp)
        nf, ng = rf.norm(), step.g.norm()
        assert abs(ng.p - nf.p) <= 1e-6 * (1.0 + nf.p)
        assert abs(ng.q - nf.q) <= 1e-6 * (1.0 + nf.q)
        for _ in range(200):
            x = problem.M.random_element(rng)
            alpha = Hyperbolic(*rng.standard_normal(2))
            got = step.g.evaluate(x, alpha * problem.z, check_domain=False)
            want = rf.evaluate(x, alpha * problem.z, check_domain=False)
            assert (got - want).max_abs() <= 1e-10

    def test_pointwise_bound_on_domain(self):
        # |f(x,z) + r|_k <=' |f| * norm(x + x', z)
        rng = np.random.default_rng(13)
        problem = random_problem(rng, n=4, dims=(2, 2))
        xp = outside_vector(rng, problem.M)
        step = one_step_extend(problem, xp)
        nf = problem.norm_f()
        rf = problem.restriction()
        for _ in range(300):
            x = problem.M.random_element(rng)
            lhs = (rf.evaluate(x, problem.z) + step.r).modulus()
            rhs = nf * NORM(x + xp, problem.z)
            assert lhs.leq(rhs + Hyperbolic(1e-9, 1e-9))

    def test_bracket_holds(self):
        rng = np.random.default_rng(14)
        problem = random_problem(rng, n=3, dims=(2, 1))
        xp = outside_vector(rng, problem.M)
        step = one_step_extend(problem, xp)
        assert step.m0.leq(step.r) and step.r.leq(step.m)

    def test_degenerate_z_rejected(self):
        rng = np.random.default_rng(15)
        problem = random_problem(rng, n=3, dims=(1, 1), degenerate=True)
        with pytest.raises(DegenerateZ):
            one_step_extend(problem, rand_dvec(rng, 3))


class TestDegenerateRepair:
    def test_example_construction(self):
        n = 2
        problem = ExtensionProblem(
            n,
            DSubmodule.zero(n),
            dvec([1.0, 0.0], [0.0, 0.0]),  # z = e1 * (1, 0)
            DBilinear2Functional.random(n, 70),
        )
        fixed = normalize_degenerate_z(problem)
        assert fixed.z == dvec([1.0, 0.0], [1.0, 0.0])
        assert not fixed.z.is_zero_divisor()
        # the functional on the repaired component is zero
        assert np.array_equal(fixed.functional.C2, np.zeros((2, 2)))

    def test_scaling_matches_surviving_component(self):
        problem = ExtensionProblem(
            3,
            DSubmodule.zero(3),
            dvec([0.0, 0.0, 0.0], [3.0, 4.0, 0.0]),  # e2-only, length 5
            DBilinear2Functional.random(3, 71),
        )
        fixed = normalize_degenerate_z(problem)
        assert np.allclose(fixed.z.c1, [5.0, 0.0, 0.0])
        assert np.allclose(fixed.z.c2, [3.0, 4.0, 0.0])

    def test_rejects_non_degenerate(self):
        rng = np.random.default_rng(16)
        with pytest.raises(NotDegenerate):
            normalize_degenerate_z(random_problem(rng, n=3, dims=(1, 1)))
        zero_z = ExtensionProblem(
            2, DSubmodule.zero(2), DVector.zero(2), DBilinear2Functional.zero(2)
        )
        with pytest.raises(NotDegenerate):
            normalize_degenerate_z(zero_z)

    def test_extension_through_repair_restricts_correctly(self):
        rng = np.random.default_rng(17)
        problem = random_problem(rng, n=3, dims=(2, 1), degenerate=True)
        trace = full_extend(problem)
        assert trace.repaired
        for _ in range(200):
            x = problem.M.random_element(rng)
            alpha = Hyperbolic(*rng.standard_normal(2))
            got = trace.final.evaluate(x, alpha * problem.z, check_domain=False)
            want = problem.functional(x, alpha * problem.z)
            assert (got - want).max_abs() <= 1e-10

    def test_zero_z_gives_zero_extension(self):
        rng = np.random.default_rng(18)
        n = 3
        problem = ExtensionProblem(
            n,
            DSubmodule(n, rng.standard_normal((1, n)), rng.standard_normal((2, n))),
            DVector.zero(n),
            DBilinear2Functional.random(n, 80),
        )
        trace = full_extend(problem)
        assert trace.steps == []
        assert trace.norm_F == Hyperbolic(0.0, 0.0)
        x = rand_dvec(rng, n)
        assert trace.final.evaluate(x, DVector.zero(n)).max_abs() == 0.0


class TestFullExtend:
    def test_full_domain_zero_steps(self):
        rng = np.random.default_rng(19)
        n = 3
        problem = ExtensionProblem(
            n, DSubmodule.full(n), rand_dvec(rng, n), DBilinear2Functional.random(n, 90)
        )
        trace = full_extend(problem)
        assert trace.steps == []
        assert (trace.norm_F - trace.norm_f).max_abs() <= 1e-12

    def test_growth_counts_by_dimension(self):
        rng = np.random.default_rng(20)
        problem = random_problem(rng, n=3, dims=(1, 1))
        trace = full_extend(problem)
        assert trace.growth_counts() == (2, 2)

    def test_random_instances_audit(self):
        rng = np.random.default_rng(21)
        for i in range(15):
            problem = random_problem(rng, degenerate=(i % 5 == 4))
            trace = full_extend(problem)
            audit = trace.audit(samples=200, seed=i)
            assert audit["passed"], audit

    def test_step_chain_invariants(self):
        # each step agrees with its predecessor on the predecessor's domain
        # and the norm stays constant along the chain
        rng = np.random.default_rng(30)
        problem = random_problem(rng, n=4, dims=(1, 2))
        trace = full_extend(problem)
        states = [problem.restriction()] + [s.g for s in trace.steps]
        nf = trace.norm_f
        for prev, cur in zip(states[:-1], states[1:]):
            ncur = cur.norm()
            assert nf.leq(ncur + Hyperbolic(1e-9, 1e-9))
            assert ncur.leq(nf + Hyperbolic(1e-9, 1e-9))
            for _ in range(100):
                x = prev.domain.random_element(rng)
                alpha = Hyperbolic(*rng.standard_normal(2))
                got = cur.evaluate(x, problem.z, check_domain=False) * alpha
                want = prev.evaluate(x, problem.z, check_domain=False) * alpha
                assert (got - want).max_abs() <= 1e-10

    def test_trace_json_shape(self):
        rng = np.random.default_rng(22)
        problem = random_problem(rng, n=2, dims=(1, 0))
        trace = full_extend(problem)
        blob = trace.to_json()
        assert "steps" in blob and "final" in blob
        for step in blob["steps"]:
            assert {"x_prime", "m0", "m", "r"} <= set(step)
        assert {"F", "norm_f", "norm_F"} <= set(blob["final"])


class TestCorollary:
    def test_norm_one_and_value(self):
        rng = np.random.default_rng(23)
        n = 3
        x0, y0 = rand_dvec(rng, n), rand_dvec(rng, n)
        f0, trace = corollary_functional(x0, y0)
        one = Hyperbolic(1.0, 1.0)
        assert (f0.norm() - one).max_abs() <= 1e-9
        assert (trace.final.norm() - one).max_abs() <= 1e-9
        target = NORM(x0, y0)
        assert (f0.evaluate(x0, y0) - target).max_abs() <= 1e-10
        assert (trace.final.evaluate(x0, y0) - target).max_abs() <= 1e-10

    def test_zero_divisor_scalar_case_table(self):
        rng = np.random.default_rng(24)
        x0, y0 = rand_dvec(rng, 3), rand_dvec(rng, 3)
        f0, _ = corollary_functional(x0, y0)
        a1, b2 = 1.5, -2.0
        val = f0.evaluate(
            Hyperbolic(a1, 0.0) * x0, Hyperbolic(0.0, b2) * y0, check_domain=False
        )
        assert val.modulus().max_abs() <= 1e-12

    def test_rejects_zero_divisor_inputs(self):
        rng = np.random.default_rng(25)
        good = rand_dvec(rng, 2)
        bad = dvec([1.0, 0.0], [0.0, 0.0])
        with pytest.raises(ZeroDivisorInput):
            corollary_functional(bad, good)
        with pytest.raises(ZeroDivisorInput):
            corollary_functional(good, DVector.zero(2))

    def test_rejects_dependent_pair(self):
        rng = np.random.default_rng(26)
        x0 = rand_dvec(rng, 3)
        y0 = Hyperbolic(2.0, -1.0) * x0
        with pytest.raises(DependentPair):
            corollary_functional(x0, y0)

    def test_rejects_componentwise_dependent_pair(self):
        # dependent in the first component only: the attained value is a
        # zero divisor, so no norm-one attaining functional exists
        x0 = dvec([1.0, 0.0, 0.0], [1.0, 0.0, 0.0])
        y0 = dvec([2.0, 0.0, 0.0], [0.0, 1.0, 0.0])
        with pytest.raises(DependentPair):
            corollary_functional(x0, y0)


class TestProblemIO:
    def test_json_roundtrip(self):
        rng = np.random.default_rng(27)
        problem = random_problem(rng, n=3, dims=(1, 2))
        blob = problem.to_json()
        back = ExtensionProblem.from_json(blob)
        assert back.n == problem.n
        assert back.M.dims == problem.M.dims
        assert (back.norm_f() - problem.norm_f()).max_abs() <= 1e-12

    def test_rejects_unknown_norm_kind(self):
        rng = np.random.default_rng(28)
        blob = random_problem(rng, n=2, dims=(1, 1)).to_json()
        blob["norm"] = {"kind": "exotic"}
        with pytest.raises(ValueError):
            ExtensionProblem.from_json(blob)

    def test_rejects_non_gramdet_norm(self):
        from hyp2.acceptance import BrokenTriangle2Norm

        rng = np.random.default_rng(29)
        with pytest.raises(ValueError):
            ExtensionProblem(
                2,
                DSubmodule.zero(2),
                rand_dvec(rng, 2),
                DBilinear2Functional.zero(2),
                D2Norm(BrokenTriangle2Norm(), None),
            )
