"""Constructive norm-preserving extension of bounded 2-functionals on M x [z].

Representation.  Write [z] for the cyclic submodule generated by z.  Per
idempotent component, a bounded 2-functional f on M x [z] is determined by
the real linear functional x -> f(x, z) on the component of M, and that
functional vanishes on multiples of z.  It is therefore realized by a unique
"moment" vector w in W = proj_{z-perp}(M):

    f(x, alpha z) = alpha * <w, x>,       |f| = ||w|| / ||z||

with the area 2-norm (gram(x, z) = ||proj_{z-perp} x|| * ||z||).

One-generator extension.  Adjoining x' enlarges W by at most the component
p_perp of proj(x') orthogonal to W.  An extension with value r = g(x', z)
has moment w + xi with xi in the new directions and <xi, proj(x')> equal to
r - <w, x'>, so its norm is sqrt(||w||^2 + ||xi||^2) / ||z||.  The norm is
preserved exactly when xi = 0, i.e. for the single value r = <w, x'>.  The
gap interval [m0, m] of admissible values collapses to that point here (the
quotient unit ball of the area 2-norm is strictly convex); gap_interval
computes it in closed form, while gap_interval_subgradient and
gap_interval_grid bound the same quantities by direct optimization of the
defining sup/inf objectives and are used as independent cross-checks.

Degenerate right slots.  If z has one vanishing component it is repaired by
injecting a scaled basis vector into that component (the functional is
extended by zero there); if z = 0 every 2-functional on M x [z] is zero and
the zero extension is returned directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dmodule import DSubmodule, DVector
from .hyperbolic import TOL, Hyperbolic
from .two_functional import DBilinear2Functional
from .two_norm import D2Norm, wedge_area_batch


class OptimizationFailure(RuntimeError):
    """A verified bracket or a sanity invariant failed during extension."""


class DegenerateZ(ValueError):
    """The right slot generator is zero or a zero divisor."""


class NotDegenerate(ValueError):
    """Degenerate-slot repair requested for a non-degenerate generator."""


class DependentPair(ValueError):
    """The two construction vectors are linearly dependent (componentwise)."""


class ZeroDivisorInput(ValueError):
    """A construction vector is zero or a zero divisor."""


def _perp(z: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Component of v orthogonal to z (identity for z = 0)."""
    nz2 = float(z @ z)
    if nz2 <= TOL * TOL:
        return np.array(v, dtype=float)
    return v - z * (float(z @ v) / nz2)


def _component_wbasis(domain: DSubmodule, comp: int, z: np.ndarray) -> np.ndarray:
    """Orthonormal rows spanning W = proj_{z-perp}(M_comp)."""
    q = domain.component_q(comp)
    if q.shape[0] == 0:
        return np.zeros((0, domain.n))
    projected = np.array([_perp(z, row) for row in q])
    # the rank can drop by one (when z lies in the component); Gram-Schmidt
    # with a residual drop instead of an error
    rows: list[np.ndarray] = []
    for v in projected:
        w = v.copy()
        for r in rows:
            w -= r * float(r @ w)
        for r in rows:
            w -= r * float(r @ w)
        norm = float(np.linalg.norm(w))
        if norm > 1e-12 * max(1.0, float(np.linalg.norm(v))) and norm > 1e-300:
            rows.append(w / norm)
    if not rows:
        return np.zeros((0, domain.n))
    return np.array(rows)


class RestrictedFunctional:
    """A bounded 2-functional on M x [z], stored by per-component moment vectors.

    The moment vectors are expected to lie in proj_{z-perp} of the matching
    domain component; from_matrices produces them in that canonical position.
    """

    __slots__ = ("domain", "z", "w1", "w2")

    def __init__(self, domain: DSubmodule, z: DVector, w1, w2):
        if z.n != domain.n:
            raise ValueError("generator dimension does not match the domain")
        self.domain = domain
        self.z = z
        self.w1 = np.array(w1, dtype=float).reshape(domain.n)
        self.w2 = np.array(w2, dtype=float).reshape(domain.n)
        self.w1.setflags(write=False)
        self.w2.setflags(write=False)

    @classmethod
    def from_matrices(
        cls, domain: DSubmodule, z: DVector, functional: DBilinear2Functional
    ) -> "RestrictedFunctional":
        """Restrict a global antisymmetric-matrix 2-functional to M x [z].

        Per component the restriction's moment is the projection of C z onto
        W = proj_{z-perp}(M): for x in M, x' C z = <proj_W(C z), x> because
        C z is already orthogonal to z.
        """
        moments = []
        for comp, C in enumerate((functional.C1, functional.C2)):
            zc = z.split()[comp]
            wb = _component_wbasis(domain, comp, zc)
            cz = C @ zc
            moments.append(wb.T @ (wb @ cz) if wb.size else np.zeros(domain.n))
        return cls(domain, z, moments[0], moments[1])

    def moment(self, comp: int) -> np.ndarray:
        return self.w1 if comp == 0 else self.w2

    def norm(self) -> Hyperbolic:
        """Operator norm on M x [z]: ||w|| / ||z|| per component (0 for z = 0)."""
        vals = []
        for comp in (0, 1):
            nz = float(np.linalg.norm(self.z.split()[comp]))
            vals.append(0.0 if nz <= TOL else float(np.linalg.norm(self.moment(comp))) / nz)
        return Hyperbolic(vals[0], vals[1])

    def _alpha_of(self, y: DVector, tol: float = 1e-9) -> tuple[float, float]:
        """Solve y = alpha * z componentwise; reject y outside [z]."""
        alphas = []
        for comp in (0, 1):
            zc = self.z.split()[comp]
            yc = y.split()[comp]
            nz2 = float(zc @ zc)
            if nz2 <= TOL * TOL:
                if float(np.max(np.abs(yc), initial=0.0)) > tol:
                    raise ValueError("second argument lies outside the cyclic domain [z]")
                alphas.append(0.0)
                continue
            a = float(zc @ yc) / nz2
            if float(np.linalg.norm(yc - a * zc)) > tol * (1.0 + float(np.linalg.norm(yc))):
                raise ValueError("second argument lies outside the cyclic domain [z]")
            alphas.append(a)
        return alphas[0], alphas[1]

    def evaluate(self, x: DVector, y: DVector, check_domain: bool = True) -> Hyperbolic:
        """Value at (x, y) with x in M and y in [z]."""
        if check_domain and not self.domain.contains(x):
            raise ValueError("first argument lies outside the domain submodule")
        a1, a2 = self._alpha_of(y)
        return Hyperbolic(a1 * float(self.w1 @ x.c1), a2 * float(self.w2 @ x.c2))

    __call__ = evaluate

    def as_functional(self) -> DBilinear2Functional:
        """A global antisymmetric-matrix functional restricting to this one.

        C = (w z' - z w') / ||z||^2 satisfies C z = w because w is orthogonal
        to z; the vanishing-z component gets the zero matrix.
        """
        mats = []
        for comp in (0, 1):
            zc = self.z.split()[comp]
            w = self.moment(comp)
            nz2 = float(zc @ zc)
            if nz2 <= TOL * TOL:
                mats.append(np.zeros((self.domain.n, self.domain.n)))
            else:
                mats.append((np.outer(w, zc) - np.outer(zc, w)) / nz2)
        return DBilinear2Functional(mats[0], mats[1])

    def __repr__(self) -> str:
        return f"RestrictedFunctional(domain={self.domain!r}, norm={self.norm()!r})"


class ExtensionProblem:
    """A bounded 2-functional on M x [z] inside D^n, ready for extension.

    The functional is given globally by antisymmetric component matrices and
    restricted to the stated domain; the 2-norm must be the area lift.
    """

    __slots__ = ("n", "M", "z", "functional", "norm", "_rf")

    def __init__(
        self,
        n: int,
        M: DSubmodule,
        z: DVector,
        functional: DBilinear2Functional,
        norm: D2Norm | None = None,
    ):
        norm = norm if norm is not None else D2Norm()
        if not norm.is_gramdet():
            raise ValueError("the extension engine is built for the area 2-norm lift")
        if M.n != n or z.n != n or functional.n != n:
            raise ValueError("dimension mismatch between the problem parts")
        self.n = n
        self.M = M
        self.z = z
        self.functional = functional
        self.norm = norm
        self._rf = None

    def restriction(self) -> RestrictedFunctional:
        if self._rf is None:
            self._rf = RestrictedFunctional.from_matrices(self.M, self.z, self.functional)
        return self._rf

    def norm_f(self) -> Hyperbolic:
        return self.restriction().norm()

    def z_is_degenerate(self) -> bool:
        return self.z.is_zero() or self.z.is_zero_divisor()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "M": self.M.to_json(),
            "z": self.z.to_json(),
            "functional": self.functional.to_json(),
            "norm": {"kind": "gramdet"},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExtensionProblem":
        kind = obj.get("norm", {}).get("kind", "gramdet")
        if kind != "gramdet":
            raise ValueError(f"unsupported 2-norm kind {kind!r}")
        n = int(obj["n"])
        return cls(
            n,
            DSubmodule.from_json(obj["M"]),
            DVector.from_json(obj["z"]),
            DBilinear2Functional.from_json(obj["functional"]),
            D2Norm(),
        )


@dataclass
class ExtensionStep:
    """One generator adjunction: gap interval, chosen value, extended functional."""

    x_prime: DVector
    m0: Hyperbolic
    m: Hyperbolic
    r: Hyperbolic
    g: RestrictedFunctional
    grew: tuple[bool, bool]

    def to_json(self) -> dict:
        return {
            "x_prime": self.x_prime.to_json(),
            "m0": self.m0.to_json(),
            "m": self.m.to_json(),
            "r": self.r.to_json(),
            "grew": list(self.grew),
        }


def gap_interval(problem: ExtensionProblem, x_prime: DVector) -> tuple[Hyperbolic, Hyperbolic]:
    """The bracket [m0, m] of norm-preserving extension values for x_prime.

    m is the infimum over x in M of |f| * gram(x + x', z) - f(x, z) and m0
    the matching supremum; both are evaluated by the closed form <w, x'>
    (see the module docstring), to which they collapse for the area 2-norm.
    Raises OptimizationFailure when the verified bracket fails, which for
    finite inputs cannot happen.
    """
    rf = problem.restriction()
    vals = [float(rf.moment(comp) @ x_prime.split()[comp]) for comp in (0, 1)]
    if not all(np.isfinite(v) for v in vals):
        raise OptimizationFailure(f"gap endpoints are not finite: {vals}")
    m0 = Hyperbolic(vals[0], vals[1])
    m = Hyperbolic(vals[0], vals[1])
    if not m0.leq(m):
        raise OptimizationFailure("gap bracket m0 <=' m failed")
    return m0, m


def _extend_once(rf: RestrictedFunctional, x_prime: DVector) -> ExtensionStep:
    vals = [float(rf.moment(comp) @ x_prime.split()[comp]) for comp in (0, 1)]
    m0 = Hyperbolic(vals[0], vals[1])
    m = Hyperbolic(vals[0], vals[1])
    r = Hyperbolic((m0.p + m.p) / 2.0, (m0.q + m.q) / 2.0)
    grew1 = not rf.domain.component_contains(0, x_prime.c1)
    grew2 = not rf.domain.component_contains(1, x_prime.c2)
    if grew1 or grew2:
        domain = rf.domain.extend(x_prime)
        g = RestrictedFunctional(domain, rf.z, rf.w1, rf.w2)
    else:
        g = rf
    return ExtensionStep(x_prime=x_prime, m0=m0, m=m, r=r, g=g, grew=(grew1, grew2))


def one_step_extend(problem: ExtensionProblem, x_prime: DVector) -> ExtensionStep:
    """Extend f by one generator, choosing r as the gap midpoint.

    The generator may already lie in the domain, in which case the step is
    the identity (g = f and r is the forced value f(x', z)).  Degenerate z
    must be repaired first; see normalize_degenerate_z.
    """
    if problem.z.is_zero() or problem.z.is_zero_divisor():
        raise DegenerateZ("z is zero or a zero divisor; route through normalize_degenerate_z")
    return _extend_once(problem.restriction(), x_prime)


def normalize_degenerate_z(problem: ExtensionProblem) -> ExtensionProblem:
    """Repair a zero-divisor generator z by completing its vanishing component.

    The first standard basis vector, scaled to the length of the surviving
    component, is injected into the vanishing component, and the functional
    is assigned zero there.  The original cyclic domain embeds into the new
    one (alpha z = (e_l alpha_l) z'), so extensions computed through z'
    restrict to the original pairs unchanged.
    """
    if not problem.z.is_zero_divisor():
        raise NotDegenerate("z is not a zero divisor")
    z1, z2 = problem.z.split()
    n = problem.n
    vanish = 0 if float(np.max(np.abs(z1), initial=0.0)) <= TOL else 1
    keep = 1 - vanish
    scale = float(np.linalg.norm(problem.z.split()[keep]))
    u = np.zeros(n)
    u[0] = scale
    new_parts = [z1, z2]
    new_parts[vanish] = u
    z_new = DVector.from_components(new_parts[0], new_parts[1])
    mats = [problem.functional.C1, problem.functional.C2]
    mats[vanish] = np.zeros((n, n))
    functional = DBilinear2Functional(mats[0], mats[1])
    return ExtensionProblem(n, problem.M, z_new, functional, problem.norm)


@dataclass
class ExtensionTrace:
    """The audited record of a full extension to X x [z]."""

    problem: ExtensionProblem
    worked: ExtensionProblem
    steps: list[ExtensionStep]
    final: RestrictedFunctional
    norm_f: Hyperbolic
    norm_F: Hyperbolic

    @property
    def repaired(self) -> bool:
        return self.worked is not self.problem

    def growth_counts(self) -> tuple[int, int]:
        g1 = sum(1 for s in self.steps if s.grew[0])
        g2 = sum(1 for s in self.steps if s.grew[1])
        return g1, g2

    def audit(
        self,
        samples: int = 1000,
        seed: int = 0,
        restriction_tol: float = 1e-10,
        norm_rel_tol: float = 1e-5,
    ) -> dict:
        """Independent checks: restriction agreement, brackets, pointwise
        bound, and a sampled-supremum recomputation of the extended norm."""
        rng = np.random.default_rng(seed)
        prob = self.problem
        n = prob.n

        # restriction agreement against the original matrix data on M x [z]
        restr_err = 0.0
        k1, k2 = prob.M.dims
        cz = [prob.functional.C1 @ prob.z.c1, prob.functional.C2 @ prob.z.c2]
        for _ in range(samples):
            x1 = rng.standard_normal(k1) @ prob.M.q1 if k1 else np.zeros(n)
            x2 = rng.standard_normal(k2) @ prob.M.q2 if k2 else np.zeros(n)
            alpha = Hyperbolic(*rng.standard_normal(2))
            x = DVector.from_components(x1, x2)
            y = alpha * prob.z
            f_val = Hyperbolic(alpha.p * float(x1 @ cz[0]), alpha.q * float(x2 @ cz[1]))
            F_val = self.final.evaluate(x, y, check_domain=False)
            restr_err = max(restr_err, (F_val - f_val).max_abs())

        # brackets m0 <=' r <=' m on every step
        brackets_ok = all(s.m0.leq(s.r) and s.r.leq(s.m) for s in self.steps)

        # pointwise bound |f(x,z) + r|_k <=' |f| * norm(x + x', z) per step
        pointwise_excess = 0.0
        rf_states = [self.worked.restriction()] + [s.g for s in self.steps]
        nf = self.norm_f
        for state, step in zip(rf_states[:-1], self.steps):
            kk1, kk2 = state.domain.dims
            for _ in range(max(8, samples // max(1, len(self.steps) * 4))):
                x1 = rng.standard_normal(kk1) @ state.domain.q1 if kk1 else np.zeros(n)
                x2 = rng.standard_normal(kk2) @ state.domain.q2 if kk2 else np.zeros(n)
                x = DVector.from_components(x1, x2)
                lhs = (state.evaluate(x, self.worked.z, check_domain=False) + step.r).modulus()
                rhs = nf * self.worked.norm(x + step.x_prime, self.worked.z)
                pointwise_excess = max(pointwise_excess, lhs.p - rhs.p, lhs.q - rhs.q)

        # independent norm recomputation: sampled supremum of the modulus
        # quotient over X x [z'], polished by hill climbing
        sup_vals = []
        for comp in (0, 1):
            zc = self.worked.z.split()[comp]
            w = self.final.moment(comp)
            sup_vals.append(_ratio_sup(w, zc, n, rng))
        norm_audit = Hyperbolic(sup_vals[0], sup_vals[1])
        rel = []
        for got, want in ((norm_audit.p, nf.p), (norm_audit.q, nf.q)):
            if abs(want) <= 1e-12 and abs(got) <= 1e-12:
                rel.append(0.0)
            else:
                rel.append(abs(got - want) / max(abs(want), 1e-12))
        norm_ok = max(rel) <= norm_rel_tol

        out = {
            "restriction_max_err": restr_err,
            "restriction_ok": restr_err <= restriction_tol,
            "brackets_ok": brackets_ok,
            "pointwise_bound_excess": pointwise_excess,
            "pointwise_ok": pointwise_excess <= 1e-9,
            "norm_f": self.norm_f.to_json(),
            "norm_F": self.norm_F.to_json(),
            "norm_F_audit": norm_audit.to_json(),
            "norm_rel_err": rel,
            "norm_ok": norm_ok,
            "steps": len(self.steps),
            "repaired": self.repaired,
        }
        out["passed"] = bool(
            out["restriction_ok"] and brackets_ok and out["pointwise_ok"] and norm_ok
        )
        return out

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "final": {
                "F": self.final.as_functional().to_json(),
                "riesz1": self.final.w1.tolist(),
                "riesz2": self.final.w2.tolist(),
                "norm_f": self.norm_f.to_json(),
                "norm_F": self.norm_F.to_json(),
            },
            "repaired_z": self.worked.z.to_json() if self.repaired else None,
        }


def _ratio_sup(
    w: np.ndarray, z: np.ndarray, n: int, rng: np.random.Generator,
    samples: int = 2000, climb: int = 80,
) -> float:
    """sup_x |<w, x>| / gram(x, z): sampled then polished coordinatewise."""
    nz = float(np.linalg.norm(z))
    if nz <= TOL:
        return 0.0

    def ratio(xs: np.ndarray) -> np.ndarray:
        num = np.abs(xs @ w)
        den = wedge_area_batch(xs, np.broadcast_to(z, xs.shape))
        return np.where(den > 1e-9, num / np.maximum(den, 1e-9), -1.0)

    xs = rng.standard_normal((samples, n))
    vals = ratio(xs)
    i = int(np.argmax(vals))
    best, x = float(vals[i]), xs[i]
    delta, eye = 0.25, np.eye(n)
    for _ in range(climb):
        cands = np.vstack([x + delta * eye, x - delta * eye])
        vals = ratio(cands)
        j = int(np.argmax(vals))
        if vals[j] > best:
            best, x = float(vals[j]), cands[j]
            x = x / max(1e-12, float(np.linalg.norm(x)))
        else:
            delta *= 0.5
    return best


def full_extend(problem: ExtensionProblem) -> ExtensionTrace:
    """Iterate one-generator extensions over the standard basis until M = X.

    Standard basis vectors are adjoined in index order, each component of a
    step carrying the basis vector only when that component's span still
    misses it; components already complete contribute a zero part.  A
    zero-divisor z is repaired first; z = 0 short-circuits to the zero
    extension.
    """
    original = problem
    n = problem.n
    if problem.z.is_zero():
        final = RestrictedFunctional(
            DSubmodule.full(n), problem.z, np.zeros(n), np.zeros(n)
        )
        return ExtensionTrace(
            problem=original,
            worked=original,
            steps=[],
            final=final,
            norm_f=Hyperbolic(0.0, 0.0),
            norm_F=Hyperbolic(0.0, 0.0),
        )
    if problem.z.is_zero_divisor():
        problem = normalize_degenerate_z(problem)
    rf = problem.restriction()
    norm_f = rf.norm()
    steps: list[ExtensionStep] = []
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        need1 = not rf.domain.component_contains(0, e)
        need2 = not rf.domain.component_contains(1, e)
        if not (need1 or need2):
            continue
        xp = DVector.from_components(e if need1 else np.zeros(n), e if need2 else np.zeros(n))
        step = _extend_once(rf, xp)
        steps.append(step)
        rf = step.g
    if not rf.domain.is_full():
        raise OptimizationFailure("extension finished without exhausting the module")
    return ExtensionTrace(
        problem=original,
        worked=problem,
        steps=steps,
        final=rf,
        norm_f=norm_f,
        norm_F=rf.norm(),
    )


def corollary_functional(
    x0: DVector, y0: DVector, norm: D2Norm | None = None
) -> tuple[RestrictedFunctional, ExtensionTrace]:
    """The norm-one functional attaining the 2-norm at an independent pair.

    f0 on [x0] x [y0] maps (alpha x0, beta y0) to alpha*beta*gram(x0, y0);
    it has norm one and is extended norm-preservingly to all of X x [y0].
    Requires x0 and y0 to be componentwise independent (so the attained norm
    value is invertible) and neither to be zero or a zero divisor.
    """
    norm = norm if norm is not None else D2Norm()
    n = x0.n
    for v, name in ((x0, "x0"), (y0, "y0")):
        if v.is_zero() or v.is_zero_divisor():
            raise ZeroDivisorInput(f"{name} is zero or a zero divisor")
    target = norm(x0, y0)
    if min(target.p, target.q) <= 1e-9:
        raise DependentPair("x0 and y0 are dependent in some component")
    moments = []
    for comp in (0, 1):
        xc = x0.split()[comp]
        zc = y0.split()[comp]
        p0 = _perp(zc, xc)
        t = target.p if comp == 0 else target.q
        moments.append(p0 * (t / float(p0 @ p0)))
    M = DSubmodule(n, x0.c1[None, :], x0.c2[None, :])
    f0 = RestrictedFunctional(M, y0, moments[0], moments[1])
    problem = ExtensionProblem(n, M, y0, f0.as_functional(), norm)
    trace = full_extend(problem)
    return f0, trace


# -- independent gap estimators ---------------------------------------------


def _gap_objective(problem: ExtensionProblem, x_prime: DVector, comp: int, sign: float):
    """Batched objective |f|*gram(x +- x', z) sign f(x, z) in coefficients.

    sign=+1 yields the infimum objective for m; sign=-1 the inner objective
    whose negated minimum is m0.  Coefficients parameterize the domain
    component in its orthonormal basis.
    """
    q = problem.M.component_q(comp)
    z = problem.z.split()[comp]
    xp = x_prime.split()[comp]
    C = problem.functional.C1 if comp == 0 else problem.functional.C2
    cz_q = (q @ (C @ z)) if q.size else np.zeros(0)
    nf = problem.norm_f().p if comp == 0 else problem.norm_f().q

    def objective(coeffs: np.ndarray) -> np.ndarray:
        coeffs = np.atleast_2d(np.asarray(coeffs, dtype=float))
        xs = coeffs @ q + xp if q.size else np.repeat(xp[None, :], coeffs.shape[0], 0)
        grams = wedge_area_batch(xs, np.broadcast_to(z, xs.shape))
        fvals = coeffs @ cz_q if q.size else np.zeros(coeffs.shape[0])
        return nf * grams - sign * fvals

    return objective, q.shape[0]


def gap_interval_subgradient(
    problem: ExtensionProblem,
    x_prime: DVector,
    starts: int = 16,
    iters: int = 500,
    seed: int = 0,
) -> tuple[Hyperbolic, Hyperbolic]:
    """Multi-start subgradient estimate of the gap endpoints.

    Runs projected subgradient descent with diminishing steps on the convex
    inf-objective (and on its mirror for the sup side) from `starts` random
    points.  Returns an outer bracket: the estimated m is an upper bound of
    the true infimum and the estimated m0 a lower bound of the supremum, so
    [m0_hat, m_hat] contains the exact gap interval.
    """
    rng = np.random.default_rng(seed)
    los, his = [], []
    for comp in (0, 1):
        z = problem.z.split()[comp]
        xp = x_prime.split()[comp]
        q = problem.M.component_q(comp)
        C = problem.functional.C1 if comp == 0 else problem.functional.C2
        nf = problem.norm_f().p if comp == 0 else problem.norm_f().q
        nz = float(np.linalg.norm(z))
        k = q.shape[0]
        cz_q = (q @ (C @ z)) if k else np.zeros(0)

        def minimize(sign: float) -> float:
            if k == 0:
                obj, _ = _gap_objective(problem, x_prime, comp, sign)
                return float(obj(np.zeros((1, 0)))[0])
            best = np.inf
            spread = 1.0 + float(np.linalg.norm(xp))
            step0 = max(1.0, spread)
            for s in range(starts):
                c = np.zeros(k) if s == 0 else rng.standard_normal(k) * spread
                for t in range(iters):
                    u = c @ q + xp
                    pu = _perp(z, u)
                    npu = float(np.linalg.norm(pu))
                    grad_norm = (q @ (pu / npu)) * (nf * nz) if npu > 1e-14 else np.zeros(k)
                    g = grad_norm - sign * cz_q
                    val = nf * npu * nz - sign * float(c @ cz_q)
                    if val < best:
                        best = val
                    c = c - (step0 / np.sqrt(t + 1.0)) * g
                u = c @ q + xp
                val = nf * float(np.linalg.norm(_perp(z, u))) * nz - sign * float(c @ cz_q)
                if val < best:
                    best = val
            return float(best)

        his.append(minimize(+1.0))
        los.append(-minimize(-1.0))
    return Hyperbolic(los[0], los[1]), Hyperbolic(his[0], his[1])


def _radial_min(objective, dirs: np.ndarray, tau_hi: float, iters: int = 90) -> np.ndarray:
    """Golden-section radial minimum per direction (convex along each ray)."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    m = dirs.shape[0]
    a = np.zeros(m)
    b = np.full(m, tau_hi)
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc = objective(dirs * c[:, None])
    fd = objective(dirs * d[:, None])
    for _ in range(iters):
        right = fc > fd
        a = np.where(right, c, a)
        b = np.where(right, b, d)
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc = objective(dirs * c[:, None])
        fd = objective(dirs * d[:, None])
    tau = (a + b) / 2.0
    vals = objective(dirs * tau[:, None])
    at_zero = objective(np.zeros_like(dirs[:1]))[0]
    return np.minimum(vals, at_zero)


def _grid_min(objective, k: int, tau_hi: float = 1e7) -> float:
    """Dense direction grid + radial line search, with angular zooming.

    Covers the whole coefficient space through a radial compactification
    (directions x radius up to tau_hi), which is required because the
    infimum may be approached only along an escaping ray.
    """
    if k == 0:
        return float(objective(np.zeros((1, 0)))[0])
    if k == 1:
        dirs = np.array([[1.0], [-1.0]])
        return float(np.min(_radial_min(objective, dirs, tau_hi)))
    if k == 2:
        lo, hi, m = 0.0, 2.0 * np.pi, 721
        best_theta, best = 0.0, np.inf
        for _ in range(4):
            thetas = np.linspace(lo, hi, m)
            dirs = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
            vals = _radial_min(objective, dirs, tau_hi)
            i = int(np.argmin(vals))
            best = min(best, float(vals[i]))
            best_theta = thetas[i]
            width = (hi - lo) / m
            lo, hi, m = best_theta - 2 * width, best_theta + 2 * width, 65
        return best
    if k == 3:
        golden = np.pi * (3.0 - np.sqrt(5.0))
        idx = np.arange(800)
        zs = 1.0 - 2.0 * (idx + 0.5) / 800
        rs = np.sqrt(np.maximum(0.0, 1.0 - zs * zs))
        dirs = np.stack([rs * np.cos(golden * idx), rs * np.sin(golden * idx), zs], axis=1)
        vals = _radial_min(objective, dirs, tau_hi)
        i = int(np.argmin(vals))
        best, center = float(vals[i]), dirs[i]
        rng = np.random.default_rng(7)
        for spread in (0.15, 0.02, 0.003):
            cands = center[None, :] + spread * rng.standard_normal((400, 3))
            cands /= np.linalg.norm(cands, axis=1, keepdims=True)
            vals = _radial_min(objective, cands, tau_hi)
            i = int(np.argmin(vals))
            if float(vals[i]) < best:
                best, center = float(vals[i]), cands[i]
        return best
    raise ValueError("the grid oracle supports component dimensions up to 3")


def gap_interval_grid(
    problem: ExtensionProblem, x_prime: DVector, tau_hi: float = 1e7
) -> tuple[Hyperbolic, Hyperbolic]:
    """Dense-grid oracle for the gap endpoints (component dimensions <= 3)."""
    los, his = [], []
    for comp in (0, 1):
        obj_m, k = _gap_objective(problem, x_prime, comp, +1.0)
        obj_s, _ = _gap_objective(problem, x_prime, comp, -1.0)
        his.append(_grid_min(obj_m, k, tau_hi))
        los.append(-_grid_min(obj_s, k, tau_hi))
    return Hyperbolic(los[0], los[1]), Hyperbolic(his[0], his[1])
