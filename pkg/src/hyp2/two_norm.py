"""Real 2-norms, their hyperbolic-valued lift on D^n, and convergence tests.

A real 2-norm measures the parallelogram spanned by two vectors; the shipped
instance is the Euclidean area (Gram-determinant) 2-norm.  Two real 2-norms
lift to a hyperbolic-valued 2-norm on D^n by evaluating one per idempotent
component, and conversely any hyperbolic-valued 2-norm decomposes into its
two coordinate 2-norms.  axiom_check probes the four defining axioms on
random samples plus adversarial corners and reports the worst violation per
axiom.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .dmodule import DimensionMismatch, DVector, linear_dependent
from .hyperbolic import E1, E2, K, Hyperbolic


class AxiomViolation(ValueError):
    """A probed map failed a defining 2-norm axiom."""


@lru_cache(maxsize=None)
def _wedge_cols(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(n, 1)


def wedge_area(x: np.ndarray, y: np.ndarray) -> float:
    """Euclidean length of the wedge x ^ y (the spanned parallelogram area)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    iu, ju = _wedge_cols(x.shape[0])
    w = x[iu] * y[ju] - x[ju] * y[iu]
    return float(np.sqrt(w @ w))


def wedge_area_batch(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Row-wise wedge lengths for (m, n) stacks of vectors."""
    iu, ju = _wedge_cols(xs.shape[1])
    w = xs[:, iu]
    w = w * ys[:, ju]
    w -= xs[:, ju] * ys[:, iu]
    return np.sqrt(np.einsum("bk,bk->b", w, w))


class GramDet2Norm:
    """Euclidean area 2-norm: sqrt(|x|^2 |y|^2 - <x,y>^2).

    Evaluated through the wedge coordinates sum_{i<j} (x_i y_j - x_j y_i)^2,
    which is the same value by the Lagrange identity but free of the
    cancellation the direct formula suffers near dependent pairs.
    """

    kind = "gramdet"

    def __call__(self, x: np.ndarray, y: np.ndarray) -> float:
        return wedge_area(x, y)

    batch = staticmethod(wedge_area_batch)

    def __repr__(self) -> str:
        return "GramDet2Norm()"


#: Signature every real 2-norm evaluator follows.
Real2Norm = Callable[[np.ndarray, np.ndarray], float]


class D2Norm:
    """Hyperbolic-valued 2-norm on D^n lifted from two real 2-norms."""

    __slots__ = ("norm1", "norm2")

    def __init__(self, norm1: Real2Norm | None = None, norm2: Real2Norm | None = None):
        self.norm1 = norm1 if norm1 is not None else GramDet2Norm()
        self.norm2 = norm2 if norm2 is not None else GramDet2Norm()

    def __call__(self, x: DVector, y: DVector) -> Hyperbolic:
        if x.n != y.n:
            raise DimensionMismatch(f"{x.n} != {y.n}")
        return Hyperbolic(self.norm1(x.c1, y.c1), self.norm2(x.c2, y.c2))

    evaluate = __call__

    def is_gramdet(self) -> bool:
        return getattr(self.norm1, "kind", None) == "gramdet" and getattr(
            self.norm2, "kind", None
        ) == "gramdet"

    def __repr__(self) -> str:
        return f"D2Norm({self.norm1!r}, {self.norm2!r})"


def eval_d(norm: D2Norm, x: DVector, y: DVector) -> Hyperbolic:
    return norm(x, y)


def decompose(norm_fn, n: int, rng: np.random.Generator | int | None = None):
    """Split a black-box hyperbolic-valued 2-norm into its coordinate 2-norms.

    Returns (phi, psi) with norm(x, y) = e1*phi(e1x, e1y) + e2*psi(e2x, e2y);
    phi and psi are simply the p/q coordinates of the evaluation, which is
    exactly the reconstruction the coordinate split guarantees.  A handful of
    probe evaluations spot-check the 2-norm axioms first and raise
    AxiomViolation on failure.
    """
    norm_eval = norm_fn if callable(norm_fn) else norm_fn.evaluate
    rng = np.random.default_rng(rng if rng is not None else 0)
    tol = 1e-8
    for _ in range(8):
        x = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        y = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        v = norm_eval(x, y)
        if not v.is_nonneg(tol):
            raise AxiomViolation(f"norm value {v!r} leaves the nonnegative cone")
        if (norm_eval(y, x) - v).max_abs() > tol * (1.0 + v.max_abs()):
            raise AxiomViolation("norm is not symmetric on probe inputs")
        for alpha in (K, E1, Hyperbolic(-2.0, 0.5)):
            lhs = norm_eval(alpha * x, y)
            rhs = alpha.modulus() * v
            if (lhs - rhs).max_abs() > tol * (1.0 + rhs.max_abs()):
                raise AxiomViolation(f"norm is not |.|-homogeneous for {alpha!r}")
        dep = norm_eval(x, Hyperbolic(0.5, -2.0) * x)
        if dep.max_abs() > tol:
            raise AxiomViolation("norm does not vanish on a dependent probe pair")

    def phi(x: DVector, y: DVector) -> float:
        return norm_eval(x, y).p

    def psi(x: DVector, y: DVector) -> float:
        return norm_eval(x, y).q

    return phi, psi


@dataclass
class AxiomReport:
    """Worst observed violation per 2-norm axiom over a sample run."""

    n: int
    samples: int
    worst: dict[str, float] = field(default_factory=dict)

    def passed(self, tol: float = 1e-9) -> bool:
        return all(v <= tol for v in self.worst.values())

    def to_json(self, tol: float = 1e-9) -> dict:
        out: dict = dict(sorted(self.worst.items()))
        out["n"] = self.n
        out["samples"] = self.samples
        out["tol"] = tol
        out["passed"] = self.passed(tol)
        return out


def axiom_check(
    norm_fn,
    n: int,
    samples: int = 1000,
    rng: np.random.Generator | int | None = None,
) -> AxiomReport:
    """Probe the four 2-norm axioms on random samples plus targeted corners.

    Axioms: (i) vanishes exactly on dependent pairs, (ii) symmetry,
    (iii) modulus-homogeneity in the first slot, (iv) subadditivity in the
    first slot.  Corners include zero-divisor scalars, k itself and aligned
    (dependent) first-slot pairs, which are where broken norms hide.
    """
    norm_eval = norm_fn if callable(norm_fn) else norm_fn.evaluate
    rng = np.random.default_rng(rng if rng is not None else 0)
    worst = {"i": 0.0, "ii": 0.0, "iii": 0.0, "iv": 0.0}

    def rand_vec() -> DVector:
        return DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))

    corner_scalars = [
        K,
        E1,
        E2,
        Hyperbolic(-1.0, -1.0),
        Hyperbolic(0.0, 0.0),
        Hyperbolic(3.0, 0.0),
        Hyperbolic(0.0, -0.25),
    ]

    for _ in range(samples):
        x, y, z = rand_vec(), rand_vec(), rand_vec()

        # (i) dependent pairs must evaluate to zero ...
        alpha = Hyperbolic(rng.standard_normal(), rng.standard_normal())
        for factor in (alpha, E1 * alpha, E2 * alpha):
            v = norm_eval(x, factor * x)
            worst["i"] = max(worst["i"], v.max_abs())
        # ... and independent pairs must not (both coordinates positive).
        if not linear_dependent(x, y):
            v = norm_eval(x, y)
            worst["i"] = max(worst["i"], max(0.0, -min(v.p, v.q)))

        # (ii) symmetry
        worst["ii"] = max(worst["ii"], (norm_eval(x, y) - norm_eval(y, x)).max_abs())

        # (iii) modulus homogeneity, random and corner scalars
        base = norm_eval(x, y)
        scalars = [Hyperbolic(rng.standard_normal(), rng.standard_normal())]
        scalars += corner_scalars
        for s in scalars:
            diff = norm_eval(s * x, y) - s.modulus() * base
            worst["iii"] = max(worst["iii"], diff.max_abs())

        # (iv) subadditivity, random triple plus aligned first-slot corners
        triples = [(x, y, z), (x, x, z), (x, 2.0 * x, z), (x, 0.5 * x, y)]
        for xx, yy, zz in triples:
            gap = norm_eval(xx + yy, zz) - norm_eval(xx, zz) - norm_eval(yy, zz)
            worst["iv"] = max(worst["iv"], max(0.0, gap.p, gap.q))

    return AxiomReport(n=n, samples=samples, worst=worst)


def sequence_converges(
    norm: D2Norm,
    seq: Sequence[DVector],
    x0: DVector,
    probes: Sequence[DVector],
    tol: float = 1e-8,
) -> bool:
    """Tail test for convergence in the hyperbolic-valued 2-norm.

    True iff over the last quarter of the sequence both coordinates of
    norm(x_k - x0, y) stay below tol for every probe direction y.  This is
    equivalent to coordinatewise convergence of the two real component
    sequences.
    """
    if not probes:
        raise ValueError("at least one probe direction is required")
    seq = list(seq)
    if not seq:
        return False
    window = max(1, len(seq) // 4)
    for x in seq[-window:]:
        diff = x - x0
        for y in probes:
            v = norm(diff, y)
            if max(v.p, v.q) >= tol:
                return False
    return True
