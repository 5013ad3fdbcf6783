"""Bounded 2-functionals on D^n as antisymmetric component matrices.

A map f(x, y) = e1*(x1' C1 y1) + e2*(x2' C2 y2) with antisymmetric C1, C2 is
biadditive, scalar-bihomogeneous, and vanishes on dependent pairs; with the
Euclidean area 2-norm these are exactly the bounded 2-functionals on D^n, and
the operator norm of each component equals the largest singular value of its
matrix.  Two independent norm computations are provided: the spectral value
(exact) and a randomized supremum search (a refined lower estimate).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dmodule import DimensionMismatch, DVector
from .hyperbolic import Hyperbolic, _coerce, sup_d
from .two_norm import D2Norm, wedge_area_batch

#: Absolute bound on the symmetric part accepted at construction / on load.
ANTISYM_TOL = 1e-12

#: Pairs whose 2-norm component falls below this are treated as zero or
#: zero-divisor norms and excluded from supremum refinement.
REJECT_TOL = 1e-6

#: Stricter rejection used while sampling unit-sphere pairs: the quotient
#: depends only on the spanned plane, every plane has well-conditioned
#: representatives, and thin pairs only add round-off noise to the argmax.
SAMPLE_REJECT_TOL = 1e-3


class Method(Enum):
    SPECTRAL = "spectral"
    BRUTE_FORCE = "brute_force"


def _as_antisymmetric(mat, n: int | None = None) -> np.ndarray:
    arr = np.array(mat, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise DimensionMismatch(f"expected {n}x{n}, got {arr.shape}")
    sym = float(np.max(np.abs(arr + arr.T), initial=0.0))
    if sym > ANTISYM_TOL:
        raise ValueError(
            f"matrix is not antisymmetric: max |C + C^T| entry = {sym:.3e} > {ANTISYM_TOL}"
        )
    arr.setflags(write=False)
    return arr


class DBilinear2Functional:
    """A bounded 2-functional on D^n x D^n, one antisymmetric matrix per component."""

    __slots__ = ("C1", "C2")

    def __init__(self, C1, C2):
        self.C1 = _as_antisymmetric(C1)
        self.C2 = _as_antisymmetric(C2, n=self.C1.shape[0])

    @classmethod
    def zero(cls, n: int) -> "DBilinear2Functional":
        return cls(np.zeros((n, n)), np.zeros((n, n)))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator | int | None = None) -> "DBilinear2Functional":
        rng = np.random.default_rng(rng)
        a1 = rng.standard_normal((n, n))
        a2 = rng.standard_normal((n, n))
        return cls((a1 - a1.T) / 2.0, (a2 - a2.T) / 2.0)

    @property
    def n(self) -> int:
        return self.C1.shape[0]

    def __call__(self, x: DVector, y: DVector) -> Hyperbolic:
        if x.n != self.n or y.n != self.n:
            raise DimensionMismatch(f"functional on D^{self.n} applied to D^{x.n} x D^{y.n}")
        return Hyperbolic(float(x.c1 @ self.C1 @ y.c1), float(x.c2 @ self.C2 @ y.c2))

    evaluate = __call__

    def __mul__(self, alpha) -> "DBilinear2Functional":
        try:
            alpha = _coerce(alpha)
        except TypeError:
            return NotImplemented
        return DBilinear2Functional(alpha.p * self.C1, alpha.q * self.C2)

    __rmul__ = __mul__

    def component_forms(self):
        """The two real bilinear forms (f1, f2) on real vector pairs."""

        def f1(u: np.ndarray, v: np.ndarray) -> float:
            return float(np.asarray(u, dtype=float) @ self.C1 @ np.asarray(v, dtype=float))

        def f2(u: np.ndarray, v: np.ndarray) -> float:
            return float(np.asarray(u, dtype=float) @ self.C2 @ np.asarray(v, dtype=float))

        return f1, f2

    def k_parts(self):
        """Real and k-part (phi, psi) of the evaluation: f = phi + k*psi.

        phi = (f1 + f2)/2 and psi = (f1 - f2)/2 on the split coordinates;
        they satisfy phi(kx, y) = psi(x, y) and psi(kx, y) = phi(x, y).
        """

        def phi(x: DVector, y: DVector) -> float:
            v = self(x, y)
            return (v.p + v.q) / 2.0

        def psi(x: DVector, y: DVector) -> float:
            v = self(x, y)
            return (v.p - v.q) / 2.0

        return phi, psi

    def __repr__(self) -> str:
        return f"DBilinear2Functional(n={self.n})"

    # -- JSON ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"C1": self.C1.tolist(), "C2": self.C2.tolist()}

    @classmethod
    def from_json(cls, obj: dict) -> "DBilinear2Functional":
        if not isinstance(obj, dict) or not {"C1", "C2"} <= set(obj):
            raise ValueError("functional object needs C1 and C2 keys")
        return cls(obj["C1"], obj["C2"])


def component_split(f: DBilinear2Functional):
    return f.component_forms()


def k_decompose(f: DBilinear2Functional):
    return f.k_parts()


@dataclass
class NormCertificate:
    """An operator-norm bound with the pair of vectors that (nearly) attains it."""

    value: Hyperbolic
    witness: tuple[DVector, DVector]
    method: Method

    def to_json(self) -> dict:
        x, y = self.witness
        return {
            "value": self.value.to_json(),
            "witness_x": x.to_json(),
            "witness_y": y.to_json(),
            "method": self.method.value,
        }


def _top_singular_pair(C: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    n = C.shape[0]
    u_mat, s, vh = np.linalg.svd(C)
    sigma = float(s[0]) if s.size else 0.0
    if sigma <= 1e-300:
        u = np.zeros(n)
        v = np.zeros(n)
        u[0] = 1.0
        v[min(1, n - 1)] = 1.0
        return 0.0, u, v
    return sigma, u_mat[:, 0], vh[0, :]


def norm_spectral(f: DBilinear2Functional, norm: D2Norm | None = None) -> NormCertificate:
    """Exact operator norm w.r.t. the area 2-norm: top singular value per component.

    For antisymmetric C, |x' C y| <= sigma_max(C) * area(x, y) with equality
    at the top singular pair (project y orthogonal to x; x' C x = 0), so the
    supremum of the modulus over unit-area pairs is exactly sigma_max.
    """
    if norm is not None and not norm.is_gramdet():
        raise ValueError("the spectral norm formula requires the Gram-determinant 2-norm")
    s1, u1, v1 = _top_singular_pair(f.C1)
    s2, u2, v2 = _top_singular_pair(f.C2)
    witness = (DVector.from_components(u1, u2), DVector.from_components(v1, v2))
    return NormCertificate(Hyperbolic(s1, s2), witness, Method.SPECTRAL)


def _component_ratios(C: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """|x' C y| / area(x, y), with rejected (near-degenerate) pairs set to -1."""
    num = np.abs(np.einsum("bj,bj->b", xs @ C, ys))
    den = wedge_area_batch(xs, ys)
    return np.where(den > REJECT_TOL, num / np.maximum(den, REJECT_TOL), -1.0)


def _plane_representative(u: np.ndarray, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal pair spanning the same plane (the ratio is plane-invariant)."""
    nu = float(np.linalg.norm(u))
    if nu <= 1e-12:
        return u, v
    uu = u / nu
    w = v - uu * float(uu @ v)
    nw = float(np.linalg.norm(w))
    if nw <= 1e-12:
        return uu, v
    return uu, w / nw


def _climb_component(
    C: np.ndarray, u: np.ndarray, v: np.ndarray, steps: int
) -> tuple[float, np.ndarray, np.ndarray]:
    """Coordinatewise hill climbing on the ratio, perturbing one coordinate of
    one slot at a time at two scales, with the scale shrinking on failure.

    The final value is re-evaluated at the orthonormal representative of the
    best plane found: the quotient only depends on the plane, and the clean
    representative avoids inflating the value through round-off on thin pairs.
    """
    n = C.shape[0]
    u, v = _plane_representative(u, v)
    best = float(_component_ratios(C, u[None, :], v[None, :])[0])
    delta = 0.25
    eye = np.eye(n)
    moves = np.vstack([eye, -eye, eye / 5.0, -eye / 5.0])  # (4n, n)
    m = moves.shape[0]
    cand_u = np.empty((2 * m, n))
    cand_v = np.empty((2 * m, n))
    for _ in range(steps):
        cand_u[:m] = u + delta * moves
        cand_u[m:] = u
        cand_v[:m] = v
        cand_v[m:] = v + delta * moves
        ratios = _component_ratios(C, cand_u, cand_v)
        i = int(np.argmax(ratios))
        if ratios[i] > best:
            best = float(ratios[i])
            u, v = _plane_representative(cand_u[i], cand_v[i])
        else:
            delta *= 0.2
            if delta < 1e-13:
                break
    u, v = _plane_representative(u, v)
    final = float(_component_ratios(C, u[None, :], v[None, :])[0])
    return (final if final >= 0.0 else best), u, v


def _bruteforce_component(
    C: np.ndarray,
    budget: int,
    rng: np.random.Generator,
    formula: str,
    climb_steps: int,
) -> tuple[float, np.ndarray, np.ndarray]:
    n = C.shape[0]
    best, bu, bv = 0.0, np.eye(n)[0], np.eye(n)[min(1, n - 1)]
    chunk = 131072
    done = 0
    while done < budget:
        m = min(chunk, budget - done)
        done += m
        draws = rng.standard_normal((2 * m, n))
        xs, ys = draws[:m], draws[m:]
        xs *= (1.0 / np.sqrt(np.einsum("bi,bi->b", xs, xs)))[:, None]
        ys *= (1.0 / np.sqrt(np.einsum("bi,bi->b", ys, ys)))[:, None]
        # unit rows: area^2 = 1 - <u,v>^2; fine here because thin pairs are
        # rejected outright and the winner is re-measured by the climb
        dots = np.einsum("bi,bi->b", xs, ys)
        den = np.sqrt(np.maximum(1.0 - dots * dots, 0.0))
        if formula == "unit":
            # rescale each pair to unit area first, then take |f| directly
            ok = den > SAMPLE_REJECT_TOL
            scale = 1.0 / np.sqrt(den[ok])
            us, vs = xs[ok] * scale[:, None], ys[ok] * scale[:, None]
            vals = np.abs(np.einsum("bj,bj->b", us @ C, vs))
            if vals.size:
                i = int(np.argmax(vals))
                if vals[i] > best:
                    best, bu, bv = float(vals[i]), us[i], vs[i]
        else:
            num = np.abs(np.einsum("bj,bj->b", xs @ C, ys))
            ratios = np.where(
                den > SAMPLE_REJECT_TOL, num / np.maximum(den, SAMPLE_REJECT_TOL), -1.0
            )
            i = int(np.argmax(ratios))
            if ratios[i] > best:
                best, bu, bv = float(ratios[i]), xs[i], ys[i]
    if climb_steps > 0:
        best, bu, bv = _climb_component(C, bu, bv, climb_steps)
    return best, bu, bv


def norm_bruteforce(
    f: DBilinear2Functional,
    norm: D2Norm | None = None,
    budget: int = 20000,
    seed: int = 0,
    formula: str = "quotient",
    climb_steps: int = 100,
) -> NormCertificate:
    """Sampled supremum of |f(x,y)|_k over pairs with invertible 2-norm.

    Samples `budget` pairs per idempotent component (each component from its
    own RNG substream, so component results do not depend on the other
    component's data), rejects pairs whose 2-norm component is zero or a zero
    divisor, then polishes the best pair by coordinatewise hill climbing.
    The result is a lower estimate of the true norm.  `formula` selects the
    quotient form ("quotient") or the unit-normalized form ("unit"); the two
    agree in the limit.
    """
    if norm is not None and not norm.is_gramdet():
        raise ValueError("the brute-force search is built around the area 2-norm")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if formula not in ("quotient", "unit"):
        raise ValueError(f"unknown formula {formula!r}")
    results = []
    for comp, C in enumerate((f.C1, f.C2)):
        rng = np.random.default_rng([seed, comp, 0 if formula == "quotient" else 1])
        results.append(_bruteforce_component(C, budget, rng, formula, climb_steps))
    (b1, u1, v1), (b2, u2, v2) = results
    witness = (DVector.from_components(u1, u2), DVector.from_components(v1, v2))
    return NormCertificate(Hyperbolic(b1, b2), witness, Method.BRUTE_FORCE)


@dataclass
class BoundednessReport:
    """Result of a sampled boundedness check |f(x,y)|_k <=' delta * norm(x,y)."""

    ok: bool
    max_excess: float
    witness: tuple[DVector, DVector] | None

    def __bool__(self) -> bool:
        return self.ok


def is_bounded_check(
    f: DBilinear2Functional,
    norm: D2Norm,
    delta: Hyperbolic,
    samples: int = 1000,
    seed: int = 0,
    tol: float = 1e-9,
) -> BoundednessReport:
    """Check the defining bound on random pairs plus the spectral witness.

    delta must lie in the nonnegative cone.  The spectral witness (and scaled
    copies of it) is always included among the probes, so an insufficient
    bound is caught deterministically.
    """
    if not delta.is_nonneg():
        raise ValueError("delta must lie in the nonnegative cone")
    rng = np.random.default_rng(seed)
    n = f.n
    probes: list[tuple[DVector, DVector]] = []
    wx, wy = norm_spectral(f).witness
    for scale in (1.0, 0.5, 2.0):
        probes.append((scale * Hyperbolic(1.0, 1.0) * wx, wy))
    for _ in range(samples):
        x = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        y = DVector.from_components(rng.standard_normal(n), rng.standard_normal(n))
        probes.append((x, y))
        # dependent corner: the bound degenerates to |f| <= 0 there
        probes.append((x, Hyperbolic(*rng.standard_normal(2)) * x))

    worst = -np.inf
    witness = None
    for x, y in probes:
        lhs = f(x, y).modulus()
        rhs = delta * norm(x, y)
        excess = max(lhs.p - rhs.p, lhs.q - rhs.q)
        if excess > worst:
            worst = excess
            witness = (x, y)
    ok = worst <= tol
    return BoundednessReport(ok=ok, max_excess=float(worst), witness=None if ok else witness)


def certificate_gap(spectral: NormCertificate, brute: NormCertificate) -> Hyperbolic:
    """Componentwise gap spectral - brute (nonnegative up to float error)."""
    return spectral.value - brute.value


def merge_certificates(certs: list[NormCertificate]) -> Hyperbolic:
    """Combine independent lower estimates by the coordinatewise supremum."""
    return sup_d([c.value for c in certs])
