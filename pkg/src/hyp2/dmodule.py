"""The free module D^n over the split-complex scalars, with submodules.

Every element splits uniquely as x = e1*x1 + e2*x2 with real coordinate
vectors x1, x2, and the scalar action, submodule structure and all norms
decouple along that split.  DVector therefore stores the two real vectors
directly; DSubmodule stores one real spanning set per component.

Rank and span-membership tests use orthogonalization residuals with the
tolerance SPAN_TOL.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .hyperbolic import TOL, Hyperbolic, _coerce

#: Residual tolerance for rank / span-membership decisions.
SPAN_TOL = 1e-9


class DimensionMismatch(ValueError):
    """Operands live in free modules of different dimension."""


class AlreadyContained(ValueError):
    """Attempt to extend a submodule by a vector it already contains."""


def _as_locked_array(data, n: int | None = None) -> np.ndarray:
    arr = np.array(data, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"expected a flat real vector, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise DimensionMismatch(f"expected length {n}, got {arr.shape[0]}")
    arr.setflags(write=False)
    return arr


class DVector:
    """Element of D^n held as the two real vectors of its idempotent split."""

    __slots__ = ("c1", "c2")

    def __init__(self, coords: Iterable[Hyperbolic]):
        coords = [_coerce(c) for c in coords]
        self.c1 = _as_locked_array([c.p for c in coords])
        self.c2 = _as_locked_array([c.q for c in coords])

    @classmethod
    def from_components(cls, x1, x2) -> "DVector":
        """Join two real coordinate vectors back into one element of D^n."""
        self = object.__new__(cls)
        self.c1 = _as_locked_array(x1)
        self.c2 = _as_locked_array(x2, n=self.c1.shape[0])
        return self

    @classmethod
    def zero(cls, n: int) -> "DVector":
        return cls.from_components(np.zeros(n), np.zeros(n))

    @classmethod
    def unit(cls, n: int, index: int) -> "DVector":
        """Real standard basis vector e_index as an element of D^n."""
        e = np.zeros(n)
        e[index] = 1.0
        return cls.from_components(e, e)

    # -- structure -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.c1.shape[0]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> Hyperbolic:
        return Hyperbolic(self.c1[i], self.c2[i])

    def coords(self) -> list[Hyperbolic]:
        return [self[i] for i in range(self.n)]

    def split(self) -> tuple[np.ndarray, np.ndarray]:
        """The unique idempotent split (x1, x2); arrays are read-only."""
        return self.c1, self.c2

    def e1_part(self) -> "DVector":
        return DVector.from_components(self.c1, np.zeros(self.n))

    def e2_part(self) -> "DVector":
        return DVector.from_components(np.zeros(self.n), self.c2)

    # -- module operations -------------------------------------------------

    def _check_same(self, other: "DVector") -> None:
        if not isinstance(other, DVector):
            raise TypeError(f"expected a DVector, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatch(f"{self.n} != {other.n}")

    def __add__(self, other: "DVector") -> "DVector":
        self._check_same(other)
        return DVector.from_components(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "DVector") -> "DVector":
        self._check_same(other)
        return DVector.from_components(self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "DVector":
        return DVector.from_components(-self.c1, -self.c2)

    def __mul__(self, alpha) -> "DVector":
        try:
            alpha = _coerce(alpha)
        except TypeError:
            return NotImplemented
        # scalar action splits: (alpha*x)_l = alpha_l * x_l
        return DVector.from_components(alpha.p * self.c1, alpha.q * self.c2)

    __rmul__ = __mul__

    # -- predicates --------------------------------------------------------

    def is_zero(self, tol: float = TOL) -> bool:
        return float(np.max(np.abs(self.c1), initial=0.0)) <= tol and float(
            np.max(np.abs(self.c2), initial=0.0)
        ) <= tol

    def is_zero_divisor(self, tol: float = TOL) -> bool:
        """Nonzero with exactly one vanishing real component vector."""
        z1 = float(np.max(np.abs(self.c1), initial=0.0)) <= tol
        z2 = float(np.max(np.abs(self.c2), initial=0.0)) <= tol
        return z1 != z2

    def __eq__(self, other) -> bool:
        if not isinstance(other, DVector):
            return NotImplemented
        if other.n != self.n:
            return False
        return bool(
            np.allclose(self.c1, other.c1, atol=TOL, rtol=0.0)
            and np.allclose(self.c2, other.c2, atol=TOL, rtol=0.0)
        )

    def __repr__(self) -> str:
        return f"DVector(c1={self.c1.tolist()}, c2={self.c2.tolist()})"

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.coords()]

    @classmethod
    def from_json(cls, obj) -> "DVector":
        if not isinstance(obj, list):
            raise ValueError(f"expected a list of scalar objects, got {obj!r}")
        return cls([Hyperbolic.from_json(c) for c in obj])


def is_zero_divisor_element(x: DVector, tol: float = TOL) -> bool:
    return x.is_zero_divisor(tol)


def _dependent_pair(u: np.ndarray, v: np.ndarray, tol: float = SPAN_TOL) -> bool:
    """Real dependence of two vectors via the orthogonalization residual."""
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu <= tol or nv <= tol:
        return True
    resid = v - u * (float(u @ v) / (nu * nu))
    return float(np.linalg.norm(resid)) <= tol * max(1.0, nv)


def linear_dependent(x: DVector, y: DVector, tol: float = SPAN_TOL) -> bool:
    """Dependence over D: real dependence in both idempotent components.

    This is the reading forced by the 2-norm axiom that the norm vanishes
    exactly on dependent pairs: the lifted norm vanishes iff both component
    pairs are dependent over the reals.
    """
    x._check_same(y)
    return _dependent_pair(x.c1, y.c1, tol) and _dependent_pair(x.c2, y.c2, tol)


def _orthonormal_rows(basis: np.ndarray, tol: float = SPAN_TOL) -> np.ndarray:
    """Gram-Schmidt with a residual tolerance; rejects dependent input rows."""
    rows: list[np.ndarray] = []
    for i, v in enumerate(basis):
        w = v.astype(float).copy()
        for r in rows:
            w -= r * float(r @ w)
        # second pass for numerical orthogonality
        for r in rows:
            w -= r * float(r @ w)
        norm = float(np.linalg.norm(w))
        if norm <= tol * max(1.0, float(np.linalg.norm(v))):
            raise ValueError(f"basis row {i} is dependent on the earlier rows")
        rows.append(w / norm)
    if not rows:
        return np.zeros((0, basis.shape[1]))
    return np.array(rows)


def _in_span(q_rows: np.ndarray, v: np.ndarray, tol: float = SPAN_TOL) -> bool:
    resid = v - q_rows.T @ (q_rows @ v) if q_rows.size else v
    return float(np.linalg.norm(resid)) <= tol * max(1.0, float(np.linalg.norm(v)))


class DSubmodule:
    """Submodule of D^n given by one real spanning set per component.

    Represents e1*span(basis1) + e2*span(basis2).  Each basis is required
    to be linearly independent over the reals; orthonormalized copies are
    kept for membership tests.
    """

    __slots__ = ("n", "basis1", "basis2", "q1", "q2")

    def __init__(self, n: int, basis1: Sequence, basis2: Sequence, tol: float = SPAN_TOL):
        self.n = int(n)
        b1 = np.array(basis1, dtype=float).reshape(-1, self.n)
        b2 = np.array(basis2, dtype=float).reshape(-1, self.n)
        try:
            self.q1 = _orthonormal_rows(b1, tol)
            self.q2 = _orthonormal_rows(b2, tol)
        except ValueError as exc:
            raise ValueError(f"submodule basis is not linearly independent: {exc}") from exc
        for arr in (b1, b2, self.q1, self.q2):
            arr.setflags(write=False)
        self.basis1 = b1
        self.basis2 = b2

    @classmethod
    def zero(cls, n: int) -> "DSubmodule":
        return cls(n, np.zeros((0, n)), np.zeros((0, n)))

    @classmethod
    def full(cls, n: int) -> "DSubmodule":
        return cls(n, np.eye(n), np.eye(n))

    @property
    def dims(self) -> tuple[int, int]:
        return self.q1.shape[0], self.q2.shape[0]

    def is_full(self) -> bool:
        return self.dims == (self.n, self.n)

    def component_q(self, comp: int) -> np.ndarray:
        return self.q1 if comp == 0 else self.q2

    def component_basis(self, comp: int) -> np.ndarray:
        return self.basis1 if comp == 0 else self.basis2

    def component_contains(self, comp: int, v: np.ndarray, tol: float = SPAN_TOL) -> bool:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.n,):
            raise DimensionMismatch(f"expected a vector of length {self.n}")
        return _in_span(self.component_q(comp), v, tol)

    def contains(self, x: DVector, tol: float = SPAN_TOL) -> bool:
        if x.n != self.n:
            raise DimensionMismatch(f"{x.n} != {self.n}")
        return self.component_contains(0, x.c1, tol) and self.component_contains(1, x.c2, tol)

    def extend(self, x: DVector, tol: float = SPAN_TOL) -> "DSubmodule":
        """Adjoin a generator: augment each component basis whose span misses it.

        Raises AlreadyContained when the vector lies in the submodule.
        """
        if x.n != self.n:
            raise DimensionMismatch(f"{x.n} != {self.n}")
        grow1 = not self.component_contains(0, x.c1, tol)
        grow2 = not self.component_contains(1, x.c2, tol)
        if not (grow1 or grow2):
            raise AlreadyContained("vector already lies in the submodule")
        b1 = np.vstack([self.basis1, x.c1[None, :]]) if grow1 else self.basis1
        b2 = np.vstack([self.basis2, x.c2[None, :]]) if grow2 else self.basis2
        return DSubmodule(self.n, b1, b2, tol)

    def random_element(self, rng: np.random.Generator, scale: float = 1.0) -> DVector:
        """Random element with standard-normal coefficients per component."""
        k1, k2 = self.dims
        x1 = (rng.standard_normal(k1) * scale) @ self.q1 if k1 else np.zeros(self.n)
        x2 = (rng.standard_normal(k2) * scale) @ self.q2 if k2 else np.zeros(self.n)
        return DVector.from_components(x1, x2)

    def __repr__(self) -> str:
        return f"DSubmodule(n={self.n}, dims={self.dims})"

    # -- JSON ----------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis1": [row.tolist() for row in self.basis1],
            "basis2": [row.tolist() for row in self.basis2],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DSubmodule":
        if not isinstance(obj, dict) or not {"n", "basis1", "basis2"} <= set(obj):
            raise ValueError("submodule object needs n, basis1 and basis2 keys")
        n = int(obj["n"])
        return cls(n, np.array(obj["basis1"], dtype=float).reshape(-1, n),
                   np.array(obj["basis2"], dtype=float).reshape(-1, n))


def split(x: DVector) -> tuple[np.ndarray, np.ndarray]:
    return x.split()


def join(x1, x2) -> DVector:
    return DVector.from_components(x1, x2)


def submodule_contains(m: DSubmodule, x: DVector, tol: float = SPAN_TOL) -> bool:
    return m.contains(x, tol)


def submodule_extend(m: DSubmodule, x: DVector, tol: float = SPAN_TOL) -> DSubmodule:
    return m.extend(x, tol)
