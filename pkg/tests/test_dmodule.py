import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra import numpy as hnp

from hyp2 import (
    E1,
    AlreadyContained,
    DimensionMismatch,
    DSubmodule,
    DVector,
    Hyperbolic,
    is_zero_divisor_element,
    join,
    linear_dependent,
    split,
)

vec_arrays = hnp.arrays(
    float, st.integers(1, 6), elements=st.floats(-10, 10, allow_nan=False)
)


def dvec(c1, c2) -> DVector:
    return DVector.from_components(np.asarray(c1, float), np.asarray(c2, float))


class TestSplitJoin:
    def test_real_vector_has_equal_parts(self):
        x = DVector([Hyperbolic.from_real(1.0), Hyperbolic.from_real(-2.0)])
        x1, x2 = split(x)
        assert np.array_equal(x1, x2)

    def test_pure_e1_vector(self):
        x = E1 * dvec([1.0, 0.0], [1.0, 0.0])
        x1, x2 = x.split()
        assert np.array_equal(x1, [1.0, 0.0])
        assert np.array_equal(x2, [0.0, 0.0])

    @given(vec_arrays)
    def test_roundtrip(self, arr):
        x = dvec(arr, arr[::-1])
        assert join(*x.split()) == x

    def test_coords_view(self):
        x = dvec([1.0, 2.0], [3.0, 4.0])
        assert x[0] == Hyperbolic(1.0, 3.0)
        assert len(x.coords()) == 2


class TestScalarAction:
    def test_action_splits_componentwise(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            alpha = Hyperbolic(*rng.standard_normal(2))
            x = dvec(rng.standard_normal(4), rng.standard_normal(4))
            ax = alpha * x
            assert np.allclose(ax.c1, alpha.p * x.c1, atol=1e-12)
            assert np.allclose(ax.c2, alpha.q * x.c2, atol=1e-12)

    def test_k_action_flips_second_component(self):
        from hyp2 import K

        x = dvec([1.0, 2.0], [3.0, 4.0])
        kx = K * x
        assert np.array_equal(kx.c1, x.c1)
        assert np.array_equal(kx.c2, -x.c2)

    def test_add_sub_neg(self):
        x = dvec([1.0, 0.0], [0.0, 1.0])
        y = dvec([0.0, 1.0], [1.0, 0.0])
        assert (x + y) - y == x
        assert -(-x) == x

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            dvec([1.0], [1.0]) + dvec([1.0, 2.0], [1.0, 2.0])


class TestZeroDivisorElements:
    def test_zero_vector_is_not(self):
        assert not is_zero_divisor_element(DVector.zero(3))

    def test_pure_e2_vector_is(self):
        x = dvec([0.0, 0.0], [0.0, 1.0])
        assert is_zero_divisor_element(x)

    def test_full_support_is_not(self):
        assert not is_zero_divisor_element(dvec([1.0, 0.0], [0.0, 1.0]))


class TestLinearDependent:
    def test_scalar_multiple_dependent(self):
        rng = np.random.default_rng(5)
        x = dvec(rng.standard_normal(3), rng.standard_normal(3))
        alpha = Hyperbolic(2.0, -0.5)
        assert linear_dependent(x, alpha * x)

    def test_componentwise_mixed_pair_is_independent(self):
        x = dvec([1.0, 0.0], [0.0, 1.0])
        y = dvec([2.0, 0.0], [1.0, 0.0])
        # first components dependent, second components not
        assert not linear_dependent(x, y)

    def test_zero_always_dependent(self):
        x = dvec([1.0, 2.0], [3.0, 4.0])
        assert linear_dependent(x, DVector.zero(2))
        assert linear_dependent(DVector.zero(2), x)

    def test_symmetric(self):
        rng = np.random.default_rng(6)
        for _ in range(30):
            x = dvec(rng.standard_normal(3), rng.standard_normal(3))
            y = dvec(rng.standard_normal(3), rng.standard_normal(3))
            assert linear_dependent(x, y) == linear_dependent(y, x)


class TestSubmodule:
    def test_basis_elements_contained(self):
        m = DSubmodule(3, [[1.0, 0.0, 0.0]], [[0.0, 1.0, 0.0]])
        assert m.contains(dvec([2.0, 0.0, 0.0], [0.0, -1.0, 0.0]))
        assert m.contains(DVector.zero(3))

    def test_orthogonal_vector_not_contained(self):
        m = DSubmodule(3, [[1.0, 0.0, 0.0]], [[0.0, 1.0, 0.0]])
        assert not m.contains(dvec([0.0, 1.0, 0.0], [0.0, 1.0, 0.0]))

    def test_dependent_basis_rejected(self):
        with pytest.raises(ValueError):
            DSubmodule(2, [[1.0, 0.0], [2.0, 0.0]], [])

    def test_dimension_mismatch(self):
        m = DSubmodule.zero(3)
        with pytest.raises(DimensionMismatch):
            m.contains(DVector.zero(2))

    def test_extend_from_zero(self):
        m = DSubmodule.zero(2)
        x = dvec([1.0, 1.0], [1.0, -1.0])
        m2 = m.extend(x)
        assert m2.dims == (1, 1)
        assert m2.contains(x)

    def test_extend_partial_growth(self):
        m = DSubmodule(2, [[1.0, 0.0]], [[1.0, 0.0]])
        x = dvec([2.0, 0.0], [0.0, 1.0])  # first component already in span
        m2 = m.extend(x)
        assert m2.dims == (1, 2)

    def test_extend_already_contained(self):
        m = DSubmodule(2, [[1.0, 0.0]], [[0.0, 1.0]])
        with pytest.raises(AlreadyContained):
            m.extend(dvec([3.0, 0.0], [0.0, -2.0]))

    def test_extend_never_decreases_dims(self):
        rng = np.random.default_rng(8)
        m = DSubmodule.zero(4)
        for _ in range(6):
            x = dvec(rng.standard_normal(4), rng.standard_normal(4))
            try:
                m2 = m.extend(x)
            except AlreadyContained:
                continue
            assert m2.dims[0] - m.dims[0] in (0, 1)
            assert m2.dims[1] - m.dims[1] in (0, 1)
            m = m2

    def test_json_roundtrip(self):
        m = DSubmodule(2, [[1.0, 2.0]], [[0.0, 1.0]])
        m2 = DSubmodule.from_json(m.to_json())
        assert m2.dims == m.dims
        assert m2.contains(dvec([2.0, 4.0], [0.0, 3.0]))


def test_dvector_json_roundtrip():
    x = dvec([1.5, -2.0], [0.0, 3.0])
    assert DVector.from_json(x.to_json()) == x
    # cartesian scalar encodings accepted inside vectors
    y = DVector.from_json([{"a": 1.0, "b": 0.5}, {"a": 0.0, "b": 0.0}])
    assert y == dvec([1.5, 0.0], [0.5, 0.0])
