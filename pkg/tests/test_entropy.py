import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from frameunc.entropy import beta_conjugate, renyi, shannon
from frameunc.frames import CoefficientSeq

ORDERS = [0, 0.3, 0.5, 0.9, 1, 1.1, 2, 5, math.inf]


def direct_renyi(a, alpha):
    """Textbook formula on plain Python floats."""
    p = [abs(v) ** 2 for v in a]
    tot = sum(p)
    p = [v / tot for v in p if v > 0]
    if alpha == 1:
        return -sum(v * math.log(v) for v in p)
    if alpha == math.inf:
        return -math.log(max(p))
    return math.log(sum(v**alpha for v in p)) / (1 - alpha)


@pytest.mark.parametrize("alpha", ORDERS)
def test_delta_has_zero_entropy(alpha):
    assert renyi(np.eye(6)[2], alpha) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("alpha", ORDERS)
def test_flat_sequence(alpha):
    a = np.zeros(10, complex)
    a[[1, 4, 5, 8]] = [2, -2j, 2, 2 * np.exp(0.3j)]
    assert renyi(a, alpha) == pytest.approx(math.log(4), abs=1e-12)


def test_renyi_two_example():
    a = np.sqrt([0.5, 0.25, 0.25])
    assert renyi(a, 2) == pytest.approx(0.98083, abs=1e-5)
    assert renyi(a, 2) == pytest.approx(-math.log(3 / 8), abs=1e-14)


def test_shannon_examples():
    assert shannon(np.eye(3)[0]) == 0.0
    assert shannon(np.ones(7)) == pytest.approx(math.log(7))
    assert shannon(np.sqrt([0.5, 0.5, 0])) == pytest.approx(math.log(2))
    assert shannon(CoefficientSeq([1, 1j])) == pytest.approx(math.log(2))


@pytest.mark.parametrize("alpha", [0.2, 0.5, 0.999, 1, 1.7, 3, math.inf])
def test_matches_direct_formula(alpha, rng):
    a = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    assert renyi(a, alpha) == pytest.approx(direct_renyi(a, alpha), rel=1e-12)


def test_r0_uses_numerical_support():
    a = CoefficientSeq([1, 1e-10, 0.5], support_tol=1e-8)
    assert renyi(a, 0) == pytest.approx(math.log(2))
    assert renyi([1, 1e-10, 0.5], 0, support_tol=1e-12) == pytest.approx(math.log(3))


def test_batched_rows(rng):
    A = rng.standard_normal((5, 8))
    out = renyi(A, 0.7)
    assert out.shape == (5,)
    np.testing.assert_allclose(out, [renyi(row, 0.7) for row in A])


def test_large_order_does_not_overflow():
    a = np.array([1.0, 0.5, 0.25])
    assert renyi(a, 2000) == pytest.approx(renyi(a, math.inf), abs=1e-3)


def test_errors():
    with pytest.raises(ValueError):
        renyi(np.zeros(4), 0.5)
    with pytest.raises(ValueError):
        renyi(np.ones(4), -0.1)
    with pytest.raises(ValueError):
        shannon(np.zeros(2))


def test_beta_conjugate_examples():
    assert beta_conjugate(1, 1) == 1
    assert beta_conjugate(0.75, 1) == pytest.approx(1.5)
    assert beta_conjugate(0.5, 1) == math.inf
    assert beta_conjugate(0.75, 1.5) == math.inf
    assert beta_conjugate(0.9, 1.5) == pytest.approx(0.9 * -0.5 / (1.5 - 1.8))


@pytest.mark.parametrize("alpha,r", [(0.4, 1), (1.1, 1), (0.8, 2), (0.9, 0.5)])
def test_beta_conjugate_domain(alpha, r):
    with pytest.raises(ValueError):
        beta_conjugate(alpha, r)


@settings(max_examples=60, deadline=None)
@given(st.floats(1, 1.99), st.floats(0, 1))
def test_beta_conjugate_range_and_identity(r, t):
    alpha = r / 2 + t * (1 - r / 2)
    beta = beta_conjugate(alpha, r)
    assert beta >= 1
    if math.isfinite(beta) and beta > 1:
        # (2 - r) / r == beta (1 - alpha) / (alpha (beta - 1))
        assert beta * (1 - alpha) / (alpha * (beta - 1)) == pytest.approx((2 - r) / r, rel=1e-7)


# ------------------------------------------------------------------ properties

coeffs = arrays(
    np.complex128,
    st.integers(2, 12),
    elements=st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
).filter(lambda a: np.max(np.abs(a)) > 1e-3)


@settings(max_examples=150, deadline=None)
@given(coeffs)
def test_monotone_in_order(a):
    values = [renyi(a, al) for al in ORDERS]
    assert all(x >= y - 1e-10 for x, y in zip(values, values[1:]))


@settings(max_examples=100, deadline=None)
@given(coeffs, st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3))
def test_scale_invariance(a, c):
    for al in (0.5, 1, 2, math.inf):
        assert renyi(c * a, al) == pytest.approx(renyi(a, al), abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(coeffs)
def test_range(a):
    for al in ORDERS:
        v = renyi(a, al)
        assert -1e-12 <= v <= math.log(a.size) + 1e-12


@settings(max_examples=100, deadline=None)
@given(coeffs)
def test_limit_to_shannon(a):
    s = shannon(a)
    assert abs(renyi(a, 1.001) - s) < 1e-2
    assert abs(renyi(a, 0.999) - s) < 1e-2


def test_entry_just_below_support_threshold():
    # 5.96e-8 / 6 is under the 1e-8 relative threshold: ignored by every order
    a = np.array([5.96046448e-08, 6.0])
    values = [renyi(a, al) for al in ORDERS]
    assert values == [0.0] * len(ORDERS)
