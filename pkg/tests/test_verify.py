import json
import math

import numpy as np
import pytest

from frameunc import generators as gen
from frameunc.bounds import FramePair
from frameunc.entropy import renyi, shannon
from frameunc.frames import Frame, FrameError
from frameunc.verify import (
    INEQUALITIES,
    TrialConfig,
    check_entropic,
    check_lp,
    check_shannon,
    check_support,
    check_support_sum,
    check_weak_support,
    equality_conditions,
    random_trials,
    trial_signals,
    variational_residual,
)


@pytest.fixture(scope="module")
def mub8():
    return gen.mub_pair(8)


def test_support_equality_mub(mub8):
    rep = check_support(*mub8, np.eye(8)[0])
    assert (rep.lhs, rep.passed) == (8.0, True)
    assert rep.rhs == pytest.approx(8.0, rel=1e-12)
    assert abs(rep.slack) < 1e-9
    s = check_support_sum(*mub8, np.eye(8)[0])
    assert s.lhs == 9 and s.rhs == pytest.approx(2 * math.sqrt(8))


def test_support_same_basis():
    U, _ = gen.random_onb_pair(5, seed=1)
    rep = check_support(U, U, U.vectors[0])
    assert rep.lhs == 1 and rep.rhs == pytest.approx(1.0)


def test_zero_signal_rejected(mub8):
    with pytest.raises(ValueError):
        check_support(*mub8, np.zeros(8))


def test_report_scales_signal(mub8):
    a = check_lp(*mub8, np.arange(8) + 1j, 1.5, 1.0)
    b = check_lp(*mub8, 1e5 * (np.arange(8) + 1j), 1.5, 1.0)
    assert a.slack == pytest.approx(b.slack, abs=1e-12)


def test_entropic_equality_and_flags(mub8):
    x = np.eye(8)[0]
    rep = check_entropic(*mub8, x, 1.0, 1.0)
    assert rep.lhs == pytest.approx(math.log(8), abs=1e-12)
    assert rep.rhs == pytest.approx(math.log(8), abs=1e-12)
    U, V = gen.random_frame(3, 6, 0), gen.random_frame(3, 6, 1)
    rep = check_entropic(U, V, np.ones(3), 1.0, 1.0)
    assert rep.passed and not rep.informative and rep.rhs == -math.inf
    assert rep.to_dict()["rhs"] is None


def test_entropic_lhs_definition(rng):
    U, V = gen.random_frame(3, 6, 4), gen.random_frame(3, 6, 5)
    x = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    r, alpha = 1.5, 0.9
    rep = check_entropic(U, V, x, r, alpha)
    beta = rep.details["beta"]
    a, b = U.vectors.conj() @ x, V.vectors.conj() @ x
    assert rep.lhs == pytest.approx((2 - r) * renyi(a, alpha) + r * renyi(b, beta))
    assert rep.passed


def test_shannon_checks(mub8, rng):
    assert check_shannon(*mub8, np.eye(8)[0]).slack == pytest.approx(0.0, abs=1e-12)
    U, _ = gen.random_onb_pair(6, seed=2)
    x = rng.standard_normal(6)
    rep = check_shannon(U, U, x)
    assert rep.rhs == pytest.approx(0.0, abs=1e-12)
    assert rep.lhs == pytest.approx(2 * shannon(U.vectors.conj() @ x))
    X = rng.standard_normal((500, 2)) + 1j * rng.standard_normal((500, 2))
    assert check_shannon(gen.mercedes(), gen.mercedes(0.4), X).min_slack >= -1e-9
    with pytest.raises(FrameError):
        check_shannon(gen.random_frame(3, 6, 0), gen.random_frame(3, 6, 1), np.ones(3))


def test_lp_checks(mub8, rng):
    x = rng.standard_normal(8)
    rep = check_lp(*mub8, x, 2.0, 1.0)
    assert rep.slack == pytest.approx(0.0, abs=1e-12)
    rep = check_lp(*mub8, np.eye(8)[0], 1.0, 1.0)
    # a = delta, b flat: ||a||_1 ||b||_1 = sqrt 8 = sqrt 8 ||a||_2 ||b||_2
    assert rep.lhs == pytest.approx(math.sqrt(8)) and rep.slack == pytest.approx(0.0, abs=1e-12)


def test_weak_support_check(rng):
    U, V = gen.random_frame(4, 8, 0), gen.random_frame(4, 8, 1)
    X = rng.standard_normal((200, 4))
    rep = check_weak_support(U, V, X, 1.5)
    assert rep.passed and rep.trial_count == 200


def test_batch_witness_is_first_minimum(mub8):
    X = np.vstack([np.arange(1, 9), np.eye(8)[3], np.eye(8)[0]])
    rep = check_support(*mub8, X)
    np.testing.assert_allclose(rep.witness, np.eye(8)[3])


# ------------------------------------------------------------ equality analysis


def test_equality_conditions_mub(mub8):
    d = equality_conditions(*mub8, np.eye(8)[0])
    assert max(d.modulus_flatness_a, d.modulus_flatness_b, d.crossgram_flatness, d.phase_residual) <= 1e-10
    assert d.all_satisfied and d.support_a == (0,) and len(d.support_b) == 8


def test_equality_conditions_generic(rng):
    U, V = gen.random_onb_pair(8, seed=0)
    d = equality_conditions(U, V, rng.standard_normal(8) + 1j * rng.standard_normal(8))
    assert not d.all_satisfied
    assert min(d.modulus_flatness_a, d.modulus_flatness_b, d.crossgram_flatness, d.phase_residual) >= 0


def test_equality_conditions_shared_element():
    U, V = gen.random_onb_pair(6, seed=3)
    # rebuild V to share its first vector with U
    q, _ = np.linalg.qr(np.column_stack([U.vectors[0], V.vectors[1:].T]))
    W = q.T.copy()
    W[0] = U.vectors[0]  # q's first column is u_0 up to a unimodular factor
    V2 = Frame(W)
    np.testing.assert_allclose(W @ W.conj().T, np.eye(6), atol=1e-12)
    np.testing.assert_allclose(V2.vectors[0], U.vectors[0], atol=1e-12)
    d = equality_conditions(U, V2, U.vectors[0])
    assert d.all_satisfied
    assert check_support(U, V2, U.vectors[0]).lhs == 1


def test_equality_propagation(rng):
    """all_satisfied on ONBs at r = 1 implies a tight support bound."""
    for n in (4, 6, 8):
        K, F = gen.mub_pair(n)
        cases = [np.eye(n)[0], F.vectors[2], np.eye(n)[[0, n // 2]].sum(0), rng.standard_normal(n)]
        for x in cases:
            if equality_conditions(K, F, x).all_satisfied:
                assert check_support(K, F, x).slack <= 1e-6


# ------------------------------------------------------------ variational


def test_variational_residual_witness(mub8):
    for alpha, r in ((0.75, 1.0), (0.6, 1.0), (0.9, 1.5)):
        assert variational_residual(*mub8, np.eye(8)[0], alpha, r) <= 1e-9


def test_variational_residual_generic(rng):
    U, V = gen.random_onb_pair(8, seed=1)
    assert variational_residual(U, V, rng.standard_normal(8), 0.75, 1.0) > 1e-3


def test_flat_pair_saturates(mub8):
    """Flat a and b give R_alpha + R_beta = ln(|a|_0 |b|_0)."""
    K, F = gen.mub_pair(4)
    x = np.eye(4)[[0, 2]].sum(0)  # a on {0,2}, b on the even frequencies
    a, b = K.vectors.conj() @ x, F.vectors.conj() @ x
    for alpha in (0.5, 0.8, 2.0):
        total = renyi(a, alpha) + renyi(b, alpha)
        assert total == pytest.approx(math.log(2 * 2), abs=1e-12)
    assert check_support(K, F, x).slack == pytest.approx(0.0, abs=1e-9)


def test_variational_errors(mub8):
    with pytest.raises(ValueError):
        variational_residual(*mub8, np.ones(8), 1.0, 1.0)
    with pytest.raises(FrameError):
        variational_residual(gen.random_frame(3, 6, 0), gen.random_frame(3, 6, 1), np.ones(3), 0.75, 1.0)


# ------------------------------------------------------------ batches


def test_trial_signals_shape_and_norm():
    pair = FramePair(*gen.mub_pair(4))
    X = trial_signals(pair, TrialConfig(n_trials=50, n_sparse=3))
    assert X.shape[0] == 50 + 8 + 2 * 3 * 3
    np.testing.assert_allclose(np.linalg.norm(X, axis=1), 1.0)


def test_random_trials_mub16():
    rep = random_trials(*gen.mub_pair(16), TrialConfig(n_trials=1000, seed=0))
    assert rep.all_passed
    assert set(INEQUALITIES) <= {i.split("[")[0] for i in rep.ids()}
    assert abs(rep["support"].min_slack) < 1e-9
    assert rep["support"].witness is not None


def test_random_trials_non_tight():
    U, V = gen.random_frame(8, 16, 1), gen.random_frame(8, 16, 2)
    rep = random_trials(U, V, TrialConfig(n_trials=1000, seed=5))
    assert rep.all_passed
    assert "shannon" not in rep.ids()
    entropic = [r for r in rep.reports if r.inequality_id.startswith("entropic")]
    assert any(r.informative for r in entropic)


def test_random_trials_deterministic():
    cfg = TrialConfig(n_trials=200, seed=11)
    U, V = gen.random_onb_pair(8, seed=4)
    a = json.dumps(random_trials(U, V, cfg).to_dict())
    b = json.dumps(random_trials(FramePair(U, V), config=cfg).to_dict())
    assert a == b


def test_random_trials_unknown_inequality():
    with pytest.raises(ValueError):
        random_trials(*gen.mub_pair(4), TrialConfig(n_trials=3, inequalities=("nope",)))


def test_entropy_support_consistency(rng):
    U, V = gen.random_onb_pair(16, seed=7)
    X = rng.standard_normal((300, 16)) + 1j * rng.standard_normal((300, 16))
    X = np.vstack([X, U.vectors[:3] + V.vectors[:3]])
    pair = FramePair(U, V)
    for x in X:
        lhs = check_support(U, V, x, pair=pair).lhs
        a, b = U.vectors.conj() @ x, V.vectors.conj() @ x
        assert math.log(lhs) >= shannon(a) + shannon(b) - 1e-10


def test_soundness_sweep_catalog(catalog):
    for name, (U, V) in catalog.items():
        rep = random_trials(U, V, TrialConfig(n_trials=1000, seed=2))
        for r in rep.reports:
            assert r.min_slack >= -1e-9, (name, r.inequality_id, r.min_slack)
