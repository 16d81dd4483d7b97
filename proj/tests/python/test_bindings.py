import math

import numpy as np
import pytest

rampsvm = pytest.importorskip("rampsvm")


def test_ramp_loss_and_subdiff():
    assert rampsvm.ramp_loss(-0.5) == 0.0
    assert rampsvm.ramp_loss(0.5) == 0.5
    assert rampsvm.ramp_loss(3.0) == 1.0
    assert rampsvm.ramp_loss_sum(np.array([-1.0, 0.5, 2.0])) == 1.5
    assert rampsvm.ramp_subdiff(0.0) == (0.0, 1.0)
    assert rampsvm.ramp_subdiff(0.5) == (1.0, 1.0)
    with pytest.raises(ValueError):
        rampsvm.ramp_loss(math.nan)


def test_prox():
    assert rampsvm.prox_scalar(1.5, 1.0, 1.0) == [1.5, 0.5]
    assert rampsvm.prox_scalar(3.0, 1.0, 8.0) == [0.0]
    assert rampsvm.prox_vector(np.array([4.0, 3.0]), 1.0, 8.0) == [[4.0, 0.0], [0.0]]
    assert rampsvm.prox_oracle(-3.0, 1.0, 1.0) == -3.0
    with pytest.raises(ValueError):
        rampsvm.prox_scalar(1.0, 0.0, 1.0)


def test_counterexample_problem():
    X, y = rampsvm.counterexample_data()
    p = rampsvm.Problem(X, y)
    assert p.m == 3 and p.n == 2
    assert p.full_column_rank
    np.testing.assert_array_equal(p.A, [[3, 3], [6, -2], [-1, -1]])
    assert abs(np.linalg.det(p.B) - 16.0) < 1e-12
    H = p.H
    assert abs(p.lambda_h - np.linalg.eigvalsh(H.T @ H).max()) < 1e-8
    assert rampsvm.objective(p, np.array([0.5, 0.5]), -2.0, 0.25) == 0.5

    grade = rampsvm.grade_point(p, np.array([0.5, 0.5]), -2.0, 0.25, gammas=[0.4, 4.0, 8.0, 16.0])
    assert grade["verdict"] == "KKT_ONLY"
    lam, res = rampsvm.estimate_multiplier(p, np.array([0.5, 0.5]))
    np.testing.assert_allclose(lam, [-0.25, 0.0, -0.25], atol=1e-12)
    assert res < 1e-12


def test_rank_deficient_problem():
    p = rampsvm.Problem(np.array([[2.0]]), np.array([1.0]))
    assert not p.full_column_rank
    assert p.H is None and p.lambda_h is None
    with pytest.raises(ValueError):
        rampsvm.Problem(np.array([[1.0, 2.0]]), np.array([0.0]))


def test_train_and_support():
    X, y = rampsvm.gen_synthetic(n_per_class=10, separation=4.0, outlier_fraction=0.1, seed=3)
    assert X.shape == (20, 2)
    p = rampsvm.Problem(X, y)
    r = rampsvm.train(p, 0.1)
    assert r["status"] == "CONVERGED"
    assert r["certificate"]["verdict"] == "P_STATIONARY"
    pt = r["point"]
    w, b, u, lam = (np.array(pt["w"]), pt["b"], np.array(pt["u"]), np.array(pt["lambda"]))
    cert = rampsvm.check_pstationary(p, w, b, u, lam, 0.1, r["config"]["gamma"])
    assert cert["verdict"] == "P_STATIONARY"
    assert rampsvm.check_kkt(p, w, b, u, lam, 0.1, 1e-5)["satisfied"]
    mc = rampsvm.verify_support_margins(p, w, b, u, lam, 0.1, r["config"]["gamma"])
    assert mc["holds"]
    np.testing.assert_allclose(rampsvm.reconstruct_w(p, lam), w, atol=1e-6)
    sv = rampsvm.extract_support(p, w, b, u, lam)
    assert sv["indices"] == mc["support"]["indices"]


def test_train_separates_clean_data():
    X, y = rampsvm.gen_synthetic(n_per_class=10, separation=4.0, outlier_fraction=0.0, seed=5)
    r = rampsvm.train(rampsvm.Problem(X, y), 1.0)
    assert r["status"] == "CONVERGED"
    w, b = r["point"]["w"], r["point"]["b"]
    assert [rampsvm.predict(w, b, x) for x in X] == list(y)


def test_global_oracle_symmetric_pair():
    p = rampsvm.Problem(np.array([[1.0], [-1.0]]), np.array([1.0, -1.0]))
    w, b, obj = rampsvm.global_oracle(p, 1.0)
    assert abs(obj - 0.5) < 1e-4
    assert abs(w[0] - 1.0) < 1e-2


def test_json_helpers_match_cli_payloads():
    report = rampsvm.counterexample()
    assert report["command"] == "counterexample"
    assert [c["prox_distance"][1] for c in report["result"]["certificates"]] == pytest.approx([0.1, 1, 1, 1])
    pe = rampsvm.prox_eval([1.5], 1.0, 1.0)
    assert pe["result"]["prox"][0] == {"values": [1.5, 0.5], "tie": True}
