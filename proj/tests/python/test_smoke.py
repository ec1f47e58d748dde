import math

import numpy as np
import pytest

import spikeslab


def make_data(n=40, seed=0):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 4))
    y = 1.0 + 1.5 * x[:, 0] + rng.standard_normal(n)
    return y, x


def test_run_mcmc_selects_the_signal():
    y, x = make_data()
    res = spikeslab.run_mcmc(y, x, prior="dirac-g", params={"g": 40.0}, iterations=2000, burn_in=500, warmup=100, seed=3)
    p = np.asarray(res["incl_prob"])
    assert p.shape == (4,)
    assert np.all((p >= 0) & (p <= 1))
    assert p[0] > 0.99
    assert res["mpm"][0]
    assert np.asarray(res["incl_prob_trace"]).shape == (2000, 4)


def test_reproducible():
    y, x = make_data(seed=1)
    a = spikeslab.run_mcmc(y, x, prior="ssvs", iterations=500, burn_in=100, warmup=50, seed=5)
    b = spikeslab.run_mcmc(y, x, prior="ssvs", iterations=500, burn_in=100, warmup=50, seed=5)
    np.testing.assert_array_equal(a["incl_prob"], b["incl_prob"])


def test_closed_forms():
    h = spikeslab.h_orthogonal(0.0, 40, prior="dirac-i", params={"c": 1.0})
    assert h == pytest.approx(math.log(41.0))
    assert spikeslab.inclusion_probability(h, 0.5) == pytest.approx(1 / (1 + math.sqrt(41)))
    assert spikeslab.inclusion_probability_integrated(0.0) == pytest.approx(0.5)
    hg = spikeslab.h_correlated_pair(0.3, 0.0, 0.5, 1.0, 40, prior="dirac-g", params={"g": 40.0})
    assert hg == pytest.approx(spikeslab.h_orthogonal(0.3, 40, prior="dirac-g", params={"g": 40.0}))


def test_marginal_likelihood_and_errors():
    y, x = make_data()
    full = spikeslab.log_marginal_likelihood(y, x, [1, 0, 0, 0], prior="dirac-g", params={"g": 40.0})
    empty = spikeslab.log_marginal_likelihood(y, x, [0, 0, 0, 0], prior="dirac-g", params={"g": 40.0})
    assert full > empty
    with pytest.raises(ValueError):
        spikeslab.log_marginal_likelihood(y, x, [1, 0], prior="dirac-g")
    with pytest.raises(ValueError):
        spikeslab.run_mcmc(y, x, prior="dirac-i", params={"c": -1.0})


def test_iact():
    rng = np.random.default_rng(2)
    assert spikeslab.iact(rng.standard_normal(20000)) == pytest.approx(1.0, abs=0.1)
    assert spikeslab.iact([1.0] * 50) is None


def test_simulate_small():
    res = spikeslab.simulate("independent", replications=2, iterations=300, burn_in=100, warmup=50)
    assert set(res) == {"ssvs", "nmig", "dirac-i", "dirac-g", "dirac-f"}
    assert res["dirac-i"]["completed"] == 2
