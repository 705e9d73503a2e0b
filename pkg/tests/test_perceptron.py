import numpy as np
import pytest

from nneten import perceptron


def random_batch(n, seed=0):
    rng = np.random.default_rng(seed)
    hidden = perceptron.add_bias(rng.random((n, 25)))
    labels = rng.integers(0, 10, n)
    return hidden, labels


def test_init_weights():
    w2 = perceptron.init_weights()
    assert w2.shape == (10, 26)
    assert w2[0, 0] == 0.5
    assert (w2 == 0.5).all()
    assert np.array_equal(perceptron.init_weights(), perceptron.init_weights())


def test_forward_zero_weights():
    s = np.random.default_rng(0).random(26)
    assert np.array_equal(perceptron.forward(np.zeros((10, 26)), s), np.full(10, 0.5))


def test_forward_bias_only():
    s = np.zeros(26)
    s[-1] = 1.0
    w2 = np.zeros((10, 26))
    w2[3, -1] = 1.7
    out = perceptron.forward(w2, s)
    assert out[3] == pytest.approx(1.0 / (1.0 + np.exp(-1.7)), rel=1e-15)


def test_forward_matches_reference():
    rng = np.random.default_rng(1)
    w2 = rng.standard_normal((10, 26))
    s = rng.standard_normal(26)
    expected = [1.0 / (1.0 + np.exp(-sum(w2[k, i] * s[i] for i in range(26))))
                for k in range(10)]
    assert perceptron.forward(w2, s) == pytest.approx(expected, abs=1e-15)


def test_zero_learning_rate_is_noop():
    hidden, labels = random_batch(20)
    w2 = perceptron.init_weights()
    perceptron.train_epochs(w2, hidden, labels, lr=0.0, epochs=3)
    assert (w2 == 0.5).all()


def test_single_step_matches_delta_rule():
    rng = np.random.default_rng(2)
    w2_init = rng.standard_normal((10, 26))
    s = perceptron.add_bias(rng.random((1, 25)))[0]
    label = 4
    o = perceptron.forward(w2_init, s)
    t = np.eye(10)[label]
    expected = w2_init + 0.2 * ((t - o) * o * (1 - o))[:, None] * s[None, :]
    w2 = w2_init.copy()
    perceptron.train_epochs(w2, s[None, :], np.array([label]), lr=0.2, epochs=1)
    assert w2 == pytest.approx(expected, abs=1e-15)


def test_repeated_sample_reduces_error():
    rng = np.random.default_rng(3)
    w2 = rng.standard_normal((10, 26))
    s = perceptron.add_bias(rng.random((1, 25)))
    label = np.array([7])
    errors = []
    for _ in range(3):
        errors.append(1.0 - perceptron.forward(w2, s[0])[7])
        perceptron.train_epochs(w2, s, label, epochs=1)
    assert errors[0] > errors[1] > errors[2]


def test_determinism():
    hidden, labels = random_batch(100)
    a = perceptron.train_epochs(perceptron.init_weights(), hidden, labels, epochs=5)
    b = perceptron.train_epochs(perceptron.init_weights(), hidden, labels, epochs=5)
    assert np.array_equal(a, b)


def test_epoch_prefix_consistency():
    hidden, labels = random_batch(100, seed=5)
    one_shot = perceptron.train_epochs(perceptron.init_weights(), hidden, labels, epochs=7)
    resumed = perceptron.train_epochs(perceptron.init_weights(), hidden, labels, epochs=3)
    perceptron.train_epochs(resumed, hidden, labels, epochs=4)
    assert np.array_equal(one_shot, resumed)


def test_evaluate_constant_classifier():
    hidden, labels = random_batch(200, seed=6)
    w2 = np.zeros((10, 26))
    w2[4, :] = 1.0  # class 4 always wins
    accuracy = perceptron.evaluate(w2, hidden, labels)
    assert accuracy == np.mean(labels == 4)


def test_evaluate_separable_construction():
    # three orthogonal inputs, weights aligned with the labels
    hidden = np.eye(3, 26)
    labels = np.array([0, 1, 2])
    w2 = np.zeros((10, 26))
    for k in range(3):
        w2[k, k] = 1.0
    assert perceptron.evaluate(w2, hidden, labels) == 1.0


def test_evaluate_tie_breaks_to_lowest_class():
    hidden = np.ones((1, 26))
    w2 = np.ones((10, 26))  # all scores equal
    assert perceptron.evaluate(w2, hidden, np.array([0])) == 1.0
    assert perceptron.evaluate(w2, hidden, np.array([9])) == 0.0


def test_argmax_invariance_sigmoid_vs_preactivation():
    hidden, labels = random_batch(300, seed=8)
    w2 = perceptron.train_epochs(perceptron.init_weights(), hidden, labels, epochs=2)
    pre = hidden @ w2.T
    post = perceptron.sigmoid(pre)
    assert np.array_equal(pre.argmax(axis=1), post.argmax(axis=1))


def test_gradient_matches_finite_differences():
    # update direction must equal -grad of 0.5*sum((t-o)^2), central diff step 1e-6
    rng = np.random.default_rng(9)
    step = 1e-6
    for _ in range(100):
        w2 = rng.uniform(-1.0, 1.0, (10, 26))
        s = perceptron.add_bias(rng.random((1, 25)))[0]
        label = int(rng.integers(0, 10))
        t = np.eye(10)[label]

        def loss(w):
            o = perceptron.forward(w, s)
            return 0.5 * np.sum((t - o) ** 2)

        o = perceptron.forward(w2, s)
        analytic = ((t - o) * o * (1 - o))[:, None] * s[None, :]
        numeric = np.empty_like(analytic)
        for k in range(10):
            for i in range(26):
                wp = w2.copy(); wp[k, i] += step
                wm = w2.copy(); wm[k, i] -= step
                numeric[k, i] = -(loss(wp) - loss(wm)) / (2 * step)
        rel = np.abs(numeric - analytic).max() / np.abs(analytic).max()
        assert rel <= 1e-5
