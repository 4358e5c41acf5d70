import math

import numpy as np
import pytest

import pipdim


def test_pip_distance_examples():
    a = np.array([[1.0], [0.0]])
    b = np.zeros((2, 1))
    assert pipdim.pip_distance(a, b) == pytest.approx(1.0)
    rot = pipdim.random_orthonormal(3, 3, seed=4)
    e = np.random.default_rng(0).normal(size=(10, 3))
    assert pipdim.pip_distance(e, e @ rot) < 1e-12
    assert pipdim.nsr(e, e @ rot) < 1e-12


def test_corpus_pipeline():
    tokens = pipdim.tokenize("a b a c b a")
    vocab = pipdim.build_vocab(tokens, 10)
    assert vocab.tokens == ["a", "b", "c"]
    counts = pipdim.cooc_count(tokens, vocab, window=1)
    assert counts.shape == (3, 3)
    np.testing.assert_array_equal(counts, counts.T)
    assert counts.sum() == 2 * 5
    ppmi = pipdim.transform(counts, "ppmi")
    assert (ppmi >= 0).all()
    first, second = pipdim.split_corpus(tokens, chunk_size=2, seed=1)
    assert sorted(first + second) == sorted(tokens)


def test_factorize_and_angles():
    m = np.diag([3.0, 2.0, 1.0])
    e = pipdim.factorize(m, 0.5, 2)
    assert e.shape == (3, 2)
    np.testing.assert_allclose(np.linalg.norm(e, axis=0), [math.sqrt(3), math.sqrt(2)])
    x = pipdim.random_orthonormal(6, 2, seed=1)
    np.testing.assert_allclose(pipdim.principal_angles(x, x), [1.0, 1.0])


def test_bounds_and_selection():
    s = pipdim.Spectrum([10.0 / i for i in range(1, 21)], 60)
    assert s.rank == 20 and s.ambient == 60 and s[21] == 0.0
    b = pipdim.expected_bound(s, 0.05, 0.5, 5)
    assert b.total == pytest.approx(b.bias + b.magnitude_variance + b.direction_variance)
    assert pipdim.subspace_perturbation_term(s, 0.05, 5) < pipdim.sin_theta_bound(s, 0.05, 5)

    curve = pipdim.bound_curve(s, 0.05, 0.5)
    assert curve.method == "expected_bound"
    report = pipdim.select_dimension(curve, [5, 50])
    lo, hi = report.intervals[5.0]
    assert lo <= report.k_star <= hi
    assert report.intervals[50.0][0] <= lo

    mc = pipdim.mc_curve(s, 0.05, 0.5, samples=3, base_seed=2)
    again = pipdim.mc_curve(s, 0.05, 0.5, samples=3, base_seed=2)
    assert mc.losses == again.losses
    assert len(mc.k_values) == 20


def test_errors():
    with pytest.raises(pipdim.NumericalDegeneracy):
        pipdim.nsr(np.ones((3, 1)), np.zeros((3, 1)))
    with pytest.raises(ValueError):
        pipdim.Spectrum([1.0, 2.0])
