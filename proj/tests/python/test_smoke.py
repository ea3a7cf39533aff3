import math

import numpy as np
import pytest

import spectralgraph as sg


def test_generate_and_matrices():
    g = sg.generate("gen:path:3")
    assert g.num_nodes == 3
    lap = sg.laplacian(g)
    assert lap.shape == (3, 3)
    assert lap[0, 0] == 1.0 and lap[1, 1] == 2.0

    arw = sg.random_walk_matrix(g)
    assert np.allclose(arw.sum(axis=1), 1.0)


def test_validate_rejects_bad_input():
    with pytest.raises(sg.SpectralError):
        sg.validate(np.array([[0.0, 1.0], [2.0, 0.0]]))
    with pytest.raises(sg.SpectralError):
        sg.validate(np.zeros((2, 2)))


def test_evd_and_svd():
    g = sg.generate("gen:path:3")
    w, v = sg.symmetric_evd(sg.laplacian(g), "value_asc")
    assert np.allclose(np.sort(w), [0.0, 1.0, 3.0], atol=1e-10)
    assert np.allclose(v.T @ v, np.eye(3), atol=1e-10)

    star = sg.generate("gen:star:4")
    u, s, vt = sg.svd(sg.random_walk_matrix(star))
    assert abs(s[0] - math.sqrt(3.0)) < 1e-10
    assert abs(s[1] - 1.0 / math.sqrt(3.0)) < 1e-10


def test_cluster_barbell():
    g = sg.generate("gen:barbell:5,5")
    c = sg.spectral_cluster(g, 2, seed=0)
    assert abs(c.ncut - 2.0 / 21.0) < 1e-12
    labels = list(c.labels)
    assert len(set(labels[:5])) == 1
    assert len(set(labels[5:])) == 1
    assert labels[0] != labels[5]


def test_verify_and_stats():
    g = sg.generate("gen:path:3")
    r = sg.verify_theorem2(g, 2, 1e-8)
    assert r.verdict == "NOT_EQUAL"
    assert not r.condition_holds

    bb = sg.generate("gen:barbell:5,5")
    r2 = sg.verify_theorem2(bb, 2, 1e-8)
    assert r2.verdict == "EQUAL"

    stats = sg.eigen_sign_stats(sg.generate("gen:star:4"))
    assert (stats.num_positive, stats.num_negative, stats.num_zero) == (1, 1, 2)

    assert sg.correspondence_check(bb) <= 1e-9


def test_smoothness():
    g = sg.generate("gen:path:3")
    assert sg.smoothness(g, [1.0, 1.0, 1.0]) == 0.0
    assert abs(sg.smoothness(g, [1.0, 0.0, -1.0]) - 1.0) < 1e-12

    c4 = sg.generate("gen:cycle:4")
    rep_sc = sg.smoothness_report(c4, 2, "sc")
    rep_svd = sg.smoothness_report(c4, 2, "svd")
    assert abs(rep_sc[1][1] - 1.0) < 1e-9
    assert abs(rep_svd[1][1] - 2.0) < 1e-9


def test_edge_list_roundtrip():
    g = sg.generate("gen:er:20,0.3", seed=5)
    text = sg.to_edge_list(g)
    back = sg.from_edge_list(text)
    assert np.array_equal(back.adjacency, g.adjacency)
