"""Smoke test for the pytoric extension module.

Build and install first:

    cd crates/python && maturin develop --release

then run `python python/smoke_test.py`.
"""

import math

import pytoric


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def check_basis():
    ns = pytoric.NodeSet([0.0, 0.5, 1.5, 2.0], scale=1.5)
    w = [1.0, 2.0, 0.5, 1.0]
    for k in range(101):
        t = 2.0 * k / 100
        values = ns.eval_rational(t, w)
        assert close(sum(values), 1.0), values
        assert all(v >= 0.0 for v in values)
    assert ns.eval_rational(0.0, w) == [1.0, 0.0, 0.0, 0.0]
    assert ns.eval_rational(2.0, w) == [0.0, 0.0, 0.0, 1.0]

    bern = pytoric.bernstein_equivalent_nodeset(4)
    for k in range(11):
        x = k / 10
        for i in range(5):
            expected = math.comb(4, i) * x**i * (1 - x) ** (4 - i)
            assert close(bern.eval(i, 4 * x), expected), (i, x)


def check_total_positivity():
    ns = pytoric.NodeSet([0.0, 0.5, 1.5, 2.0], scale=1.5)
    c = pytoric.rational_collocation_matrix(ns, [0.0, 0.3, 1.2, 2.0], [1.0, 2.0, 0.5, 1.0])
    report = pytoric.is_totally_positive(c)
    assert report["is_tp"], report
    suite = pytoric.verify_ntp_suite(ns, trials=40, seed=1)
    assert suite["failures"] == 0, suite

    w = pytoric.generalized_vandermonde([0.5, 1.0, 2.0], [0.0, 1.0, 2.5])
    assert pytoric.minor_det(w, [0, 1, 2], [0, 1, 2]) > 0.0
    bad = pytoric.is_totally_positive([[0.0, 1.0], [1.0, 0.0]])
    assert not bad["is_tp"]


def check_fitting():
    ns = pytoric.NodeSet([0.0, 1.0, 2.0, 3.0])
    data = [[0.0, 0.0], [1.0, 1.5], [2.0, 1.0], [3.0, -0.5]]
    problem = pytoric.FitProblem(data, [0.0, 1.0, 2.0, 3.0], ns)
    assert problem.iteration_spectrum() < 1.0
    state = problem.run(500, 1e-12)
    assert state.error_history[-1] <= 1e-12
    curve = pytoric.GTBezierCurve(ns, state.control)
    for t, p in zip([0.0, 1.0, 2.0, 3.0], data):
        q = curve.eval(t)
        assert all(close(a, b, 1e-10) for a, b in zip(p, q)), (p, q)

    line = pytoric.classical_bezier([[0.0, 0.0], [1.0, 1.0]])
    assert line.eval(0.5) == [0.5, 0.5]


def check_examples():
    circle = pytoric.example("circle")
    assert circle["checkpoints"] == [1, 5, 10, 20]
    gt = circle["errors"]["gt-bezier"]
    assert 0.2 < gt[0] < 0.3 and gt[-1] < 3e-3, gt
    assert all(r < 1.0 for r in circle["spectral_radius"].values())


if __name__ == "__main__":
    check_basis()
    check_total_positivity()
    check_fitting()
    check_examples()
    print("pytoric smoke test passed")
