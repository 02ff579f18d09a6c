"""Smoke tests for the euclidscheme python bindings.

Plain asserts, no test-framework dependency; run under ctest with PYTHONPATH
pointing at the build tree's python/ directory.
"""

import math
import sys

import numpy as np

import euclidscheme as es


def check_field_layer():
    assert es.field_modulus(9) == [1, 0, 1]  # x^2 + 1 over Z_3
    assert es.field_modulus(25) == [2, 0, 1]  # x^2 + 2 over Z_5
    assert es.generator(7) == 3
    assert es.trace(9, 3) == 0
    assert es.legendre(7, 2) == 1
    assert es.legendre(7, 3) == -1
    assert es.legendre(7, 0) == 0
    try:
        es.moments(8, 2)
        raise AssertionError("even q must be rejected")
    except ValueError:
        pass


def check_charsums():
    assert abs(es.kloosterman(3, 1, 1) - (-1)) < 1e-12
    assert abs(es.kloosterman(3, 1, 2) - 2) < 1e-12
    assert abs(es.gauss_sum(5, 1) - math.sqrt(5)) < 1e-12
    for q in (7, 9, 13, 121):
        m1, m2 = es.moments(q, 2)
        assert m1 == 1
        assert m2 == q * q - q - 1
    # Twisted sum with odd twist over q = 3 mod 4 is purely imaginary.
    v = es.twisted_kloosterman(7, 3, 1, 1)
    assert abs(v.real) < 1e-9


def check_scheme():
    for q, d in ((5, 2), (7, 2), (9, 2), (5, 3)):
        m = es.scheme_matrices(q, d)
        n = len(m["delta"])
        identity = float(q) ** d * np.eye(n)
        assert np.abs(m["P"] @ m["Q"] - identity).max() < 1e-6 * q**d
        assert m["delta"][0] == "zbar"
        assert sum(m["sphere_sizes"]) == q**d
        assert m["weight_dims"] == m["sphere_sizes"]
    assert es.sphere_size(7, 1, 2) == 8
    assert es.sphere_size(5, 0, 2) == 8
    assert es.sphere_size(5, "zbar", 2) == 1


def check_intersection():
    assert es.planar_intersection(5, 1, 1, 0) == 0
    assert es.planar_intersection(5, 0, 0, 0) == 3
    assert es.planar_intersection(3, 1, 1, 1) == 1
    assert es.brute_force_intersection(3, 1, 1, 1) == 1
    im = es.intersection_matrix(7, 1)
    assert im["L"].shape == (7, 7)
    spectrum = sorted(im["spectrum"])
    assert abs(max(spectrum) - 8) < 1e-6  # q + 1 tops the spectrum


def check_walks():
    r = es.return_probability(3, 1, 2)
    assert r["exact"] == "1/4"
    assert r["numerator"] == 1 and r["denominator"] == 4
    assert r["q_is_prime"]

    sim = es.simulate_walk(3, 1, 2, 200000, seed=71)
    assert abs(sim["estimate"] - 0.25) < 4 * sim["stderr"]
    again = es.simulate_walk(3, 1, 2, 200000, seed=71)
    assert sim["successes"] == again["successes"]

    a = es.dense_adjacency(7, 1)
    assert a.shape == (49, 49)
    assert (a.sum(axis=1) == 8).all()
    assert (a == a.T).all()


def check_equidist():
    angles = es.angles(101)
    assert angles.shape == (100,)
    assert (angles >= 0).all() and (angles <= math.pi).all()
    assert (np.diff(angles) >= 0).all()
    assert 0 <= es.ks_distance(101) <= 1
    assert abs(es.sato_tate_cos_power(2) - 0.25) < 1e-12
    assert es.sato_tate_cos_power(3) == 0
    assert abs(es.sato_tate_cdf(math.pi) - 1) < 1e-12


def main():
    checks = [
        check_field_layer,
        check_charsums,
        check_scheme,
        check_intersection,
        check_walks,
        check_equidist,
    ]
    for check in checks:
        check()
        print(f"ok: {check.__name__}")
    print(f"all {len(checks)} smoke checks passed")


if __name__ == "__main__":
    sys.exit(main())
