"""Smoke test for the `perilap` extension module.

Build and install first:  pip install --no-build-isolation ./crates/python
Then run:                 python3 python/smoke_test.py
"""
import math

import perilap


def close(a, b, rel):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1.0)


def main():
    value, method, err = perilap.multiplier(1, 0.1, 1.0, 10.0)
    assert method == "SERIES", method
    assert close(value, -95.924696800225888, 1e-12), value
    assert err < 1e-10

    assert perilap.multiplier(2, 0.3, 4.0, 7.0)[:2] == (-49.0, "EXACT_LOCAL")
    assert close(perilap.multiplier(2, 0.1, -math.inf, 900.0)[0], perilap.multiplier_limit(2, 0.1, 900.0), 0.0)
    assert close(perilap.multiplier_limit(1, 0.1, 37.0), 2 * (math.cos(3.7) - 1) / 0.01, 1e-13)

    values = perilap.multiplier_many(3, 0.5, 2.5, [0.5, 5.0, 50.0])
    oracle = [perilap.multiplier_oracle(3, 0.5, 2.5, nu) for nu in (0.5, 5.0, 50.0)]
    assert all(close(a, b, 1e-8) for a, b in zip(values, oracle)), (values, oracle)

    try:
        perilap.multiplier(1, 0.1, 5.0, 1.0)
    except ValueError as e:
        assert "excluded" in str(e)
    else:
        raise AssertionError("beta = n + 4 must be rejected")

    value, _ = perilap.hyp_pfq([], [1.5], -0.25, rel_tol=1e-15)
    assert close(value, math.sin(1.0), 1e-14)

    n_grid = 32
    xs = [2 * math.pi * j / n_grid for j in range(n_grid)]
    f = [math.sin(x) for x in xs]
    u = perilap.solve_poisson(1, 0.5, 1.0, [2 * math.pi], [n_grid], f)
    m1 = perilap.multiplier(1, 0.5, 1.0, 1.0)[0]
    assert all(abs(ui - fi / m1) < 1e-13 for ui, fi in zip(u, f))
    assert close(perilap.sobolev_norm([2 * math.pi], [n_grid], f, 0.0), math.sqrt(0.5), 1e-14)

    eig = perilap.eigenvalues(2, 0.2, 1.0, [2 * math.pi, 2 * math.pi], [4, 4])
    assert len(eig) == 16 and eig[2 * 4 + 2] == 0.0

    print("perilap smoke test: ok")


if __name__ == "__main__":
    main()
