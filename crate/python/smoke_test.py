"""Smoke test for the Python bindings.

    pip install --no-build-isolation -e crates/python
    python python/smoke_test.py
"""

import math

import concentric_casimir as cc


def main():
    g = cc.Geometry.from_eps(0.1, 3)
    assert math.isclose(g.a2, 1.1) and g.dim == 3, g

    policy = cc.TruncationPolicy(rel_tol=1e-9)
    e = cc.energy(g, "pc,pc", policy=policy)
    assert e.value < 0 and e.l_used > 10, e
    assert abs(e.value - (e.te + e.tm)) <= 3 * e.error_estimate + 1e-12 * abs(e.value)

    series = cc.zero_t_expansion(3, "pc,pc")
    approx = series.energy(1.0, 0.1)
    assert abs(e.value / approx - 1) < 2e-3, (e.value, approx)
    assert series.terms[0][2] == 1.0

    pfa = cc.pfa_energy(g, "pc,pc", "zeroT")
    assert abs(e.value / pfa - 1) < 0.2, (e.value, pfa)

    f = cc.force(g, "pc,pc", policy=policy)
    assert f.value < 0, f
    assert abs(f.value / series.force(1.0, 0.1) - 1) < 1e-2

    hot = cc.free_energy(g, "pc,pc", 2.0, policy=policy)
    cold = cc.zero_t_energy(g, "pc,pc", policy=policy)
    dt = cc.thermal_correction(g, "pc,pc", 2.0, policy=policy)
    assert abs(hot.value - cold.value - dt.value) < 1e-6 * abs(hot.value), (hot, cold, dt)

    high = cc.high_t_expansion(3, "pc,ip")
    assert high.regime == "highT"

    ln_i, ln_k, _, _ = cc.bessel_log(2.5, 1.0)
    assert math.isfinite(ln_i) and math.isfinite(ln_k)
    assert math.isclose(cc.riemann_zeta(2.0), math.pi**2 / 6, rel_tol=1e-14)
    assert math.isclose(cc.gamma(5.0), 24.0, rel_tol=1e-14)

    try:
        cc.Geometry(1.0, 0.5, 3)
    except ValueError:
        pass
    else:
        raise AssertionError("a2 < a1 accepted")

    try:
        cc.energy(cc.Geometry.from_eps(0.02, 3), "pc,pc", policy=cc.TruncationPolicy(l_max_hard=10))
    except cc.NonConvergenceError:
        pass
    else:
        raise AssertionError("l_max_hard ignored")

    passed, report = cc.selftest()
    assert passed, report
    print("smoke test passed")


if __name__ == "__main__":
    main()
