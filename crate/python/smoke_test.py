"""Smoke test for the `ladm` extension module.

Build and install first, e.g. `pip install --no-build-isolation -e crates/py`,
then run `python python/smoke_test.py`.
"""

import cmath
import json

import ladm


def main():
    beta = ladm.reference_beta()
    assert abs(beta - 2 ** (1 / 16)) < 1e-15

    h = ladm.HarmonicPoly([(1, 1 + 0j), (-2, 0.5j)])
    assert h.support() == [-2, 1]
    assert (h * h.conj()).coeff(0) == 1.25
    assert abs(h.dx().coeff(1) - 1j) < 1e-15

    s = ladm.TimeSeries([h, h.dx()])
    assert s.powers() == [0, 1]
    assert ladm.TimeSeries.from_json(s.to_json()) == s
    assert s.integrate_time().derivative_time() == s

    run = ladm.run(beta, 1, 4)
    assert run.terms == 4 and len(run.iterates) == 5
    u1 = run.iterates[1].coeff(1)
    assert u1.support() == [1]
    assert abs(u1.coeff(1).imag - 0.19758) < 5e-6

    rate = 1j * (beta ** 4 - 1)
    x, t = 0.5, 0.3
    plane = beta * cmath.exp(rate * t) * cmath.exp(1j * x)
    assert abs(run.eval(x, t) - plane) < 1e-6

    orders = run.residual_orders()
    assert all(m < 1e-9 for m in orders[:4]) and orders[4] > 1e-9
    assert run.lambda_discrepancy() < 1e-10

    exact = ladm.exact_eval(0.5, 1.0)
    assert abs(exact.real - 0.867245034766) < 1e-9
    rows = ladm.compare_grid(run, [0.5 * i for i in range(1, 11)], 1.0)
    assert len(rows) == 10 and abs(rows[0]["re_exact"] - exact.real) < 1e-15

    assert ladm.adomian_symbolic(1, "Q") == "2i u0^2 ubx1 + 4i u0 u1 ubx0"
    try:
        ladm.run(0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("zero amplitude accepted")

    print(json.dumps({"ok": True, "u_ladm(0.5,1)": [run.eval(0.5, 1.0).real, run.eval(0.5, 1.0).imag]}))


if __name__ == "__main__":
    main()
