"""Smoke test for the `biwave` Python extension.

Build and run from the repository root:

    cargo build --release -p biwave-py
    cp target/release/libbiwave_py.so python/biwave.so
    python3 python/smoke_test.py
"""

import json
import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import biwave  # noqa: E402


def close(a, b, tol):
    return abs(a - b) <= tol


def main():
    f = biwave.Biquaternion(1 + 0.5j, [0.2j, -1.0, 0.3 - 0.1j])
    g = biwave.Biquaternion(-0.4, [1.0, 0.5j, 0.0])
    h = biwave.Biquaternion.basis(2)
    assert ((f * g) * h).distance(f * (g * h)) < 1e-12
    assert (f * f.inverse()).distance(biwave.Biquaternion(1.0)) < 1e-12
    assert (f * g).conj().distance(g.conj() * f.conj()) < 1e-12
    assert biwave.Biquaternion.from_json(f.to_json()) == f
    assert close((2 * f).norm(), 2 * f.norm(), 1e-12)

    tau, x = biwave.boost(0.6, [1.0, 0.0, 0.0], (1.0, [0.0, 0.0, 0.0]))
    assert close(tau, 1.25, 1e-14) and close(x[0], 0.75, 1e-14)
    p = (0.3, [0.4, -0.2, 0.9])
    q = biwave.poincare(0.7, -0.4, [0.0, 0.6, 0.8], p)
    assert close(biwave.interval(q), biwave.interval(p), 1e-12)
    r = biwave.rotate(math.pi / 4, [0.0, 0.0, 1.0], (0.0, [1.0, 0.0, 0.0]))
    assert close(r[1][1], 1.0, 1e-12)

    sp = biwave.XiSpinor([0.3, -1.2, 0.4], rho=0.5, sign="-")
    v = sp.at((0.7, [0.1, 0.2, -0.3]))
    assert close(v.norm(), 1.0, 1e-12) and abs(v.pseudonorm_sqr()) < 1e-12
    assert sp.dirac_residual((0.7, [0.1, 0.2, -0.3])) < 1e-10
    assert sp.phase_speed()[1] in ("subsonic", "sonic", "supersonic")
    om = biwave.OmegaSpinor(2.0, [0.0, 0.0, 1.0], rho=0.5)
    assert close(om.at([0.3, 0.1, 0.2]).norm(), 1.0, 1e-12)
    assert om.residual([0.3, 0.1, 0.2]) < 1e-10
    try:
        biwave.XiSpinor([0.0, 0.0, 0.0])
    except ValueError:
        pass
    else:
        raise AssertionError("zero xi accepted")

    a = biwave.intensity([1.0, 0.0, 0.0], [0.0, 1.0, 0.0])
    energy, poynting = biwave.em_energy(a)
    assert close(energy, 1.0, 1e-12) and close(poynting[2], 1.0, 1e-12)
    shock = biwave.em_shock_check([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0])
    assert shock["transversal"] and shock["max_abs"] < 1e-12
    assert not biwave.em_shock_check([0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0, 1.0])["transversal"]

    report = json.loads(biwave.verify("algebra", n=200, seed=7))
    assert report["pass"] and report["schema"] == "1"
    code, out, _ = biwave.run_cli(["verify", "--suite", "transforms", "--n", "50"])
    assert code == 0 and json.loads(out)["pass"]
    code, _, err = biwave.run_cli(["verify", "--suite", "transforms", "--n", "50", "--tol", "1e-30"])
    assert code == 1 and "poincare_pseudonorm" in err

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
