"""Smoke test for the pyh2beta extension module.

Build first:  pip install --no-build-isolation -e crates/py
"""
import math

import pyh2beta as h


def main():
    hardy = h.Weight("hardy")
    assert hardy(5) == 1.0

    t = h.Symbol("mobius:a=0.5")
    assert abs(t(0j) - 0.5) < 1e-15
    c = t.coeffs(1, 4)
    assert abs(c[1] - 0.75) < 1e-12

    s = h.Section(hardy, t, 128)
    rep = s.norm()
    target = math.sqrt(3.0)
    assert 0.97 * target <= rep["sigma"] <= target * (1 + 1e-9), rep

    z2 = h.Symbol("monomial:k=2")
    alt = h.Weight("alternating")
    probe = h.divergence_probe(alt, z2, [32, 64, 128])
    assert probe["divergent"]

    so = h.Weight("dirichlet").classify("slowly-oscillating", 4096)
    assert so["verdict"] == "HoldsUpToN"

    value, coef = h.oscillatory_integral(0.6, 10.0, 10.0)
    assert abs(coef - t_power_coeff(0.6, 10, 10)) < 1e-10

    schur = h.schur_check("gap", trials=20, dim=16, seed=3)
    assert schur["pass"]

    suite = h.verify("counterexample")
    assert suite["pass"], suite

    try:
        h.Weight("nope")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown weight accepted")
    print("smoke test ok")


def t_power_coeff(a, n, m):
    return h.Symbol(f"mobius:a={a}").coeffs(n, m + 1)[m].real


if __name__ == "__main__":
    main()
