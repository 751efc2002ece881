"""Smoke test for the strata extension module.

Build and run from the repository root:

    cargo build --release -p strata-py --features extension-module
    cp target/release/libstrata.so python/strata.so
    python3 python/smoke_test.py
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import strata  # noqa: E402


def main():
    g = strata.Group("A2", "adjoint")
    assert g.rank == 2 and g.omega_order == 3
    s1, s2, s0 = g.simple_reflections()
    x = g.multiply(s1, s2)
    assert g.length(x) == 2
    assert g.multiply(x, g.inverse(x)) == g.identity()
    assert [len(level) for level in g.enumerate(2)] == [3, 9, 18]

    t = g.translation([1, 1])
    assert g.newton_point(t) == [Fraction(1), Fraction(1)]
    assert g.dominant_newton(g.inverse(t)) == [Fraction(1), Fraction(1)]
    assert g.is_straight(t)

    swap = strata.Twist(g, [1, 0], [2])
    assert swap.order == 2
    assert swap.simple_permutation == [0, 2, 1]
    y = swap.conjugate(s1, t)
    assert g.dominant_newton(y, swap) == g.dominant_newton(t, swap)

    fixed = strata.FixedSubgroup(swap)
    assert fixed.subspace == "(0, 1/3) + span{(1, 0)}"
    assert all(fixed.is_fixed(h) for h in fixed.generators())
    assert all(fixed.relative_length(h) == 1 for h in fixed.generators())
    assert fixed.figure().startswith("<svg")

    configs = dict(strata.catalog())
    cfg = strata.Config(configs["a1_ad"])
    table = cfg.straight_classes(bound=4)
    assert len(table["classes"]) == 6
    report = cfg.verify("gamma", bound=4)
    assert report["status"] == "pass", json.dumps(report)

    names = [name for name, _ in strata.examples()]
    assert names == ["A2-swap", "B2-swap", "resSL2"]

    try:
        strata.Group("E9")
    except ValueError:
        pass
    else:
        raise AssertionError("unsupported type accepted")

    print("ok")


if __name__ == "__main__":
    main()
