"""Smoke test for the liftkit Python module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/liftkit-*.whl
"""

import liftkit
from liftkit import Cascade, LaurentPoly, LiftingStep, PolyMatrix, Scalar


def scalars():
    w = Scalar.sqrt2()
    assert (1 + w) * (1 - w) == Scalar(-1)
    assert str(1 / Scalar(2)) == "1/2"
    assert Scalar("3/8*w2").irrational == "3/8"
    assert Scalar("1/4").is_dyadic() and not Scalar("1/3").is_dyadic()
    try:
        Scalar(1) / 0
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("division by zero accepted")


def polynomials():
    f = LaurentPoly(0, [1, 1])
    sq = f * f
    assert [str(c) for c in sq.coeffs] == ["1", "2", "1"]
    assert f.has_symmetry("HS_plus")
    assert LaurentPoly(-1, [1, 0, -1]).has_symmetry("WA")
    assert sq.order() == 2
    assert str(sq.evaluate(1)) == "4"


def legall():
    [(_, c)] = liftkit.example("legall")
    m = c.product()
    assert m.is_ws() and m.is_unimodular() and m.det() == LaurentPoly(0, [1])
    assert c.is_order_increasing() and c.in_structure("ws-reversible")
    f = liftkit.factor(m, "ws-reversible")
    assert f == c
    assert liftkit.equivalent(c, f) == ("identical", Scalar(1))
    r = c.rescale("3/2")
    assert liftkit.equivalent(c, r) == ("equivalent_modulo_rescaling", Scalar("3/2"))
    assert Cascade.from_json(c.to_json()) == c
    assert PolyMatrix.from_json(m.to_json()) == m
    assert liftkit.gamma(1, m) == m


def example1():
    (_, a), (_, b) = liftkit.example("example1", b=2, c=3)
    assert a.product() == b.product()
    verdict, alpha = liftkit.equivalent(a, b)
    assert verdict == "inequivalent" and alpha is None
    try:
        liftkit.factor(a.product(), "ws")
    except liftkit.NotFactorableError:
        pass
    else:
        raise AssertionError("example 1 factored in ws")
    g = liftkit.factor(a.product())
    assert g.product() == a.product()


def misc():
    [(_, h)] = liftkit.example("haar")
    f = liftkit.factor(h.product(), "hs")
    assert len(f) == 0 and f.base == PolyMatrix.named("haar")
    [(_, e7)] = liftkit.example("example7")
    assert e7.order_failure() == 0
    w = liftkit.nonuniqueness_witness(h)
    assert w.product() == h.product() and w != h
    steps = liftkit.factor_gain(2)
    assert Cascade(steps).product() == Cascade([], gain=2).product()
    two = PolyMatrix(LaurentPoly(0, [2]), LaurentPoly(), LaurentPoly(), LaurentPoly(0, [2]))
    try:
        liftkit.factor(two, "ws")
    except liftkit.PreconditionError:
        pass
    else:
        raise AssertionError("non-unimodular matrix factored")
    up = LiftingStep(0, LaurentPoly(0, [1]))
    assert Cascade([up, up]).reduce() == Cascade([LiftingStep(0, LaurentPoly(0, [2]))])
    assert set(liftkit.structures()) >= {"ws", "ws-reversible", "hs", "hs-reversible", "elasf"}
    assert len(liftkit.example_names()) == 9


if __name__ == "__main__":
    for check in (scalars, polynomials, legall, example1, misc):
        check()
        print(f"{check.__name__}: ok")
