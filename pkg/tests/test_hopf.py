from fractions import Fraction as F

import pytest

from hopfext.errors import MathFailure
from hopfext.fields import GF, QQ
from hopfext.fixtures import cyclic_group_hopf, fixture_paper_quiver
from hopfext.hopf import (dual_hopf, is_cosemisimple, is_semisimple, right_integral,
                          verify_hopf_axioms)


def test_group_algebra_axioms():
    rep = verify_hopf_axioms(cyclic_group_hopf(2, QQ))
    assert rep.passed
    assert rep.cocommutative and rep.commutative


def test_quiver_degree_zero_hopf():
    fx = fixture_paper_quiver(d_max=2)
    rep = verify_hopf_axioms(fx.hopf)
    assert rep.passed and rep.cocommutative


def test_integral_kz2():
    t = right_integral(cyclic_group_hopf(2, QQ))
    assert t.vector == [F(1), F(1)]  # 1 + g
    assert t.side == "right"


def test_integral_trivial_hopf():
    t = right_integral(cyclic_group_hopf(1, QQ))
    assert t.vector == [F(1)]


def test_integral_of_dual():
    d = dual_hopf(cyclic_group_hopf(2, QQ))
    # delta functional supported at the identity-evaluation element
    assert right_integral(d).vector == [F(1), F(0)]


def test_semisimplicity():
    h = cyclic_group_hopf(2, QQ)
    assert is_semisimple(h)          # eps(1+g) = 2
    assert is_cosemisimple(h)
    h2 = cyclic_group_hopf(2, GF(2))
    assert not is_semisimple(h2)     # eps(t) = 2 = 0
    h3 = cyclic_group_hopf(3, GF(3))
    assert not is_semisimple(h3)
    assert is_semisimple(cyclic_group_hopf(3, GF(2)))


def test_dual_involution():
    h = cyclic_group_hopf(2, QQ)
    dd = dual_hopf(dual_hopf(h))
    assert dd.mult == h.mult and dd.comul == h.comul
    assert dd.unit == h.unit and dd.counit == h.counit and dd.antipode == h.antipode


def test_dual_dimension_preserved():
    for n in (1, 2, 3):
        h = cyclic_group_hopf(n, QQ)
        assert dual_hopf(h).dim == h.dim


def test_antipode_bijective_reported():
    rep = verify_hopf_axioms(cyclic_group_hopf(3, QQ))
    assert any(c.name == "antipode bijective" and c.passed for c in rep.checks)


def test_perturbed_antipode_fails_with_witness():
    h = cyclic_group_hopf(2, QQ)
    bad = h.antipode.scale(F(-1))
    from hopfext.hopf import HopfAlgebra
    broken = HopfAlgebra(QQ, h.mult, h.unit, h.comul, h.counit, bad, names=h.names)
    rep = verify_hopf_axioms(broken)
    failures = [c for c in rep.checks if not c.passed]
    assert failures
    assert any("antipode" in c.name for c in failures)


def test_quiver_antipode_sign_flip_rejected():
    from hopfext.fixtures import QUIVER_ANTIPODE
    bad = dict(QUIVER_ANTIPODE)
    bad["x0"] = [(1, ("x1",))]  # sign flipped
    with pytest.raises(MathFailure):
        fixture_paper_quiver(d_max=3, antipode_tables=bad)


def test_quiver_antipode_flip_witnessed_by_x0():
    from hopfext.fixtures import QUIVER_ANTIPODE, build_quiver_bialgebra
    bad = dict(QUIVER_ANTIPODE)
    bad["x0"] = [(1, ("x1",))]
    _, checks = build_quiver_bialgebra(QQ, 3, antipode_tables=bad)
    failed = {name: witness for name, ok, witness in checks if not ok}
    assert failed.get("antipode law on generators") == "x0"
