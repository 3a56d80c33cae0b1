import pytest

from src.main.errors import InvalidRank
from src.main.lie.sl import build_sl
from src.main.numeric.gaussian import GaussRational


def test_sl2_relations(sl2):
    assert sl2.dim == 3
    h, e, f = sl2.h(1), sl2.e(1), sl2.f(1)
    assert sl2.bracket(h, e) == {sl2.index("e1^1"): GaussRational(2)}
    assert sl2.bracket(e, f) == h


def test_sl3_brackets(sl3):
    assert sl3.bracket(sl3.e(1), sl3.e(2)) == sl3.e(1, 2)
    assert sl3.bracket(sl3.e(1), sl3.e(1)) == {}
    assert sl3.bracket(sl3.h(1), sl3.e(2)) == {sl3.index("e2^1"): GaussRational(-1)}


def test_labels_follow_basis_order(sl3):
    assert sl3.labels == ["H1", "H2", "e1^1", "e2^1", "e1^2", "f1^1", "f2^1", "f1^2"]


def test_killing_form_values(sl2, sl3):
    assert sl2.killing(sl2.h(1), sl2.h(1)) == 8
    b = sl3.killing_form()
    assert b.is_hermitian()
    assert sl3.is_semisimple()
    # root spaces pair only with their negatives
    for i in range(sl3.rank, sl3.dim):
        for j in range(sl3.rank, sl3.dim):
            if b[i, j]:
                assert sl3.root_of(i) == -sl3.root_of(j)


def test_killing_matches_trace_form(sl4):
    for i in range(sl4.dim):
        for j in range(sl4.dim):
            assert sl4.killing_form()[i, j] == sl4.trace_form_shortcut(i, j)


def test_dual_vector(sl3):
    rs = sl3.root_system
    for root in rs.positive_roots:
        dual = sl3.dual_vector(root).vector
        for j in range(1, sl3.rank + 1):
            assert sl3.killing(sl3.h(j), dual) == rs.pairing(root, j)


def test_coroot(sl3):
    assert sl3.coroot(sl3.root_system.root(1, 2)) == {0: GaussRational(1), 1: GaussRational(1)}


def test_unknown_root(sl3):
    with pytest.raises(KeyError):
        sl3.root_of(0)
    with pytest.raises(InvalidRank):
        build_sl(1)
