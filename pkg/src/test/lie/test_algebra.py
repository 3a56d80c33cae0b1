import random

import pytest

from src.main.errors import DegenerateKilling, DimensionMismatch, StructureError
from src.main.lie.algebra import LieAlgebra
from src.main.numeric.gaussian import GaussRational, ONE
from src.main.numeric.vectors import vec_add, vec_combine


def heisenberg():
    return LieAlgebra(["x", "y", "z"], {(0, 1): {2: ONE}}, name="heisenberg")


def test_bracket_antisymmetry():
    h = heisenberg()
    assert h.bracket({0: ONE}, {1: ONE}) == {2: ONE}
    assert h.bracket({1: ONE}, {0: ONE}) == {2: GaussRational(-1)}
    assert h.bracket({0: ONE}, {0: ONE}) == {}


def test_reversed_entries_are_normalized():
    h = LieAlgebra(["x", "y", "z"], {(1, 0): {2: ONE}})
    assert h.bracket_basis(0, 1) == {2: GaussRational(-1)}


def test_invalid_tables():
    with pytest.raises(StructureError):
        # [x,y] = x, [y,z] = y, [x,z] = 0 breaks Jacobi
        LieAlgebra(["x", "y", "z"], {(0, 1): {0: ONE}, (1, 2): {1: ONE}, (0, 2): {2: ONE}})
    with pytest.raises(DimensionMismatch):
        LieAlgebra(["x", "y"], {(0, 1): {5: ONE}})
    with pytest.raises(KeyError):
        heisenberg().index("w")


def test_nilpotent_is_unimodular_but_degenerate():
    h = heisenberg()
    assert h.is_unimodular()
    assert not h.is_semisimple()
    with pytest.raises(DegenerateKilling):
        h.require_semisimple()


def test_non_unimodular_algebra():
    # [x, y] = y has tr ad x = 1
    ax_b = LieAlgebra(["x", "y"], {(0, 1): {1: ONE}})
    assert not ax_b.is_unimodular()


def test_jacobi_on_random_triples(sl3):
    rng = random.Random(3)
    for _ in range(50):
        x, y, z = ({k: GaussRational(rng.randint(-2, 2), rng.randint(-1, 1)) for k in range(sl3.dim)}
                   for _ in range(3))
        x, y, z = ({k: c for k, c in v.items() if c} for v in (x, y, z))
        total = vec_combine([(1, sl3.bracket(sl3.bracket(x, y), z)),
                             (1, sl3.bracket(sl3.bracket(y, z), x)),
                             (1, sl3.bracket(sl3.bracket(z, x), y))])
        assert total == {}


def test_killing_invariance(sl3):
    assert sl3.check_killing_invariance()
    assert sl3.killing_form().is_hermitian()


def test_direct_sum_and_abelian(sl2):
    total = sl2.direct_sum(LieAlgebra.abelian(2))
    assert total.dim == 5
    assert total.labels[3:] == ["c1", "c2"]
    assert total.bracket({3: ONE}, {0: ONE}) == {}
    assert total.is_unimodular()
    assert LieAlgebra.abelian(3).is_abelian()


def test_json_round_trip(sl3):
    copy = LieAlgebra.from_json(sl3.to_json())
    assert copy.labels == sl3.labels
    assert list(copy.brackets()) == list(sl3.brackets())


def test_ad_matrix(sl2):
    e = sl2.vector("e1^1")
    ad_e = sl2.ad(e)
    # ad e is nilpotent of order 3 on sl(2)
    assert (ad_e @ ad_e @ ad_e).rank() == 0
    assert vec_add(e, e) == {sl2.index("e1^1"): GaussRational(2)}
