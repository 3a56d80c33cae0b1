import pytest

from src.main.errors import InvalidParameter, NotCartan
from src.main.geometry.complex_structures import (build_nonregular_q, build_regular_morimoto,
                                                  build_sl3_family, e_zero, h_regularity_check,
                                                  induced_J, nonregularity_certificate,
                                                  sigma_normalizer, skt_subframe,
                                                  subalgebra_complement_check, tilde_h)
from src.main.numeric.gaussian import GaussRational
from src.main.numeric.subspace import Subspace


def test_nonregular_structure_on_sl3(forms2):
    q = build_nonregular_q(2, forms2)
    assert q.dim == 4
    assert q.labels == ["Ht1", "e2^1", "e1^2", "e0"]
    check = subalgebra_complement_check(forms2.algebra, q.q_basis, forms2.sigma)
    assert check.closed and check.complement


def test_nonregular_structure_on_sl5(forms3):
    q = build_nonregular_q(3, forms3)
    assert q.dim == 12
    regularity = h_regularity_check(q)
    # q is not stable under the diagonal Cartan subalgebra
    assert not regularity.ad_stable
    assert regularity.witness
    assert nonregularity_certificate(q)


def test_sigma_normalizer_lies_in_cartan(forms2):
    q = build_nonregular_q(2, forms2)
    cartan = Subspace(forms2.algebra.dim, q.cartan)
    normalizer = sigma_normalizer(q)
    assert normalizer
    assert all(cartan.contains(w) for w in normalizer)


def test_tilde_h_kills_simple_root(forms3):
    alg = forms3.algebra
    rs = alg.root_system
    h_last = tilde_h(forms3)[-1]
    assert alg.evaluate_root(rs.simple_root(2), h_last) == 0
    assert len(tilde_h(forms3)) == 2


def test_e_zero_mixes_root_spaces(forms2):
    alg = forms2.algebra
    e0 = e_zero(forms2)
    assert len(e0) == 2
    assert alg.index("e1^1") in e0


def test_regular_structure_is_stable(forms2):
    q = build_regular_morimoto(2, forms2)
    regularity = h_regularity_check(q)
    assert regularity.ad_stable
    assert regularity.splits
    assert not nonregularity_certificate(q)


def test_complement_failure_witness(sl3, forms2):
    # the Cartan subalgebra is closed but meets its conjugate
    check = subalgebra_complement_check(sl3, sl3.cartan_basis(), forms2.sigma)
    assert check.closed
    assert not check.complement
    assert "intersection" in check.witness or "deficit" in check.witness


def test_not_cartan(forms2):
    q = build_nonregular_q(2, forms2)
    with pytest.raises(NotCartan):
        h_regularity_check(q, [forms2.algebra.e(1)])
    with pytest.raises(NotCartan):
        h_regularity_check(q, [])


def test_skt_subframe_labels(forms3):
    q = build_nonregular_q(3, forms3)
    vectors, labels = skt_subframe(q, forms3)
    assert labels == ["Ht2", "e0", "e3^1", "e2^2"]
    assert len(vectors) == 4


@pytest.mark.parametrize("lam", ["0", "1/2", "-1/3", "i/2"])
def test_sl3_family_is_a_complex_structure(lam):
    structure = build_sl3_family(GaussRational.parse(lam))
    assert structure.algebra.check_jacobi() is None
    assert structure.algebra.is_unimodular()
    assert structure.dim == 4


def test_sl3_family_rejects_large_lambda():
    with pytest.raises(InvalidParameter):
        build_sl3_family(1)
    with pytest.raises(InvalidParameter):
        build_sl3_family(GaussRational(1, 1))


def test_induced_J(forms2):
    q = build_nonregular_q(2, forms2)
    j_op = induced_J(q)
    assert j_op.square_is_minus_identity()
    assert j_op.commutes_with_conjugation()
    assert Subspace(forms2.algebra.dim, j_op.plus_i_eigenspace()).dim == q.dim
    with pytest.raises(KeyError):
        q.vector("missing")
