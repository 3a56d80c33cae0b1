import random

import pytest

from src.main.errors import InvalidRank
from src.main.lie.real_forms import (build_involutions, killing_signature, real_basis,
                                     sigma_constants, sigma_root_image)
from src.main.numeric.gaussian import GaussRational


def test_involutions_are_automorphisms(forms2, forms3):
    for forms in (forms2, forms3):
        for phi in (forms.theta, forms.tau, forms.sigma):
            assert phi.is_involution()
            assert phi.is_automorphism()
        assert forms.sigma.antilinear
        assert not forms.theta.antilinear
        assert forms.theta.commutes_with(forms.tau)


def test_split_signature(forms2, forms3):
    assert forms2.signature == (5, 3, 0)
    assert forms3.signature == (14, 10, 0)
    assert killing_signature(forms2.algebra, forms2.sigma) == (5, 3, 0)
    assert len(real_basis(forms2.algebra, forms2.sigma)) == 8


def test_compact_signature(forms2):
    alg = forms2.algebra
    assert killing_signature(alg, forms2.tau) == (0, 8, 0)


def test_sigma_on_simple_roots(forms2, forms3):
    rs = forms2.algebra.root_system
    assert sigma_root_image(forms2, rs.simple_root(1)) == -rs.simple_root(2)
    rs3 = forms3.algebra.root_system
    for j in range(1, 5):
        assert sigma_root_image(forms3, rs3.simple_root(j)) == -rs3.simple_root(5 - j)


def test_roots_preserved_by_minus_sigma(forms3):
    rs = forms3.algebra.root_system
    fixed = [r for r in rs.positive_roots if sigma_root_image(forms3, r) == -r]
    assert fixed == [rs.root(2, 2), rs.root(1, 4)]


def test_sigma_squares_to_identity_on_random_vectors(forms3):
    sigma = forms3.sigma
    rng = random.Random(13)
    for _ in range(50):
        x = {k: GaussRational(rng.randint(-3, 3), rng.randint(-3, 3))
             for k in rng.sample(range(forms3.algebra.dim), 4)}
        x = {k: c for k, c in x.items() if c}
        assert sigma.apply(sigma.apply(x)) == x


def test_sigma_preserves_brackets_on_random_pairs(forms2):
    alg, sigma = forms2.algebra, forms2.sigma
    rng = random.Random(17)
    for _ in range(50):
        x, y = ({k: GaussRational(rng.randint(-2, 2), rng.randint(-2, 2)) for k in range(alg.dim)}
                for _ in range(2))
        x = {k: c for k, c in x.items() if c}
        y = {k: c for k, c in y.items() if c}
        assert sigma.apply(alg.bracket(x, y)) == alg.bracket(sigma.apply(x), sigma.apply(y))


def test_sigma_constants(forms2, forms3):
    for forms in (forms2, forms3):
        consts = sigma_constants(forms)
        for (j, k), value in consts.table.items():
            assert value.conj() == consts[consts.partner(j, k)]
        for j in range(1, forms.m):
            assert consts.gamma(j).is_real()
        assert consts.killingsum_sign == -1


def test_killing_sum_relation_for_sl3(forms2):
    alg = forms2.algebra
    consts = sigma_constants(forms2)
    rs = alg.root_system
    h1 = alg.dual_vector(rs.simple_root(1)).vector
    h2 = alg.dual_vector(rs.simple_root(2)).vector
    assert consts[(1, 2)] == consts.killingsum_sign * consts[(1, 1)] * consts[(2, 1)] * alg.killing(h1, h2)


def test_invalid_m():
    with pytest.raises(InvalidRank):
        build_involutions(1)
