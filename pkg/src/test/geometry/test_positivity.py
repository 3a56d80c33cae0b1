import itertools
import math
import random
from fractions import Fraction

import pytest

from src.main.errors import InvalidExponent, NotRealForm, NotType11
from src.main.geometry.forms import Coframe, wedge
from src.main.geometry.metrics import diagonal_decomposition
from src.main.geometry.positivity import (Definiteness, classify_signature, diagonal_report,
                                          herm_rep, hermitian_form, power_semidefiniteness,
                                          transversality_falsifier, volume_form)
from src.main.numeric.gaussian import I
from src.main.numeric.matrix import ExactMatrix


def test_classify_signature():
    assert classify_signature((3, 0, 0)) == Definiteness.POSITIVE_DEFINITE
    assert classify_signature((2, 0, 1)) == Definiteness.POSITIVE_SEMIDEF
    assert classify_signature((0, 1, 2)) == Definiteness.NEGATIVE_SEMIDEF
    assert classify_signature((1, 1, 0)) == Definiteness.INDEFINITE
    assert classify_signature((0, 0, 4)) == Definiteness.ZERO
    assert not Definiteness.ZERO.semidefinite
    assert Definiteness.POSITIVE_DEFINITE.semidefinite
    assert Definiteness.NEGATIVE_SEMIDEF.flipped() == Definiteness.POSITIVE_SEMIDEF


def test_diagonal_report():
    report = diagonal_report([1, 0, 2])
    assert report.rank == 2
    assert report.classification == Definiteness.POSITIVE_SEMIDEF
    assert report.to_json()["classification"] == "PositiveSemiDef"


def test_herm_rep_recovers_matrix():
    coframe = Coframe.abelian(2)
    h = ExactMatrix([[2, I], [-I, 1]])
    report = herm_rep(hermitian_form(coframe, h))
    assert report.matrix == h
    assert report.classification == Definiteness.POSITIVE_DEFINITE


def test_herm_rep_rejects_bad_forms():
    coframe = Coframe.abelian(2)
    with pytest.raises(NotType11):
        herm_rep(wedge(coframe.eta(0), coframe.eta(1)))
    with pytest.raises(NotRealForm):
        herm_rep(wedge(coframe.eta(0), coframe.eta_bar(1)))


def test_power_examples():
    assert power_semidefiniteness([1, -1], 2).classification == Definiteness.NEGATIVE_SEMIDEF
    assert power_semidefiniteness([1, 1, -1], 2).classification == Definiteness.INDEFINITE
    third = power_semidefiniteness([2, 3, 0], 2)
    assert third.classification == Definiteness.POSITIVE_SEMIDEF
    assert third.nonzero_subset_count == 1
    assert power_semidefiniteness([2, 3, 0], 3).classification == Definiteness.ZERO
    with pytest.raises(InvalidExponent):
        power_semidefiniteness([1, 2], 3)
    with pytest.raises(InvalidExponent):
        power_semidefiniteness([1, 2], 0)


def test_power_matches_wedge_power_of_diagonal_form():
    rng = random.Random(41)
    for _ in range(50):
        n = rng.randint(2, 4)
        diag = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
        j = rng.randint(1, n)
        coframe = Coframe.abelian(n)
        form = hermitian_form(coframe, ExactMatrix.diagonal(diag))
        decomposition = diagonal_decomposition(form.power(j)) or {}
        for subset in itertools.combinations(range(n), j):
            expected = math.factorial(j) * math.prod(diag[k] for k in subset)
            assert decomposition.get(subset, 0) == expected
        report = power_semidefiniteness(diag, j)
        nonzero = sum(1 for d in diag if d)
        assert report.nonzero_subset_count == math.comb(nonzero, j)
        signs = {v.re > 0 for v in decomposition.values()}
        if report.classification == Definiteness.POSITIVE_SEMIDEF:
            assert signs == {True}
        elif report.classification == Definiteness.NEGATIVE_SEMIDEF:
            assert signs == {False}


def test_falsifier_on_positive_form():
    coframe = Coframe.abelian(3)
    omega = hermitian_form(coframe, ExactMatrix.identity(3))
    result = transversality_falsifier(omega, trials=8, seed=1)
    assert not result.falsified
    assert result.samples == 3 + 8


def test_falsifier_on_indefinite_form():
    coframe = Coframe.abelian(2)
    form = hermitian_form(coframe, ExactMatrix.diagonal([1, -1]))
    result = transversality_falsifier(form, trials=4)
    assert result.falsified
    assert result.pairing == -1
    assert result.samples == 1


def test_falsifier_requires_real_pp_form():
    coframe = Coframe.abelian(2)
    with pytest.raises(NotType11):
        transversality_falsifier(coframe.eta(0))
    with pytest.raises(NotRealForm):
        transversality_falsifier(wedge(coframe.eta(0), coframe.eta_bar(1)))


def test_volume_form_is_real_top_degree():
    vol = volume_form(Coframe.abelian(3))
    assert vol.degree == 6
    assert vol.is_real()


def test_herm_rep_of_single_monomial():
    coframe = Coframe.abelian(3)
    report = herm_rep(wedge(coframe.eta(0), coframe.eta_bar(0)).scale(I))
    assert report.rank == 1
    assert report.signature == (1, 0, 2)
