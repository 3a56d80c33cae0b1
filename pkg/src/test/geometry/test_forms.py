import random

import pytest

from src.main.errors import CoframeMismatch, DegreeMismatch, NotType11
from src.main.geometry.forms import (Coframe, ExtForm, apply_j, ce_d, ddc, ddc_convention_check,
                                     del_delbar, evaluate, match_up_to_rescaling, partial,
                                     partial_bar, structure_equations, wedge)
from src.main.numeric.gaussian import GaussRational, I
from src.main.scenarios import SL3_TARGET


def random_form(coframe, degree, rng, sampler, terms=4):
    result = ExtForm(coframe, {})
    for _ in range(terms):
        key = tuple(sorted(rng.sample(range(coframe.dim), degree)))
        result = result + ExtForm(coframe, {key: sampler(rng)})
    return result


def test_wedge_signs(sl3_block):
    a, b = sl3_block.eta(0), sl3_block.eta_bar(1)
    assert wedge(a, b) == -wedge(b, a)
    assert not wedge(a, a)
    assert sl3_block.monomial("1", "0") == -sl3_block.monomial("0", "1")
    assert not sl3_block.monomial("2", "2")
    assert (a ^ b).bidegree == (1, 1)


def test_degree_and_coframe_checks(sl3_block):
    other = Coframe.abelian(4)
    with pytest.raises(CoframeMismatch):
        wedge(sl3_block.eta(0), other.eta(0))
    with pytest.raises(DegreeMismatch):
        sl3_block.eta(0) + wedge(sl3_block.eta(0), sl3_block.eta(1))
    with pytest.raises(ValueError):
        ExtForm(sl3_block, {(1, 0): 1})


def test_d_squared_vanishes_on_random_forms(sl3_block, gaussian_sampler):
    rng = random.Random(23)
    for _ in range(50):
        for degree in (1, 2):
            form = random_form(sl3_block, degree, rng, gaussian_sampler)
            assert not ce_d(ce_d(form))


def test_leibniz_rule(sl3_block, gaussian_sampler):
    rng = random.Random(29)
    for _ in range(50):
        a = random_form(sl3_block, 1, rng, gaussian_sampler)
        b = random_form(sl3_block, 1, rng, gaussian_sampler)
        assert ce_d(wedge(a, b)) == wedge(ce_d(a), b) - wedge(a, ce_d(b))


def test_d_commutes_with_conjugation(sl3_block, gaussian_sampler):
    rng = random.Random(31)
    for _ in range(50):
        form = random_form(sl3_block, 2, rng, gaussian_sampler)
        assert ce_d(form.conj()) == ce_d(form).conj()


def test_dolbeault_identities(sl3_block, gaussian_sampler):
    rng = random.Random(37)
    for _ in range(50):
        form = random_form(sl3_block, 2, rng, gaussian_sampler)
        assert not partial(partial(form))
        assert not partial_bar(partial_bar(form))
        assert partial(partial_bar(form)) == -partial_bar(partial(form))


def test_ddc_is_2i_ddbar_on_pure_forms(sl3_block):
    form = wedge(sl3_block.eta(1), sl3_block.eta_bar(1))
    parts = del_delbar(form)
    assert ddc(form) == parts.ddbar.scale(GaussRational(0, 2))
    assert parts.ddc == ddc(form)


def test_sl3_structure_equations_match_up_to_rescaling(sl3_block):
    computed = structure_equations(sl3_block)
    target = [sl3_block.from_table(table) for table in SL3_TARGET]
    scaling = match_up_to_rescaling(computed, target)
    assert scaling is not None
    assert all(s.norm2() == 1 for s in scaling)
    # equations with a different support never match
    assert match_up_to_rescaling(computed, target[::-1]) is None


def test_ddbar_of_eta_one(sl3_block):
    first = partial(partial_bar(wedge(sl3_block.eta(1), sl3_block.eta_bar(1))))
    assert set(first.terms) == {(0, 1, 4, 5), (1, 3, 5, 7)}
    ratio = first.coefficient((0, 1, 4, 5)) / first.coefficient((1, 3, 5, 7))
    assert ratio == 9


def test_ddbar_of_eta_zero_one(sl3_block):
    gamma = wedge(wedge(sl3_block.eta(0), sl3_block.eta_bar(0)),
                  wedge(sl3_block.eta(1), sl3_block.eta_bar(1)))
    assert len(partial(partial_bar(gamma)).terms) == 1


def test_evaluate(sl3_block):
    frame = sl3_block.frame()
    form = wedge(sl3_block.eta(0), sl3_block.eta(1))
    assert evaluate(form, [frame[0], frame[1]]) == 1
    assert evaluate(form, [frame[1], frame[0]]) == -1
    assert evaluate(form, [frame[0], frame[2]]) == 0
    with pytest.raises(DegreeMismatch):
        evaluate(form, [frame[0]])


def test_apply_j(sl3_block):
    assert apply_j(sl3_block.eta(0)) == sl3_block.eta(0).scale(-I)
    assert apply_j(apply_j(sl3_block.eta_bar(2))) == -sl3_block.eta_bar(2)
    with pytest.raises(DegreeMismatch):
        apply_j(wedge(sl3_block.eta(0), sl3_block.eta(1)))


def test_ddc_convention(sl3_block):
    assert ddc_convention_check(sl3_block, 0)
    assert ddc_convention_check(sl3_block, 1)
    with pytest.raises(NotType11):
        ddc_convention_check(sl3_block, 2)


def test_to_json_and_str(sl3_block):
    form = sl3_block.monomial("0", "1bar", coeff="1/2")
    assert form.to_json() == [{"indices": ["0", "1bar"], "re": "1/2", "im": "0"}]
    assert str(ExtForm(sl3_block, {})) == "0"
